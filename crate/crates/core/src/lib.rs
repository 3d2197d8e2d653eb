//! Clifford subsystem codes built from classical additive codes over finite
//! fields.
//!
//! A code `C ⊆ F_q^{2n}` determines a subsystem code through its radical
//! `D = C ∩ C^⊥s`. This crate computes the resulting parameters
//! `((n, K, R, d))_q`, the distance and purity by enumeration, and implements
//! the dimension-trading, length-changing and combining rules together with
//! Reed–Solomon based MDS families.

pub mod bounds;
pub mod codes;
pub mod config;
pub mod error;
pub mod gf;
mod linalg;
pub mod rules;
pub mod subsystem;
pub mod symplectic;

pub use codes::{AdditiveCode, ClassicalCode, InnerProduct, SympVector, WeightMethod};
pub use config::{AnalysisConfig, DistanceMode};
pub use error::{Error, Result};
pub use gf::{FieldElement, FieldSpec, Tower};
pub use subsystem::{ParamRecord, SubsystemCode};
