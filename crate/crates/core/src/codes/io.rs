//! JSON code files.
//!
//! Additive codes: `{"p", "m", "modulus"?, "n", "coeff_degree", "generators"}`
//! with each generator the 2n integers `x_1..x_n, y_1..y_n`. Classical codes
//! use `"length"` in place of `"n"` and single-block rows.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AdditiveCode, ClassicalCode, SympVector};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdditiveCodeFile {
    pub p: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub n: usize,
    pub coeff_degree: u32,
    pub generators: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalCodeFile {
    pub p: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub length: usize,
    pub generators: Vec<Vec<u32>>,
}

fn field_for(p: u32, m: u32, modulus: &Option<Vec<u32>>) -> Result<Arc<FieldSpec>> {
    match modulus {
        None => FieldSpec::conway(p, m),
        Some(f) => {
            if f.len() != m as usize + 1 {
                return Err(Error::InvalidModulus(format!("expected degree {m}, got {} coefficients", f.len())));
            }
            FieldSpec::with_modulus(p, f.clone())
        }
    }
}

fn modulus_entry(field: &FieldSpec) -> Option<Vec<u32>> {
    (!field.is_conway()).then(|| field.modulus().to_vec())
}

impl AdditiveCodeFile {
    pub fn to_code(&self) -> Result<AdditiveCode> {
        let field = field_for(self.p, self.m, &self.modulus)?;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                if g.len() != 2 * self.n {
                    return Err(Error::LengthMismatch { expected: 2 * self.n, found: g.len() });
                }
                SympVector::from_concat(&field, g)
            })
            .collect::<Result<Vec<_>>>()?;
        AdditiveCode::from_generators(&field, self.n, self.coeff_degree, &gens)
    }

    pub fn from_code(code: &AdditiveCode) -> Self {
        let f = code.field();
        AdditiveCodeFile {
            p: f.p(),
            m: f.m(),
            modulus: modulus_entry(f),
            n: code.n(),
            coeff_degree: code.coeff_degree(),
            generators: code.generators().iter().map(SympVector::concat).collect(),
        }
    }
}

impl ClassicalCodeFile {
    pub fn to_code(&self) -> Result<ClassicalCode> {
        let field = field_for(self.p, self.m, &self.modulus)?;
        ClassicalCode::from_generators(&field, self.length, self.generators.clone())
    }

    pub fn from_code(code: &ClassicalCode) -> Self {
        let f = code.field();
        ClassicalCodeFile {
            p: f.p(),
            m: f.m(),
            modulus: modulus_entry(f),
            length: code.len(),
            generators: code.generators().to_vec(),
        }
    }
}

pub fn parse_additive(text: &str) -> Result<AdditiveCode> {
    let file: AdditiveCodeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_code()
}

pub fn parse_classical(text: &str) -> Result<ClassicalCode> {
    let file: ClassicalCodeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_code()
}

pub fn read_additive(path: impl AsRef<Path>) -> Result<AdditiveCode> {
    parse_additive(&std::fs::read_to_string(path)?)
}

pub fn write_additive(code: &AdditiveCode, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json(code)?)?;
    Ok(())
}

pub fn to_json(code: &AdditiveCode) -> Result<String> {
    Ok(serde_json::to_string_pretty(&AdditiveCodeFile::from_code(code))? + "\n")
}
