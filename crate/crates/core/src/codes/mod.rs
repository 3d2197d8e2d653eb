//! Vectors of F_q^{2n}, additive and F_q-linear codes, classical codes and
//! their duals, and exhaustive weight computation.

pub(crate) mod enumerate;
pub mod io;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Tower};
use crate::linalg::{self, Row};

use enumerate::{pow_sat, witness_search, DigitSpan};

/// An element (x|y) of F_q^{2n}.
#[derive(Clone, PartialEq, Eq)]
pub struct SympVector {
    field: Arc<FieldSpec>,
    x: Vec<u32>,
    y: Vec<u32>,
}

impl fmt::Debug for SympVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}|{:?})", self.x, self.y)
    }
}

impl SympVector {
    pub fn new(field: &Arc<FieldSpec>, x: Vec<u32>, y: Vec<u32>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch { expected: x.len(), found: y.len() });
        }
        for &v in x.iter().chain(&y) {
            field.check(v)?;
        }
        Ok(SympVector { field: field.clone(), x, y })
    }

    pub fn zero(field: &Arc<FieldSpec>, n: usize) -> Self {
        SympVector { field: field.clone(), x: vec![0; n], y: vec![0; n] }
    }

    /// From the concatenation (x_1..x_n, y_1..y_n).
    pub fn from_concat(field: &Arc<FieldSpec>, xy: &[u32]) -> Result<Self> {
        if !xy.len().is_multiple_of(2) {
            return Err(Error::LengthMismatch { expected: xy.len() + 1, found: xy.len() });
        }
        let n = xy.len() / 2;
        Self::new(field, xy[..n].to_vec(), xy[n..].to_vec())
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn y(&self) -> &[u32] {
        &self.y
    }

    pub fn concat(&self) -> Vec<u32> {
        self.x.iter().chain(&self.y).copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.y).all(|&v| v == 0)
    }

    /// Symplectic weight: positions i with (x_i, y_i) != (0, 0).
    pub fn swt(&self) -> usize {
        self.x.iter().zip(&self.y).filter(|(&a, &b)| a != 0 || b != 0).count()
    }

    pub fn scaled(&self, c: u32) -> SympVector {
        let f = &self.field;
        SympVector {
            field: f.clone(),
            x: self.x.iter().map(|&v| f.mul(c, v)).collect(),
            y: self.y.iter().map(|&v| f.mul(c, v)).collect(),
        }
    }

    pub fn add(&self, other: &SympVector) -> Result<SympVector> {
        self.compatible(other)?;
        let f = &self.field;
        Ok(SympVector {
            field: f.clone(),
            x: self.x.iter().zip(&other.x).map(|(&a, &b)| f.add(a, b)).collect(),
            y: self.y.iter().zip(&other.y).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }

    fn compatible(&self, other: &SympVector) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: other.n() });
        }
        Ok(())
    }

    /// The untraced symplectic product a'·b − a·b' in F_q, for u = (a|b), v = (a'|b').
    pub fn symp_fq(&self, other: &SympVector) -> Result<u32> {
        self.compatible(other)?;
        let f = &self.field;
        let mut acc = 0u32;
        for i in 0..self.n() {
            acc = f.add(acc, f.mul(other.x[i], self.y[i]));
            acc = f.sub(acc, f.mul(self.x[i], other.y[i]));
        }
        Ok(acc)
    }

    /// Chunked F_p digits: per coordinate the m digits of x_i, then those of y_i.
    pub(crate) fn interleaved_digits(&self) -> Row {
        let f = &self.field;
        let mut out = Vec::with_capacity(2 * self.n() * f.m() as usize);
        for i in 0..self.n() {
            out.extend(f.digits(self.x[i]));
            out.extend(f.digits(self.y[i]));
        }
        out
    }

    pub(crate) fn from_interleaved_digits(field: &Arc<FieldSpec>, d: &[u32]) -> SympVector {
        let m = field.m() as usize;
        let n = d.len() / (2 * m);
        let mut x = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            x.push(field.from_digits(&d[2 * m * i..2 * m * i + m]));
            y.push(field.from_digits(&d[2 * m * i + m..2 * m * (i + 1)]));
        }
        SympVector { field: field.clone(), x, y }
    }
}

pub fn swt(v: &SympVector) -> usize {
    v.swt()
}

/// Trace-symplectic product tr_{q/p}(a'·b − a·b'), a value in 0..p.
pub fn trace_symp(u: &SympVector, v: &SympVector) -> Result<u32> {
    Ok(u.field.trace(u.symp_fq(v)?))
}

/// Coordinates in which an additive code of coefficient degree t is stored:
/// t = 1 expands every F_q entry into m F_p digits (x block, then y block,
/// coordinate-major, digit-minor); t = m keeps F_q entries.
#[derive(Clone)]
pub(crate) struct Coords {
    pub field: Arc<FieldSpec>,
    pub work: Arc<FieldSpec>,
    pub n: usize,
    pub t: u32,
    trace_gram: Vec<Vec<u32>>,
}

impl Coords {
    pub fn new(field: &Arc<FieldSpec>, n: usize, t: u32) -> Result<Self> {
        let m = field.m();
        if t != 1 && t != m {
            return Err(Error::InvalidCoeffDegree { t, m });
        }
        let expanded = t == 1 && m > 1;
        let work = if expanded { field.prime_field() } else { field.clone() };
        let trace_gram = if expanded {
            let basis: Vec<u32> = (0..m).map(|j| field.p().pow(j)).collect();
            basis.iter().map(|&a| basis.iter().map(|&b| field.trace(field.mul(a, b))).collect()).collect()
        } else {
            Vec::new()
        };
        Ok(Coords { field: field.clone(), work, n, t, trace_gram })
    }

    fn expanded(&self) -> bool {
        !self.trace_gram.is_empty()
    }

    fn digits_per_entry(&self) -> usize {
        if self.expanded() {
            self.field.m() as usize
        } else {
            1
        }
    }

    pub fn len(&self) -> usize {
        2 * self.n * self.digits_per_entry()
    }

    pub fn encode(&self, v: &SympVector) -> Row {
        if !self.expanded() {
            return v.concat();
        }
        let mut out = Vec::with_capacity(self.len());
        for &a in v.x.iter().chain(&v.y) {
            out.extend(self.field.digits(a));
        }
        out
    }

    pub fn decode(&self, r: &[u32]) -> SympVector {
        let d = self.digits_per_entry();
        let vals: Vec<u32> =
            if self.expanded() { r.chunks_exact(d).map(|c| self.field.from_digits(c)).collect() } else { r.to_vec() };
        SympVector { field: self.field.clone(), x: vals[..self.n].to_vec(), y: vals[self.n..].to_vec() }
    }

    /// Linear functional l with form(u, v) = l · u.
    pub fn functional(&self, v: &[u32]) -> Row {
        let w = &self.work;
        let d = self.digits_per_entry();
        let half = self.n * d;
        let mut out = vec![0u32; self.len()];
        if !self.expanded() {
            for i in 0..self.n {
                out[i] = w.neg(v[half + i]);
                out[half + i] = v[i];
            }
            return out;
        }
        let g = &self.trace_gram;
        for i in 0..self.n {
            for j in 0..d {
                let mut cx = 0u32;
                let mut cy = 0u32;
                for k in 0..d {
                    cx = w.add(cx, w.mul(g[j][k], v[half + i * d + k]));
                    cy = w.add(cy, w.mul(g[k][j], v[i * d + k]));
                }
                out[i * d + j] = w.neg(cx);
                out[half + i * d + j] = cy;
            }
        }
        out
    }

    /// The alternating form: traced for t = 1, untraced for t = m.
    pub fn form(&self, u: &[u32], v: &[u32]) -> u32 {
        linalg::dot(&self.work, u, &self.functional(v))
    }
}

/// A code C ⊆ F_q^{2n} closed under F_{p^t}-linear combinations, kept as the
/// reduced row echelon basis of its working coordinates.
#[derive(Clone)]
pub struct AdditiveCode {
    coords: Coords,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl PartialEq for AdditiveCode {
    fn eq(&self, other: &Self) -> bool {
        *self.coords.field == *other.coords.field
            && self.coords.n == other.coords.n
            && self.coords.t == other.coords.t
            && self.rows == other.rows
    }
}

impl Eq for AdditiveCode {}

impl fmt::Debug for AdditiveCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "AdditiveCode(n={}, q={}, t={}, rank={})",
            self.n(),
            self.coords.field.order(),
            self.coords.t,
            self.rank()
        )?;
        for g in self.generators() {
            writeln!(f, "  {g:?}")?;
        }
        Ok(())
    }
}

impl AdditiveCode {
    pub(crate) fn from_rows(coords: Coords, rows: Vec<Row>) -> Self {
        let (rows, pivots) = if rows.is_empty() { (rows, Vec::new()) } else { linalg::rref(&coords.work, rows) };
        AdditiveCode { coords, rows, pivots }
    }

    pub fn from_generators(field: &Arc<FieldSpec>, n: usize, t: u32, gens: &[SympVector]) -> Result<Self> {
        let coords = Coords::new(field, n, t)?;
        let mut rows = Vec::with_capacity(gens.len());
        for g in gens {
            if *g.field != **field {
                return Err(Error::FieldMismatch);
            }
            if g.n() != n {
                return Err(Error::LengthMismatch { expected: n, found: g.n() });
            }
            rows.push(coords.encode(g));
        }
        Ok(Self::from_rows(coords, rows))
    }

    pub fn zero(field: &Arc<FieldSpec>, n: usize, t: u32) -> Result<Self> {
        Self::from_generators(field, n, t, &[])
    }

    pub fn full(field: &Arc<FieldSpec>, n: usize, t: u32) -> Result<Self> {
        let coords = Coords::new(field, n, t)?;
        let len = coords.len();
        let rows = (0..len)
            .map(|i| {
                let mut r = vec![0; len];
                r[i] = 1;
                r
            })
            .collect();
        Ok(Self::from_rows(coords, rows))
    }

    pub fn n(&self) -> usize {
        self.coords.n
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.coords.field
    }

    pub fn coeff_degree(&self) -> u32 {
        self.coords.t
    }

    /// Rank over F_{p^t}.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// log_p |C|.
    pub fn log_p_size(&self) -> usize {
        self.coords.t as usize * self.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub(crate) fn coords(&self) -> &Coords {
        &self.coords
    }

    pub(crate) fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Canonical generators (reduced row echelon basis).
    pub fn generators(&self) -> Vec<SympVector> {
        self.rows.iter().map(|r| self.coords.decode(r)).collect()
    }

    fn same_space(&self, other: &AdditiveCode) -> Result<()> {
        if **self.field() != **other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: other.n() });
        }
        if self.coords.t != other.coords.t {
            return Err(Error::InvalidCoeffDegree { t: other.coords.t, m: self.field().m() });
        }
        Ok(())
    }

    pub fn contains(&self, v: &SympVector) -> bool {
        if *v.field != **self.field() || v.n() != self.n() {
            return false;
        }
        let r = linalg::reduce(&self.coords.work, &self.rows, &self.pivots, &self.coords.encode(v));
        r.iter().all(|&x| x == 0)
    }

    pub fn is_subcode_of(&self, other: &AdditiveCode) -> bool {
        self.same_space(other).is_ok()
            && self.rows.iter().all(|r| {
                let red = linalg::reduce(&other.coords.work, &other.rows, &other.pivots, r);
                red.iter().all(|&x| x == 0)
            })
    }

    /// C^⊥s, the trace-symplectic dual.
    pub fn dual_symp(&self) -> AdditiveCode {
        let len = self.coords.len();
        let eqs: Vec<Row> = self.rows.iter().map(|r| self.coords.functional(r)).collect();
        let basis = if eqs.is_empty() {
            (0..len)
                .map(|i| {
                    let mut r = vec![0; len];
                    r[i] = 1;
                    r
                })
                .collect()
        } else {
            linalg::null_space(&self.coords.work, eqs, len)
        };
        Self::from_rows(self.coords.clone(), basis)
    }

    /// Euclidean null space of the working coordinates (used for intersections).
    fn parity_rows(&self) -> Vec<Row> {
        let len = self.coords.len();
        if self.rows.is_empty() {
            return (0..len)
                .map(|i| {
                    let mut r = vec![0; len];
                    r[i] = 1;
                    r
                })
                .collect();
        }
        linalg::null_space(&self.coords.work, self.rows.clone(), len)
    }

    pub fn intersect(&self, other: &AdditiveCode) -> Result<AdditiveCode> {
        self.same_space(other)?;
        let mut checks = self.parity_rows();
        checks.extend(other.parity_rows());
        let len = self.coords.len();
        let basis =
            if checks.is_empty() { self.rows.clone() } else { linalg::null_space(&self.coords.work, checks, len) };
        Ok(Self::from_rows(self.coords.clone(), basis))
    }

    pub fn sum(&self, other: &AdditiveCode) -> Result<AdditiveCode> {
        self.same_space(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self::from_rows(self.coords.clone(), rows))
    }

    /// span(C ∪ extra) over F_{p^t}.
    pub fn span_with(&self, extra: &[SympVector]) -> Result<AdditiveCode> {
        let mut rows = self.rows.clone();
        for v in extra {
            if *v.field != **self.field() || v.n() != self.n() {
                return Err(Error::FieldMismatch);
            }
            rows.push(self.coords.encode(v));
        }
        Ok(Self::from_rows(self.coords.clone(), rows))
    }

    /// A basis over F_p as vectors.
    pub fn fp_generators(&self) -> Vec<SympVector> {
        let f = self.field();
        let gens = self.generators();
        if self.coords.t == 1 || f.m() == 1 {
            return gens;
        }
        let mut out = Vec::with_capacity(gens.len() * f.m() as usize);
        for g in &gens {
            for j in 0..f.m() {
                out.push(g.scaled(f.p().pow(j)));
            }
        }
        out
    }

    /// Whether the code is closed under multiplication by F_q scalars.
    pub fn is_fq_linear(&self) -> bool {
        if self.coords.t == self.field().m() {
            return true;
        }
        let alpha = self.field().generator();
        self.generators().iter().all(|g| self.contains(&g.scaled(alpha)))
    }

    /// The same set of vectors stored with coefficient degree t.
    pub fn with_coeff_degree(&self, t: u32) -> Result<AdditiveCode> {
        if t == self.coords.t {
            return Ok(self.clone());
        }
        if t == self.field().m() && !self.is_fq_linear() {
            return Err(Error::NotLinear);
        }
        let gens = if t == 1 { self.fp_generators() } else { self.generators() };
        AdditiveCode::from_generators(self.field(), self.n(), t, &gens)
    }

    pub(crate) fn digit_span(&self) -> DigitSpan {
        let f = self.field();
        DigitSpan {
            p: f.p(),
            chunk: 2 * f.m() as usize,
            rows: self.fp_generators().iter().map(|g| g.interleaved_digits()).collect(),
        }
    }

    /// F_p RREF of the interleaved digit rows, for membership tests.
    pub(crate) fn digit_rref(&self) -> (Vec<Row>, Vec<usize>) {
        let rows = self.digit_span().rows;
        if rows.is_empty() {
            return (rows, Vec::new());
        }
        linalg::rref(&self.field().prime_field(), rows)
    }

    /// Multiset of symplectic weights, indexed by weight.
    pub fn weight_distribution(&self, cfg: &AnalysisConfig) -> Result<Vec<u64>> {
        let span = self.digit_span();
        let size = pow_sat(span.p, span.dim());
        if size > cfg.threshold {
            return Err(Error::ThresholdExceeded { p: span.p, log_size: span.dim(), threshold: cfg.threshold });
        }
        Ok(span.histogram(self.n()))
    }

    /// X' = {(aα|b0) : (a|b) ∈ X, α ∈ F_q}, one extra coordinate.
    pub fn append_free_x_coordinate(&self) -> AdditiveCode {
        let f = self.field().clone();
        let n = self.n();
        let pad = |g: &SympVector| {
            let mut x = g.x.clone();
            x.push(0);
            let mut y = g.y.clone();
            y.push(0);
            SympVector { field: f.clone(), x, y }
        };
        let mut gens: Vec<SympVector> = self.generators().iter().map(pad).collect();
        let scalars: Vec<u32> = if self.coords.t == 1 { (0..f.m()).map(|j| f.p().pow(j)).collect() } else { vec![1] };
        for s in scalars {
            let mut x = vec![0; n + 1];
            x[n] = s;
            gens.push(SympVector { field: f.clone(), x, y: vec![0; n + 1] });
        }
        AdditiveCode::from_generators(&f, n + 1, self.coords.t, &gens).expect("same field and length")
    }
}

/// How a minimum-weight value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMethod {
    /// full enumeration: exact
    Exhaustive,
    /// lightest element found by search: an upper bound
    Witness,
    /// witness weight matching a proven lower bound: exact
    Analytic,
}

impl WeightMethod {
    pub fn is_exact(self) -> bool {
        !matches!(self, WeightMethod::Witness)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            WeightMethod::Exhaustive => "exhaustive",
            WeightMethod::Witness => "witness",
            WeightMethod::Analytic => "analytic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetMode {
    Exact,
    /// stop as soon as an element of weight <= bound is found
    Witness(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightResult {
    pub value: usize,
    pub method: WeightMethod,
    pub witness: Option<SympVector>,
}

/// Exact minimum symplectic weight of a nonzero code by enumerating its span.
pub fn min_swt(c: &AdditiveCode, cfg: &AnalysisConfig) -> Result<usize> {
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    let span = c.digit_span();
    let size = pow_sat(span.p, span.dim());
    if size > cfg.threshold {
        return Err(Error::ThresholdExceeded { p: span.p, log_size: span.dim(), threshold: cfg.threshold });
    }
    let (w, _) = span.min_weight(1, size, 1, cfg.workers).expect("nonempty range");
    Ok(w)
}

/// min swt over A \ B for B ⊆ A.
pub fn min_swt_coset(
    a: &AdditiveCode,
    b: &AdditiveCode,
    mode: CosetMode,
    cfg: &AnalysisConfig,
) -> Result<WeightResult> {
    if **a.field() != **b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.n() != b.n() {
        return Err(Error::LengthMismatch { expected: a.n(), found: b.n() });
    }
    let b_in_a = {
        let a_rref = a.digit_rref();
        let prime = a.field().prime_field();
        b.digit_span().rows.iter().all(|r| linalg::reduce(&prime, &a_rref.0, &a_rref.1, r).iter().all(|&x| x == 0))
    };
    if !b_in_a {
        return Err(Error::NotSubcode);
    }
    if a.log_p_size() == b.log_p_size() {
        return Err(Error::EmptyDifference);
    }
    let field = a.field();
    let prime = field.prime_field();
    match mode {
        CosetMode::Exact => {
            let b_span = b.digit_span();
            let (mut ech, mut piv) = if b_span.rows.is_empty() {
                (Vec::new(), Vec::new())
            } else {
                linalg::rref(&prime, b_span.rows.clone())
            };
            let mut rows = b_span.rows.clone();
            for r in a.digit_span().rows {
                let red = linalg::reduce(&prime, &ech, &piv, &r);
                if red.iter().any(|&x| x != 0) {
                    rows.push(red);
                    let mut all = ech.clone();
                    all.push(rows.last().unwrap().clone());
                    let (e, p) = linalg::rref(&prime, all);
                    ech = e;
                    piv = p;
                }
            }
            let span = DigitSpan { p: field.p(), chunk: 2 * field.m() as usize, rows };
            let size = pow_sat(span.p, span.dim());
            if size > cfg.threshold {
                return Err(Error::ThresholdExceeded { p: span.p, log_size: span.dim(), threshold: cfg.threshold });
            }
            let lo = pow_sat(span.p, b_span.rows.len());
            let (w, k) = span.min_weight(lo, size, 1, cfg.workers).expect("nonempty difference");
            let witness = SympVector::from_interleaved_digits(field, &span.element_at(k));
            Ok(WeightResult { value: w, method: WeightMethod::Exhaustive, witness: Some(witness) })
        }
        CosetMode::Witness(bound) => {
            let span = a.digit_span();
            let b_rref = b.digit_rref();
            let found = witness_search(&prime, &span, &b_rref, bound, cfg.witness_budget());
            let (w, v) =
                found.ok_or_else(|| Error::Construction("witness search found no element outside B".into()))?;
            Ok(WeightResult {
                value: w,
                method: WeightMethod::Witness,
                witness: Some(SympVector::from_interleaved_digits(field, &v)),
            })
        }
    }
}

/// Upper bound on swt(C) from a witness search (no subcode to avoid).
pub(crate) fn swt_witness(c: &AdditiveCode, stop_at: usize, cfg: &AnalysisConfig) -> Option<usize> {
    let prime = c.field().prime_field();
    let span = c.digit_span();
    witness_search(&prime, &span, &(Vec::new(), Vec::new()), stop_at, cfg.witness_budget()).map(|(w, _)| w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerProduct {
    Euclidean,
    Hermitian,
}

/// A linear code over a single field (F_q or F_{q^2}).
#[derive(Clone)]
pub struct ClassicalCode {
    field: Arc<FieldSpec>,
    n: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl PartialEq for ClassicalCode {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.n == other.n && self.rows == other.rows
    }
}

impl Eq for ClassicalCode {}

impl fmt::Debug for ClassicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]_{} {:?}", self.n, self.rank(), self.field.order(), self.rows)
    }
}

impl ClassicalCode {
    pub fn from_generators(field: &Arc<FieldSpec>, n: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        for g in &gens {
            if g.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: g.len() });
            }
            for &v in g {
                field.check(v)?;
            }
        }
        let (rows, pivots) = if gens.is_empty() { (gens, Vec::new()) } else { linalg::rref(field, gens) };
        Ok(ClassicalCode { field: field.clone(), n, rows, pivots })
    }

    pub fn zero(field: &Arc<FieldSpec>, n: usize) -> Self {
        ClassicalCode { field: field.clone(), n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &Arc<FieldSpec>, n: usize) -> Self {
        let rows: Vec<Row> = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        ClassicalCode { field: field.clone(), n, pivots: (0..n).collect(), rows }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.n && linalg::reduce(&self.field, &self.rows, &self.pivots, v).iter().all(|&x| x == 0)
    }

    pub fn is_subcode_of(&self, other: &ClassicalCode) -> bool {
        *self.field == *other.field && self.n == other.n && self.rows.iter().all(|r| other.contains(r))
    }

    fn sqrt_order_exp(&self) -> Result<u32> {
        let m = self.field.m();
        if !m.is_multiple_of(2) {
            return Err(Error::NotSquareField { p: self.field.p(), m });
        }
        Ok(m / 2)
    }

    fn conj_vec(&self, v: &[u32]) -> Result<Row> {
        let half = self.sqrt_order_exp()?;
        Ok(v.iter().map(|&a| self.field.frobenius(a, half)).collect())
    }

    /// Σ x_i^q y_i over F_{q^2}.
    pub fn hermitian_product(&self, x: &[u32], y: &[u32]) -> Result<u32> {
        let cx = self.conj_vec(x)?;
        Ok(linalg::dot(&self.field, &cx, y))
    }

    pub fn dual(&self, kind: InnerProduct) -> Result<ClassicalCode> {
        let euclid = if self.rows.is_empty() {
            ClassicalCode::full(&self.field, self.n)
        } else {
            let ns = linalg::null_space(&self.field, self.rows.clone(), self.n);
            ClassicalCode::from_generators(&self.field, self.n, ns)?
        };
        match kind {
            InnerProduct::Euclidean => Ok(euclid),
            InnerProduct::Hermitian => {
                // x ⊥_h X  <=>  x^q ∈ X^⊥
                let gens = euclid.rows.iter().map(|r| self.conj_vec(r)).collect::<Result<Vec<_>>>()?;
                ClassicalCode::from_generators(&self.field, self.n, gens)
            }
        }
    }

    /// X ⊆ X^⊥h, checked on every pair of generators.
    pub fn is_hermitian_self_orthogonal(&self) -> Result<bool> {
        for a in &self.rows {
            for b in &self.rows {
                if self.hermitian_product(a, b)? != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &ClassicalCode) -> Result<ClassicalCode> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch);
        }
        let mut checks = self.dual(InnerProduct::Euclidean)?.rows;
        checks.extend(other.dual(InnerProduct::Euclidean)?.rows);
        if checks.is_empty() {
            return Ok(self.clone());
        }
        let ns = linalg::null_space(&self.field, checks, self.n);
        ClassicalCode::from_generators(&self.field, self.n, ns)
    }

    /// Delete coordinate i.
    pub fn puncture(&self, i: usize) -> Result<ClassicalCode> {
        if i >= self.n {
            return Err(Error::OutOfRange(format!("coordinate {i} of a length-{} code", self.n)));
        }
        let gens = self
            .rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect())
            .collect();
        ClassicalCode::from_generators(&self.field, self.n - 1, gens)
    }

    /// Append the overall parity coordinate −Σ c_i.
    pub fn extend_parity(&self) -> ClassicalCode {
        let f = &self.field;
        let gens = self
            .rows
            .iter()
            .map(|r| {
                let s = r.iter().fold(0, |acc, &v| f.add(acc, v));
                let mut out = r.clone();
                out.push(f.neg(s));
                out
            })
            .collect();
        ClassicalCode::from_generators(f, self.n + 1, gens).expect("valid extension")
    }

    pub(crate) fn digit_span(&self) -> DigitSpan {
        let f = &self.field;
        let mut rows = Vec::new();
        for r in &self.rows {
            for j in 0..f.m() {
                let s = f.p().pow(j);
                rows.push(r.iter().flat_map(|&v| f.digits(f.mul(s, v))).collect());
            }
        }
        DigitSpan { p: f.p(), chunk: f.m() as usize, rows }
    }

    /// Exhaustive minimum Hamming weight.
    pub fn min_distance(&self, cfg: &AnalysisConfig) -> Result<usize> {
        if self.rows.is_empty() {
            return Err(Error::ZeroCode);
        }
        let span = self.digit_span();
        let size = pow_sat(span.p, span.dim());
        if size > cfg.threshold {
            return Err(Error::ThresholdExceeded { p: span.p, log_size: span.dim(), threshold: cfg.threshold });
        }
        Ok(span.min_weight(1, size, 1, cfg.workers).expect("nonzero code").0)
    }

    /// min wt over self \ sub, exhaustive.
    pub fn min_distance_outside(&self, sub: &ClassicalCode, cfg: &AnalysisConfig) -> Result<usize> {
        if !sub.is_subcode_of(self) {
            return Err(Error::NotSubcode);
        }
        if sub.rank() == self.rank() {
            return Err(Error::EmptyDifference);
        }
        let f = &self.field;
        let mut rows = sub.rows.clone();
        let mut ech = sub.rows.clone();
        let mut piv = sub.pivots.clone();
        for r in &self.rows {
            let red = linalg::reduce(f, &ech, &piv, r);
            if red.iter().any(|&x| x != 0) {
                rows.push(red);
                let (e, p) = linalg::rref(f, rows.clone());
                ech = e;
                piv = p;
            }
        }
        let lifted = ClassicalCode { field: f.clone(), n: self.n, rows, pivots: Vec::new() };
        let span = lifted.digit_span();
        let size = pow_sat(span.p, span.dim());
        if size > cfg.threshold {
            return Err(Error::ThresholdExceeded { p: span.p, log_size: span.dim(), threshold: cfg.threshold });
        }
        let lo = pow_sat(span.p, sub.rank() * f.m() as usize);
        Ok(span.min_weight(lo, size, 1, cfg.workers).expect("nonempty").0)
    }

    pub fn weight_distribution(&self, cfg: &AnalysisConfig) -> Result<Vec<u64>> {
        let span = self.digit_span();
        let size = pow_sat(span.p, span.dim());
        if size > cfg.threshold {
            return Err(Error::ThresholdExceeded { p: span.p, log_size: span.dim(), threshold: cfg.threshold });
        }
        Ok(span.histogram(self.n))
    }

    /// MDS test: every set of k columns of a generator matrix (or of n−k
    /// columns of a parity-check matrix, whichever side is smaller) is
    /// independent.
    pub fn is_mds(&self) -> Result<bool> {
        let k = self.rank();
        if k == 0 || k == self.n {
            return Ok(true);
        }
        let (mat, size) = if k <= self.n - k {
            (self.rows.clone(), k)
        } else {
            let d = self.dual(InnerProduct::Euclidean)?;
            (d.rows, self.n - k)
        };
        let cols: Vec<Vec<u32>> = (0..self.n).map(|c| mat.iter().map(|r| r[c]).collect()).collect();
        Ok(all_subsets_independent(&self.field, &cols, size))
    }

    pub fn mds_distance(&self) -> usize {
        self.n - self.rank() + 1
    }
}

/// Depth-first search over column subsets, carrying partial elimination.
fn all_subsets_independent(f: &FieldSpec, cols: &[Vec<u32>], size: usize) -> bool {
    // state: the remaining columns after eliminating the chosen ones; a column
    // is independent of the chosen set iff its reduced form is nonzero.
    fn rec(f: &FieldSpec, cols: &[Vec<u32>], start: usize, size: usize, basis: &mut Vec<(usize, Vec<u32>)>) -> bool {
        if basis.len() == size {
            return true;
        }
        let need = size - basis.len();
        for c in start..=cols.len() - need {
            let mut v = cols[c].clone();
            for (pc, b) in basis.iter() {
                if v[*pc] != 0 {
                    let coef = f.neg(v[*pc]);
                    linalg::axpy(f, &mut v, coef, b);
                }
            }
            let Some(pc) = v.iter().position(|&x| x != 0) else {
                return false;
            };
            let inv = f.inv(v[pc]).expect("nonzero");
            linalg::scale(f, &mut v, inv);
            basis.push((pc, v));
            let ok = rec(f, cols, c + 1, size, basis);
            basis.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(f, cols, 0, size, &mut Vec::new())
}

/// C = {(u|v) : u + βv ∈ X} for an F_{q^2}-linear X; F_q-linear, |C| = |X|.
/// Its trace-symplectic dual is the expansion of X^⊥h.
pub fn expand_basis(x: &ClassicalCode, tower: &Tower) -> Result<AdditiveCode> {
    if **x.field() != **tower.ext() {
        return Err(Error::FieldMismatch);
    }
    let base = tower.base();
    let ext = tower.ext();
    let mut gens = Vec::with_capacity(2 * x.rank());
    for g in x.generators() {
        for scale in [1, tower.beta()] {
            let mut u = Vec::with_capacity(x.len());
            let mut v = Vec::with_capacity(x.len());
            for &c in g {
                let (a, b) = tower.basis_expand(ext.mul(scale, c));
                u.push(a);
                v.push(b);
            }
            gens.push(SympVector { field: base.clone(), x: u, y: v });
        }
    }
    AdditiveCode::from_generators(base, x.len(), base.m(), &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, m: u32) -> Arc<FieldSpec> {
        FieldSpec::conway(p, m).unwrap()
    }

    fn v(field: &Arc<FieldSpec>, xy: &[u32]) -> SympVector {
        SympVector::from_concat(field, xy).unwrap()
    }

    #[test]
    fn swt_examples() {
        let f2 = f(2, 1);
        assert_eq!(v(&f2, &[1, 0, 0, 0, 0, 0]).swt(), 1);
        assert_eq!(v(&f2, &[1, 1, 0, 0, 1, 0]).swt(), 2);
        assert_eq!(SympVector::zero(&f2, 3).swt(), 0);
    }

    #[test]
    fn trace_symp_examples() {
        let f2 = f(2, 1);
        assert_eq!(trace_symp(&v(&f2, &[1, 0]), &v(&f2, &[0, 1])).unwrap(), 1);
        assert_eq!(trace_symp(&v(&f2, &[1, 0, 0, 1]), &v(&f2, &[0, 1, 1, 0])).unwrap(), 0);
        let f4 = f(2, 2);
        let u = v(&f4, &[1, 2, 2, 1]);
        assert_eq!(trace_symp(&u, &u).unwrap(), 0);
        assert!(matches!(trace_symp(&v(&f2, &[1, 0]), &v(&f2, &[1, 0, 0, 0])), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn dual_examples() {
        let f2 = f(2, 1);
        let c = AdditiveCode::from_generators(&f2, 1, 1, &[v(&f2, &[1, 0])]).unwrap();
        assert_eq!(c.dual_symp(), c);
        let zero = AdditiveCode::zero(&f2, 1, 1).unwrap();
        let full = AdditiveCode::full(&f2, 1, 1).unwrap();
        assert_eq!(zero.dual_symp(), full);
        assert_eq!(full.dual_symp(), zero);
    }

    #[test]
    fn intersect_examples() {
        let f2 = f(2, 1);
        let a = AdditiveCode::from_generators(&f2, 1, 1, &[v(&f2, &[1, 0])]).unwrap();
        let b = AdditiveCode::from_generators(&f2, 1, 1, &[v(&f2, &[0, 1])]).unwrap();
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.intersect(&a).unwrap(), a);
        let zero = AdditiveCode::zero(&f2, 1, 1).unwrap();
        assert!(a.intersect(&zero).unwrap().is_zero());
        let f3 = f(3, 1);
        let c3 = AdditiveCode::zero(&f3, 1, 1).unwrap();
        assert!(matches!(a.intersect(&c3), Err(Error::FieldMismatch)));
    }

    #[test]
    fn min_swt_examples() {
        let cfg = AnalysisConfig::default();
        let f2 = f(2, 1);
        let full = AdditiveCode::full(&f2, 1, 1).unwrap();
        assert_eq!(min_swt(&full, &cfg).unwrap(), 1);
        let c = AdditiveCode::from_generators(&f2, 2, 1, &[v(&f2, &[1, 1, 0, 0]), v(&f2, &[0, 0, 1, 1])]).unwrap();
        assert_eq!(min_swt(&c, &cfg).unwrap(), 2);
        let zero = AdditiveCode::zero(&f2, 2, 1).unwrap();
        assert!(matches!(min_swt(&zero, &cfg), Err(Error::ZeroCode)));
        let small = AnalysisConfig { threshold: 2, ..AnalysisConfig::default() };
        assert!(matches!(min_swt(&c, &small), Err(Error::ThresholdExceeded { .. })));
    }

    #[test]
    fn min_swt_coset_examples() {
        let cfg = AnalysisConfig::default();
        let f2 = f(2, 1);
        let full = AdditiveCode::full(&f2, 1, 1).unwrap();
        let b = AdditiveCode::from_generators(&f2, 1, 1, &[v(&f2, &[1, 0])]).unwrap();
        let r = min_swt_coset(&full, &b, CosetMode::Exact, &cfg).unwrap();
        assert_eq!((r.value, r.method), (1, WeightMethod::Exhaustive));
        assert!(!b.contains(r.witness.as_ref().unwrap()));
        assert!(matches!(min_swt_coset(&b, &b, CosetMode::Exact, &cfg), Err(Error::EmptyDifference)));
        assert!(matches!(min_swt_coset(&b, &full, CosetMode::Exact, &cfg), Err(Error::NotSubcode)));
        let w = min_swt_coset(&full, &b, CosetMode::Witness(1), &cfg).unwrap();
        assert_eq!((w.value, w.method), (1, WeightMethod::Witness));
    }

    #[test]
    fn classical_duals() {
        let f2 = f(2, 1);
        let rep = ClassicalCode::from_generators(&f2, 3, vec![vec![1, 1, 1]]).unwrap();
        let d = rep.dual(InnerProduct::Euclidean).unwrap();
        assert_eq!(d.rank(), 2);
        assert!(d.contains(&[1, 1, 0]) && d.contains(&[0, 1, 1]) && !d.contains(&[1, 0, 0]));
        assert!(matches!(rep.dual(InnerProduct::Hermitian), Err(Error::NotSquareField { .. })));

        let f4 = f(2, 2);
        let x = ClassicalCode::from_generators(&f4, 2, vec![vec![1, 1]]).unwrap();
        assert_eq!(x.dual(InnerProduct::Hermitian).unwrap(), x);
        let zero = ClassicalCode::zero(&f4, 2);
        assert_eq!(zero.dual(InnerProduct::Hermitian).unwrap(), ClassicalCode::full(&f4, 2));
    }

    #[test]
    fn puncture_and_extend() {
        let f2 = f(2, 1);
        let rep = ClassicalCode::from_generators(&f2, 3, vec![vec![1, 1, 1]]).unwrap();
        assert!(matches!(rep.puncture(99), Err(Error::OutOfRange(_))));
        assert_eq!(rep.puncture(2).unwrap().len(), 2);
        let ext = rep.extend_parity();
        assert_eq!(ext.len(), 4);
        assert!(ext.contains(&[1, 1, 1, 1]));
    }

    #[test]
    fn fq_linear_conversion() {
        let f4 = f(2, 2);
        let g = v(&f4, &[1, 2, 0, 1]);
        let lin = AdditiveCode::from_generators(&f4, 2, 2, std::slice::from_ref(&g)).unwrap();
        let add = lin.with_coeff_degree(1).unwrap();
        assert_eq!(add.log_p_size(), lin.log_p_size());
        assert!(add.is_fq_linear());
        assert_eq!(add.with_coeff_degree(2).unwrap(), lin);
        let only = AdditiveCode::from_generators(&f4, 2, 1, &[g]).unwrap();
        assert!(!only.is_fq_linear());
        assert!(matches!(only.with_coeff_degree(2), Err(Error::NotLinear)));
        assert!(matches!(Coords::new(&f(2, 4), 1, 2), Err(Error::InvalidCoeffDegree { .. })));
    }
}
