//! Finite fields F_{p^m} in polynomial basis and the quadratic tower F_q ⊆ F_{q^2}.
//!
//! Elements are plain `u32` values whose base-p digits are the polynomial-basis
//! coefficients, least significant digit first. Multiplication goes through
//! exp/log tables, so the order is capped at 2^16.

pub(crate) mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u32 = 1 << 16;

pub struct FieldSpec {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    conway: bool,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
    prime: Option<Arc<FieldSpec>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}, modulus {:?})", self.p, self.m, self.modulus)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

fn registry() -> &'static Mutex<HashMap<(u32, u32, Vec<u32>), Arc<FieldSpec>>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32, Vec<u32>), Arc<FieldSpec>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn conway_cache() -> &'static Mutex<HashMap<(u32, u32), Vec<u32>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Vec<u32>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_size(p: u32, m: u32) -> Result<u32> {
    if !poly::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
    }
    let order = (p as u64).checked_pow(m).filter(|&o| o <= MAX_FIELD_ORDER as u64);
    order.map(|o| o as u32).ok_or(Error::FieldTooLarge { p, m })
}

/// Conway polynomial C_{p,m}, coefficients low degree first (monic).
pub fn conway_polynomial(p: u32, m: u32) -> Result<Vec<u32>> {
    check_size(p, m)?;
    if let Some(f) = conway_cache().lock().unwrap().get(&(p, m)) {
        return Ok(f.clone());
    }
    let lower = |d: u32| conway_polynomial(p, d).expect("subfield of a valid field");
    let f = poly::conway(p, m, &lower);
    conway_cache().lock().unwrap().insert((p, m), f.clone());
    Ok(f)
}

impl FieldSpec {
    /// GF(p^m) with the Conway polynomial as modulus.
    pub fn conway(p: u32, m: u32) -> Result<Arc<FieldSpec>> {
        let f = conway_polynomial(p, m)?;
        Self::with_modulus(p, f)
    }

    /// GF(p^m) with an explicit monic modulus (low degree first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Arc<FieldSpec>> {
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let order = check_size(p, m)?;
        if modulus.iter().any(|&c| c >= p) || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus(format!("{modulus:?} is not a monic polynomial over F_{p}")));
        }
        let key = (p, m, modulus.clone());
        if let Some(f) = registry().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is reducible over F_{p}")));
        }
        let conway = conway_polynomial(p, m).map(|c| c == modulus).unwrap_or(false);
        let spec = Arc::new(Self::build(p, m, order, modulus, conway)?);
        registry().lock().unwrap().insert(key, spec.clone());
        Ok(spec)
    }

    fn build(p: u32, m: u32, order: u32, modulus: Vec<u32>, conway: bool) -> Result<FieldSpec> {
        let to_poly = |v: u32| -> Vec<u32> {
            let mut out = Vec::with_capacity(m as usize);
            let mut v = v;
            for _ in 0..m {
                out.push(v % p);
                v /= p;
            }
            out
        };
        let from_poly = |c: &[u32]| -> u32 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) };
        let group = (order - 1) as u64;
        let factors = poly::prime_factors(group);
        let generator = (1..order)
            .find(|&g| {
                let gp = to_poly(g);
                factors.iter().all(|&l| poly::pow_mod_poly(&gp, group / l, &modulus, p) != vec![1])
            })
            .ok_or_else(|| Error::InvalidModulus("no multiplicative generator".into()))?;
        let gpoly = to_poly(generator);
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; order as usize];
        let mut cur: Vec<u32> = vec![1];
        for i in 0..(order - 1) as usize {
            let mut padded = cur.clone();
            padded.resize(m as usize, 0);
            let v = from_poly(&padded);
            exp[i] = v;
            log[v as usize] = i as u32;
            cur = poly::mul_mod(&cur, &gpoly, &modulus, p);
        }
        for i in (order - 1) as usize..exp.len() {
            exp[i] = exp[i - (order - 1) as usize];
        }
        let prime = if m > 1 { Some(Self::conway(p, 1)?) } else { None };
        let mut spec = FieldSpec { p, m, order, modulus, conway, generator, exp, log, trace: Vec::new(), prime };
        spec.trace = (0..order)
            .map(|x| {
                let mut acc = 0u32;
                let mut y = x;
                for _ in 0..m {
                    acc = spec.add(acc, y);
                    y = spec.pow(y, p as u64);
                }
                debug_assert!(acc < p);
                acc
            })
            .collect();
        Ok(spec)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_conway(&self) -> bool {
        self.conway
    }

    /// A fixed generator of the multiplicative group (the class of x for Conway moduli).
    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// The prime subfield F_p as its own field.
    pub fn prime_field(self: &Arc<Self>) -> Arc<FieldSpec> {
        self.prime.clone().unwrap_or_else(|| self.clone())
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.order
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::InvalidElement { value: a, order: self.order })
        }
    }

    /// Polynomial-basis coordinates, constant term first.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut v = a;
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let l = self.log[a as usize];
        Ok(self.exp[((self.order - 1 - l) % (self.order - 1)) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (e % (self.order as u64 - 1))) % (self.order as u64 - 1);
        self.exp[l as usize]
    }

    /// Power of the fixed generator.
    pub fn exp_gen(&self, e: u64) -> u32 {
        self.exp[(e % (self.order as u64 - 1)) as usize]
    }

    /// Absolute trace to F_p; the result is a value in 0..p.
    #[inline]
    pub fn trace(&self, a: u32) -> u32 {
        self.trace[a as usize]
    }

    /// a^{p^k}
    pub fn frobenius(&self, a: u32, k: u32) -> u32 {
        self.pow(a, (self.p as u64).pow(k % self.m))
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order
    }
}

/// A field element bound to its field; arithmetic is checked.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FieldSpec>,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈GF({}^{})", self.value, self.field.p, self.field.m)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
}

impl FieldElement {
    pub fn new(field: &Arc<FieldSpec>, value: u32) -> Result<Self> {
        field.check(value)?;
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn from_digits(field: &Arc<FieldSpec>, digits: &[u32]) -> Result<Self> {
        if digits.len() != field.m as usize {
            return Err(Error::LengthMismatch { expected: field.m as usize, found: digits.len() });
        }
        if digits.iter().any(|&d| d >= field.p) {
            return Err(Error::InvalidElement { value: field.from_digits(digits), order: field.order });
        }
        Ok(FieldElement { field: field.clone(), value: field.from_digits(digits) })
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    fn same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Unary operations ignore `b`.
    pub fn apply(&self, op: FieldOp, b: &FieldElement) -> Result<FieldElement> {
        self.same(b)?;
        let f = &self.field;
        let value = match op {
            FieldOp::Add => f.add(self.value, b.value),
            FieldOp::Mul => f.mul(self.value, b.value),
            FieldOp::Inv => f.inv(self.value)?,
            FieldOp::Neg => f.neg(self.value),
        };
        Ok(FieldElement { field: f.clone(), value })
    }

    pub fn add(&self, b: &FieldElement) -> Result<FieldElement> {
        self.apply(FieldOp::Add, b)
    }

    pub fn mul(&self, b: &FieldElement) -> Result<FieldElement> {
        self.apply(FieldOp::Mul, b)
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { field: self.field.clone(), value: self.field.neg(self.value) }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement { field: self.field.clone(), value: self.field.inv(self.value)? })
    }

    /// Absolute trace into F_p, returned as an element of the prime field.
    pub fn trace_down(&self) -> FieldElement {
        FieldElement { field: self.field.prime_field(), value: self.field.trace(self.value) }
    }
}

/// The tower F_q ⊆ F_{q^2} with basis {1, β} of F_{q^2} over F_q.
pub struct Tower {
    base: Arc<FieldSpec>,
    ext: Arc<FieldSpec>,
    embed: Vec<u32>,
    restrict: Vec<u32>,
    beta: u32,
    beta0: u32,
    expand: Vec<(u32, u32)>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({:?} ⊆ {:?}, β={})", self.base, self.ext, self.beta)
    }
}

const NOT_IN_BASE: u32 = u32::MAX;

fn tower_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<Tower>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Tower>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Tower {
    /// Conway moduli for both levels, β = class of x in F_{q^2}.
    pub fn conway(p: u32, m: u32) -> Result<Arc<Tower>> {
        if let Some(t) = tower_cache().lock().unwrap().get(&(p, m)) {
            return Ok(t.clone());
        }
        let base = FieldSpec::conway(p, m)?;
        let ext = FieldSpec::conway(p, 2 * m)?;
        let t = Arc::new(Tower::new(base, ext, None)?);
        tower_cache().lock().unwrap().insert((p, m), t.clone());
        Ok(t)
    }

    /// The tower whose top field is `ext` (which must have even degree), with the
    /// Conway field of half the degree as base.
    pub fn over(ext: &Arc<FieldSpec>) -> Result<Arc<Tower>> {
        if !ext.m.is_multiple_of(2) {
            return Err(Error::NotSquareField { p: ext.p, m: ext.m });
        }
        if ext.is_conway() {
            return Tower::conway(ext.p, ext.m / 2);
        }
        let base = FieldSpec::conway(ext.p, ext.m / 2)?;
        Ok(Arc::new(Tower::new(base, ext.clone(), None)?))
    }

    pub fn new(base: Arc<FieldSpec>, ext: Arc<FieldSpec>, beta: Option<u32>) -> Result<Tower> {
        if base.p != ext.p || ext.m != 2 * base.m {
            return Err(Error::InvalidModulus("extension must have twice the base degree".into()));
        }
        let q = base.order as u64;
        // Conway-compatible embedding first, otherwise the smallest root of the base modulus.
        let eval = |g: u32| -> u32 { base.modulus.iter().rev().fold(0u32, |acc, &c| ext.add(ext.mul(acc, g), c)) };
        let candidate = ext.pow(ext.generator, q + 1);
        let gamma = if eval(candidate) == 0 {
            candidate
        } else {
            ext.elements()
                .find(|&g| eval(g) == 0)
                .ok_or_else(|| Error::InvalidModulus("base modulus has no root".into()))?
        };
        let mut embed = Vec::with_capacity(base.order as usize);
        for a in base.elements() {
            let digits = base.digits(a);
            let v = digits.iter().rev().fold(0u32, |acc, &c| ext.add(ext.mul(acc, gamma), c));
            embed.push(v);
        }
        let mut restrict = vec![NOT_IN_BASE; ext.order as usize];
        for (a, &v) in embed.iter().enumerate() {
            restrict[v as usize] = a as u32;
        }
        let beta = beta.unwrap_or(ext.p);
        ext.check(beta)?;
        if restrict[beta as usize] != NOT_IN_BASE {
            return Err(Error::InvalidModulus(format!("β = {beta} lies in the base field")));
        }
        let mut expand = vec![(u32::MAX, u32::MAX); ext.order as usize];
        for u in base.elements() {
            for v in base.elements() {
                let x = ext.add(embed[u as usize], ext.mul(beta, embed[v as usize]));
                expand[x as usize] = (u, v);
            }
        }
        debug_assert!(expand.iter().all(|&(u, _)| u != u32::MAX));
        let beta_q = ext.pow(beta, q);
        let beta0 = restrict[ext.add(beta, beta_q) as usize];
        if beta0 == NOT_IN_BASE {
            return Err(Error::Construction("relative trace left the base field".into()));
        }
        Ok(Tower { base, ext, embed, restrict, beta, beta0, expand })
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldSpec> {
        &self.ext
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    /// tr_{q^2/q}(β) as an element of F_q.
    pub fn beta0(&self) -> u32 {
        self.beta0
    }

    pub fn embed(&self, a: u32) -> u32 {
        self.embed[a as usize]
    }

    /// Inverse of `embed`, `None` outside F_q.
    pub fn restrict(&self, x: u32) -> Option<u32> {
        let v = self.restrict[x as usize];
        (v != NOT_IN_BASE).then_some(v)
    }

    /// x = u + βv with u, v in F_q.
    pub fn basis_expand(&self, x: u32) -> (u32, u32) {
        self.expand[x as usize]
    }

    pub fn basis_combine(&self, u: u32, v: u32) -> u32 {
        self.ext.add(self.embed[u as usize], self.ext.mul(self.beta, self.embed[v as usize]))
    }

    /// Conjugation x ↦ x^q.
    pub fn conj(&self, x: u32) -> u32 {
        self.ext.pow(x, self.base.order as u64)
    }

    /// tr_{q^2/q}(x) = x + x^q in F_q.
    pub fn relative_trace(&self, x: u32) -> u32 {
        let t = self.ext.add(x, self.conj(x));
        self.restrict[t as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_conway_polynomials() {
        assert_eq!(conway_polynomial(2, 1).unwrap(), vec![1, 1]);
        assert_eq!(conway_polynomial(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(conway_polynomial(2, 3).unwrap(), vec![1, 1, 0, 1]);
        assert_eq!(conway_polynomial(2, 4).unwrap(), vec![1, 1, 0, 0, 1]);
        assert_eq!(conway_polynomial(3, 1).unwrap(), vec![1, 1]);
        assert_eq!(conway_polynomial(3, 2).unwrap(), vec![2, 2, 1]);
        assert_eq!(conway_polynomial(3, 4).unwrap(), vec![2, 0, 0, 2, 1]);
        assert_eq!(conway_polynomial(5, 1).unwrap(), vec![3, 1]);
        assert_eq!(conway_polynomial(5, 2).unwrap(), vec![2, 4, 1]);
        assert_eq!(conway_polynomial(7, 1).unwrap(), vec![4, 1]);
        assert_eq!(conway_polynomial(7, 2).unwrap(), vec![3, 6, 1]);
    }

    #[test]
    fn gf4_omega_squared() {
        let f = FieldSpec::conway(2, 2).unwrap();
        let w = 2;
        assert_eq!(f.mul(w, w), 3);
        assert_eq!(f.trace(w), 1);
        assert_eq!(f.trace(1), 0);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(FieldSpec::with_modulus(2, vec![1, 0, 1]), Err(Error::InvalidModulus(_))));
        assert!(matches!(FieldSpec::conway(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldSpec::conway(2, 17), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn non_primitive_modulus_still_works() {
        // x^2 + 1 over F_3 is irreducible but x has order 4
        let f = FieldSpec::with_modulus(3, vec![1, 0, 1]).unwrap();
        assert!(!f.is_conway());
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn tower_expansion_gf4() {
        let t = Tower::conway(2, 1).unwrap();
        assert_eq!(t.beta(), 2);
        assert_eq!(t.basis_expand(2), (0, 1));
        assert_eq!(t.basis_expand(3), (1, 1));
        assert_eq!(t.basis_expand(0), (0, 0));
        assert_eq!(t.beta0(), 1);
    }

    #[test]
    fn tower_embedding_is_a_homomorphism() {
        for (p, m) in [(2, 2), (3, 1), (3, 2), (5, 1), (7, 1), (2, 3)] {
            let t = Tower::conway(p, m).unwrap();
            let (b, e) = (t.base(), t.ext());
            for a in b.elements() {
                for c in b.elements() {
                    assert_eq!(t.embed(b.add(a, c)), e.add(t.embed(a), t.embed(c)));
                    assert_eq!(t.embed(b.mul(a, c)), e.mul(t.embed(a), t.embed(c)));
                }
            }
        }
    }

    #[test]
    fn checked_element_ops() {
        let f4 = FieldSpec::conway(2, 2).unwrap();
        let f3 = FieldSpec::conway(3, 1).unwrap();
        let a = FieldElement::new(&f4, 2).unwrap();
        let b = FieldElement::new(&f3, 2).unwrap();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch)));
        let zero = FieldElement::new(&f4, 0).unwrap();
        assert!(matches!(zero.inv(), Err(Error::ZeroInverse)));
        assert!(FieldElement::new(&f4, 4).is_err());
        assert_eq!(a.mul(&a).unwrap().value(), 3);
        assert_eq!(a.trace_down().value(), 1);
        assert_eq!(a.add(&a.neg()).unwrap().value(), 0);
    }
}
