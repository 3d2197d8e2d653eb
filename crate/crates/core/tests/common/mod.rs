//! Brute-force reference implementations used as test oracles.
//!
//! Field arithmetic is plain polynomial multiplication modulo a hard-coded
//! modulus (no log tables), and every code is handled as an explicit set of
//! vectors.

#![allow(dead_code)]

pub mod invariants;

use std::collections::BTreeSet;

use rand::Rng;
use subcodes::{FieldSpec, SympVector};

/// F_{p^m} with elements encoded as base-p digit strings, constant term first.
#[derive(Clone, Debug)]
pub struct OField {
    pub p: u32,
    pub m: u32,
    /// monic, constant term first
    pub modulus: Vec<u32>,
}

impl OField {
    /// Conway moduli from the published tables.
    pub fn new(p: u32, m: u32) -> OField {
        let modulus = match (p, m) {
            (_, 1) => vec![0, 1],
            (2, 2) => vec![1, 1, 1],
            (2, 3) => vec![1, 1, 0, 1],
            (2, 4) => vec![1, 1, 0, 0, 1],
            (3, 2) => vec![2, 2, 1],
            (3, 3) => vec![1, 2, 0, 1],
            (5, 2) => vec![2, 4, 1],
            (7, 2) => vec![3, 6, 1],
            _ => panic!("no oracle modulus for {p}^{m}"),
        };
        OField { p, m, modulus }
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.m)
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.m as usize);
        let mut a = a;
        for _ in 0..self.m {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.undigits(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let s: Vec<u32> = self.digits(a).iter().map(|&u| (self.p - u) % self.p).collect();
        self.undigits(&s)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a * b) % self.p;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let m = self.m as usize;
        let mut prod = vec![0u32; 2 * m - 1];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        // reduce by the monic modulus from the top degree down
        for deg in (m..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for k in 0..=m {
                let idx = deg - m + k;
                prod[idx] = (prod[idx] + self.p * self.p - (c * self.modulus[k]) % self.p) % self.p;
            }
        }
        self.undigits(&prod[..m])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut acc = 1;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (1..self.q()).find(|&b| self.mul(a, b) == 1).filter(|_| a != 0)
    }

    /// Absolute trace, an element of F_p.
    pub fn trace(&self, a: u32) -> u32 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.m {
            t = self.add(t, x);
            x = self.pow(x, self.p as u64);
        }
        t
    }

    pub fn spec(&self) -> std::sync::Arc<FieldSpec> {
        FieldSpec::conway(self.p, self.m).unwrap()
    }
}

pub type Vector = Vec<u32>;

/// Number of positions i with (x_i, y_i) ≠ (0, 0); v = (x|y).
pub fn swt(v: &[u32]) -> usize {
    let n = v.len() / 2;
    (0..n).filter(|&i| v[i] != 0 || v[n + i] != 0).count()
}

pub fn wt(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// tr(a'·b − a·b') for u = (a|b), v = (a'|b').
pub fn symp(f: &OField, u: &[u32], v: &[u32]) -> u32 {
    let n = u.len() / 2;
    let mut s = 0;
    for i in 0..n {
        s = f.add(s, f.mul(v[i], u[n + i]));
        s = f.sub(s, f.mul(u[i], v[n + i]));
    }
    f.trace(s)
}

/// Σ x_i^q y_i over F_{q^2}, where `f` is the degree-2 extension of F_q.
pub fn hermitian(f: &OField, x: &[u32], y: &[u32]) -> u32 {
    let q = (f.q() as f64).sqrt().round() as u64;
    x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(f.pow(a, q), b)))
}

/// Every vector of length `len` over F_q.
pub fn all_vectors(q: u32, len: usize) -> impl Iterator<Item = Vector> {
    let total = (q as u64).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u32; len];
        for x in v.iter_mut() {
            *x = (idx % q as u64) as u32;
            idx /= q as u64;
        }
        v
    })
}

/// Span over the scalars `scalars` (F_p for additive codes, F_q for linear ones).
pub fn span(f: &OField, gens: &[Vector], len: usize, scalars: &[u32]) -> BTreeSet<Vector> {
    let mut set: BTreeSet<Vector> = BTreeSet::new();
    set.insert(vec![0; len]);
    for g in gens {
        let mut next = set.clone();
        for v in &set {
            for &c in scalars {
                let w: Vector = v.iter().zip(g).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect();
                next.insert(w);
            }
        }
        set = next;
    }
    set
}

/// Scalars of F_p as elements of F_q (digit strings with one nonzero digit).
pub fn prime_scalars(f: &OField) -> Vec<u32> {
    (0..f.p).collect()
}

pub fn field_scalars(f: &OField) -> Vec<u32> {
    (0..f.q()).collect()
}

/// Trace-symplectic dual by testing every vector of F_q^{2n} against an
/// F_p-basis of `code`.
pub fn symp_dual(f: &OField, code: &BTreeSet<Vector>, n: usize) -> BTreeSet<Vector> {
    let gens = fp_basis(f, code);
    all_vectors(f.q(), 2 * n).filter(|v| gens.iter().all(|g| symp(f, v, g) == 0)).collect()
}

/// Greedy F_p-basis of a set closed under F_p-linear combination.
pub fn fp_basis(f: &OField, code: &BTreeSet<Vector>) -> Vec<Vector> {
    let Some(len) = code.iter().next().map(|v| v.len()) else {
        return Vec::new();
    };
    let mut basis: Vec<Vector> = Vec::new();
    let mut cur = span(f, &basis, len, &prime_scalars(f));
    for v in code {
        if !cur.contains(v) {
            basis.push(v.clone());
            cur = span(f, &basis, len, &prime_scalars(f));
        }
    }
    basis
}

/// Parameters from the set-level definition: (log_p K, log_p R, d, swt(C)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteParams {
    pub k_exp: usize,
    pub r_exp: usize,
    pub d: usize,
    pub swt_c: Option<usize>,
}

pub fn log_p(p: u32, size: usize) -> usize {
    let mut e = 0;
    let mut s = size;
    while s > 1 {
        assert_eq!(s % p as usize, 0, "set size is not a power of p");
        s /= p as usize;
        e += 1;
    }
    e
}

pub fn brute_params(f: &OField, c: &BTreeSet<Vector>, n: usize) -> BruteParams {
    let cd = symp_dual(f, c, n);
    let d_set: BTreeSet<Vector> = c.intersection(&cd).cloned().collect();
    let dd = symp_dual(f, &d_set, n);
    let (ec, ed) = (log_p(f.p, c.len()), log_p(f.p, d_set.len()));
    let nm = n * f.m as usize;
    let k_exp = nm - (ec + ed) / 2;
    let r_exp = (ec - ed) / 2;
    let d = if dd == *c {
        dd.iter().filter(|v| swt(v) > 0).map(|v| swt(v)).min().unwrap_or(0)
    } else {
        dd.difference(c).map(|v| swt(v)).min().unwrap()
    };
    let swt_c = c.iter().filter(|v| swt(v) > 0).map(|v| swt(v)).min();
    BruteParams { k_exp, r_exp, d, swt_c }
}

pub fn random_vector<R: Rng>(rng: &mut R, q: u32, len: usize) -> Vector {
    (0..len).map(|_| rng.gen_range(0..q)).collect()
}

pub fn to_symp(f: &OField, v: &[u32]) -> SympVector {
    SympVector::from_concat(&f.spec(), v).unwrap()
}

pub fn library_set(code: &subcodes::AdditiveCode, f: &OField) -> BTreeSet<Vector> {
    let gens: Vec<Vector> = code.generators().iter().map(|g| g.concat()).collect();
    let scalars = if code.coeff_degree() == 1 { prime_scalars(f) } else { field_scalars(f) };
    span(f, &gens, 2 * code.n(), &scalars)
}
