//! Hyperbolic decomposition of a code and completion to a symplectic basis.
//!
//! For coefficient degree t = 1 the form is the trace-symplectic product; for
//! t = m it is the untraced a'·b − a·b' and all coefficients live in F_q.

use std::sync::Arc;

use crate::codes::{AdditiveCode, Coords, SympVector};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linalg::{self, Row};

/// `C = span{z_1..z_s, x_{s+1}, z_{s+1}, .., x_{s+r}, z_{s+r}}` with
/// `⟨x_k|z_l⟩ = δ_kl` and every other pairing zero.
#[derive(Clone)]
pub struct HyperbolicDecomposition {
    coords: Coords,
    isotropic: Vec<Row>,
    pairs: Vec<(Row, Row)>,
}

impl std::fmt::Debug for HyperbolicDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HyperbolicDecomposition")
            .field("s", &self.s())
            .field("r", &self.r())
            .field("isotropic", &self.isotropic())
            .field("pairs", &self.pairs())
            .finish()
    }
}

/// A full symplectic basis `(x_1, z_1), .., (x_N, z_N)` of the ambient space,
/// N = nm/t. The first s pairs complete the isotropic vectors of the
/// decomposition it came from, the next r are its pairs, the rest are new.
#[derive(Clone)]
pub struct SymplecticBasis {
    coords: Coords,
    pairs: Vec<(Row, Row)>,
    s: usize,
    r: usize,
}

impl std::fmt::Debug for SymplecticBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymplecticBasis").field("s", &self.s).field("r", &self.r).field("pairs", &self.pairs()).finish()
    }
}

/// g − ⟨g|z⟩x + ⟨g|x⟩z, orthogonal to both members of the pair (x, z).
fn reduce_against_pair(coords: &Coords, g: &[u32], x: &Row, z: &Row) -> Row {
    let w = &coords.work;
    let gz = coords.form(g, z);
    let gx = coords.form(g, x);
    let mut out = g.to_vec();
    linalg::axpy(w, &mut out, w.neg(gz), x);
    linalg::axpy(w, &mut out, gx, z);
    out
}

fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&a| a == 0)
}

impl HyperbolicDecomposition {
    /// Build from explicit vectors; the pairing relations and independence are checked.
    pub fn new(
        field: &Arc<FieldSpec>,
        n: usize,
        t: u32,
        isotropic: &[SympVector],
        pairs: &[(SympVector, SympVector)],
    ) -> Result<Self> {
        let coords = Coords::new(field, n, t)?;
        let enc = |v: &SympVector| -> Result<Row> {
            if **v.field() != **field || v.n() != n {
                return Err(Error::InvalidDecomposition("vector outside the ambient space".into()));
            }
            Ok(coords.encode(v))
        };
        let isotropic = isotropic.iter().map(enc).collect::<Result<Vec<_>>>()?;
        let pairs = pairs.iter().map(|(x, z)| Ok((enc(x)?, enc(z)?))).collect::<Result<Vec<_>>>()?;
        let dec = HyperbolicDecomposition { coords, isotropic, pairs };
        dec.validate()?;
        Ok(dec)
    }

    pub fn s(&self) -> usize {
        self.isotropic.len()
    }

    pub fn r(&self) -> usize {
        self.pairs.len()
    }

    pub fn n(&self) -> usize {
        self.coords.n
    }

    pub fn coeff_degree(&self) -> u32 {
        self.coords.t
    }

    pub fn isotropic(&self) -> Vec<SympVector> {
        self.isotropic.iter().map(|v| self.coords.decode(v)).collect()
    }

    pub fn pairs(&self) -> Vec<(SympVector, SympVector)> {
        self.pairs.iter().map(|(x, z)| (self.coords.decode(x), self.coords.decode(z))).collect()
    }

    /// The code spanned by all listed vectors.
    pub fn span(&self) -> AdditiveCode {
        let mut rows = self.isotropic.clone();
        for (x, z) in &self.pairs {
            rows.push(x.clone());
            rows.push(z.clone());
        }
        AdditiveCode::from_rows(self.coords.clone(), rows)
    }

    /// The code spanned by the isotropic vectors and the first `keep` pairs.
    pub fn span_prefix(&self, keep: usize) -> AdditiveCode {
        let mut rows = self.isotropic.clone();
        for (x, z) in self.pairs.iter().take(keep) {
            rows.push(x.clone());
            rows.push(z.clone());
        }
        AdditiveCode::from_rows(self.coords.clone(), rows)
    }

    fn all_vectors(&self) -> Vec<&Row> {
        let mut out: Vec<&Row> = self.isotropic.iter().collect();
        for (x, z) in &self.pairs {
            out.push(x);
            out.push(z);
        }
        out
    }

    /// Checks every pairing relation and linear independence.
    pub fn validate(&self) -> Result<()> {
        let c = &self.coords;
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        for (i, a) in self.isotropic.iter().enumerate() {
            for (j, b) in self.isotropic.iter().enumerate() {
                if c.form(a, b) != 0 {
                    return bad(format!("isotropic vectors {i} and {j} pair nontrivially"));
                }
            }
            for (k, (x, z)) in self.pairs.iter().enumerate() {
                if c.form(a, x) != 0 || c.form(a, z) != 0 {
                    return bad(format!("isotropic vector {i} is not orthogonal to pair {k}"));
                }
            }
        }
        for (k, (xk, zk)) in self.pairs.iter().enumerate() {
            for (l, (xl, zl)) in self.pairs.iter().enumerate() {
                let want = u32::from(k == l);
                if c.form(xk, zl) != want || c.form(xk, xl) != 0 || c.form(zk, zl) != 0 {
                    return bad(format!("pairs {k} and {l} violate the pairing relations"));
                }
            }
        }
        let rows: Vec<Row> = self.all_vectors().into_iter().cloned().collect();
        if !rows.is_empty() && linalg::rank(&c.work, rows.clone()) != rows.len() {
            return bad("vectors are linearly dependent".into());
        }
        Ok(())
    }
}

/// Symplectic Gram–Schmidt on the canonical generators of `c`.
pub fn hyperbolic_decompose(c: &AdditiveCode) -> HyperbolicDecomposition {
    let coords = c.coords().clone();
    let w = coords.work.clone();
    let mut rest: Vec<Row> = c.rows().to_vec();
    let mut isotropic = Vec::new();
    let mut pairs = Vec::new();
    while !rest.is_empty() {
        let v = rest.remove(0);
        let partner = rest.iter().position(|g| coords.form(&v, g) != 0);
        let Some(j) = partner else {
            isotropic.push(v);
            continue;
        };
        let g = rest.remove(j);
        let inv = w.inv(coords.form(&v, &g)).expect("nonzero pairing");
        let mut z = g;
        linalg::scale(&w, &mut z, inv);
        rest = rest.iter().map(|g| reduce_against_pair(&coords, g, &v, &z)).collect();
        pairs.push((v, z));
    }
    let dec = HyperbolicDecomposition { coords, isotropic, pairs };
    debug_assert!(dec.validate().is_ok());
    dec
}

/// Extends a decomposition of a code in F_q^{2n} to a full symplectic basis.
pub fn extend_to_full_symplectic_basis(dec: &HyperbolicDecomposition, n: usize) -> Result<SymplecticBasis> {
    if n != dec.n() {
        return Err(Error::InvalidDecomposition(format!("decomposition lives in length {}, not {n}", dec.n())));
    }
    dec.validate()?;
    let coords = dec.coords.clone();
    let w = coords.work.clone();
    let len = coords.len();
    let total = len / 2;

    // partners for z_1..z_s: ⟨x_k|z_j⟩ = δ_kj, orthogonal to dec pairs and earlier partners
    let mut partners: Vec<Row> = Vec::with_capacity(dec.s());
    for k in 0..dec.s() {
        let mut eqs = Vec::new();
        let mut rhs = Vec::new();
        for (j, z) in dec.isotropic.iter().enumerate() {
            eqs.push(coords.functional(z));
            rhs.push(u32::from(j == k));
        }
        for (x, z) in &dec.pairs {
            eqs.push(coords.functional(x));
            rhs.push(0);
            eqs.push(coords.functional(z));
            rhs.push(0);
        }
        for x in &partners {
            eqs.push(coords.functional(x));
            rhs.push(0);
        }
        let x = linalg::solve(&w, &eqs, &rhs, len)
            .ok_or_else(|| Error::InvalidDecomposition("no partner for an isotropic vector".into()))?;
        partners.push(x);
    }

    let mut pairs: Vec<(Row, Row)> = partners.into_iter().zip(dec.isotropic.iter().cloned()).collect();
    pairs.extend(dec.pairs.iter().cloned());

    let project = |e: &[u32], pairs: &[(Row, Row)]| -> Row {
        let mut v = e.to_vec();
        for (x, z) in pairs {
            let ez = coords.form(e, z);
            let ex = coords.form(e, x);
            linalg::axpy(&w, &mut v, w.neg(ez), x);
            linalg::axpy(&w, &mut v, ex, z);
        }
        v
    };
    let unit = |i: usize| -> Row {
        let mut e = vec![0; len];
        e[i] = 1;
        e
    };
    let mut i = 0;
    while pairs.len() < total && i < len {
        let v = project(&unit(i), &pairs);
        i += 1;
        if is_zero(&v) {
            continue;
        }
        let Some(j) = (0..len).find(|&j| coords.form(&v, &unit(j)) != 0) else {
            continue;
        };
        let mut z = project(&unit(j), &pairs);
        let inv = w.inv(coords.form(&v, &z)).expect("nondegenerate complement");
        linalg::scale(&w, &mut z, inv);
        pairs.push((v, z));
    }
    if pairs.len() != total {
        return Err(Error::InvalidDecomposition("basis completion fell short".into()));
    }
    let basis = SymplecticBasis { coords, pairs, s: dec.s(), r: dec.r() };
    basis.validate()?;
    Ok(basis)
}

impl SymplecticBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn pairs(&self) -> Vec<(SympVector, SympVector)> {
        self.pairs.iter().map(|(x, z)| (self.coords.decode(x), self.coords.decode(z))).collect()
    }

    /// Pairs beyond the completed decomposition.
    pub fn new_pairs(&self) -> Vec<(SympVector, SympVector)> {
        self.pairs()[self.s + self.r..].to_vec()
    }

    pub(crate) fn raw_pair(&self, i: usize) -> (&Row, &Row) {
        (&self.pairs[i].0, &self.pairs[i].1)
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.coords;
        for (k, (xk, zk)) in self.pairs.iter().enumerate() {
            for (l, (xl, zl)) in self.pairs.iter().enumerate() {
                let want = u32::from(k == l);
                if c.form(xk, zl) != want || c.form(xk, xl) != 0 || c.form(zk, zl) != 0 {
                    return Err(Error::InvalidDecomposition(format!("basis pairs {k} and {l} fail the relations")));
                }
            }
        }
        Ok(())
    }
}

/// `C` with the pair at `index` of `basis` adjoined.
pub(crate) fn adjoin_pair(c: &AdditiveCode, basis: &SymplecticBasis, index: usize) -> AdditiveCode {
    let (x, z) = basis.raw_pair(index);
    let mut rows = c.rows().to_vec();
    rows.push(x.clone());
    rows.push(z.clone());
    AdditiveCode::from_rows(c.coords().clone(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::trace_symp;

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::conway(2, 1).unwrap()
    }

    fn v(f: &Arc<FieldSpec>, xy: &[u32]) -> SympVector {
        SympVector::from_concat(f, xy).unwrap()
    }

    #[test]
    fn plane_is_one_pair() {
        let f = f2();
        let c = AdditiveCode::full(&f, 1, 1).unwrap();
        let dec = hyperbolic_decompose(&c);
        assert_eq!((dec.s(), dec.r()), (0, 1));
        let (x, z) = &dec.pairs()[0];
        assert_eq!((x.concat(), z.concat()), (vec![1, 0], vec![0, 1]));
    }

    #[test]
    fn isotropic_line() {
        let f = f2();
        let c = AdditiveCode::from_generators(&f, 1, 1, &[v(&f, &[1, 0])]).unwrap();
        let dec = hyperbolic_decompose(&c);
        assert_eq!((dec.s(), dec.r()), (1, 0));
        let basis = extend_to_full_symplectic_basis(&dec, 1).unwrap();
        let (x1, z1) = &basis.pairs()[0];
        assert_eq!(z1.concat(), vec![1, 0]);
        assert_eq!(trace_symp(x1, z1).unwrap(), 1);
        assert_eq!(x1.concat(), vec![0, 1]);
    }

    #[test]
    fn zero_code_completion() {
        let f = f2();
        let dec = hyperbolic_decompose(&AdditiveCode::zero(&f, 1, 1).unwrap());
        assert_eq!((dec.s(), dec.r()), (0, 0));
        let basis = extend_to_full_symplectic_basis(&dec, 1).unwrap();
        assert_eq!(basis.len(), 1);
        let (x, z) = &basis.pairs()[0];
        assert_eq!(trace_symp(x, z).unwrap(), 1);
    }

    #[test]
    fn full_rank_is_unchanged() {
        let f = FieldSpec::conway(3, 1).unwrap();
        let c = AdditiveCode::full(&f, 2, 1).unwrap();
        let dec = hyperbolic_decompose(&c);
        assert_eq!(dec.r(), 2);
        let basis = extend_to_full_symplectic_basis(&dec, 2).unwrap();
        assert_eq!(basis.pairs(), dec.pairs());
        assert!(basis.new_pairs().is_empty());
    }

    #[test]
    fn trace_form_over_gf4() {
        let f = FieldSpec::conway(2, 2).unwrap();
        let c = AdditiveCode::from_generators(&f, 2, 1, &[v(&f, &[1, 2, 0, 3]), v(&f, &[0, 0, 2, 1])]).unwrap();
        let dec = hyperbolic_decompose(&c);
        dec.validate().unwrap();
        assert_eq!(dec.span(), c);
        let basis = extend_to_full_symplectic_basis(&dec, 2).unwrap();
        assert_eq!(basis.len(), 4);
        for (x, z) in basis.pairs() {
            assert_eq!(trace_symp(&x, &z).unwrap(), 1);
        }
    }

    #[test]
    fn invalid_input_rejected() {
        let f = f2();
        let a = v(&f, &[1, 0]);
        let err = HyperbolicDecomposition::new(&f, 1, 1, std::slice::from_ref(&a), &[(a.clone(), v(&f, &[0, 1]))]);
        assert!(matches!(err, Err(Error::InvalidDecomposition(_))));
        let dec = HyperbolicDecomposition::new(&f, 1, 1, &[a], &[]).unwrap();
        assert!(matches!(extend_to_full_symplectic_basis(&dec, 2), Err(Error::InvalidDecomposition(_))));
    }
}
