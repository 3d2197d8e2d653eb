//! Structural invariants every additive code must satisfy, checked through the
//! public API with independent recomputation where possible.

use subcodes::codes::trace_symp;
use subcodes::symplectic::{extend_to_full_symplectic_basis, hyperbolic_decompose};
use subcodes::{AdditiveCode, SympVector};

fn form(t: u32, u: &SympVector, v: &SympVector) -> u32 {
    if t == 1 {
        trace_symp(u, v).unwrap()
    } else {
        u.symp_fq(v).unwrap()
    }
}

fn same_code(a: &AdditiveCode, b: &AdditiveCode) -> bool {
    a.is_subcode_of(b) && b.is_subcode_of(a)
}

/// Returns a description of every violated invariant; empty when all hold.
pub fn violations(c: &AdditiveCode) -> Vec<String> {
    let mut out = Vec::new();
    let f = c.field();
    let (p, m, n, t) = (f.p(), f.m() as usize, c.n(), c.coeff_degree());
    let dual = c.dual_symp();

    if !same_code(&dual.dual_symp(), c) {
        out.push("dual is not an involution".into());
    }
    if c.log_p_size() + dual.log_p_size() != 2 * n * m {
        out.push(format!("|C||C^⊥| = p^{} instead of p^{}", c.log_p_size() + dual.log_p_size(), 2 * n * m));
    }

    let gens = c.generators();
    for u in &gens {
        if trace_symp(u, u).unwrap() != 0 {
            out.push("form is not alternating".into());
        }
        for v in &gens {
            if !(trace_symp(u, v).unwrap() + trace_symp(v, u).unwrap()).is_multiple_of(p) {
                out.push("form is not antisymmetric".into());
            }
        }
        for v in dual.generators() {
            if trace_symp(u, &v).unwrap() != 0 {
                out.push("dual generator pairs with a code generator".into());
            }
        }
    }

    let dec = hyperbolic_decompose(c);
    if let Err(e) = dec.validate() {
        out.push(format!("decomposition: {e}"));
    }
    let iso = dec.isotropic();
    let pairs = dec.pairs();
    for (k, (xk, zk)) in pairs.iter().enumerate() {
        for (l, (xl, zl)) in pairs.iter().enumerate() {
            if form(t, xk, zl) != u32::from(k == l) || form(t, xk, xl) != 0 || form(t, zk, zl) != 0 {
                out.push(format!("pairs {k}, {l} violate the relations"));
            }
        }
        for z in &iso {
            if form(t, z, xk) != 0 || form(t, z, zk) != 0 {
                out.push("isotropic vector pairs with a hyperbolic pair".into());
            }
        }
    }
    if !same_code(&dec.span(), c) {
        out.push("decomposition does not span C".into());
    }
    let radical = c.intersect(&dual).unwrap();
    let iso_span = AdditiveCode::from_generators(f, n, t, &iso).unwrap();
    if !same_code(&iso_span, &radical) {
        out.push("isotropic part does not span C ∩ C^⊥s".into());
    }
    match extend_to_full_symplectic_basis(&dec, n) {
        Ok(basis) => {
            let want = n * m / t as usize;
            if basis.len() != want || basis.validate().is_err() {
                out.push(format!("basis has {} pairs, expected {want}", basis.len()));
            }
            let all: Vec<SympVector> = basis.pairs().into_iter().flat_map(|(x, z)| [x, z]).collect();
            let full = AdditiveCode::from_generators(f, n, t, &all).unwrap();
            if full.log_p_size() != 2 * n * m {
                out.push("basis does not span the ambient space".into());
            }
        }
        Err(e) => out.push(format!("basis completion: {e}")),
    }
    out
}
