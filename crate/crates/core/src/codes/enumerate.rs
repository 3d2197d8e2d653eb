//! Span enumeration over F_p.
//!
//! Vectors are F_p digit rows grouped into fixed-width chunks, one chunk per
//! code coordinate; the weight of a vector is its number of nonzero chunks.
//! Spans are walked in p-ary modular Gray order, so every step adds exactly one
//! generator: at index k the generator whose position equals the number of
//! trailing base-p zeros of k.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::gf::FieldSpec;
use crate::linalg::{self, Row};

#[derive(Debug, Clone)]
pub(crate) struct DigitSpan {
    pub p: u32,
    pub chunk: usize,
    pub rows: Vec<Row>,
}

#[inline]
pub(crate) fn chunk_weight(v: &[u32], chunk: usize) -> usize {
    match chunk {
        1 => v.iter().filter(|&&d| d != 0).count(),
        2 => v.chunks_exact(2).filter(|c| (c[0] | c[1]) != 0).count(),
        _ => v.chunks_exact(chunk).filter(|c| c.iter().any(|&d| d != 0)).count(),
    }
}

#[inline]
fn add_assign(v: &mut [u32], g: &[u32], p: u32) {
    if p == 2 {
        for (a, &b) in v.iter_mut().zip(g) {
            *a ^= b;
        }
    } else {
        for (a, &b) in v.iter_mut().zip(g) {
            let s = *a + b;
            *a = if s >= p { s - p } else { s };
        }
    }
}

fn add_scaled(v: &mut [u32], g: &[u32], c: u32, p: u32) {
    for (a, &b) in v.iter_mut().zip(g) {
        *a = (*a + c * b) % p;
    }
}

/// p^e, saturating at u64::MAX.
pub(crate) fn pow_sat(p: u32, e: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = match acc.checked_mul(p as u64) {
            Some(v) => v,
            None => return u64::MAX,
        };
    }
    acc
}

impl DigitSpan {
    pub fn len(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Element at Gray index k.
    pub fn element_at(&self, k: u64) -> Row {
        let mut v = vec![0u32; self.len()];
        let p = self.p as u64;
        let mut rest = k;
        let mut digit = rest % p;
        for row in &self.rows {
            rest /= p;
            let next = rest % p;
            let g = ((digit + p - next) % p) as u32;
            if g != 0 {
                add_scaled(&mut v, row, g, self.p);
            }
            digit = next;
        }
        v
    }

    fn walk_min(&self, lo: u64, hi: u64, floor: usize) -> Option<(usize, u64)> {
        if lo >= hi {
            return None;
        }
        let mut v = self.element_at(lo);
        let mut best = (chunk_weight(&v, self.chunk), lo);
        if best.0 <= floor {
            return Some(best);
        }
        let p = self.p as u64;
        for k in lo + 1..hi {
            let j = if p == 2 {
                k.trailing_zeros() as usize
            } else {
                let mut kk = k;
                let mut j = 0;
                while kk % p == 0 {
                    kk /= p;
                    j += 1;
                }
                j
            };
            add_assign(&mut v, &self.rows[j], self.p);
            let w = chunk_weight(&v, self.chunk);
            if w < best.0 {
                best = (w, k);
                if w <= floor {
                    break;
                }
            }
        }
        Some(best)
    }

    /// Minimum weight over Gray indices [lo, hi), with the first index attaining
    /// it. Scanning stops early once a weight <= `floor` is found; the result does
    /// not depend on the number of workers.
    pub fn min_weight(&self, lo: u64, hi: u64, floor: usize, workers: usize) -> Option<(usize, u64)> {
        let span = hi.saturating_sub(lo);
        let parts = if workers <= 1 || span < 1 << 14 { 1 } else { (workers * 4) as u64 };
        if parts == 1 {
            return self.walk_min(lo, hi, floor);
        }
        let step = span.div_ceil(parts);
        let ranges: Vec<(u64, u64)> =
            (0..parts).map(|i| (lo + i * step, (lo + (i + 1) * step).min(hi))).filter(|(a, b)| a < b).collect();
        let run = || ranges.par_iter().filter_map(|&(a, b)| self.walk_min(a, b, floor)).min();
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    }

    /// Number of elements of each weight over the whole span.
    pub fn histogram(&self, ncoords: usize) -> Vec<u64> {
        let mut hist = vec![0u64; ncoords + 1];
        let total = pow_sat(self.p, self.dim());
        let mut v = vec![0u32; self.len()];
        hist[0] += 1;
        let p = self.p as u64;
        for k in 1..total {
            let mut kk = k;
            let mut j = 0;
            while kk % p == 0 {
                kk /= p;
                j += 1;
            }
            add_assign(&mut v, &self.rows[j], self.p);
            hist[chunk_weight(&v, self.chunk)] += 1;
        }
        hist
    }
}

/// Search budget for upper-bound witnesses.
#[derive(Debug, Clone, Copy)]
pub(crate) struct WitnessBudget {
    pub info_set_rounds: usize,
    pub combination_depth: usize,
    pub random_samples: usize,
    pub seed: u64,
}

/// Low-weight elements of span(a) outside span(b) (b given in RREF).
///
/// Returns the lightest witness found, stopping as soon as one of weight
/// <= `stop_at` is seen.
pub(crate) fn witness_search(
    prime: &FieldSpec,
    a: &DigitSpan,
    b_rref: &(Vec<Row>, Vec<usize>),
    stop_at: usize,
    budget: WitnessBudget,
) -> Option<(usize, Row)> {
    let p = a.p;
    let chunk = a.chunk;
    let ncoords = a.len() / chunk.max(1);
    let outside = |v: &[u32]| -> bool {
        let r = linalg::reduce(prime, &b_rref.0, &b_rref.1, v);
        r.iter().any(|&x| x != 0)
    };
    let mut best: Option<(usize, Row)> = None;
    let consider = |v: &[u32], best: &mut Option<(usize, Row)>| -> bool {
        let w = chunk_weight(v, chunk);
        if w > 0 && best.as_ref().is_none_or(|(bw, _)| w < *bw) && outside(v) {
            *best = Some((w, v.to_vec()));
        }
        best.as_ref().is_some_and(|(bw, _)| *bw <= stop_at)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);

    // information sets: echelon forms under random coordinate orders
    for round in 0..budget.info_set_rounds {
        let mut order: Vec<usize> = (0..ncoords).collect();
        if round > 0 {
            order.shuffle(&mut rng);
        }
        let permuted: Vec<Row> = a
            .rows
            .iter()
            .map(|r| order.iter().flat_map(|&c| r[c * chunk..(c + 1) * chunk].iter().copied()).collect())
            .collect();
        let (ech, _) = linalg::rref(prime, permuted);
        let restore = |v: &[u32]| -> Row {
            let mut out = vec![0u32; v.len()];
            for (slot, &c) in order.iter().enumerate() {
                out[c * chunk..(c + 1) * chunk].copy_from_slice(&v[slot * chunk..(slot + 1) * chunk]);
            }
            out
        };
        let rows: Vec<Row> = ech.iter().map(|r| restore(r)).collect();
        for r in &rows {
            if consider(r, &mut best) {
                return best;
            }
        }
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                for c in 1..p {
                    let mut v = rows[i].clone();
                    add_scaled(&mut v, &rows[j], c, p);
                    if consider(&v, &mut best) {
                        return best;
                    }
                }
            }
        }
    }

    // combinations of up to `combination_depth` canonical generators
    let r = a.rows.len();
    if budget.combination_depth >= 1 {
        for i in 0..r {
            for c in 1..p {
                let mut v = a.rows[i].clone();
                for x in v.iter_mut() {
                    *x = *x * c % p;
                }
                if consider(&v, &mut best) {
                    return best;
                }
            }
        }
    }
    if budget.combination_depth >= 2 {
        for i in 0..r {
            for j in i + 1..r {
                for ci in 1..p {
                    for cj in 1..p {
                        let mut v = vec![0u32; a.len()];
                        add_scaled(&mut v, &a.rows[i], ci, p);
                        add_scaled(&mut v, &a.rows[j], cj, p);
                        if consider(&v, &mut best) {
                            return best;
                        }
                    }
                }
            }
        }
    }
    if budget.combination_depth >= 3 {
        let mut v = vec![0u32; a.len()];
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    for ci in 1..p {
                        for cj in 1..p {
                            for ck in 1..p {
                                v.iter_mut().for_each(|x| *x = 0);
                                add_scaled(&mut v, &a.rows[i], ci, p);
                                add_scaled(&mut v, &a.rows[j], cj, p);
                                add_scaled(&mut v, &a.rows[k], ck, p);
                                if consider(&v, &mut best) {
                                    return best;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // random walk through the span
    if r > 0 {
        let mut v = vec![0u32; a.len()];
        for row in &a.rows {
            add_scaled(&mut v, row, rng.gen_range(0..p), p);
        }
        for _ in 0..budget.random_samples {
            let i = rng.gen_range(0..r);
            let c = rng.gen_range(1..p.max(2));
            add_scaled(&mut v, &a.rows[i], c % p, p);
            if consider(&v, &mut best) {
                return best;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gray_walk_visits_every_element_once() {
        let span = DigitSpan { p: 3, chunk: 1, rows: vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]] };
        let mut seen = std::collections::HashSet::new();
        for k in 0..27 {
            assert!(seen.insert(span.element_at(k)));
        }
        let hist = span.histogram(3);
        assert_eq!(hist, vec![1, 6, 12, 8]);
    }

    #[test]
    fn consecutive_gray_elements_differ_by_one_generator() {
        let span = DigitSpan { p: 5, chunk: 1, rows: vec![vec![1, 0], vec![0, 1]] };
        for k in 1..25u64 {
            let a = span.element_at(k - 1);
            let b = span.element_at(k);
            let mut j = 0;
            let mut kk = k;
            while kk % 5 == 0 {
                kk /= 5;
                j += 1;
            }
            let mut expect = a.clone();
            add_assign(&mut expect, &span.rows[j], 5);
            assert_eq!(expect, b);
        }
    }

    #[test]
    fn partitioned_minimum_matches_sequential() {
        let span = DigitSpan {
            p: 2,
            chunk: 2,
            rows: (0..16).map(|i| (0..24).map(|j| ((i * 7 + j * 3) % 5 == 0) as u32).collect()).collect(),
        };
        let total = 1u64 << 16;
        assert_eq!(span.min_weight(1, total, 0, 1), span.min_weight(1, total, 0, 4));
    }
}
