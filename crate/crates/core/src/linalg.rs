//! Row reduction over a `FieldSpec`. Rows are dense `Vec<u32>`.

use crate::gf::FieldSpec;

pub(crate) type Row = Vec<u32>;

/// dst += c * src
#[inline]
pub(crate) fn axpy(f: &FieldSpec, dst: &mut [u32], c: u32, src: &[u32]) {
    if c == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = f.add(*d, f.mul(c, s));
        }
    }
}

pub(crate) fn scale(f: &FieldSpec, row: &mut [u32], c: u32) {
    for x in row.iter_mut() {
        *x = f.mul(*x, c);
    }
}

pub(crate) fn dot(f: &FieldSpec, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Reduced row echelon form; zero rows dropped. Returns pivot columns.
pub(crate) fn rref(f: &FieldSpec, mut rows: Vec<Row>) -> (Vec<Row>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = f.inv(rows[rank][col]).expect("nonzero pivot");
        scale(f, &mut rows[rank], inv);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let c = f.neg(row[col]);
                axpy(f, row, c, &pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Remainder of `v` after elimination against a matrix already in RREF.
pub(crate) fn reduce(f: &FieldSpec, basis: &[Row], pivots: &[usize], v: &[u32]) -> Row {
    let mut out = v.to_vec();
    for (row, &col) in basis.iter().zip(pivots) {
        if out[col] != 0 {
            let c = f.neg(out[col]);
            axpy(f, &mut out, c, row);
        }
    }
    out
}

/// Basis of {x : rows · x = 0}, in RREF.
pub(crate) fn null_space(f: &FieldSpec, rows: Vec<Row>, ncols: usize) -> Vec<Row> {
    let (r, pivots) = rref(f, rows);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        out.push(v);
    }
    rref(f, out).0
}

/// Solve A x = b; particular solution with all free variables zero.
pub(crate) fn solve(f: &FieldSpec, a: &[Row], b: &[u32], ncols: usize) -> Option<Row> {
    let aug: Vec<Row> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    if aug.is_empty() {
        return Some(vec![0; ncols]);
    }
    let (r, pivots) = rref(f, aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![0u32; ncols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[ncols];
    }
    Some(x)
}

pub(crate) fn rank(f: &FieldSpec, rows: Vec<Row>) -> usize {
    rref(f, rows).0.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    #[test]
    fn null_space_of_repetition_generator() {
        let f = FieldSpec::conway(2, 1).unwrap();
        let ns = null_space(&f, vec![vec![1, 1, 1]], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(dot(&f, v, &[1, 1, 1]), 0);
        }
    }

    #[test]
    fn solve_inconsistent() {
        let f = FieldSpec::conway(3, 1).unwrap();
        let a = vec![vec![1, 1], vec![2, 2]];
        assert!(solve(&f, &a, &[1, 1], 2).is_none());
        let x = solve(&f, &a, &[1, 2], 2).unwrap();
        assert_eq!(dot(&f, &a[0], &x), 1);
    }
}
