//! Dense Gaussian elimination over a [`Gf`]. Matrices are `Vec` of rows.

use alloc::vec::Vec;

use crate::gf::{Elem, Gf};

/// Row-reduced echelon form with zero rows dropped; returns the rows and
/// their pivot columns.
pub fn rref(field: &Gf, mut rows: Vec<Vec<Elem>>) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let c = row[col];
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(c, pv));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(field: &Gf, rows: Vec<Vec<Elem>>) -> usize {
    rref(field, rows).0.len()
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` is in the span.
pub fn reduce(field: &Gf, basis: &[Vec<Elem>], pivots: &[usize], v: &[Elem]) -> Vec<Elem> {
    let mut out = v.to_vec();
    for (row, &col) in basis.iter().zip(pivots) {
        let c = out[col];
        if c.is_zero() {
            continue;
        }
        for (x, &b) in out.iter_mut().zip(row) {
            *x = field.sub(*x, field.mul(c, b));
        }
    }
    out
}

pub fn in_span(field: &Gf, basis: &[Vec<Elem>], pivots: &[usize], v: &[Elem]) -> bool {
    reduce(field, basis, pivots, v).iter().all(|x| x.is_zero())
}

/// `v · M` for a row vector `v`.
pub fn vec_mat(field: &Gf, v: &[Elem], mat: &[Vec<Elem>]) -> Vec<Elem> {
    let ncols = mat.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|j| {
            v.iter().zip(mat).fold(Elem::ZERO, |acc, (&x, row)| {
                field.add(acc, field.mul(x, row[j]))
            })
        })
        .collect()
}

pub fn mat_mul(field: &Gf, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    a.iter().map(|row| vec_mat(field, row, b)).collect()
}

/// Inverse of a square matrix, if it exists.
pub fn invert(field: &Gf, mat: &[Vec<Elem>]) -> Option<Vec<Vec<Elem>>> {
    let n = mat.len();
    let aug: Vec<Vec<Elem>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }));
            r
        })
        .collect();
    let (red, pivots) = rref(field, aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_membership_gf4() {
        let f = Gf::new(2, 2).unwrap();
        let (w, w2) = (Elem(2), Elem(3));
        let rows = alloc::vec![
            alloc::vec![Elem(1), w, Elem(0)],
            alloc::vec![w, w2, Elem(0)],
            alloc::vec![Elem(0), Elem(1), Elem(1)],
        ];
        let (basis, pivots) = rref(&f, rows);
        assert_eq!(pivots, [0, 1]);
        assert!(in_span(&f, &basis, &pivots, &[w, w2, Elem(0)]));
        assert!(!in_span(&f, &basis, &pivots, &[Elem(0), Elem(0), Elem(1)]));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Gf::new(3, 2).unwrap();
        let m = alloc::vec![alloc::vec![Elem(1), Elem(4)], alloc::vec![Elem(7), Elem(2)],];
        let inv = invert(&f, &m).unwrap();
        let id = mat_mul(&f, &m, &inv);
        assert_eq!(
            id,
            alloc::vec![alloc::vec![Elem(1), Elem(0)], alloc::vec![Elem(0), Elem(1)]]
        );
        let sing = alloc::vec![alloc::vec![Elem(1), Elem(2)], alloc::vec![Elem(2), Elem(1)]];
        assert!(invert(&f, &sing).is_none());
    }
}
