//! Exact dense linear algebra over a field.

use crate::field::Field;

/// Row echelon rank by Gaussian elimination.
pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][col]).expect("nonzero pivot");
        let pivot: Vec<F::Elem> = rows[rank].iter().map(|x| field.mul(x, &inv)).collect();
        for r in rank + 1..rows.len() {
            if field.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                if !field.is_zero(&pivot[c]) {
                    rows[r][c] = field.sub(&rows[r][c], &field.mul(&factor, &pivot[c]));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Product of two dense matrices.
pub fn mat_mul<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = field.zero();
                    for k in 0..inner {
                        if !field.is_zero(&row[k]) && !field.is_zero(&b[k][j]) {
                            acc = field.add(&acc, &field.mul(&row[k], &b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn ranks() {
        let f = Rationals;
        let m = |v: &[&[i64]]| v.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect::<Vec<Vec<_>>>();
        assert_eq!(rank(&f, m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&f, m(&[&[0, 1, 0], &[1, 0, 0], &[1, 1, 0]])), 2);
        assert_eq!(rank(&f, m(&[&[0, 0]])), 0);
        assert_eq!(rank(&f, vec![]), 0);
        let p = PrimeField::new(5).unwrap();
        let rows = vec![vec![1u64, 2], vec![3, 1]];
        // det = 1 - 6 = -5 = 0 mod 5
        assert_eq!(rank(&p, rows), 1);
    }
}
