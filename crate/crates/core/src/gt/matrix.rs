use crate::error::Result;
use crate::field::Field;
use crate::poly::{Polynomial, Ring, Variable};

/// Square matrix with polynomial entries.
#[derive(Clone, Debug)]
pub(crate) struct PolyMatrix<F: Field> {
    pub rows: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> PolyMatrix<F> {
    /// Upper-left `size x size` block of the generic matrix `(x_ij)`.
    pub fn generic(ring: &Ring<F>, size: usize) -> Result<Self> {
        let rows = (1..=size)
            .map(|i| (1..=size).map(|j| Polynomial::var(ring, Variable::entry(i, j))).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(PolyMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.size();
        let ring = self.rows[0][0].ring().clone();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = Polynomial::zero(&ring);
                for k in 0..n {
                    if self.rows[i][k].is_zero() || other.rows[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.rows[i][k].mul(&other.rows[k][j])?)?;
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(PolyMatrix { rows })
    }

    pub fn trace(&self) -> Result<Polynomial<F>> {
        let ring = self.rows[0][0].ring().clone();
        let mut acc = Polynomial::zero(&ring);
        for i in 0..self.size() {
            acc = acc.add(&self.rows[i][i])?;
        }
        Ok(acc)
    }

    pub fn add_scalar(&mut self, c: &Polynomial<F>) -> Result<()> {
        for i in 0..self.size() {
            self.rows[i][i] = self.rows[i][i].add(c)?;
        }
        Ok(())
    }
}
