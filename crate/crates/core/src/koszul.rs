//! Koszul complex of a homogeneous sequence and its homology, computed
//! degree by degree with exact ranks.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{BudgetKind, Error, Result};
use crate::field::Field;
use crate::linalg::rank;
use crate::poly::{Monomial, Polynomial, Ring};

/// Default internal degree bound for the oracle.
pub const DEFAULT_MAX_DEGREE: u32 = 8;
/// Default cap on the dimension of a graded piece.
pub const DEFAULT_PIECE_CAP: usize = 20_000;

/// `0 -> Λ^t R^t -> ... -> Λ^1 R^t -> R`, with `Λ^p` indexed by sorted
/// `p`-subsets of positions.
#[derive(Clone, Debug)]
pub struct KoszulComplex<F: Field> {
    ring: Ring<F>,
    xs: Vec<Polynomial<F>>,
    degrees: Vec<u32>,
    bases: Vec<Vec<Vec<usize>>>,
}

fn subsets(t: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, t: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..t {
            cur.push(i);
            go(i + 1, t, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, t, p, &mut Vec::new(), &mut out);
    out
}

/// Monomials of total degree `d` in `n` variables.
fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial::from_exponents(cur.iter().copied()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { vec![] };
    }
    let mut out = Vec::new();
    go(0, d, &mut vec![0; n], &mut out);
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPieceReport {
    pub p: usize,
    pub degree: u32,
    pub dim_piece: usize,
    /// Rank of `d_p` out of this piece.
    pub rank_out: usize,
    /// Rank of `d_{p+1}` into this piece.
    pub rank_in: usize,
    pub homology_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KoszulVerdict {
    NoHomologyUpTo { max_degree: u32 },
    HomologyFoundAt { p: usize, degree: u32, dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulOracleReport {
    pub verdict: KoszulVerdict,
    pub pieces: Vec<GradedPieceReport>,
    /// The degree bound is a screen, not a proof bound.
    pub note: &'static str,
}

impl<F: Field> KoszulComplex<F> {
    pub fn build(ring: &Ring<F>, xs: &[Polynomial<F>]) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::out_of_range("sequence length", "need at least one element"));
        }
        let mut degrees = Vec::with_capacity(xs.len());
        let mut lifted = Vec::with_capacity(xs.len());
        for x in xs {
            if !x.ring().same_space(ring) {
                return Err(Error::RingMismatch);
            }
            match x.is_homogeneous() {
                Some(d) if d > 0 && !x.is_zero() => degrees.push(d),
                _ => return Err(Error::NotHomogeneous(x.to_text())),
            }
            lifted.push(x.to_ring(ring)?);
        }
        let t = xs.len();
        let bases = (0..=t).map(|p| subsets(t, p)).collect();
        Ok(KoszulComplex {
            ring: ring.clone(),
            xs: lifted,
            degrees,
            bases,
        })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn basis(&self, p: usize) -> &[Vec<usize>] {
        &self.bases[p]
    }

    /// `d_p` as a matrix: rows index `Λ^{p-1}`, columns `Λ^p`.
    pub fn differential(&self, p: usize) -> Vec<Vec<Polynomial<F>>> {
        assert!(p >= 1 && p <= self.len());
        let rows = &self.bases[p - 1];
        let index: HashMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = vec![vec![Polynomial::zero(&self.ring); self.bases[p].len()]; rows.len()];
        for (c, s) in self.bases[p].iter().enumerate() {
            for (pos, &i) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(pos);
                let entry = if pos % 2 == 0 { self.xs[i].clone() } else { self.xs[i].neg() };
                m[index[&rest]][c] = entry;
            }
        }
        m
    }

    /// `d_{p-1} ∘ d_p == 0` for every `p`.
    pub fn is_complex(&self) -> Result<bool> {
        for p in 2..=self.len() {
            let a = self.differential(p - 1);
            let b = self.differential(p);
            for row in &a {
                for c in 0..b[0].len() {
                    let mut acc = Polynomial::zero(&self.ring);
                    for (k, entry) in row.iter().enumerate() {
                        acc = acc.add(&entry.mul(&b[k][c])?)?;
                    }
                    if !acc.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn subset_degree(&self, s: &[usize]) -> u32 {
        s.iter().map(|&i| self.degrees[i]).sum()
    }

    /// Basis of the degree-`d` piece of `Λ^p`: pairs (subset, monomial).
    fn piece(&self, p: usize, d: u32, cap: usize) -> Result<Vec<(usize, Monomial)>> {
        let mut out = Vec::new();
        for (k, s) in self.bases[p].iter().enumerate() {
            let sd = self.subset_degree(s);
            if sd > d {
                continue;
            }
            let md = d - sd;
            if binomial(self.ring.nvars() + md as usize - 1, md as usize) + out.len() > cap {
                return Err(Error::Budget(BudgetKind::PieceDimension(cap)));
            }
            out.extend(monomials_of_degree(self.ring.nvars(), md).into_iter().map(|m| (k, m)));
        }
        Ok(out)
    }

    /// Rank of `d_p` restricted to internal degree `d`.
    fn rank_at(&self, p: usize, d: u32, cap: usize) -> Result<usize> {
        if p == 0 || p > self.len() {
            return Ok(0);
        }
        let f = self.ring.field();
        let src = self.piece(p, d, cap)?;
        let dst = self.piece(p - 1, d, cap)?;
        if src.is_empty() || dst.is_empty() {
            return Ok(0);
        }
        let row_of: HashMap<(usize, &Monomial), usize> = dst.iter().enumerate().map(|(i, (k, m))| ((*k, m), i)).collect();
        let dp = self.differential(p);
        // columns of d_p become rows of the transpose; rank is the same
        let mut rows = Vec::with_capacity(src.len());
        for (k, m) in &src {
            let mut row = vec![f.zero(); dst.len()];
            for (r, entries) in dp.iter().enumerate() {
                for (tm, c) in entries[*k].terms() {
                    let target = tm.mul(m);
                    let idx = row_of[&(r, &target)];
                    row[idx] = f.add(&row[idx], c);
                }
            }
            rows.push(row);
        }
        Ok(rank(f, rows))
    }

    pub fn piece_report(&self, p: usize, d: u32, cap: usize) -> Result<GradedPieceReport> {
        let dim_piece = self.piece(p, d, cap)?.len();
        let rank_out = self.rank_at(p, d, cap)?;
        let rank_in = self.rank_at(p + 1, d, cap)?;
        Ok(GradedPieceReport {
            p,
            degree: d,
            dim_piece,
            rank_out,
            rank_in,
            homology_dim: dim_piece - rank_out - rank_in,
        })
    }

    /// Homology of `K_p` in internal degrees `0..=max_degree`.
    pub fn homology_dims(&self, p: usize, max_degree: u32, cap: usize) -> Result<Vec<GradedPieceReport>> {
        if p > self.len() {
            return Err(Error::out_of_range("p", format!("{p} > {}", self.len())));
        }
        (0..=max_degree)
            .into_par_iter()
            .map(|d| self.piece_report(p, d, cap))
            .collect()
    }
}

/// Necessary-condition screen for regularity: any higher homology up to
/// `max_degree` proves the sequence is not regular.
pub fn ci_oracle<F: Field>(
    ring: &Ring<F>,
    xs: &[Polynomial<F>],
    max_degree: u32,
    cap: usize,
) -> Result<KoszulOracleReport> {
    let k = KoszulComplex::build(ring, xs)?;
    let mut pieces = Vec::new();
    for p in 1..=k.len() {
        pieces.extend(k.homology_dims(p, max_degree, cap)?);
    }
    let found = pieces
        .iter()
        .filter(|r| r.homology_dim > 0)
        .min_by_key(|r| (r.p, r.degree));
    let verdict = match found {
        Some(r) => KoszulVerdict::HomologyFoundAt {
            p: r.p,
            degree: r.degree,
            dim: r.homology_dim,
        },
        None => KoszulVerdict::NoHomologyUpTo { max_degree },
    };
    Ok(KoszulOracleReport {
        verdict,
        pieces,
        note: "vanishing up to the degree bound is consistent with regularity but does not prove it",
    })
}
