//! Kostant-Wallach map on concrete matrices: characteristic coefficients
//! of the leading principal submatrices, fibers, strong nilpotency and a
//! Jacobian-rank probe of fiber dimension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gt::{chi_level, d};
use crate::linalg::{mat_mul, rank};
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct ConcreteMatrix<F: Field> {
    field: F,
    entries: Vec<Vec<F::Elem>>,
}

impl<F: Field> ConcreteMatrix<F> {
    pub fn new(field: F, entries: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::out_of_range("matrix", "must be square and nonempty"));
        }
        Ok(ConcreteMatrix { field, entries })
    }

    pub fn from_i64(field: F, rows: &[Vec<i64>]) -> Result<Self> {
        let entries = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::new(field, entries)
    }

    pub fn zero(field: F, n: usize) -> Self {
        let entries = vec![vec![field.zero(); n]; n];
        ConcreteMatrix { field, entries }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.entries[i][i] = m.field.one();
        }
        m
    }

    /// Uniform integer entries in `[-bound, bound]`; `strict_lower` zeroes
    /// the diagonal and everything above it.
    pub fn random(field: F, n: usize, bound: i64, strict_lower: bool, rng: &mut impl Rng) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if strict_lower && j >= i {
                            field.zero()
                        } else {
                            field.from_i64(rng.gen_range(-bound..=bound))
                        }
                    })
                    .collect()
            })
            .collect();
        ConcreteMatrix { field, entries }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn entries(&self) -> &[Vec<F::Elem>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i][j] = v;
    }

    /// Upper-left `i x i` block.
    pub fn leading(&self, i: usize) -> Vec<Vec<F::Elem>> {
        self.entries[..i].iter().map(|r| r[..i].to_vec()).collect()
    }

    /// Row-major values, matching the variable order of `Ring::matrix`.
    pub fn as_point(&self) -> Vec<F::Elem> {
        self.entries.iter().flatten().cloned().collect()
    }

    /// `P X P^{-1}` for the permutation matrix sending `e_j` to `e_{π(j)}`
    /// (0-based `perm`).
    pub fn conjugate_by(&self, perm: &[usize]) -> Self {
        let n = self.n();
        let mut out = Self::zero(self.field.clone(), n);
        for i in 0..n {
            for j in 0..n {
                out.entries[perm[i]][perm[j]] = self.entries[i][j].clone();
            }
        }
        out
    }

    pub fn to_texts(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| self.field.format(x)).collect())
            .collect()
    }
}

/// Characteristic polynomials `det(t - X_i)` of all leading principal
/// submatrices, `i = 1..=n`, by Berkowitz's division-free recursion.
/// Entry `i-1` lists coefficients from `t^i` down to `t^0`.
pub fn leading_charpolys<F: Field>(x: &ConcreteMatrix<F>) -> Vec<Vec<F::Elem>> {
    let f = x.field();
    let n = x.n();
    let mut out: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    let mut prev = vec![f.one()];
    for k in 0..n {
        // border of X_{k+1}: row r = X[k][..k], column c = X[..k][k], corner a
        let a = x.get(k, k).clone();
        let mut q = vec![f.one(), f.neg(&a)];
        let mut v: Vec<F::Elem> = (0..k).map(|i| x.get(i, k).clone()).collect();
        for _ in 0..k {
            let rv = (0..k).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(x.get(k, j), &v[j])));
            q.push(f.neg(&rv));
            v = (0..k)
                .map(|i| (0..k).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(x.get(i, j), &v[j]))))
                .collect();
        }
        // p_{k+1} = T p_k with T lower-triangular Toeplitz from q
        let next: Vec<F::Elem> = (0..k + 2)
            .map(|row| {
                let mut acc = f.zero();
                for (col, c) in prev.iter().enumerate() {
                    if row >= col {
                        acc = f.add(&acc, &f.mul(&q[row - col], c));
                    }
                }
                acc
            })
            .collect();
        out.push(next.clone());
        prev = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSignature {
    pub k: usize,
    /// `levels[m]` is `χ_i(X)` for `i = n-k+1+m`, of length `i`.
    pub levels: Vec<Vec<String>>,
}

/// `Φ_k(X) = (χ_{n-k+1}(X), ..., χ_n(X))`.
pub fn phi_k<F: Field>(x: &ConcreteMatrix<F>, k: usize) -> Result<Vec<Vec<F::Elem>>> {
    let n = x.n();
    if k < 1 || k > n {
        return Err(Error::out_of_range("k", format!("{k} not in 1..={n}")));
    }
    let polys = leading_charpolys(x);
    Ok(polys[n - k..].iter().map(|p| p[1..].to_vec()).collect())
}

pub fn fiber_signature<F: Field>(x: &ConcreteMatrix<F>, k: usize) -> Result<FiberSignature> {
    let f = x.field();
    Ok(FiberSignature {
        k,
        levels: phi_k(x, k)?
            .iter()
            .map(|v| v.iter().map(|c| f.format(c)).collect())
            .collect(),
    })
}

pub fn same_fiber<F: Field>(x: &ConcreteMatrix<F>, y: &ConcreteMatrix<F>, k: usize) -> Result<bool> {
    if x.n() != y.n() {
        return Err(Error::out_of_range("matrix", "sizes differ"));
    }
    Ok(phi_k(x, k)? == phi_k(y, k)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    pub strongly_nilpotent: bool,
    /// `Φ(X) = 0`.
    pub by_charpolys: bool,
    /// `tr(X_i^j) = 0` for all `j <= i`.
    pub by_traces: bool,
}

/// Whether every leading principal submatrix is nilpotent, decided by the
/// characteristic coefficients and cross-checked by power traces.
pub fn strongly_nilpotent<F: Field>(x: &ConcreteMatrix<F>) -> Result<NilpotencyReport> {
    let f = x.field();
    let by_charpolys = phi_k(x, x.n())?.iter().flatten().all(|c| f.is_zero(c));
    let mut by_traces = true;
    'levels: for i in 1..=x.n() {
        let xi = x.leading(i);
        let mut power = xi.clone();
        for j in 1..=i {
            if j > 1 {
                power = mat_mul(f, &power, &xi);
            }
            let tr = (0..i).fold(f.zero(), |acc, t| f.add(&acc, &power[t][t]));
            if !f.is_zero(&tr) {
                by_traces = false;
                break 'levels;
            }
        }
    }
    if by_charpolys != by_traces && f.characteristic() == 0 {
        return Err(Error::out_of_range("nilpotency", "characteristic and trace tests disagree"));
    }
    Ok(NilpotencyReport {
        strongly_nilpotent: by_charpolys,
        by_charpolys,
        by_traces,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeSample {
    pub index: usize,
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
    pub full_rank: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub trials: usize,
    pub equations: usize,
    /// `n² - nk + d(k-1)`.
    pub expected_dim: usize,
    pub full_rank_count: usize,
    pub full_rank_fraction: f64,
    pub samples: Vec<ProbeSample>,
    /// Symbolic Jacobian equals exact forward differences at sample 0.
    pub difference_check: bool,
}

/// `Σ_{m=1}^{deg} (-1)^{m+1} Δ^m f(x) / m` with unit steps in variable `v`;
/// exact for polynomials of degree at most `deg` in that variable.
fn difference_derivative<F: Field>(p: &Polynomial<F>, point: &[F::Elem], v: usize, deg: usize) -> F::Elem {
    let f = p.field();
    let values: Vec<F::Elem> = (0..=deg)
        .map(|s| {
            let mut q = point.to_vec();
            q[v] = f.add(&q[v], &f.from_i64(s as i64));
            p.eval(&q)
        })
        .collect();
    let mut diffs = values;
    let mut acc = f.zero();
    for m in 1..=deg {
        diffs = diffs.windows(2).map(|w| f.sub(&w[1], &w[0])).collect();
        let term = f.div(&diffs[0], &f.from_i64(m as i64)).expect("m invertible");
        acc = if m % 2 == 1 { f.add(&acc, &term) } else { f.sub(&acc, &term) };
    }
    acc
}

/// Samples random integer matrices and computes the exact rank of the
/// Jacobian of `χ_ij - χ_ij(X)` (`n-k+1 <= i <= n`) at each of them.
pub fn jacobian_rank_probe<F: Field>(field: F, n: usize, k: usize, trials: usize, seed: u64) -> Result<ProbeReport> {
    if !(1..=6).contains(&n) || k < 1 || k > n {
        return Err(Error::out_of_range("(n, k)", format!("({n}, {k})")));
    }
    if trials == 0 {
        return Err(Error::out_of_range("trials", "need at least one"));
    }
    let ring = Ring::matrix(field.clone(), n);
    let mut eqs = Vec::new();
    for i in n - k + 1..=n {
        eqs.extend(chi_level(&ring, i)?);
    }
    let jac: Vec<Vec<Polynomial<F>>> = eqs
        .iter()
        .map(|p| (0..ring.nvars()).map(|v| p.derivative(v)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mats: Vec<ConcreteMatrix<F>> = (0..trials)
        .map(|_| ConcreteMatrix::random(field.clone(), n, 10, false, &mut rng))
        .collect();
    let expected_rank = eqs.len();
    let samples: Vec<ProbeSample> = mats
        .par_iter()
        .enumerate()
        .map(|(index, m)| {
            let point = m.as_point();
            let rows: Vec<Vec<F::Elem>> = jac.iter().map(|r| r.iter().map(|d| d.eval(&point)).collect()).collect();
            let r = rank(&field, rows);
            ProbeSample {
                index,
                matrix: m.to_texts(),
                rank: r,
                full_rank: r == expected_rank,
            }
        })
        .collect();
    let point = mats[0].as_point();
    let difference_check = jac.iter().zip(&eqs).all(|(row, p)| {
        row.iter()
            .enumerate()
            .all(|(v, dp)| dp.eval(&point) == difference_derivative(p, &point, v, n))
    });
    let full_rank_count = samples.iter().filter(|s| s.full_rank).count();
    Ok(ProbeReport {
        n,
        k,
        seed,
        trials,
        equations: expected_rank,
        expected_dim: n * n - n * k + d(k - 1),
        full_rank_count,
        full_rank_fraction: full_rank_count as f64 / trials as f64,
        samples,
        difference_check,
    })
}
