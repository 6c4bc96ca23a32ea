use num_rational::BigRational;
use serde::Serialize;

use super::matrix::PolyMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::poly::{Polynomial, Ring, Variable};

/// `t(t+1)/2`.
pub fn d(t: usize) -> usize {
    t * (t + 1) / 2
}

/// `(t+2)(t-1)/2`, the number of variables of the weak system at size `t`.
pub fn e(t: usize) -> usize {
    assert!(t >= 1, "e(t) needs t >= 1");
    (t + 2) * (t - 1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartialFamily {
    GammaBar,
    Chi,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    GammaBar,
    Sigma,
    Chi,
    PartialGamma { k: usize, beta: Vec<String> },
    PartialChi { k: usize, beta: Vec<String> },
}

/// An ordered generator list together with its ring.
#[derive(Clone, Debug)]
pub struct GtSystem<F: Field> {
    pub n: usize,
    pub family: Family,
    pub ring: Ring<F>,
    pub generators: Vec<Polynomial<F>>,
    /// `gamma_bar[i,j]` style names, one per generator.
    pub labels: Vec<String>,
}

impl<F: Field> GtSystem<F> {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn ideal(&self) -> Ideal<F> {
        Ideal::new(&self.ring, self.generators.iter().cloned()).expect("same ring")
    }

    pub fn texts(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_text()).collect()
    }

    /// Generator with the given label.
    pub fn get(&self, label: &str) -> Option<&Polynomial<F>> {
        self.labels.iter().position(|l| l == label).map(|i| &self.generators[i])
    }
}

fn check_size(n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        return Err(Error::out_of_range("n", format!("{n} not in {lo}..={hi}")));
    }
    Ok(())
}

/// `tr(X_i^j)` for `j = 1..=i`, where `X_i` is the upper-left block.
pub fn gamma_bar_level<F: Field>(ring: &Ring<F>, i: usize) -> Result<Vec<Polynomial<F>>> {
    let x = PolyMatrix::generic(ring, i)?;
    let mut power = x.clone();
    let mut out = vec![power.trace()?];
    for _ in 2..=i {
        power = power.mul(&x)?;
        out.push(power.trace()?);
    }
    Ok(out)
}

/// Coefficients of `det(t - X_i)` below `t^i`: entry `j-1` holds the
/// coefficient of `t^(i-j)`. Faddeev-LeVerrier recursion.
pub fn chi_level<F: Field>(ring: &Ring<F>, i: usize) -> Result<Vec<Polynomial<F>>> {
    let f = ring.field();
    let a = PolyMatrix::generic(ring, i)?;
    let mut m = PolyMatrix {
        rows: vec![vec![Polynomial::zero(ring); i]; i],
    };
    m.add_scalar(&Polynomial::one(ring))?;
    let mut out = Vec::with_capacity(i);
    for k in 1..=i {
        let am = a.mul(&m)?;
        let inv_k = f
            .inv(&f.from_i64(k as i64))
            .ok_or_else(|| Error::out_of_range("characteristic", format!("{} divides {k}", f.characteristic())))?;
        let c = am.trace()?.scale(&f.neg(&inv_k));
        if k < i {
            m = am;
            m.add_scalar(&c)?;
        }
        out.push(c);
    }
    Ok(out)
}

/// Power-trace generators `γ̄_11, γ̄_21, γ̄_22, ..., γ̄_nn` on `k^{n²}`.
pub fn gamma_bar<F: Field>(field: F, n: usize) -> Result<GtSystem<F>> {
    check_size(n, 1, 6)?;
    let ring = Ring::matrix(field, n);
    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=n {
        for (j, g) in gamma_bar_level(&ring, i)?.into_iter().enumerate() {
            generators.push(g);
            labels.push(format!("gamma_bar[{i},{}]", j + 1));
        }
    }
    Ok(GtSystem {
        n,
        family: Family::GammaBar,
        ring,
        generators,
        labels,
    })
}

/// Characteristic coefficients `χ_11, χ_21, χ_22, ..., χ_nn` on `k^{n²}`.
pub fn chi<F: Field>(field: F, n: usize) -> Result<GtSystem<F>> {
    check_size(n, 1, 6)?;
    let ring = Ring::matrix(field, n);
    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=n {
        for (j, g) in chi_level(&ring, i)?.into_iter().enumerate() {
            generators.push(g);
            labels.push(format!("chi[{i},{}]", j + 1));
        }
    }
    Ok(GtSystem {
        n,
        family: Family::Chi,
        ring,
        generators,
        labels,
    })
}

/// Strictly decreasing sequences `n > t_1 > ... > t_len >= 1`.
fn decreasing_paths(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(top: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for t in (1..top).rev() {
            if t < len - cur.len() {
                break;
            }
            cur.push(t);
            go(t, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, len, &mut Vec::new(), &mut out);
    out
}

/// `σ_n2, ..., σ_nn` in `ring`, which must contain the variables of `I_n`.
pub fn sigma_polys<F: Field>(ring: &Ring<F>, n: usize) -> Result<Vec<Polynomial<F>>> {
    let f = ring.field();
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for j in 2..=n {
        let mut terms = Vec::new();
        for path in decreasing_paths(n, j - 1) {
            let mut exps = vec![0u16; ring.nvars()];
            let mut prev = n;
            for &t in path.iter().chain(std::iter::once(&n)) {
                exps[ring.require(Variable::entry(prev, t))?] += 1;
                prev = t;
            }
            terms.push((crate::poly::Monomial::from_exponents(exps), f.one()));
        }
        out.push(Polynomial::from_terms(ring, terms));
    }
    Ok(out)
}

/// The weak system `σ_n2, ..., σ_nn` on `k[I_n]`.
pub fn sigma<F: Field>(field: F, n: usize) -> Result<GtSystem<F>> {
    check_size(n, 2, 8)?;
    let ring = Ring::over(field, index_set(n));
    let generators = sigma_polys(&ring, n)?;
    let labels = (2..=n).map(|j| format!("sigma[{n},{j}]")).collect();
    Ok(GtSystem {
        n,
        family: Family::Sigma,
        ring,
        generators,
        labels,
    })
}

/// `g_ij - β_ij` for `n-k+1 <= i <= n`, `1 <= j <= i`, with `g` the power
/// traces or the characteristic coefficients.
pub fn partial_system<F: Field>(
    field: F,
    n: usize,
    k: usize,
    beta: &[BigRational],
    family: PartialFamily,
) -> Result<GtSystem<F>> {
    check_size(n, 1, 6)?;
    if k < 1 || k > n {
        return Err(Error::out_of_range("k", format!("{k} not in 1..={n}")));
    }
    let expected = n * k - k * (k - 1) / 2;
    if beta.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            got: beta.len(),
        });
    }
    let ring = Ring::matrix(field.clone(), n);
    let mut generators = Vec::with_capacity(expected);
    let mut labels = Vec::with_capacity(expected);
    let mut b = beta.iter();
    let tag = match family {
        PartialFamily::GammaBar => "gamma_bar",
        PartialFamily::Chi => "chi",
    };
    for i in n - k + 1..=n {
        let level = match family {
            PartialFamily::GammaBar => gamma_bar_level(&ring, i)?,
            PartialFamily::Chi => chi_level(&ring, i)?,
        };
        for (j, g) in level.into_iter().enumerate() {
            let c = Polynomial::constant(&ring, field.from_rational(b.next().unwrap())?);
            generators.push(g.sub(&c)?);
            labels.push(format!("{tag}[{i},{}]-beta", j + 1));
        }
    }
    let beta_text = beta.iter().map(|q| q.to_string()).collect();
    let family = match family {
        PartialFamily::GammaBar => Family::PartialGamma { k, beta: beta_text },
        PartialFamily::Chi => Family::PartialChi { k, beta: beta_text },
    };
    Ok(GtSystem {
        n,
        family,
        ring,
        generators,
        labels,
    })
}

/// `I_n`: the strict lower triangle plus the last column without `x_nn`,
/// in row-major order.
pub fn index_set(n: usize) -> Vec<Variable> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i > j || (j == n && i < n) {
                out.push(Variable::entry(i, j));
            }
        }
    }
    out
}

/// `I_n` without row `t` and column `t`.
pub fn punctured_index_set(n: usize, t: usize) -> Result<Vec<Variable>> {
    if t < 1 || t > n {
        return Err(Error::out_of_range("t", format!("{t} not in 1..={n}")));
    }
    Ok(index_set(n)
        .into_iter()
        .filter(|v| {
            let (i, j) = v.row_col().unwrap();
            i != t && j != t
        })
        .collect())
}
