use serde::Serialize;

use super::systems::index_set;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Ring, RingHom, Variable};

/// Catalog of the variable substitutions used by the recursions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NamedHom {
    /// `k[I_{n-1}] -> k[I_n]`, `x_ij -> x_{i+1,j+1}`.
    Shift { n: usize },
    /// `k[I_{n-1}] -> k[I_n]` skipping row and column `t`.
    Puncture { n: usize, t: usize },
    /// `k[I_{n-1}] -> k[I_n]`, row `n-1` to row `n`, column `n-1` to column `n`.
    LastRowSwap { n: usize },
    /// `x_ij -> x_ji` on `k^{n²}`.
    Transpose { n: usize },
    /// `x_ij -> x_{π(i)π(j)}`, or `x_{π(j)π(i)}` when composed with the
    /// transpose. `perm` is 1-based.
    ConjPerm { n: usize, perm: Vec<usize>, transpose: bool },
}

fn need(n: usize, lo: usize) -> Result<()> {
    if n < lo || n > 9 {
        return Err(Error::out_of_range("n", format!("{n} not in {lo}..=9")));
    }
    Ok(())
}

impl NamedHom {
    /// Parses `shift`, `puncture:T`, `last_row_swap`, `transpose`,
    /// `conj:PERM` or `conj_transpose:PERM` (PERM like `2134`).
    pub fn parse(name: &str, n: usize) -> Result<Self> {
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (name, None),
        };
        let hom = match (head, arg) {
            ("shift", None) => NamedHom::Shift { n },
            ("puncture", Some(t)) => NamedHom::Puncture {
                n,
                t: t.parse().map_err(|_| Error::UnknownHom(name.into()))?,
            },
            ("last_row_swap", None) => NamedHom::LastRowSwap { n },
            ("transpose", None) => NamedHom::Transpose { n },
            ("conj" | "conj_transpose", Some(p)) => NamedHom::ConjPerm {
                n,
                perm: p
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::UnknownHom(name.into())))
                    .collect::<Result<_>>()?,
                transpose: head == "conj_transpose",
            },
            _ => return Err(Error::UnknownHom(name.into())),
        };
        hom.validate()?;
        Ok(hom)
    }

    fn validate(&self) -> Result<()> {
        match self {
            NamedHom::Shift { n } | NamedHom::LastRowSwap { n } => need(*n, 2),
            NamedHom::Puncture { n, t } => {
                need(*n, 2)?;
                if *t < 1 || *t >= *n {
                    return Err(Error::out_of_range("t", format!("{t} not in 1..{n}")));
                }
                Ok(())
            }
            NamedHom::Transpose { n } => need(*n, 1),
            NamedHom::ConjPerm { n, perm, .. } => {
                need(*n, 1)?;
                let mut seen = perm.clone();
                seen.sort_unstable();
                if seen != (1..=*n).collect::<Vec<_>>() {
                    return Err(Error::out_of_range("permutation", format!("{perm:?} is not a permutation of 1..={n}")));
                }
                Ok(())
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            NamedHom::Shift { n } => format!("shift({n})"),
            NamedHom::Puncture { n, t } => format!("puncture({n},{t})"),
            NamedHom::LastRowSwap { n } => format!("last_row_swap({n})"),
            NamedHom::Transpose { n } => format!("transpose({n})"),
            NamedHom::ConjPerm { n, perm, transpose } => {
                let p: String = perm.iter().map(|d| d.to_string()).collect();
                let tag = if *transpose { "conj_transpose" } else { "conj" };
                format!("{tag}({n},{p})")
            }
        }
    }

    fn image(&self, i: usize, j: usize) -> (usize, usize) {
        match self {
            NamedHom::Shift { .. } => (i + 1, j + 1),
            NamedHom::Puncture { t, .. } => {
                let t = *t;
                match (i < t, j < t) {
                    (true, true) => (i, j),
                    (false, true) => (i + 1, j),
                    (true, false) => (i, j + 1),
                    (false, false) => (i + 1, j + 1),
                }
            }
            NamedHom::LastRowSwap { n } => {
                if i == n - 1 {
                    (*n, j)
                } else if j == n - 1 {
                    (i, *n)
                } else {
                    (i, j)
                }
            }
            NamedHom::Transpose { .. } => (j, i),
            NamedHom::ConjPerm { perm, transpose, .. } => {
                let (a, b) = (perm[i - 1], perm[j - 1]);
                if *transpose {
                    (b, a)
                } else {
                    (a, b)
                }
            }
        }
    }

    fn is_square(&self) -> bool {
        matches!(self, NamedHom::Transpose { .. } | NamedHom::ConjPerm { .. })
    }

    fn size(&self) -> usize {
        match self {
            NamedHom::Shift { n }
            | NamedHom::Puncture { n, .. }
            | NamedHom::LastRowSwap { n }
            | NamedHom::Transpose { n }
            | NamedHom::ConjPerm { n, .. } => *n,
        }
    }

    /// Source variables: `I_{n-1}` for the recursion maps, all `x_ij`
    /// for the matrix maps.
    pub fn domain_vars(&self) -> Vec<Variable> {
        let n = self.size();
        if self.is_square() {
            Ring::matrix(crate::field::Rationals, n).vars().to_vec()
        } else {
            index_set(n - 1)
        }
    }

    /// The target ring: `k[I_n]` or `k^{n²}`.
    pub fn target_ring<F: Field>(&self, field: F) -> Ring<F> {
        let n = self.size();
        if self.is_square() {
            Ring::matrix(field, n)
        } else {
            Ring::over(field, index_set(n))
        }
    }

    pub fn build<F: Field>(&self, field: F) -> Result<RingHom<F>> {
        self.validate()?;
        let target = self.target_ring(field);
        let map = self.domain_vars().into_iter().map(|v| {
            let (i, j) = v.row_col().unwrap();
            let (a, b) = self.image(i, j);
            (v, Variable::entry(a, b))
        });
        RingHom::renaming(self.name(), &target, map)
    }
}

/// Builds a named homomorphism from its catalog name.
pub fn named_hom<F: Field>(name: &str, n: usize, field: F) -> Result<RingHom<F>> {
    NamedHom::parse(name, n)?.build(field)
}

/// Variables set to zero in branch `t` (`1..=n`) of the weak-variety
/// recursion: the factor `x_{1n}` (t = 1) or `x_{t,t-1}` of `σ_nn`
/// together with the row and column augmentation of that branch.
pub fn branch_substitution(n: usize, t: usize) -> Result<Vec<Variable>> {
    need(n, 2)?;
    if t < 1 || t > n {
        return Err(Error::out_of_range("t", format!("{t} not in 1..={n}")));
    }
    let v = Variable::entry;
    let mut out = Vec::new();
    if t == 1 {
        out.push(v(1, n));
        out.extend((2..=n).map(|i| v(i, 1)));
    } else if t < n {
        out.push(v(t, t - 1));
        out.extend((1..t - 1).map(|j| v(t, j)));
        out.push(v(t, n));
        out.extend((t + 1..=n).map(|i| v(i, t)));
    } else {
        out.push(v(n, n - 1));
        out.extend((1..n - 1).map(|j| v(n - 1, j)));
        out.push(v(n - 1, n));
    }
    Ok(out)
}

/// The homomorphism `k[I_{n-1}] -> k[I_n]` used in branch `t`.
pub fn branch_hom<F: Field>(n: usize, t: usize, field: F) -> Result<RingHom<F>> {
    let hom = match t {
        1 => NamedHom::Shift { n },
        t if t == n => NamedHom::LastRowSwap { n },
        t => NamedHom::Puncture { n, t },
    };
    hom.build(field)
}
