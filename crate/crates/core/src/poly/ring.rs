use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::field::Field;

/// A ring variable: a matrix coordinate `x{row}{col}` (1-based) or an
/// auxiliary variable used internally for elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Entry { row: u16, col: u16 },
    Aux(u16),
}

impl Variable {
    pub fn entry(row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "matrix indices are 1-based");
        Variable::Entry {
            row: row as u16,
            col: col as u16,
        }
    }

    pub fn row_col(&self) -> Option<(usize, usize)> {
        match *self {
            Variable::Entry { row, col } => Some((row as usize, col as usize)),
            Variable::Aux(_) => None,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Variable::Entry { row, col } if row > 9 || col > 9 => write!(f, "x{row}_{col}"),
            Variable::Entry { row, col } => write!(f, "x{row}{col}"),
            Variable::Aux(k) => write!(f, "_aux{k}"),
        }
    }
}

impl FromStr for Variable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid variable `{s}`"));
        if let Some(k) = s.strip_prefix("_aux") {
            return k.parse().map(Variable::Aux).map_err(|_| bad());
        }
        let body = s.strip_prefix('x').ok_or_else(bad)?;
        let (row, col) = match body.split_once('_') {
            Some((r, c)) => (r.parse::<u16>().map_err(|_| bad())?, c.parse::<u16>().map_err(|_| bad())?),
            None => {
                let b = body.as_bytes();
                if b.len() != 2 || !b.iter().all(u8::is_ascii_digit) {
                    return Err(bad());
                }
                ((b[0] - b'0') as u16, (b[1] - b'0') as u16)
            }
        };
        if row == 0 || col == 0 {
            return Err(bad());
        }
        Ok(Variable::Entry { row, col })
    }
}

impl serde::Serialize for Variable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Variable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug)]
struct RingInner<F: Field> {
    vars: Vec<Variable>,
    index: HashMap<Variable, usize>,
    field: F,
    order: MonomialOrder,
}

/// Polynomial ring tag: ordered variables (priority = position), the
/// coefficient field and the active monomial order. Cheap to clone.
#[derive(Debug)]
pub struct Ring<F: Field> {
    inner: Arc<RingInner<F>>,
}

impl<F: Field> Clone for Ring<F> {
    fn clone(&self) -> Self {
        Ring {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<F: Field> PartialEq for Ring<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order
                && self.inner.field == other.inner.field
                && self.inner.vars == other.inner.vars)
    }
}

impl<F: Field> Ring<F> {
    pub fn new(field: F, vars: Vec<Variable>, order: MonomialOrder) -> Self {
        let index = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect::<HashMap<_, _>>();
        assert_eq!(index.len(), vars.len(), "duplicate ring variable");
        Ring {
            inner: Arc::new(RingInner {
                vars,
                index,
                field,
                order,
            }),
        }
    }

    /// `k[x_ij : 1 <= i, j <= n]` with row-major priority and degrevlex.
    pub fn matrix(field: F, n: usize) -> Self {
        let vars = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| Variable::entry(i, j)))
            .collect();
        Ring::new(field, vars, MonomialOrder::Degrevlex)
    }

    /// Ring over the given variables, sorted into row-major priority.
    pub fn over(field: F, vars: impl IntoIterator<Item = Variable>) -> Self {
        let mut vars: Vec<Variable> = vars.into_iter().collect();
        vars.sort();
        vars.dedup();
        Ring::new(field, vars, MonomialOrder::Degrevlex)
    }

    pub fn field(&self) -> &F {
        &self.inner.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.inner.order
    }

    pub fn vars(&self) -> &[Variable] {
        &self.inner.vars
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn index_of(&self, v: Variable) -> Option<usize> {
        self.inner.index.get(&v).copied()
    }

    pub fn require(&self, v: Variable) -> Result<usize> {
        self.index_of(v).ok_or_else(|| Error::UnknownVariable(v.to_string()))
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        if order == self.order() {
            return self.clone();
        }
        Ring::new(self.field().clone(), self.vars().to_vec(), order)
    }

    /// Same field and variables; compares without the order.
    pub fn same_space(&self, other: &Ring<F>) -> bool {
        self.inner.field == other.inner.field && self.inner.vars == other.inner.vars
    }

    /// Prepends `count` fresh auxiliary variables and uses the elimination
    /// order for that block.
    pub fn with_aux_block(&self, count: usize) -> Self {
        let mut vars: Vec<Variable> = (0..count as u16).map(Variable::Aux).collect();
        vars.extend_from_slice(self.vars());
        Ring::new(
            self.field().clone(),
            vars,
            MonomialOrder::Elimination { block: count },
        )
    }

    /// Removes the given variables (keeping order and field).
    pub fn without(&self, drop: &[Variable]) -> Self {
        let vars = self
            .vars()
            .iter()
            .copied()
            .filter(|v| !drop.contains(v))
            .collect();
        Ring::new(self.field().clone(), vars, self.order())
    }

    pub fn describe(&self) -> String {
        format!(
            "{}[{}] ({})",
            self.field().name(),
            self.vars().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
            self.order()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn variable_names_round_trip() {
        for (r, c) in [(1, 2), (9, 9), (10, 3), (3, 12)] {
            let v = Variable::entry(r, c);
            let s = v.to_string();
            assert_eq!(s.parse::<Variable>().unwrap(), v);
        }
        assert_eq!(Variable::entry(10, 3).to_string(), "x10_3");
        assert!("x123".parse::<Variable>().is_err());
        assert!("x0_1".parse::<Variable>().is_err());
    }

    #[test]
    fn matrix_ring_priority() {
        let r = Ring::matrix(Rationals, 2);
        let names: Vec<_> = r.vars().iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["x11", "x12", "x21", "x22"]);
    }
}
