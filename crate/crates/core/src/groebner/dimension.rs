use serde::Serialize;

use crate::poly::{Monomial, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionResult {
    /// `-1` for the unit ideal.
    pub krull_dim: i64,
    /// A maximal set of variables independent modulo the leading ideal.
    pub witness: Vec<Variable>,
}

fn search(sets: &[u64], chosen: u64, size: u32, best: &mut (u32, u64)) {
    if size >= best.0 {
        return;
    }
    let open = sets.iter().filter(|&&s| s & chosen == 0);
    let Some(&pick) = open.min_by_key(|s| s.count_ones()) else {
        *best = (size, chosen);
        return;
    };
    let mut bits = pick;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits ^= b;
        search(sets, chosen | b, size + 1, best);
    }
}

/// Smallest set of variable indices meeting every support, as a bitmask.
pub fn min_hitting_set(supports: &[u64], nvars: usize) -> u64 {
    let mut sets: Vec<u64> = supports.to_vec();
    sets.sort_unstable_by_key(|s| s.count_ones());
    sets.dedup();
    let all = if nvars >= 64 { u64::MAX } else { (1u64 << nvars) - 1 };
    let mut best = (nvars as u32 + 1, all);
    search(&sets, 0, 0, &mut best);
    best.1
}

/// Dimension of `k[vars] / (leading monomials)`.
pub fn monomial_dimension(leading: &[Monomial], vars: &[Variable]) -> DimensionResult {
    assert!(vars.len() <= 64, "dimension search supports at most 64 variables");
    if leading.iter().any(|m| m.is_one()) {
        return DimensionResult {
            krull_dim: -1,
            witness: vec![],
        };
    }
    let supports: Vec<u64> = leading.iter().map(|m| m.support_mask()).collect();
    let hit = min_hitting_set(&supports, vars.len());
    let witness: Vec<Variable> = (0..vars.len())
        .filter(|i| hit & (1 << i) == 0)
        .map(|i| vars[i])
        .collect();
    DimensionResult {
        krull_dim: witness.len() as i64,
        witness,
    }
}
