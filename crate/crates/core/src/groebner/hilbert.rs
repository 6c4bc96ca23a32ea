//! Hilbert series numerators of monomial ideals.
//!
//! For a monomial ideal `M` in `k[x_1..x_n]` the Hilbert series of the
//! quotient is `N(t) / (1 - t)^n`; `N` is computed by pivoting on a
//! variable: `N(M) = N(M + (x)) + t * N(M : x)`.

use crate::poly::Monomial;

/// Integer polynomial in `t`, coefficient of `t^i` at index `i`.
pub type IntPoly = Vec<i64>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

/// `1 - t^d`.
pub fn one_minus_t_pow(d: u32) -> IntPoly {
    if d == 0 {
        return vec![0];
    }
    let mut p = vec![0i64; d as usize + 1];
    p[0] = 1;
    p[d as usize] = -1;
    p
}

fn minimalize(mut gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u32).sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u16>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
            out.push(g);
        }
    }
    out
}

fn numerator(gens: Vec<Vec<u16>>) -> IntPoly {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![0];
    }
    let nv = gens[0].len();
    // pairwise coprime generators form a regular sequence
    let mut seen = vec![false; nv];
    let mut coprime = true;
    'outer: for g in &gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                if seen[i] {
                    coprime = false;
                    break 'outer;
                }
                seen[i] = true;
            }
        }
    }
    if coprime {
        return gens.iter().fold(vec![1], |acc, g| {
            poly_mul(&acc, &one_minus_t_pow(g.iter().map(|&e| e as u32).sum()))
        });
    }
    // pivot on the variable occurring in the most generators
    let mut counts = vec![0usize; nv];
    for g in &gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let x = (0..nv).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut plus: Vec<Vec<u16>> = gens.iter().filter(|g| g[x] == 0).cloned().collect();
    let mut lin = vec![0u16; nv];
    lin[x] = 1;
    plus.push(lin);
    let colon: Vec<Vec<u16>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[x] = h[x].saturating_sub(1);
            h
        })
        .collect();
    let a = numerator(plus);
    let b = numerator(colon);
    poly_add(&a, &poly_mul(&[0, 1], &b))
}

/// Hilbert numerator of `k[x] / (gens)`.
pub fn hilbert_numerator(gens: &[Monomial]) -> IntPoly {
    numerator(gens.iter().map(|m| m.exponents().to_vec()).collect())
}
