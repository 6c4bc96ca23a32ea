use std::collections::HashMap;

use gtkit_core::gt::{
    branch_hom, branch_substitution, chi, chi_level, d, e, gamma_bar, index_set, named_hom, partial_system,
    punctured_index_set, sigma, sigma_polys, PartialFamily,
};
use gtkit_core::{Field, Polynomial, PrimeField, Rationals, Ring, Variable};
use num_rational::BigRational;

fn v(i: usize, j: usize) -> Variable {
    Variable::entry(i, j)
}

fn names(vs: &[Variable]) -> Vec<String> {
    vs.iter().map(|v| v.to_string()).collect()
}

#[test]
fn bookkeeping_functions() {
    assert_eq!(d(3), 6);
    assert_eq!(e(2), 2);
    for n in 2..=10 {
        assert_eq!(e(n) - (n - 1), d(n - 1));
    }
    for n in 2..=8 {
        assert_eq!(index_set(n).len(), e(n));
        assert_eq!(punctured_index_set(n, 1).unwrap().len(), e(n - 1));
    }
}

#[test]
fn index_sets() {
    assert_eq!(
        names(&index_set(4)),
        ["x14", "x21", "x24", "x31", "x32", "x34", "x41", "x42", "x43"]
    );
    assert_eq!(
        names(&punctured_index_set(5, 1).unwrap()),
        ["x25", "x32", "x35", "x42", "x43", "x45", "x52", "x53", "x54"]
    );
    assert!(punctured_index_set(3, 4).is_err());
}

#[test]
fn gamma_bar_values() {
    let s = gamma_bar(Rationals, 1).unwrap();
    assert_eq!(s.texts(), ["x11"]);
    let s = gamma_bar(Rationals, 2).unwrap();
    assert_eq!(s.get("gamma_bar[2,2]").unwrap().to_text(), "x11^2 + 2*x12*x21 + x22^2");
    let s = gamma_bar(Rationals, 3).unwrap();
    assert_eq!(s.len(), 6);
    assert_eq!(s.get("gamma_bar[3,1]").unwrap().to_text(), "x11 + x22 + x33");
    assert!(gamma_bar(Rationals, 7).is_err());
    assert!(gamma_bar(Rationals, 0).is_err());
}

/// Closed-loop path sum `Σ x_{t1 t2} x_{t2 t3} ... x_{tj t1}`.
fn path_trace(ring: &Ring<Rationals>, i: usize, j: usize) -> Polynomial<Rationals> {
    let mut acc = Polynomial::zero(ring);
    let total = i.pow(j as u32);
    for code in 0..total {
        let mut idx = Vec::with_capacity(j);
        let mut c = code;
        for _ in 0..j {
            idx.push(c % i + 1);
            c /= i;
        }
        let mut term = Polynomial::one(ring);
        for s in 0..j {
            let x = Polynomial::var(ring, v(idx[s], idx[(s + 1) % j])).unwrap();
            term = term.mul(&x).unwrap();
        }
        acc = acc.add(&term).unwrap();
    }
    acc
}

#[test]
fn gamma_bar_matches_path_sums() {
    let s = gamma_bar(Rationals, 4).unwrap();
    for i in 1..=4 {
        for j in 1..=i {
            let g = s.get(&format!("gamma_bar[{i},{j}]")).unwrap();
            assert_eq!(*g, path_trace(&s.ring, i, j), "gamma_bar[{i},{j}]");
            assert_eq!(g.is_homogeneous(), Some(j as u32));
        }
        let diag: Vec<String> = (1..=i).map(|t| format!("x{t}{t}")).collect();
        assert_eq!(s.get(&format!("gamma_bar[{i},1]")).unwrap().to_text(), diag.join(" + "));
    }
}

#[test]
fn sigma_values() {
    assert_eq!(sigma(Rationals, 2).unwrap().texts(), ["x12*x21"]);
    let s = sigma(Rationals, 3).unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!(s.get("sigma[3,3]").unwrap().to_text(), "x13*x21*x32");
    let expect = Polynomial::parse(&s.ring, "x31*x13 + x32*x23").unwrap();
    assert_eq!(*s.get("sigma[3,2]").unwrap(), expect);
    for n in 2..=6 {
        let s = sigma(Rationals, n).unwrap();
        for (j, g) in s.generators.iter().enumerate() {
            assert_eq!(g.is_homogeneous(), Some(j as u32 + 2));
        }
        // sigma_nn is the single cycle through all rows
        let last = s.generators.last().unwrap();
        assert_eq!(last.len(), 1);
    }
    assert!(sigma(Rationals, 1).is_err());
    assert!(sigma(Rationals, 9).is_err());
}

/// Leibniz determinant of `t - X_i` evaluated at an integer point, as a
/// coefficient list in `t`.
fn leibniz_charpoly(a: &[Vec<i64>]) -> Vec<i64> {
    let m = a.len();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut out = vec![0i64; m + 1];
    loop {
        let mut sign = 1i64;
        for x in 0..m {
            for y in x + 1..m {
                if perm[x] > perm[y] {
                    sign = -sign;
                }
            }
        }
        // product of (t δ - a) entries as a polynomial in t
        let mut prod = vec![1i64];
        for r in 0..m {
            let c = perm[r];
            let entry = if r == c { vec![-a[r][c], 1] } else { vec![-a[r][c]] };
            let mut next = vec![0i64; prod.len() + entry.len() - 1];
            for (x, p) in prod.iter().enumerate() {
                for (y, q) in entry.iter().enumerate() {
                    next[x + y] += p * q;
                }
            }
            prod = next;
        }
        for (k, c) in prod.iter().enumerate() {
            out[k] += sign * c;
        }
        // next permutation
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..m).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out
}

#[test]
fn chi_values_and_leibniz_oracle() {
    assert_eq!(chi(Rationals, 1).unwrap().texts(), ["-x11"]);
    let s = chi(Rationals, 2).unwrap();
    assert_eq!(*s.get("chi[2,2]").unwrap(), Polynomial::parse(&s.ring, "x11*x22 - x12*x21").unwrap());
    let s = chi(Rationals, 4).unwrap();
    let f = Rationals;
    let a: Vec<Vec<i64>> = vec![vec![2, -1, 3, 0], vec![1, 4, -2, 5], vec![0, 7, 1, -3], vec![6, -5, 2, 1]];
    let point: Vec<_> = s
        .ring
        .vars()
        .iter()
        .map(|v| {
            let (i, j) = v.row_col().unwrap();
            f.from_i64(a[i - 1][j - 1])
        })
        .collect();
    for i in 1..=4 {
        let sub: Vec<Vec<i64>> = a[..i].iter().map(|r| r[..i].to_vec()).collect();
        let cp = leibniz_charpoly(&sub);
        assert_eq!(cp[i], 1);
        for j in 1..=i {
            let g = s.get(&format!("chi[{i},{j}]")).unwrap();
            assert_eq!(g.is_homogeneous(), Some(j as u32));
            assert_eq!(g.eval(&point), f.from_i64(cp[i - j]), "chi[{i},{j}]");
        }
    }
}

#[test]
fn newton_identities_link_families() {
    for n in 1..=5 {
        let g = gamma_bar(Rationals, n).unwrap();
        let c = chi(Rationals, n).unwrap();
        for i in 1..=n {
            for m in 1..=i {
                let mut acc = g.get(&format!("gamma_bar[{i},{m}]")).unwrap().clone();
                for r in 1..m {
                    let t = c.get(&format!("chi[{i},{r}]")).unwrap();
                    let p = g.get(&format!("gamma_bar[{i},{}]", m - r)).unwrap();
                    acc = acc.add(&t.mul(p).unwrap()).unwrap();
                }
                let last = c.get(&format!("chi[{i},{m}]")).unwrap();
                acc = acc.add(&last.scale(&num_rational::BigRational::from_integer((m as i64).into()))).unwrap();
                assert!(acc.is_zero(), "newton identity fails at i={i} m={m}");
            }
        }
    }
}

#[test]
fn chi_over_prime_field() {
    let r = Ring::matrix(PrimeField::default(), 3);
    let c = chi_level(&r, 3).unwrap();
    let q = chi_level(&Ring::matrix(Rationals, 3), 3).unwrap();
    for (a, b) in c.iter().zip(&q) {
        assert_eq!(a.to_text(), b.to_text());
    }
    let small = Ring::matrix(PrimeField::new(3).unwrap(), 3);
    assert!(chi_level(&small, 3).is_err());
}

#[test]
fn partial_systems() {
    let z = |k: usize| vec![BigRational::from_integer(0.into()); k];
    let s = partial_system(Rationals, 2, 1, &z(2), PartialFamily::GammaBar).unwrap();
    assert_eq!(s.texts(), ["x11 + x22", "x11^2 + 2*x12*x21 + x22^2"]);
    let beta: Vec<BigRational> = (1..=5).map(|i| BigRational::new(i.into(), 3.into())).collect();
    let s = partial_system(Rationals, 3, 2, &beta, PartialFamily::Chi).unwrap();
    assert_eq!(s.len(), 5);
    assert_eq!(s.generators[0].to_text(), "-x11 - x22 - 1/3");
    let full = partial_system(Rationals, 2, 2, &z(3), PartialFamily::GammaBar).unwrap();
    assert_eq!(full.texts(), gamma_bar(Rationals, 2).unwrap().texts());
    assert!(partial_system(Rationals, 3, 2, &z(4), PartialFamily::GammaBar).is_err());
}

#[test]
fn named_hom_images() {
    let h = named_hom("shift", 4, Rationals).unwrap();
    assert_eq!(h.image_of(v(2, 1)).unwrap().to_text(), "x32");
    let h = named_hom("puncture:3", 5, Rationals).unwrap();
    assert_eq!(h.image_of(v(4, 2)).unwrap().to_text(), "x52");
    assert_eq!(h.image_of(v(2, 1)).unwrap().to_text(), "x21");
    assert_eq!(h.image_of(v(1, 4)).unwrap().to_text(), "x15");
    let h = named_hom("transpose", 3, Rationals).unwrap();
    assert_eq!(h.image_of(v(1, 2)).unwrap().to_text(), "x21");
    let h = named_hom("conj:1324", 4, Rationals).unwrap();
    assert_eq!(h.image_of(v(1, 2)).unwrap().to_text(), "x13");
    let h = named_hom("conj_transpose:2134", 4, Rationals).unwrap();
    assert_eq!(h.image_of(v(1, 3)).unwrap().to_text(), "x32");
    assert!(named_hom("rotate", 3, Rationals).is_err());
    assert!(named_hom("conj:1123", 4, Rationals).is_err());
    assert!(named_hom("puncture:5", 5, Rationals).is_err());

    // shift sends sigma_22 = x21 x12 to x32 x23
    let s2 = sigma(Rationals, 2).unwrap();
    let h = named_hom("shift", 3, Rationals).unwrap();
    assert_eq!(h.apply(&s2.generators[0]).unwrap().to_text(), "x23*x32");
}

#[test]
fn recursion_identities_hold_in_every_branch() {
    for n in 3..=6 {
        let ring = Ring::over(Rationals, index_set(n));
        let big = sigma_polys(&ring, n).unwrap();
        let small = sigma(Rationals, n - 1).unwrap();
        for t in 1..=n {
            let x = branch_substitution(n, t).unwrap();
            assert_eq!(x.len(), n, "branch {t} removes n variables");
            let h = branch_hom(n, t, Rationals).unwrap();
            for j in 2..n {
                let lhs = h.apply(&small.generators[j - 2]).unwrap();
                let rhs = big[j - 2].substitute_zero(&x);
                assert!(!rhs.is_zero());
                assert_eq!(lhs, rhs, "n={n} t={t} j={j}");
            }
        }
    }
}

#[test]
fn sigma_uses_only_index_set_variables() {
    let s = sigma(Rationals, 5).unwrap();
    let allowed: HashMap<Variable, ()> = index_set(5).into_iter().map(|v| (v, ())).collect();
    for g in &s.generators {
        for v in g.variables() {
            assert!(allowed.contains_key(&v));
        }
    }
}
