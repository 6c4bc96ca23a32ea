//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines show up in
//! `cargo test` output. Exits nonzero when a criterion fails unless the
//! failure is listed in `KNOWN_FAILURES` and still fails the same way.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use gtkit_core::field::Field;
use gtkit_core::groebner::Budget;
use gtkit_core::gt::{chi, gamma_bar, named_hom, partial_system, sigma, PartialFamily};
use gtkit_core::koszul::KoszulComplex;
use gtkit_core::kw::{phi_k, strongly_nilpotent, ConcreteMatrix};
use gtkit_core::lab::{newton_identities_hold, random_beta, replay_weak_recursion};
use gtkit_core::regularity::{is_regular_sequence, RegularityOptions, Strategy};
use gtkit_core::{GroebnerBasis, Ideal, MonomialOrder, Polynomial, Rationals, Ring, Variable};
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Criteria expected to fail, with the observation that explains it.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    7,
    "only the n! acyclic orientations are contained; e.g. the 3-cycle permutation matrix has trace(X^3) = 3",
)];

struct Line {
    criterion: u32,
    pass: bool,
    detail: String,
}

fn d(t: usize) -> usize {
    t * (t + 1) / 2
}

fn gtkit(args: &[&str]) -> (i32, Value, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_gtkit"))
        .args(args)
        .env_remove("GTKIT_BUDGET_SECONDS")
        .output()
        .expect("gtkit runs");
    let elapsed = start.elapsed();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v, elapsed)
}

fn verdict(v: &Value) -> &str {
    v["result"]["verdict"].as_str().unwrap_or("missing")
}

fn concluded_dim(v: &Value) -> Option<i64> {
    v["result"]["artifacts"]["concluded_dim"].as_i64()
}

struct Tally {
    pass: bool,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { pass: true, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, note: impl Into<String>) {
        let note = note.into();
        if !ok {
            self.pass = false;
            self.notes.push(format!("[x] {note}"));
        } else {
            self.notes.push(note);
        }
    }

    fn line(self, criterion: u32) -> Line {
        Line {
            criterion,
            pass: self.pass,
            detail: self.notes.join("; "),
        }
    }
}

fn ovsienko_small() -> Line {
    let mut t = Tally::new();
    for (n, dim, limit) in [(2usize, 1i64, 5.0), (3, 3, 300.0)] {
        let (code, v, el) = gtkit(&["verify", "--claim", "ovsienko", "--n", &n.to_string()]);
        let ok = code == 0 && verdict(&v) == "verified_exact" && concluded_dim(&v) == Some(dim);
        t.check(ok, format!("n={n} {} dim {:?}", verdict(&v), concluded_dim(&v)));
        t.check(el.as_secs_f64() < limit, format!("n={n} {:.2}s", el.as_secs_f64()));
    }
    t.line(1)
}

fn ovsienko_gl4() -> Line {
    let mut t = Tally::new();
    let (code, v, el) = gtkit(&["verify", "--claim", "ovsienko", "--n", "4", "--field", "GF(32003)", "--long"]);
    let ok = code == 0 && verdict(&v) == "verified_modular" && concluded_dim(&v) == Some(6);
    t.check(ok, format!("n=4 {} dim {:?}", verdict(&v), concluded_dim(&v)));
    t.check(el.as_secs_f64() < 7200.0, format!("{:.2}s", el.as_secs_f64()));

    let (_, homs, el) = gtkit(&["verify", "--claim", "gl4", "--check", "homs"]);
    let list = homs["result"]["artifacts"]["homs"].as_array().cloned().unwrap_or_default();
    let all = list.len() == 3
        && list
            .iter()
            .all(|h| h["involution"] == true && h["image_equals_target"]["equal"] == true);
    t.check(all && verdict(&homs) == "verified_modular", format!("{} hom identifications", list.len()));
    t.check(el.as_secs_f64() < 600.0, format!("homs {:.2}s", el.as_secs_f64()));

    let (_, chain, el) = gtkit(&["verify", "--claim", "gl4", "--check", "chain"]);
    let dims = chain["result"]["artifacts"]["chain_dims"].as_array().cloned().unwrap_or_default();
    let terminal: Vec<&Value> = dims.iter().filter(|c| c["terminal"] == true).collect();
    let ok = !terminal.is_empty()
        && terminal
            .iter()
            .all(|c| c["linear"] == true && c["krull_dim"] == c["displayed_dim"]);
    t.check(ok, format!("{} terminal linear pieces at displayed dimension", terminal.len()));
    t.check(el.as_secs_f64() < 600.0, format!("chain {:.2}s", el.as_secs_f64()));
    t.line(2)
}

fn weak_variety() -> Line {
    let mut t = Tally::new();
    for n in 2..=5usize {
        let (code, v, el) = gtkit(&["verify", "--claim", "weak", "--n", &n.to_string()]);
        let want = d(n - 1) as i64;
        let ok = code == 0 && verdict(&v) == "verified_exact" && concluded_dim(&v) == Some(want);
        t.check(ok && el.as_secs_f64() < 600.0, format!("n={n} dim {:?}", concluded_dim(&v)));
    }
    for n in 2..=6usize {
        let ok = replay_weak_recursion(Rationals, n).map(|r| r.holds()).unwrap_or(false);
        t.check(ok, format!("replay n={n}"));
    }
    t.line(3)
}

fn partial_fibers() -> Line {
    let mut t = Tally::new();
    for (n, k) in [(2usize, 1usize), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2)] {
        let want = (n * n - n * k + d(k - 1)) as i64;
        for seed in 1..=3u64 {
            let (code, v, _) = gtkit(&[
                "verify",
                "--claim",
                "partial",
                "--n",
                &n.to_string(),
                "--k",
                &k.to_string(),
                "--seed",
                &seed.to_string(),
            ]);
            let mode = if n <= 3 { "verified_exact" } else { "verified_modular" };
            let ok = code == 0 && verdict(&v) == mode && concluded_dim(&v) == Some(want);
            if !ok {
                t.check(false, format!("({n},{k}) seed {seed}: {} dim {:?}", verdict(&v), concluded_dim(&v)));
            }
        }
        t.check(true, format!("({n},{k}) dim {want}"));
    }
    t.check(3 * 3 - 2 * 3 + 1 == 4, "(3,2) gives 4");
    t.line(4)
}

fn jacobian_probe() -> Line {
    let mut t = Tally::new();
    for (n, k) in [(3usize, 2usize), (4, 1), (4, 2), (5, 2)] {
        let (_, v, el) = gtkit(&[
            "fiber-probe",
            "--n",
            &n.to_string(),
            "--k",
            &k.to_string(),
            "--trials",
            "100",
            "--seed",
            "1",
        ]);
        let p = &v["result"]["probe"];
        let rank = (n * k - k * (k - 1) / 2) as u64;
        let frac = p["full_rank_fraction"].as_f64().unwrap_or(0.0);
        let ok = p["equations"].as_u64() == Some(rank)
            && p["trials"].as_u64() == Some(100)
            && frac >= 0.95
            && p["difference_check"] == true
            && el.as_secs_f64() < 60.0;
        t.check(ok, format!("({n},{k}) rank {rank} in {:.0}% ({:.2}s)", frac * 100.0, el.as_secs_f64()));
    }
    t.line(5)
}

fn zelobenko() -> Line {
    let mut t = Tally::new();
    let start = Instant::now();
    for i in 1..=4usize {
        let (code, v, _) = gtkit(&["verify", "--claim", "zelobenko", "--n", &i.to_string()]);
        let mode = if i <= 3 { "verified_exact" } else { "verified_modular" };
        t.check(code == 0 && verdict(&v) == mode, format!("i={i} {}", verdict(&v)));
    }
    for i in 1..=5usize {
        let ok = newton_identities_hold(Rationals, i)
            .map(|ls| ls.len() == i && ls.iter().all(|l| l.holds))
            .unwrap_or(false);
        t.check(ok, format!("Newton i={i}"));
    }
    t.check(start.elapsed().as_secs_f64() < 300.0, format!("{:.2}s", start.elapsed().as_secs_f64()));
    t.line(6)
}

fn regular_components() -> Line {
    let mut t = Tally::new();
    for n in 2..=4usize {
        let (_, v, el) = gtkit(&["verify", "--claim", "components", "--n", &n.to_string()]);
        let a = &v["result"]["artifacts"];
        let total = 1u64 << d(n - 1);
        let candidates = a["candidates"].as_array().cloned().unwrap_or_default();
        let contained = a["contained_count"].as_u64().unwrap_or(0);
        let dims_ok = candidates.len() as u64 == total
            && candidates.iter().all(|c| c["dim"].as_u64() == Some(d(n - 1) as u64));
        let witnesses = a["necessity_witnesses"].as_array().cloned().unwrap_or_default();
        let witnesses_ok = !witnesses.is_empty() && witnesses.iter().all(|w| w["value"] != "0");
        t.check(contained == total, format!("n={n} contained {contained}/{total}"));
        t.check(dims_ok, format!("n={n} dims {}", d(n - 1)));
        t.check(witnesses_ok, format!("n={n} {} witnesses", witnesses.len()));
        t.check(el.as_secs_f64() < 60.0, format!("n={n} {:.2}s", el.as_secs_f64()));
    }
    t.line(7)
}

/// The known failure of criterion 7 must keep its exact shape: n! of the
/// candidates contained, all of them acyclic.
fn criterion_seven_as_recorded() -> bool {
    [(2usize, 2u64), (3, 6), (4, 24)].iter().all(|&(n, fact)| {
        let (_, v, _) = gtkit(&["verify", "--claim", "components", "--n", &n.to_string()]);
        let a = &v["result"]["artifacts"];
        a["contained_count"].as_u64() == Some(fact)
            && a["acyclic_count"].as_u64() == Some(fact)
            && a["contained_iff_acyclic"] == true
    })
}

fn random_form(ring: &Ring<Rationals>, degree: u32, rng: &mut ChaCha8Rng) -> Polynomial<Rationals> {
    loop {
        let mut p = Polynomial::zero(ring);
        for _ in 0..rng.gen_range(1..=4) {
            let c = Rationals.from_i64(rng.gen_range(-3..=3));
            let mut term = Polynomial::constant(ring, c);
            for _ in 0..degree {
                let v = Polynomial::var_at(ring, rng.gen_range(0..ring.nvars()));
                term = term.mul(&v).unwrap();
            }
            p = p.add(&term).unwrap();
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn oracle_agreement() -> Line {
    let mut t = Tally::new();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pool = [Variable::entry(1, 1), Variable::entry(1, 2), Variable::entry(2, 1)];
    let (mut regular, mut screened, mut forbidden, mut route_mismatch) = (0, 0, 0, 0);
    for _ in 0..200 {
        let nvars = rng.gen_range(1..=3);
        let ring = Ring::over(Rationals, pool[..nvars].to_vec());
        let len = rng.gen_range(1..=3);
        let gens: Vec<_> = (0..len)
            .map(|_| {
                let deg = rng.gen_range(1..=2);
                random_form(&ring, deg, &mut rng)
            })
            .collect();
        let hilbert = is_regular_sequence(&ring, &gens, &RegularityOptions::default()).unwrap();
        let colon = is_regular_sequence(
            &ring,
            &gens,
            &RegularityOptions {
                strategy: Strategy::Colon,
                budget: Budget::default(),
            },
        )
        .unwrap();
        if hilbert.is_regular() != colon.is_regular() {
            route_mismatch += 1;
        }
        let h1 = KoszulComplex::build(&ring, &gens)
            .unwrap()
            .homology_dims(1, 6, gtkit_core::koszul::DEFAULT_PIECE_CAP)
            .unwrap();
        let found = h1.iter().any(|r| r.homology_dim > 0);
        regular += hilbert.is_regular() as usize;
        screened += found as usize;
        if found && hilbert.is_regular() {
            forbidden += 1;
        }
    }
    t.check(forbidden == 0, format!("{forbidden} forbidden disagreements"));
    t.check(route_mismatch == 0, format!("{route_mismatch} route mismatches"));
    t.check(true, format!("200 systems, {regular} regular, {screened} with H1"));
    t.check(start.elapsed().as_secs_f64() < 300.0, format!("{:.2}s", start.elapsed().as_secs_f64()));
    t.line(8)
}

fn fixtures() -> Vec<(String, Ring<Rationals>, Vec<Polynomial<Rationals>>)> {
    let mut out = Vec::new();
    for n in 2..=3 {
        let s = gamma_bar(Rationals, n).unwrap();
        out.push((format!("gamma_bar n={n}"), s.ring, s.generators));
    }
    for n in 3..=4 {
        let s = sigma(Rationals, n).unwrap();
        out.push((format!("sigma n={n}"), s.ring, s.generators));
    }
    let s = chi(Rationals, 3).unwrap();
    out.push(("chi n=3".into(), s.ring, s.generators));
    let s = partial_system(Rationals, 3, 2, &random_beta(3, 2, 5), PartialFamily::GammaBar).unwrap();
    out.push(("partial (3,2)".into(), s.ring, s.generators));
    let r = Ring::new(Rationals, vec![Variable::entry(1, 1), Variable::entry(1, 2), Variable::entry(2, 1)], MonomialOrder::Lex);
    let gens = ["x11^2 - x12", "x11*x12 - x21 + 1", "x12^2 - x11*x21"]
        .iter()
        .map(|g| Polynomial::parse(&r, g).unwrap())
        .collect();
    out.push(("inhomogeneous lex".into(), r, gens));
    out
}

fn sorted_basis(gens: &[Polynomial<Rationals>], ring: &Ring<Rationals>) -> BTreeSet<String> {
    GroebnerBasis::compute(gens, ring, ring.order(), &Budget::default())
        .unwrap()
        .to_texts()
        .into_iter()
        .collect()
}

fn random_poly(ring: &Ring<Rationals>, rng: &mut ChaCha8Rng) -> Polynomial<Rationals> {
    let mut p = Polynomial::from_i64(ring, rng.gen_range(-2..=2));
    for deg in 1..=3 {
        if rng.gen_bool(0.7) {
            p = p.add(&random_form(ring, deg, rng)).unwrap();
        }
    }
    p
}

/// `X_i^i = 0` for every leading block, by direct multiplication.
fn nilpotent_by_powers(x: &ConcreteMatrix<Rationals>) -> bool {
    (1..=x.n()).all(|i| {
        let a = x.leading(i);
        let mut p = a.clone();
        for _ in 1..i {
            p = (0..i)
                .map(|r| {
                    (0..i)
                        .map(|c| (0..i).fold(BigRational::zero(), |acc, m| acc + &p[r][m] * &a[m][c]))
                        .collect()
                })
                .collect();
        }
        p.iter().flatten().all(|e| e.is_zero())
    })
}

fn engine_properties() -> Line {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let budget = Budget::default();
    let fixtures = fixtures();

    let mut unique = true;
    for (name, ring, gens) in &fixtures {
        let reference = sorted_basis(gens, ring);
        for _ in 0..20 {
            let mut g = gens.clone();
            g.shuffle(&mut rng);
            if sorted_basis(&g, ring) != reference {
                unique = false;
                t.check(false, format!("basis of {name} depends on generator order"));
                break;
            }
        }
    }
    t.check(unique, format!("GB uniqueness on {} fixtures x 20 shuffles", fixtures.len()));

    let (_, ring, gens) = &fixtures[1];
    let gb = GroebnerBasis::compute(gens, ring, ring.order(), &budget).unwrap();
    let linear = (0..100).all(|_| {
        let p = random_poly(ring, &mut rng);
        let q = random_poly(ring, &mut rng);
        let c = Rationals.from_i64(rng.gen_range(-5..=5));
        let lhs = gb.normal_form(&p.add(&q.scale(&c)).unwrap()).unwrap();
        let rhs = gb.normal_form(&p).unwrap().add(&gb.normal_form(&q).unwrap().scale(&c)).unwrap();
        lhs == rhs
    });
    t.check(linear, "NF linearity on 100 triples");

    let mut contains = true;
    for (name, ring, gens) in &fixtures {
        let ideal = Ideal::new(ring, gens.iter().cloned()).unwrap();
        let fs = [Polynomial::var_at(ring, 0), random_form(ring, 1, &mut rng)];
        for f in fs {
            let q = ideal.quotient(&f, &budget).unwrap();
            if !q.contains_ideal(&ideal, &budget).unwrap() {
                contains = false;
                t.check(false, format!("(I:f) misses I for {name}, f = {}", f.to_text()));
            }
        }
    }
    t.check(contains, "(I:f) contains I on all fixtures");

    let mat = Ring::matrix(Rationals, 3);
    let tr = named_hom("transpose", 3, Rationals).unwrap();
    let cj = named_hom("conj:231", 3, Rationals).unwrap();
    let both = tr.compose_after(&cj).unwrap();
    let one = Polynomial::one(&mat);
    let mut laws = tr.apply(&one).unwrap() == one;
    for _ in 0..200 {
        let p = random_poly(&mat, &mut rng);
        let q = random_poly(&mat, &mut rng);
        let ok = tr.apply(&p.add(&q).unwrap()).unwrap() == tr.apply(&p).unwrap().add(&tr.apply(&q).unwrap()).unwrap()
            && tr.apply(&p.mul(&q).unwrap()).unwrap() == tr.apply(&p).unwrap().mul(&tr.apply(&q).unwrap()).unwrap()
            && tr.apply(&tr.apply(&p).unwrap()).unwrap() == p
            && both.apply(&p).unwrap() == tr.apply(&cj.apply(&p).unwrap()).unwrap();
        laws &= ok;
    }
    t.check(laws, "hom laws on 200 polynomials");

    let mut agree = true;
    let mut counts = [0usize; 3];
    for kind in 0..3 {
        for _ in 0..100 {
            let n = rng.gen_range(2..=5);
            let x = match kind {
                0 => {
                    let lower = ConcreteMatrix::random(Rationals, n, 10, true, &mut rng);
                    if rng.gen_bool(0.5) {
                        lower
                    } else {
                        let e = lower.entries();
                        let up = (0..n).map(|i| (0..n).map(|j| e[j][i].clone()).collect()).collect();
                        ConcreteMatrix::new(Rationals, up).unwrap()
                    }
                }
                1 => ConcreteMatrix::random(Rationals, n, 10, false, &mut rng),
                _ => {
                    // One entry per off-diagonal pair, oriented at random.
                    let mut x = ConcreteMatrix::zero(Rationals, n);
                    for i in 0..n {
                        for j in i + 1..n {
                            let v = Rationals.from_i64(rng.gen_range(1..=3));
                            if rng.gen_bool(0.5) {
                                x.set(i, j, v);
                            } else {
                                x.set(j, i, v);
                            }
                        }
                    }
                    x
                }
            };
            let lib = strongly_nilpotent(&x).unwrap().strongly_nilpotent;
            let phi_zero = phi_k(&x, n).unwrap().iter().flatten().all(|c| c.is_zero());
            let point = x.as_point();
            let gamma_zero = gamma_bar(Rationals, n).unwrap().generators.iter().all(|g| g.eval(&point).is_zero());
            let direct = nilpotent_by_powers(&x);
            if !(lib == phi_zero && phi_zero == gamma_zero && gamma_zero == direct) || (kind == 0 && !direct) {
                agree = false;
            }
            counts[kind] += direct as usize;
        }
    }
    t.check(
        agree,
        format!(
            "nilpotency tests agree (strongly nilpotent: {}/100 triangular, {}/100 dense, {}/100 oriented)",
            counts[0], counts[1], counts[2]
        ),
    );
    t.line(9)
}

fn main() {
    // `cargo test -- --list` and filters: the suite is a single unit.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let criteria: [fn() -> Line; 9] = [
        ovsienko_small,
        ovsienko_gl4,
        weak_variety,
        partial_fibers,
        jacobian_probe,
        zelobenko,
        regular_components,
        oracle_agreement,
        engine_properties,
    ];
    let mut unexpected = Vec::new();
    for run in criteria {
        let start = Instant::now();
        let line = run();
        let known = KNOWN_FAILURES.iter().find(|(c, _)| *c == line.criterion);
        println!(
            "criterion {}: {} ({:.1}s) {}",
            line.criterion,
            if line.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            line.detail
        );
        match (line.pass, known) {
            (true, _) => {}
            (false, Some((_, why))) => {
                println!("  known failure: {why}");
                if line.criterion == 7 && !criterion_seven_as_recorded() {
                    unexpected.push(line.criterion);
                }
            }
            (false, _) => unexpected.push(line.criterion),
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: ok");
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
