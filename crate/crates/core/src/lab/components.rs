use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{var_names, with_field, FieldChoice, LabConfig, ReportBuilder, ReportInputs, VerificationReport};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::gt::{d, gamma_bar, GtSystem};
use crate::kw::{strongly_nilpotent, ConcreteMatrix};
use crate::poly::{Polynomial, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCandidate {
    /// The coordinates set to zero.
    pub variables: Vec<String>,
    pub contains_all_diagonals: bool,
    pub one_per_offdiagonal_pair: bool,
    /// Every power trace vanishes identically on `V(S)`.
    pub contained: bool,
    /// The surviving off-diagonal entries, read as edges `a -> b`, have no
    /// directed cycle.
    pub orientation_acyclic: bool,
    pub dim: i64,
    /// Swapping `x_ab <-> x_ba` on the lower choices carries `S` onto the
    /// upper triangle.
    pub isomorphic_to_upper: bool,
    /// First generator that survives the substitution, with the residue.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
struct Witness {
    generator: String,
    point: String,
    value: String,
}

#[derive(Clone, Debug, Serialize)]
struct Obstruction {
    candidate: Vec<String>,
    generator: String,
    residue: String,
    matrix: Vec<Vec<String>>,
    generator_value: String,
    matrix_strongly_nilpotent: bool,
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

fn acyclic(n: usize, free: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n + 1];
    for &(_, b) in free {
        indeg[b] += 1;
    }
    let mut ready: Vec<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for &(a, b) in free {
            if a == v {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.push(b);
                }
            }
        }
    }
    seen == n
}

/// A matrix supported off `S` where `residue` is nonzero, by seeded search.
fn find_point<F: Field>(field: &F, n: usize, residue: &Polynomial<F>, zeroed: &[Variable]) -> Vec<F::Elem> {
    let ring = residue.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut point = vec![field.one(); ring.nvars()];
    for attempt in 0..1000 {
        for (idx, v) in ring.vars().iter().enumerate() {
            point[idx] = if zeroed.contains(v) {
                field.zero()
            } else if attempt == 0 {
                field.one()
            } else {
                field.from_i64(rng.gen_range(-(n as i64 + 3)..=n as i64 + 3))
            };
        }
        if !field.is_zero(&residue.eval(&point)) {
            break;
        }
    }
    point
}

/// Enumerates every coordinate subspace cut out by all diagonal entries
/// and one entry from each off-diagonal pair, and tests whether it lies
/// in the Gelfand-Tsetlin variety.
pub fn enumerate_regular_components(n: usize, field: FieldChoice, cfg: &LabConfig) -> Result<VerificationReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::out_of_range("n", format!("{n} not in 2..=4")));
    }
    let inputs = ReportInputs {
        n: Some(n),
        field: field.name(),
        budget: cfg.budget.clone(),
        long: cfg.long,
        ..Default::default()
    };
    let mut b = ReportBuilder::new(
        "components",
        format!(
            "all {} coordinate candidates lie in the Gelfand-Tsetlin variety of gl_{n}, each of dimension {}",
            1usize << d(n - 1),
            d(n - 1)
        ),
        inputs,
        field.is_exact(),
    );
    with_field!(field, f => run(f, n, cfg, &mut b))?;
    Ok(b.finish())
}

fn run<F: Field>(field: F, n: usize, cfg: &LabConfig, b: &mut ReportBuilder) -> Result<()> {
    let sys = gamma_bar(field.clone(), n)?;
    let ring = sys.ring.clone();
    let v = Variable::entry;
    let expected = d(n - 1) as i64;
    let upper: Vec<Variable> = (1..=n).flat_map(|i| (i..=n).map(move |j| v(i, j))).collect();
    let ps = pairs(n);
    let mut candidates = Vec::with_capacity(1 << ps.len());
    let mut obstructions = Vec::new();
    for mask in 0u32..(1 << ps.len()) {
        let mut s: Vec<Variable> = (1..=n).map(|i| v(i, i)).collect();
        let mut free = Vec::new();
        let mut swapped = Vec::new();
        for (bit, &(i, j)) in ps.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                s.push(v(j, i));
                free.push((i, j));
                swapped.push((v(j, i), v(i, j)));
            } else {
                s.push(v(i, j));
                free.push((j, i));
            }
        }
        s.sort();
        let contains_all_diagonals = (1..=n).all(|i| s.contains(&v(i, i)));
        let one_per_offdiagonal_pair = ps.iter().all(|&(i, j)| s.contains(&v(i, j)) ^ s.contains(&v(j, i)));
        let mut obstruction = None;
        for (label, g) in sys.labels.iter().zip(&sys.generators) {
            let r = g.substitute_zero(&s);
            if !r.is_zero() {
                obstruction = Some((label.clone(), r));
                break;
            }
        }
        let ideal = Ideal::new(&ring, s.iter().map(|x| Polynomial::var(&ring, *x)).collect::<Result<Vec<_>>>()?)?;
        let dim = ideal.krull_dimension(&cfg.budget)?.krull_dim;
        let mut image: Vec<Variable> = s
            .iter()
            .map(|x| swapped.iter().find(|(a, _)| a == x).map_or(*x, |(_, b)| *b))
            .collect();
        image.sort();
        let mut upper_sorted = upper.clone();
        upper_sorted.sort();
        if let Some((label, r)) = &obstruction {
            let point = find_point(&field, n, r, &s);
            let m = ConcreteMatrix::new(field.clone(), point.chunks(n).map(|c| c.to_vec()).collect())?;
            obstructions.push(Obstruction {
                candidate: var_names(&s),
                generator: label.clone(),
                residue: r.to_text(),
                matrix: m.to_texts(),
                generator_value: field.format(&r.eval(&point)),
                matrix_strongly_nilpotent: strongly_nilpotent(&m)?.strongly_nilpotent,
            });
        }
        candidates.push(ComponentCandidate {
            variables: var_names(&s),
            contains_all_diagonals,
            one_per_offdiagonal_pair,
            contained: obstruction.is_none(),
            orientation_acyclic: acyclic(n, &free),
            dim,
            isomorphic_to_upper: image == upper_sorted,
            obstruction: obstruction.map(|(l, r)| (l, r.to_text())),
        });
    }
    let contained = candidates.iter().filter(|c| c.contained).count();
    let acyclic_count = candidates.iter().filter(|c| c.orientation_acyclic).count();
    b.put("candidate_count", candidates.len());
    b.put("contained_count", contained);
    b.put("acyclic_count", acyclic_count);
    b.put("contained_iff_acyclic", candidates.iter().all(|c| c.contained == c.orientation_acyclic));
    b.put("upper_triangle_contained", candidates[0].contained);
    let bad_shape: Vec<&ComponentCandidate> = candidates
        .iter()
        .filter(|c| !(c.contains_all_diagonals && c.one_per_offdiagonal_pair && c.isomorphic_to_upper))
        .collect();
    b.expect(bad_shape.is_empty(), "candidate_shape", &bad_shape);
    let wrong_dim: Vec<&ComponentCandidate> = candidates.iter().filter(|c| c.dim != expected).collect();
    b.expect(wrong_dim.is_empty(), "dimension", &wrong_dim);
    if !obstructions.is_empty() {
        b.fail(
            "containment",
            serde_json::json!({
                "not_contained": obstructions.len(),
                "of": candidates.len(),
                "first": &obstructions[0],
            }),
        );
    }
    let witnesses = necessity_witnesses(&sys, n)?;
    let bad_witness: Vec<&Witness> = witnesses.iter().filter(|w| w.value == "0").collect();
    b.expect(bad_witness.is_empty(), "necessity_witnesses", &bad_witness);
    b.put("necessity_witnesses", &witnesses);
    b.put("candidates", &candidates);
    b.put("obstructions", &obstructions);
    Ok(())
}

/// `γ̄_i1(E_ii)` and `γ̄_i2(E_ij + E_ji)` for `j < i`.
fn necessity_witnesses<F: Field>(sys: &GtSystem<F>, n: usize) -> Result<Vec<Witness>> {
    let field = sys.ring.field();
    let ring = &sys.ring;
    let mut out = Vec::new();
    let unit_point = |entries: &[(usize, usize)]| -> Result<Vec<F::Elem>> {
        let mut p = vec![field.zero(); ring.nvars()];
        for &(a, c) in entries {
            p[ring.require(Variable::entry(a, c))?] = field.one();
        }
        Ok(p)
    };
    for i in 1..=n {
        let label = format!("gamma_bar[{i},1]");
        let g = sys.get(&label).expect("level exists");
        out.push(Witness {
            generator: label,
            point: format!("E{i}{i}"),
            value: field.format(&g.eval(&unit_point(&[(i, i)])?)),
        });
    }
    for i in 2..=n {
        for j in 1..i {
            let label = format!("gamma_bar[{i},2]");
            let g = sys.get(&label).expect("level exists");
            out.push(Witness {
                generator: label,
                point: format!("E{i}{j}+E{j}{i}"),
                value: field.format(&g.eval(&unit_point(&[(i, j), (j, i)])?)),
            });
        }
    }
    Ok(out)
}
