use std::path::Path;
use std::time::Instant;

use gtkit_core::field::Field;
use gtkit_core::groebner::RadicalRoute;
use gtkit_core::gt::{chi, gamma_bar, partial_system, sigma, PartialFamily};
use gtkit_core::io::{matrix_from_rationals, matrix_to_json, parse_matrix, parse_rational_list, SystemFile};
use gtkit_core::koszul::{ci_oracle, KoszulComplex, KoszulVerdict};
use gtkit_core::kw::{fiber_signature, jacobian_rank_probe, strongly_nilpotent};
use gtkit_core::lab::{
    enumerate_regular_components, random_beta, verify_gl4_decomposition, verify_ovsienko, verify_partial, verify_weak,
    verify_zelobenko, Gl4Check, LabConfig, Verdict, VerificationReport, TOOL_VERSION,
};
use gtkit_core::regularity::{
    check_permutation_invariance, equidimensional_by_ci, is_regular_sequence, RegularityOptions, RegularityVerdict,
    Strategy,
};
use gtkit_core::{Budget, Error, FieldChoice, GroebnerBasis, Ideal, MonomialOrder, Polynomial, Result, Ring};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ClaimArg, Cli, Command, FamilyArg, Global, StrategyArg};

pub const OUTPUT_SCHEMA: &str = "gtkit.output/1";

macro_rules! with_field {
    ($choice:expr, $f:ident => $body:expr) => {
        match $choice.prime_field()? {
            None => {
                let $f = gtkit_core::Rationals;
                $body
            }
            Some(p) => {
                let $f = p;
                $body
            }
        }
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "FAILED")]
    Failed,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl Status {
    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Inconclusive => 2,
        }
    }

    fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::VerifiedExact | Verdict::VerifiedModular => Status::Ok,
            Verdict::Failed => Status::Failed,
            Verdict::InconclusiveBudget => Status::Inconclusive,
        }
    }
}

struct Outcome {
    field: FieldChoice,
    status: Status,
    summary: String,
    result: Value,
}

impl Outcome {
    fn new(field: FieldChoice, status: Status, summary: impl Into<String>, result: impl Serialize) -> Self {
        Outcome {
            field,
            status,
            summary: summary.into(),
            result: serde_json::to_value(result).expect("serializable"),
        }
    }
}

pub fn run(cli: Cli) -> u8 {
    if let Some(t) = cli.global.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return 3;
        }
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let g = &cli.global;
    let name = cli.command.name();
    let start = Instant::now();
    let (field, status, summary, result) = match dispatch(g, &cli.command) {
        Ok(o) => (o.field, o.status, o.summary, o.result),
        Err(Error::Budget(kind)) => {
            let field = default_field(g, &cli.command).unwrap_or(FieldChoice::Rationals);
            let msg = kind.to_string();
            (field, Status::Inconclusive, format!("budget exhausted: {msg}"), json!({ "budget": msg }))
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    let config = match g.config(field) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    let out = json!({
        "schema": OUTPUT_SCHEMA,
        "command": name,
        "tool_version": TOOL_VERSION,
        "config": config,
        "status": status,
        "summary": summary,
        "result": result,
    });
    let text = serde_json::to_string_pretty(&out).expect("serializable");
    println!("{text}");
    if let Some(path) = &g.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 3;
        }
    }
    let label = match status {
        Status::Ok => "ok",
        Status::Failed => "FAILED",
        Status::Inconclusive => "inconclusive",
    };
    eprintln!("{name}: {label}: {summary} ({:.2}s)", start.elapsed().as_secs_f64());
    status.exit_code()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<SystemFile> {
    SystemFile::parse(&read(path)?)
}

fn system_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Gb { system }
        | Command::Dim { system }
        | Command::Member { system, .. }
        | Command::Quotient { system, .. }
        | Command::Regseq { system, .. }
        | Command::Equidim { system }
        | Command::Koszul { system, .. } => Some(system),
        _ => None,
    }
}

/// Command-line field, else the system file's, else GF(32003) for gl4 and QQ.
fn default_field(g: &Global, cmd: &Command) -> Result<FieldChoice> {
    if let Some(f) = g.field_override()? {
        return Ok(f);
    }
    if let Some(p) = system_path(cmd) {
        return load_system(p)?.field_choice();
    }
    Ok(match cmd {
        Command::Verify { claim: ClaimArg::Gl4, .. } => FieldChoice::default_prime(),
        _ => FieldChoice::Rationals,
    })
}

fn dispatch(g: &Global, cmd: &Command) -> Result<Outcome> {
    let field = default_field(g, cmd)?;
    let budget = g.budget()?;
    let order = g.monomial_order()?;
    match cmd {
        Command::Gen { family, n, k, beta, chi } => gen(field, order, g.seed, *family, *n, *k, beta.as_deref(), *chi),
        Command::Verify { claim, n, k, beta, trials, checks } => {
            let cfg = LabConfig { budget, long: g.long };
            verify(field, &cfg, g.seed, *claim, *n, *k, beta.as_deref(), *trials, checks)
        }
        Command::Phi { matrix, k } => {
            let rows = parse_matrix(&read(matrix)?)?;
            with_field!(field, f => phi(f, field, &rows, *k))
        }
        Command::FiberProbe { n, k, trials, min_fraction } => {
            with_field!(field, f => fiber_probe(f, field, *n, *k, *trials, g.seed, *min_fraction))
        }
        _ => {
            let sys = load_system(system_path(cmd).expect("system command"))?;
            with_field!(field, f => {
                let (ring, gens) = sys.load(f, order)?;
                on_system(field, &ring, &gens, cmd, &budget, g.seed)
            })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn gen(
    field: FieldChoice,
    order: Option<MonomialOrder>,
    seed: u64,
    family: FamilyArg,
    n: usize,
    k: Option<usize>,
    beta: Option<&Path>,
    use_chi: bool,
) -> Result<Outcome> {
    if family != FamilyArg::Partial && (k.is_some() || beta.is_some() || use_chi) {
        return Err(Error::Parse("--k, --beta and --chi apply to the partial family only".into()));
    }
    let mut file = with_field!(field, f => {
        let sys = match family {
            FamilyArg::Gamma => gamma_bar(f, n)?,
            FamilyArg::Sigma => sigma(f, n)?,
            FamilyArg::Chi => chi(f, n)?,
            FamilyArg::Partial => {
                let k = k.ok_or_else(|| Error::Parse("the partial family needs --k".into()))?;
                let values = match beta {
                    Some(p) => parse_rational_list(&read(p)?)?,
                    None => {
                        if k > n {
                            return Err(Error::OutOfRange { what: "k", detail: format!("{k} not in 1..={n}") });
                        }
                        random_beta(n, k, seed)
                    }
                };
                let fam = if use_chi { PartialFamily::Chi } else { PartialFamily::GammaBar };
                partial_system(f, n, k, &values, fam)?
            }
        };
        SystemFile::from_system(&sys)
    });
    if let Some(o) = order {
        file.order = o.to_string();
    }
    let summary = format!("{} generators in {} variables", file.generators.len(), file.ring.variables.len());
    let value: Value = serde_json::from_str(&file.to_json())?;
    Ok(Outcome::new(field, Status::Ok, summary, value))
}

fn on_system<F: Field>(
    field: FieldChoice,
    ring: &Ring<F>,
    gens: &[Polynomial<F>],
    cmd: &Command,
    budget: &Budget,
    seed: u64,
) -> Result<Outcome> {
    let opts = |strategy| RegularityOptions {
        strategy,
        budget: budget.clone(),
    };
    match cmd {
        Command::Gb { .. } => {
            let gb = GroebnerBasis::compute(gens, ring, ring.order(), budget)?;
            let summary = format!("{} elements, unit: {}", gb.len(), gb.is_unit());
            Ok(Outcome::new(
                field,
                Status::Ok,
                summary,
                json!({
                    "order": ring.order().to_string(),
                    "basis": gb.to_texts(),
                    "is_unit": gb.is_unit(),
                    "stats": gb.stats(),
                    "system": SystemFile::from_polys(ring, gb.polys()),
                }),
            ))
        }
        Command::Dim { .. } => {
            let d = Ideal::new(ring, gens.iter().cloned())?.krull_dimension(budget)?;
            let summary = format!("krull dimension {}", d.krull_dim);
            Ok(Outcome::new(field, Status::Ok, summary, d))
        }
        Command::Member { poly, radical, .. } => {
            let p = Polynomial::parse(ring, poly)?;
            let ideal = Ideal::new(ring, gens.iter().cloned())?;
            let (member, decided_by) = if *radical {
                let a = ideal.radical_contains(&p, RadicalRoute::Auto, budget)?;
                (a.member, a.decided_by)
            } else {
                (ideal.contains(&p, budget)?, "normal_form")
            };
            let what = if *radical { "radical" } else { "ideal" };
            let summary = format!("{}in the {what}", if member { "" } else { "not " });
            Ok(Outcome::new(
                field,
                Status::Ok,
                summary,
                json!({ "poly": p.to_text(), "radical": radical, "member": member, "decided_by": decided_by }),
            ))
        }
        Command::Quotient { poly, .. } => {
            let p = Polynomial::parse(ring, poly)?;
            let q = Ideal::new(ring, gens.iter().cloned())?.quotient(&p, budget)?;
            let basis = q.groebner(budget)?;
            let summary = format!("{} basis elements", basis.len());
            Ok(Outcome::new(
                field,
                Status::Ok,
                summary,
                json!({
                    "poly": p.to_text(),
                    "generators": basis.to_texts(),
                    "is_unit": basis.is_unit(),
                    "system": SystemFile::from_polys(ring, basis.polys()),
                }),
            ))
        }
        Command::Regseq { permutations, strategy, .. } => {
            let strategy = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Hilbert => Strategy::Hilbert,
                StrategyArg::Colon => Strategy::Colon,
            };
            let o = opts(strategy);
            let cert = is_regular_sequence(ring, gens, &o)?;
            let mut status = match &cert.verdict {
                RegularityVerdict::Regular => Status::Ok,
                RegularityVerdict::FailedAt { .. } => Status::Failed,
                RegularityVerdict::Budget { .. } => Status::Inconclusive,
            };
            let mut summary = match &cert.verdict {
                RegularityVerdict::Regular => format!("regular sequence of length {}", gens.len()),
                RegularityVerdict::FailedAt { index } => format!("not regular: generator {index} is a zero divisor or unit"),
                RegularityVerdict::Budget { index, detail } => format!("budget hit at generator {index}: {detail}"),
            };
            let perms = match permutations {
                Some(t) => {
                    let rep = check_permutation_invariance(ring, gens, *t, seed, &o)?;
                    if rep.budget_hit && status != Status::Failed {
                        status = Status::Inconclusive;
                    } else if !rep.invariant_holds {
                        status = Status::Failed;
                        summary.push_str("; verdict changed under reordering");
                    }
                    Some(rep)
                }
                None => None,
            };
            Ok(Outcome::new(field, status, summary, json!({ "certificate": cert, "permutations": perms })))
        }
        Command::Equidim { .. } => {
            let cert = equidimensional_by_ci(ring, gens, &opts(Strategy::Auto))?;
            let (status, summary) = match (cert.concluded_dim, cert.regularity.is_budget()) {
                (Some(d), _) => (Status::Ok, format!("equidimensional of dimension {d}")),
                (None, true) => (Status::Inconclusive, "budget exhausted".to_string()),
                (None, false) => (
                    Status::Failed,
                    cert.refusal.clone().unwrap_or_else(|| "not a regular sequence".into()),
                ),
            };
            Ok(Outcome::new(field, status, summary, cert))
        }
        Command::Koszul { max_degree, piece, piece_cap, .. } => match piece {
            Some(p) => {
                let k = KoszulComplex::build(ring, gens)?;
                if *p < 1 || *p > k.len() {
                    return Err(Error::OutOfRange {
                        what: "piece",
                        detail: format!("{p} not in 1..={}", k.len()),
                    });
                }
                let pieces = k.homology_dims(*p, *max_degree, *piece_cap)?;
                let found = pieces.iter().find(|r| r.homology_dim > 0);
                let (status, summary) = match found {
                    Some(r) => (Status::Failed, format!("H_{p} nonzero in degree {}", r.degree)),
                    None => (Status::Ok, format!("H_{p} vanishes through degree {max_degree}")),
                };
                Ok(Outcome::new(field, status, summary, json!({ "p": p, "pieces": pieces })))
            }
            None => {
                let rep = ci_oracle(ring, gens, *max_degree, *piece_cap)?;
                let (status, summary) = match &rep.verdict {
                    KoszulVerdict::NoHomologyUpTo { max_degree } => {
                        (Status::Ok, format!("no higher homology through degree {max_degree}"))
                    }
                    KoszulVerdict::HomologyFoundAt { p, degree, dim } => {
                        (Status::Failed, format!("H_{p} has dimension {dim} in degree {degree}"))
                    }
                };
                Ok(Outcome::new(field, status, summary, rep))
            }
        },
        _ => unreachable!("not a system command"),
    }
}

fn phi<F: Field>(f: F, field: FieldChoice, rows: &[Vec<num_rational::BigRational>], k: Option<usize>) -> Result<Outcome> {
    let x = matrix_from_rationals(f, rows)?;
    let k = k.unwrap_or(x.n());
    let sig = fiber_signature(&x, k)?;
    let nil = strongly_nilpotent(&x)?;
    let summary = format!("n = {}, k = {k}, strongly nilpotent: {}", x.n(), nil.strongly_nilpotent);
    Ok(Outcome::new(
        field,
        Status::Ok,
        summary,
        json!({ "matrix": matrix_to_json(&x), "signature": sig, "nilpotency": nil }),
    ))
}

fn fiber_probe<F: Field>(
    f: F,
    field: FieldChoice,
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
    min_fraction: f64,
) -> Result<Outcome> {
    if trials == 0 {
        return Err(Error::Parse("--trials must be positive".into()));
    }
    let rep = jacobian_rank_probe(f, n, k, trials, seed)?;
    let ok = rep.difference_check && rep.full_rank_fraction >= min_fraction;
    let summary = format!(
        "{}/{} samples of full rank {}, derivative check {}",
        rep.full_rank_count,
        rep.trials,
        rep.equations,
        if rep.difference_check { "passed" } else { "failed" }
    );
    let status = if ok { Status::Ok } else { Status::Failed };
    Ok(Outcome::new(field, status, summary, json!({ "min_fraction": min_fraction, "probe": rep })))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    field: FieldChoice,
    cfg: &LabConfig,
    seed: u64,
    claim: ClaimArg,
    n: Option<usize>,
    k: Option<usize>,
    beta: Option<&Path>,
    trials: usize,
    checks: &[String],
) -> Result<Outcome> {
    let need_n = || n.ok_or_else(|| Error::Parse("this claim needs --n".into()));
    if claim != ClaimArg::Gl4 && !checks.is_empty() {
        return Err(Error::Parse("--check applies to the gl4 claim only".into()));
    }
    if claim != ClaimArg::Partial && (k.is_some() || beta.is_some() || trials > 0) {
        return Err(Error::Parse("--k, --beta and --trials apply to the partial claim only".into()));
    }
    let report: VerificationReport = match claim {
        ClaimArg::Ovsienko => verify_ovsienko(need_n()?, field, cfg)?,
        ClaimArg::Weak => verify_weak(need_n()?, field, cfg)?,
        ClaimArg::Components => enumerate_regular_components(need_n()?, field, cfg)?,
        ClaimArg::Zelobenko => verify_zelobenko(need_n()?, field, cfg)?,
        ClaimArg::Partial => {
            let k = k.ok_or_else(|| Error::Parse("the partial claim needs --k".into()))?;
            let values = match beta {
                Some(p) => Some(parse_rational_list(&read(p)?)?),
                None => None,
            };
            verify_partial(need_n()?, k, values, trials, seed, field, cfg)?
        }
        ClaimArg::Gl4 => {
            if n.is_some_and(|n| n != 4) {
                return Err(Error::Parse("the gl4 claim is for n = 4".into()));
            }
            let checks = checks.iter().map(|c| c.parse()).collect::<Result<Vec<Gl4Check>>>()?;
            verify_gl4_decomposition(field, &checks, cfg)?
        }
    };
    let status = Status::from_verdict(report.verdict);
    let mut summary = format!("{}: {}", report.claim, report.verdict.as_str());
    if let Some(Value::Number(d)) = report.artifact("concluded_dim") {
        summary.push_str(&format!(", dimension {d}"));
    }
    if !report.inconclusive.is_empty() {
        summary.push_str(&format!(", out of budget: {}", report.inconclusive.join(", ")));
    }
    Ok(Outcome::new(field, status, summary, report))
}
