use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gtkit_core::{Budget, Error, FieldChoice, MonomialOrder, Result};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "gtkit",
    version,
    about = "Gelfand-Tsetlin polynomial systems: generation, Groebner bases, regular sequences, Koszul checks and variety verification",
    after_help = "Exit codes: 0 success or verified, 1 FAILED (a counterexample is in the JSON), 2 budget exhausted or inconclusive, 3 usage error.\nGTKIT_BUDGET_SECONDS overrides --budget-seconds."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Coefficient field: `q`, `fp` or `GF(p)`. Default: the system file's
    /// field for commands reading one, GF(32003) for `verify --claim gl4`,
    /// QQ everywhere else.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Prime for the modular field (implies `--field fp`).
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Monomial order: degrevlex or lex.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Most S-pairs a Groebner computation may reduce.
    #[arg(long, global = true)]
    pub budget_pairs: Option<usize>,
    /// Wall-clock limit per Groebner computation.
    #[arg(long, global = true)]
    pub budget_seconds: Option<f64>,
    /// Largest S-pair degree the engine may reduce.
    #[arg(long, global = true)]
    pub budget_degree: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Allow the long exact runs.
    #[arg(long, global = true)]
    pub long: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyArg {
    Gamma,
    Sigma,
    Chi,
    Partial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimArg {
    Ovsienko,
    Weak,
    Components,
    Zelobenko,
    Partial,
    Gl4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Hilbert,
    Colon,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a generator family as a JSON system.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Number of trailing levels (partial family).
        #[arg(long)]
        k: Option<usize>,
        /// JSON list of target values (partial family); random from --seed otherwise.
        #[arg(long)]
        beta: Option<PathBuf>,
        /// Use characteristic coefficients instead of power traces (partial family).
        #[arg(long)]
        chi: bool,
    },
    /// Reduced Groebner basis of a system.
    Gb {
        #[arg(long)]
        system: PathBuf,
    },
    /// Krull dimension of the variety of a system.
    Dim {
        #[arg(long)]
        system: PathBuf,
    },
    /// Ideal or radical membership of a polynomial.
    Member {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        radical: bool,
    },
    /// The quotient ideal (I : f).
    Quotient {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Regular-sequence certificate for the generators in order.
    Regseq {
        #[arg(long)]
        system: PathBuf,
        /// Also re-certify this many shuffled orders (all orders when fewer exist).
        #[arg(long)]
        permutations: Option<usize>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Equidimensionality and dimension from a homogeneous regular sequence.
    Equidim {
        #[arg(long)]
        system: PathBuf,
    },
    /// Degreewise Koszul homology screen.
    Koszul {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value_t = gtkit_core::koszul::DEFAULT_MAX_DEGREE)]
        max_degree: u32,
        /// Report only homological degree P.
        #[arg(long)]
        piece: Option<usize>,
        /// Largest graded piece dimension before giving up.
        #[arg(long, default_value_t = gtkit_core::koszul::DEFAULT_PIECE_CAP)]
        piece_cap: usize,
    },
    /// Characteristic coefficients of the trailing principal blocks of a matrix.
    Phi {
        /// JSON array of rows; entries are integers or "p/q" strings.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Jacobian rank of the fiber equations at seeded random matrices.
    FiberProbe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Smallest fraction of full-rank samples counted as a pass.
        #[arg(long, default_value_t = 0.95)]
        min_fraction: f64,
    },
    /// Verify a named statement and write a report.
    ///
    /// The field defaults to GF(32003) for gl4 and QQ otherwise; runs at
    /// n = 4 are modular unless --long is given.
    Verify {
        #[arg(long, value_enum)]
        claim: ClaimArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        beta: Option<PathBuf>,
        /// Jacobian probe samples for the partial claim.
        #[arg(long, default_value_t = 0)]
        trials: usize,
        /// gl4 sub-checks to run: union, partial_unions, homs, chain, pieces.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen { .. } => "gen",
            Command::Gb { .. } => "gb",
            Command::Dim { .. } => "dim",
            Command::Member { .. } => "member",
            Command::Quotient { .. } => "quotient",
            Command::Regseq { .. } => "regseq",
            Command::Equidim { .. } => "equidim",
            Command::Koszul { .. } => "koszul",
            Command::Phi { .. } => "phi",
            Command::FiberProbe { .. } => "fiber-probe",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Resolved settings, embedded in every output.
#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub field: FieldChoice,
    pub field_name: String,
    pub order: Option<String>,
    pub budget: Budget,
    pub seed: u64,
    pub long: bool,
    pub threads: usize,
}

impl Global {
    /// The field asked for on the command line, if any.
    pub fn field_override(&self) -> Result<Option<FieldChoice>> {
        match (&self.field, self.prime) {
            (None, None) => Ok(None),
            (None, Some(p)) => FieldChoice::Prime(p).validated().map(Some),
            (Some(f), p) => {
                let choice: FieldChoice = f.parse()?;
                match (choice, p) {
                    (FieldChoice::Prime(_), Some(p)) => FieldChoice::Prime(p).validated().map(Some),
                    (FieldChoice::Rationals, Some(_)) => Err(Error::Parse("--prime conflicts with --field q".into())),
                    (c, None) => Ok(Some(c)),
                }
            }
        }
    }

    pub fn monomial_order(&self) -> Result<Option<MonomialOrder>> {
        self.order.as_deref().map(str::parse).transpose()
    }

    pub fn budget(&self) -> Result<Budget> {
        let mut b = Budget::unlimited();
        if let Some(p) = self.budget_pairs {
            if p == 0 {
                return Err(Error::Parse("--budget-pairs must be positive".into()));
            }
            b = b.pairs(p);
        }
        let env = std::env::var("GTKIT_BUDGET_SECONDS").ok();
        let seconds = match env {
            Some(s) => Some(s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("GTKIT_BUDGET_SECONDS=`{s}`")))?),
            None => self.budget_seconds,
        };
        if let Some(s) = seconds {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::Parse("budget seconds must be positive".into()));
            }
            b = b.seconds(s);
        }
        if let Some(d) = self.budget_degree {
            if d == 0 {
                return Err(Error::Parse("--budget-degree must be positive".into()));
            }
            b = b.degree(d);
        }
        Ok(b)
    }

    pub fn config(&self, field: FieldChoice) -> Result<Config> {
        Ok(Config {
            field,
            field_name: field.name(),
            order: self.order.clone(),
            budget: self.budget()?,
            seed: self.seed,
            long: self.long,
            threads: self.threads.unwrap_or_else(rayon::current_num_threads),
        })
    }
}
