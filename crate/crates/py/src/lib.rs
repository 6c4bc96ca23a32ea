use gtkit_core::field::parse_rational;
use gtkit_core::groebner::{Budget, RadicalRoute};
use gtkit_core::gt::{chi, gamma_bar, partial_system, sigma, PartialFamily};
use gtkit_core::io::{matrix_from_rationals, SystemFile};
use gtkit_core::koszul::{ci_oracle, DEFAULT_PIECE_CAP};
use gtkit_core::kw::{fiber_signature, jacobian_rank_probe, strongly_nilpotent as nilpotency};
use gtkit_core::lab::{
    enumerate_regular_components, random_beta, verify_gl4_decomposition, verify_ovsienko, verify_partial, verify_weak,
    verify_zelobenko, Gl4Check, LabConfig,
};
use gtkit_core::regularity::{equidimensional_by_ci, is_regular_sequence, RegularityOptions, Strategy};
use gtkit_core::{Error, FieldChoice, GroebnerBasis, Ideal, MonomialOrder, Polynomial};
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(_gtkit, BudgetExceeded, PyException, "A computation ran out of its pair, time or degree budget.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Budget(_) => BudgetExceeded::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for Result<T, Error> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

macro_rules! with_field {
    ($choice:expr, $f:ident => $body:expr) => {
        match $choice.prime_field().py()? {
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

fn to_py(py: Python<'_>, value: impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(&value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn field_of(field: Option<&str>) -> PyResult<Option<FieldChoice>> {
    field.map(|f| f.parse().py()).transpose()
}

fn budget(pairs: Option<usize>, seconds: Option<f64>, degree: Option<u32>) -> Budget {
    let mut b = Budget::unlimited();
    if let Some(p) = pairs {
        b = b.pairs(p);
    }
    if let Some(s) = seconds {
        b = b.seconds(s);
    }
    if let Some(d) = degree {
        b = b.degree(d);
    }
    b
}

fn rationals(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Vec<Vec<BigRational>>> {
    rows.iter()
        .map(|r| r.iter().map(|e| parse_rational(&e.str()?.to_string()).py()).collect())
        .collect()
}

/// A polynomial system over QQ or GF(p).
#[pyclass(module = "gtkit", frozen)]
struct System {
    file: SystemFile,
    field: FieldChoice,
}

impl System {
    fn from_file(file: SystemFile) -> PyResult<Self> {
        let field = file.field_choice().py()?;
        Ok(System { file, field })
    }

    fn order(&self) -> PyResult<MonomialOrder> {
        self.file.monomial_order().py()
    }
}

#[pymethods]
impl System {
    #[new]
    #[pyo3(signature = (variables, generators, field = "QQ", order = "degrevlex"))]
    fn new(variables: Vec<String>, generators: Vec<String>, field: &str, order: &str) -> PyResult<Self> {
        let choice: FieldChoice = field.parse().py()?;
        let order: MonomialOrder = order.parse().py()?;
        let text = serde_json::json!({
            "ring": { "field": choice.name(), "variables": variables },
            "order": order.to_string(),
            "generators": generators,
        });
        let file = SystemFile::parse(&text.to_string()).py()?;
        let sys = System::from_file(file)?;
        // Parse once so bad input fails here rather than on first use.
        with_field!(sys.field, f => {
            sys.file.load(f, None).py()?;
        });
        Ok(sys)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        System::from_file(SystemFile::parse(text).py()?)
    }

    /// Generator families: `gamma`, `sigma`, `chi` or `partial`.
    #[staticmethod]
    #[pyo3(signature = (family, n, k = None, beta = None, seed = 0, use_chi = false, field = "QQ"))]
    fn family(
        family: &str,
        n: usize,
        k: Option<usize>,
        beta: Option<Vec<Bound<'_, PyAny>>>,
        seed: u64,
        use_chi: bool,
        field: &str,
    ) -> PyResult<Self> {
        let choice: FieldChoice = field.parse().py()?;
        let file = with_field!(choice, f => {
            let sys = match family {
                "gamma" => gamma_bar(f, n).py()?,
                "sigma" => sigma(f, n).py()?,
                "chi" => chi(f, n).py()?,
                "partial" => {
                    let k = k.ok_or_else(|| PyValueError::new_err("the partial family needs k"))?;
                    let values = match beta {
                        Some(b) => rationals(vec![b])?.remove(0),
                        None if (1..=n).contains(&k) => random_beta(n, k, seed),
                        None => return Err(PyValueError::new_err(format!("k = {k} not in 1..={n}"))),
                    };
                    let fam = if use_chi { PartialFamily::Chi } else { PartialFamily::GammaBar };
                    partial_system(f, n, k, &values, fam).py()?
                }
                other => return Err(PyValueError::new_err(format!("unknown family `{other}`"))),
            };
            SystemFile::from_system(&sys)
        });
        System::from_file(file)
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.file.generators.clone()
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.file.ring.variables.clone()
    }

    #[getter]
    fn field(&self) -> String {
        self.field.name()
    }

    #[getter]
    fn labels(&self) -> Option<Vec<String>> {
        self.file.labels.clone()
    }

    fn to_json(&self) -> String {
        self.file.to_json()
    }

    fn __len__(&self) -> usize {
        self.file.generators.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "System({} generators in {} variables over {})",
            self.file.generators.len(),
            self.file.ring.variables.len(),
            self.field.name()
        )
    }

    /// Reduced Groebner basis in the system's order.
    #[pyo3(signature = (budget_pairs = None, budget_seconds = None, budget_degree = None))]
    fn groebner_basis(
        &self,
        budget_pairs: Option<usize>,
        budget_seconds: Option<f64>,
        budget_degree: Option<u32>,
    ) -> PyResult<Vec<String>> {
        let b = budget(budget_pairs, budget_seconds, budget_degree);
        with_field!(self.field, f => {
            let (ring, gens) = self.file.load(f, None).py()?;
            Ok(GroebnerBasis::compute(&gens, &ring, self.order()?, &b).py()?.to_texts())
        })
    }

    fn krull_dimension(&self) -> PyResult<i64> {
        with_field!(self.field, f => {
            let (ring, gens) = self.file.load(f, None).py()?;
            Ok(Ideal::new(&ring, gens).py()?.krull_dimension(&Budget::default()).py()?.krull_dim)
        })
    }

    #[pyo3(signature = (poly, radical = false))]
    fn contains(&self, poly: &str, radical: bool) -> PyResult<bool> {
        with_field!(self.field, f => {
            let (ring, gens) = self.file.load(f, None).py()?;
            let p = Polynomial::parse(&ring, poly).py()?;
            let ideal = Ideal::new(&ring, gens).py()?;
            let b = Budget::default();
            if radical {
                Ok(ideal.radical_contains(&p, RadicalRoute::Auto, &b).py()?.member)
            } else {
                ideal.contains(&p, &b).py()
            }
        })
    }

    /// `(I : f)` as a new system given by its reduced basis.
    fn quotient(&self, poly: &str) -> PyResult<System> {
        with_field!(self.field, f => {
            let (ring, gens) = self.file.load(f, None).py()?;
            let p = Polynomial::parse(&ring, poly).py()?;
            let b = Budget::default();
            let q = Ideal::new(&ring, gens).py()?.quotient(&p, &b).py()?;
            System::from_file(SystemFile::from_polys(&ring, q.groebner(&b).py()?.polys()))
        })
    }

    /// Step-by-step regular-sequence certificate as a dict.
    #[pyo3(signature = (strategy = "auto"))]
    fn regular_sequence(&self, py: Python<'_>, strategy: &str) -> PyResult<Py<PyAny>> {
        let strategy = match strategy {
            "auto" => Strategy::Auto,
            "hilbert" => Strategy::Hilbert,
            "colon" => Strategy::Colon,
            other => return Err(PyValueError::new_err(format!("unknown strategy `{other}`"))),
        };
        let opts = RegularityOptions {
            strategy,
            budget: Budget::default(),
        };
        with_field!(self.field, f => {
            let (ring, gens) = self.file.load(f, None).py()?;
            to_py(py, is_regular_sequence(&ring, &gens, &opts).py()?)
        })
    }

    fn equidimensional(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        with_field!(self.field, f => {
            let (ring, gens) = self.file.load(f, None).py()?;
            to_py(py, equidimensional_by_ci(&ring, &gens, &RegularityOptions::default()).py()?)
        })
    }

    #[pyo3(signature = (max_degree = 8))]
    fn koszul(&self, py: Python<'_>, max_degree: u32) -> PyResult<Py<PyAny>> {
        with_field!(self.field, f => {
            let (ring, gens) = self.file.load(f, None).py()?;
            to_py(py, ci_oracle(&ring, &gens, max_degree, DEFAULT_PIECE_CAP).py()?)
        })
    }
}

/// Characteristic coefficients of the trailing `k` leading blocks.
#[pyfunction]
#[pyo3(signature = (matrix, k = None, field = "QQ"))]
fn phi(matrix: Vec<Vec<Bound<'_, PyAny>>>, k: Option<usize>, field: &str) -> PyResult<Vec<Vec<String>>> {
    let rows = rationals(matrix)?;
    let choice: FieldChoice = field.parse().py()?;
    with_field!(choice, f => {
        let x = matrix_from_rationals(f, &rows).py()?;
        let k = k.unwrap_or(x.n());
        Ok(fiber_signature(&x, k).py()?.levels)
    })
}

#[pyfunction]
#[pyo3(signature = (matrix, field = "QQ"))]
fn strongly_nilpotent(matrix: Vec<Vec<Bound<'_, PyAny>>>, field: &str) -> PyResult<bool> {
    let rows = rationals(matrix)?;
    let choice: FieldChoice = field.parse().py()?;
    with_field!(choice, f => {
        let x = matrix_from_rationals(f, &rows).py()?;
        Ok(nilpotency(&x).py()?.strongly_nilpotent)
    })
}

#[pyfunction]
#[pyo3(signature = (n, k, trials = 100, seed = 0, field = "QQ"))]
fn fiber_probe(py: Python<'_>, n: usize, k: usize, trials: usize, seed: u64, field: &str) -> PyResult<Py<PyAny>> {
    let choice: FieldChoice = field.parse().py()?;
    with_field!(choice, f => to_py(py, jacobian_rank_probe(f, n, k, trials, seed).py()?))
}

/// Runs a named verification and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (
    claim, n = None, k = None, field = None, seed = 0, trials = 0, long = false,
    checks = None, budget_pairs = None, budget_seconds = None,
))]
#[allow(clippy::too_many_arguments)]
fn verify(
    py: Python<'_>,
    claim: &str,
    n: Option<usize>,
    k: Option<usize>,
    field: Option<&str>,
    seed: u64,
    trials: usize,
    long: bool,
    checks: Option<Vec<String>>,
    budget_pairs: Option<usize>,
    budget_seconds: Option<f64>,
) -> PyResult<Py<PyAny>> {
    let cfg = LabConfig {
        budget: budget(budget_pairs, budget_seconds, None),
        long,
    };
    let field = field_of(field)?;
    let exact = field.unwrap_or(FieldChoice::Rationals);
    let need_n = || n.ok_or_else(|| PyValueError::new_err(format!("claim `{claim}` needs n")));
    let report = match claim {
        "ovsienko" => verify_ovsienko(need_n()?, exact, &cfg),
        "weak" => verify_weak(need_n()?, exact, &cfg),
        "components" => enumerate_regular_components(need_n()?, exact, &cfg),
        "zelobenko" => verify_zelobenko(need_n()?, exact, &cfg),
        "partial" => {
            let k = k.ok_or_else(|| PyValueError::new_err("claim `partial` needs k"))?;
            verify_partial(need_n()?, k, None, trials, seed, exact, &cfg)
        }
        "gl4" => {
            let checks = checks
                .unwrap_or_default()
                .iter()
                .map(|c| c.parse::<Gl4Check>())
                .collect::<Result<Vec<_>, _>>()
                .py()?;
            verify_gl4_decomposition(field.unwrap_or_else(FieldChoice::default_prime), &checks, &cfg)
        }
        other => return Err(PyValueError::new_err(format!("unknown claim `{other}`"))),
    }
    .py()?;
    to_py(py, report)
}

#[pymodule]
fn _gtkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<System>()?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(strongly_nilpotent, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_probe, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
