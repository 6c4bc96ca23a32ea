//! JSON file formats: polynomial systems and concrete matrices.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, FieldChoice};
use crate::gt::GtSystem;
use crate::kw::ConcreteMatrix;
use crate::poly::{MonomialOrder, Polynomial, Ring, Variable};

pub const SYSTEM_SCHEMA: &str = "gtkit.system/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingSpec {
    pub field: String,
    pub variables: Vec<String>,
}

/// `{"schema", "ring": {"field", "variables"}, "order", "generators"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemFile {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub ring: RingSpec,
    #[serde(default = "default_order")]
    pub order: String,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Value>,
}

fn default_schema() -> String {
    SYSTEM_SCHEMA.to_string()
}

fn default_order() -> String {
    MonomialOrder::default().to_string()
}

impl SystemFile {
    pub fn from_polys<F: Field>(ring: &Ring<F>, polys: &[Polynomial<F>]) -> Self {
        SystemFile {
            schema: default_schema(),
            ring: RingSpec {
                field: ring.field().name(),
                variables: ring.vars().iter().map(|v| v.to_string()).collect(),
            },
            order: ring.order().to_string(),
            generators: polys.iter().map(|p| p.to_text()).collect(),
            labels: None,
            family: None,
        }
    }

    pub fn from_system<F: Field>(sys: &GtSystem<F>) -> Self {
        let mut out = Self::from_polys(&sys.ring, &sys.generators);
        out.labels = Some(sys.labels.clone());
        out.family = Some(serde_json::to_value(&sys.family).expect("serializable"));
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text)?;
        if file.schema != SYSTEM_SCHEMA {
            return Err(Error::Parse(format!("unsupported system schema `{}`", file.schema)));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn field_choice(&self) -> Result<FieldChoice> {
        self.ring.field.parse()
    }

    pub fn monomial_order(&self) -> Result<MonomialOrder> {
        self.order.parse()
    }

    /// Builds the ring (with `order` overriding the file's) and parses the
    /// generators in it.
    pub fn load<F: Field>(&self, field: F, order: Option<MonomialOrder>) -> Result<(Ring<F>, Vec<Polynomial<F>>)> {
        let vars = self
            .ring
            .variables
            .iter()
            .map(|v| v.parse::<Variable>())
            .collect::<Result<Vec<_>>>()?;
        let order = match order {
            Some(o) => o,
            None => self.monomial_order()?,
        };
        let ring = Ring::new(field, vars, order);
        let gens = self
            .generators
            .iter()
            .map(|g| Polynomial::parse(&ring, g))
            .collect::<Result<Vec<_>>>()?;
        Ok((ring, gens))
    }
}

/// A JSON array of arrays whose entries are integers or `"p/q"` strings.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<BigRational>>> {
    let v: Value = serde_json::from_str(text)?;
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(rational_entry)
                .collect()
        })
        .collect()
}

fn rational_entry(e: &Value) -> Result<BigRational> {
    match e {
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("bad rational entry {other}"))),
    }
}

/// Target values: a flat JSON array of rationals, or one array per level.
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>> {
    let v: Value = serde_json::from_str(text)?;
    let items = v.as_array().ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
    let mut out = Vec::new();
    for item in items {
        match item {
            Value::Array(level) => {
                for e in level {
                    out.push(rational_entry(e)?);
                }
            }
            e => out.push(rational_entry(e)?),
        }
    }
    Ok(out)
}

pub fn matrix_from_rationals<F: Field>(field: F, rows: &[Vec<BigRational>]) -> Result<ConcreteMatrix<F>> {
    let entries = rows
        .iter()
        .map(|r| r.iter().map(|q| field.from_rational(q)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ConcreteMatrix::new(field, entries)
}

pub fn matrix_to_json<F: Field>(m: &ConcreteMatrix<F>) -> Value {
    serde_json::to_value(m.to_texts()).expect("serializable")
}
