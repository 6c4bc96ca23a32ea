use serde::{Deserialize, Serialize};

/// Caps on a Groebner computation. Exceeding one is reported as
/// `Error::Budget`, never as an answer.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_pairs: Option<usize>,
    pub max_seconds: Option<f64>,
    pub max_degree: Option<u32>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn pairs(mut self, n: usize) -> Self {
        self.max_pairs = Some(n);
        self
    }

    pub fn seconds(mut self, s: f64) -> Self {
        self.max_seconds = Some(s);
        self
    }

    pub fn degree(mut self, d: u32) -> Self {
        self.max_degree = Some(d);
        self
    }
}
