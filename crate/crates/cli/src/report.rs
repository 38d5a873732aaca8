//! Report types that only exist at the command-line layer.

use btangent::{Coloring, EdgeVerdict, IndexResult};
use serde::{Deserialize, Serialize};

pub const NOT_TWO_COLORABLE: &str = "NOT TWO-COLORABLE";
pub const TWO_COLORABLE: &str = "TWO-COLORABLE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorReport {
    pub verdict: String,
    pub two_colorable: bool,
    pub coloring: Option<Coloring>,
}

impl ColorReport {
    pub fn new(coloring: Option<Coloring>) -> Self {
        let two_colorable = coloring.is_some();
        Self {
            verdict: if two_colorable { TWO_COLORABLE } else { NOT_TWO_COLORABLE }.to_owned(),
            two_colorable,
            coloring,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// `honest` for the field itself, `b` for its coefficients in the b-frame.
    pub frame: String,
    pub center: (f64, f64),
    pub result: IndexResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub verdict: EdgeVerdict,
    pub dim_m: u32,
    pub dim_f: u32,
    pub codimension: u32,
    pub two_colorable: bool,
}
