//! On-disk shape of catalog entries.
//!
//! Polynomials are strings in the canonical text grammar; rationals are
//! `[numerator, denominator]` pairs.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub name: String,
    pub description: String,
    pub ring: Vec<String>,
    #[serde(default, skip_serializing_if = "core::ops::Not::not")]
    pub laurent: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reductions: Vec<ReductionFile>,
    pub valuation: ValuationFile,
    pub generators: Vec<GeneratorFile>,
    pub section: usize,
    pub relations: Vec<String>,
    pub expected: ExpectedFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homomorphism: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationFile>,
    #[serde(default)]
    pub flow: FlowDefaults,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionFile {
    pub lead: String,
    pub tail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationFile {
    Min,
    Max,
}

fn default_cap() -> usize {
    crate::algebra::DEFAULT_SERIES_CAP
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ValuationFile {
    Monomial {
        orientation: OrientationFile,
    },
    Series {
        parameter: String,
        #[serde(default)]
        branches: Vec<(String, String)>,
        images: Vec<String>,
        order: usize,
        #[serde(default = "default_cap")]
        cap: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub level: u32,
    pub rep: String,
    pub value: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFile {
    /// `[level, u₁, …, uₙ]` per generator.
    pub semigroup: Vec<Vec<i64>>,
    pub vertices: Vec<Vec<[i64; 2]>>,
    pub degree: [i64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<ExpectedSlice>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedSlice {
    pub semigroup: Vec<Vec<i64>>,
    pub vertices: Vec<Vec<[i64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub highest_weight: Vec<i64>,
    pub pattern_matrix: Vec<Vec<i64>>,
    pub pattern_offset: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowDefaults {
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    /// Slow entries are left out of default flow runs.
    #[serde(default, skip_serializing_if = "core::ops::Not::not")]
    pub extended: bool,
}

fn default_epsilon() -> f64 {
    0.5
}

fn default_delta() -> f64 {
    1e-4
}

impl Default for FlowDefaults {
    fn default() -> Self {
        FlowDefaults {
            epsilon: default_epsilon(),
            delta: default_delta(),
            extended: false,
        }
    }
}
