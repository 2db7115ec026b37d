use std::collections::BTreeMap;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::poly::Polynomial;
use crate::rational::{format_pq, Rational};

/// One side of an identity at one grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Rational),
    Poly(Polynomial),
}

/// Scalars as `"p/q"`; polynomials as `"p/q"` arrays, lowest degree first.
impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Scalar(r) => serializer.serialize_str(&format_pq(r)),
            Value::Poly(p) => {
                let mut seq = serializer.serialize_seq(Some(p.coeffs().len()))?;
                for c in p.coeffs() {
                    seq.serialize_element(&format_pq(c))?;
                }
                seq.end()
            }
        }
    }
}

pub type Params = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub params: Params,
    pub lhs: Value,
    pub rhs: Value,
}

/// Outcome of one evaluator among several competing for the same identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariantOutcome {
    pub name: String,
    pub passed: bool,
    pub grid_size: usize,
    pub failure_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub grid_size: usize,
    /// True exactly when `failures` is empty.
    pub passed: bool,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pinned_variant: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub variants: Vec<VariantOutcome>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
