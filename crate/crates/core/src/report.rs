//! Outcome of a single verification, with a JSON witness.

use serde::Serialize;
use serde_json::Value;

/// Result of one `verify_*` call.
///
/// A failed outcome always carries a concrete counterexample in `witness`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    /// One-line statement of the identity being checked.
    pub statement: String,
    pub parameters: Value,
    pub passed: bool,
    /// False when the inputs violate the statement's hypothesis, so a failure is expected.
    pub hypothesis_holds: bool,
    pub witness: Value,
}

impl CheckOutcome {
    pub fn new(check: &str, statement: &str, parameters: Value, passed: bool, witness: Value) -> Self {
        CheckOutcome {
            check: check.to_string(),
            statement: statement.to_string(),
            parameters,
            passed,
            hypothesis_holds: true,
            witness,
        }
    }

    pub fn with_hypothesis(mut self, holds: bool) -> Self {
        self.hypothesis_holds = holds;
        self
    }
}

/// JSON form of an integer: a number when it fits in `i64`, a decimal string otherwise.
pub fn bigint_json(n: &num_bigint::BigInt) -> Value {
    use num_traits::ToPrimitive;
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

pub(crate) fn serialize_bigints<S: serde::Serializer>(v: &[num_bigint::BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        seq.serialize_element(&bigint_json(n))?;
    }
    seq.end()
}
