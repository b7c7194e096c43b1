use serde::Serialize;
use serde_json::{json, Value};

/// One verified statement: what was checked, with which parameters, and the outcome.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckResult {
    pub check: String,
    pub params: Value,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl CheckResult {
    /// Passes when `expected == actual`.
    pub fn compare<E: Serialize, A: Serialize>(
        check: impl Into<String>,
        params: Value,
        expected: E,
        actual: A,
    ) -> Self {
        let expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        let actual = serde_json::to_value(actual).unwrap_or(Value::Null);
        let pass = expected == actual;
        CheckResult {
            check: check.into(),
            params,
            expected,
            actual,
            pass,
        }
    }

    /// A boolean invariant.
    pub fn holds(check: impl Into<String>, params: Value, ok: bool) -> Self {
        Self::compare(check, params, true, ok)
    }

    /// A check that could not run; always fails and carries the error text.
    pub fn error(check: impl Into<String>, params: Value, err: impl std::fmt::Display) -> Self {
        CheckResult {
            check: check.into(),
            params,
            expected: json!("no error"),
            actual: json!(err.to_string()),
            pass: false,
        }
    }
}

pub fn all_pass(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.pass)
}
