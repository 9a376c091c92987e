//! Verification records shared by every checking routine.

use std::fmt::Display;

/// Outcome of one verification: both sides are kept as display strings so
/// reports can show them regardless of their type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub m: Option<u64>,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl CheckRecord {
    /// Record comparing `expected` and `computed` for equality.
    pub fn new<T: PartialEq + Display>(
        name: &str,
        m: Option<u64>,
        inputs: impl Into<String>,
        expected: &T,
        computed: &T,
    ) -> Self {
        CheckRecord {
            name: name.to_string(),
            m,
            inputs: inputs.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass: expected == computed,
        }
    }

    /// Record with an externally decided pass flag.
    pub fn with_flag(
        name: &str,
        m: Option<u64>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        pass: bool,
    ) -> Self {
        CheckRecord {
            name: name.to_string(),
            m,
            inputs: inputs.into(),
            expected: expected.into(),
            computed: computed.into(),
            pass,
        }
    }

    /// Failed record describing an error raised while computing.
    pub fn error(name: &str, m: Option<u64>, inputs: impl Into<String>, err: &dyn Display) -> Self {
        CheckRecord::with_flag(name, m, inputs, "no error", format!("error: {err}"), false)
    }
}

/// Conjunction of all pass flags.
pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.pass)
}
