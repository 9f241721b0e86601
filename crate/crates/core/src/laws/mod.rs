//! Replayable property suites over the whole library.
//!
//! Exhaustive parts walk every hom-set up to the given word length and circle count;
//! randomized parts draw from a ChaCha generator seeded with the suite seed. Work is
//! spread over threads but reduced in a fixed order, so the same arguments always
//! produce the same reports.

mod catalog;
pub mod random;
mod suites;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub use catalog::Catalog;

pub const DEFAULT_MAX_LEN: usize = 3;
pub const DEFAULT_MAX_CIRCLES: u64 = 1;
pub const DEFAULT_SNAKE_MAX_LEN: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteId {
    Category,
    Monoidal,
    Snake,
    Duals,
    CirclesDiagnostic,
    Inclusion,
    AppendixA,
    EvaluationFunctor,
}

impl SuiteId {
    pub const ALL: [SuiteId; 8] = [
        SuiteId::Category,
        SuiteId::Monoidal,
        SuiteId::Snake,
        SuiteId::Duals,
        SuiteId::CirclesDiagnostic,
        SuiteId::Inclusion,
        SuiteId::AppendixA,
        SuiteId::EvaluationFunctor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Category => "category",
            SuiteId::Monoidal => "monoidal",
            SuiteId::Snake => "snake",
            SuiteId::Duals => "duals",
            SuiteId::CirclesDiagnostic => "circles-diagnostic",
            SuiteId::Inclusion => "inclusion",
            SuiteId::AppendixA => "appendix-a",
            SuiteId::EvaluationFunctor => "evaluation-functor",
        }
    }

    /// Bounds used when none are given on the command line.
    pub fn default_max_len(self) -> usize {
        match self {
            SuiteId::Snake => DEFAULT_SNAKE_MAX_LEN,
            SuiteId::Inclusion => 4,
            _ => DEFAULT_MAX_LEN,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Outcome of one law on one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub suite: &'static str,
    pub law: String,
    pub instance: String,
    pub passed: bool,
    /// Diagnostic reports document known behaviour and never count as failures.
    pub diagnostic: bool,
    pub cases: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl LawReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    pub fn is_failure(&self) -> bool {
        !self.passed && !self.diagnostic
    }
}

/// Case counter that keeps the first failure it sees.
#[derive(Default)]
pub(crate) struct Tally {
    pub cases: u64,
    pub failure: Option<Value>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(counterexample());
        }
    }

    pub fn record_result(&mut self, outcome: Result<bool>, counterexample: impl FnOnce() -> Value) {
        match outcome {
            Ok(ok) => self.record(ok, counterexample),
            Err(e) => self.record(false, || {
                let mut v = counterexample();
                if let Value::Object(map) = &mut v {
                    map.insert("error".into(), Value::String(e.to_string()));
                }
                v
            }),
        }
    }

    /// Merges partial tallies; the earliest failure in slice order wins.
    pub fn merge(parts: Vec<Tally>) -> Tally {
        parts.into_iter().fold(Tally::default(), |mut acc, t| {
            acc.cases += t.cases;
            if acc.failure.is_none() {
                acc.failure = t.failure;
            }
            acc
        })
    }
}

pub(crate) struct Context {
    pub suite: SuiteId,
    pub seed: u64,
}

impl Context {
    pub fn report(&self, law: &str, instance: impl Into<String>, tally: Tally) -> LawReport {
        LawReport {
            suite: self.suite.name(),
            law: law.to_string(),
            instance: instance.into(),
            passed: tally.failure.is_none(),
            diagnostic: false,
            cases: tally.cases,
            seed: self.seed,
            counterexample: tally.failure,
        }
    }
}

/// Runs one suite. Exhaustive components use `max_len` and `max_circles`; randomized
/// components draw from `seed`.
pub fn run_suite(
    id: SuiteId,
    max_len: usize,
    max_circles: u64,
    seed: u64,
) -> Result<Vec<LawReport>> {
    let ctx = Context { suite: id, seed };
    match id {
        SuiteId::Category => suites::category(&ctx, max_len, max_circles),
        SuiteId::Monoidal => suites::monoidal(&ctx, max_len, max_circles),
        SuiteId::Snake => suites::snake(&ctx, max_len),
        SuiteId::Duals => suites::duals(&ctx, max_len, max_circles),
        SuiteId::CirclesDiagnostic => suites::circles_diagnostic(&ctx, max_len),
        SuiteId::Inclusion => suites::inclusion(&ctx, max_len),
        SuiteId::AppendixA => suites::duals_of_arrays(&ctx, max_len),
        SuiteId::EvaluationFunctor => suites::evaluation_functor(&ctx, max_len, max_circles),
    }
}

pub fn run_suite_named(
    name: &str,
    max_len: usize,
    max_circles: u64,
    seed: u64,
) -> Result<Vec<LawReport>> {
    run_suite(name.parse()?, max_len, max_circles, seed)
}
