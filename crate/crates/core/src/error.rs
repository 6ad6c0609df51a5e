//! Error type shared across the crate.

use serde::{Deserialize, Serialize};

use crate::rational::{rat_str, Rational};

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit exceeded: {what} needs n = {n} but the configured bound is {limit}")]
    ResourceLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("masses sum to {available}, which does not exceed the target {target}")]
    InsufficientMass { available: String, target: String },

    #[error("equal-measure sets get different candidate values: {0}")]
    LevelConflict(Box<LevelViolation>),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid_input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

/// A concrete pair of sets witnessing a failed comparison check.
///
/// `set_a` and `set_b` are atom index sets; `kappa_a`/`kappa_b` are the
/// masses of the nonatomic pieces adjoined to each side (zero when the
/// measure is purely atomic). For an equality failure `mu_a == mu_b`
/// with `nu_a != nu_b`; for an order failure `mu_a <= mu_b` with
/// `nu_a > nu_b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelViolation {
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
    #[serde(with = "rat_str")]
    pub kappa_a: Rational,
    #[serde(with = "rat_str")]
    pub kappa_b: Rational,
    #[serde(with = "rat_str")]
    pub mu_a: Rational,
    #[serde(with = "rat_str")]
    pub mu_b: Rational,
    #[serde(with = "rat_str")]
    pub nu_a: Rational,
    #[serde(with = "rat_str")]
    pub nu_b: Rational,
}

impl std::fmt::Display for LevelViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "atoms {:?} (+{} nonatomic) vs atoms {:?} (+{} nonatomic): mu {} vs {}, nu {} vs {}",
            self.set_a,
            self.kappa_a,
            self.set_b,
            self.kappa_b,
            self.mu_a,
            self.mu_b,
            self.nu_a,
            self.nu_b
        )
    }
}
