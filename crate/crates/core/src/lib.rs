//! Exact-arithmetic analysis of finite atomic measures.
//!
//! Given a finite positive measure (atom masses plus the total mass of
//! a nonatomic part) or a finite signed atomic measure, this crate
//! computes, with arbitrary-precision rational arithmetic throughout:
//!
//! * the range of the measure (subset sums, fused into closed
//!   intervals by the nonatomic part),
//! * the bully atoms (atoms too heavy to be matched by any assembly of
//!   strictly smaller pieces, which punch gaps into the range),
//! * the set of `{-1, 0, +1}` relations among the atom masses, its
//!   exact rank, and a certificate deciding whether the measure is
//!   uniquely determined by its level sets — either a spanning
//!   relation basis or an explicit counterexample measure,
//! * checks of the level-set conditions for a supplied candidate
//!   measure, with a concrete violating pair of sets on failure.
//!
//! The `levelset` binary exposes all of this as a CLI with JSON
//! reports; the companion FFI crate exports the same analyses over a C
//! ABI.

pub mod constructions;
pub mod error;
pub mod linalg;
pub mod measure;
pub mod range;
pub mod rational;
pub mod relations;
pub mod report;
pub(crate) mod scaled;
pub mod uniqueness;

pub use error::Error;
pub use rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on the number of atoms an enumeration will touch.
pub const DEFAULT_MAX_ATOMS: usize = 30;
/// Largest n routed to the direct 3^n relation scan under `Auto`.
pub const DIRECT_RELATIONS_MAX: usize = 16;
/// Largest n routed to the direct 2^n subset-sum walk under `Auto`.
pub const DIRECT_SUMS_MAX: usize = 20;
/// Hard cap for the brute-force oracles (3^n relation scan, 2^n
/// level-function table).
pub const BRUTE_FORCE_MAX: usize = 14;

/// How the exponential enumerations are carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Pick per size: direct scan for small n, meet-in-the-middle above.
    #[default]
    Auto,
    /// Single scan over the full space.
    Direct,
    /// Split the indices in half, enumerate partial sums per half, and
    /// join on matching sums.
    MeetInMiddle,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Direct => "direct",
            Strategy::MeetInMiddle => "mitm",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "direct" => Ok(Strategy::Direct),
            "mitm" => Ok(Strategy::MeetInMiddle),
            other => Err(Error::invalid_input(format!(
                "unknown strategy '{other}' (expected auto, direct, or mitm)"
            ))),
        }
    }
}

/// Limits and strategy selection for the enumeration cores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_atoms: usize,
    pub strategy: Strategy,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_atoms: DEFAULT_MAX_ATOMS,
            strategy: Strategy::Auto,
        }
    }
}

impl EnumerationConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        EnumerationConfig {
            strategy,
            ..EnumerationConfig::default()
        }
    }

    pub(crate) fn check_limit(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.max_atoms {
            return Err(Error::ResourceLimit {
                what,
                n,
                limit: self.max_atoms,
            });
        }
        Ok(())
    }
}
