//! Measure generators: the built-in regression fixtures, geometric
//! and alternating-sign families, and the dyadic block extraction that
//! carves an interval-range sub-measure out of a divergent mass list.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::Error;
use crate::measure::{AtomicMeasure, SignedAtomicMeasure};
use crate::rational::Rational;
use crate::Result;

/// Atoms `r, r^2, ..., r^count` for a ratio strictly between 0 and 1,
/// purely atomic. With `r < 1/2` every atom outweighs its whole tail,
/// so all of them are bullies and the relation set is empty.
pub fn geometric(ratio: &Rational, count: usize) -> Result<AtomicMeasure> {
    if !ratio.is_positive() || *ratio >= Rational::one() {
        return Err(Error::invalid_input(format!(
            "ratio must lie strictly between 0 and 1, got {ratio}"
        )));
    }
    if count == 0 {
        return Err(Error::invalid_input("count must be at least 1"));
    }
    let mut atoms = Vec::with_capacity(count);
    let mut power = ratio.clone();
    for _ in 0..count {
        atoms.push(power.clone());
        power *= ratio;
    }
    AtomicMeasure::purely_atomic(atoms)
}

/// The alternating-sign measure with atom pairs `2/3^k, -2/3^k` for
/// `k = 1..=depth`. Its positive and negative parts both have the
/// depth-`depth` Cantor endpoints as subset sums, and the signed sums
/// tile a uniform grid of spacing `2/3^depth`.
pub fn cantor_signed(depth: usize) -> Result<SignedAtomicMeasure> {
    if depth == 0 {
        return Err(Error::invalid_input("depth must be at least 1"));
    }
    let third = Rational::new(BigInt::one(), BigInt::from(3));
    let two = Rational::from(BigInt::from(2));
    let mut atoms = Vec::with_capacity(2 * depth);
    let mut power = third.clone();
    for _ in 0..depth {
        let mass = &two * &power;
        atoms.push(mass.clone());
        atoms.push(-mass);
        power *= &third;
    }
    SignedAtomicMeasure::new(atoms)
}

/// Identifiers of the built-in regression fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleId {
    Ex1,
    Ex2Mu,
    Ex2MuPrime,
    Ex3Mu,
    Ex3MuPrime,
    Ex4 { depth: usize },
}

impl ExampleId {
    pub const NAMES: &'static str = "ex1, ex2-mu, ex2-mu-prime, ex3-mu, ex3-mu-prime, ex4:<depth>";
}

impl std::str::FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ex1" => Ok(ExampleId::Ex1),
            "ex2-mu" => Ok(ExampleId::Ex2Mu),
            "ex2-mu-prime" => Ok(ExampleId::Ex2MuPrime),
            "ex3-mu" => Ok(ExampleId::Ex3Mu),
            "ex3-mu-prime" => Ok(ExampleId::Ex3MuPrime),
            other => {
                if let Some(d) = other.strip_prefix("ex4:") {
                    let depth: usize = d.parse().map_err(|_| {
                        Error::invalid_input(format!("bad depth in '{other}'"))
                    })?;
                    if depth == 0 {
                        return Err(Error::invalid_input("ex4 depth must be at least 1"));
                    }
                    Ok(ExampleId::Ex4 { depth })
                } else {
                    Err(Error::invalid_input(format!(
                        "unknown example '{other}' (expected one of {})",
                        ExampleId::NAMES
                    )))
                }
            }
        }
    }
}

impl std::fmt::Display for ExampleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExampleId::Ex1 => write!(f, "ex1"),
            ExampleId::Ex2Mu => write!(f, "ex2-mu"),
            ExampleId::Ex2MuPrime => write!(f, "ex2-mu-prime"),
            ExampleId::Ex3Mu => write!(f, "ex3-mu"),
            ExampleId::Ex3MuPrime => write!(f, "ex3-mu-prime"),
            ExampleId::Ex4 { depth } => write!(f, "ex4:{depth}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExampleMeasure {
    Positive(AtomicMeasure),
    Signed(SignedAtomicMeasure),
}

/// The fixture measures used throughout the regression suite.
pub fn builtin_example(id: ExampleId) -> ExampleMeasure {
    let ints = |values: &[i64], kappa: i64| {
        AtomicMeasure::new(
            values.iter().map(|&v| Rational::from(BigInt::from(v))).collect(),
            Rational::from(BigInt::from(kappa)),
        )
        .expect("fixture masses are valid")
    };
    match id {
        ExampleId::Ex1 => ExampleMeasure::Positive(ints(&[1, 2, 5, 6, 7, 8, 9, 10, 11], 0)),
        ExampleId::Ex2Mu => ExampleMeasure::Positive(ints(&[1, 2, 2, 2, 5], 0)),
        ExampleId::Ex2MuPrime => ExampleMeasure::Positive(ints(&[1, 2, 4, 5], 0)),
        ExampleId::Ex3Mu => ExampleMeasure::Positive(ints(&[2, 2, 2, 5], 1)),
        ExampleId::Ex3MuPrime => ExampleMeasure::Positive(ints(&[2, 4, 5], 1)),
        ExampleId::Ex4 { depth } => {
            ExampleMeasure::Signed(cantor_signed(depth).expect("depth validated"))
        }
    }
}

/// Blocks of indices extracted from a non-increasing mass list: a
/// leading block whose sum first exceeds the target, then for
/// `j = 1, 2, ...` a block of masses at most `2^-j` whose sum lands in
/// `[2^-j, (4/3) * 2^-j]`. Every index of a later block exceeds every
/// index of an earlier one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSelection {
    pub blocks: Vec<Vec<usize>>,
    pub masses: Vec<Rational>,
}

impl BlockSelection {
    pub fn block_sum(&self, j: usize) -> Rational {
        self.blocks[j]
            .iter()
            .map(|&i| self.masses[i].clone())
            .sum()
    }

    /// The selected masses of every block past the leading one, as a
    /// purely atomic measure.
    pub fn tail_measure(&self) -> AtomicMeasure {
        let masses: Vec<Rational> = self.blocks[1..]
            .iter()
            .flatten()
            .map(|&i| self.masses[i].clone())
            .collect();
        AtomicMeasure::purely_atomic(masses).expect("selected masses are positive")
    }
}

/// Greedy deterministic block extraction.
///
/// The leading block is the shortest prefix with sum strictly greater
/// than `target`. Each later block `j` skips forward to masses at most
/// `2^-j` and accumulates consecutive eligible masses; a mass that
/// would push the sum past `(4/3) * 2^-j` is skipped entirely, and the
/// block closes the moment the sum reaches `2^-j`. Skipping is what
/// keeps the upper bound: once remaining masses drop to a third of the
/// threshold, no overshoot is possible. An exhausted list discards the
/// incomplete final block and stops.
pub fn select_blocks(masses: &[Rational], target: &Rational) -> Result<BlockSelection> {
    for (i, m) in masses.iter().enumerate() {
        if !m.is_positive() {
            return Err(Error::invalid_input(format!(
                "masses[{i}] must be strictly positive"
            )));
        }
        if i > 0 && masses[i - 1] < *m {
            return Err(Error::invalid_input(format!(
                "masses must be non-increasing; masses[{}] < masses[{i}]",
                i - 1
            )));
        }
    }

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut pos = 0;

    let mut leading = Vec::new();
    let mut sum = Rational::zero();
    while sum <= *target {
        if pos == masses.len() {
            return Err(Error::InsufficientMass {
                available: sum.to_string(),
                target: target.to_string(),
            });
        }
        sum += &masses[pos];
        leading.push(pos);
        pos += 1;
    }
    blocks.push(leading);

    let four_thirds = Rational::new(BigInt::from(4), BigInt::from(3));
    let mut threshold = Rational::new(BigInt::one(), BigInt::from(2));
    let half = threshold.clone();
    'blocks: loop {
        let upper = &four_thirds * &threshold;
        while pos < masses.len() && masses[pos] > threshold {
            pos += 1;
        }
        let mut block = Vec::new();
        let mut sum = Rational::zero();
        while sum < threshold {
            if pos == masses.len() {
                break 'blocks;
            }
            let tentative = &sum + &masses[pos];
            if tentative <= upper {
                block.push(pos);
                sum = tentative;
            }
            pos += 1;
        }
        blocks.push(block);
        threshold *= &half;
    }

    Ok(BlockSelection {
        blocks,
        masses: masses.to_vec(),
    })
}
