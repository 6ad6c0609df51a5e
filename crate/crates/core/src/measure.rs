//! Measure domain types and the signed-to-positive transforms.
//!
//! An [`AtomicMeasure`] is a finite list of strictly positive atom
//! masses kept sorted non-increasing, plus the total mass `kappa` of a
//! nonatomic part. A [`SignedAtomicMeasure`] is purely atomic with
//! nonzero signed masses, kept in the order given. A
//! [`CandidateMeasure`] assigns a value to each atom of a reference
//! measure plus one density slope on the nonatomic part.

use num::{Signed, Zero};
use serde_json::Value;

use crate::error::Error;
use crate::rational::{parse_rational, Rational};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicMeasure {
    atoms: Vec<Rational>,
    kappa: Rational,
}

impl AtomicMeasure {
    /// Validates and sorts the atom list non-increasing. Duplicate
    /// masses stay as distinct atoms.
    pub fn new(mut atoms: Vec<Rational>, kappa: Rational) -> Result<Self> {
        for (i, a) in atoms.iter().enumerate() {
            if !a.is_positive() {
                return Err(Error::invalid_input(format!(
                    "atoms[{i}]: atom mass must be strictly positive, got {a}"
                )));
            }
        }
        if kappa.is_negative() {
            return Err(Error::invalid_input(format!(
                "kappa must be nonnegative, got {kappa}"
            )));
        }
        atoms.sort_unstable_by(|a, b| b.cmp(a));
        Ok(AtomicMeasure { atoms, kappa })
    }

    pub fn purely_atomic(atoms: Vec<Rational>) -> Result<Self> {
        AtomicMeasure::new(atoms, Rational::zero())
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn total(&self) -> Rational {
        self.atoms.iter().sum::<Rational>() + &self.kappa
    }

    /// The measure scaled by a strictly positive constant (atoms and
    /// kappa alike).
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::invalid_input(format!(
                "scale factor must be strictly positive, got {factor}"
            )));
        }
        Ok(AtomicMeasure {
            atoms: self.atoms.iter().map(|a| a * factor).collect(),
            kappa: &self.kappa * factor,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedAtomicMeasure {
    atoms: Vec<Rational>,
}

impl SignedAtomicMeasure {
    /// Keeps the atom order as given; index identity matters for the
    /// Hahn partition and for candidate alignment.
    pub fn new(atoms: Vec<Rational>) -> Result<Self> {
        for (i, a) in atoms.iter().enumerate() {
            if a.is_zero() {
                return Err(Error::invalid_input(format!(
                    "signed_atoms[{i}]: atom mass must be nonzero"
                )));
            }
        }
        Ok(SignedAtomicMeasure { atoms })
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn total_variation(&self) -> Rational {
        self.atoms.iter().map(|a| a.abs()).sum()
    }

    /// The positive (respectively negative) part as a positive measure.
    pub fn part(&self, negative: bool) -> AtomicMeasure {
        let masses = self
            .atoms
            .iter()
            .filter(|a| a.is_negative() == negative)
            .map(|a| a.abs())
            .collect();
        AtomicMeasure::purely_atomic(masses).expect("nonzero masses stay positive")
    }
}

/// Values of a candidate measure on the atoms of a reference measure,
/// plus the constant density of the candidate on the nonatomic part.
/// The slope is meaningless (and ignored) when the reference has
/// `kappa = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateMeasure {
    pub atom_values: Vec<Rational>,
    pub continuous_slope: Rational,
}

impl CandidateMeasure {
    pub fn new(atom_values: Vec<Rational>, continuous_slope: Rational) -> Self {
        CandidateMeasure {
            atom_values,
            continuous_slope,
        }
    }

    /// The candidate with its values negated exactly on the given
    /// indices. Applying the same index set twice gives back the
    /// original.
    pub fn negate_on(&self, indices: &[usize]) -> Result<Self> {
        let mut values = self.atom_values.clone();
        for &i in indices {
            match values.get_mut(i) {
                Some(v) => *v = -v.clone(),
                None => {
                    return Err(Error::invalid_input(format!(
                        "index {i} out of bounds for candidate of length {}",
                        self.atom_values.len()
                    )))
                }
            }
        }
        Ok(CandidateMeasure {
            atom_values: values,
            continuous_slope: self.continuous_slope.clone(),
        })
    }
}

/// Index sets of the positive and negative atoms. Together they
/// partition all indices; the type invariant excludes zero masses.
pub fn hahn_decompose(m: &SignedAtomicMeasure) -> (Vec<usize>, Vec<usize>) {
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (i, a) in m.atoms().iter().enumerate() {
        if a.is_positive() {
            positive.push(i);
        } else {
            negative.push(i);
        }
    }
    (positive, negative)
}

/// The total-variation measure: absolute masses, sorted non-increasing,
/// no nonatomic part.
pub fn absolute_measure(m: &SignedAtomicMeasure) -> AtomicMeasure {
    let masses = m.atoms().iter().map(|a| a.abs()).collect();
    AtomicMeasure::purely_atomic(masses).expect("absolute masses are positive")
}

/// Either kind of input measure, as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureInput {
    Positive(AtomicMeasure),
    Signed(SignedAtomicMeasure),
}

/// Parses the measure JSON schema:
/// `{"atoms": ["1", "5/3", ...], "kappa": "0"}` for positive measures
/// (kappa optional, default 0), or `{"signed_atoms": ["2/3", "-2/3"]}`
/// for signed ones. Errors name the offending field and position.
pub fn parse_measure_json(text: &str) -> Result<MeasureInput> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::invalid_input(format!("measure is not valid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::invalid_input("measure must be a JSON object"))?;

    let has_atoms = obj.contains_key("atoms");
    let has_signed = obj.contains_key("signed_atoms");
    match (has_atoms, has_signed) {
        (true, true) => Err(Error::invalid_input(
            "measure has both 'atoms' and 'signed_atoms'",
        )),
        (false, false) => Err(Error::invalid_input(
            "measure needs either 'atoms' or 'signed_atoms'",
        )),
        (true, false) => {
            let atoms = rational_list(&obj["atoms"], "atoms")?;
            let kappa = match obj.get("kappa") {
                Some(k) => field_rational(k, "kappa")?,
                None => Rational::zero(),
            };
            Ok(MeasureInput::Positive(AtomicMeasure::new(atoms, kappa)?))
        }
        (false, true) => {
            if obj.contains_key("kappa") {
                return Err(Error::invalid_input(
                    "signed measures carry no nonatomic part; remove 'kappa'",
                ));
            }
            let atoms = rational_list(&obj["signed_atoms"], "signed_atoms")?;
            Ok(MeasureInput::Signed(SignedAtomicMeasure::new(atoms)?))
        }
    }
}

/// Parses a candidate: `{"atoms": [...], "slope": "p/q"}` with the
/// slope optional (default 0).
pub fn parse_candidate_json(text: &str) -> Result<CandidateMeasure> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::invalid_input(format!("candidate is not valid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::invalid_input("candidate must be a JSON object"))?;
    let atoms = rational_list(
        obj.get("atoms")
            .ok_or_else(|| Error::invalid_input("candidate needs 'atoms'"))?,
        "atoms",
    )?;
    let slope = match obj.get("slope") {
        Some(s) => field_rational(s, "slope")?,
        None => Rational::zero(),
    };
    Ok(CandidateMeasure::new(atoms, slope))
}

fn rational_list(value: &Value, field: &str) -> Result<Vec<Rational>> {
    let items = value
        .as_array()
        .ok_or_else(|| Error::invalid_input(format!("'{field}' must be an array of strings")))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let text = item.as_str().ok_or_else(|| {
                Error::invalid_input(format!("{field}[{i}]: expected a rational string"))
            })?;
            parse_rational(text)
                .map_err(|e| Error::invalid_input(format!("{field}[{i}]: {e}")))
        })
        .collect()
}

fn field_rational(value: &Value, field: &str) -> Result<Rational> {
    let text = value
        .as_str()
        .ok_or_else(|| Error::invalid_input(format!("'{field}' must be a rational string")))?;
    parse_rational(text).map_err(|e| Error::invalid_input(format!("{field}: {e}")))
}
