//! Analysis reports with a stable, deterministic JSON form.
//!
//! Every rational is serialized as its `"p/q"` string; all lists are
//! deterministically ordered, so serialized reports are byte-stable
//! across runs. Wall-clock timing is carried in memory for human
//! output but never serialized.

use num::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, LevelViolation};
use crate::measure::{
    absolute_measure, hahn_decompose, AtomicMeasure, CandidateMeasure, MeasureInput,
};
use crate::range::{bullies, range_scan, signed_range_scan};
use crate::rational::Rational;
use crate::relations::{
    augmented_relation_basis, enumerate_relations, kappa_relations, relation_basis,
    resolved_strategy,
};
use crate::uniqueness::{
    check_l_exhaustive, check_l_report, check_o_report, decide_l_unique,
    decide_l_unique_exhaustive, CheckOutcome, UniquenessCertificate, Verdict,
};
use crate::{EnumerationConfig, Result};

const SIGNED_NOTE: &str = "signed input analyzed through its total-variation measure; \
the verdict covers the listed atoms only";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub range: RangeSummary,
    pub certificate: CertificateReport,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    pub meta: Meta,
    #[serde(skip)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signed_atoms: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hahn_positive: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hahn_negative: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Range section of a report. `points` (and, with a nonatomic part,
/// `intervals`) are omitted when the scan exceeds the collection cap;
/// the counts are always present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeSummary {
    pub total: String,
    pub point_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Vec<[String; 2]>>,
    pub is_arithmetic_progression: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bullies: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_bullies: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bullies_positive_part: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bullies_negative_part: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub verdict: String,
    pub criterion: String,
    pub rank: usize,
    pub required_rank: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_defects: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_positive: Option<bool>,
    #[serde(
        rename = "witness_satisfies_O",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub witness_satisfies_o: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub atoms: Vec<String>,
    pub slope: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub mode: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<LevelViolation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub strategy: String,
    pub max_atoms: usize,
    pub oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeReport {
    pub input: InputEcho,
    pub range: RangeSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BulliesReport {
    pub input: InputEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<String>,
    pub atoms: Vec<String>,
    pub bullies: Vec<usize>,
    pub no_bullies: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationsReport {
    pub input: InputEcho,
    pub count: usize,
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defects: Option<Vec<String>>,
    pub basis: BasisReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub rank: usize,
    pub vectors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckDocument {
    pub input: InputEcho,
    pub candidate: WitnessReport,
    pub check: CheckReport,
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    pub config: EnumerationConfig,
    pub oracle: bool,
    pub candidate: Option<CandidateMeasure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Level,
    Order,
}

impl CheckMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckMode::Level => "L",
            CheckMode::Order => "O",
        }
    }
}

impl std::str::FromStr for CheckMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(CheckMode::Level),
            "O" | "o" => Ok(CheckMode::Order),
            other => Err(Error::invalid_input(format!(
                "unknown check mode '{other}' (expected L or O)"
            ))),
        }
    }
}

/// Which part of a signed measure a bully query addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Abs,
    Positive,
    Negative,
}

impl Part {
    pub fn as_str(self) -> &'static str {
        match self {
            Part::Abs => "abs",
            Part::Positive => "positive",
            Part::Negative => "negative",
        }
    }
}

impl std::str::FromStr for Part {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abs" => Ok(Part::Abs),
            "positive" => Ok(Part::Positive),
            "negative" => Ok(Part::Negative),
            other => Err(Error::invalid_input(format!(
                "unknown part '{other}' (expected abs, positive, or negative)"
            ))),
        }
    }
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn input_echo(input: &MeasureInput) -> InputEcho {
    match input {
        MeasureInput::Positive(m) => InputEcho {
            kind: "positive".into(),
            atoms: Some(strings(m.atoms())),
            kappa: Some(m.kappa().to_string()),
            signed_atoms: None,
            hahn_positive: None,
            hahn_negative: None,
            note: None,
        },
        MeasureInput::Signed(m) => {
            let (pos, neg) = hahn_decompose(m);
            InputEcho {
                kind: "signed".into(),
                atoms: None,
                kappa: None,
                signed_atoms: Some(strings(m.atoms())),
                hahn_positive: Some(pos),
                hahn_negative: Some(neg),
                note: Some(SIGNED_NOTE.into()),
            }
        }
    }
}

fn range_summary(input: &MeasureInput, cfg: &EnumerationConfig) -> Result<RangeSummary> {
    match input {
        MeasureInput::Positive(m) => {
            let scan = range_scan(m, cfg)?;
            let bully_list = bullies(m);
            let with_kappa = m.kappa().is_positive();
            Ok(RangeSummary {
                total: m.total().to_string(),
                point_count: scan.sum_count,
                points: scan.sums.as_deref().map(strings),
                interval_count: with_kappa.then_some(scan.interval_count),
                intervals: if with_kappa {
                    scan.intervals.map(|list| {
                        list.iter()
                            .map(|(lo, hi)| [lo.to_string(), hi.to_string()])
                            .collect()
                    })
                } else {
                    None
                },
                is_arithmetic_progression: scan.is_arithmetic_progression,
                no_bullies: Some(bully_list.is_empty()),
                bullies: Some(bully_list),
                bullies_positive_part: None,
                bullies_negative_part: None,
            })
        }
        MeasureInput::Signed(m) => {
            let scan = signed_range_scan(m, cfg)?;
            Ok(RangeSummary {
                total: m.total_variation().to_string(),
                point_count: scan.sum_count,
                points: scan.sums.as_deref().map(strings),
                interval_count: None,
                intervals: None,
                is_arithmetic_progression: scan.is_arithmetic_progression,
                bullies: None,
                no_bullies: None,
                bullies_positive_part: Some(bullies(&m.part(false))),
                bullies_negative_part: Some(bullies(&m.part(true))),
            })
        }
    }
}

fn certificate_report(cert: &UniquenessCertificate) -> CertificateReport {
    CertificateReport {
        verdict: match cert.verdict {
            Verdict::Unique => "unique".into(),
            Verdict::NonUnique => "non_unique".into(),
        },
        criterion: cert.criterion.as_str().into(),
        rank: cert.rank,
        required_rank: cert.required_rank,
        basis: cert.basis.vectors.iter().map(|v| v.to_string()).collect(),
        basis_defects: cert.basis.defects.as_ref().map(|d| strings(d)),
        witness: cert.witness.as_ref().map(|w| WitnessReport {
            atoms: strings(&w.atom_values),
            slope: w.continuous_slope.to_string(),
        }),
        witness_positive: cert.witness_positive,
        witness_satisfies_o: cert.witness_satisfies_o,
    }
}

fn check_report_from(outcome: CheckOutcome, mode: CheckMode) -> CheckReport {
    CheckReport {
        mode: mode.as_str().into(),
        holds: outcome.holds,
        violation: outcome.violation,
    }
}

/// The positive measure a decision runs on: the measure itself, or the
/// total-variation measure of a signed input.
pub fn decision_measure(input: &MeasureInput) -> AtomicMeasure {
    match input {
        MeasureInput::Positive(m) => m.clone(),
        MeasureInput::Signed(m) => absolute_measure(m),
    }
}

/// Full analysis: range, bully, and uniqueness sections plus optional
/// candidate checks. With `oracle` set, everything is recomputed along
/// the brute-force paths and any disagreement is an internal error.
pub fn analyze(input: &MeasureInput, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let m = decision_measure(input);
    let cert = decide_l_unique(&m, &opts.config)?;
    let certificate = certificate_report(&cert);

    if opts.oracle {
        let oracle_cert = certificate_report(&decide_l_unique_exhaustive(&m)?);
        if oracle_cert != certificate {
            return Err(Error::internal(
                "oracle disagreement: brute-force certificate differs from the fast path",
            ));
        }
    }

    let mut checks = Vec::new();
    if let Some(candidate) = &opts.candidate {
        let l = check_l_report(&m, candidate, &opts.config)?;
        if opts.oracle && !m.kappa().is_positive() {
            let exhaustive = check_l_exhaustive(&m, candidate)?;
            if exhaustive.holds != l.holds {
                return Err(Error::internal(
                    "oracle disagreement: exhaustive level check differs from the fast path",
                ));
            }
        }
        checks.push(check_report_from(l, CheckMode::Level));
        if !m.kappa().is_positive() && m.atom_count() <= crate::BRUTE_FORCE_MAX {
            let o = check_o_report(&m, candidate, &opts.config)?;
            checks.push(check_report_from(o, CheckMode::Order));
        }
    }

    Ok(AnalysisReport {
        input: input_echo(input),
        range: range_summary(input, &opts.config)?,
        certificate,
        checks,
        meta: Meta {
            strategy: resolved_strategy(&opts.config, m.atom_count())
                .as_str()
                .into(),
            max_atoms: opts.config.max_atoms,
            oracle: opts.oracle,
        },
        elapsed_ms: None,
    })
}

pub fn range_report(input: &MeasureInput, cfg: &EnumerationConfig) -> Result<RangeReport> {
    Ok(RangeReport {
        input: input_echo(input),
        range: range_summary(input, cfg)?,
    })
}

pub fn bullies_report(input: &MeasureInput, part: Option<Part>) -> Result<BulliesReport> {
    let (measure, part_name) = match (input, part) {
        (MeasureInput::Positive(m), None | Some(Part::Abs)) => (m.clone(), None),
        (MeasureInput::Positive(_), Some(p)) => {
            return Err(Error::invalid_input(format!(
                "part '{}' only applies to signed measures",
                p.as_str()
            )))
        }
        (MeasureInput::Signed(m), None | Some(Part::Abs)) => {
            (absolute_measure(m), Some(Part::Abs))
        }
        (MeasureInput::Signed(m), Some(Part::Positive)) => (m.part(false), Some(Part::Positive)),
        (MeasureInput::Signed(m), Some(Part::Negative)) => (m.part(true), Some(Part::Negative)),
    };
    let bully_list = bullies(&measure);
    Ok(BulliesReport {
        input: input_echo(input),
        part: part_name.map(|p| p.as_str().into()),
        atoms: strings(measure.atoms()),
        no_bullies: bully_list.is_empty(),
        bullies: bully_list,
    })
}

pub fn relations_report(
    input: &MeasureInput,
    cfg: &EnumerationConfig,
) -> Result<RelationsReport> {
    let m = decision_measure(input);
    if m.kappa().is_positive() {
        let rels = kappa_relations(m.atoms(), m.kappa(), cfg)?;
        let basis = augmented_relation_basis(&rels);
        Ok(RelationsReport {
            input: input_echo(input),
            count: rels.len(),
            relations: rels.iter().map(|r| r.sign.to_string()).collect(),
            defects: Some(rels.iter().map(|r| r.defect.to_string()).collect()),
            basis: BasisReport {
                rank: basis.rank,
                vectors: basis.vectors.iter().map(|v| v.to_string()).collect(),
            },
        })
    } else {
        let rels = enumerate_relations(m.atoms(), cfg)?;
        let basis = relation_basis(&rels);
        Ok(RelationsReport {
            input: input_echo(input),
            count: rels.len(),
            relations: rels.iter().map(|v| v.to_string()).collect(),
            defects: None,
            basis: BasisReport {
                rank: basis.rank,
                vectors: basis.vectors.iter().map(|v| v.to_string()).collect(),
            },
        })
    }
}

/// Checks a candidate against a measure. Signed inputs route through
/// the Hahn partition first: the candidate's values are negated on the
/// negative atoms and checked against the total-variation measure.
pub fn check_document(
    input: &MeasureInput,
    candidate: &CandidateMeasure,
    mode: CheckMode,
    opts: &AnalysisOptions,
) -> Result<CheckDocument> {
    let (m, effective) = match input {
        MeasureInput::Positive(m) => (m.clone(), candidate.clone()),
        MeasureInput::Signed(s) => {
            let (_, neg) = hahn_decompose(s);
            let transformed = candidate.negate_on(&neg)?;
            // Candidate values follow the signed input's order; the
            // total-variation measure is sorted, so realign.
            let abs = absolute_measure(s);
            let mut paired: Vec<(Rational, Rational)> = s
                .atoms()
                .iter()
                .map(|a| a.abs())
                .zip(transformed.atom_values.iter().cloned())
                .collect();
            paired.sort_by(|a, b| b.0.cmp(&a.0));
            let realigned: Vec<Rational> = paired.into_iter().map(|(_, v)| v).collect();
            (
                abs,
                CandidateMeasure::new(realigned, transformed.continuous_slope),
            )
        }
    };
    let outcome = match mode {
        CheckMode::Level => {
            let fast = check_l_report(&m, &effective, &opts.config)?;
            if opts.oracle && !m.kappa().is_positive() {
                let exhaustive = check_l_exhaustive(&m, &effective)?;
                if exhaustive.holds != fast.holds {
                    return Err(Error::internal(
                        "oracle disagreement: exhaustive level check differs from the fast path",
                    ));
                }
            }
            fast
        }
        CheckMode::Order => check_o_report(&m, &effective, &opts.config)?,
    };
    Ok(CheckDocument {
        input: input_echo(input),
        candidate: WitnessReport {
            atoms: strings(&candidate.atom_values),
            slope: candidate.continuous_slope.to_string(),
        },
        check: check_report_from(outcome, mode),
    })
}
