//! Range of a measure: subset sums, interval fusion, bully detection.
//!
//! The enumeration cores run over integer-scaled masses and stream the
//! sorted distinct sums through a single pass that counts them, checks
//! the arithmetic-progression property, and fuses the nonatomic part
//! into closed intervals. Point and interval lists are materialized
//! on demand; summaries stay cheap even when the sum set is huge.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num::bigint::BigInt;
use num::Zero;

use crate::measure::{AtomicMeasure, SignedAtomicMeasure};
use crate::rational::Rational;
use crate::scaled::{unscale, ScaledValues, SumValue};
use crate::{EnumerationConfig, Result, Strategy, DIRECT_SUMS_MAX};

/// Reports materialize point/interval lists only up to this many
/// entries; larger scans still report counts and flags.
pub const COLLECT_LIMIT: usize = 4096;

/// A finite union of disjoint closed intervals with exact endpoints,
/// sorted and merged maximally (touching intervals are fused). An
/// isolated point is a degenerate interval `lo == hi`. The range of a
/// measure always contains the point 0, the value of the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeSet {
    intervals: Vec<(Rational, Rational)>,
}

impl RangeSet {
    /// Builds the maximal merge of `[p, p + kappa]` over the given
    /// points. The points must be sorted ascending and de-duplicated.
    pub fn from_points(points: &[Rational], kappa: &Rational) -> Self {
        let mut intervals: Vec<(Rational, Rational)> = Vec::new();
        for p in points {
            let hi = p + kappa;
            match intervals.last_mut() {
                Some((_, last_hi)) if *p <= *last_hi => {
                    if hi > *last_hi {
                        *last_hi = hi;
                    }
                }
                _ => intervals.push((p.clone(), hi)),
            }
        }
        RangeSet { intervals }
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn is_single_interval(&self) -> bool {
        self.intervals.len() == 1
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo <= x && x <= hi)
    }
}

impl std::fmt::Display for RangeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (lo, hi)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            if lo == hi {
                write!(f, "{{{lo}}}")?;
            } else {
                write!(f, "[{lo}, {hi}]")?;
            }
        }
        if self.intervals.is_empty() {
            write!(f, "{{}}")?;
        }
        Ok(())
    }
}

/// Everything one pass over the sorted distinct subset sums yields:
/// the count, the arithmetic-progression flag, and the merged
/// `[s, s + kappa]` intervals. `sums` and `intervals` are present only
/// while their length stays within the collection limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeScan {
    pub sum_count: usize,
    pub sums: Option<Vec<Rational>>,
    pub is_arithmetic_progression: bool,
    pub interval_count: usize,
    pub intervals: Option<Vec<(Rational, Rational)>>,
}

/// All distinct subset sums of the atom masses, sorted ascending.
/// Always contains 0 (empty set) and the atomic total. `kappa` plays
/// no role here.
pub fn subset_sums(m: &AtomicMeasure, cfg: &EnumerationConfig) -> Result<Vec<Rational>> {
    cfg.check_limit("subset-sum enumeration", m.atom_count())?;
    Ok(scan_values(m.atoms(), &Rational::zero(), cfg, None)
        .sums
        .expect("unlimited collection"))
}

/// All distinct subset sums of the signed atom masses, sorted
/// ascending.
pub fn signed_range(m: &SignedAtomicMeasure, cfg: &EnumerationConfig) -> Result<Vec<Rational>> {
    cfg.check_limit("subset-sum enumeration", m.atom_count())?;
    Ok(scan_values(m.atoms(), &Rational::zero(), cfg, None)
        .sums
        .expect("unlimited collection"))
}

/// The range of the measure: every subset sum thickened by `[0, kappa]`
/// and merged maximally. For `kappa = 0` this is the finite set of
/// subset sums as degenerate intervals.
pub fn range(m: &AtomicMeasure, cfg: &EnumerationConfig) -> Result<RangeSet> {
    cfg.check_limit("subset-sum enumeration", m.atom_count())?;
    let scan = scan_values(m.atoms(), m.kappa(), cfg, None);
    Ok(RangeSet {
        intervals: scan.intervals.expect("unlimited collection"),
    })
}

/// Single-pass summary of the range, with lists capped at
/// [`COLLECT_LIMIT`] entries.
pub fn range_scan(m: &AtomicMeasure, cfg: &EnumerationConfig) -> Result<RangeScan> {
    cfg.check_limit("subset-sum enumeration", m.atom_count())?;
    Ok(scan_values(m.atoms(), m.kappa(), cfg, Some(COLLECT_LIMIT)))
}

/// Single-pass summary over the signed subset sums.
pub fn signed_range_scan(
    m: &SignedAtomicMeasure,
    cfg: &EnumerationConfig,
) -> Result<RangeScan> {
    cfg.check_limit("subset-sum enumeration", m.atom_count())?;
    Ok(scan_values(m.atoms(), &Rational::zero(), cfg, Some(COLLECT_LIMIT)))
}

/// Indices of the bully atoms. An atom is a bully when its mass
/// strictly exceeds everything assemblable from strictly smaller
/// pieces: `kappa` (splittable arbitrarily fine) plus the sum of all
/// strictly smaller atoms. Atoms of equal mass do not count toward
/// each other's budget; in particular the smallest atom of a nonempty
/// purely atomic measure is always a bully.
pub fn bullies(m: &AtomicMeasure) -> Vec<usize> {
    let atoms = m.atoms();
    let n = atoms.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && atoms[j] == atoms[i] {
            j += 1;
        }
        let smaller: Rational = m.kappa() + atoms[j..].iter().sum::<Rational>();
        if smaller < atoms[i] {
            out.extend(i..j);
        }
        i = j;
    }
    out
}

/// Whether the measure passes the no-bullies criterion, equivalently
/// whether each atom is covered by `kappa` plus its strictly smaller
/// peers. For `kappa > 0` this is exactly "the range is the single
/// interval `[0, total]`"; for `kappa = 0` the range of a nonempty
/// atom list is a finite point set and never a literal interval, so
/// reports surface both facts side by side.
pub fn is_interval(m: &AtomicMeasure) -> bool {
    bullies(m).is_empty()
}

/// Whether consecutive differences of the (sorted, strictly
/// increasing) points are all equal. Fewer than three points always
/// qualify.
pub fn is_arithmetic_progression(points: &[Rational]) -> bool {
    if points.len() <= 2 {
        return true;
    }
    let step = &points[1] - &points[0];
    points.windows(2).all(|w| &w[1] - &w[0] == step)
}

fn scan_values(
    values: &[Rational],
    kappa: &Rational,
    cfg: &EnumerationConfig,
    limit: Option<usize>,
) -> RangeScan {
    let direct = match cfg.strategy {
        Strategy::Direct => true,
        Strategy::MeetInMiddle => false,
        Strategy::Auto => values.len() <= DIRECT_SUMS_MAX,
    };
    match ScaledValues::new(values, kappa) {
        ScaledValues::Small {
            values,
            extra,
            denom,
        } => scan_scaled(&values, &extra, &denom, direct, limit),
        ScaledValues::Big {
            values,
            extra,
            denom,
        } => scan_scaled(&values, &extra, &denom, direct, limit),
    }
}

struct ScanState<T: SumValue> {
    denom: BigInt,
    kappa: T,
    limit: Option<usize>,
    sum_count: usize,
    sums: Option<Vec<T>>,
    prev: Option<T>,
    step: Option<T>,
    is_ap: bool,
    interval_count: usize,
    intervals: Option<Vec<(T, T)>>,
    current: Option<(T, T)>,
}

impl<T: SumValue> ScanState<T> {
    fn new(denom: BigInt, kappa: T, limit: Option<usize>) -> Self {
        ScanState {
            denom,
            kappa,
            limit,
            sum_count: 0,
            sums: Some(Vec::new()),
            prev: None,
            step: None,
            is_ap: true,
            interval_count: 0,
            intervals: Some(Vec::new()),
            current: None,
        }
    }

    /// Feeds the next sum; the caller guarantees ascending distinct
    /// order.
    fn visit(&mut self, s: T) {
        if let Some(prev) = &self.prev {
            debug_assert!(*prev < s);
            if self.is_ap {
                let mut diff = s.clone();
                diff.sub_ref(prev);
                match &self.step {
                    None => self.step = Some(diff),
                    Some(step) if *step != diff => self.is_ap = false,
                    _ => {}
                }
            }
        }
        self.sum_count += 1;
        if let Some(sums) = &mut self.sums {
            if self.limit.is_some_and(|l| sums.len() >= l) {
                self.sums = None;
            } else {
                sums.push(s.clone());
            }
        }

        let mut hi = s.clone();
        hi.add_ref(&self.kappa);
        match &mut self.current {
            Some((_, cur_hi)) if s <= *cur_hi => {
                if hi > *cur_hi {
                    *cur_hi = hi;
                }
            }
            _ => {
                if let Some(open) = self.current.take() {
                    self.emit_interval(open);
                }
                self.current = Some((s.clone(), hi));
            }
        }
        self.prev = Some(s);
    }

    fn emit_interval(&mut self, interval: (T, T)) {
        self.interval_count += 1;
        if let Some(intervals) = &mut self.intervals {
            if self.limit.is_some_and(|l| intervals.len() >= l) {
                self.intervals = None;
            } else {
                intervals.push(interval);
            }
        }
    }

    fn finish(mut self) -> RangeScan {
        if let Some(open) = self.current.take() {
            self.emit_interval(open);
        }
        let denom = self.denom;
        RangeScan {
            sum_count: self.sum_count,
            sums: self
                .sums
                .map(|v| v.iter().map(|s| unscale(s, &denom)).collect()),
            is_arithmetic_progression: self.is_ap,
            interval_count: self.interval_count,
            intervals: self.intervals.map(|v| {
                v.iter()
                    .map(|(lo, hi)| (unscale(lo, &denom), unscale(hi, &denom)))
                    .collect()
            }),
        }
    }
}

fn scan_scaled<T: SumValue>(
    values: &[T],
    kappa: &T,
    denom: &BigInt,
    direct: bool,
    limit: Option<usize>,
) -> RangeScan {
    let mut state = ScanState::new(denom.clone(), kappa.clone(), limit);
    if direct || values.len() < 2 {
        for s in sums_direct(values) {
            state.visit(s);
        }
    } else {
        // Asymmetric split: the materialized right part is capped at
        // 2^DIRECT_SUMS_MAX sums, the small left part only sizes the
        // merge heap.
        let split = values.len().saturating_sub(DIRECT_SUMS_MAX).max(1);
        let (left, right) = values.split_at(split);
        stream_pair_sums(&sums_direct(left), &sums_direct(right), |s| {
            state.visit(s)
        });
    }
    state.finish()
}

/// Sorted distinct sums by doubling: fold each value into the sum list
/// with a sorted merge.
fn sums_direct<T: SumValue>(values: &[T]) -> Vec<T> {
    let mut sums = vec![T::zero()];
    for v in values {
        let shifted: Vec<T> = sums
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.add_ref(v);
                t
            })
            .collect();
        sums = merge_sorted(&sums, &shifted);
    }
    sums
}

fn merge_sorted<T: SumValue>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = if j >= b.len() || (i < a.len() && a[i] <= b[j]) {
            let v = a[i].clone();
            i += 1;
            v
        } else {
            let v = b[j].clone();
            j += 1;
            v
        };
        if out.last() != Some(&next) {
            out.push(next);
        }
    }
    out
}

/// Streams the sorted distinct pairwise sums of two sorted distinct
/// lists through a heap holding one cursor per left element.
fn stream_pair_sums<T: SumValue>(left: &[T], right: &[T], mut visit: impl FnMut(T)) {
    let mut heap: BinaryHeap<Reverse<(T, usize, usize)>> = left
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let mut s = l.clone();
            s.add_ref(&right[0]);
            Reverse((s, i, 0))
        })
        .collect();
    let mut last: Option<T> = None;
    while let Some(Reverse((sum, i, j))) = heap.pop() {
        if last.as_ref() != Some(&sum) {
            last = Some(sum.clone());
            visit(sum);
        }
        if j + 1 < right.len() {
            let mut s = left[i].clone();
            s.add_ref(&right[j + 1]);
            heap.push(Reverse((s, i, j + 1)));
        }
    }
}
