//! Enumeration of `{-1, 0, +1}` relations among atom masses.
//!
//! A relation is a sign vector orthogonal to the mass vector; it
//! encodes a pair of disjoint atom sets with equal measure. With a
//! nonatomic part of mass `kappa`, sign vectors whose defect
//! `|<r, a>|` is at most `kappa` also induce equal-measure pairs (the
//! nonatomic part absorbs the defect), and each carries the defect
//! `t = -<r, a>` as an extra rational coordinate.
//!
//! Enumeration runs over integer-scaled masses (the atoms times the
//! lcm of their denominators), in `i128` when the sums provably fit
//! and arbitrary-precision integers otherwise. The direct path walks
//! all `3^n` sign vectors with an odometer that updates the running
//! sum incrementally; the meet-in-the-middle path enumerates the two
//! index halves separately and joins half-sums that cancel, which is
//! the crate's main performance lever. Both paths visit the canonical
//! vectors in the same lexicographic order (entries compared
//! entrywise, -1 < 0 < +1), so everything built from the stream is
//! reproducible bit for bit regardless of strategy.

use std::ops::ControlFlow;

use num::bigint::BigInt;
use num::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::linalg::{self, Echelon};
use crate::rational::Rational;
use crate::scaled::{ScaledValues, SumValue};
use crate::{EnumerationConfig, Result, Strategy, BRUTE_FORCE_MAX, DIRECT_RELATIONS_MAX};

/// A nonzero vector over `{-1, 0, +1}` in canonical orientation: the
/// first nonzero entry is `+1`. Ordering is lexicographic on the
/// entries, which is also the order both enumeration paths emit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector {
    entries: Vec<i8>,
}

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.iter().any(|&e| !(-1..=1).contains(&e)) {
            return Err(Error::invalid_input("sign vector entries must be -1, 0, or 1"));
        }
        match entries.iter().find(|&&e| e != 0) {
            None => Err(Error::invalid_input("sign vector must be nonzero")),
            Some(1) => Ok(SignVector { entries }),
            Some(_) => Err(Error::invalid_input(
                "sign vector must lead with +1 (canonical orientation)",
            )),
        }
    }

    /// Flips the orientation if needed; `None` for the zero vector.
    pub fn canonicalize(mut entries: Vec<i8>) -> Option<Self> {
        let first = entries.iter().find(|&&e| e != 0)?;
        if *first < 0 {
            for e in &mut entries {
                *e = -*e;
            }
        }
        Some(SignVector { entries })
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Indices carrying `+1`, then indices carrying `-1`.
    pub fn supports(&self) -> (Vec<usize>, Vec<usize>) {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (i, &e) in self.entries.iter().enumerate() {
            match e {
                1 => plus.push(i),
                -1 => minus.push(i),
                _ => {}
            }
        }
        (plus, minus)
    }

    pub fn dot(&self, values: &[Rational]) -> Rational {
        self.entries
            .iter()
            .zip(values)
            .filter(|(&e, _)| e != 0)
            .map(|(&e, v)| if e > 0 { v.clone() } else { -v.clone() })
            .sum()
    }

    pub fn to_rational_row(&self) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|&e| Rational::from(BigInt::from(e)))
            .collect()
    }
}

impl std::fmt::Display for SignVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &e in &self.entries {
            f.write_str(match e {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                other => Err(Error::invalid_input(format!(
                    "sign vector may only contain '+', '-', '0'; found {other:?}"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        SignVector::new(entries)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(de)?.parse().map_err(de::Error::custom)
    }
}

/// A sign vector whose defect against the mass vector is absorbed by
/// the nonatomic part: `defect = -<sign, a>` with `|defect| <= kappa`.
/// As a constraint row against the unknowns `(nu, gamma)` it reads
/// `<sign, nu> + gamma * defect = 0`; the mass vector extended by 1 is
/// always a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedRelation {
    pub sign: SignVector,
    pub defect: Rational,
}

impl AugmentedRelation {
    pub fn to_rational_row(&self) -> Vec<Rational> {
        let mut row = self.sign.to_rational_row();
        row.push(self.defect.clone());
        row
    }
}

/// A maximal independent set of relations with its exact rank.
/// `defects` is present exactly for the kappa-augmented regime and
/// runs parallel to `vectors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationBasis {
    pub vectors: Vec<SignVector>,
    pub defects: Option<Vec<Rational>>,
    pub rank: usize,
}

impl RelationBasis {
    pub fn empty(augmented: bool) -> Self {
        RelationBasis {
            vectors: Vec::new(),
            defects: augmented.then(Vec::new),
            rank: 0,
        }
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        match &self.defects {
            None => self.vectors.iter().map(|v| v.to_rational_row()).collect(),
            Some(defects) => self
                .vectors
                .iter()
                .zip(defects)
                .map(|(v, d)| {
                    let mut row = v.to_rational_row();
                    row.push(d.clone());
                    row
                })
                .collect(),
        }
    }
}

/// Every canonical sign vector orthogonal to the given masses, in
/// lexicographic order, each exactly once.
pub fn enumerate_relations(atoms: &[Rational], cfg: &EnumerationConfig) -> Result<Vec<SignVector>> {
    let mut out = Vec::new();
    stream_relations(atoms, &Rational::zero(), cfg, |sv, _| {
        out.push(sv);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Every canonical sign vector whose defect the nonatomic part can
/// absorb, with the defect attached. For `kappa = 0` this is exactly
/// [`enumerate_relations`] with zero defects.
pub fn kappa_relations(
    atoms: &[Rational],
    kappa: &Rational,
    cfg: &EnumerationConfig,
) -> Result<Vec<AugmentedRelation>> {
    if kappa.is_negative() {
        return Err(Error::invalid_input("kappa must be nonnegative"));
    }
    let mut out = Vec::new();
    stream_relations(atoms, kappa, cfg, |sign, defect| {
        out.push(AugmentedRelation { sign, defect });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Independent oracle for [`enumerate_relations`]: a depth-first walk
/// over all `3^n` sign vectors with plain rational arithmetic, no
/// scaling, no halving. Capped at n = 14.
pub fn brute_force_relations(atoms: &[Rational]) -> Result<Vec<SignVector>> {
    Ok(brute_force_with_tolerance(atoms, &Rational::zero())?
        .into_iter()
        .map(|r| r.sign)
        .collect())
}

/// Brute-force variant of [`kappa_relations`], same contract and cap.
pub fn brute_force_kappa_relations(
    atoms: &[Rational],
    kappa: &Rational,
) -> Result<Vec<AugmentedRelation>> {
    brute_force_with_tolerance(atoms, kappa)
}

fn brute_force_with_tolerance(
    atoms: &[Rational],
    tolerance: &Rational,
) -> Result<Vec<AugmentedRelation>> {
    let n = atoms.len();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::ResourceLimit {
            what: "brute-force relation scan",
            n,
            limit: BRUTE_FORCE_MAX,
        });
    }
    let mut out = Vec::new();
    let mut entries = vec![0i8; n];
    let mut sum = Rational::zero();
    descend(atoms, tolerance, &mut entries, 0, &mut sum, &mut out);
    Ok(out)
}

fn descend(
    atoms: &[Rational],
    tolerance: &Rational,
    entries: &mut Vec<i8>,
    depth: usize,
    sum: &mut Rational,
    out: &mut Vec<AugmentedRelation>,
) {
    if depth == atoms.len() {
        if sum.abs() <= *tolerance {
            if let Some(&first) = entries.iter().find(|&&e| e != 0) {
                if first > 0 {
                    out.push(AugmentedRelation {
                        sign: SignVector {
                            entries: entries.clone(),
                        },
                        defect: -sum.clone(),
                    });
                }
            }
        }
        return;
    }
    entries[depth] = -1;
    *sum -= &atoms[depth];
    descend(atoms, tolerance, entries, depth + 1, sum, out);
    entries[depth] = 0;
    *sum += &atoms[depth];
    descend(atoms, tolerance, entries, depth + 1, sum, out);
    entries[depth] = 1;
    *sum += &atoms[depth];
    descend(atoms, tolerance, entries, depth + 1, sum, out);
    *sum -= &atoms[depth];
    entries[depth] = 0;
}

/// Exact rank of a set of rational vectors (fraction-free
/// elimination). Zero for empty input; ragged lengths are rejected.
pub fn relation_rank(rows: &[Vec<Rational>]) -> Result<usize> {
    linalg::rank(rows)
}

/// The greedy maximal independent subset in the order given, with the
/// rank. Feeding the deterministic enumeration order makes the basis
/// reproducible.
pub fn relation_basis(vectors: &[SignVector]) -> RelationBasis {
    let Some(first) = vectors.first() else {
        return RelationBasis::empty(false);
    };
    let mut echelon = Echelon::new(first.len());
    let mut kept = Vec::new();
    for v in vectors {
        if echelon.insert(&v.to_rational_row()) {
            kept.push(v.clone());
        }
    }
    RelationBasis {
        rank: kept.len(),
        vectors: kept,
        defects: None,
    }
}

/// Greedy independent subset of kappa-augmented relations, rank taken
/// over the `n + 1`-wide rows.
pub fn augmented_relation_basis(relations: &[AugmentedRelation]) -> RelationBasis {
    let Some(first) = relations.first() else {
        return RelationBasis::empty(true);
    };
    let mut echelon = Echelon::new(first.sign.len() + 1);
    let mut vectors = Vec::new();
    let mut defects = Vec::new();
    for r in relations {
        if echelon.insert(&r.to_rational_row()) {
            vectors.push(r.sign.clone());
            defects.push(r.defect.clone());
        }
    }
    RelationBasis {
        rank: vectors.len(),
        vectors,
        defects: Some(defects),
    }
}

/// The strategy the enumeration will actually run for `n` atoms.
pub fn resolved_strategy(cfg: &EnumerationConfig, n: usize) -> Strategy {
    match cfg.strategy {
        Strategy::Auto => {
            if n <= DIRECT_RELATIONS_MAX {
                Strategy::Direct
            } else {
                Strategy::MeetInMiddle
            }
        }
        s => s,
    }
}

/// Streams every canonical sign vector with `|<r, a>| <= tolerance` to
/// the callback, paired with its defect `-(r . a)`, in lexicographic
/// order. Returns whether the stream ran to completion (the callback
/// can break early).
pub(crate) fn stream_relations<F>(
    atoms: &[Rational],
    tolerance: &Rational,
    cfg: &EnumerationConfig,
    f: F,
) -> Result<bool>
where
    F: FnMut(SignVector, Rational) -> ControlFlow<()>,
{
    cfg.check_limit("relation enumeration", atoms.len())?;
    let scaled = ScaledValues::new(atoms, tolerance);
    let direct = matches!(resolved_strategy(cfg, atoms.len()), Strategy::Direct)
        || atoms.len() < 2;
    match (&scaled, direct) {
        (ScaledValues::Small { values, extra, denom }, true) => {
            Ok(direct_scan(values, extra, denom, f))
        }
        (ScaledValues::Small { values, extra, denom }, false) => {
            Ok(mitm_scan(values, extra, denom, f))
        }
        (ScaledValues::Big { values, extra, denom }, true) => {
            Ok(direct_scan(values, extra, denom, f))
        }
        (ScaledValues::Big { values, extra, denom }, false) => {
            Ok(mitm_scan(values, extra, denom, f))
        }
    }
}

fn defect_of<T: SumValue>(sum: &T, denom: &BigInt) -> Rational {
    Rational::new(-sum.to_bigint(), denom.clone())
}

/// Digits run over {0, 1, 2} encoding coefficients {-1, 0, +1};
/// counting with the rightmost digit least significant visits the
/// entry vectors in lexicographic order.
fn canonical_from_digits(digits: &[u8]) -> Option<SignVector> {
    let first = digits.iter().find(|&&d| d != 1)?;
    if *first != 2 {
        return None;
    }
    Some(SignVector {
        entries: digits.iter().map(|&d| d as i8 - 1).collect(),
    })
}

fn direct_scan<T: SumValue, F>(values: &[T], tol: &T, denom: &BigInt, mut f: F) -> bool
where
    F: FnMut(SignVector, Rational) -> ControlFlow<()>,
{
    let n = values.len();
    let mut digits = vec![0u8; n];
    let mut sum = T::zero();
    for v in values {
        sum.sub_ref(v);
    }
    let neg_tol = tol.negated();
    loop {
        if sum >= neg_tol && sum <= *tol {
            if let Some(sv) = canonical_from_digits(&digits) {
                if f(sv, defect_of(&sum, denom)).is_break() {
                    return false;
                }
            }
        }
        let mut advanced = false;
        for i in (0..n).rev() {
            match digits[i] {
                0 | 1 => {
                    digits[i] += 1;
                    sum.add_ref(&values[i]);
                    advanced = true;
                    break;
                }
                _ => {
                    digits[i] = 0;
                    sum.sub_ref(&values[i]);
                    sum.sub_ref(&values[i]);
                }
            }
        }
        if !advanced {
            return true;
        }
    }
}

/// All `3^k` half-assignments as `(sum, code)` in code order. The code
/// is the big-endian base-3 digit string, so code order is entry
/// lexicographic order and the odometer makes it a plain counter.
fn half_table<T: SumValue>(values: &[T]) -> Vec<(T, u32)> {
    let k = values.len();
    let size = 3usize.pow(k as u32);
    let mut out = Vec::with_capacity(size);
    let mut digits = vec![0u8; k];
    let mut sum = T::zero();
    for v in values {
        sum.sub_ref(v);
    }
    for code in 0..size {
        out.push((sum.clone(), code as u32));
        for i in (0..k).rev() {
            match digits[i] {
                0 | 1 => {
                    digits[i] += 1;
                    sum.add_ref(&values[i]);
                    break;
                }
                _ => {
                    digits[i] = 0;
                    sum.sub_ref(&values[i]);
                    sum.sub_ref(&values[i]);
                }
            }
        }
    }
    out
}

fn decode_digits(mut code: u32, width: usize) -> Vec<u8> {
    let mut digits = vec![0u8; width];
    for slot in digits.iter_mut().rev() {
        *slot = (code % 3) as u8;
        code /= 3;
    }
    digits
}

enum LeftStatus {
    Zero,
    Canonical,
    Skip,
}

fn left_status(code: u32, width: usize) -> LeftStatus {
    let digits = decode_digits(code, width);
    match digits.iter().find(|&&d| d != 1) {
        None => LeftStatus::Zero,
        Some(2) => LeftStatus::Canonical,
        Some(_) => LeftStatus::Skip,
    }
}

fn right_leads_plus(code: u32, width: usize) -> bool {
    let digits = decode_digits(code, width);
    digits.iter().find(|&&d| d != 1) == Some(&2)
}

fn mitm_scan<T: SumValue, F>(values: &[T], tol: &T, denom: &BigInt, mut f: F) -> bool
where
    F: FnMut(SignVector, Rational) -> ControlFlow<()>,
{
    let n = values.len();
    let h = n / 2;
    let (left_values, right_values) = values.split_at(h);
    let left = half_table(left_values);
    let mut right = half_table(right_values);
    right.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut matches: Vec<(u32, T)> = Vec::new();
    for (left_sum, left_code) in &left {
        let status = left_status(*left_code, h);
        if matches!(status, LeftStatus::Skip) {
            continue;
        }
        // Want right sums in [-left_sum - tol, -left_sum + tol].
        let mut lo = left_sum.negated();
        lo.sub_ref(tol);
        let mut hi = left_sum.negated();
        hi.add_ref(tol);
        let start = right.partition_point(|(s, _)| *s < lo);
        let end = right.partition_point(|(s, _)| *s <= hi);
        if start == end {
            continue;
        }
        matches.clear();
        matches.extend(right[start..end].iter().map(|(s, c)| (*c, s.clone())));
        matches.sort_unstable_by_key(|&(c, _)| c);
        for (right_code, right_sum) in &matches {
            if matches!(status, LeftStatus::Zero) && !right_leads_plus(*right_code, n - h) {
                continue;
            }
            let mut digits = decode_digits(*left_code, h);
            digits.extend(decode_digits(*right_code, n - h));
            let sv = canonical_from_digits(&digits).expect("status checks keep it canonical");
            let mut total = left_sum.clone();
            total.add_ref(right_sum);
            if f(sv, defect_of(&total, denom)).is_break() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use proptest::prelude::{prop_assert, prop_assert_eq, prop_assume, proptest};
    use proptest::strategy::Strategy as _;

    use super::*;
    use crate::rational::{int, parse_rational, ratio};

    fn ints(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| int(v)).collect()
    }

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn cfg() -> EnumerationConfig {
        EnumerationConfig::default()
    }

    fn mitm_cfg() -> EnumerationConfig {
        EnumerationConfig::with_strategy(crate::Strategy::MeetInMiddle)
    }

    #[test]
    fn canonical_orientation_enforced() {
        assert!(SignVector::new(vec![1, -1]).is_ok());
        assert!(SignVector::new(vec![-1, 1]).is_err());
        assert!(SignVector::new(vec![0, 0]).is_err());
        assert!(SignVector::new(vec![2, 0]).is_err());
        assert_eq!(
            SignVector::canonicalize(vec![0, -1, 1]).unwrap(),
            sv("0+-")
        );
        assert_eq!(SignVector::canonicalize(vec![0, 0]), None);
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let v = sv("+0+-00000");
        assert_eq!(v.to_string(), "+0+-00000");
        assert_eq!(v.entries(), &[1, 0, 1, -1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn enumerate_known_relation_sets() {
        // Masses 1, 2, 4, 5 listed non-increasing as (5, 4, 2, 1):
        // 5 = 4 + 1 and 5 + 1 = 4 + 2 give exactly two canonical
        // relations.
        let atoms = ints(&[5, 4, 2, 1]);
        let found = enumerate_relations(&atoms, &cfg()).unwrap();
        assert_eq!(found, vec![sv("+--+"), sv("+-0-")]);

        // No relation among 3 and 5.
        assert!(enumerate_relations(&ints(&[3, 5]), &cfg()).unwrap().is_empty());

        // Equal pair.
        assert_eq!(
            enumerate_relations(&ints(&[1, 1]), &cfg()).unwrap(),
            vec![sv("+-")]
        );
    }

    #[test]
    fn nine_atom_fixture_contains_published_relations() {
        // Masses 1,2,5,6,7,8,9,10,11 sorted non-increasing; the eight
        // classic relations are expressed by the masses they combine.
        let atoms = ints(&[11, 10, 9, 8, 7, 6, 5, 2, 1]);
        let found = enumerate_relations(&atoms, &cfg()).unwrap();
        let relation = |plus: &[i64], minus: &[i64]| {
            let mut entries = vec![0i8; atoms.len()];
            for &mass in plus {
                let i = atoms.iter().position(|a| *a == int(mass)).unwrap();
                entries[i] = 1;
            }
            for &mass in minus {
                let i = atoms.iter().position(|a| *a == int(mass)).unwrap();
                entries[i] = -1;
            }
            SignVector::canonicalize(entries).unwrap()
        };
        let expected = [
            relation(&[1, 5], &[6]),
            relation(&[1, 6], &[7]),
            relation(&[1, 7], &[8]),
            relation(&[1, 8], &[9]),
            relation(&[1, 9], &[10]),
            relation(&[1, 10], &[11]),
            relation(&[2, 5], &[7]),
            relation(&[5, 6], &[11]),
        ];
        for e in &expected {
            assert!(found.contains(e), "missing {e}");
        }
        let rows: Vec<Vec<Rational>> = expected.iter().map(|v| v.to_rational_row()).collect();
        assert_eq!(relation_rank(&rows).unwrap(), 8);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_force_relations(&ints(&[1, 1])).unwrap(),
            vec![sv("+-")]
        );
        assert_eq!(
            brute_force_relations(&ints(&[1, 2, 3])).unwrap(),
            vec![sv("++-")]
        );
        let atoms = ints(&[5, 4, 2, 1]);
        assert_eq!(
            brute_force_relations(&atoms).unwrap(),
            enumerate_relations(&atoms, &cfg()).unwrap()
        );
        assert!(brute_force_relations(&ints(&[1; 15])).is_err());
    }

    #[test]
    fn kappa_relations_for_mixed_fixtures() {
        // Masses (5, 4, 2) with kappa = 1: only the two relations with
        // defect magnitude at most 1 survive.
        let atoms = ints(&[5, 4, 2]);
        let found = kappa_relations(&atoms, &int(1), &cfg()).unwrap();
        assert_eq!(
            found,
            vec![
                AugmentedRelation { sign: sv("+--"), defect: int(1) },
                AugmentedRelation { sign: sv("+-0"), defect: int(-1) },
            ]
        );
        assert_eq!(
            found,
            brute_force_kappa_relations(&atoms, &int(1)).unwrap()
        );

        // Masses (5, 2, 2, 2) with kappa = 1.
        let atoms = ints(&[5, 2, 2, 2]);
        let found = kappa_relations(&atoms, &int(1), &cfg()).unwrap();
        let expected = vec![
            AugmentedRelation { sign: sv("00+-"), defect: int(0) },
            AugmentedRelation { sign: sv("0+-0"), defect: int(0) },
            AugmentedRelation { sign: sv("0+0-"), defect: int(0) },
            AugmentedRelation { sign: sv("+---"), defect: int(1) },
            AugmentedRelation { sign: sv("+--0"), defect: int(-1) },
            AugmentedRelation { sign: sv("+-0-"), defect: int(-1) },
            AugmentedRelation { sign: sv("+0--"), defect: int(-1) },
        ];
        assert_eq!(found, expected);
        assert_eq!(
            found,
            brute_force_kappa_relations(&atoms, &int(1)).unwrap()
        );

        // kappa = 0 degenerates to the plain enumeration.
        let plain = kappa_relations(&ints(&[5, 4, 2, 1]), &int(0), &cfg()).unwrap();
        let embedded: Vec<SignVector> = plain.iter().map(|r| r.sign.clone()).collect();
        assert!(plain.iter().all(|r| r.defect.is_zero()));
        assert_eq!(
            embedded,
            enumerate_relations(&ints(&[5, 4, 2, 1]), &cfg()).unwrap()
        );
    }

    #[test]
    fn rank_and_basis_examples() {
        assert_eq!(relation_rank(&[]).unwrap(), 0);
        let two = [sv("+0+-"), sv("+--+")];
        let rows: Vec<_> = two.iter().map(|v| v.to_rational_row()).collect();
        assert_eq!(relation_rank(&rows).unwrap(), 2);
        let basis = relation_basis(&two);
        assert_eq!(basis.rank, 2);
        assert_eq!(basis.vectors, two);

        let dup = [sv("+-"), sv("+-")];
        let basis = relation_basis(&dup);
        assert_eq!(basis.rank, 1);
        assert_eq!(basis.vectors, vec![sv("+-")]);
    }

    #[test]
    fn enumeration_respects_limit() {
        let tight = EnumerationConfig {
            max_atoms: 3,
            strategy: crate::Strategy::Auto,
        };
        let err = enumerate_relations(&ints(&[1, 1, 1, 1]), &tight).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }), "{err}");
    }

    #[test]
    fn empty_and_single_atom_inputs() {
        assert!(enumerate_relations(&[], &cfg()).unwrap().is_empty());
        assert!(enumerate_relations(&ints(&[7]), &cfg()).unwrap().is_empty());
        assert!(enumerate_relations(&ints(&[7]), &mitm_cfg()).unwrap().is_empty());
    }

    #[test]
    fn big_integer_path_matches_small_path() {
        // Numerators far beyond i128 force the arbitrary-precision
        // sums; the relation structure of (x, x, 2x) must survive.
        let huge = parse_rational(&format!("1{}", "0".repeat(45))).unwrap();
        let atoms = vec![huge.clone() + &huge, huge.clone(), huge];
        let found = enumerate_relations(&atoms, &cfg()).unwrap();
        assert_eq!(found, vec![sv("0+-"), sv("+--")]);
        assert_eq!(found, enumerate_relations(&atoms, &mitm_cfg()).unwrap());
    }

    fn arb_atoms(max_n: usize) -> impl proptest::prelude::Strategy<Value = Vec<Rational>> {
        proptest::collection::vec((1i64..=50, 1i64..=10), 0..=max_n)
            .prop_map(|pairs| pairs.into_iter().map(|(p, q)| ratio(p, q)).collect())
    }

    proptest! {
        #[test]
        fn matches_brute_force(atoms in arb_atoms(8)) {
            let fast = enumerate_relations(&atoms, &cfg()).unwrap();
            let mitm = enumerate_relations(&atoms, &mitm_cfg()).unwrap();
            let brute = brute_force_relations(&atoms).unwrap();
            prop_assert_eq!(&fast, &brute);
            prop_assert_eq!(&mitm, &brute);
        }

        #[test]
        fn kappa_variants_agree(atoms in arb_atoms(7), kp in 0i64..=4, kq in 1i64..=4) {
            let kappa = ratio(kp, kq);
            let fast = kappa_relations(&atoms, &kappa, &cfg()).unwrap();
            let mitm = kappa_relations(&atoms, &kappa, &mitm_cfg()).unwrap();
            let brute = brute_force_kappa_relations(&atoms, &kappa).unwrap();
            prop_assert_eq!(&fast, &brute);
            prop_assert_eq!(&mitm, &brute);
        }

        #[test]
        fn emitted_relations_are_canonical_orthogonal_and_sorted(atoms in arb_atoms(8)) {
            let found = enumerate_relations(&atoms, &cfg()).unwrap();
            for v in &found {
                prop_assert!(v.dot(&atoms).is_zero());
                prop_assert_eq!(v.entries().iter().find(|&&e| e != 0), Some(&1));
            }
            let mut sorted = found.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(found, sorted);
        }

        #[test]
        fn rank_is_at_most_n_minus_one(atoms in arb_atoms(7)) {
            prop_assume!(!atoms.is_empty());
            let found = enumerate_relations(&atoms, &cfg()).unwrap();
            let basis = relation_basis(&found);
            prop_assert!(basis.rank < atoms.len());
        }

        #[test]
        fn permuting_atoms_permutes_relations(atoms in arb_atoms(6), seed in 0usize..720) {
            prop_assume!(atoms.len() >= 2);
            let n = atoms.len();
            let mut perm: Vec<usize> = (0..n).collect();
            // Cheap deterministic shuffle driven by the seed.
            let mut s = seed;
            for i in (1..n).rev() {
                perm.swap(i, s % (i + 1));
                s /= i + 1;
            }
            let permuted: Vec<Rational> = perm.iter().map(|&i| atoms[i].clone()).collect();
            let base = enumerate_relations(&atoms, &cfg()).unwrap();
            let mut mapped: Vec<SignVector> = base
                .iter()
                .map(|v| {
                    let entries: Vec<i8> = perm.iter().map(|&i| v.entries()[i]).collect();
                    SignVector::canonicalize(entries).unwrap()
                })
                .collect();
            mapped.sort();
            let direct = enumerate_relations(&permuted, &cfg()).unwrap();
            prop_assert_eq!(direct.len(), mapped.len());
            prop_assert_eq!(direct, mapped);

            let base_rank = relation_basis(&base).rank;
            let perm_rank = relation_basis(&enumerate_relations(&permuted, &cfg()).unwrap()).rank;
            prop_assert_eq!(base_rank, perm_rank);
        }

        #[test]
        fn scaling_preserves_relations_and_scales_defects(
            atoms in arb_atoms(6),
            kp in 0i64..=3,
            c in (1i64..=9, 1i64..=9),
        ) {
            let kappa = int(kp);
            let factor = ratio(c.0, c.1);
            let scaled: Vec<Rational> = atoms.iter().map(|a| a * &factor).collect();
            let scaled_kappa = &kappa * &factor;
            let base = kappa_relations(&atoms, &kappa, &cfg()).unwrap();
            let scaled_rel = kappa_relations(&scaled, &scaled_kappa, &cfg()).unwrap();
            prop_assert_eq!(base.len(), scaled_rel.len());
            for (b, s) in base.iter().zip(&scaled_rel) {
                prop_assert_eq!(&b.sign, &s.sign);
                prop_assert_eq!(&b.defect * &factor, s.defect.clone());
            }
        }
    }
}
