//! Exact rank and nullspace computations over the rationals.
//!
//! Two routes are kept deliberately separate: [`rank`] runs
//! fraction-free (Bareiss) elimination on integer-scaled rows, while
//! [`Echelon`] reduces rows incrementally with rational arithmetic so
//! enumerations can feed it one relation at a time and stop early.

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::error::Error;
use crate::rational::Rational;
use crate::Result;

/// Exact rank over the rationals via fraction-free elimination. Each
/// row is scaled by the lcm of its denominators first, which leaves the
/// row space unchanged. Empty input has rank 0; ragged rows are
/// rejected.
pub fn rank(rows: &[Vec<Rational>]) -> Result<usize> {
    let Some(first) = rows.first() else {
        return Ok(0);
    };
    let width = first.len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::invalid_input("rank: rows have ragged lengths"));
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| scale_row(r)).collect();

    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..width {
        let Some(pivot_row) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        let (upper, lower) = m.split_at_mut(rank + 1);
        let lead = &upper[rank];
        for row in lower {
            let factor = row[col].clone();
            for (value, lead_value) in row[col..].iter_mut().zip(&lead[col..]) {
                *value = (&*value * &pivot - &factor * lead_value).div_exact(&prev);
            }
        }
        prev = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Ok(rank)
}

trait DivExact {
    fn div_exact(&self, d: &BigInt) -> BigInt;
}

impl DivExact for BigInt {
    fn div_exact(&self, d: &BigInt) -> BigInt {
        debug_assert!((self % d).is_zero());
        self / d
    }
}

fn scale_row(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in row {
        lcm = lcm.lcm(v.denom());
    }
    row.iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

/// An incrementally maintained row-echelon basis over the rationals.
/// Rows inserted later are reduced against earlier pivots; an insert
/// reports whether the row enlarged the span.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vec<Rational>>,
    pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces the row against the current basis; if anything is left,
    /// normalizes it to a unit pivot, stores it, and returns true.
    pub fn insert(&mut self, row: &[Rational]) -> bool {
        assert_eq!(row.len(), self.width, "row width mismatch");
        let mut work = row.to_vec();
        for (r, &pc) in self.rows.iter().zip(&self.pivot_cols) {
            if !work[pc].is_zero() {
                let factor = work[pc].clone();
                for c in pc..self.width {
                    let delta = &r[c] * &factor;
                    work[c] -= delta;
                }
            }
        }
        let Some(pivot_col) = work.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let pivot = work[pivot_col].clone();
        for v in work.iter_mut().skip(pivot_col) {
            *v /= pivot.clone();
        }
        // Keep rows ordered by pivot column so reduction stays one pass.
        let at = self
            .pivot_cols
            .iter()
            .position(|&pc| pc > pivot_col)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, work);
        self.pivot_cols.insert(at, pivot_col);
        true
    }
}

/// A basis of the right nullspace `{x : R x = 0}` of the given rows,
/// via Gauss-Jordan reduction. One basis vector per free column, in
/// ascending column order, each with a 1 in its free slot. The rows
/// may be empty, in which case the standard basis comes back.
pub fn nullspace(rows: &[Vec<Rational>], width: usize) -> Result<Vec<Vec<Rational>>> {
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::invalid_input("nullspace: rows have ragged lengths"));
    }
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot_row) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v /= pivot.clone();
        }
        let lead = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (value, lead_value) in row.iter_mut().zip(&lead) {
                    *value -= lead_value * &factor;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == m.len() {
            break;
        }
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::with_capacity(width - rank);
    for free in (0..width).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rational::zero(); width];
        v[free] = Rational::one();
        for &(r, c) in &pivots {
            v[c] = -m[r][free].clone();
        }
        basis.push(v);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::rational::{int, ratio};

    fn row(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn rank_of_known_systems() {
        assert_eq!(rank(&[]).unwrap(), 0);
        assert_eq!(rank(&[row(&[0, 0])]).unwrap(), 0);
        assert_eq!(rank(&[row(&[1, 0, 1, -1]), row(&[1, -1, -1, 1])]).unwrap(), 2);
        let dependent = vec![row(&[1, 2]), row(&[2, 4]), row(&[3, 6])];
        assert_eq!(rank(&dependent).unwrap(), 1);
        let fractions = vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(3, 2), int(1)],
            vec![int(2), ratio(4, 3)],
        ];
        assert_eq!(rank(&fractions).unwrap(), 1);
    }

    #[test]
    fn rank_rejects_ragged_rows() {
        assert!(rank(&[row(&[1, 2]), row(&[1])]).is_err());
    }

    #[test]
    fn echelon_tracks_rank_incrementally() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&row(&[1, 1, 0])));
        assert!(!e.insert(&row(&[2, 2, 0])));
        assert!(e.insert(&row(&[0, 1, 1])));
        assert!(!e.insert(&row(&[1, 2, 1])));
        assert!(e.insert(&row(&[0, 0, 5])));
        assert_eq!(e.rank(), 3);
        assert!(!e.insert(&row(&[7, -3, 2])));
    }

    #[test]
    fn nullspace_of_empty_system_is_standard_basis() {
        let basis = nullspace(&[], 2).unwrap();
        assert_eq!(basis, vec![row(&[1, 0]), row(&[0, 1])]);
    }

    #[test]
    fn nullspace_vectors_annihilate_rows() {
        let rows = vec![row(&[1, -1, 0, -1]), row(&[1, -1, -1, 1])];
        let basis = nullspace(&rows, 4).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for r in &rows {
                let dot: Rational = r.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    fn arb_rows() -> impl Strategy<Value = Vec<Vec<Rational>>> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(rows, cols)| {
            proptest::collection::vec(
                proptest::collection::vec((-6i64..=6, 1i64..=4), cols..=cols),
                rows..=rows,
            )
            .prop_map(|data| {
                data.into_iter()
                    .map(|r| r.into_iter().map(|(p, q)| ratio(p, q)).collect())
                    .collect()
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_and_echelon_agree(rows in arb_rows()) {
            let width = rows[0].len();
            let mut e = Echelon::new(width);
            for r in &rows {
                e.insert(r);
            }
            prop_assert_eq!(rank(&rows).unwrap(), e.rank());
        }

        #[test]
        fn rank_plus_nullity_is_width(rows in arb_rows()) {
            let width = rows[0].len();
            let basis = nullspace(&rows, width).unwrap();
            prop_assert_eq!(rank(&rows).unwrap() + basis.len(), width);
            for v in &basis {
                for r in &rows {
                    let dot: Rational = r.iter().zip(v).map(|(a, b)| a * b).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
