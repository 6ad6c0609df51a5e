//! Integer-scaled arithmetic shared by the enumeration cores.
//!
//! Rational masses are multiplied by the lcm of their denominators so
//! the exponential scans run over plain integers: `i128` when the
//! worst-case sums provably fit with headroom, arbitrary-precision
//! integers otherwise. Exactness is never traded away; only the
//! representation changes.

use num::bigint::BigInt;
use num::{Integer, Signed, Zero};

use crate::rational::Rational;

/// Running-sum arithmetic over either integer representation.
pub(crate) trait SumValue: Clone + Ord {
    fn zero() -> Self;
    fn add_ref(&mut self, other: &Self);
    fn sub_ref(&mut self, other: &Self);
    fn negated(&self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl SumValue for i128 {
    fn zero() -> Self {
        0
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn negated(&self) -> Self {
        -self
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SumValue for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn negated(&self) -> Self {
        -self
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// The values (and one extra rational, e.g. a tolerance or the
/// nonatomic mass) scaled to integers over a common denominator.
pub(crate) enum ScaledValues {
    Small {
        values: Vec<i128>,
        extra: i128,
        denom: BigInt,
    },
    Big {
        values: Vec<BigInt>,
        extra: BigInt,
        denom: BigInt,
    },
}

impl ScaledValues {
    pub(crate) fn new(values: &[Rational], extra: &Rational) -> Self {
        let mut denom = extra.denom().clone();
        for v in values {
            denom = denom.lcm(v.denom());
        }
        let scaled: Vec<BigInt> = values
            .iter()
            .map(|v| v.numer() * (&denom / v.denom()))
            .collect();
        let extra_scaled = extra.numer() * (&denom / extra.denom());

        // Scans never stray past the sum of absolute values plus the
        // extra; demand comfortable headroom before trusting i128.
        let bound: BigInt =
            scaled.iter().map(|v| v.abs()).sum::<BigInt>() + extra_scaled.abs();
        if bound < BigInt::from(i128::MAX / 4) {
            ScaledValues::Small {
                values: scaled.iter().map(|v| v.try_into().unwrap()).collect(),
                extra: (&extra_scaled).try_into().unwrap(),
                denom,
            }
        } else {
            ScaledValues::Big {
                values: scaled,
                extra: extra_scaled,
                denom,
            }
        }
    }
}

/// A scaled integer turned back into the exact rational it encodes.
pub(crate) fn unscale<T: SumValue>(value: &T, denom: &BigInt) -> Rational {
    Rational::new(value.to_bigint(), denom.clone())
}
