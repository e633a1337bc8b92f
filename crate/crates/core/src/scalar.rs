//! Scalar traits the generic core is written against.

use std::fmt::Debug;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, Num, NumAssign, Signed, ToPrimitive};

/// Any ordered number usable as a game weight: integers, rationals, floats.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync + ToPrimitive {}

impl<T> Scalar for T where T: Num + Clone + PartialOrd + Debug + Send + Sync + ToPrimitive {}

/// A signed scalar closed under division: rationals and floats.
///
/// Probability computations that only need field arithmetic are written
/// against this, so they can run exactly on rationals.
pub trait Field: Scalar + Signed {}

impl<T> Field for T where T: Scalar + Signed {}

/// Floating point: `f32` or `f64`.
pub trait Real: Field + Float + FromPrimitive + NumAssign + Sum + Copy + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Compensated (Neumaier) summation. Exact scalars keep a zero correction.
#[derive(Clone, Debug)]
pub struct Accumulator<T> {
    sum: T,
    correction: T,
}

impl<T: Field> Default for Accumulator<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Field> Accumulator<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), correction: T::zero() }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum.clone() + x.clone();
        if self.sum.abs() >= x.abs() {
            self.correction = self.correction.clone() + ((self.sum.clone() - t.clone()) + x);
        } else {
            self.correction = self.correction.clone() + ((x - t.clone()) + self.sum.clone());
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: Accumulator<T>) {
        self.add(other.sum);
        self.add(other.correction);
    }

    pub fn value(&self) -> T {
        self.sum.clone() + self.correction.clone()
    }
}

pub(crate) fn two<T: Num>() -> T {
    T::one() + T::one()
}

pub(crate) fn from_f64<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("finite f64 converts to any float")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = Accumulator::<f64>::new();
        acc.add(1.0);
        for _ in 0..10 {
            acc.add(1e-16);
        }
        acc.add(-1.0);
        assert!((acc.value() - 1e-15).abs() < 1e-30);
    }

    #[test]
    fn rational_accumulator_is_exact() {
        let mut acc = Accumulator::<Rational>::new();
        for k in 1..=10 {
            acc.add(Rational::new(1, k));
        }
        assert_eq!(acc.value(), Rational::new(7381, 2520));
    }
}
