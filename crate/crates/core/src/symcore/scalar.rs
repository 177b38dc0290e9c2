use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::rational::Rational;

/// Coefficient field for every polynomial container in the crate.
///
/// `Rational` is the exact instance used by the symbolic pipeline; `f64`
/// and `f32` instances exist for fast numeric evaluation of the same
/// containers.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// True for exact fields, where `is_zero` is a reliable test.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n))
    }

    fn to_f64(&self) -> f64;

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let mut p = a.clone();
        p *= b;
        *self += &p;
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n)
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += &(a * b);
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(q: &Rational) -> Self {
                q.to_f64() as $t
            }

            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn add_mul(&mut self, a: &Self, b: &Self) {
                *self += a * b;
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);
