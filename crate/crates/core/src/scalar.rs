//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar (`f32` or `f64`).
///
/// Accuracy targets quoted throughout the crate refer to `f64`; `f32`
/// instantiations work but default tolerances are scaled to its epsilon.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal, rounding to the nearest representable value.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("index representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// True when `self` is a non-positive integer (a pole of Γ).
    #[inline]
    fn is_nonpositive_integer(self) -> bool {
        self <= Self::zero() && self == self.round()
    }

    /// Distance to the nearest integer.
    #[inline]
    fn integer_distance(self) -> Self {
        (self - self.round()).abs()
    }

    /// A tolerance of `k` machine epsilons, floored at `floor`.
    #[inline]
    fn tol(floor: f64, k: f64) -> Self {
        let e = Self::epsilon() * Self::lit(k);
        let f = Self::lit(floor);
        if e > f {
            e
        } else {
            f
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// sin(πx) with exact zeros at the integers and reduction modulo 2.
pub fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let mut r = x % two;
    if r < T::zero() {
        r = r + two;
    }
    // r in [0, 2)
    if r == T::zero() || r == T::one() {
        return T::zero();
    }
    if r == T::lit(0.5) {
        return T::one();
    }
    if r == T::lit(1.5) {
        return -T::one();
    }
    let (s, shifted) = if r > T::one() { (-T::one(), r - T::one()) } else { (T::one(), r) };
    // shifted in (0, 1); use symmetry about 1/2 for accuracy near 1
    let y = if shifted > T::lit(0.5) { T::one() - shifted } else { shifted };
    s * (T::PI() * y).sin()
}

/// cos(πx) with exact zeros at half-integers.
pub fn cos_pi<T: Real>(x: T) -> T {
    sin_pi(x + T::lit(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_exact_points() {
        assert_eq!(sin_pi(3.0_f64), 0.0);
        assert_eq!(sin_pi(-2.0_f64), 0.0);
        assert_eq!(sin_pi(0.5_f64), 1.0);
        assert_eq!(sin_pi(-0.5_f64), -1.0);
        assert_eq!(cos_pi(0.5_f64), 0.0);
        assert!((sin_pi(0.3_f64) - (0.3 * std::f64::consts::PI).sin()).abs() < 1e-15);
        assert!((sin_pi(1.3_f64) + (0.3 * std::f64::consts::PI).sin()).abs() < 1e-15);
    }

    #[test]
    fn pole_detection() {
        assert!(0.0_f64.is_nonpositive_integer());
        assert!((-3.0_f64).is_nonpositive_integer());
        assert!(!(-2.5_f64).is_nonpositive_integer());
        assert!(!(1.0_f32).is_nonpositive_integer());
    }
}
