use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mellin::Norm;
use crate::scalar::{sin_pi, Real};
use crate::specfun::GammaRatioSpec;

use super::zero_order::ZeroOrder;

/// Half-plane `Re s < bound` or `Re s > bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Strip<T> {
    Below(T),
    Above(T),
}

impl<T: Real> Strip<T> {
    pub fn contains(&self, re: T) -> bool {
        match *self {
            Strip::Below(b) => re < b,
            Strip::Above(b) => re > b,
        }
    }
}

impl<T: Real> fmt::Display for Strip<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strip::Below(b) => write!(f, "Re s < {b}"),
            Strip::Above(b) => write!(f, "Re s > {b}"),
        }
    }
}

/// Mellin multiplier `m(s)` of a zero-order operator: `M[A f](s) = m(s) M[f](s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinMultiplier<T> {
    pub which: ZeroOrder,
    pub nu: T,
}

impl<T: Real> MellinMultiplier<T> {
    pub fn new(which: ZeroOrder, nu: T) -> Self {
        Self { which, nu }
    }

    pub fn validity_strip(&self) -> Strip<T> {
        let (one, two) = (T::one(), T::lit(2.0));
        let nu = self.nu;
        match self.which {
            ZeroOrder::S0plus => Strip::Below((two + nu).min(one - nu)),
            ZeroOrder::P0plus => Strip::Below(one),
            ZeroOrder::Sminus => Strip::Above(T::zero()),
            ZeroOrder::Pminus => Strip::Above(nu.max(-one - nu)),
        }
    }

    fn ratio(&self, s: Complex<T>) -> GammaRatioSpec<T> {
        let half = T::lit(0.5);
        let one = Complex::new(T::one(), T::zero());
        let hal = Complex::new(half, T::zero());
        let h = s * half;
        let n2 = Complex::new(self.nu * half, T::zero());
        // S0plus: Γ(1 − s/2 + ν/2) Γ(1/2 − s/2 − ν/2) / (Γ(1/2 − s/2) Γ(1 − s/2))
        let s0_num = vec![(one - h) + n2, (hal - h) - n2];
        let s0_den = vec![hal - h, one - h];
        // Sminus: Γ(s/2) Γ(s/2 + 1/2) / (Γ(s/2 + 1/2 + ν/2) Γ(s/2 − ν/2))
        let sm_num = vec![h, h + hal];
        let sm_den = vec![(h + hal) + n2, h - n2];
        match self.which {
            ZeroOrder::S0plus => GammaRatioSpec::new(s0_num, s0_den),
            ZeroOrder::P0plus => GammaRatioSpec::new(s0_den, s0_num),
            ZeroOrder::Sminus => GammaRatioSpec::new(sm_num, sm_den),
            ZeroOrder::Pminus => GammaRatioSpec::new(sm_den, sm_num),
        }
    }

    /// m(s) for `s` inside the validity strip.
    pub fn evaluate(&self, s: Complex<T>) -> Result<Complex<T>> {
        let strip = self.validity_strip();
        if !strip.contains(s.re) {
            return Err(Error::StripViolation { re: s.re.as_f64(), im: s.im.as_f64(), strip: strip.to_string() });
        }
        self.ratio(s).evaluate()
    }

    /// The meromorphic continuation of m, without the strip check.
    pub fn evaluate_continued(&self, s: Complex<T>) -> Result<Complex<T>> {
        self.ratio(s).evaluate()
    }

    /// m(1/2 + it) through the continuation.
    pub fn critical_line(&self, t: T) -> Result<Complex<T>> {
        self.evaluate_continued(Complex::new(T::lit(0.5), t))
    }
}

/// Strict multiplier evaluation; see [`MellinMultiplier::evaluate`].
pub fn be_multiplier<T: Real>(m: &MellinMultiplier<T>, s: Complex<T>) -> Result<Complex<T>> {
    m.evaluate(s)
}

/// Closed-form L2 norm of a zero-order operator.
///
/// `‖S0plus‖ = ‖Pminus‖ = 1/min(1, √(1 − sin πν))`,
/// `‖P0plus‖ = ‖Sminus‖ = max(1, √(1 − sin πν))`.
pub fn be_norm<T: Real>(which: ZeroOrder, nu: T) -> Norm<T> {
    let r = (T::one() - sin_pi(nu)).max(T::zero()).sqrt();
    match which {
        ZeroOrder::S0plus | ZeroOrder::Pminus => {
            let m = r.min(T::one());
            if m == T::zero() {
                Norm::Unbounded
            } else {
                Norm::Finite(T::one() / m)
            }
        }
        ZeroOrder::P0plus | ZeroOrder::Sminus => Norm::Finite(r.max(T::one())),
    }
}
