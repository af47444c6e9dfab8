use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcmodel::{FunctionHandle, RealFn, Support, Tail};
use crate::quadrature::{try_integrate, QuadratureConfig};
use crate::scalar::Real;
use crate::specfun::legendre_p_deriv;

use super::first_kind::kernel_error;

/// The four zero-order (μ = 1) operators, named by their Mellin multipliers.
///
/// * `S0plus`: `d/dx ∫_0^x P_ν(x/t) f(t) dt`
/// * `P0plus`: `∫_0^x 𝖯_ν(t/x) f'(t) dt`
/// * `Sminus`: `(−d/dx) ∫_x^∞ 𝖯_ν(x/t) f(t) dt`
/// * `Pminus`: `∫_x^∞ P_ν(t/x) (−f'(t)) dt`
///
/// `P0plus` inverts `S0plus` and `Pminus` inverts `Sminus` for every ν.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroOrder {
    S0plus,
    P0plus,
    Sminus,
    Pminus,
}

impl ZeroOrder {
    pub const ALL: [ZeroOrder; 4] = [ZeroOrder::S0plus, ZeroOrder::P0plus, ZeroOrder::Sminus, ZeroOrder::Pminus];

    pub fn name(self) -> &'static str {
        match self {
            ZeroOrder::S0plus => "S0plus",
            ZeroOrder::P0plus => "P0plus",
            ZeroOrder::Sminus => "Sminus",
            ZeroOrder::Pminus => "Pminus",
        }
    }

    /// Operand derivatives consumed beyond the output order.
    fn shift(self) -> usize {
        match self {
            ZeroOrder::S0plus | ZeroOrder::Sminus => 0,
            ZeroOrder::P0plus | ZeroOrder::Pminus => 1,
        }
    }
}

impl std::str::FromStr for ZeroOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ZeroOrder::ALL
            .into_iter()
            .find(|w| w.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Spec(format!("unknown zero-order operator {s:?}")))
    }
}

/// Value of the operator at `x`.
pub fn be_zero_order<T: Real>(
    which: ZeroOrder,
    nu: T,
    f: &FunctionHandle<T>,
    x: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    zero_order_deriv(which, nu, f, 0, x, cfg)
}

/// k-th derivative of the image at `x`, from the scaled forms.
///
/// With `t = x r` the operators become `x`-independent integrals over `r`,
/// so derivatives fall on the operand only:
/// `S0plus^{(k)} = f^{(k)}(x) + ∫_0^x P_ν'(x/t) (t/x)^k f^{(k)}(t) dt/t`,
/// and `P0plus = x ∫_0^1 𝖯_ν(r) f'(xr) dr` is differentiated as a product.
pub fn zero_order_deriv<T: Real>(
    which: ZeroOrder,
    nu: T,
    f: &FunctionHandle<T>,
    k: usize,
    x: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let two = T::lit(2.0);
    let supp = f.support();
    let lo = supp.lower();
    let plain = cfg.plain();
    let kf = T::from_usize_lossy(k);
    let pow = |r: T, e: usize| -> T { r.powi(e as i32) };
    match which {
        ZeroOrder::S0plus | ZeroOrder::P0plus => {
            let hi = supp.upper().map_or(x, |h| h.min(x));
            let integral = if lo >= hi {
                T::zero()
            } else if which == ZeroOrder::S0plus {
                let g = |t: T| -> Result<T> {
                    let v = f.derivative(k, t)?;
                    if v == T::zero() {
                        return Ok(v);
                    }
                    let kern = legendre_p_deriv(nu, 1, -(x - t) / (two * t)).map_err(kernel_error)?;
                    Ok(kern * pow(t / x, k) * v / t)
                };
                try_integrate(g, lo, hi, &plain)?.value
            } else {
                let g = |t: T| -> Result<T> {
                    let r = t / x;
                    let mut v = pow(r, k) * f.derivative(k + 1, t)?;
                    if k > 0 {
                        v = v + kf * pow(r, k - 1) * f.derivative(k, t)? / x;
                    }
                    if v == T::zero() {
                        return Ok(v);
                    }
                    Ok(legendre_p_deriv(nu, 0, (x - t) / (two * x)).map_err(kernel_error)? * v)
                };
                try_integrate(g, lo, hi, &plain)?.value
            };
            if which == ZeroOrder::S0plus {
                Ok(f.derivative(k, x)? + integral)
            } else {
                Ok(integral)
            }
        }
        ZeroOrder::Sminus | ZeroOrder::Pminus => {
            let hi = supp
                .upper()
                .ok_or_else(|| Error::BadSupport("right-sided zero-order operators need bounded support".into()))?;
            let from = lo.max(x);
            let integral = if from >= hi {
                T::zero()
            } else if which == ZeroOrder::Sminus {
                let g = |t: T| -> Result<T> {
                    let v = f.derivative(k, t)?;
                    if v == T::zero() {
                        return Ok(v);
                    }
                    let kern = legendre_p_deriv(nu, 1, (t - x) / (two * t)).map_err(kernel_error)?;
                    Ok(kern * pow(t / x, k) * v / t)
                };
                try_integrate(g, from, hi, &plain)?.value
            } else {
                let g = |t: T| -> Result<T> {
                    let r = t / x;
                    let mut v = pow(r, k) * f.derivative(k + 1, t)?;
                    if k > 0 {
                        v = v + kf * pow(r, k - 1) * f.derivative(k, t)? / x;
                    }
                    if v == T::zero() {
                        return Ok(v);
                    }
                    Ok(legendre_p_deriv(nu, 0, -(t - x) / (two * x)).map_err(kernel_error)? * v)
                };
                try_integrate(g, from, hi, &plain)?.value
            };
            if which == ZeroOrder::Sminus {
                Ok(f.derivative(k, x)? - integral)
            } else {
                Ok(-integral)
            }
        }
    }
}

/// Handle for the image `x ↦ (which f)(x)`, with derivatives from [`zero_order_deriv`].
pub fn zero_order_image<T: Real>(
    which: ZeroOrder,
    nu: T,
    f: &FunctionHandle<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<FunctionHandle<T>> {
    let shift = which.shift();
    if f.max_order() < shift {
        return Err(Error::InsufficientSmoothness { order: shift, reason: f.label().to_string() });
    }
    let orders = f.max_order() - shift;
    let cfg = *cfg;
    let mk = |k: usize| -> RealFn<T> {
        let f = f.clone();
        Arc::new(move |x: T| zero_order_deriv(which, nu, &f, k, x, &cfg))
    };
    let value = mk(0);
    let derivs = (1..=orders).map(mk).collect();
    let one = T::one();
    let supp = f.support();
    let (support, tail, origin) = match which {
        ZeroOrder::S0plus | ZeroOrder::P0plus => {
            let lo = supp.lower();
            let support = if lo > T::zero() { Support::From(lo) } else { Support::HalfAxis };
            // P_ν'(z) ~ z^{ν−1} or z^{−ν−2}; 𝖯_ν(r) is regular at r = 0
            let tail = if which == ZeroOrder::S0plus { (nu - one).max(-nu - T::lit(2.0)) } else { -one };
            (support, Tail::Algebraic(tail), if lo > T::zero() { None } else { f.origin() })
        }
        ZeroOrder::Sminus | ZeroOrder::Pminus => {
            let hi = supp
                .upper()
                .ok_or_else(|| Error::BadSupport("right-sided zero-order operators need bounded support".into()))?;
            // P_ν(z) ~ z^{max(ν, −ν−1)} drives the Pminus image toward the origin
            let origin = if which == ZeroOrder::Sminus { T::zero() } else { (-nu).min(nu + one) };
            (Support::UpTo(hi), Tail::None, Some(origin))
        }
    };
    Ok(FunctionHandle::new(format!("{}^{nu} {}", which.name(), f.label()), value)
        .with_derivatives(derivs)
        .with_support(support)
        .with_tail(tail)
        .with_origin(origin))
}
