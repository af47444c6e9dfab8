//! Fractional integrals with respect to a monotone function g, including Hadamard (g = ln x).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::funcmodel::{FunctionHandle, RealFn, Support, Tail};
use crate::quadrature::{integrate_singular_edge, QuadratureConfig, Side, SingularityPolicy};
use crate::scalar::Real;
use crate::specfun::rgamma;

use super::rl::{needs_policy, right_kernel_integral};

/// A strictly increasing weight g with its first derivative.
#[derive(Debug, Clone)]
pub struct WeightFunction<T: Real> {
    pub g: FunctionHandle<T>,
}

impl<T: Real> WeightFunction<T> {
    pub fn new(g: FunctionHandle<T>) -> Result<Self> {
        if g.max_order() < 1 {
            return Err(Error::InsufficientSmoothness { order: 1, reason: "weight function needs g'".into() });
        }
        Ok(Self { g })
    }

    pub fn identity() -> Self {
        Self { g: crate::funcmodel::make_monomial(T::one()) }
    }

    pub fn power(p: T) -> Self {
        Self { g: crate::funcmodel::make_monomial(p) }
    }

    /// g(x) = ln x, giving the Hadamard operators.
    pub fn log() -> Self {
        let value: RealFn<T> = Arc::new(|x: T| Ok(x.ln()));
        let d1: RealFn<T> = Arc::new(|x: T| Ok(x.recip()));
        let d2: RealFn<T> = Arc::new(|x: T| Ok(-(x * x).recip()));
        let g = FunctionHandle::new("ln x", value)
            .with_derivatives(vec![d1, d2])
            .with_support(Support::HalfAxis)
            .with_tail(Tail::Algebraic(T::zero()));
        Self { g }
    }

    fn check_monotone(&self, lo: T, hi: T) -> Result<()> {
        const SAMPLES: usize = 64;
        let mut prev = self.g.eval(lo)?;
        for i in 0..=SAMPLES {
            let t = lo + (hi - lo) * T::from_usize_lossy(i) / T::from_usize_lossy(SAMPLES);
            let d = self.g.derivative(1, t)?;
            let v = self.g.eval(t)?;
            if d < T::zero() || (i > 0 && v <= prev) {
                return Err(Error::NonMonotoneWeight(t.as_f64()));
            }
            prev = v;
        }
        Ok(())
    }

    /// ((g(x) − g(t))/(x − t)), stable as t → x.
    fn divided(&self, x: T, t: T, gx: T) -> Result<T> {
        let d = x - t;
        if d.abs() <= T::lit(1e-6) * x.abs().max(T::one()) {
            return self.g.derivative(1, (x + t) * T::lit(0.5));
        }
        Ok((gx - self.g.eval(t)?) / d)
    }
}

/// (1/Γ(α)) ∫_lo^x (g(x) − g(t))^{α−1} g'(t) f(t) dt.
pub fn frac_by_function_left<T: Real>(
    f: &FunctionHandle<T>,
    w: &WeightFunction<T>,
    alpha: T,
    x: T,
    lo: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    if !(alpha > T::zero()) {
        return Err(Error::Domain(format!("order must be positive, got {alpha}")));
    }
    if x <= lo {
        return Err(Error::Domain(format!("need x > {lo}, got {x}")));
    }
    let gx = w.g.eval(x)?;
    if !w.g.eval(lo)?.is_finite() || !gx.is_finite() {
        return Err(Error::Domain(format!("weight function is not finite on [{lo}, {x}]")));
    }
    let eff_lo = lo.max(f.support().lower());
    if eff_lo >= x {
        return Ok(T::zero());
    }
    w.check_monotone(eff_lo, x)?;
    let phi = |t: T| -> Result<T> {
        let ft = f.eval(t)?;
        if ft == T::zero() {
            return Ok(T::zero());
        }
        Ok(w.divided(x, t, gx)?.powf(alpha - T::one()) * w.g.derivative(1, t)? * ft)
    };
    let origin = if eff_lo == T::zero() {
        let q = w.g.derivative_handle(1)?.origin().unwrap_or(T::zero());
        f.origin().map(|p| p + q)
    } else {
        None
    };
    let c = match needs_policy(origin) {
        Some(p) => cfg.plain().with_policy(SingularityPolicy::LeftAlgebraic(p)),
        None => cfg.plain(),
    };
    let v = integrate_singular_edge(phi, x, eff_lo, alpha, Side::Left, &c)?.value;
    Ok(v * rgamma(alpha))
}

/// (1/Γ(α)) ∫_x^∞ (g(t) − g(x))^{α−1} g'(t) f(t) dt.
pub fn frac_by_function_right<T: Real>(
    f: &FunctionHandle<T>,
    w: &WeightFunction<T>,
    alpha: T,
    x: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    if !(alpha > T::zero()) {
        return Err(Error::Domain(format!("order must be positive, got {alpha}")));
    }
    let gx = w.g.eval(x)?;
    if !gx.is_finite() {
        return Err(Error::Domain(format!("weight function is not finite at {x}")));
    }
    let hi = f.support().upper();
    if let Some(h) = hi {
        if h <= x {
            return Ok(T::zero());
        }
        w.check_monotone(x.max(f.support().lower()), h)?;
    }
    let phi = |t: T| -> Result<T> {
        let ft = f.eval(t)?;
        if ft == T::zero() {
            return Ok(T::zero());
        }
        Ok(w.divided(t, x, w.g.eval(t)?)?.powf(alpha - T::one()) * w.g.derivative(1, t)? * ft)
    };
    let v = right_kernel_integral(&phi, f.support(), f.tail(), x, alpha, cfg)?;
    Ok(v * rgamma(alpha))
}

/// Left Hadamard integral (g = ln x) from `lo > 0`.
pub fn hadamard_left<T: Real>(f: &FunctionHandle<T>, alpha: T, x: T, lo: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !(lo > T::zero()) {
        return Err(Error::Domain("Hadamard integral needs a positive lower limit".into()));
    }
    frac_by_function_left(f, &WeightFunction::log(), alpha, x, lo, cfg)
}

/// Right Hadamard integral.
pub fn hadamard_right<T: Real>(f: &FunctionHandle<T>, alpha: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    frac_by_function_right(f, &WeightFunction::log(), alpha, x, cfg)
}
