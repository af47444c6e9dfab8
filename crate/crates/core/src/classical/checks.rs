//! Grid checks of the classical identities.

use super::composite::{dn_apply, DNSignature};
use super::ek::erdelyi_kober_left;
use super::rl::{
    gerasimov_derivative, liouville_right, rl_derivative_left, rl_integral_left, rl_left_image,
};
use super::weighted::{frac_by_function_left, hadamard_left, WeightFunction};
use crate::funcmodel::{make_monomial, richardson_derivative, FunctionHandle};
use crate::quadrature::QuadratureConfig;
use crate::report::{grid_report, VerificationReport};
use crate::scalar::Real;
use crate::specfun::{gamma_ratio, rgamma};

/// `I^α_{0+} x^m = Γ(m+1)/Γ(m+α+1) x^{m+α}`, at 1e-10.
pub fn rl_power_check<T: Real>(alpha: T, m: T, grid: &[T], cfg: &QuadratureConfig<T>) -> VerificationReport {
    let f = make_monomial(m);
    grid_report(format!("I^{alpha}_0+ x^{m} power law"), grid, 1e-10, |x| {
        let c = gamma_ratio(&[m + T::one()], &[m + alpha + T::one()])?;
        Ok((rl_integral_left(&f, T::zero(), alpha, x, cfg)?, c * x.powf(m + alpha)))
    })
}

/// `I^α_{0+} I^β_{0+} f = I^{α+β}_{0+} f` with the inner image nested exactly, at 1e-4.
pub fn rl_semigroup_check<T: Real>(
    alpha: T,
    beta: T,
    f: &FunctionHandle<T>,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let identity = format!("I^{alpha} I^{beta} = I^{}", alpha + beta);
    let inner = match rl_left_image(f, T::zero(), -beta, cfg) {
        Ok(h) => h,
        Err(e) => return VerificationReport::failed(identity, 1e-4, e.to_string()),
    };
    let outer = cfg.relaxed(T::lit(10.0));
    grid_report(identity, grid, 1e-4, |x| {
        Ok((rl_integral_left(&inner, T::zero(), alpha, x, &outer)?, rl_integral_left(f, T::zero(), alpha + beta, x, cfg)?))
    })
}

/// `D^α_{0+} I^α_{0+} f = f`, at 1e-6.
pub fn rl_inversion_check<T: Real>(alpha: T, f: &FunctionHandle<T>, grid: &[T], cfg: &QuadratureConfig<T>) -> VerificationReport {
    let identity = format!("D^{alpha} I^{alpha} f = f");
    let inner = match rl_left_image(f, T::zero(), -alpha, cfg) {
        Ok(h) => h,
        Err(e) => return VerificationReport::failed(identity, 1e-6, e.to_string()),
    };
    let outer = cfg.relaxed(T::lit(10.0));
    grid_report(identity, grid, 1e-6, |x| Ok((rl_derivative_left(&inner, T::zero(), alpha, x, &outer)?, f.eval(x)?)))
}

/// Sequential composition with orders `{1/2, −1/2}` is the identity, at 1e-5.
pub fn dn_identity_check<T: Real>(f: &FunctionHandle<T>, grid: &[T], cfg: &QuadratureConfig<T>) -> VerificationReport {
    let half = T::lit(0.5);
    let identity = "D^{1/2} D^{-1/2} f = f";
    let sig = match DNSignature::new(vec![half, -half]) {
        Ok(s) => s,
        Err(e) => return VerificationReport::failed(identity, 1e-5, e.to_string()),
    };
    grid_report(identity, grid, 1e-5, |x| Ok((dn_apply(&sig, f, x, T::zero(), cfg)?, f.eval(x)?)))
}

/// Integral by the function `g(x) = x` equals the RL integral, at 1e-12.
pub fn weighted_identity_check<T: Real>(
    alpha: T,
    f: &FunctionHandle<T>,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let w = WeightFunction::identity();
    grid_report(format!("I^{alpha}_(g=x) = I^{alpha}_0+"), grid, 1e-12, |x| {
        Ok((frac_by_function_left(f, &w, alpha, x, T::zero(), cfg)?, rl_integral_left(f, T::zero(), alpha, x, cfg)?))
    })
}

/// Hadamard integral of `f ≡ 1` from 1: `(ln x)^α / Γ(α+1)`, at 1e-10.
pub fn hadamard_constant_check<T: Real>(alpha: T, grid: &[T], cfg: &QuadratureConfig<T>) -> VerificationReport {
    let one = make_monomial(T::zero());
    grid_report(format!("Hadamard I^{alpha}_1+ 1 = (ln x)^α/Γ(α+1)"), grid, 1e-10, |x| {
        Ok((hadamard_left(&one, alpha, x, T::one(), cfg)?, x.ln().powf(alpha) * rgamma(alpha + T::one())))
    })
}

/// Erdélyi–Kober image of `f ≡ 1`: `Γ(y+1)/Γ(α+y+1)`, at 1e-8.
pub fn ek_constant_check<T: Real>(alpha: T, y: T, grid: &[T], cfg: &QuadratureConfig<T>) -> VerificationReport {
    let one = make_monomial(T::zero());
    grid_report(format!("EK^(α={alpha}, y={y}) 1 = Γ(y+1)/Γ(α+y+1)"), grid, 1e-8, |x| {
        let c = gamma_ratio(&[y + T::one()], &[alpha + y + T::one()])?;
        Ok((erdelyi_kober_left(&one, alpha, y, x, cfg)?, c))
    })
}

/// Gerasimov derivative against `−d/dx I^α_−`, the derivative by Richardson differences, at 1e-6.
pub fn gerasimov_liouville_check<T: Real>(
    alpha: T,
    f: &FunctionHandle<T>,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    grid_report(format!("D^{alpha}_G = −d/dx I^{alpha}_−"), grid, 1e-6, |x| {
        let lr = |t: T| liouville_right(f, alpha, t, cfg);
        let d = richardson_derivative(&lr, 1, x, T::lit(1e-3))?;
        Ok((gerasimov_derivative(f, alpha, x, cfg)?, -d))
    })
}
