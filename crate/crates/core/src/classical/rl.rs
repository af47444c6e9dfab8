//! Riemann–Liouville and Liouville integrals and derivatives.
//!
//! Left-sided operators are evaluated from the scaled form
//! `I^β_{a+} f(x) = (x−a)^β/Γ(β) ∫_0^1 (1−s)^{β−1} f(a + (x−a)s) ds`,
//! whose x-derivatives follow by the Leibniz rule without boundary terms.
//! Right-sided operators on the half-axis commute with d/dx.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcmodel::{FunctionHandle, RealFn, Support, Tail};
use crate::quadrature::{
    integrate_singular_edge, run, try_integrate, Domain, IntegralTask, QuadratureConfig, Side, SingularityPolicy,
    Truncation,
};
use crate::scalar::Real;
use crate::specfun::rgamma;

/// A positive fractional order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FractionalOrder<T>(T);

impl<T: Real> FractionalOrder<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if alpha > T::zero() && alpha.is_finite() {
            Ok(Self(alpha))
        } else {
            Err(Error::Domain(format!("fractional order must be positive, got {alpha}")))
        }
    }

    pub fn get(self) -> T {
        self.0
    }

    /// `n = ⌊α⌋ + 1`.
    pub fn n(self) -> usize {
        self.0.floor().to_usize().unwrap_or(0) + 1
    }
}

/// Falling factorial β(β−1)…(β−m+1).
pub(crate) fn falling<T: Real>(beta: T, m: usize) -> T {
    (0..m).fold(T::one(), |acc, j| acc * (beta - T::from_usize_lossy(j)))
}

pub(crate) fn binomial<T: Real>(n: usize, k: usize) -> T {
    (0..k).fold(T::one(), |acc, j| acc * T::from_usize_lossy(n - j) / T::from_usize_lossy(j + 1))
}

/// Endpoint exponent worth a quadrature policy (negative or non-integer).
pub(crate) fn needs_policy<T: Real>(p: Option<T>) -> Option<T> {
    p.filter(|&p| p < T::zero() || p != p.round())
}

/// ∫_{s0}^{1} (1−s)^{β−1} φ(s) ds with φ zero beyond `s1`.
pub(crate) fn unit_edge_integral<T: Real>(
    phi: &dyn Fn(T) -> Result<T>,
    beta: T,
    s0: T,
    s1: T,
    origin: Option<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    let one = T::one();
    if s0 >= s1 || s0 >= one {
        return Ok(T::zero());
    }
    let policy = if s0 == T::zero() { needs_policy(origin) } else { None };
    if s1 < one - T::lit(1e-3) {
        let g = |s: T| -> Result<T> { Ok((one - s).powf(beta - one) * phi(s)?) };
        let c = match policy {
            Some(p) => cfg.plain().with_policy(SingularityPolicy::LeftAlgebraic(p)),
            None => cfg.plain(),
        };
        return Ok(try_integrate(g, s0, s1, &c)?.value);
    }
    let Some(p) = policy else {
        return Ok(integrate_singular_edge(|s| phi(s), one, s0, beta, Side::Left, &cfg.plain())?.value);
    };
    // Both ends singular: the origin part is mapped in s itself so that s stays exact near zero.
    let half = T::lit(0.5);
    let g = |s: T| -> Result<T> { Ok((one - s).powf(beta - one) * phi(s)?) };
    let near = try_integrate(g, s0, half, &cfg.plain().with_policy(SingularityPolicy::LeftAlgebraic(p)))?.value;
    let far = integrate_singular_edge(|s| phi(s), one, half, beta, Side::Left, &cfg.plain())?.value;
    Ok(near + far)
}

/// (d/dx)^k I^β_{a+} f (x), for β > 0.
pub fn left_leibniz<T: Real>(
    f: &FunctionHandle<T>,
    a: T,
    beta: T,
    k: usize,
    x: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    if x <= a {
        return Err(Error::Domain(format!("left-sided operator needs x > {a}, got {x}")));
    }
    let h = x - a;
    let supp = f.support();
    let s0 = ((supp.lower() - a) / h).max(T::zero());
    let s1 = supp.upper().map_or(T::one(), |u| ((u - a) / h).min(T::one()));
    let origin = if a == T::zero() && supp.touches_origin() { f.origin() } else { None };
    let mut acc = T::zero();
    for j in 0..=k {
        let power = falling(beta, k - j);
        if power == T::zero() {
            continue;
        }
        let jf = j as i32;
        let phi = |s: T| -> Result<T> {
            let t = a + h * s;
            Ok(s.powi(jf) * f.derivative(j, t)?)
        };
        let m = unit_edge_integral(&phi, beta, s0, s1, origin, cfg)?;
        acc = acc + binomial::<T>(k, j) * power * h.powf(beta - T::from_usize_lossy(k - j)) * m;
    }
    Ok(acc * rgamma(beta))
}

/// ∫_x^U (t−x)^{β−1} φ(t) dt over the effective support of a right-sided operand.
pub(crate) fn right_kernel_integral<T: Real>(
    phi: &dyn Fn(T) -> Result<T>,
    support: Support<T>,
    tail: Tail<T>,
    x: T,
    beta: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    if let Some(hi) = support.upper() {
        if hi <= x {
            return Ok(T::zero());
        }
        let lo = support.lower().max(x);
        if lo > x && (lo - x) > T::lit(1e-3) * (hi - x) {
            let g = |t: T| -> Result<T> { Ok((t - x).powf(beta - T::one()) * phi(t)?) };
            return Ok(try_integrate(g, lo, hi, &cfg.plain())?.value);
        }
        return Ok(integrate_singular_edge(|t| phi(t), x, hi, beta, Side::Right, &cfg.plain())?.value);
    }
    match tail {
        Tail::Exponential(lambda) => {
            let hi = x.max(support.lower()) + (T::one() / cfg.abs_tol).ln() / lambda;
            let lo = support.lower().max(x);
            if lo > x && (lo - x) > T::lit(1e-3) * (hi - x) {
                let g = |t: T| -> Result<T> { Ok((t - x).powf(beta - T::one()) * phi(t)?) };
                let task = IntegralTask {
                    integrand: &g,
                    domain: Domain::Truncated { lo, hi, reason: Truncation::TailBound(cfg.abs_tol) },
                    config: cfg.plain(),
                };
                return Ok(run(&task)?.value);
            }
            Ok(integrate_singular_edge(|t| phi(t), x, hi, beta, Side::Right, &cfg.plain())?.value)
        }
        Tail::Algebraic(p) => {
            let decay = -(p + beta - T::one());
            if decay <= T::one() {
                return Err(Error::Domain(format!(
                    "right-sided integral of order {beta} diverges for a tail ~ t^{p}"
                )));
            }
            let lo = support.lower().max(x);
            let mid = lo + x.abs().max(T::one());
            let head = if lo > x && (lo - x) > T::lit(1e-3) * (mid - x) {
                let g = |t: T| -> Result<T> { Ok((t - x).powf(beta - T::one()) * phi(t)?) };
                try_integrate(g, lo, mid, &cfg.plain())?.value
            } else {
                integrate_singular_edge(|t| phi(t), x, mid, beta, Side::Right, &cfg.plain())?.value
            };
            let g = |t: T| -> Result<T> { Ok((t - x).powf(beta - T::one()) * phi(t)?) };
            let task = IntegralTask { integrand: &g, domain: Domain::AlgebraicTail { lo: mid, decay }, config: cfg.plain() };
            Ok(head + run(&task)?.value)
        }
        Tail::None => Err(Error::Domain("operand has unbounded support but no declared tail".into())),
    }
}

/// (d/dx)^k I^β_{b−} f (x); `b = None` is the half-axis operator.
pub fn right_leibniz<T: Real>(
    f: &FunctionHandle<T>,
    b: Option<T>,
    beta: T,
    k: usize,
    x: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    match b {
        None => {
            let fk = f.derivative_handle(k)?;
            let phi = |t: T| fk.eval(t);
            let v = right_kernel_integral(&phi, fk.support(), fk.tail(), x, beta, cfg)?;
            Ok(v * rgamma(beta))
        }
        Some(b) => {
            if x >= b {
                return Err(Error::Domain(format!("right-sided operator needs x < {b}, got {x}")));
            }
            let h = b - x;
            let supp = f.support();
            // t = b − h s
            let s0 = supp.upper().map_or(T::zero(), |u| ((b - u) / h).max(T::zero()));
            let s1 = ((b - supp.lower()) / h).min(T::one());
            let mut acc = T::zero();
            for j in 0..=k {
                let power = falling(beta, k - j);
                if power == T::zero() {
                    continue;
                }
                let sign = if (k - j) % 2 == 0 { T::one() } else { -T::one() };
                let jf = j as i32;
                let phi = |s: T| -> Result<T> { Ok(s.powi(jf) * f.derivative(j, b - h * s)?) };
                let m = unit_edge_integral(&phi, beta, s0, s1, None, cfg)?;
                acc = acc + sign * binomial::<T>(k, j) * power * h.powf(beta - T::from_usize_lossy(k - j)) * m;
            }
            Ok(acc * rgamma(beta))
        }
    }
}

fn order_check<T: Real>(alpha: T) -> Result<FractionalOrder<T>> {
    FractionalOrder::new(alpha)
}

/// I^α_{a+} f (x).
pub fn rl_integral_left<T: Real>(f: &FunctionHandle<T>, a: T, alpha: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    order_check(alpha)?;
    left_leibniz(f, a, alpha, 0, x, cfg)
}

/// I^α_{b−} f (x).
pub fn rl_integral_right<T: Real>(f: &FunctionHandle<T>, b: T, alpha: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    order_check(alpha)?;
    right_leibniz(f, Some(b), alpha, 0, x, cfg)
}

/// D^α_{a+} f = (d/dx)^n I^{n−α}_{a+} f.
pub fn rl_derivative_left<T: Real>(f: &FunctionHandle<T>, a: T, alpha: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    let o = order_check(alpha)?;
    let n = o.n();
    if alpha == alpha.round() {
        return f.derivative(n - 1, x);
    }
    left_leibniz(f, a, T::from_usize_lossy(n) - alpha, n, x, cfg)
}

/// D^α_{b−} f = (−d/dx)^n I^{n−α}_{b−} f.
pub fn rl_derivative_right<T: Real>(f: &FunctionHandle<T>, b: T, alpha: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    derivative_right(f, Some(b), alpha, x, cfg)
}

fn derivative_right<T: Real>(
    f: &FunctionHandle<T>,
    b: Option<T>,
    alpha: T,
    x: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    let o = order_check(alpha)?;
    let n = o.n();
    let sign = if n % 2 == 0 { T::one() } else { -T::one() };
    if alpha == alpha.round() {
        let m = n - 1;
        let s = if m % 2 == 0 { T::one() } else { -T::one() };
        return Ok(s * f.derivative(m, x)?);
    }
    Ok(sign * right_leibniz(f, b, T::from_usize_lossy(n) - alpha, n, x, cfg)?)
}

/// Half-axis I^α_{0+}.
pub fn liouville_left<T: Real>(f: &FunctionHandle<T>, alpha: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    rl_integral_left(f, T::zero(), alpha, x, cfg)
}

/// Half-axis I^α_−, truncated at the operand's support or tail.
pub fn liouville_right<T: Real>(f: &FunctionHandle<T>, alpha: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    order_check(alpha)?;
    right_leibniz(f, None, alpha, 0, x, cfg)
}

/// Half-axis D^α_{0+}.
pub fn liouville_derivative_left<T: Real>(f: &FunctionHandle<T>, alpha: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    rl_derivative_left(f, T::zero(), alpha, x, cfg)
}

/// Half-axis D^α_− = (−d/dx)^n I^{n−α}_−.
pub fn liouville_derivative_right<T: Real>(f: &FunctionHandle<T>, alpha: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    derivative_right(f, None, alpha, x, cfg)
}

/// Gerasimov derivative `(1/Γ(α)) ∫_x^∞ (t−x)^{α−1} f'(t) dt`, 0 < α < 1.
pub fn gerasimov_derivative<T: Real>(f: &FunctionHandle<T>, alpha: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::Domain(format!("Gerasimov derivative needs 0 < α < 1, got {alpha}")));
    }
    gerasimov_caputo(f, alpha, x, 1, cfg)
}

/// `(1/Γ(α)) ∫_x^∞ (t−x)^{α−1} f^{(n)}(t) dt`, with the kernel exponent kept at α−1.
pub fn gerasimov_caputo<T: Real>(
    f: &FunctionHandle<T>,
    alpha: T,
    x: T,
    n: usize,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    order_check(alpha)?;
    right_leibniz(f, None, alpha, n, x, cfg)
}

/// Handle for the left-sided image of order `gamma`: γ < 0 is I^{−γ}_{a+},
/// γ > 0 is D^γ_{a+}, γ = 0 the identity. Derivatives are exact.
pub fn rl_left_image<T: Real>(
    f: &FunctionHandle<T>,
    a: T,
    gamma: T,
    cfg: &QuadratureConfig<T>,
) -> Result<FunctionHandle<T>> {
    if gamma == T::zero() {
        return Ok(f.clone());
    }
    if gamma > T::zero() && gamma == gamma.round() {
        return f.derivative_handle(gamma.to_usize().unwrap_or(0));
    }
    let (beta, shift) = if gamma < T::zero() {
        (-gamma, 0usize)
    } else {
        let n = gamma.floor().to_usize().unwrap_or(0) + 1;
        (T::from_usize_lossy(n) - gamma, n)
    };
    if f.max_order() < shift {
        return Err(Error::InsufficientSmoothness { order: shift, reason: f.label().to_string() });
    }
    let orders = f.max_order() - shift;
    let cfg = *cfg;
    let mk = |k: usize| -> RealFn<T> {
        let f = f.clone();
        Arc::new(move |x: T| {
            if x <= a {
                return Ok(T::zero());
            }
            left_leibniz(&f, a, beta, shift + k, x, &cfg)
        })
    };
    let value = mk(0);
    let derivs = (1..=orders).map(mk).collect();
    let lower = f.support().lower().max(a);
    let support = if lower == T::zero() { Support::HalfAxis } else { Support::From(lower) };
    let tail = match f.tail() {
        Tail::Algebraic(p) if f.support().upper().is_none() => Tail::Algebraic(p - gamma),
        _ => Tail::Algebraic(-gamma - T::one()),
    };
    let origin = if lower == T::zero() { f.origin().map(|p| p - gamma) } else { None };
    Ok(FunctionHandle::new(format!("D^{gamma}_{{{a}+}} {}", f.label()), value)
        .with_derivatives(derivs)
        .with_support(support)
        .with_tail(tail)
        .with_origin(origin))
}

/// Handle for the half-axis right-sided image of order `gamma` (sign convention as [`rl_left_image`]).
pub fn rl_right_image<T: Real>(f: &FunctionHandle<T>, gamma: T, cfg: &QuadratureConfig<T>) -> Result<FunctionHandle<T>> {
    if gamma == T::zero() {
        return Ok(f.clone());
    }
    let (beta, shift) = if gamma < T::zero() {
        (-gamma, 0usize)
    } else {
        let n = gamma.floor().to_usize().unwrap_or(0) + 1;
        (T::from_usize_lossy(n) - gamma, n)
    };
    if f.max_order() < shift {
        return Err(Error::InsufficientSmoothness { order: shift, reason: f.label().to_string() });
    }
    let sign = if shift % 2 == 0 { T::one() } else { -T::one() };
    let orders = f.max_order() - shift;
    let cfg = *cfg;
    let integer = gamma > T::zero() && gamma == gamma.round();
    let mk = |k: usize| -> RealFn<T> {
        let f = f.clone();
        Arc::new(move |x: T| {
            if integer {
                let m = gamma.to_usize().unwrap_or(0);
                let s = if m % 2 == 0 { T::one() } else { -T::one() };
                return Ok(s * f.derivative(m + k, x)?);
            }
            Ok(sign * right_leibniz(&f, None, beta, shift + k, x, &cfg)?)
        })
    };
    let value = mk(0);
    let derivs = (1..=orders).map(mk).collect();
    let support = match f.support().upper() {
        Some(hi) => Support::UpTo(hi),
        None => Support::HalfAxis,
    };
    let tail = match f.tail() {
        Tail::Algebraic(p) => Tail::Algebraic(p - gamma),
        t => t,
    };
    let origin = match f.origin() {
        Some(p) if f.support().touches_origin() && p - gamma < T::zero() => Some(p - gamma),
        _ => Some(T::zero()),
    };
    Ok(FunctionHandle::new(format!("D^{gamma}_- {}", f.label()), value)
        .with_derivatives(derivs)
        .with_support(support)
        .with_tail(tail)
        .with_origin(origin))
}
