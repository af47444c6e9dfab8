//! Erdélyi–Kober operators, written as Liouville operators in the variable τ = t².

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::funcmodel::{FunctionHandle, RealFn, Support, Tail};
use crate::quadrature::QuadratureConfig;
use crate::scalar::Real;

use super::rl::{binomial, falling, left_leibniz, right_leibniz};

/// g(τ) = τ^p f(√τ), with up to three exact derivatives.
pub(crate) fn sqrt_substituted<T: Real>(f: &FunctionHandle<T>, p: T) -> FunctionHandle<T> {
    let orders = f.max_order().min(3);
    let mk = |k: usize| -> RealFn<T> {
        let f = f.clone();
        Arc::new(move |tau: T| {
            if tau <= T::zero() {
                return Ok(T::zero());
            }
            let s = tau.sqrt();
            // derivatives of s(τ) = √τ
            let s1 = T::lit(0.5) / s;
            let s2 = T::lit(-0.25) / (s * s * s);
            let s3 = T::lit(0.375) / (s * s * s * s * s);
            let mut fj = [T::zero(); 4];
            for (j, slot) in fj.iter_mut().enumerate().take(k + 1) {
                *slot = f.derivative(j, s)?;
            }
            let h = [
                fj[0],
                fj[1] * s1,
                fj[2] * s1 * s1 + fj[1] * s2,
                fj[3] * s1 * s1 * s1 + T::lit(3.0) * fj[2] * s1 * s2 + fj[1] * s3,
            ];
            let mut acc = T::zero();
            for j in 0..=k {
                let c = falling(p, k - j);
                if c == T::zero() {
                    continue;
                }
                acc = acc + binomial::<T>(k, j) * c * tau.powf(p - T::from_usize_lossy(k - j)) * h[j];
            }
            Ok(acc)
        })
    };
    let value = mk(0);
    let derivs = (1..=orders).map(mk).collect();
    let supp = f.support();
    let sq = |v: T| v * v;
    let support = match supp {
        Support::Compact { lo, hi } => Support::Compact { lo: sq(lo), hi: sq(hi) },
        Support::UpTo(hi) => Support::UpTo(sq(hi)),
        Support::From(lo) => Support::From(sq(lo)),
        Support::HalfAxis => Support::HalfAxis,
    };
    let tail = match f.tail() {
        Tail::Algebraic(q) => Tail::Algebraic(p + q * T::lit(0.5)),
        // e^{−λ√τ} is dominated by any power
        Tail::Exponential(_) => Tail::Algebraic(p - T::lit(8.0)),
        Tail::None => Tail::None,
    };
    let origin = if supp.touches_origin() { f.origin().map(|q| p + q * T::lit(0.5)) } else { None };
    FunctionHandle::new(format!("τ^{p}·({})(√τ)", f.label()), value)
        .with_derivatives(derivs)
        .with_support(support)
        .with_tail(tail)
        .with_origin(origin)
}

fn check_x<T: Real>(x: T) -> Result<()> {
    if x > T::zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Erdélyi–Kober operators need x > 0, got {x}")))
    }
}

/// I^α_{0+;2,y} f (x) = (2/Γ(α)) x^{−2(α+y)} ∫_0^x (x²−t²)^{α−1} t^{2y+1} f(t) dt,
/// continued to α ≤ 0 through x^{−2(α+y)} (d/dx²)^n x^{2(α+y+n)} I^{α+n}_{0+;2,y}.
pub fn erdelyi_kober_left<T: Real>(f: &FunctionHandle<T>, alpha: T, y: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    check_x(x)?;
    let big_x = x * x;
    let g = sqrt_substituted(f, y);
    let core = if alpha > T::zero() {
        left_leibniz(&g, T::zero(), alpha, 0, big_x, cfg)?
    } else if alpha == T::zero() {
        g.eval(big_x)?
    } else {
        let order = -alpha;
        let n = order.floor().to_usize().unwrap_or(0) + 1;
        if order == order.round() {
            g.derivative(n - 1, big_x)?
        } else {
            left_leibniz(&g, T::zero(), T::from_usize_lossy(n) - order, n, big_x, cfg)?
        }
    };
    Ok(big_x.powf(-(alpha + y)) * core)
}

/// I^α_{−;2,y} f (x) = (2/Γ(α)) x^{2y} ∫_x^∞ (t²−x²)^{α−1} t^{2(1−α−y)−1} f(t) dt,
/// continued to α ≤ 0 through x^{2y} (−d/dx²)^n x^{2(n−y)} I^{α+n}_{−;2,y−n}.
pub fn erdelyi_kober_right<T: Real>(f: &FunctionHandle<T>, alpha: T, y: T, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    check_x(x)?;
    let big_x = x * x;
    let g = sqrt_substituted(f, -alpha - y);
    let core = if alpha > T::zero() {
        right_leibniz(&g, None, alpha, 0, big_x, cfg)?
    } else if alpha == T::zero() {
        g.eval(big_x)?
    } else {
        let order = -alpha;
        let n = order.floor().to_usize().unwrap_or(0) + 1;
        let sign = |m: usize| if m % 2 == 0 { T::one() } else { -T::one() };
        if order == order.round() {
            sign(n - 1) * g.derivative(n - 1, big_x)?
        } else {
            sign(n) * right_leibniz(&g, None, T::from_usize_lossy(n) - order, n, big_x, cfg)?
        }
    };
    Ok(big_x.powf(y) * core)
}
