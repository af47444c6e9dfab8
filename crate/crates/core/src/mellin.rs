//! Numerical Mellin transform and critical-line norm estimates.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::buschman_erdelyi::MellinMultiplier;
use crate::error::{Error, Result};
use crate::funcmodel::{FunctionHandle, Tail};
use crate::quadrature::{run, Domain, IntegralTask, QuadratureConfig, SingularityPolicy};
use crate::scalar::Real;

/// Sup values above this are reported as unbounded.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;
/// Minimum log-log slope of monotone growth at a grid end that counts as divergence.
pub const DIVERGENCE_SLOPE: f64 = 0.5;
const END_POINTS: usize = 8;

/// An operator norm that is either a finite number or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Norm<T> {
    Finite(T),
    Unbounded,
}

impl<T: Real> Norm<T> {
    pub fn value(&self) -> Option<T> {
        match *self {
            Norm::Finite(v) => Some(v),
            Norm::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Norm::Unbounded)
    }
}

/// A point of the transform variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinPoint<T> {
    pub s: Complex<T>,
}

impl<T: Real> MellinPoint<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { s: Complex::new(re, im) }
    }

    pub fn real(re: T) -> Self {
        Self::new(re, T::zero())
    }
}

/// 512 points, `|t|` log-spaced over `[1e-3, 1e3]`, both signs, ascending.
pub fn default_t_grid<T: Real>() -> Vec<T> {
    log_grid(T::lit(1e-3), T::lit(1e3), 256)
}

/// `n` log-spaced magnitudes in `[lo, hi]`, mirrored to negative values, ascending.
pub fn log_grid<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let (a, b) = (lo.ln(), hi.ln());
    let denom = T::from_usize_lossy(n.max(2) - 1);
    let pos: Vec<T> = (0..n).map(|i| (a + (b - a) * T::from_usize_lossy(i) / denom).exp()).collect();
    pos.iter().rev().map(|&t| -t).chain(pos.iter().copied()).collect()
}

/// ∫_0^∞ x^{s−1} f(x) dx as two real integrals.
pub fn mellin_numeric<T: Real>(f: &FunctionHandle<T>, s: MellinPoint<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    let (sigma, tau) = (s.s.re, s.s.im);
    let one = T::one();
    let support = f.support();
    let lo = support.lower();
    let re = |x: T| -> Result<T> {
        let v = f.eval(x)?;
        Ok(if v == T::zero() { v } else { x.powf(sigma - one) * (tau * x.ln()).cos() * v })
    };
    let im = |x: T| -> Result<T> {
        let v = f.eval(x)?;
        Ok(if v == T::zero() { v } else { x.powf(sigma - one) * (tau * x.ln()).sin() * v })
    };
    let mut pieces: Vec<(Domain<T>, SingularityPolicy<T>)> = Vec::new();
    let head_end = match support.upper() {
        Some(hi) => hi,
        None => lo.max(one),
    };
    if lo == T::zero() {
        let p = f.origin().unwrap_or(T::zero()) + sigma - one;
        if p <= -one {
            return Err(Error::Domain(format!("x^(s−1) f is not integrable at 0 for Re s = {sigma}")));
        }
        let policy = if p == p.round() && p >= T::zero() { SingularityPolicy::None } else { SingularityPolicy::LeftAlgebraic(p) };
        pieces.push((Domain::Finite { lo, hi: head_end }, policy));
    } else {
        pieces.push((Domain::Finite { lo, hi: head_end }, SingularityPolicy::None));
    }
    if support.upper().is_none() {
        match f.tail() {
            Tail::Exponential(lambda) => {
                // e^{−λt} t^{σ−1} drops below e^{−60} well before this point
                let hi = head_end + (T::lit(60.0) + (sigma - one).max(T::zero()) * T::lit(10.0)) / lambda;
                pieces.push((Domain::Finite { lo: head_end, hi }, SingularityPolicy::None));
            }
            Tail::Algebraic(p) => {
                let decay = -(p + sigma - one);
                pieces.push((Domain::AlgebraicTail { lo: head_end, decay }, SingularityPolicy::None));
            }
            Tail::None => {
                return Err(Error::BadSupport("unbounded support needs a declared tail".into()));
            }
        }
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    for (domain, policy) in pieces {
        let config = cfg.with_policy(policy);
        let r = run(&IntegralTask { integrand: &re, domain, config })?.value;
        let i = if tau == T::zero() { T::zero() } else { run(&IntegralTask { integrand: &im, domain, config })?.value };
        acc = acc + Complex::new(r, i);
    }
    Ok(acc)
}

/// sup over `t_grid` of `|m(1/2 + it)|`, or `Unbounded` when the values diverge.
pub fn plancherel_norm<T: Real>(m: &MellinMultiplier<T>, t_grid: &[T]) -> Result<Norm<T>> {
    plancherel_sup(|t| m.critical_line(t), t_grid)
}

/// As [`plancherel_norm`] for any critical-line evaluator.
///
/// Divergence means a non-finite value, a value above [`DIVERGENCE_THRESHOLD`],
/// or values that grow monotonically toward either end of the grid (per sign of
/// `t`) with log-log slope at least [`DIVERGENCE_SLOPE`].
pub fn plancherel_sup<T: Real, F: Fn(T) -> Result<Complex<T>>>(m: F, t_grid: &[T]) -> Result<Norm<T>> {
    if t_grid.is_empty() {
        return Err(Error::Spec("empty t grid".into()));
    }
    let mut samples: Vec<(T, T)> = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let v = match m(t) {
            Ok(v) => v.norm(),
            Err(Error::Pole(_)) => return Ok(Norm::Unbounded),
            Err(e) => return Err(e),
        };
        if !v.is_finite() || v > T::lit(DIVERGENCE_THRESHOLD) {
            return Ok(Norm::Unbounded);
        }
        samples.push((t, v));
    }
    for sign in [T::one(), -T::one()] {
        let mut branch: Vec<(T, T)> =
            samples.iter().filter(|(t, _)| *t * sign > T::zero()).map(|&(t, v)| (t.abs(), v)).collect();
        branch.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        if branch.len() < END_POINTS {
            continue;
        }
        let low = &branch[..END_POINTS];
        if diverges(low.iter().rev()) {
            return Ok(Norm::Unbounded);
        }
        let high = &branch[branch.len() - END_POINTS..];
        if diverges(high.iter()) {
            return Ok(Norm::Unbounded);
        }
    }
    let sup = samples.iter().fold(T::zero(), |m, &(_, v)| m.max(v));
    Ok(Norm::Finite(sup))
}

/// Values strictly increase along the iterator and grow at least like |t|^{slope}.
fn diverges<'a, T: Real + 'a>(it: impl DoubleEndedIterator<Item = &'a (T, T)> + Clone) -> bool {
    let pts: Vec<(T, T)> = it.copied().collect();
    if pts.windows(2).any(|w| !(w[1].1 > w[0].1)) {
        return false;
    }
    let (first, last) = (pts[0], pts[pts.len() - 1]);
    if !(first.1 > T::zero()) {
        return false;
    }
    let slope = (last.1 / first.1).ln() / (last.0 / first.0).ln().abs();
    slope >= T::lit(DIVERGENCE_SLOPE)
}
