//! Operand functions: values, derivatives and support metadata.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub type RealFn<T> = Arc<dyn Fn(T) -> Result<T> + Send + Sync>;

/// Where a handle may be non-zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Support<T> {
    /// `[lo, hi]` with `0 < lo < hi < ∞`.
    Compact { lo: T, hi: T },
    /// `(0, hi]`.
    UpTo(T),
    /// `[lo, ∞)`.
    From(T),
    /// `(0, ∞)`.
    HalfAxis,
}

impl<T: Real> Support<T> {
    pub fn lower(&self) -> T {
        match *self {
            Support::Compact { lo, .. } | Support::From(lo) => lo,
            _ => T::zero(),
        }
    }

    pub fn upper(&self) -> Option<T> {
        match *self {
            Support::Compact { hi, .. } | Support::UpTo(hi) => Some(hi),
            _ => None,
        }
    }

    /// True when the handle is identically zero at `x` by declaration.
    pub fn excludes(&self, x: T) -> bool {
        x < self.lower() || self.upper().is_some_and(|h| x > h)
    }

    /// Support reaches down to the origin.
    pub fn touches_origin(&self) -> bool {
        self.lower() == T::zero()
    }
}

/// Behaviour toward +∞ for handles whose support is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Tail<T> {
    /// Bounded support; nothing to truncate.
    None,
    /// `|f(t)| ≤ C e^{−λt}`.
    Exponential(T),
    /// `|f(t)| ~ t^p`.
    Algebraic(T),
}

/// An evaluable real function on the half-axis.
///
/// Closed-form derivatives are used up to [`closed_order`](Self::closed_order);
/// beyond that, up to [`max_order`](Self::max_order), derivatives come from
/// Richardson-extrapolated central differences with step `1e-4·max(1, |x|)`.
#[derive(Clone)]
pub struct FunctionHandle<T: Real> {
    label: String,
    value: RealFn<T>,
    derivs: Vec<RealFn<T>>,
    support: Support<T>,
    max_order: usize,
    tail: Tail<T>,
    origin: Option<T>,
}

impl<T: Real> fmt::Debug for FunctionHandle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("label", &self.label)
            .field("support", &self.support)
            .field("closed_order", &self.derivs.len())
            .field("max_order", &self.max_order)
            .field("tail", &self.tail)
            .field("origin", &self.origin)
            .finish()
    }
}

impl<T: Real> FunctionHandle<T> {
    pub fn new(label: impl Into<String>, value: RealFn<T>) -> Self {
        Self {
            label: label.into(),
            value,
            derivs: Vec::new(),
            support: Support::HalfAxis,
            max_order: 0,
            tail: Tail::None,
            origin: None,
        }
    }

    /// Closed-form derivatives; `derivs[k − 1]` is the k-th.
    pub fn with_derivatives(mut self, derivs: Vec<RealFn<T>>) -> Self {
        self.max_order = self.max_order.max(derivs.len());
        self.derivs = derivs;
        self
    }

    pub fn with_support(mut self, support: Support<T>) -> Self {
        self.support = support;
        self
    }

    pub fn with_max_order(mut self, order: usize) -> Self {
        self.max_order = order.max(self.derivs.len());
        self
    }

    pub fn with_tail(mut self, tail: Tail<T>) -> Self {
        self.tail = tail;
        self
    }

    /// Declares `f(t) ~ t^p` as `t → 0+`.
    pub fn with_origin(mut self, p: Option<T>) -> Self {
        self.origin = p;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn support(&self) -> Support<T> {
        self.support
    }

    pub fn tail(&self) -> Tail<T> {
        self.tail
    }

    pub fn origin(&self) -> Option<T> {
        self.origin
    }

    pub fn closed_order(&self) -> usize {
        self.derivs.len()
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn eval(&self, x: T) -> Result<T> {
        if self.support.excludes(x) {
            return Ok(T::zero());
        }
        (self.value)(x)
    }

    /// k-th derivative at `x`; `k = 0` is the value.
    pub fn derivative(&self, k: usize, x: T) -> Result<T> {
        if k == 0 {
            return self.eval(x);
        }
        if k > self.max_order {
            return Err(Error::InsufficientSmoothness {
                order: k,
                reason: format!("{} provides derivatives up to order {}", self.label, self.max_order),
            });
        }
        if self.support.excludes(x) {
            return Ok(T::zero());
        }
        let closed = self.derivs.len();
        if k <= closed {
            return (self.derivs[k - 1])(x);
        }
        let base = closed;
        let g = |t: T| self.raw_derivative(base, t);
        richardson(&g, k - base, x)
    }

    fn raw_derivative(&self, k: usize, x: T) -> Result<T> {
        if self.support.excludes(x) {
            return Ok(T::zero());
        }
        if k == 0 {
            (self.value)(x)
        } else {
            (self.derivs[k - 1])(x)
        }
    }

    /// Handle for the k-th derivative.
    pub fn derivative_handle(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k > self.max_order {
            return Err(Error::InsufficientSmoothness { order: k, reason: self.label.clone() });
        }
        let me = self.clone();
        let value: RealFn<T> = Arc::new(move |x| me.derivative(k, x));
        let mut derivs: Vec<RealFn<T>> = Vec::new();
        for j in 1..=self.derivs.len().saturating_sub(k) {
            let me = self.clone();
            derivs.push(Arc::new(move |x| me.derivative(k + j, x)));
        }
        let origin = self.origin.map(|p| p - T::from_usize_lossy(k));
        let tail = match self.tail {
            Tail::Algebraic(p) => Tail::Algebraic(p - T::from_usize_lossy(k)),
            t => t,
        };
        Ok(FunctionHandle::new(format!("d^{k} {}", self.label), value)
            .with_derivatives(derivs)
            .with_max_order(self.max_order - k)
            .with_support(self.support)
            .with_tail(tail)
            .with_origin(origin))
    }

    /// Parses `bump:c=2,r=1[,amp=1]`, `pow:m=-2`, `exp:l=1`, `tpow:m=-2,R=1e4`, `cut:m=0.5,b=1`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut kv = std::collections::BTreeMap::new();
        for part in rest.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Spec(format!("expected key=value in `{part}`")))?;
            let v: f64 = v.trim().parse().map_err(|_| Error::Spec(format!("bad number `{v}` in `{spec}`")))?;
            kv.insert(k.trim().to_string(), T::lit(v));
        }
        let get = |k: &str| kv.get(k).copied().ok_or_else(|| Error::Spec(format!("`{spec}` lacks `{k}`")));
        let h = match kind.trim() {
            "bump" => make_bump(BumpSpec {
                center: get("c")?,
                radius: get("r")?,
                amplitude: kv.get("amp").copied().unwrap_or_else(T::one),
            })?,
            "pow" => make_monomial(get("m")?),
            "exp" => make_exponential(get("l")?)?,
            "tpow" => make_truncated_monomial(get("m")?, get("R")?)?,
            "cut" => make_monomial(get("m")?).restricted_to(get("b")?)?,
            other => return Err(Error::Spec(format!("unknown function kind `{other}`"))),
        };
        Ok(h.with_label(spec.to_string()))
    }

    /// Hard truncation to `(0, b]`; derivatives are those of the original inside.
    pub fn restricted_to(self, b: T) -> Result<Self> {
        if !(b > T::zero()) {
            return Err(Error::BadSupport(format!("truncation point {b} must be positive")));
        }
        let lo = self.support.lower();
        let support = if lo > T::zero() { Support::Compact { lo, hi: b } } else { Support::UpTo(b) };
        Ok(Self { support, tail: Tail::None, ..self })
    }
}

fn richardson<T: Real>(g: &dyn Fn(T) -> Result<T>, k: usize, x: T) -> Result<T> {
    richardson_derivative(g, k, x, T::lit(1e-4) * x.abs().max(T::one()))
}

/// k-th central difference of `g` at `x` with step `h` and one Richardson step.
///
/// Pick `h` to balance the O(h⁴) truncation against the noise of `g`.
pub fn richardson_derivative<T: Real>(g: &dyn Fn(T) -> Result<T>, k: usize, x: T, h: T) -> Result<T> {
    let d1 = central(g, k, x, h)?;
    let d2 = central(g, k, x, h * T::lit(0.5))?;
    let v = (T::lit(4.0) * d2 - d1) / T::lit(3.0);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Stencil(format!("non-finite order-{k} difference at x = {x}")))
    }
}

fn central<T: Real>(g: &dyn Fn(T) -> Result<T>, k: usize, x: T, h: T) -> Result<T> {
    // Δ^k g(x) = Σ_i (−1)^i C(k, i) g(x + (k/2 − i) h)
    let mut acc = T::zero();
    let mut binom = T::one();
    let kf = T::from_usize_lossy(k);
    for i in 0..=k {
        let fi = T::from_usize_lossy(i);
        let t = x + (kf * T::lit(0.5) - fi) * h;
        let v = g(t)?;
        let s = if i % 2 == 0 { T::one() } else { -T::one() };
        acc = acc + s * binom * v;
        binom = binom * (kf - fi) / (fi + T::one());
    }
    Ok(acc / h.powi(k as i32))
}

/// x^m on the half-axis, all derivatives closed-form.
pub fn make_monomial<T: Real>(m: T) -> FunctionHandle<T> {
    const ORDERS: usize = 8;
    let value: RealFn<T> = Arc::new(move |x: T| Ok(x.powf(m)));
    let derivs = (1..=ORDERS)
        .map(|k| -> RealFn<T> {
            let mut c = T::one();
            for j in 0..k {
                c = c * (m - T::from_usize_lossy(j));
            }
            let p = m - T::from_usize_lossy(k);
            Arc::new(move |x: T| Ok(if c == T::zero() { T::zero() } else { c * x.powf(p) }))
        })
        .collect();
    FunctionHandle::new(format!("x^{m}"), value)
        .with_derivatives(derivs)
        .with_support(Support::HalfAxis)
        .with_tail(Tail::Algebraic(m))
        .with_origin(Some(m))
}

/// e^{−λx}, all derivatives closed-form.
pub fn make_exponential<T: Real>(lambda: T) -> Result<FunctionHandle<T>> {
    if !(lambda > T::zero()) {
        return Err(Error::Domain(format!("exponential decay rate must be positive, got {lambda}")));
    }
    const ORDERS: usize = 8;
    let value: RealFn<T> = Arc::new(move |x: T| Ok((-lambda * x).exp()));
    let derivs = (1..=ORDERS)
        .map(|k| -> RealFn<T> {
            let c = (-lambda).powi(k as i32);
            Arc::new(move |x: T| Ok(c * (-lambda * x).exp()))
        })
        .collect();
    Ok(FunctionHandle::new(format!("exp(-{lambda}x)"), value)
        .with_derivatives(derivs)
        .with_support(Support::HalfAxis)
        .with_tail(Tail::Exponential(lambda))
        .with_origin(Some(T::zero())))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpSpec<T> {
    pub center: T,
    pub radius: T,
    pub amplitude: T,
}

impl<T: Real> BumpSpec<T> {
    pub fn new(center: T, radius: T) -> Self {
        Self { center, radius, amplitude: T::one() }
    }
}

/// φ^{(k)}(u)·q^{2k}/φ(u) for φ(u) = exp(1 − 1/q), q = 1 − u².
fn bump_poly<T: Real>(k: usize, u: T) -> T {
    let u2 = u * u;
    let c = |v: f64| T::lit(v);
    match k {
        1 => c(-2.0) * u,
        2 => c(6.0) * u2 * u2 - c(2.0),
        3 => u * (((c(-24.0) * u2 - c(12.0)) * u2 + c(40.0)) * u2 - c(12.0)),
        4 => ((((c(120.0) * u2 + c(180.0)) * u2 - c(528.0)) * u2 + c(232.0)) * u2 + c(24.0)) * u2 - c(12.0),
        _ => unreachable!("bump derivatives are closed-form up to order 4"),
    }
}

/// Peak-normalized C^∞ bump `amp·exp(1 − 1/(1 − u²))`, `u = (x − c)/r`.
pub fn make_bump<T: Real>(spec: BumpSpec<T>) -> Result<FunctionHandle<T>> {
    let BumpSpec { center, radius, amplitude } = spec;
    if !(radius > T::zero()) || !(center - radius > T::zero()) {
        return Err(Error::BadSupport(format!("bump [{}, {}] must lie in (0, ∞)", center - radius, center + radius)));
    }
    let eval_k = move |k: usize, x: T| -> Result<T> {
        let u = (x - center) / radius;
        let q = T::one() - u * u;
        if q <= T::zero() {
            return Ok(T::zero());
        }
        let inv = T::one() / q;
        if inv > T::lit(700.0) {
            return Ok(T::zero());
        }
        let phi = (T::one() - inv).exp();
        if k == 0 {
            return Ok(amplitude * phi);
        }
        let scale = radius.powi(-(k as i32));
        Ok(amplitude * phi * bump_poly(k, u) * inv.powi(2 * k as i32) * scale)
    };
    let value: RealFn<T> = Arc::new(move |x| eval_k(0, x));
    let derivs = (1..=4).map(|k| -> RealFn<T> { Arc::new(move |x| eval_k(k, x)) }).collect();
    Ok(FunctionHandle::new(format!("bump(c={center},r={radius})"), value)
        .with_derivatives(derivs)
        .with_max_order(8)
        .with_support(Support::Compact { lo: center - radius, hi: center + radius }))
}

/// Smooth step: 1 on `[0, 1]`, 0 on `[2, ∞)`.
fn smooth_step<T: Real>(s: T) -> T {
    if s <= T::one() {
        return T::one();
    }
    if s >= T::lit(2.0) {
        return T::zero();
    }
    let psi = |t: T| if t > T::zero() { (-T::one() / t).exp() } else { T::zero() };
    let a = psi(T::lit(2.0) - s);
    let b = psi(s - T::one());
    a / (a + b)
}

/// `x^m` smoothly cut off between `R` and `2R`.
pub fn make_truncated_monomial<T: Real>(m: T, cutoff: T) -> Result<FunctionHandle<T>> {
    if !(cutoff > T::zero()) {
        return Err(Error::BadSupport(format!("cutoff {cutoff} must be positive")));
    }
    let value: RealFn<T> = Arc::new(move |x: T| Ok(x.powf(m) * smooth_step(x / cutoff)));
    let d1: RealFn<T> = Arc::new(move |x: T| {
        // derivative of the step only matters on (R, 2R)
        let s = x / cutoff;
        let base = m * x.powf(m - T::one()) * smooth_step(s);
        if s <= T::one() || s >= T::lit(2.0) {
            return Ok(base);
        }
        let h = T::lit(1e-4) * x;
        let ds = (smooth_step((x + h) / cutoff) - smooth_step((x - h) / cutoff)) / (h + h);
        Ok(base + x.powf(m) * ds)
    });
    Ok(FunctionHandle::new(format!("x^{m}·cut({cutoff})"), value)
        .with_derivatives(vec![d1])
        .with_max_order(2)
        .with_support(Support::UpTo(cutoff * T::lit(2.0)))
        .with_origin(Some(m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_examples() {
        let one = make_monomial(0.0_f64);
        assert_eq!(one.eval(3.7).unwrap(), 1.0);
        assert_eq!(one.derivative(1, 3.7).unwrap(), 0.0);
        let sq = make_monomial(2.0_f64);
        assert_eq!(sq.derivative(2, 0.3).unwrap(), 2.0);
        assert_eq!(make_monomial(-2.0_f64).eval(0.5).unwrap(), 4.0);
    }

    #[test]
    fn bump_examples() {
        let b = make_bump(BumpSpec::new(2.0_f64, 1.0)).unwrap();
        assert_eq!(b.eval(2.0).unwrap(), 1.0);
        assert_eq!(b.eval(3.0).unwrap(), 0.0);
        assert_eq!(b.eval(1.0).unwrap(), 0.0);
        assert_eq!(b.eval(0.5).unwrap(), 0.0);
        assert_eq!(b.derivative(1, 2.0).unwrap(), 0.0);
        assert!(matches!(make_bump(BumpSpec::new(1.0_f64, 1.0)), Err(Error::BadSupport(_))));
    }

    #[test]
    fn exponential_examples() {
        let e = make_exponential(1.0_f64).unwrap();
        assert_eq!(e.eval(0.0).unwrap(), 1.0);
        assert_eq!(e.derivative(1, 0.0).unwrap(), -1.0);
        let e2 = make_exponential(2.0_f64).unwrap();
        assert!((e2.eval(2f64.ln() / 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(make_exponential(0.0_f64).is_err());
    }

    #[test]
    fn closed_form_derivatives_match_differences() {
        let b = make_bump(BumpSpec { center: 2.0_f64, radius: 0.8, amplitude: 1.3 }).unwrap();
        for i in 1..40 {
            let x = 1.2 + 1.6 * i as f64 / 40.0;
            for k in 1..=4 {
                let exact = b.derivative(k, x).unwrap();
                let g = |t: f64| b.derivative(k - 1, t);
                let fd = super::richardson(&g, 1, x).unwrap();
                assert!((exact - fd).abs() <= 1e-6 * exact.abs().max(1.0), "k = {k}, x = {x}: {exact} vs {fd}");
            }
        }
        // beyond the closed-form order the fallback kicks in
        let d5 = b.derivative(5, 2.1).unwrap();
        let g = |t: f64| b.derivative(4, t);
        let fd = super::richardson(&g, 1, 2.1).unwrap();
        assert!((d5 - fd).abs() < 1e-5 * fd.abs().max(1.0));
        assert!(matches!(b.derivative(9, 2.0), Err(Error::InsufficientSmoothness { .. })));
    }

    #[test]
    fn parse_specs() {
        let b = FunctionHandle::<f64>::parse("bump:c=2,r=1").unwrap();
        assert_eq!(b.eval(2.0).unwrap(), 1.0);
        let p = FunctionHandle::<f64>::parse("pow:m=-2").unwrap();
        assert_eq!(p.eval(0.5).unwrap(), 4.0);
        let e = FunctionHandle::<f64>::parse("exp:l=1").unwrap();
        assert_eq!(e.eval(0.0).unwrap(), 1.0);
        let c = FunctionHandle::<f64>::parse("cut:m=0.5,b=1").unwrap();
        assert_eq!(c.eval(1.5).unwrap(), 0.0);
        assert!(FunctionHandle::<f64>::parse("sinc:a=1").is_err());
        assert!(FunctionHandle::<f64>::parse("bump:c=2").is_err());
    }

    #[test]
    fn truncated_monomial_is_smooth_cutoff() {
        let t = make_truncated_monomial(-1.5_f64, 10.0).unwrap();
        assert_eq!(t.eval(5.0).unwrap(), 5f64.powf(-1.5));
        assert_eq!(t.eval(25.0).unwrap(), 0.0);
        let mid = t.eval(15.0).unwrap();
        assert!(mid > 0.0 && mid < 15f64.powf(-1.5));
    }
}
