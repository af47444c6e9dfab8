//! Adaptive Gauss–Kronrod quadrature with endpoint-singularity and tail handling.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Known algebraic endpoint behaviour of an integrand, `|t − end|^p` with `p > −1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub enum SingularityPolicy<T> {
    #[default]
    None,
    LeftAlgebraic(T),
    RightAlgebraic(T),
    BothAlgebraic(T, T),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
    pub singularity_policy: SingularityPolicy<T>,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::tol(1e-10, 100.0),
            abs_tol: T::tol(1e-12, 10.0),
            max_subdivisions: 200,
            singularity_policy: SingularityPolicy::None,
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn with_tolerances(rel_tol: T, abs_tol: T) -> Self {
        Self { rel_tol, abs_tol, ..Self::default() }
    }

    pub fn with_policy(mut self, policy: SingularityPolicy<T>) -> Self {
        self.singularity_policy = policy;
        self
    }

    /// Same tolerances, no endpoint policy.
    pub fn plain(&self) -> Self {
        Self { singularity_policy: SingularityPolicy::None, ..*self }
    }

    /// Tolerances scaled by `factor` (used for outer integrals of nested quadrature).
    pub fn relaxed(&self, factor: T) -> Self {
        Self { rel_tol: self.rel_tol * factor, abs_tol: self.abs_tol * factor, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero() && self.abs_tol >= T::zero()) {
            return Err(Error::Spec("quadrature tolerances must be positive".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Spec("max_subdivisions must be at least 1".into()));
        }
        let bad = |p: T| p <= -T::one();
        match self.singularity_policy {
            SingularityPolicy::LeftAlgebraic(p) | SingularityPolicy::RightAlgebraic(p) if bad(p) => {
                Err(Error::Spec(format!("endpoint exponent {p} is not integrable")))
            }
            SingularityPolicy::BothAlgebraic(p, q) if bad(p) || bad(q) => {
                Err(Error::Spec("endpoint exponent is not integrable".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Why a finite interval may stand in for a longer one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Truncation<T> {
    /// The integrand vanishes outside the interval.
    CompactSupport,
    /// The neglected part is bounded by the given value.
    TailBound(T),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Domain<T> {
    Finite { lo: T, hi: T },
    Truncated { lo: T, hi: T, reason: Truncation<T> },
    /// `[lo, ∞)` with `|f(t)| = O(t^{−decay})`, `decay > 1`.
    AlgebraicTail { lo: T, decay: T },
}

pub struct IntegralTask<'a, T> {
    pub integrand: &'a dyn Fn(T) -> Result<T>,
    pub domain: Domain<T>,
    pub config: QuadratureConfig<T>,
}

impl<T> fmt::Debug for IntegralTask<'_, T>
where
    T: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegralTask").field("domain", &self.domain).field("config", &self.config).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
    pub evaluations: usize,
    pub subdivisions: usize,
}

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    splittable: bool,
}

fn finite_or_err<T: Real>(t: T, v: T) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(t.as_f64()))
    }
}

fn gk15<T: Real>(f: &dyn Fn(T) -> Result<T>, a: T, b: T) -> Result<(T, T)> {
    let half = T::lit(0.5);
    let c = (a + b) * half;
    let h = (b - a) * half;
    let fc = finite_or_err(c, f(c)?)?;
    let mut resk = fc * T::lit(WGK[7]);
    let mut resg = fc * T::lit(WG[3]);
    let mut resabs = resk.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = h * T::lit(XGK[j]);
        let (t1, t2) = (c - dx, c + dx);
        let f1 = finite_or_err(t1, f(t1)?)?;
        let f2 = finite_or_err(t2, f(t2)?)?;
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        resk = resk + w * (f1 + f2);
        resabs = resabs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg = resg + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = resk * half;
    let mut resasc = T::lit(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        resasc = resasc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != T::zero() && err != T::zero() {
        let r = (T::lit(200.0) * err / resasc).powf(T::lit(1.5));
        err = resasc * if r < T::one() { r } else { T::one() };
    }
    let floor = T::lit(50.0) * T::epsilon() * resabs;
    if resabs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) && floor > err {
        err = floor;
    }
    Ok((value, err))
}

fn adaptive<T: Real>(f: &dyn Fn(T) -> Result<T>, a: T, b: T, cfg: &QuadratureConfig<T>) -> Result<Estimate<T>> {
    if a == b {
        return Ok(Estimate { value: T::zero(), error: T::zero(), evaluations: 0, subdivisions: 0 });
    }
    let (v, e) = gk15(f, a, b)?;
    let mut panels = vec![Panel { a, b, value: v, error: e, splittable: true }];
    let mut evaluations = 15;
    loop {
        let total: T = panels.iter().fold(T::zero(), |s, p| s + p.value);
        let err: T = panels.iter().fold(T::zero(), |s, p| s + p.error);
        let target = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if err <= target {
            return Ok(Estimate { value: total, error: err, evaluations, subdivisions: panels.len() });
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable)
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            // Only panels at the resolution limit remain; report what we have.
            return Ok(Estimate { value: total, error: err, evaluations, subdivisions: panels.len() });
        };
        if panels.len() >= cfg.max_subdivisions {
            return Err(Error::NoConvergence(format!(
                "quadrature on [{a}, {b}]: {} subintervals, estimate {total}, error {err} > {target}",
                panels.len()
            )));
        }
        let p = panels.swap_remove(i);
        let m = (p.a + p.b) * T::lit(0.5);
        let tiny = T::lit(100.0) * T::epsilon() * (p.a.abs() + p.b.abs()) + T::min_positive_value();
        if (p.b - p.a).abs() <= tiny || m == p.a || m == p.b {
            panels.push(Panel { splittable: false, ..p });
            continue;
        }
        let (v1, e1) = gk15(f, p.a, m)?;
        let (v2, e2) = gk15(f, m, p.b)?;
        evaluations += 30;
        panels.push(Panel { a: p.a, b: m, value: v1, error: e1, splittable: true });
        panels.push(Panel { a: m, b: p.b, value: v2, error: e2, splittable: true });
    }
}

/// ∫_lo^hi with an algebraic left endpoint `(t − lo)^p`, via t = lo + L u^{1/(p+1)}.
fn left_algebraic<T: Real>(
    f: &dyn Fn(T) -> Result<T>,
    lo: T,
    hi: T,
    p: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Estimate<T>> {
    let q = T::one() / (p + T::one());
    let len = hi - lo;
    // ∫_0^len s^p g ds with s = len·u^q: ds = len q u^{q−1} du and s^p = len^p u^{pq}
    // so the weight collapses to len^{p+1} q.
    let g = move |u: T| -> Result<T> {
        if u <= T::zero() {
            return Ok(T::zero());
        }
        let s = len * u.powf(q);
        let t = lo + s;
        if t >= hi {
            return Ok(T::zero());
        }
        let v = f(t)?;
        // v ~ s^p · smooth; multiply by ds/du = len q u^{q−1}
        Ok(v * len * q * u.powf(q - T::one()))
    };
    adaptive(&g, T::zero(), T::one(), cfg)
}

fn right_algebraic<T: Real>(
    f: &dyn Fn(T) -> Result<T>,
    lo: T,
    hi: T,
    p: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Estimate<T>> {
    let q = T::one() / (p + T::one());
    let len = hi - lo;
    let g = move |u: T| -> Result<T> {
        if u <= T::zero() {
            return Ok(T::zero());
        }
        let t = hi - len * u.powf(q);
        if t <= lo {
            return Ok(T::zero());
        }
        Ok(f(t)? * len * q * u.powf(q - T::one()))
    };
    adaptive(&g, T::zero(), T::one(), cfg)
}

fn finite_with_policy<T: Real>(
    f: &dyn Fn(T) -> Result<T>,
    lo: T,
    hi: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Estimate<T>> {
    if hi < lo {
        let e = finite_with_policy(f, hi, lo, cfg)?;
        return Ok(Estimate { value: -e.value, ..e });
    }
    match cfg.singularity_policy {
        SingularityPolicy::None => adaptive(f, lo, hi, cfg),
        SingularityPolicy::LeftAlgebraic(p) => left_algebraic(f, lo, hi, p, cfg),
        SingularityPolicy::RightAlgebraic(p) => right_algebraic(f, lo, hi, p, cfg),
        SingularityPolicy::BothAlgebraic(p, q) => {
            let m = (lo + hi) * T::lit(0.5);
            let a = left_algebraic(f, lo, m, p, cfg)?;
            let b = right_algebraic(f, m, hi, q, cfg)?;
            Ok(combine(a, b))
        }
    }
}

fn combine<T: Real>(a: Estimate<T>, b: Estimate<T>) -> Estimate<T> {
    Estimate {
        value: a.value + b.value,
        error: a.error + b.error,
        evaluations: a.evaluations + b.evaluations,
        subdivisions: a.subdivisions + b.subdivisions,
    }
}

/// Evaluates an [`IntegralTask`].
pub fn run<T: Real>(task: &IntegralTask<'_, T>) -> Result<Estimate<T>> {
    task.config.validate()?;
    match task.domain {
        Domain::Finite { lo, hi } | Domain::Truncated { lo, hi, .. } => {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::Domain("finite domain with infinite endpoint".into()));
            }
            let e = finite_with_policy(task.integrand, lo, hi, &task.config)?;
            if let Domain::Truncated { reason: Truncation::TailBound(b), .. } = task.domain {
                return Ok(Estimate { error: e.error + b.abs(), ..e });
            }
            Ok(e)
        }
        Domain::AlgebraicTail { lo, decay } => {
            if decay <= T::one() {
                return Err(Error::Domain(format!("tail decay exponent {decay} ≤ 1 is not integrable")));
            }
            let scale = lo.abs().max(T::one());
            let mid = lo + scale;
            let head = finite_with_policy(task.integrand, lo, mid, &task.config)?;
            // t = mid + scale (u^{−q} − 1), q = 1/(decay − 1): bounded integrand in u
            let q = T::one() / (decay - T::one());
            let f = task.integrand;
            let g = move |u: T| -> Result<T> {
                if u <= T::zero() {
                    return Ok(T::zero());
                }
                let uq = u.powf(-q);
                let t = mid + scale * (uq - T::one());
                if !t.is_finite() {
                    return Ok(T::zero());
                }
                let v = f(t)?;
                Ok(v * scale * q * uq / u)
            };
            let tail = adaptive(&g, T::zero(), T::one(), &task.config.plain())?;
            Ok(combine(head, tail))
        }
    }
}

/// ∫_lo^hi f, with the configured endpoint policy.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, cfg: &QuadratureConfig<T>) -> Result<Estimate<T>> {
    let g = |t: T| Ok(f(t));
    run(&IntegralTask { integrand: &g, domain: Domain::Finite { lo, hi }, config: *cfg })
}

/// As [`integrate`] for an integrand that may itself fail.
pub fn try_integrate<T: Real, F: Fn(T) -> Result<T>>(
    f: F,
    lo: T,
    hi: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Estimate<T>> {
    run(&IntegralTask { integrand: &f, domain: Domain::Finite { lo, hi }, config: *cfg })
}

/// Which side of the evaluation point the integration range lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// ∫_{other}^{x} (x − t)^{α−1} f(t) dt
    Left,
    /// ∫_{x}^{other} (t − x)^{α−1} f(t) dt
    Right,
}

/// Integral with the edge weight `|t − x|^{α−1}` at the evaluation point `x`.
///
/// For `α < 1` the substitution `u = |t − x|^α` removes the singularity;
/// the far endpoint `other` is treated with `cfg.singularity_policy`
/// mapped to that end.
pub fn integrate_singular_edge<T: Real, F: Fn(T) -> Result<T>>(
    f: F,
    x: T,
    other: T,
    alpha: T,
    side: Side,
    cfg: &QuadratureConfig<T>,
) -> Result<Estimate<T>> {
    if alpha <= T::zero() {
        return Err(Error::Domain(format!("edge exponent α − 1 with α = {alpha} is not integrable")));
    }
    let len = match side {
        Side::Left => x - other,
        Side::Right => other - x,
    };
    if len < T::zero() {
        return Err(Error::Domain(format!("integration range [{x}, {other}] has the wrong orientation")));
    }
    if len == T::zero() {
        return Ok(Estimate { value: T::zero(), error: T::zero(), evaluations: 0, subdivisions: 0 });
    }
    let point = |s: T| match side {
        Side::Left => x - s,
        Side::Right => x + s,
    };
    let far = match cfg.singularity_policy {
        SingularityPolicy::LeftAlgebraic(p) if side == Side::Left => Some(p),
        SingularityPolicy::RightAlgebraic(p) if side == Side::Right => Some(p),
        SingularityPolicy::None => None,
        _ => return Err(Error::Spec("singularity policy must describe the far endpoint".into())),
    };
    let plain = cfg.plain();
    let near_weight_free = alpha >= T::one();
    // Split so that the edge map and the far-end map each see one singular end.
    let split = if far.is_some() { len * T::lit(0.5) } else { len };
    let near = if near_weight_free {
        let g = |s: T| -> Result<T> { Ok(s.powf(alpha - T::one()) * f(point(s))?) };
        adaptive(&g, T::zero(), split, &plain)?
    } else {
        // s = u^{1/α}: (s)^{α−1} ds = du/α
        let inv = T::one() / alpha;
        let g = |u: T| -> Result<T> {
            if u <= T::zero() {
                return f(point(T::zero()));
            }
            Ok(f(point(u.powf(inv)))? * inv)
        };
        adaptive(&g, T::zero(), split.powf(alpha), &plain)?
    };
    let Some(p) = far else {
        return Ok(near);
    };
    let g = |s: T| -> Result<T> { Ok(s.powf(alpha - T::one()) * f(point(s))?) };
    let far_part = right_algebraic(&g, split, len, p, &plain)?;
    Ok(combine(near, far_part))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_smooth() {
        let cfg = QuadratureConfig::<f64>::default();
        let e = integrate(|t| t * t * t, 0.0, 2.0, &cfg).unwrap();
        assert!((e.value - 4.0).abs() < 1e-14);
        let e = integrate(|t: f64| t.sin(), 0.0, std::f64::consts::PI, &cfg).unwrap();
        assert!((e.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn algebraic_endpoints() {
        let cfg = QuadratureConfig::<f64>::default().with_policy(SingularityPolicy::LeftAlgebraic(-0.5));
        let e = integrate(|t: f64| 1.0 / t.sqrt(), 0.0, 4.0, &cfg).unwrap();
        assert!((e.value - 4.0).abs() < 1e-12, "{}", e.value);
        let cfg = QuadratureConfig::<f64>::default().with_policy(SingularityPolicy::BothAlgebraic(-0.5, -0.5));
        let e = integrate(|t: f64| 1.0 / (t * (1.0 - t)).sqrt(), 0.0, 1.0, &cfg).unwrap();
        assert!((e.value - std::f64::consts::PI).abs() < 1e-12, "{}", e.value);
    }

    #[test]
    fn edge_weight_matches_beta() {
        // ∫_0^1 (1 − t)^{α−1} t dt = B(2, α) = 1/(α(α+1))
        let cfg = QuadratureConfig::<f64>::default();
        for &a in &[0.1_f64, 0.5, 0.9, 1.0, 2.5] {
            let e = integrate_singular_edge(|t| Ok(t), 1.0, 0.0, a, Side::Left, &cfg).unwrap();
            assert!((e.value - 1.0 / (a * (a + 1.0))).abs() < 1e-12, "α = {a}: {}", e.value);
            let e = integrate_singular_edge(|t| Ok(1.0 - t), 0.0, 1.0, a, Side::Right, &cfg).unwrap();
            assert!((e.value - 1.0 / (a * (a + 1.0))).abs() < 1e-12);
        }
        // both ends singular: ∫_0^1 (1−t)^{−0.3} t^{−0.6} dt = B(0.4, 0.7)
        let cfg = QuadratureConfig::<f64>::default().with_policy(SingularityPolicy::LeftAlgebraic(-0.6));
        let e = integrate_singular_edge(|t: f64| Ok(t.powf(-0.6)), 1.0, 0.0, 0.7, Side::Left, &cfg).unwrap();
        let exact = crate::specfun::gamma_ratio(&[0.4, 0.7], &[1.1]).unwrap();
        assert!((e.value - exact).abs() < 1e-10 * exact, "{} vs {exact}", e.value);
    }

    #[test]
    fn reciprocal_gamma_oracle() {
        let cfg = QuadratureConfig::<f64>::default();
        let e = try_integrate(|t: f64| Ok(crate::specfun::rgamma(t + 1.0)), 0.5, 1.0, &cfg).unwrap();
        assert!((e.value - 0.540_051_756_552_725).abs() < 1e-12);
    }

    #[test]
    fn tails() {
        let cfg = QuadratureConfig::<f64>::default();
        let f = |t: f64| Ok(1.0 / (1.0 + t * t));
        let e = run(&IntegralTask { integrand: &f, domain: Domain::AlgebraicTail { lo: 0.0, decay: 2.0 }, config: cfg })
            .unwrap();
        assert!((e.value - std::f64::consts::FRAC_PI_2).abs() < 1e-11, "{}", e.value);
        let g = |t: f64| Ok((-t).exp());
        let hi = (1.0 / cfg.abs_tol).ln();
        let e = run(&IntegralTask {
            integrand: &g,
            domain: Domain::Truncated { lo: 0.0, hi, reason: Truncation::TailBound((-hi).exp()) },
            config: cfg,
        })
        .unwrap();
        assert!((e.value - 1.0).abs() < 2e-12);
    }

    #[test]
    fn non_finite_and_budget_errors() {
        let cfg = QuadratureConfig::<f64>::default();
        assert!(matches!(integrate(|t: f64| if t < 0.5 { f64::NAN } else { t }, 0.0, 1.0, &cfg), Err(Error::NonFinite(_))));
        let bad = QuadratureConfig { max_subdivisions: 3, ..cfg };
        assert!(matches!(integrate(|t: f64| (50.0 * t).sin().abs(), 0.0, 10.0, &bad), Err(Error::NoConvergence(_))));
        let cfg = cfg.with_policy(SingularityPolicy::LeftAlgebraic(-1.5));
        assert!(matches!(integrate(|t: f64| t, 0.0, 1.0, &cfg), Err(Error::Spec(_))));
    }
}
