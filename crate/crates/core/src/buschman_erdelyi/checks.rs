use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::classical::{liouville_right, rl_integral_left, rl_left_image, rl_right_image};
use crate::error::Result;
use crate::funcmodel::{richardson_derivative, FunctionHandle, RealFn};
use crate::mellin::{mellin_numeric, plancherel_norm, MellinPoint, Norm};
use crate::quadrature::QuadratureConfig;
use crate::report::{relative_error, VerificationReport};
use crate::scalar::Real;

use super::first_kind::{be_first_kind, BEParams, BeSide, Family};
use super::multiplier::{MellinMultiplier, Strip};
use super::third_kind::{be_third_kind, ThirdKind};
use super::zero_order::{be_zero_order, zero_order_image, ZeroOrder};

const FACTORIZATION_TOL: f64 = 1e-5;
const IDENTITY_TOL: f64 = 1e-8;
const UNITARY_TOL: f64 = 1e-8;
const INVERSE_TOL: f64 = 1e-5;
const MULTIPLIER_TOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-3;
const MELLIN_TOL: f64 = 1e-5;
const INTERTWINING_TOL: f64 = 1e-4;

/// Differential operator that a third-kind operator is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// `B_ν = D² + (ν/x) D`.
    BesselBnu,
    /// `L_ν = D² − ν(ν+1)/x²`.
    AngularLnu,
}

fn pairs_report<T: Real>(
    identity: String,
    grid: &[T],
    tol: f64,
    eval: impl Fn(T) -> Result<(T, T)>,
) -> VerificationReport {
    let mut pairs = Vec::with_capacity(grid.len());
    for &x in grid {
        match eval(x) {
            Ok(p) => pairs.push(p),
            Err(e) => return VerificationReport::failed(identity, tol, format!("x = {x}: {e}")),
        }
    }
    let scale = pairs.iter().fold(T::zero(), |m, p| m.max(p.1.abs()));
    // points where the reference nearly vanishes are measured against the grid scale
    let floor = scale * T::lit(1e-3);
    VerificationReport::compare(identity, grid, &pairs, floor.max(T::min_positive_value()), tol)
}

/// Every zero-order operator collapses to the identity at ν = 0.
pub fn be_identity_check<T: Real>(
    which: ZeroOrder,
    f: &FunctionHandle<T>,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    pairs_report(format!("{}^0 f = f", which.name()), grid, IDENTITY_TOL, |x| {
        Ok((be_zero_order(which, T::zero(), f, x, cfg)?, f.eval(x)?))
    })
}

/// First-kind operator against its factorization through a Riemann–Liouville
/// integral of order `1−μ` and a zero-order operator:
/// `B_{0+} = I^{1−μ}_{0+} S0plus`, `E_{0+} = P0plus I^{1−μ}_{0+}`,
/// `B_− = Pminus I^{1−μ}_−`, `E_− = I^{1−μ}_− Sminus`.
pub fn be_factorization_check<T: Real>(
    nu: T,
    mu: T,
    family: Family,
    side: BeSide,
    f: &FunctionHandle<T>,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let name = format!("factorization {family:?}_{side:?} ν={nu} μ={mu}");
    let params = match BEParams::new(nu, mu, side, family) {
        Ok(p) => p,
        Err(e) => return VerificationReport::failed(name, FACTORIZATION_TOL, e.to_string()),
    };
    let rho = T::one() - mu;
    let inner = match (side, family) {
        (BeSide::ZeroPlus, Family::B) => zero_order_image(ZeroOrder::S0plus, nu, f, cfg),
        (BeSide::ZeroPlus, Family::E) => rl_left_image(f, T::zero(), -rho, cfg),
        (BeSide::Minus, Family::B) => rl_right_image(f, -rho, cfg),
        (BeSide::Minus, Family::E) => zero_order_image(ZeroOrder::Sminus, nu, f, cfg),
    };
    let inner = match inner {
        Ok(h) => h,
        Err(e) => return VerificationReport::failed(name, FACTORIZATION_TOL, e.to_string()),
    };
    pairs_report(name, grid, FACTORIZATION_TOL, |x| {
        let lhs = be_first_kind(&params, f, x, cfg)?;
        let rhs = match (side, family) {
            (BeSide::ZeroPlus, Family::B) => rl_integral_left(&inner, T::zero(), rho, x, cfg)?,
            (BeSide::ZeroPlus, Family::E) => be_zero_order(ZeroOrder::P0plus, nu, &inner, x, cfg)?,
            (BeSide::Minus, Family::B) => be_zero_order(ZeroOrder::Pminus, nu, &inner, x, cfg)?,
            (BeSide::Minus, Family::E) => liouville_right(&inner, rho, x, cfg)?,
        };
        Ok((lhs, rhs))
    })
}

/// `|m(1/2 + it)| = 1` over the grid; the sup is recorded as a norm estimate.
pub fn be_unitarity_check<T: Real>(which: ZeroOrder, nu: T, t_grid: &[T]) -> VerificationReport {
    let m = MellinMultiplier::new(which, nu);
    let name = format!("|m_{}(1/2+it)| = 1, ν={nu}", which.name());
    let mut errors = Vec::with_capacity(t_grid.len());
    let mut sup = 0.0_f64;
    for &t in t_grid {
        let e = match m.critical_line(t) {
            Ok(v) => {
                let a = v.norm().as_f64();
                sup = sup.max(a);
                (a - 1.0).abs()
            }
            Err(_) => f64::INFINITY,
        };
        errors.push(e);
    }
    let grid = t_grid.iter().map(|t| t.as_f64()).collect();
    let mut r = VerificationReport::from_errors(name, grid, &errors, UNITARY_TOL).with_note(format!("sup |m| = {sup:.12}"));
    if !m.validity_strip().contains(T::lit(0.5)) {
        r = r.with_note(format!("Re s = 1/2 outside {}; continued multiplier used", m.validity_strip()));
    }
    r
}

/// `P0plus ∘ S0plus = id` or `Pminus ∘ Sminus = id` on the grid.
pub fn be_inverse_pair_check<T: Real>(
    first: ZeroOrder,
    nu: T,
    f: &FunctionHandle<T>,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let second = match first {
        ZeroOrder::S0plus => ZeroOrder::P0plus,
        ZeroOrder::P0plus => ZeroOrder::S0plus,
        ZeroOrder::Sminus => ZeroOrder::Pminus,
        ZeroOrder::Pminus => ZeroOrder::Sminus,
    };
    let name = format!("{} ∘ {} = id, ν={nu}", second.name(), first.name());
    let inner = match zero_order_image(first, nu, f, cfg) {
        Ok(h) => h,
        Err(e) => return VerificationReport::failed(name, INVERSE_TOL, e.to_string()),
    };
    pairs_report(name, grid, INVERSE_TOL, |x| Ok((be_zero_order(second, nu, &inner, x, cfg)?, f.eval(x)?)))
}

/// Deterministic points of the unit square (Halton bases 2 and 3).
fn halton(i: usize, base: usize) -> f64 {
    let (mut f, mut r, mut n) = (1.0, 0.0, i + 1);
    while n > 0 {
        f /= base as f64;
        r += f * (n % base) as f64;
        n /= base;
    }
    r
}

/// `count` points of the half-plane `strip`, within 3 of its edge and `|Im s| ≤ 5`.
pub fn strip_points<T: Real>(strip: Strip<T>, count: usize) -> Vec<Complex<T>> {
    (0..count)
        .map(|i| {
            let depth = T::lit(0.05 + 3.0 * halton(i, 2));
            let im = T::lit(-5.0 + 10.0 * halton(i, 3));
            let re = match strip {
                Strip::Below(b) => b - depth,
                Strip::Above(b) => b + depth,
            };
            Complex::new(re, im)
        })
        .collect()
}

/// The four reciprocity and reflection identities between the multipliers,
/// each at `count` points of its strip.
pub fn be_multiplier_identities_check<T: Real>(nu: T, count: usize) -> Vec<VerificationReport> {
    let m = |w| MellinMultiplier::new(w, nu);
    let (s0, p0, sm, pm) = (m(ZeroOrder::S0plus), m(ZeroOrder::P0plus), m(ZeroOrder::Sminus), m(ZeroOrder::Pminus));
    let one = Complex::new(T::one(), T::zero());
    let below = |a: Strip<T>, b: Strip<T>| match (a, b) {
        (Strip::Below(x), Strip::Below(y)) => Strip::Below(x.min(y)),
        (Strip::Above(x), Strip::Above(y)) => Strip::Above(x.max(y)),
        (a, _) => a,
    };
    type Identity<'a, T> = (&'a str, Strip<T>, Box<dyn Fn(Complex<T>) -> Result<(Complex<T>, Complex<T>)> + 'a>);
    let checks: Vec<Identity<'_, T>> = vec![
        (
            "m_P0plus(s) m_S0plus(s) = 1",
            below(s0.validity_strip(), p0.validity_strip()),
            Box::new(|s| Ok((p0.evaluate(s)? * s0.evaluate(s)?, one))),
        ),
        (
            "m_Pminus(s) m_Sminus(s) = 1",
            below(sm.validity_strip(), pm.validity_strip()),
            Box::new(|s| Ok((pm.evaluate(s)? * sm.evaluate(s)?, one))),
        ),
        ("m_Pminus(s) = m_S0plus(1−s)", pm.validity_strip(), Box::new(|s| Ok((pm.evaluate(s)?, s0.evaluate(one - s)?)))),
        ("m_P0plus(s) = m_Sminus(1−s)", p0.validity_strip(), Box::new(|s| Ok((p0.evaluate(s)?, sm.evaluate(one - s)?)))),
    ];
    checks
        .into_iter()
        .map(|(label, strip, f)| {
            let name = format!("{label}, ν={nu}");
            let pts = strip_points(strip, count);
            let mut errors = Vec::with_capacity(count);
            for &s in &pts {
                match f(s) {
                    Ok((a, b)) => errors.push(((a - b).norm() / b.norm()).as_f64()),
                    Err(e) => return VerificationReport::failed(name, MULTIPLIER_TOL, format!("s = {s}: {e}")),
                }
            }
            VerificationReport::from_errors(name, pts.iter().map(|s| s.re.as_f64()).collect(), &errors, MULTIPLIER_TOL)
                .with_note(format!("{} complex points, grid lists Re s", pts.len()))
        })
        .collect()
}

/// Critical-line sup against the closed-form norm.
pub fn be_norm_check<T: Real>(which: ZeroOrder, nu: T, t_grid: &[T]) -> VerificationReport {
    let name = format!("‖{}‖ at ν={nu}", which.name());
    let grid: Vec<f64> = t_grid.iter().map(|t| t.as_f64()).collect();
    let expected = super::multiplier::be_norm(which, nu);
    let measured = match plancherel_norm(&MellinMultiplier::new(which, nu), t_grid) {
        Ok(n) => n,
        Err(e) => return VerificationReport::failed(name, NORM_TOL, e.to_string()),
    };
    let describe = |n: &Norm<T>| match n {
        Norm::Finite(v) => format!("{:.9}", v.as_f64()),
        Norm::Unbounded => "unbounded".to_string(),
    };
    let err = match (expected, measured) {
        (Norm::Finite(a), Norm::Finite(b)) => ((b - a).abs() / a).as_f64(),
        (Norm::Unbounded, Norm::Unbounded) => 0.0,
        _ => f64::INFINITY,
    };
    VerificationReport::from_errors(name, grid, &[err], NORM_TOL)
        .with_note(format!("formula {}, critical line {}", describe(&expected), describe(&measured)))
}

/// Numerical Mellin transform of the image against `m(s) M[f](s)` at real `s`.
pub fn be_mellin_check<T: Real>(
    which: ZeroOrder,
    nu: T,
    f: &FunctionHandle<T>,
    s_points: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let name = format!("M[{} f](s) = m(s) M[f](s), ν={nu}", which.name());
    let m = MellinMultiplier::new(which, nu);
    let img = match zero_order_image(which, nu, f, cfg) {
        Ok(h) => h,
        Err(e) => return VerificationReport::failed(name, MELLIN_TOL, e.to_string()),
    };
    pairs_report(name, s_points, MELLIN_TOL, |s| {
        let p = MellinPoint::real(s);
        let lhs = mellin_numeric(&img, p, cfg)?.re;
        let rhs = (m.evaluate(p.s)? * mellin_numeric(f, p, cfg)?).re;
        Ok((lhs, rhs))
    })
}

fn target_handle<T: Real>(f: &FunctionHandle<T>, nu: T, target: Target) -> FunctionHandle<T> {
    let mk = |k: usize| -> RealFn<T> {
        let f = f.clone();
        Arc::new(move |x: T| -> Result<T> {
            let d = |j: usize| f.derivative(j, x);
            let one = T::one();
            Ok(match (target, k) {
                (Target::BesselBnu, 0) => d(2)? + nu * d(1)? / x,
                (Target::BesselBnu, _) => d(3)? + nu * (d(2)? / x - d(1)? / (x * x)),
                (Target::AngularLnu, 0) => d(2)? - nu * (nu + one) * d(0)? / (x * x),
                (Target::AngularLnu, _) => {
                    d(3)? - nu * (nu + one) * (d(1)? / (x * x) - T::lit(2.0) * d(0)? / (x * x * x))
                }
            })
        })
    };
    FunctionHandle::new(format!("{target:?} {}", f.label()), mk(0))
        .with_derivatives(vec![mk(1)])
        .with_support(f.support())
        .with_max_order(1)
}

/// Transmutation relation against the chosen target `A`.
///
/// `SU` (Sonine type) is compared as `SU(A f) = D²(SU f)`, `PU` (Poisson type)
/// as `PU(f'') = A(PU f)`. Outer derivatives are Richardson-extrapolated
/// central differences with step `x/100`.
pub fn be_intertwining_check<T: Real>(
    which: ThirdKind,
    nu: T,
    f: &FunctionHandle<T>,
    target: Target,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let name = match which {
        ThirdKind::SU => format!("SU·{target:?} = D²·SU, ν={nu}"),
        ThirdKind::PU => format!("PU·D² = {target:?}·PU, ν={nu}"),
    };
    let image = |y: T| be_third_kind(which, nu, f, y, cfg);
    match which {
        ThirdKind::SU => {
            let af = target_handle(f, nu, target);
            pairs_report(name, grid, INTERTWINING_TOL, |x| {
                let lhs = be_third_kind(which, nu, &af, x, cfg)?;
                let rhs = richardson_derivative(&image, 2, x, x * T::lit(0.01))?;
                Ok((lhs, rhs))
            })
        }
        ThirdKind::PU => {
            let f2 = match f.derivative_handle(2) {
                Ok(h) => h,
                Err(e) => return VerificationReport::failed(name, INTERTWINING_TOL, e.to_string()),
            };
            pairs_report(name, grid, INTERTWINING_TOL, |x| {
                let lhs = be_third_kind(which, nu, &f2, x, cfg)?;
                let h = x * T::lit(0.01);
                let d2 = richardson_derivative(&image, 2, x, h)?;
                let rhs = match target {
                    Target::BesselBnu => d2 + nu * richardson_derivative(&image, 1, x, h)? / x,
                    Target::AngularLnu => d2 - nu * (nu + T::one()) * image(x)? / (x * x),
                };
                Ok((lhs, rhs))
            })
        }
    }
}

/// `‖U f‖₂ / ‖f‖₂` for a third-kind operator, by quadrature over the half-axis.
pub fn third_kind_norm_ratio<T: Real>(
    which: ThirdKind,
    nu: T,
    f: &FunctionHandle<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    use crate::quadrature::{run, try_integrate, Domain, IntegralTask};
    let hi = f.support().upper().unwrap_or(T::one());
    let lo = f.support().lower();
    let sq = |x: T| -> Result<T> {
        let v = be_third_kind(which, nu, f, x, cfg)?;
        Ok(v * v)
    };
    let outer = cfg.relaxed(T::lit(10.0));
    let mut image = T::zero();
    // split at the support edges, where the image has kinks in its higher derivatives
    let mut pts = vec![T::zero(), lo, hi];
    pts.dedup();
    for w in pts.windows(2) {
        if w[1] > w[0] {
            image = image + try_integrate(sq, w[0], w[1], &outer)?.value;
        }
    }
    let decay = T::lit(2.0) * (nu.abs() + T::one());
    image = image + run(&IntegralTask { integrand: &sq, domain: Domain::AlgebraicTail { lo: hi, decay }, config: outer })?.value;
    let fsq = |x: T| -> Result<T> {
        let v = f.eval(x)?;
        Ok(v * v)
    };
    let base = try_integrate(fsq, lo, hi, &outer)?.value;
    Ok((image / base).sqrt())
}

/// Helper: relative error of a single pair, for callers assembling their own reports.
pub fn pair_error<T: Real>(lhs: T, rhs: T) -> f64 {
    relative_error(lhs, rhs, T::min_positive_value()).as_f64()
}
