//! Grid checks of the fractional Bessel identities.

use std::sync::Arc;

use num_complex::Complex;

use super::operators::{db, ib, ib_image, ib_legendre_form, ib_mellin_multiplier, ib_power, saigo, SaigoParams};
use crate::classical::liouville_right;
use crate::error::Result;
use crate::funcmodel::{make_monomial, make_truncated_monomial, FunctionHandle, RealFn, Support};
use crate::mellin::{mellin_numeric, MellinPoint};
use crate::quadrature::QuadratureConfig;
use crate::report::{grid_report, relative_error, VerificationReport};
use crate::scalar::Real;

/// `IB^α_{0,−} = I^{2α}_−` on the grid, at 1e-7.
pub fn ib_reduction_check<T: Real>(alpha: T, f: &FunctionHandle<T>, grid: &[T], cfg: &QuadratureConfig<T>) -> VerificationReport {
    let two = T::lit(2.0);
    grid_report(format!("IB^{alpha}_0 = I^{}_- on {}", two * alpha, f.label()), grid, 1e-7, |x| {
        Ok((ib(T::zero(), alpha, f, x, cfg)?, liouville_right(f, two * alpha, x, cfg)?))
    })
}

/// Hypergeometric and Legendre kernel paths agree, at 1e-6.
pub fn ib_legendre_check<T: Real>(
    nu: T,
    alpha: T,
    f: &FunctionHandle<T>,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    grid_report(format!("IB^{alpha}_{nu} 2F1 kernel = Legendre kernel"), grid, 1e-6, |x| {
        Ok((ib_legendre_form(nu, alpha, f, x, cfg)?, ib(nu, alpha, f, x, cfg)?))
    })
}

/// `IB^α f(x) = 2^{−2α} J^{2α,(ν−1)/2−α,−α} g (x²)` with `g(t) = t^{(ν−1)/2} f(√t)`, at 1e-5.
pub fn ib_via_saigo_check<T: Real>(
    nu: T,
    alpha: T,
    f: &FunctionHandle<T>,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let identity = format!("IB^{alpha}_{nu} = 2^(-2α) Saigo in x²");
    let params = match SaigoParams::new(two * alpha, (nu - T::one()) * half - alpha, -alpha) {
        Ok(p) => p,
        Err(e) => return VerificationReport::failed(identity, 1e-5, e.to_string()),
    };
    let fc = f.clone();
    let value: RealFn<T> = Arc::new(move |t: T| {
        let v = fc.eval(t.sqrt())?;
        Ok(if v == T::zero() { v } else { t.powf((nu - T::one()) * half) * v })
    });
    let supp = f.support();
    let support = match supp.upper() {
        Some(hi) => Support::Compact { lo: supp.lower() * supp.lower(), hi: hi * hi },
        None => Support::HalfAxis,
    };
    let g = FunctionHandle::new(format!("t^((ν−1)/2) {}(√t)", f.label()), value).with_support(support);
    let scale = two.powf(-two * alpha);
    grid_report(identity, grid, 1e-5, |x| Ok((scale * saigo(params, &g, x * x, cfg)?, ib(nu, alpha, f, x, cfg)?)))
}

/// Quadrature of IB on truncated `x^m·cut(R)` against [`ib_power`], at 1e-4.
///
/// Errors must decrease monotonically over `radii`; the reported error is the
/// one at the largest radius. The `R → ∞` value, with the tail integrated
/// through an algebraic map, is added as a note.
pub fn ib_power_check<T: Real>(
    nu: T,
    alpha: T,
    m: T,
    grid: &[T],
    radii: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let tol = 1e-4;
    let identity = format!("IB^{alpha}_{nu} x^{m} = C x^(2α+m)");
    let c = match ib_power(nu, alpha, m) {
        Ok(c) => c,
        Err(e) => return VerificationReport::failed(identity, tol, e.to_string()),
    };
    if radii.is_empty() {
        return VerificationReport::failed(identity, tol, "no truncation radii");
    }
    let expo = T::lit(2.0) * alpha + m;
    let ratios = |op: &FunctionHandle<T>| -> Result<Vec<(T, T)>> {
        grid.iter().map(|&x| Ok((ib(nu, alpha, op, x, cfg)? / x.powf(expo), c))).collect()
    };
    let mut notes = Vec::new();
    let mut previous: Option<f64> = None;
    let mut monotone = true;
    let mut last = Vec::new();
    for &r in radii {
        let pairs = match make_truncated_monomial(m, r).and_then(|op| ratios(&op)) {
            Ok(p) => p,
            Err(e) => return VerificationReport::failed(identity, tol, format!("R = {r}: {e}")),
        };
        let worst = pairs.iter().fold(0.0_f64, |w, &(v, c)| w.max(relative_error(v, c, T::min_positive_value()).as_f64()));
        if let Some(p) = previous {
            monotone &= worst < p;
        }
        previous = Some(worst);
        notes.push(format!("R = {:e}: {worst:.3e}", r.as_f64()));
        last = pairs;
    }
    match ratios(&make_monomial(m)) {
        Ok(p) => {
            let worst = p.iter().fold(0.0_f64, |w, &(v, c)| w.max(relative_error(v, c, T::min_positive_value()).as_f64()));
            notes.push(format!("R = ∞: {worst:.3e}"));
        }
        Err(e) => notes.push(format!("R = ∞: {e}")),
    }
    let mut r = VerificationReport::compare(identity, grid, &last, T::min_positive_value(), tol);
    r.notes = notes;
    r.notes.push(format!("C = {c}"));
    if !monotone {
        r.pass = false;
        r.notes.push("truncation errors not monotone in R".into());
    }
    r
}

/// `M[IB^α f](s) = m(s) f*(s + 2α)` at real `s`, at 1e-5.
pub fn ib_mellin_check<T: Real>(
    nu: T,
    alpha: T,
    f: &FunctionHandle<T>,
    s_points: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let identity = format!("M[IB^{alpha}_{nu} f](s) = m(s) f*(s+2α)");
    let image = match ib_image(nu, alpha, f, cfg) {
        Ok(h) => h,
        Err(e) => return VerificationReport::failed(identity, 1e-5, e.to_string()),
    };
    let outer = cfg.relaxed(T::lit(10.0));
    let two = T::lit(2.0);
    grid_report(identity, s_points, 1e-5, |s| {
        let lhs = mellin_numeric(&image, MellinPoint::real(s), &outer)?.re;
        let m = ib_mellin_multiplier(nu, alpha, Complex::new(s, T::zero()))?.re;
        let fs = mellin_numeric(f, MellinPoint::real(s + two * alpha), cfg)?.re;
        Ok((lhs, m * fs))
    })
}

/// `IB^α IB^β f = IB^{α+β} f` with the inner image nested exactly, at 1e-4.
pub fn ib_semigroup_check<T: Real>(
    nu: T,
    alpha: T,
    beta: T,
    f: &FunctionHandle<T>,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let identity = format!("IB^{alpha} IB^{beta} = IB^{} (ν = {nu})", alpha + beta);
    let inner = match ib_image(nu, beta, f, cfg) {
        Ok(h) => h,
        Err(e) => return VerificationReport::failed(identity, 1e-4, e.to_string()),
    };
    let outer = cfg.relaxed(T::lit(10.0));
    grid_report(identity, grid, 1e-4, |x| Ok((ib(nu, alpha, &inner, x, &outer)?, ib(nu, alpha + beta, f, x, cfg)?)))
}

/// `IB^1 B_ν g = g` for a decaying `g`, at 1e-5.
pub fn ib_inversion_check<T: Real>(nu: T, g: &FunctionHandle<T>, grid: &[T], cfg: &QuadratureConfig<T>) -> VerificationReport {
    let identity = format!("IB^1_{nu} B_ν g = g");
    let gc = g.clone();
    let value: RealFn<T> = Arc::new(move |x: T| {
        if x <= T::zero() {
            return Ok(T::zero());
        }
        super::operators::bessel_apply(nu, &gc, x)
    });
    let bg = FunctionHandle::new(format!("B_{nu} {}", g.label()), value).with_support(g.support()).with_tail(g.tail());
    grid_report(identity, grid, 1e-5, |x| Ok((ib(nu, T::one(), &bg, x, cfg)?, g.eval(x)?)))
}

/// `DB^α IB^α f = f` with the inner image nested exactly, at 1e-4.
pub fn db_inversion_check<T: Real>(
    nu: T,
    alpha: T,
    f: &FunctionHandle<T>,
    grid: &[T],
    cfg: &QuadratureConfig<T>,
) -> VerificationReport {
    let identity = format!("DB^{alpha}_{nu} IB^{alpha}_{nu} f = f");
    let inner = match ib_image(nu, alpha, f, cfg) {
        Ok(h) => h,
        Err(e) => return VerificationReport::failed(identity, 1e-4, e.to_string()),
    };
    let outer = cfg.relaxed(T::lit(10.0));
    grid_report(identity, grid, 1e-4, |x| Ok((db(nu, alpha, &inner, x, &outer)?, f.eval(x)?)))
}
