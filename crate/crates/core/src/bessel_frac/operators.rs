//! Fractional powers of the Bessel operator on the half-axis.

use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::classical::{binomial, falling};
use crate::error::{Error, Result};
use crate::funcmodel::{FunctionHandle, RealFn, Support, Tail};
use crate::quadrature::{integrate_singular_edge, run, try_integrate, Domain, IntegralTask, QuadratureConfig, Side};
use crate::scalar::Real;
use crate::specfun::{gamma, gamma_ratio, gauss_2f1, gauss_2f1_complement, legendre_p_reduced, rgamma, GammaRatioSpec};

/// Parameters of IB^α_{ν,−}: ν ≥ 0, α > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselParams<T> {
    pub nu: T,
    pub alpha: T,
}

impl<T: Real> BesselParams<T> {
    pub fn new(nu: T, alpha: T) -> Result<Self> {
        if !(nu >= T::zero() && nu.is_finite()) {
            return Err(Error::Domain(format!("Bessel index ν must be ≥ 0, got {nu}")));
        }
        if !(alpha > T::zero() && alpha.is_finite()) {
            return Err(Error::Domain(format!("fractional order must be positive, got {alpha}")));
        }
        Ok(Self { nu, alpha })
    }

    /// `n = ⌊α⌋ + 1`, the number of Bessel factors in DB^α.
    pub fn n(&self) -> usize {
        self.alpha.floor().to_usize().unwrap_or(0) + 1
    }
}

/// Parameters of the Saigo integral J^{γ,β,η}_−, γ > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaigoParams<T> {
    pub gamma: T,
    pub beta: T,
    pub eta: T,
}

impl<T: Real> SaigoParams<T> {
    pub fn new(gamma: T, beta: T, eta: T) -> Result<Self> {
        if !(gamma > T::zero() && gamma.is_finite()) {
            return Err(Error::Domain(format!("Saigo order γ must be positive, got {gamma}")));
        }
        Ok(Self { gamma, beta, eta })
    }
}

fn check_x<T: Real>(x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("half-axis operator needs x > 0, got {x}")))
    }
}

/// `B_ν f = f″ + (ν/x) f′`.
pub fn bessel_apply<T: Real>(nu: T, f: &FunctionHandle<T>, x: T) -> Result<T> {
    check_x(x)?;
    Ok(f.derivative(2, x)? + nu / x * f.derivative(1, x)?)
}

/// `B_ν^n h (x)` from the derivatives `h^{(j)}(x)`, `j ≤ 2n`.
pub fn bessel_power<T: Real>(nu: T, n: usize, deriv: &dyn Fn(usize) -> Result<T>, x: T) -> Result<T> {
    check_x(x)?;
    // terms c·x^{−p}·D^j
    let mut terms: Vec<(usize, i32, T)> = vec![(0, 0, T::one())];
    for _ in 0..n {
        let mut next: Vec<(usize, i32, T)> = Vec::new();
        let mut push = |j: usize, p: i32, c: T| {
            if c == T::zero() {
                return;
            }
            match next.iter_mut().find(|t| t.0 == j && t.1 == p) {
                Some(t) => t.2 = t.2 + c,
                None => next.push((j, p, c)),
            }
        };
        for &(j, p, c) in &terms {
            let pf = T::from_i32(p).unwrap_or_else(T::zero);
            push(j, p + 2, c * (pf * (pf + T::one()) - nu * pf));
            push(j + 1, p + 1, c * (nu - T::lit(2.0) * pf));
            push(j + 2, p, c);
        }
        terms = next;
    }
    let mut acc = T::zero();
    for (j, p, c) in terms {
        acc = acc + c * x.powi(-p) * deriv(j)?;
    }
    Ok(acc)
}

/// ∫ over `[max(lo, x), hi]` of `(y−x)^{β−1} ψ(y)`; `hi = None` needs `tail_decay`,
/// the exponent `d > 1` with `(y−x)^{β−1} ψ(y) = O(y^{−d})`.
pub(crate) fn edge_integral<T: Real>(
    psi: &dyn Fn(T) -> Result<T>,
    beta: T,
    x: T,
    lo: T,
    hi: Option<T>,
    tail_decay: Option<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    let one = T::one();
    let two = T::lit(2.0);
    if let Some(h) = hi {
        if h <= x {
            return Ok(T::zero());
        }
    }
    let start = lo.max(x);
    let near_end = match hi {
        Some(h) => h.min(start.max(two * x)),
        None => start.max(two * x),
    };
    let weighted = |y: T| -> Result<T> {
        let v = psi(y)?;
        if v == T::zero() {
            return Ok(v);
        }
        Ok((y - x).powf(beta - one) * v)
    };
    let mut acc = if start > x && (start - x) > T::lit(1e-3) * (near_end - x) {
        try_integrate(&weighted, start, near_end, &cfg.plain())?.value
    } else {
        integrate_singular_edge(|y| psi(y), x, near_end, beta, Side::Right, &cfg.plain())?.value
    };
    let far_end = match hi {
        Some(h) => h,
        None => T::lit(4.0) * near_end,
    };
    if far_end > near_end {
        acc = acc + log_integral(&weighted, near_end, far_end, cfg)?;
    }
    if hi.is_none() {
        let decay = tail_decay.ok_or_else(|| Error::BadSupport("unbounded operand needs a declared tail".into()))?;
        let task = IntegralTask { integrand: &weighted, domain: Domain::AlgebraicTail { lo: far_end, decay }, config: cfg.plain() };
        acc = acc + run(&task)?.value;
    }
    Ok(acc)
}

/// ∫_a^b g, in `ln y` when the range spans more than a factor 4.
fn log_integral<T: Real>(g: &dyn Fn(T) -> Result<T>, a: T, b: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if b <= T::lit(4.0) * a {
        return Ok(try_integrate(g, a, b, &cfg.plain())?.value);
    }
    let h = |u: T| -> Result<T> {
        let y = u.exp();
        Ok(g(y)? * y)
    };
    Ok(try_integrate(h, a.ln(), b.ln(), &cfg.plain())?.value)
}

/// Decay exponent of the IB integrand for an operand tail `y^p`.
/// The factor `(y/x)^j` on `f^{(j)}` keeps the exponent independent of `j`.
fn ib_tail_decay<T: Real>(p: BesselParams<T>, f: &FunctionHandle<T>) -> Option<T> {
    match f.tail() {
        Tail::Algebraic(q) => {
            let growth = (p.nu - T::one()).max(T::zero());
            Some(-(T::lit(2.0) * p.alpha - T::one() + q + growth))
        }
        _ => None,
    }
}

/// `((y+x)/(2y))^{2α−1} F(α+(ν−1)/2, α; 2α; 1 − x²/y²)`, the IB kernel without `(y−x)^{2α−1}`.
fn ib_kernel_factor<T: Real>(p: BesselParams<T>, x: T, y: T) -> Result<T> {
    let (nu, alpha) = (p.nu, p.alpha);
    let two = T::lit(2.0);
    let a = alpha + (nu - T::one()) / two;
    let c = two * alpha;
    let w = (x / y) * (x / y);
    let z = (y - x) * (y + x) / (y * y);
    let f = if z > T::lit(0.5) { gauss_2f1_complement(a, alpha, c, w)? } else { gauss_2f1(a, alpha, c, z)? };
    Ok(((y + x) / (two * y)).powf(c - T::one()) * f)
}

/// `(d/dx)^k IB^α_{ν,−} f (x)` from the scaling form
/// `IB f(x) = x^{2α}/Γ(2α) ∫_1^∞ k(r) f(xr) dr`.
pub fn ib_leibniz<T: Real>(
    nu: T,
    alpha: T,
    f: &FunctionHandle<T>,
    k: usize,
    x: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    let p = BesselParams::new(nu, alpha)?;
    check_x(x)?;
    let two_alpha = T::lit(2.0) * alpha;
    let supp = f.support();
    let mut acc = T::zero();
    for j in 0..=k {
        let power = falling(two_alpha, k - j);
        if power == T::zero() {
            continue;
        }
        let jf = j as i32;
        let psi = |y: T| -> Result<T> {
            let v = f.derivative(j, y)?;
            if v == T::zero() {
                return Ok(v);
            }
            Ok(ib_kernel_factor(p, x, y)? * (y / x).powi(jf) * v)
        };
        let kj = edge_integral(&psi, two_alpha, x, supp.lower(), supp.upper(), ib_tail_decay(p, f), cfg)?;
        acc = acc + binomial::<T>(k, j) * power * x.powi(jf - k as i32) * kj;
    }
    Ok(acc * rgamma(two_alpha))
}

/// Fractional Bessel integral
/// `IB^α f(x) = (1/Γ(2α)) ∫_x^∞ ((y²−x²)/(2y))^{2α−1} F(α+(ν−1)/2, α; 2α; 1−x²/y²) f(y) dy`.
///
/// The notations IB^α_{ν,−} and B^{−α}_{ν,−} denote this same operator.
pub fn ib<T: Real>(nu: T, alpha: T, f: &FunctionHandle<T>, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    ib_leibniz(nu, alpha, f, 0, x, cfg)
}

/// IB^α f through the Legendre kernel
/// `(Γ(α+1/2)/Γ(2α)) (y²−x²)^{α−1/2} (y/x)^{ν/2} P^{1/2−α}_{ν/2−1}((x/y + y/x)/2)`.
pub fn ib_legendre_form<T: Real>(nu: T, alpha: T, f: &FunctionHandle<T>, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    let p = BesselParams::new(nu, alpha)?;
    check_x(x)?;
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let degree = nu * half - T::one();
    let order = half - alpha;
    let pre = gamma(alpha + half)?;
    let psi = |y: T| -> Result<T> {
        let v = f.eval(y)?;
        if v == T::zero() {
            return Ok(v);
        }
        // (1 − z)/2 with z = (x/y + y/x)/2, formed without cancellation
        let w = -(y - x) * (y - x) / (T::lit(4.0) * x * y);
        // (y²−x²)^{α−1/2} ((z+1)/(z−1))^{μ/2} = (y−x)^{2α−1}
        let kernel = legendre_p_reduced(degree, order, w)?;
        Ok(pre * (y / x).powf(nu * half) * kernel * v)
    };
    let supp = f.support();
    let decay = ib_tail_decay(p, f);
    let v = edge_integral(&psi, two * alpha, x, supp.lower(), supp.upper(), decay, cfg)?;
    Ok(v * rgamma(two * alpha))
}

/// Handle for `IB^α f` with exact derivatives up to the operand's order.
pub fn ib_image<T: Real>(nu: T, alpha: T, f: &FunctionHandle<T>, cfg: &QuadratureConfig<T>) -> Result<FunctionHandle<T>> {
    let p = BesselParams::new(nu, alpha)?;
    let cfg = *cfg;
    let mk = |k: usize| -> RealFn<T> {
        let f = f.clone();
        Arc::new(move |x: T| ib_leibniz(p.nu, p.alpha, &f, k, x, &cfg))
    };
    let value = mk(0);
    let derivs = (1..=f.max_order()).map(mk).collect();
    let support = match f.support().upper() {
        Some(hi) => Support::UpTo(hi),
        None => Support::HalfAxis,
    };
    let two = T::lit(2.0);
    let tail = match f.tail() {
        Tail::Algebraic(q) => Tail::Algebraic(q + two * alpha),
        t => t,
    };
    // F(…; 1 − x²/y²) ~ (x/y)^{1−ν} as x → 0 for ν > 1
    let origin = Some((T::one() - nu).min(T::zero()));
    Ok(FunctionHandle::new(format!("IB^{alpha}_{{{nu},-}} {}", f.label()), value)
        .with_derivatives(derivs)
        .with_support(support)
        .with_tail(tail)
        .with_origin(origin))
}

/// Fractional Bessel derivative `DB^α f = B_ν^n IB^{n−α} f`, `n = ⌊α⌋ + 1`.
pub fn db<T: Real>(nu: T, alpha: T, f: &FunctionHandle<T>, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    let p = BesselParams::new(nu, alpha)?;
    let n = p.n();
    if f.max_order() < 2 * n {
        return Err(Error::InsufficientSmoothness { order: 2 * n, reason: f.label().to_string() });
    }
    let beta = T::from_usize_lossy(n) - alpha;
    let deriv = |j: usize| ib_leibniz(nu, beta, f, j, x, cfg);
    bessel_power(nu, n, &deriv, x)
}

/// Saigo integral
/// `J^{γ,β,η} f(x) = (1/Γ(γ)) ∫_x^∞ (t−x)^{γ−1} t^{−γ−β} F(γ+β, −η; γ; 1 − x/t) f(t) dt`.
pub fn saigo<T: Real>(params: SaigoParams<T>, f: &FunctionHandle<T>, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    let SaigoParams { gamma: g, beta, eta } = SaigoParams::new(params.gamma, params.beta, params.eta)?;
    check_x(x)?;
    let a = g + beta;
    let psi = |t: T| -> Result<T> {
        let v = f.eval(t)?;
        if v == T::zero() {
            return Ok(v);
        }
        let z = (t - x) / t;
        let h = if z > T::lit(0.5) { gauss_2f1_complement(a, -eta, g, x / t)? } else { gauss_2f1(a, -eta, g, z)? };
        Ok(t.powf(-a) * h * v)
    };
    let supp = f.support();
    let decay = match f.tail() {
        Tail::Algebraic(q) => Some(-(g - T::one() - a + q)),
        _ => None,
    };
    let v = edge_integral(&psi, g, x, supp.lower(), supp.upper(), decay, cfg)?;
    Ok(v * rgamma(g))
}

/// Coefficient `C` with `IB^α x^m = C x^{2α+m}`, for `m + 2α + ν < 1`.
pub fn ib_power<T: Real>(nu: T, alpha: T, m: T) -> Result<T> {
    BesselParams::new(nu, alpha)?;
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    if !(m + two * alpha + nu < T::one()) {
        return Err(Error::ValidityViolation(format!("m + 2α + ν = {} must be < 1", m + two * alpha + nu)));
    }
    let r = gamma_ratio(
        &[-alpha - m * half, -(nu - T::one()) * half - alpha - m * half],
        &[(T::one() - nu - m) * half, -m * half],
    )?;
    Ok(two.powf(-two * alpha) * r)
}

/// Γ-ratio factor of `M[IB^α f](s) = m(s) f*(s + 2α)`.
pub fn ib_mellin_multiplier<T: Real>(nu: T, alpha: T, s: Complex<T>) -> Result<Complex<T>> {
    BesselParams::new(nu, alpha)?;
    let two = T::lit(2.0);
    let h = s / two;
    let shift = Complex::new((nu - T::one()) / two, T::zero());
    let r = GammaRatioSpec::new(vec![h, h - shift], vec![h - shift + alpha, h + alpha]).evaluate()?;
    Ok(r * two.powf(-two * alpha))
}

/// Γ-ratio factor of `M[DB^α f](s) = m(s) f*(s − 2α)`.
pub fn db_mellin_multiplier<T: Real>(nu: T, alpha: T, s: Complex<T>) -> Result<Complex<T>> {
    BesselParams::new(nu, alpha)?;
    let two = T::lit(2.0);
    let h = s / two;
    let shift = Complex::new((nu - T::one()) / two, T::zero());
    let r = GammaRatioSpec::new(vec![h, h - shift], vec![h - alpha, h - shift - alpha]).evaluate()?;
    Ok(r * two.powf(two * alpha))
}
