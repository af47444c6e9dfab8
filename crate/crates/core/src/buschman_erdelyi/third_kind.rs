use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcmodel::FunctionHandle;
use crate::quadrature::{try_integrate, QuadratureConfig};
use crate::scalar::{cos_pi, sin_pi, Real};
use crate::specfun::{legendre_q_deriv_w, Regime};

use super::first_kind::kernel_error;
use super::zero_order::{be_zero_order, ZeroOrder};

/// Third-kind operators, unitary for every real ν.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThirdKind {
    /// Sonine type.
    SU,
    /// Poisson type, the L2 adjoint of `SU`.
    PU,
}

/// `K(a/b)`: `Q_ν'(a/b)` for `a > b`, `𝖰_ν'(a/b)` for `a < b`, with the
/// complement variable formed from `a` and `b` directly.
fn q_kernel<T: Real>(nu: T, a: T, b: T) -> Result<T> {
    let r = if a > b {
        let w = (a - b) * (a + b) / (a * a);
        legendre_q_deriv_w(nu, a / b, w, Regime::OffCut)
    } else {
        let w = (b - a) * (b + a) / (b * b);
        legendre_q_deriv_w(nu, a / b, w, Regime::OnCut)
    };
    r.map_err(kernel_error)
}

/// Principal value of `∫ g` over the support, where `g(y) ≈ c/(y − x)` near `y = x`.
///
/// The pole part is subtracted on the symmetric window `|y − x| ≤ x/2`,
/// where its principal value vanishes.
fn principal_value<T: Real>(
    g: &dyn Fn(T) -> Result<T>,
    c: T,
    x: T,
    lo: T,
    hi: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    let d = x * T::lit(0.5);
    let (wl, wr) = (x - d, x + d);
    let mut pts = vec![lo, hi, wl, x, wr];
    pts.retain(|p| p.is_finite());
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    pts.dedup();
    let h = |y: T| -> Result<T> {
        let inside = y >= lo && y <= hi;
        let v = if inside { g(y)? } else { T::zero() };
        if y >= wl && y <= wr && c != T::zero() {
            Ok(v - c / (y - x))
        } else {
            Ok(v)
        }
    };
    let mut acc = T::zero();
    for p in pts.windows(2) {
        let (a, b) = (p[0], p[1]);
        let in_window = a >= wl && b <= wr;
        let in_support = b > lo && a < hi;
        if !(in_support || (in_window && c != T::zero())) {
            continue;
        }
        acc = acc + try_integrate(h, a, b, &cfg.plain())?.value;
    }
    Ok(acc)
}

/// `SU f = cos(πν/2) Sminus f + (2/π) sin(πν/2) PV∫_0^∞ K(x/y) f(y) dy/y`,
/// `PU f = cos(πν/2) P0plus f + (2/π) sin(πν/2) PV∫_0^∞ K(y/x) f(y) dy/x`.
///
/// The two second-kind integrals of the SU form are folded into one principal
/// value: `(x²−y²)^{−1/2} Q^1_ν(x/y) = Q_ν'(x/y)/y` below the diagonal and
/// `−(y²−x²)^{−1/2} 𝖰^1_ν(x/y) = 𝖰_ν'(x/y)/y` above it.
pub fn be_third_kind<T: Real>(
    which: ThirdKind,
    nu: T,
    f: &FunctionHandle<T>,
    x: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let half_nu = nu * T::lit(0.5);
    let (c, s) = (cos_pi(half_nu), sin_pi(half_nu));
    let mut acc = T::zero();
    if c != T::zero() {
        let first = match which {
            ThirdKind::SU => ZeroOrder::Sminus,
            ThirdKind::PU => ZeroOrder::P0plus,
        };
        acc = acc + c * be_zero_order(first, nu, f, x, cfg)?;
    }
    if s != T::zero() {
        let supp = f.support();
        let hi = supp
            .upper()
            .ok_or_else(|| Error::BadSupport("third-kind operators need bounded support".into()))?;
        let lo = supp.lower();
        let fx = f.eval(x)?;
        let half = T::lit(0.5);
        let pv = match which {
            ThirdKind::SU => {
                let g = |y: T| -> Result<T> {
                    let v = f.eval(y)?;
                    if v == T::zero() || y == x {
                        return Ok(T::zero());
                    }
                    Ok(q_kernel(nu, x, y)? * v / y)
                };
                principal_value(&g, half * fx, x, lo, hi, cfg)?
            }
            ThirdKind::PU => {
                let g = |y: T| -> Result<T> {
                    let v = f.eval(y)?;
                    if v == T::zero() || y == x {
                        return Ok(T::zero());
                    }
                    Ok(q_kernel(nu, y, x)? * v / x)
                };
                principal_value(&g, -half * fx, x, lo, hi, cfg)?
            }
        };
        acc = acc + T::lit(2.0) / T::PI() * s * pv;
    }
    Ok(acc)
}
