use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcmodel::FunctionHandle;
use crate::quadrature::{integrate_singular_edge, try_integrate, QuadratureConfig, Side};
use crate::scalar::Real;
use crate::specfun::legendre_p_reduced;

/// Integration side: `(0, x)` or `(x, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BeSide {
    ZeroPlus,
    Minus,
}

/// `B`: kernel P^μ_ν of the larger-over-smaller ratio; `E`: Ferrers kernel 𝖯^μ_ν of its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    B,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BEParams<T> {
    pub nu: T,
    pub mu: T,
    pub side: BeSide,
    pub family: Family,
}

impl<T: Real> BEParams<T> {
    /// Requires μ < 1. ν below −1/2 is accepted; see [`BEParams::is_canonical`].
    pub fn new(nu: T, mu: T, side: BeSide, family: Family) -> Result<Self> {
        if !(mu < T::one()) {
            return Err(Error::Domain(format!("first-kind operators need μ < 1, got {mu}")));
        }
        if !nu.is_finite() {
            return Err(Error::Domain(format!("ν = {nu} is not finite")));
        }
        Ok(Self { nu, mu, side, family })
    }

    /// ν ≥ −1/2; other values are reachable through ν ↦ −1−ν.
    pub fn is_canonical(&self) -> bool {
        self.nu >= T::lit(-0.5)
    }

    /// Kernel variable w = (1 − z)/2 of the hypergeometric form, from x and t directly.
    fn w(&self, x: T, t: T) -> T {
        let two = T::lit(2.0);
        match (self.side, self.family) {
            (BeSide::ZeroPlus, Family::B) => -(x - t) / (two * t),
            (BeSide::ZeroPlus, Family::E) => (x - t) / (two * x),
            (BeSide::Minus, Family::B) => -(t - x) / (two * x),
            (BeSide::Minus, Family::E) => (t - x) / (two * t),
        }
    }
}

pub(crate) fn kernel_error(e: Error) -> Error {
    match e {
        Error::ParameterPole(m) => Error::KernelPole(m),
        other => other,
    }
}

/// First-kind operator. The factor `(x²−t²)^{−μ/2}` combined with the Legendre
/// prefactor leaves `|x−t|^{−μ} F(−ν, ν+1; 1−μ; w)/Γ(1−μ)`, integrated with the
/// edge weight at `t = x`.
pub fn be_first_kind<T: Real>(p: &BEParams<T>, f: &FunctionHandle<T>, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let supp = f.support();
    let g = |t: T| -> Result<T> {
        let v = f.eval(t)?;
        if v == T::zero() {
            return Ok(v);
        }
        Ok(legendre_p_reduced(p.nu, p.mu, p.w(x, t)).map_err(kernel_error)? * v)
    };
    let alpha = T::one() - p.mu;
    let plain = cfg.plain();
    match p.side {
        BeSide::ZeroPlus => {
            let lo = supp.lower();
            if lo >= x {
                return Ok(T::zero());
            }
            match supp.upper() {
                Some(hi) if hi < x => {
                    let h = |t: T| -> Result<T> { Ok((x - t).powf(-p.mu) * g(t)?) };
                    Ok(try_integrate(h, lo, hi, &plain)?.value)
                }
                _ => Ok(integrate_singular_edge(g, x, lo, alpha, Side::Left, &plain)?.value),
            }
        }
        BeSide::Minus => {
            let hi = supp
                .upper()
                .ok_or_else(|| Error::BadSupport("right-sided first-kind operators need bounded support".into()))?;
            if hi <= x {
                return Ok(T::zero());
            }
            let lo = supp.lower();
            if lo > x {
                let h = |t: T| -> Result<T> { Ok((t - x).powf(-p.mu) * g(t)?) };
                return Ok(try_integrate(h, lo, hi, &plain)?.value);
            }
            Ok(integrate_singular_edge(g, x, hi, alpha, Side::Right, &plain)?.value)
        }
    }
}
