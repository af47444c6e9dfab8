//! Distributed-order operators and sequential (Dzhrbashyan–Nersesyan) compositions.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcmodel::FunctionHandle;
use crate::quadrature::{try_integrate, QuadratureConfig};
use crate::scalar::Real;

use super::rl::rl_left_image;

/// Orders γ_0, …, γ_m of D^{γ_0} ⋯ D^{γ_m}; γ < 0 means an integral of order −γ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DNSignature<T> {
    gammas: Vec<T>,
    sigma: T,
}

impl<T: Real> DNSignature<T> {
    pub fn new(gammas: Vec<T>) -> Result<Self> {
        if gammas.is_empty() || gammas.iter().any(|g| !g.is_finite()) {
            return Err(Error::Spec("a signature needs at least one finite order".into()));
        }
        let sigma = gammas.iter().fold(T::zero(), |s, &g| s + g);
        Ok(Self { gammas, sigma })
    }

    pub fn gammas(&self) -> &[T] {
        &self.gammas
    }

    /// Total order σ = Σ γ_k.
    pub fn sigma(&self) -> T {
        self.sigma
    }
}

/// Applies the composition right to left with exact nested images and evaluates at `x`.
pub fn dn_apply<T: Real>(
    sig: &DNSignature<T>,
    f: &FunctionHandle<T>,
    x: T,
    origin: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    dn_image(sig, f, origin, cfg)?.eval(x)
}

/// Handle for the composed image.
pub fn dn_image<T: Real>(
    sig: &DNSignature<T>,
    f: &FunctionHandle<T>,
    origin: T,
    cfg: &QuadratureConfig<T>,
) -> Result<FunctionHandle<T>> {
    let mut stage = f.clone();
    for &g in sig.gammas.iter().rev() {
        stage = rl_left_image(&stage, origin, g, cfg)?;
    }
    Ok(stage)
}

pub type OrderFamily<T> = Arc<dyn Fn(T, &FunctionHandle<T>, T) -> Result<T> + Send + Sync>;

/// ∫_a^b R^t f dt, optionally divided by (b − a).
#[derive(Clone)]
pub struct DistributedSpec<T: Real> {
    /// (order t, operand, point x) ↦ (R^t f)(x)
    pub family: OrderFamily<T>,
    pub a: T,
    pub b: T,
    pub averaged: bool,
}

impl<T: Real> fmt::Debug for DistributedSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DistributedSpec")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("averaged", &self.averaged)
            .finish()
    }
}

impl<T: Real> DistributedSpec<T> {
    pub fn new(family: OrderFamily<T>, a: T, b: T, averaged: bool) -> Result<Self> {
        if !(a < b) {
            return Err(Error::Spec(format!("order range needs a < b, got [{a}, {b}]")));
        }
        Ok(Self { family, a, b, averaged })
    }
}

/// Outer quadrature over the order with tolerances relaxed tenfold.
pub fn distributed_apply<T: Real>(
    spec: &DistributedSpec<T>,
    f: &FunctionHandle<T>,
    x: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    let outer = cfg.relaxed(T::lit(10.0)).plain();
    let v = try_integrate(|t| (spec.family)(t, f, x), spec.a, spec.b, &outer)?.value;
    Ok(if spec.averaged { v / (spec.b - spec.a) } else { v })
}
