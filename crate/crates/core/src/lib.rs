//! Fractional integro-differentiation operators on the half-axis.

pub mod bessel_frac;
pub mod buschman_erdelyi;
pub mod classical;
pub mod descriptor;
pub mod error;
pub mod funcmodel;
pub mod mellin;
pub mod scalar;
pub mod quadrature;
pub mod report;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` instantiations of the generic types.
pub type Function = funcmodel::FunctionHandle<f64>;
pub type Quadrature = quadrature::QuadratureConfig<f64>;
pub type Operator = descriptor::OperatorDescriptor<f64>;
pub type Multiplier = buschman_erdelyi::MellinMultiplier<f64>;
pub type OperatorNorm = mellin::Norm<f64>;
pub type Point = mellin::MellinPoint<f64>;
pub type Bessel = bessel_frac::BesselParams<f64>;
pub type Saigo = bessel_frac::SaigoParams<f64>;
pub type BuschmanErdelyi = buschman_erdelyi::BEParams<f64>;
