//! Special functions: Gamma family, Gauss hypergeometric, Legendre.

mod gamma;
mod hyper;
mod legendre;

pub use gamma::{digamma, gamma, gamma_complex, gamma_ratio, ln_gamma, log_gamma_complex, rgamma, GammaRatioSpec};
pub use hyper::{gauss_2f1, gauss_2f1_complement, gauss_2f1_regularized};
pub use legendre::{
    legendre_p, legendre_p_deriv, legendre_p_reduced, legendre_q, legendre_q1, legendre_q_deriv, legendre_q_deriv_w, reduced_prefactor,
    Regime,
};
