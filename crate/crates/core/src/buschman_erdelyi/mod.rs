//! Buschman–Erdélyi operators: first kind, zero-order smoothness, third kind.

mod checks;
mod first_kind;
mod multiplier;
mod third_kind;
mod zero_order;

pub use checks::{
    be_factorization_check, be_identity_check, be_intertwining_check, be_inverse_pair_check, be_mellin_check,
    be_multiplier_identities_check, be_norm_check, be_unitarity_check, pair_error, strip_points, third_kind_norm_ratio,
    Target,
};
pub use first_kind::{be_first_kind, BEParams, BeSide, Family};
pub use multiplier::{be_multiplier, be_norm, MellinMultiplier, Strip};
pub use third_kind::{be_third_kind, ThirdKind};
pub use zero_order::{be_zero_order, zero_order_deriv, zero_order_image, ZeroOrder};
