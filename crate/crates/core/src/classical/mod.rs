//! Classical fractional operators on a segment and on the half-axis.

mod checks;
mod composite;
mod ek;
mod rl;
mod weighted;

pub use checks::{
    dn_identity_check, ek_constant_check, gerasimov_liouville_check, hadamard_constant_check, rl_inversion_check,
    rl_power_check, rl_semigroup_check, weighted_identity_check,
};
pub use composite::{distributed_apply, dn_apply, dn_image, DNSignature, DistributedSpec, OrderFamily};
pub use ek::{erdelyi_kober_left, erdelyi_kober_right};
pub use rl::{
    gerasimov_caputo, gerasimov_derivative, left_leibniz, liouville_derivative_left, liouville_derivative_right,
    liouville_left, liouville_right, right_leibniz, rl_derivative_left, rl_derivative_right, rl_integral_left,
    rl_integral_right, rl_left_image, rl_right_image, FractionalOrder,
};
pub(crate) use rl::{binomial, falling};
pub use weighted::{frac_by_function_left, frac_by_function_right, hadamard_left, hadamard_right, WeightFunction};

#[cfg(test)]
mod tests;
