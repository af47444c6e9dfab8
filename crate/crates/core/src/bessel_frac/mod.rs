//! Fractional powers of the Bessel operator `B_ν = d²/dx² + (ν/x) d/dx` on the half-axis.

mod checks;
mod operators;

pub use checks::{
    db_inversion_check, ib_inversion_check, ib_legendre_check, ib_mellin_check, ib_power_check, ib_reduction_check,
    ib_semigroup_check, ib_via_saigo_check,
};
pub use operators::{
    bessel_apply, bessel_power, db, db_mellin_multiplier, ib, ib_image, ib_legendre_form, ib_leibniz,
    ib_mellin_multiplier, ib_power, saigo, BesselParams, SaigoParams,
};
