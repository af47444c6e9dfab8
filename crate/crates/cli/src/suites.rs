//! Named verification suites.

use fracop::bessel_frac::{
    db_inversion_check, ib_inversion_check, ib_mellin_check, ib_power_check, ib_reduction_check, ib_semigroup_check,
};
use fracop::buschman_erdelyi::{
    be_factorization_check, be_identity_check, be_inverse_pair_check, be_multiplier_identities_check, be_norm_check,
    be_unitarity_check, BeSide, Family, ZeroOrder,
};
use fracop::classical::{
    dn_identity_check, ek_constant_check, hadamard_constant_check, rl_inversion_check, rl_power_check,
    rl_semigroup_check, weighted_identity_check,
};
use fracop::mellin::default_t_grid;
use fracop::report::VerificationReport;
use fracop::{Error, Function, Quadrature, Result};

/// Suite parameters; `None` selects the suite's default sweep.
#[derive(Debug, Clone, Default)]
pub struct SuiteArgs {
    pub nu: Option<Vec<f64>>,
    pub alpha: Option<Vec<f64>>,
    pub beta: Option<f64>,
    pub mu: Option<Vec<f64>>,
    pub m: Option<f64>,
    pub function: Option<String>,
}

type SuiteFn = fn(&SuiteArgs, &Quadrature) -> Result<Vec<VerificationReport>>;

/// Suite name, one-line description and entry point.
pub const SUITES: &[(&str, &str, SuiteFn)] = &[
    ("rl-basic", "Riemann–Liouville power law, semigroup, inversion and classical reductions", rl_basic),
    ("be-multipliers", "reciprocity and reflection of the zero-order multipliers", be_multipliers),
    ("be-norms", "norm formulas against the critical-line supremum", be_norms),
    ("be-unitary", "unit modulus on the critical line and mutual inversion", be_unitary),
    ("be-factorization", "first-kind operators as fractional integral times zero-order operator", be_factorization),
    ("be-inverse-pairs", "zero-order operators at ν = 0 and inverse pairs on bumps", be_inverse_pairs),
    ("bessel-reduction", "IB at ν = 0 against the Liouville integral of order 2α", bessel_reduction),
    ("bessel-power", "IB on truncated monomials against the Gamma-ratio coefficient", bessel_power),
    ("bessel-semigroup", "IB^α IB^β = IB^(α+β)", bessel_semigroup),
    ("bessel-inversion", "IB^1 B_ν = identity and DB^α IB^α = identity", bessel_inversion),
    ("bessel-mellin", "Mellin transform of IB images through the Gamma-ratio multiplier", bessel_mellin),
    ("dn-identity", "sequential composition with orders {1/2, −1/2} is the identity", dn_identity),
];

pub fn find(name: &str) -> Result<SuiteFn> {
    SUITES.iter().find(|s| s.0 == name).map(|s| s.2).ok_or_else(|| {
        let names: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
        Error::Spec(format!("unknown suite `{name}`; known: {}", names.join(", ")))
    })
}

fn operand(args: &SuiteArgs) -> Result<Function> {
    Function::parse(args.function.as_deref().unwrap_or("bump:c=2,r=1"))
}

fn or(v: &Option<Vec<f64>>, default: &[f64]) -> Vec<f64> {
    v.clone().unwrap_or_else(|| default.to_vec())
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// 20 points inside the default bump's support.
pub fn interior_grid() -> Vec<f64> {
    linspace(1.05, 2.95, 20)
}

/// 5 points for nested or costly checks.
pub fn coarse_grid() -> Vec<f64> {
    linspace(1.2, 2.8, 5)
}

fn rl_basic(args: &SuiteArgs, cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let f = operand(args)?;
    let grid = coarse_grid();
    let mut out = Vec::new();
    for a in or(&args.alpha, &[0.5]) {
        out.push(rl_power_check(a, 1.0, &grid, cfg));
        out.push(rl_power_check(a, -0.5, &grid, cfg));
        out.push(rl_semigroup_check(a, args.beta.unwrap_or(0.4), &f, &grid, cfg));
        out.push(rl_inversion_check(a, &f, &grid, cfg));
        out.push(weighted_identity_check(a, &f, &grid, cfg));
        out.push(hadamard_constant_check(a, &[1.5, std::f64::consts::E, 5.0], cfg));
        out.push(ek_constant_check(a, 0.3, &grid, cfg));
    }
    Ok(out)
}

fn be_multipliers(args: &SuiteArgs, _cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    Ok(or(&args.nu, &[-0.5, 0.0, 0.3, 1.0, 1.7]).into_iter().flat_map(|nu| be_multiplier_identities_check(nu, 100)).collect())
}

fn be_norms(args: &SuiteArgs, _cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let grid = default_t_grid();
    let mut out = Vec::new();
    for nu in or(&args.nu, &[-0.5, -0.2, 0.0, 0.3, 1.0, 0.5]) {
        for w in ZeroOrder::ALL {
            out.push(be_norm_check(w, nu, &grid));
        }
    }
    Ok(out)
}

fn be_unitary(args: &SuiteArgs, cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let grid = default_t_grid();
    let f = operand(args)?;
    let mut out = Vec::new();
    let nus = or(&args.nu, &[0.0, 1.0, 2.0, 3.0]);
    for &nu in &nus {
        for w in ZeroOrder::ALL {
            out.push(be_unitarity_check(w, nu, &grid));
        }
    }
    for nu in args.nu.clone().unwrap_or_else(|| vec![1.0, 2.0]) {
        out.push(be_inverse_pair_check(ZeroOrder::S0plus, nu, &f, &interior_grid(), cfg));
        out.push(be_inverse_pair_check(ZeroOrder::Sminus, nu, &f, &interior_grid(), cfg));
    }
    Ok(out)
}

fn be_factorization(args: &SuiteArgs, cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let f = operand(args)?;
    let pairs: Vec<(f64, f64)> = match (&args.nu, &args.mu) {
        (Some(nus), Some(mus)) => nus.iter().flat_map(|&n| mus.iter().map(move |&m| (n, m))).collect(),
        (None, None) => vec![(1.0, 0.3), (1.0, 0.5), (2.0, 0.3)],
        _ => return Err(Error::Spec("be-factorization needs both --nu and --mu, or neither".into())),
    };
    let grid = linspace(1.1, 2.9, 10);
    let mut out = Vec::new();
    for (nu, mu) in pairs {
        for family in [Family::B, Family::E] {
            for side in [BeSide::ZeroPlus, BeSide::Minus] {
                out.push(be_factorization_check(nu, mu, family, side, &f, &grid, cfg));
            }
        }
    }
    Ok(out)
}

fn be_inverse_pairs(args: &SuiteArgs, cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let f = operand(args)?;
    let grid = interior_grid();
    let mut out: Vec<VerificationReport> = ZeroOrder::ALL.into_iter().map(|w| be_identity_check(w, &f, &grid, cfg)).collect();
    for nu in or(&args.nu, &[1.0, 2.0, 0.3]) {
        out.push(be_inverse_pair_check(ZeroOrder::S0plus, nu, &f, &grid, cfg));
        out.push(be_inverse_pair_check(ZeroOrder::Sminus, nu, &f, &grid, cfg));
    }
    Ok(out)
}

fn bessel_reduction(args: &SuiteArgs, cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let f = operand(args)?;
    Ok(or(&args.alpha, &[0.25, 0.5, 0.75]).into_iter().map(|a| ib_reduction_check(a, &f, &coarse_grid(), cfg)).collect())
}

fn bessel_power(args: &SuiteArgs, cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let cases: Vec<(f64, f64, f64)> = match (&args.nu, &args.alpha, args.m) {
        (Some(n), Some(a), Some(m)) if n.len() == 1 && a.len() == 1 => vec![(n[0], a[0], m)],
        (None, None, None) => vec![(1.0, 0.25, -2.0), (0.0, 0.25, -1.5), (2.0, 0.2, -2.5)],
        _ => return Err(Error::Spec("bessel-power needs single --nu, --alpha and --m, or none".into())),
    };
    let radii = [1e1, 1e2, 1e3, 1e4, 1e5];
    Ok(cases.into_iter().map(|(n, a, m)| ib_power_check(n, a, m, &[0.5, 1.0, 2.0], &radii, cfg)).collect())
}

fn bessel_semigroup(args: &SuiteArgs, cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let f = operand(args)?;
    let beta = args.beta.unwrap_or(0.4);
    let mut out = Vec::new();
    for nu in or(&args.nu, &[1.0, 0.0]) {
        for a in or(&args.alpha, &[0.3]) {
            out.push(ib_semigroup_check(nu, a, beta, &f, &coarse_grid(), cfg));
        }
    }
    Ok(out)
}

fn bessel_inversion(args: &SuiteArgs, cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let f = operand(args)?;
    let mut out = Vec::new();
    for nu in or(&args.nu, &[0.0, 1.0, 3.0]) {
        out.push(ib_inversion_check(nu, &f, &coarse_grid(), cfg));
        for a in or(&args.alpha, &[0.4]) {
            out.push(db_inversion_check(nu, a, &f, &coarse_grid(), cfg));
        }
    }
    Ok(out)
}

/// 10 real points inside the strip `Re s > max(0, ν − 1)`.
pub fn bessel_s_points(nu: f64) -> Vec<f64> {
    let lo = (nu - 1.0).max(0.0);
    (0..10).map(|i| lo + 0.2 + 0.2 * i as f64).collect()
}

fn bessel_mellin(args: &SuiteArgs, cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let f = operand(args)?;
    let cases: Vec<(f64, f64)> = match (&args.nu, &args.alpha) {
        (Some(n), Some(a)) => n.iter().flat_map(|&n| a.iter().map(move |&a| (n, a))).collect(),
        (None, None) => vec![(1.0, 0.3), (2.0, 0.4)],
        _ => return Err(Error::Spec("bessel-mellin needs both --nu and --alpha, or neither".into())),
    };
    Ok(cases.into_iter().map(|(n, a)| ib_mellin_check(n, a, &f, &bessel_s_points(n), cfg)).collect())
}

fn dn_identity(args: &SuiteArgs, cfg: &Quadrature) -> Result<Vec<VerificationReport>> {
    let f = operand(args)?;
    Ok(vec![dn_identity_check(&f, &interior_grid(), cfg)])
}
