//! Operator specifications as strings, `kind:key=value,...`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bessel_frac::{bessel_apply, db, ib, ib_legendre_form, saigo, SaigoParams};
use crate::buschman_erdelyi::{be_first_kind, be_third_kind, be_zero_order, BEParams, BeSide, Family, ThirdKind, ZeroOrder};
use crate::classical::{
    dn_apply, erdelyi_kober_left, erdelyi_kober_right, gerasimov_caputo, gerasimov_derivative, hadamard_left,
    hadamard_right, liouville_derivative_left, liouville_derivative_right, liouville_left, liouville_right,
    rl_derivative_left, rl_derivative_right, rl_integral_left, rl_integral_right, DNSignature,
};
use crate::error::{Error, Result};
use crate::funcmodel::FunctionHandle;
use crate::quadrature::QuadratureConfig;
use crate::scalar::Real;

/// A parsed operator with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OperatorDescriptor<T> {
    RlLeft { a: T, alpha: T },
    RlRight { b: T, alpha: T },
    RlDerivLeft { a: T, alpha: T },
    RlDerivRight { b: T, alpha: T },
    LiouvilleLeft { alpha: T },
    LiouvilleRight { alpha: T },
    LiouvilleDerivLeft { alpha: T },
    LiouvilleDerivRight { alpha: T },
    Gerasimov { alpha: T },
    GerasimovCaputo { alpha: T, n: usize },
    EkLeft { alpha: T, y: T },
    EkRight { alpha: T, y: T },
    HadamardLeft { a: T, alpha: T },
    HadamardRight { alpha: T },
    Dn { a: T, orders: Vec<T> },
    BeFirst { nu: T, mu: T, side: BeSide, family: Family },
    BeZero { which: ZeroOrder, nu: T },
    BeThird { which: ThirdKind, nu: T },
    Bessel { nu: T },
    Ib { nu: T, alpha: T },
    IbLegendre { nu: T, alpha: T },
    Db { nu: T, alpha: T },
    Saigo { gamma: T, beta: T, eta: T },
}

/// Operator kinds accepted by [`OperatorDescriptor::parse`], with their keys.
pub const OPERATOR_KINDS: &[(&str, &str)] = &[
    ("rl-left", "a, alpha"),
    ("rl-right", "b, alpha"),
    ("rl-deriv-left", "a, alpha"),
    ("rl-deriv-right", "b, alpha"),
    ("liouville-left", "alpha"),
    ("liouville-right", "alpha"),
    ("liouville-deriv-left", "alpha"),
    ("liouville-deriv-right", "alpha"),
    ("gerasimov", "alpha"),
    ("gerasimov-caputo", "alpha, n"),
    ("ek-left", "alpha, y"),
    ("ek-right", "alpha, y"),
    ("hadamard-left", "a, alpha"),
    ("hadamard-right", "alpha"),
    ("dn", "a, orders (separated by |)"),
    ("be", "nu, mu, side = 0+ | -, family = B | E"),
    ("be0", "which = S0plus | P0plus | Sminus | Pminus, nu"),
    ("be3", "which = SU | PU, nu"),
    ("bessel", "nu"),
    ("ib", "nu, alpha"),
    ("ib-legendre", "nu, alpha"),
    ("db", "nu, alpha"),
    ("saigo", "gamma, beta, eta"),
];

struct Params<'a> {
    spec: &'a str,
    kv: BTreeMap<String, String>,
}

impl Params<'_> {
    fn text(&self, k: &str) -> Result<&str> {
        self.kv.get(k).map(String::as_str).ok_or_else(|| Error::Spec(format!("`{}` lacks `{k}`", self.spec)))
    }

    fn num<T: Real>(&self, k: &str) -> Result<T> {
        let v = self.text(k)?;
        let x: f64 = v.parse().map_err(|_| Error::Spec(format!("bad number `{v}` for `{k}` in `{}`", self.spec)))?;
        Ok(T::lit(x))
    }

    fn list<T: Real>(&self, k: &str) -> Result<Vec<T>> {
        self.text(k)?
            .split('|')
            .map(|v| {
                let x: f64 = v.trim().parse().map_err(|_| Error::Spec(format!("bad number `{v}` in `{}`", self.spec)))?;
                Ok(T::lit(x))
            })
            .collect()
    }

    fn allow(&self, keys: &[&str]) -> Result<()> {
        match self.kv.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::Spec(format!("unknown key `{k}` in `{}`", self.spec))),
            None => Ok(()),
        }
    }
}

impl<T: Real> OperatorDescriptor<T> {
    /// Parses e.g. `rl-left:a=0,alpha=0.5` or `be0:which=S0plus,nu=1`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut kv = BTreeMap::new();
        for part in rest.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) =
                part.split_once('=').ok_or_else(|| Error::Spec(format!("expected key=value in `{part}`")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let p = Params { spec, kv };
        use OperatorDescriptor as O;
        let d = match kind.trim() {
            "rl-left" => (O::RlLeft { a: p.num("a")?, alpha: p.num("alpha")? }, &["a", "alpha"][..]),
            "rl-right" => (O::RlRight { b: p.num("b")?, alpha: p.num("alpha")? }, &["b", "alpha"][..]),
            "rl-deriv-left" => (O::RlDerivLeft { a: p.num("a")?, alpha: p.num("alpha")? }, &["a", "alpha"][..]),
            "rl-deriv-right" => (O::RlDerivRight { b: p.num("b")?, alpha: p.num("alpha")? }, &["b", "alpha"][..]),
            "liouville-left" => (O::LiouvilleLeft { alpha: p.num("alpha")? }, &["alpha"][..]),
            "liouville-right" => (O::LiouvilleRight { alpha: p.num("alpha")? }, &["alpha"][..]),
            "liouville-deriv-left" => (O::LiouvilleDerivLeft { alpha: p.num("alpha")? }, &["alpha"][..]),
            "liouville-deriv-right" => (O::LiouvilleDerivRight { alpha: p.num("alpha")? }, &["alpha"][..]),
            "gerasimov" => (O::Gerasimov { alpha: p.num("alpha")? }, &["alpha"][..]),
            "gerasimov-caputo" => {
                let n: T = p.num("n")?;
                if !(n >= T::one() && n == n.round()) {
                    return Err(Error::Spec(format!("`n` must be a positive integer in `{spec}`")));
                }
                (O::GerasimovCaputo { alpha: p.num("alpha")?, n: n.to_usize().unwrap_or(1) }, &["alpha", "n"][..])
            }
            "ek-left" => (O::EkLeft { alpha: p.num("alpha")?, y: p.num("y")? }, &["alpha", "y"][..]),
            "ek-right" => (O::EkRight { alpha: p.num("alpha")?, y: p.num("y")? }, &["alpha", "y"][..]),
            "hadamard-left" => (O::HadamardLeft { a: p.num("a")?, alpha: p.num("alpha")? }, &["a", "alpha"][..]),
            "hadamard-right" => (O::HadamardRight { alpha: p.num("alpha")? }, &["alpha"][..]),
            "dn" => (O::Dn { a: p.num("a")?, orders: p.list("orders")? }, &["a", "orders"][..]),
            "be" => {
                let side = match p.text("side")? {
                    "0+" => BeSide::ZeroPlus,
                    "-" => BeSide::Minus,
                    s => return Err(Error::Spec(format!("side must be `0+` or `-`, got `{s}`"))),
                };
                let family = match p.text("family")? {
                    "B" => Family::B,
                    "E" => Family::E,
                    s => return Err(Error::Spec(format!("family must be `B` or `E`, got `{s}`"))),
                };
                (O::BeFirst { nu: p.num("nu")?, mu: p.num("mu")?, side, family }, &["nu", "mu", "side", "family"][..])
            }
            "be0" => (O::BeZero { which: p.text("which")?.parse()?, nu: p.num("nu")? }, &["which", "nu"][..]),
            "be3" => {
                let which = match p.text("which")? {
                    "SU" => ThirdKind::SU,
                    "PU" => ThirdKind::PU,
                    s => return Err(Error::Spec(format!("third-kind operator must be `SU` or `PU`, got `{s}`"))),
                };
                (O::BeThird { which, nu: p.num("nu")? }, &["which", "nu"][..])
            }
            "bessel" => (O::Bessel { nu: p.num("nu")? }, &["nu"][..]),
            "ib" => (O::Ib { nu: p.num("nu")?, alpha: p.num("alpha")? }, &["nu", "alpha"][..]),
            "ib-legendre" => (O::IbLegendre { nu: p.num("nu")?, alpha: p.num("alpha")? }, &["nu", "alpha"][..]),
            "db" => (O::Db { nu: p.num("nu")?, alpha: p.num("alpha")? }, &["nu", "alpha"][..]),
            "saigo" => (
                O::Saigo { gamma: p.num("gamma")?, beta: p.num("beta")?, eta: p.num("eta")? },
                &["gamma", "beta", "eta"][..],
            ),
            other => return Err(Error::Spec(format!("unknown operator kind `{other}`"))),
        };
        p.allow(d.1)?;
        Ok(d.0)
    }

    /// Applies the operator to `f` at `x`.
    pub fn apply(&self, f: &FunctionHandle<T>, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
        use OperatorDescriptor as O;
        match self {
            O::RlLeft { a, alpha } => rl_integral_left(f, *a, *alpha, x, cfg),
            O::RlRight { b, alpha } => rl_integral_right(f, *b, *alpha, x, cfg),
            O::RlDerivLeft { a, alpha } => rl_derivative_left(f, *a, *alpha, x, cfg),
            O::RlDerivRight { b, alpha } => rl_derivative_right(f, *b, *alpha, x, cfg),
            O::LiouvilleLeft { alpha } => liouville_left(f, *alpha, x, cfg),
            O::LiouvilleRight { alpha } => liouville_right(f, *alpha, x, cfg),
            O::LiouvilleDerivLeft { alpha } => liouville_derivative_left(f, *alpha, x, cfg),
            O::LiouvilleDerivRight { alpha } => liouville_derivative_right(f, *alpha, x, cfg),
            O::Gerasimov { alpha } => gerasimov_derivative(f, *alpha, x, cfg),
            O::GerasimovCaputo { alpha, n } => gerasimov_caputo(f, *alpha, x, *n, cfg),
            O::EkLeft { alpha, y } => erdelyi_kober_left(f, *alpha, *y, x, cfg),
            O::EkRight { alpha, y } => erdelyi_kober_right(f, *alpha, *y, x, cfg),
            O::HadamardLeft { a, alpha } => hadamard_left(f, *alpha, x, *a, cfg),
            O::HadamardRight { alpha } => hadamard_right(f, *alpha, x, cfg),
            O::Dn { a, orders } => dn_apply(&DNSignature::new(orders.clone())?, f, x, *a, cfg),
            O::BeFirst { nu, mu, side, family } => be_first_kind(&BEParams::new(*nu, *mu, *side, *family)?, f, x, cfg),
            O::BeZero { which, nu } => be_zero_order(*which, *nu, f, x, cfg),
            O::BeThird { which, nu } => be_third_kind(*which, *nu, f, x, cfg),
            O::Bessel { nu } => bessel_apply(*nu, f, x),
            O::Ib { nu, alpha } => ib(*nu, *alpha, f, x, cfg),
            O::IbLegendre { nu, alpha } => ib_legendre_form(*nu, *alpha, f, x, cfg),
            O::Db { nu, alpha } => db(*nu, *alpha, f, x, cfg),
            O::Saigo { gamma, beta, eta } => saigo(SaigoParams::new(*gamma, *beta, *eta)?, f, x, cfg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_apply() {
        let op = OperatorDescriptor::<f64>::parse("rl-left:a=0,alpha=0.5").unwrap();
        assert_eq!(op, OperatorDescriptor::RlLeft { a: 0.0, alpha: 0.5 });
        let f = FunctionHandle::parse("pow:m=1").unwrap();
        let v = op.apply(&f, 1.0, &QuadratureConfig::default()).unwrap();
        // Γ(2)/Γ(5/2)
        assert!((v - 0.752_252_778_063_675).abs() < 1e-12);
        let op = OperatorDescriptor::<f64>::parse("be0:which=S0plus,nu=0").unwrap();
        let b = FunctionHandle::parse("bump:c=2,r=1").unwrap();
        assert!((op.apply(&b, 2.2, &QuadratureConfig::default()).unwrap() - b.eval(2.2).unwrap()).abs() < 1e-12);
        assert!(matches!(OperatorDescriptor::<f64>::parse("dn:a=0,orders=0.5|-0.5").unwrap(), OperatorDescriptor::Dn { .. }));
    }

    #[test]
    fn rejects_bad_specs() {
        for s in ["nope:alpha=1", "rl-left:alpha=0.5", "rl-left:a=0,alpha=x", "rl-left:a=0,alpha=0.5,z=1", "be:nu=1,mu=0.2,side=+,family=B", "be0:which=Q,nu=1"] {
            assert!(matches!(OperatorDescriptor::<f64>::parse(s), Err(Error::Spec(_))), "{s}");
        }
    }
}
