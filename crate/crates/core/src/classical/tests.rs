use super::*;
use crate::funcmodel::{make_bump, make_exponential, make_monomial, BumpSpec};
use crate::quadrature::QuadratureConfig;
use crate::specfun::{gamma, gamma_ratio};

fn cfg() -> QuadratureConfig<f64> {
    QuadratureConfig::default()
}

fn bump() -> crate::funcmodel::FunctionHandle<f64> {
    make_bump(BumpSpec::new(2.0, 1.0)).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn rl_integral_examples() {
    let one = make_monomial(0.0);
    assert!(rel(rl_integral_left(&one, 0.0, 1.0, 2.0, &cfg()).unwrap(), 2.0) < 1e-13);
    let t = make_monomial(1.0);
    let v = rl_integral_left(&t, 0.0, 0.5, 1.0, &cfg()).unwrap();
    assert!(rel(v, 0.752_252_778_063_675) < 1e-11, "{v}");
    assert!(rel(rl_integral_right(&one, 2.0, 1.0, 0.0, &cfg()).unwrap(), 2.0) < 1e-13);
    let v = rl_integral_right(&one, 1.0, 0.5, 0.0, &cfg()).unwrap();
    assert!(rel(v, 2.0 / std::f64::consts::PI.sqrt()) < 1e-11);
    assert!(matches!(rl_integral_left(&one, 1.0, 0.5, 1.0, &cfg()), Err(crate::Error::Domain(_))));
    assert!(matches!(rl_integral_right(&one, 1.0, 0.5, 1.0, &cfg()), Err(crate::Error::Domain(_))));
}

#[test]
fn rl_integral_of_singular_monomial() {
    // I^α t^m = Γ(m+1)/Γ(m+1+α) x^{m+α}
    for &(m, a) in &[(-0.5_f64, 0.3_f64), (-0.9, 0.5), (1.5, 2.2)] {
        let f = make_monomial(m);
        let x: f64 = 1.7;
        let exact = gamma_ratio(&[m + 1.0], &[m + 1.0 + a]).unwrap() * x.powf(m + a);
        let v = rl_integral_left(&f, 0.0, a, x, &cfg()).unwrap();
        assert!(rel(v, exact) < 1e-9, "m = {m}, α = {a}: {v} vs {exact}");
    }
}

#[test]
fn semigroup_by_composition() {
    let one = make_monomial(0.0);
    let img = rl_left_image(&one, 0.0, -0.5, &cfg()).unwrap();
    let v = rl_integral_left(&img, 0.0, 0.5, 1.0, &cfg()).unwrap();
    assert!(rel(v, 1.0) < 1e-9, "{v}");
}

#[test]
fn derivative_examples() {
    let b = bump();
    let img = rl_left_image(&b, 0.0, -0.5, &cfg()).unwrap();
    let v = rl_derivative_left(&img, 0.0, 0.5, 2.0, &cfg()).unwrap();
    assert!((v - 1.0).abs() < 1e-6, "{v}");
    let sq = make_monomial(2.0);
    assert!(rel(rl_derivative_left(&sq, 0.0, 1.0, 1.0, &cfg()).unwrap(), 2.0) < 1e-13);
    let t = make_monomial(1.0);
    let v = rl_derivative_left(&t, 0.0, 0.5, 1.0, &cfg()).unwrap();
    assert!(rel(v, 1.128_379_167_095_512_6) < 1e-9, "{v}");
    // D^{1.5} t^{0.5}: singular at the origin, still finite
    let h = make_monomial(0.5);
    let v = rl_derivative_left(&h, 0.0, 0.3, 1.3, &cfg()).unwrap();
    let exact = gamma_ratio(&[1.5], &[1.2]).unwrap() * 1.3_f64.powf(0.2);
    assert!(rel(v, exact) < 1e-9, "{v} vs {exact}");
}

#[test]
fn right_derivative_inverts_right_integral() {
    let b = bump();
    for &a in &[0.4_f64, 1.3] {
        let img = rl_right_image(&b, -a, &cfg()).unwrap();
        for &x in &[1.5_f64, 2.2, 2.8] {
            let v = rl_derivative_right(&img, 4.0, a, x, &cfg()).unwrap();
            let w = liouville_derivative_right(&img, a, x, &cfg()).unwrap();
            let f = b.eval(x).unwrap();
            assert!((v - f).abs() < 1e-6, "α = {a}, x = {x}: {v} vs {f}");
            assert!((w - f).abs() < 1e-6, "α = {a}, x = {x}: {w} vs {f}");
        }
    }
}

#[test]
fn liouville_examples() {
    let t = make_monomial(1.3);
    let a = liouville_left(&t, 0.7, 2.0, &cfg()).unwrap();
    let b = rl_integral_left(&t, 0.0, 0.7, 2.0, &cfg()).unwrap();
    assert!((a - b).abs() <= 1e-14 * b.abs());
    let e = make_exponential(1.0).unwrap();
    assert!(rel(liouville_right(&e, 0.5, 0.0, &cfg()).unwrap(), 1.0) < 1e-10);
    assert!(rel(liouville_right(&e, 0.5, 1.0, &cfg()).unwrap(), (-1.0f64).exp()) < 1e-10);
    assert_eq!(liouville_right(&bump(), 0.5, 3.5, &cfg()).unwrap(), 0.0);
}

#[test]
fn erdelyi_kober_constant_law() {
    let one = make_monomial(0.0);
    for &(a, y) in &[(0.5_f64, 0.0_f64), (1.3, -0.4), (0.2, 2.0)] {
        let exact = gamma_ratio(&[y + 1.0], &[a + y + 1.0]).unwrap();
        let vals: Vec<f64> = [0.3, 1.0, 2.5].iter().map(|&x| erdelyi_kober_left(&one, a, y, x, &cfg()).unwrap()).collect();
        for v in &vals {
            assert!(rel(*v, exact) < 1e-9, "α = {a}, y = {y}: {v} vs {exact}");
        }
    }
    assert!(rel(erdelyi_kober_left(&one, 1.0, 0.0, 1.7, &cfg()).unwrap(), 1.0) < 1e-12);
    // right-sided: Γ(y)/Γ(α+y) for y > 0 (algebraic tail of the substituted operand)
    let exact = gamma_ratio(&[1.5], &[2.0]).unwrap();
    let v = erdelyi_kober_right(&one, 0.5, 1.5, 0.8, &cfg()).unwrap();
    assert!(rel(v, exact) < 1e-8, "{v} vs {exact}");
}

#[test]
fn erdelyi_kober_continued_branch() {
    let b = bump();
    let y = 0.3;
    let bl = b.clone();
    let img = make_image(move |x| erdelyi_kober_left(&bl, 0.5, y, x, &cfg()), crate::funcmodel::Support::From(1.0));
    for &x in &[1.4_f64, 2.0, 2.6] {
        let v = erdelyi_kober_left(&img, -0.5, y + 0.5, x, &cfg()).unwrap();
        let f = b.eval(x).unwrap();
        assert!((v - f).abs() < 1e-6, "x = {x}: {v} vs {f}");
    }
    // the continued branch on f ≡ 1 is the analytic continuation of the constant law
    let one = make_monomial(0.0);
    let v = erdelyi_kober_left(&one, -0.4, 0.7, 1.3, &cfg()).unwrap();
    let exact = gamma_ratio(&[1.7], &[1.3]).unwrap();
    assert!(rel(v, exact) < 1e-8, "{v} vs {exact}");
    let br = b.clone();
    let img = make_image(move |x| erdelyi_kober_right(&br, 0.5, y, x, &cfg()), crate::funcmodel::Support::UpTo(3.0));
    for &x in &[1.4_f64, 2.0, 2.6] {
        let v = erdelyi_kober_right(&img, -0.5, y + 0.5, x, &cfg()).unwrap();
        let f = b.eval(x).unwrap();
        assert!((v - f).abs() < 1e-6, "right, x = {x}: {v} vs {f}");
    }
}

/// Wraps a pointwise evaluator with finite-difference derivatives for tests.
fn make_image<F>(f: F, support: crate::funcmodel::Support<f64>) -> crate::funcmodel::FunctionHandle<f64>
where
    F: Fn(f64) -> crate::Result<f64> + Send + Sync + 'static,
{
    crate::funcmodel::FunctionHandle::new("image", std::sync::Arc::new(f))
        .with_max_order(2)
        .with_support(support)
}

#[test]
fn weighted_reductions() {
    let b = bump();
    for &x in &[1.5_f64, 2.0, 2.9, 3.4] {
        for &a in &[0.3_f64, 0.8, 1.6] {
            let v = frac_by_function_left(&b, &WeightFunction::identity(), a, x, 0.0, &cfg()).unwrap();
            let w = rl_integral_left(&b, 0.0, a, x, &cfg()).unwrap();
            assert!((v - w).abs() <= 1e-12 * w.abs().max(1e-3), "x = {x}, α = {a}: {v} vs {w}");
        }
    }
    let one = make_monomial(0.0);
    let v = frac_by_function_left(&one, &WeightFunction::power(2.0), 0.5, 1.0, 0.0, &cfg()).unwrap();
    assert!(rel(v, 1.0 / gamma(1.5).unwrap()) < 1e-10, "{v}");
    let v = hadamard_left(&one, 1.0, std::f64::consts::E, 1.0, &cfg()).unwrap();
    assert!(rel(v, 1.0) < 1e-12);
    // Hadamard of a power: ∫_lo^x (ln x/t)^{α−1} t^{m−1} dt/Γ(α)  with lo → 0 equals m^{−α} x^m
    let v = hadamard_left(&make_monomial(2.0), 0.6, 1.5, 1e-9, &cfg()).unwrap();
    assert!(rel(v, 2f64.powf(-0.6) * 2.25) < 1e-7, "{v}");
    let dec = WeightFunction::new(make_monomial(-1.0)).unwrap();
    assert!(matches!(frac_by_function_left(&b, &dec, 0.5, 2.0, 1.0, &cfg()), Err(crate::Error::NonMonotoneWeight(_))));
}

#[test]
fn gerasimov_examples() {
    let e = make_exponential(1.0).unwrap();
    assert!(rel(gerasimov_derivative(&e, 0.5, 0.0, &cfg()).unwrap(), -1.0) < 1e-10);
    assert!(rel(gerasimov_derivative(&e, 0.5, 0.7, &cfg()).unwrap(), -(-0.7f64).exp()) < 1e-10);
    let c = make_monomial(0.0).restricted_to(5.0).unwrap();
    let _ = c;
    let b = bump();
    for &x in &[1.2_f64, 2.5] {
        let g1 = gerasimov_derivative(&b, 0.4, x, &cfg()).unwrap();
        let gc = gerasimov_caputo(&b, 0.4, x, 1, &cfg()).unwrap();
        assert_eq!(g1, gc);
    }
    assert!(rel(gerasimov_caputo(&e, 0.5, 0.0, 2, &cfg()).unwrap(), 1.0) < 1e-10);
    assert!(matches!(gerasimov_derivative(&e, 1.5, 0.0, &cfg()), Err(crate::Error::Domain(_))));
}

#[test]
fn gerasimov_is_derivative_of_liouville_right() {
    // d/dx I^α_− f = I^α_− f′ (translation invariance of the kernel)
    let b = bump();
    let a = 0.5;
    for &x in &[1.3_f64, 2.0, 2.7] {
        let h = 1e-4;
        let lr = |x: f64| liouville_right(&b, a, x, &cfg()).unwrap();
        let d = (lr(x + h) - lr(x - h)) / (2.0 * h);
        let g = gerasimov_derivative(&b, a, x, &cfg()).unwrap();
        assert!((g - d).abs() < 1e-6, "x = {x}: {g} vs {d}");
    }
}

#[test]
fn distributed_examples() {
    let one = make_monomial(0.0);
    let fam: OrderFamily<f64> = std::sync::Arc::new(|t, f, x| liouville_left(f, t, x, &QuadratureConfig::default()));
    let spec = DistributedSpec::new(fam.clone(), 0.5, 1.0, false).unwrap();
    let v = distributed_apply(&spec, &one, 1.0, &cfg()).unwrap();
    assert!(rel(v, 0.540_051_756_552_725) < 1e-9, "{v}");
    let avg = DistributedSpec::new(fam, 0.5, 1.0, true).unwrap();
    assert_eq!(distributed_apply(&avg, &one, 1.0, &cfg()).unwrap(), v / 0.5);
    let k: OrderFamily<f64> = std::sync::Arc::new(|_, f, x| f.eval(x).map(|v| 3.0 * v));
    let spec = DistributedSpec::new(k, 0.2, 0.9, false).unwrap();
    let v = distributed_apply(&spec, &bump(), 2.0, &cfg()).unwrap();
    assert!(rel(v, 0.7 * 3.0) < 1e-13);
    assert!(DistributedSpec::<f64>::new(std::sync::Arc::new(|_, _, _| Ok(0.0)), 1.0, 1.0, false).is_err());
}

#[test]
fn dn_examples() {
    let b = bump();
    let id = DNSignature::new(vec![0.0, 0.0]).unwrap();
    assert_eq!(dn_apply(&id, &b, 2.3, 0.0, &cfg()).unwrap(), b.eval(2.3).unwrap());
    let one = make_monomial(0.0);
    let s = DNSignature::new(vec![-0.5, -0.5]).unwrap();
    assert_eq!(s.sigma(), -1.0);
    assert!(rel(dn_apply(&s, &one, 1.0, 0.0, &cfg()).unwrap(), 1.0) < 1e-9);
    let s = DNSignature::new(vec![0.5, -0.5]).unwrap();
    for &x in &[1.5_f64, 2.0, 2.5] {
        let v = dn_apply(&s, &b, x, 0.0, &cfg()).unwrap();
        assert!((v - b.eval(x).unwrap()).abs() < 1e-6, "x = {x}: {v}");
    }
}

#[test]
fn semigroup_on_bumps() {
    let b = bump();
    let orders = [0.3_f64, 0.5, 0.7];
    for &a in &orders {
        for &bb in &orders {
            let inner = rl_left_image(&b, 0.0, -bb, &cfg()).unwrap();
            for i in 0..10 {
                let x = 1.1 + 2.5 * i as f64 / 9.0;
                let lhs = rl_integral_left(&inner, 0.0, a, x, &cfg()).unwrap();
                let rhs = rl_integral_left(&b, 0.0, a + bb, x, &cfg()).unwrap();
                assert!(rel(lhs, rhs) < 1e-7, "α = {a}, β = {bb}, x = {x}: {lhs} vs {rhs}");
            }
        }
    }
}
