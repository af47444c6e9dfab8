//! Gamma, log-Gamma, digamma and Gamma-product ratios.
//!
//! Everything goes through one Lanczos approximation (g = 7, nine terms),
//! evaluated in log-space where overflow is possible.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{sin_pi, Real};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum<T: Real>(zm1: T) -> T {
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (zm1 + T::from_usize_lossy(k));
    }
    acc
}

fn lanczos_sum_complex<T: Real>(zm1: Complex<T>) -> Complex<T> {
    let mut acc = Complex::new(T::lit(LANCZOS_COEF[0]), T::zero());
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + Complex::new(T::lit(c), T::zero()) / (zm1 + T::from_usize_lossy(k));
    }
    acc
}

fn pole<T: Real>(x: T) -> Error {
    Error::Pole(x.as_f64())
}

/// Γ(x) for real `x`.
pub fn gamma<T: Real>(x: T) -> Result<T> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if x.is_nonpositive_integer() {
        return Err(pole(x));
    }
    if x < T::lit(0.5) {
        // reflection
        let g = gamma(T::one() - x)?;
        return Ok(T::PI() / (sin_pi(x) * g));
    }
    if x > T::lit(171.7) {
        return Ok(T::infinity());
    }
    let zm1 = x - T::one();
    let t = zm1 + T::lit(LANCZOS_G + 0.5);
    let sum = lanczos_sum(zm1);
    let half_pow = t.powf((zm1 + T::lit(0.5)) * T::lit(0.5));
    let e_half = (-t * T::lit(0.5)).exp();
    Ok((T::TAU()).sqrt() * (half_pow * e_half) * (half_pow * e_half) * sum)
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma<T: Real>(x: T) -> Result<(T, T)> {
    if x.is_nan() {
        return Err(Error::Domain("ln_gamma of NaN".into()));
    }
    if x.is_nonpositive_integer() {
        return Err(pole(x));
    }
    if x < T::lit(0.5) {
        let (lg, sg) = ln_gamma(T::one() - x)?;
        let s = sin_pi(x);
        let sign = if s < T::zero() { -sg } else { sg };
        return Ok((T::PI().ln() - s.abs().ln() - lg, sign));
    }
    let zm1 = x - T::one();
    let t = zm1 + T::lit(LANCZOS_G + 0.5);
    let v = T::lit(0.5) * T::TAU().ln() + (zm1 + T::lit(0.5)) * t.ln() - t + lanczos_sum(zm1).ln();
    Ok((v, T::one()))
}

/// 1/Γ(x); zero at the poles of Γ.
pub fn rgamma<T: Real>(x: T) -> T {
    if x.is_nonpositive_integer() {
        return T::zero();
    }
    match gamma(x) {
        Ok(g) if g.is_finite() => T::one() / g,
        Ok(_) => T::zero(),
        Err(_) => T::zero(),
    }
}

/// ψ(x) = Γ'(x)/Γ(x) for real `x`.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    if x.is_nonpositive_integer() {
        return Err(pole(x));
    }
    if x <= T::zero() {
        // ψ(x) = ψ(1 − x) − π cot(πx)
        let c = sin_pi(x + T::lit(0.5)) / sin_pi(x);
        return Ok(digamma(T::one() - x)? - T::PI() * c);
    }
    let mut acc = T::zero();
    let mut y = x;
    while y < T::lit(10.0) {
        acc = acc - T::one() / y;
        y = y + T::one();
    }
    let inv = T::one() / y;
    let inv2 = inv * inv;
    // Bernoulli tail: 1/12, 1/120, 1/252, 1/240, 1/132, 691/32760, 1/12
    let series = inv2
        * (T::lit(1.0 / 12.0)
            - inv2
                * (T::lit(1.0 / 120.0)
                    - inv2
                        * (T::lit(1.0 / 252.0)
                            - inv2
                                * (T::lit(1.0 / 240.0)
                                    - inv2 * (T::lit(1.0 / 132.0) - inv2 * (T::lit(691.0 / 32760.0) - inv2 / T::lit(12.0)))))));
    Ok(acc + y.ln() - T::lit(0.5) * inv - series)
}

/// ln sin(πz), stable for large |Im z|. Any branch of the logarithm.
fn ln_sin_pi<T: Real>(z: Complex<T>) -> Complex<T> {
    let pi = T::PI();
    let i = Complex::new(T::zero(), T::one());
    if z.im.abs() < T::lit(20.0) {
        return (z * pi).sin().ln();
    }
    if z.im > T::zero() {
        // sin(πz) = (i/2)·e^{−iπz}·(1 − e^{2iπz})
        let e = (i * z * (pi + pi)).exp();
        -i * z * pi + (Complex::new(T::one(), T::zero()) - e).ln() + Complex::new(T::lit(0.5), T::zero()).ln() + i * (pi * T::lit(0.5))
    } else {
        // sin(πz) = (−i/2)·e^{iπz}·(1 − e^{−2iπz})
        let e = (-i * z * (pi + pi)).exp();
        i * z * pi + (Complex::new(T::one(), T::zero()) - e).ln() + Complex::new(T::lit(0.5), T::zero()).ln() - i * (pi * T::lit(0.5))
    }
}

/// Complex log-Gamma.
///
/// For `Re z ≥ 1/2` this is the analytic continuation of ln Γ from the
/// positive real axis; for `Re z < 1/2` it follows from the reflection
/// formula, so the imaginary part is only determined modulo 2π there.
/// `exp(log_gamma_complex(z))` is Γ(z) everywhere off the poles.
pub fn log_gamma_complex<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if z.im == T::zero() && z.re.is_nonpositive_integer() {
        return Err(pole(z.re));
    }
    if z.re < T::lit(0.5) {
        let one = Complex::new(T::one(), T::zero());
        let refl = log_gamma_complex(one - z)?;
        return Ok(Complex::new(T::PI().ln(), T::zero()) - ln_sin_pi(z) - refl);
    }
    let zm1 = z - T::one();
    let t = zm1 + T::lit(LANCZOS_G + 0.5);
    Ok(Complex::new(T::lit(0.5) * T::TAU().ln(), T::zero()) + (zm1 + T::lit(0.5)) * t.ln() - t
        + lanczos_sum_complex(zm1).ln())
}

/// Γ(z) for complex `z`.
pub fn gamma_complex<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if z.im == T::zero() {
        return gamma(z.re).map(|g| Complex::new(g, T::zero()));
    }
    Ok(log_gamma_complex(z)?.exp())
}

/// A product/ratio of Gamma values, Π Γ(num) / Π Γ(den).
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRatioSpec<T> {
    pub numerator_args: Vec<Complex<T>>,
    pub denominator_args: Vec<Complex<T>>,
}

fn is_pole<T: Real>(z: &Complex<T>) -> bool {
    z.im == T::zero() && z.re.is_nonpositive_integer()
}

impl<T: Real> GammaRatioSpec<T> {
    pub fn new(numerator_args: Vec<Complex<T>>, denominator_args: Vec<Complex<T>>) -> Self {
        Self { numerator_args, denominator_args }
    }

    pub fn real(num: &[T], den: &[T]) -> Self {
        let c = |v: &[T]| v.iter().map(|&x| Complex::new(x, T::zero())).collect();
        Self::new(c(num), c(den))
    }

    /// Cancels numerator/denominator arguments that are bitwise equal.
    fn cancelled(&self) -> (Vec<Complex<T>>, Vec<Complex<T>>) {
        let mut num = self.numerator_args.clone();
        let mut den = Vec::with_capacity(self.denominator_args.len());
        for d in &self.denominator_args {
            if let Some(pos) = num.iter().position(|n| n == d) {
                num.swap_remove(pos);
            } else {
                den.push(*d);
            }
        }
        (num, den)
    }

    /// Evaluates the ratio in log-space.
    ///
    /// A numerator pole that is not cancelled by an identical denominator
    /// argument is an error; an uncancelled denominator pole makes the
    /// ratio zero.
    pub fn evaluate(&self) -> Result<Complex<T>> {
        let (num, den) = self.cancelled();
        if let Some(p) = num.iter().find(|z| is_pole(z)) {
            return Err(pole(p.re));
        }
        if den.iter().any(is_pole) {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        if num.iter().chain(den.iter()).all(|z| z.im == T::zero()) {
            let mut log_abs = T::zero();
            let mut sign = T::one();
            for z in &num {
                let (l, s) = ln_gamma(z.re)?;
                log_abs = log_abs + l;
                sign = sign * s;
            }
            for z in &den {
                let (l, s) = ln_gamma(z.re)?;
                log_abs = log_abs - l;
                sign = sign * s;
            }
            return Ok(Complex::new(sign * log_abs.exp(), T::zero()));
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for z in &num {
            acc = acc + log_gamma_complex(*z)?;
        }
        for z in &den {
            acc = acc - log_gamma_complex(*z)?;
        }
        Ok(acc.exp())
    }

    /// Σ ln|Γ(num)| − Σ ln|Γ(den)|, after cancellation.
    pub fn log_abs(&self) -> Result<T> {
        let (num, den) = self.cancelled();
        if let Some(p) = num.iter().find(|z| is_pole(z)) {
            return Err(pole(p.re));
        }
        if den.iter().any(is_pole) {
            return Ok(T::neg_infinity());
        }
        let mut acc = T::zero();
        for z in &num {
            acc = acc + log_gamma_complex(*z)?.re;
        }
        for z in &den {
            acc = acc - log_gamma_complex(*z)?.re;
        }
        Ok(acc)
    }
}

/// Real Gamma ratio Π Γ(num) / Π Γ(den) with pole semantics of [`GammaRatioSpec::evaluate`].
pub fn gamma_ratio<T: Real>(num: &[T], den: &[T]) -> Result<T> {
    GammaRatioSpec::real(num, den).evaluate().map(|c| c.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_known_values() {
        assert!(rel(gamma(0.5_f64).unwrap(), std::f64::consts::PI.sqrt()) < 1e-14);
        assert!((gamma(1.0_f64).unwrap() - 1.0).abs() < 1e-15);
        // Γ(4.5) = 3.5·2.5·1.5·0.5·Γ(0.5)
        let via_recurrence = 3.5 * 2.5 * 1.5 * 0.5 * std::f64::consts::PI.sqrt();
        assert!(rel(gamma(4.5_f64).unwrap(), via_recurrence) < 1e-13);
        assert!(rel(gamma(4.5_f64).unwrap(), 11.631728396567) < 1e-12);
        assert!(rel(gamma(-0.5_f64).unwrap(), -2.0 * std::f64::consts::PI.sqrt()) < 1e-14);
    }

    #[test]
    fn gamma_poles_are_errors() {
        assert!(matches!(gamma(0.0_f64), Err(Error::Pole(_))));
        assert!(matches!(gamma(-3.0_f64), Err(Error::Pole(_))));
        assert!(matches!(log_gamma_complex(Complex::new(-2.0_f64, 0.0)), Err(Error::Pole(_))));
        assert_eq!(rgamma(-4.0_f64), 0.0);
    }

    #[test]
    fn gamma_factorials_exact_enough() {
        let mut fact = 1.0_f64;
        for n in 1..20 {
            assert!(rel(gamma(n as f64).unwrap(), fact) < 1e-14, "n = {n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn recurrence_and_reflection_grid() {
        for k in 1..=100 {
            let x = 0.1 * k as f64;
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-12, "x = {x}");
        }
        for k in 1..100 {
            let x = k as f64 / 100.0;
            let v = gamma(x).unwrap() * gamma(1.0 - x).unwrap() * sin_pi(x) / std::f64::consts::PI;
            assert!((v - 1.0).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn ln_gamma_sign_and_value() {
        let (l, s) = ln_gamma(-0.5_f64).unwrap();
        assert_eq!(s, -1.0);
        assert!(rel(l.exp(), 2.0 * std::f64::consts::PI.sqrt()) < 1e-14);
        let (l, s) = ln_gamma(150.5_f64).unwrap();
        assert_eq!(s, 1.0);
        // Stirling check against Γ(150.5) ≈ 10^261.2
        assert!((l - 601.5).abs() < 2.0);
    }

    #[test]
    fn complex_log_gamma() {
        let z = log_gamma_complex(Complex::new(1.0_f64, 0.0)).unwrap();
        assert!(z.norm() < 1e-15);
        let z = log_gamma_complex(Complex::new(2.0_f64, 0.0)).unwrap();
        assert!(z.norm() < 1e-15);
        // |Γ(1/2 + it)|² = π / cosh(πt)
        let g = log_gamma_complex(Complex::new(0.5_f64, 1.0)).unwrap().exp().norm();
        let oracle = (std::f64::consts::PI / std::f64::consts::PI.cosh()).sqrt();
        assert!(rel(g, oracle) < 1e-13);
        assert!(rel(g, 0.520_590_963_616_752) < 1e-12);
        for k in 1..=200 {
            let x = 0.1 * k as f64;
            let c = log_gamma_complex(Complex::new(x, 0.0)).unwrap().exp();
            assert!(rel(c.re, gamma(x).unwrap()) < 1e-12, "x = {x}");
            assert!(c.im.abs() < 1e-12 * c.re.abs());
        }
    }

    #[test]
    fn complex_log_gamma_far_from_axis() {
        for &t in &[30.0_f64, 300.0, 1000.0] {
            for &sigma in &[0.5_f64, -0.25, -3.3] {
                let g = log_gamma_complex(Complex::new(sigma, t)).unwrap();
                // |Γ(σ+it)|² Γ-reflection: Γ(s)Γ(1−s) = π/sin(πs)
                let h = log_gamma_complex(Complex::new(1.0 - sigma, -t)).unwrap();
                let lhs = (g + h).re;
                let rhs = std::f64::consts::PI.ln() - super::ln_sin_pi(Complex::new(sigma, t)).re;
                assert!((lhs - rhs).abs() < 1e-9 * rhs.abs().max(1.0), "σ = {sigma}, t = {t}");
            }
        }
        let g = log_gamma_complex(Complex::new(0.5_f64, 1000.0)).unwrap();
        let oracle = 0.5 * (std::f64::consts::PI.ln() + 2f64.ln()) - 1000.0 * std::f64::consts::PI / 2.0;
        assert!((g.re - oracle).abs() < 1e-9);
    }

    #[test]
    fn digamma_values() {
        let euler = 0.577_215_664_901_532_9_f64;
        assert!((digamma(1.0_f64).unwrap() + euler).abs() < 1e-14);
        assert!((digamma(0.5_f64).unwrap() + euler + 2.0 * 2f64.ln()).abs() < 1e-14);
        // ψ(x+1) = ψ(x) + 1/x, including negative arguments
        for &x in &[-2.7_f64, -0.3, 0.2, 3.3, 17.0] {
            assert!((digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_ratio_cancellation_and_poles() {
        let r = gamma_ratio(&[-2.0_f64, 3.0], &[-2.0]).unwrap();
        assert!((r - 2.0).abs() < 1e-14);
        assert!(matches!(gamma_ratio(&[-2.0_f64], &[1.0]), Err(Error::Pole(_))));
        assert_eq!(gamma_ratio(&[1.5_f64], &[-1.0]).unwrap(), 0.0);
        // overflow-free: Γ(171.5)/Γ(170.5) = 170.5
        let r = gamma_ratio(&[171.5_f64], &[170.5]).unwrap();
        assert!(rel(r, 170.5) < 1e-12);
        let lr = GammaRatioSpec::real(&[200.0_f64], &[199.0]).log_abs().unwrap();
        assert!((lr - 199f64.ln()).abs() < 1e-11);
    }

    #[test]
    fn f32_instantiation() {
        let g = gamma(4.5_f32).unwrap();
        assert!(((g - 11.631_728) / 11.631_728).abs() < 1e-5);
    }
}
