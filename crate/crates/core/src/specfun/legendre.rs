//! Legendre functions of the first and second kind.
//!
//! `OffCut` means the real half-line `z > 1` (functions P, Q);
//! `OnCut` means `−1 < x < 1` (Ferrers functions 𝖯, 𝖰).
//! Normalisations follow the DLMF, chapter 14.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cos_pi, sin_pi, Real};

use super::gamma::{gamma_ratio, rgamma};
use super::hyper::{gauss_2f1, gauss_2f1_complement, gauss_2f1_regularized};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    OffCut,
    OnCut,
}

fn check_arg<T: Real>(z: T, regime: Regime) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("Legendre argument {z} is not finite")));
    }
    match regime {
        Regime::OffCut if z < T::one() => Err(Error::Domain(format!("off-cut Legendre needs z ≥ 1, got {z}"))),
        Regime::OnCut if z <= -T::one() || z > T::one() => {
            Err(Error::Domain(format!("Ferrers function needs −1 < x ≤ 1, got {z}")))
        }
        _ => Ok(()),
    }
}

/// F(−ν, ν+1; 1−μ; w)/Γ(1−μ): the Legendre P kernel in the variable w = (1 − z)/2.
///
/// Passing `w` directly avoids the cancellation in `1 − z` near `z = 1`.
pub fn legendre_p_reduced<T: Real>(degree: T, order: T, w: T) -> Result<T> {
    gauss_2f1_regularized(-degree, degree + T::one(), T::one() - order, w)
}

/// P^μ_ν(z) (off the cut) or 𝖯^μ_ν(x) (on the cut).
pub fn legendre_p<T: Real>(degree: T, order: T, z: T, regime: Regime) -> Result<T> {
    check_arg(z, regime)?;
    if z == T::one() {
        return if order == T::zero() {
            Ok(T::one())
        } else if order < T::zero() {
            Ok(T::zero())
        } else {
            Err(Error::Domain("P^μ_ν(1) is infinite for μ > 0".into()))
        };
    }
    let w = (T::one() - z) * T::lit(0.5);
    let f = legendre_p_reduced(degree, order, w)?;
    if order == T::zero() {
        return Ok(f);
    }
    let ratio = match regime {
        Regime::OffCut => (z + T::one()) / (z - T::one()),
        Regime::OnCut => (T::one() + z) / (T::one() - z),
    };
    Ok(ratio.powf(order * T::lit(0.5)) * f)
}

/// k-th z-derivative of P_ν (μ = 0) at z = 1 − 2w; valid on and off the cut.
pub fn legendre_p_deriv<T: Real>(degree: T, k: usize, w: T) -> Result<T> {
    if k == 0 {
        return gauss_2f1(-degree, degree + T::one(), T::one(), w);
    }
    let mut coef = T::one();
    for j in 0..k {
        let jf = T::from_usize_lossy(j);
        coef = coef * T::lit(-0.5) * (-degree + jf) * (degree + T::one() + jf) / (jf + T::one());
    }
    if coef == T::zero() {
        return Ok(T::zero());
    }
    let kf = T::from_usize_lossy(k);
    Ok(coef * gauss_2f1(kf - degree, kf + degree + T::one(), kf + T::one(), w)?)
}

struct QOffCut<T> {
    pre: T,
    a: T,
    b: T,
    c: T,
}

fn q_off_cut_parts<T: Real>(nu: T) -> Result<QOffCut<T>> {
    let one = T::one();
    if (nu + one).is_nonpositive_integer() || (nu + T::lit(1.5)).is_nonpositive_integer() {
        return Err(Error::ParameterPole(format!("Q_ν undefined for ν = {nu}")));
    }
    // √π Γ(ν+1) / (2^{ν+1} Γ(ν+3/2))
    let pre = T::PI().sqrt() * gamma_ratio(&[nu + one], &[nu + T::lit(1.5)])? / T::lit(2.0).powf(nu + one);
    Ok(QOffCut { pre, a: (nu + one) * T::lit(0.5), b: (nu + T::lit(2.0)) * T::lit(0.5), c: nu + T::lit(1.5) })
}

struct QOnCut<T> {
    q0: T,
    dq0: T,
}

fn q_on_cut_parts<T: Real>(nu: T) -> Result<QOnCut<T>> {
    let one = T::one();
    if (nu + one).is_nonpositive_integer() {
        return Err(Error::ParameterPole(format!("𝖰_ν undefined for ν = {nu}")));
    }
    let half = T::lit(0.5);
    let sp = T::PI().sqrt();
    // 𝖰_ν(0) and 𝖰_ν'(0)
    let s = sin_pi(nu * half);
    let c = cos_pi(nu * half);
    let q0 = if s == T::zero() {
        T::zero()
    } else {
        -half * sp * s * gamma_ratio(&[(nu + one) * half], &[nu * half + one])?
    };
    let dq0 = if c == T::zero() {
        T::zero()
    } else {
        sp * c * gamma_ratio(&[nu * half + one], &[(nu + one) * half])?
    };
    Ok(QOnCut { q0, dq0 })
}

/// Q_ν(z) (off the cut) or 𝖰_ν(x) (on the cut), order zero.
pub fn legendre_q<T: Real>(nu: T, z: T, regime: Regime) -> Result<T> {
    check_arg(z, regime)?;
    if z == T::one() {
        return Err(Error::Domain("Q_ν has a logarithmic singularity at 1".into()));
    }
    let one = T::one();
    let half = T::lit(0.5);
    match regime {
        Regime::OffCut => {
            let p = q_off_cut_parts(nu)?;
            let w = (z - one) * (z + one) / (z * z);
            Ok(p.pre * z.powf(-nu - one) * gauss_2f1_complement(p.a, p.b, p.c, w)?)
        }
        Regime::OnCut => {
            let p = q_on_cut_parts(nu)?;
            let w = (one - z) * (one + z);
            let e = if p.q0 == T::zero() { T::zero() } else { gauss_2f1_complement(-nu * half, (nu + one) * half, half, w)? };
            let o = if p.dq0 == T::zero() {
                T::zero()
            } else {
                z * gauss_2f1_complement((one - nu) * half, (nu + T::lit(2.0)) * half, T::lit(1.5), w)?
            };
            Ok(p.q0 * e + p.dq0 * o)
        }
    }
}

/// dQ_ν/dz (off the cut) or d𝖰_ν/dx (on the cut).
pub fn legendre_q_deriv<T: Real>(nu: T, z: T, regime: Regime) -> Result<T> {
    check_arg(z, regime)?;
    let one = T::one();
    let w = match regime {
        Regime::OffCut => (z - one) * (z + one) / (z * z),
        Regime::OnCut => (one - z) * (one + z),
    };
    legendre_q_deriv_w(nu, z, w, regime)
}

/// As [`legendre_q_deriv`], with the complement variable supplied by the caller:
/// `w = (z²−1)/z²` off the cut and `w = 1 − x²` on the cut.
pub fn legendre_q_deriv_w<T: Real>(nu: T, z: T, w: T, regime: Regime) -> Result<T> {
    check_arg(z, regime)?;
    if w == T::zero() {
        return Err(Error::Domain("Q_ν' has a pole at 1".into()));
    }
    let one = T::one();
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    match regime {
        Regime::OffCut => {
            let p = q_off_cut_parts(nu)?;
            let u = one / (z * z);
            let f = gauss_2f1_complement(p.a, p.b, p.c, w)?;
            let df = p.a * p.b / p.c * gauss_2f1_complement(p.a + one, p.b + one, p.c + one, w)?;
            let zp = z.powf(-nu - one);
            Ok(p.pre * zp * (-(nu + one) * f / z - two * df * u / z))
        }
        Regime::OnCut => {
            let p = q_on_cut_parts(nu)?;
            let x2 = z * z;
            let mut acc = T::zero();
            if p.q0 != T::zero() {
                let (a, b, c) = (-nu * half, (nu + one) * half, half);
                acc = acc + p.q0 * two * z * a * b / c * gauss_2f1_complement(a + one, b + one, c + one, w)?;
            }
            if p.dq0 != T::zero() {
                let (a, b, c) = ((one - nu) * half, (nu + two) * half, T::lit(1.5));
                let f = gauss_2f1_complement(a, b, c, w)?;
                let df = a * b / c * gauss_2f1_complement(a + one, b + one, c + one, w)?;
                acc = acc + p.dq0 * (f + two * x2 * df);
            }
            Ok(acc)
        }
    }
}

/// Order-one second-kind function: Q^1_ν(z) = (z²−1)^{1/2} Q_ν'(z) off the cut,
/// 𝖰^1_ν(x) = −(1−x²)^{1/2} 𝖰_ν'(x) on the cut.
pub fn legendre_q1<T: Real>(nu: T, z: T, regime: Regime) -> Result<T> {
    let d = legendre_q_deriv(nu, z, regime)?;
    Ok(match regime {
        Regime::OffCut => (z * z - T::one()).sqrt() * d,
        Regime::OnCut => -(T::one() - z * z).sqrt() * d,
    })
}

/// 1/Γ(1 − μ) prefactor used by callers that assemble P^μ_ν from the reduced form.
pub fn reduced_prefactor<T: Real>(order: T) -> T {
    rgamma(T::one() - order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn legendre_polynomials() {
        for &x in &[-0.9_f64, -0.3, 0.0, 0.4, 0.95] {
            let p2 = 0.5 * (3.0 * x * x - 1.0);
            let p3 = 0.5 * (5.0 * x * x * x - 3.0 * x);
            assert!(close(legendre_p(2.0, 0.0, x, Regime::OnCut).unwrap(), p2, 1e-14));
            assert!(close(legendre_p(3.0, 0.0, x, Regime::OnCut).unwrap(), p3, 1e-14));
        }
        assert!(close(legendre_p(3.0_f64, 0.0, 2.5, Regime::OffCut).unwrap(), 0.5 * (5.0 * 15.625 - 7.5), 1e-14));
    }

    #[test]
    fn degree_symmetry_and_laplace_integral() {
        // P_ν = P_{−ν−1}
        for &nu in &[0.3_f64, 0.5, 1.7] {
            for &z in &[1.2_f64, 3.0] {
                let a = legendre_p(nu, 0.0, z, Regime::OffCut).unwrap();
                let b = legendre_p(-nu - 1.0, 0.0, z, Regime::OffCut).unwrap();
                assert!(close(a, b, 1e-13));
            }
        }
        assert!(close(legendre_p(0.5_f64, 0.0, 2.0, Regime::OffCut).unwrap(), 1.329_138_162_185_36, 1e-13));
    }

    #[test]
    fn order_one_and_regularized_order() {
        // 𝖯^{1/2}_ν(cos θ) = (2/(π sin θ))^{1/2} cos((ν+1/2)θ)
        let (nu, th) = (0.7_f64, 0.9_f64);
        let v = legendre_p(nu, 0.5, th.cos(), Regime::OnCut).unwrap();
        let exact = (2.0 / (std::f64::consts::PI * th.sin())).sqrt() * ((nu + 0.5) * th).cos();
        assert!(close(v, exact, 1e-13));
        // 𝖯^1_1(x) = −(1−x²)^{1/2} in the DLMF sign convention
        let x = 0.3_f64;
        assert!(close(legendre_p(1.0, 1.0, x, Regime::OnCut).unwrap(), -(1.0 - x * x).sqrt(), 1e-13));
    }

    #[test]
    fn second_kind_closed_forms() {
        for &z in &[1.000_001_f64, 1.1, 2.0, 7.0] {
            let q0 = 0.5 * ((z + 1.0) / (z - 1.0)).ln();
            assert!(close(legendre_q(0.0, z, Regime::OffCut).unwrap(), q0, 1e-13), "z = {z}");
            assert!(close(legendre_q(1.0, z, Regime::OffCut).unwrap(), z * q0 - 1.0, 1e-12), "z = {z}");
            assert!(close(legendre_q_deriv(0.0, z, Regime::OffCut).unwrap(), 1.0 / ((1.0 - z) * (1.0 + z)), 1e-12));
        }
        for &x in &[-0.7_f64, 0.0, 0.5, 0.999_99] {
            let q0 = 0.5 * ((1.0 + x) / (1.0 - x)).ln();
            assert!(close(legendre_q(0.0, x, Regime::OnCut).unwrap(), q0, 1e-13), "x = {x}");
            assert!(close(legendre_q(1.0, x, Regime::OnCut).unwrap(), x * q0 - 1.0, 1e-12), "x = {x}");
            assert!(close(legendre_q_deriv(0.0, x, Regime::OnCut).unwrap(), 1.0 / ((1.0 - x) * (1.0 + x)), 1e-11));
        }
    }

    #[test]
    fn order_one_second_kind_values() {
        let v = legendre_q1(0.0_f64, 2.0, Regime::OffCut).unwrap();
        assert!(close(v, -1.0 / 3f64.sqrt(), 1e-13));
        let v = legendre_q1(1.0_f64, 0.5, Regime::OnCut).unwrap();
        let exact = -(0.75_f64).sqrt() * (0.5 * 3f64.ln() + 0.5 / 0.75);
        assert!(close(v, exact, 1e-13));
        assert!(close(v, -1.053_064, 1e-6));
    }

    #[test]
    fn wronskians() {
        for &nu in &[0.3_f64, 0.5, 1.25] {
            for &z in &[1.05_f64, 1.5, 4.0] {
                let w = (1.0 - z) / 2.0;
                let p = legendre_p_deriv(nu, 0, w).unwrap();
                let dp = legendre_p_deriv(nu, 1, w).unwrap();
                let q = legendre_q(nu, z, Regime::OffCut).unwrap();
                let dq = legendre_q_deriv(nu, z, Regime::OffCut).unwrap();
                assert!(close(p * dq - dp * q, 1.0 / (1.0 - z * z), 1e-11), "ν = {nu}, z = {z}");
            }
            for &x in &[-0.5_f64, 0.2, 0.9] {
                let w = (1.0 - x) / 2.0;
                let p = legendre_p_deriv(nu, 0, w).unwrap();
                let dp = legendre_p_deriv(nu, 1, w).unwrap();
                let q = legendre_q(nu, x, Regime::OnCut).unwrap();
                let dq = legendre_q_deriv(nu, x, Regime::OnCut).unwrap();
                assert!(close(p * dq - dp * q, 1.0 / (1.0 - x * x), 1e-11), "ν = {nu}, x = {x}");
            }
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let nu = 0.6_f64;
        for &z in &[1.3_f64, 2.2] {
            let h = 1e-5;
            let f = |z: f64| legendre_p(nu, 0.0, z, Regime::OffCut).unwrap();
            let fd = (f(z + h) - f(z - h)) / (2.0 * h);
            assert!(close(legendre_p_deriv(nu, 1, (1.0 - z) / 2.0).unwrap(), fd, 1e-8));
            let d1 = |z: f64| legendre_p_deriv(nu, 1, (1.0 - z) / 2.0).unwrap();
            let fd2 = (d1(z + h) - d1(z - h)) / (2.0 * h);
            assert!(close(legendre_p_deriv(nu, 2, (1.0 - z) / 2.0).unwrap(), fd2, 1e-8));
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(legendre_p(0.5_f64, 0.0, -1.5, Regime::OffCut), Err(Error::Domain(_))));
        assert!(matches!(legendre_p(0.5_f64, 0.0, f64::INFINITY, Regime::OffCut), Err(Error::Domain(_))));
        assert!(matches!(legendre_q(-1.0_f64, 2.0, Regime::OffCut), Err(Error::ParameterPole(_))));
    }
}
