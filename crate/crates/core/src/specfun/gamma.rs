//! Γ, log Γ and ψ for complex arguments.
//!
//! Stirling's series is applied once `Re z ≥ 15` after an upward shift;
//! the left half-plane is reached through reflection.

use crate::prelude::*;

const SHIFT_TO: f64 = 15.0;

// B_{2k} / (2k (2k-1)) for k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

// B_{2k} / (2k) for k = 1..10
const DIGAMMA: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43867.0 / 14364.0,
    -174_611.0 / 6600.0,
];

fn pole_check(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { re: z.re, im: 0.0 });
    }
    Ok(())
}

fn stirling(z: Complex64) -> Complex64 {
    let ln2pi_half = 0.918_938_533_204_672_8;
    let zinv = z.inv();
    let z2 = zinv * zinv;
    let mut acc = cr(0.0);
    let mut p = zinv;
    for coef in STIRLING {
        acc += p * coef;
        p *= z2;
    }
    (z - 0.5) * z.ln() - z + ln2pi_half + acc
}

/// Principal-branch-continuous `log Γ(z)` for `Re z ≥ ½`; reflected otherwise.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    pole_check(z)?;
    if z.re < 0.5 {
        // log Γ(z) = log π − log sin(πz) − log Γ(1−z)
        let s = (z * PI).sin();
        return Ok(cr(PI.ln()) - s.ln() - ln_gamma(cr(1.0) - z)?);
    }
    let mut w = z;
    let mut shift = cr(0.0);
    while w.re < SHIFT_TO {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

/// Γ(z). Poles at the nonpositive integers are reported as errors.
pub fn gamma_fn(z: Complex64) -> Result<Complex64> {
    pole_check(z)?;
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Ok(cr(PI) / (s * gamma_fn(cr(1.0) - z)?));
    }
    if z.im == 0.0 && z.re <= 171.0 && z.re == z.re.round() {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < z.re {
            f *= k;
            k += 1.0;
        }
        return Ok(cr(f));
    }
    Ok(ln_gamma(z)?.exp())
}

/// Real Γ.
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma_fn(cr(x))?.re)
}

/// `log |Γ(x)|` for real `x`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    Ok(ln_gamma(cr(x))?.re)
}

/// Digamma ψ(z) = Γ′(z)/Γ(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    pole_check(z)?;
    if z.re < 0.5 {
        // ψ(1−z) − ψ(z) = π cot(πz)
        let w = z * PI;
        return Ok(digamma(cr(1.0) - z)? - w.cos() / w.sin() * PI);
    }
    let mut w = z;
    let mut shift = cr(0.0);
    while w.re < SHIFT_TO {
        shift += w.inv();
        w += 1.0;
    }
    let winv = w.inv();
    let w2 = winv * winv;
    let mut acc = cr(0.0);
    let mut p = w2;
    for coef in DIGAMMA {
        acc += p * coef;
        p *= w2;
    }
    Ok(w.ln() - winv * 0.5 - acc - shift)
}

pub fn digamma_real(x: f64) -> Result<f64> {
    Ok(digamma(cr(x))?.re)
}

/// Trigamma ψ′(x) for real `x > 0`.
pub fn trigamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("trigamma needs x > 0, got {x}")));
    }
    Ok(super::zeta::hurwitz_zeta(cr(2.0), x)?.re)
}

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert!((gamma_real(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((gamma_real(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert_eq!(gamma_real(5.0).unwrap(), 24.0);
        assert!((gamma_real(4.5).unwrap() - 11.631_728_396_567_448).abs() < 1e-12);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!((gamma_real(1e-3).unwrap() - 999.423_772_484_595_4).abs() < 1e-9);
        assert!(gamma_fn(cr(0.0)).is_err());
        assert!(gamma_fn(cr(-3.0)).is_err());
    }

    #[test]
    fn complex_values() {
        // Γ(1+i) and |Γ(½+it)|² = π/cosh(πt)
        let g = gamma_fn(c(1.0, 1.0)).unwrap();
        assert!((g - c(0.498_015_668_118_356, -0.154_949_828_301_811)).norm() < 1e-13);
        for t in [0.3, 1.0, 4.0] {
            let g = gamma_fn(c(0.5, t)).unwrap();
            let rel = (g.norm_sqr() - PI / (PI * t).cosh()).abs() / (PI / (PI * t).cosh());
            assert!(rel < 1e-12);
        }
    }

    #[test]
    fn recurrence() {
        for z in [c(0.3, 0.7), c(2.5, -3.0), c(-1.7, 0.4)] {
            let lhs = gamma_fn(z + 1.0).unwrap();
            let rhs = z * gamma_fn(z).unwrap();
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-12);
        }
    }

    #[test]
    fn digamma_at_one() {
        // Oracle: γ = lim (H_n − log n), accelerated with the 1/(2n) − 1/(12n²) correction.
        let n = 100_000u32;
        let mut h = 0.0;
        for k in 1..=n {
            h += 1.0 / k as f64;
        }
        let nf = n as f64;
        let gamma_oracle = h - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf);
        let psi1 = digamma_real(1.0).unwrap();
        assert!((psi1 + gamma_oracle).abs() < 1e-12);
        // finite difference of log Γ
        let h = 1e-5;
        let fd = (ln_gamma_real(1.0 + h).unwrap() - ln_gamma_real(1.0 - h).unwrap()) / (2.0 * h);
        assert!((fd - psi1).abs() < 1e-9);
        assert!((digamma_real(0.5).unwrap() + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-13);
        assert!((digamma_real(-0.5).unwrap() - (digamma_real(0.5).unwrap() + 2.0)).abs() < 1e-12);
    }
}
