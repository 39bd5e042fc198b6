//! Dedekind η on the imaginary axis, its Laplace transforms, and the β Mellin check.

use super::gamma::gamma_real;
use super::zeta::dirichlet_beta;
use crate::numerics::{integrate, Domain, Tolerance};
use crate::prelude::*;

/// How to evaluate η(ix).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaMethod {
    /// q^{1/24} Π (1 − qⁿ)
    QProduct,
    /// (2/√3) Σ cos(π(2n+1)/6) q^{(2n+1)²/24}
    EulerSeries,
}

const CUT: f64 = 1e-18;

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("eta needs x > 0, got {x}")));
    }
    Ok(())
}

/// η(ix) with q = e^{−2πx}.
pub fn dedekind_eta(x: f64, method: EtaMethod) -> Result<f64> {
    check_x(x)?;
    let lq = -2.0 * PI * x;
    let q = lq.exp();
    match method {
        EtaMethod::QProduct => {
            let mut log = crate::numerics::NeumaierSum::new();
            let mut qn = q;
            while qn > CUT {
                log.add((-qn).ln_1p());
                qn *= q;
            }
            Ok((lq / 24.0 + log.value()).exp())
        }
        EtaMethod::EulerSeries => {
            // 2/√3 · cos(π(2n+1)/6) cycles through 1, 0, −1, −1, 0, 1.
            const PATTERN: [f64; 6] = [1.0, 0.0, -1.0, -1.0, 0.0, 1.0];
            let mut sum = crate::numerics::NeumaierSum::new();
            let mut n = 0usize;
            loop {
                let m = (2 * n + 1) as f64;
                let t = (lq * m * m / 24.0).exp();
                if t < CUT * 1e-3 {
                    break;
                }
                sum.add(PATTERN[n % 6] * t);
                n += 1;
            }
            Ok(sum.value())
        }
    }
}

/// η(ix) using η(ix) = x^{−½} η(i/x) for x < 1, so the product always has q ≤ e^{−2π}.
pub fn eta_fast(x: f64) -> Result<f64> {
    check_x(x)?;
    if x < 1.0 {
        Ok(dedekind_eta(1.0 / x, EtaMethod::QProduct)? / x.sqrt())
    } else {
        dedekind_eta(x, EtaMethod::QProduct)
    }
}

/// Jacobi's series η³(ix) = Σ (−1)ⁿ (2n+1) q^{(2n+1)²/8}.
pub fn eta_cubed_jacobi(x: f64) -> Result<f64> {
    check_x(x)?;
    let lq = -2.0 * PI * x;
    let mut sum = crate::numerics::NeumaierSum::new();
    let mut n = 0usize;
    loop {
        let m = (2 * n + 1) as f64;
        let t = m * (lq * m * m / 8.0).exp();
        if t < CUT * 1e-3 {
            break;
        }
        sum.add(if n % 2 == 0 { t } else { -t });
        n += 1;
    }
    Ok(sum.value())
}

fn eta3_fast(x: f64) -> Result<f64> {
    if x < 1.0 {
        Ok(eta_cubed_jacobi(1.0 / x)? * x.powf(-1.5))
    } else {
        eta_cubed_jacobi(x)
    }
}

/// √(π/s) sinh(2√(πs/3)) / cosh(√(3πs)).
pub fn eta_lt_closed(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("Laplace transform needs s > 0, got {s}")));
    }
    let a = 2.0 * (PI * s / 3.0).sqrt();
    let b = (3.0 * PI * s).sqrt();
    // ratio sinh(a)/cosh(b) written with decaying exponentials
    let ratio = (a - b).exp() * (1.0 - (-2.0 * a).exp()) / (1.0 + (-2.0 * b).exp());
    Ok((PI / s).sqrt() * ratio)
}

/// sech(√(πs)).
pub fn eta3_lt_closed(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("Laplace transform needs s > 0, got {s}")));
    }
    Ok(1.0 / (PI * s).sqrt().cosh())
}

/// ∫₀^∞ e^{−sx} η^k(ix) dx by quadrature, k ∈ {1, 3}.
pub fn eta_power_lt_quadrature(s: f64, power: u8) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("Laplace transform needs s > 0, got {s}")));
    }
    let tol = Tolerance::abs(1e-14).with_max_subdivisions(4000);
    let f = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        let e = match power {
            3 => eta3_fast(x),
            _ => eta_fast(x),
        };
        (-s * x).exp() * e.unwrap_or(0.0)
    };
    let a = integrate(f, Domain::Finite(0.0, 1.0), &tol).into_result()?;
    let b = integrate(f, Domain::SemiInfinite(1.0), &tol).into_result()?;
    Ok(a + b)
}

/// Mellin check for β: `∫₀^∞ x^{s−1} sech(cx) dx` with c = √(π/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaMellin {
    pub integral: f64,
    /// integral / (Γ(s)β(s))
    pub fitted_constant: f64,
    /// 2c^{−s}
    pub expected_constant: f64,
    pub residual: f64,
}

pub fn beta_mellin_check(s: f64) -> Result<BetaMellin> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("Mellin check needs s > 0, got {s}")));
    }
    let cc = (0.5 * PI).sqrt();
    let tol = Tolerance::abs(1e-14).with_max_subdivisions(4000);
    let f = |x: f64| if x <= 0.0 { 0.0 } else { x.powf(s - 1.0) / (cc * x).cosh() };
    let a = integrate(f, Domain::Finite(0.0, 1.0), &tol).into_result()?;
    let b = integrate(f, Domain::SemiInfinite(1.0), &tol).into_result()?;
    let integral = a + b;
    let fitted = integral / (gamma_real(s)? * dirichlet_beta(s)?);
    let expected = 2.0 * cc.powf(-s);
    Ok(BetaMellin { integral, fitted_constant: fitted, expected_constant: expected, residual: (fitted - expected).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_agree() {
        let mut x = 0.05;
        while x <= 5.0 {
            let a = dedekind_eta(x, EtaMethod::QProduct).unwrap();
            let b = dedekind_eta(x, EtaMethod::EulerSeries).unwrap();
            assert!((a - b).abs() < 1e-12, "x={x}: {a} {b}");
            x += 0.05;
        }
    }

    #[test]
    fn modular_symmetry() {
        for x in [0.5, 2.0] {
            let a = dedekind_eta(1.0 / x, EtaMethod::QProduct).unwrap();
            let b = x.sqrt() * dedekind_eta(x, EtaMethod::EulerSeries).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
        let x = 8.0;
        assert!((dedekind_eta(x, EtaMethod::QProduct).unwrap() / (-PI * x / 12.0).exp() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cube_matches_jacobi() {
        let mut x = 0.1;
        while x <= 3.0 {
            let e = dedekind_eta(x, EtaMethod::QProduct).unwrap();
            assert!((e * e * e - eta_cubed_jacobi(x).unwrap()).abs() < 1e-12);
            x += 0.1;
        }
    }

    #[test]
    fn laplace_transforms() {
        for s in [1.0, 2.0, 5.0] {
            let q1 = eta_power_lt_quadrature(s, 1).unwrap();
            let q3 = eta_power_lt_quadrature(s, 3).unwrap();
            assert!((q1 - eta_lt_closed(s).unwrap()).abs() < 1e-10);
            assert!((q3 - eta3_lt_closed(s).unwrap()).abs() < 1e-10);
        }
        assert!((eta_lt_closed(1.0).unwrap() - 0.625_040_287_167_537).abs() < 1e-14);
        assert!(eta_lt_closed(1e4).unwrap() < 1e-30);
    }

    #[test]
    fn beta_mellin() {
        let m = beta_mellin_check(2.0).unwrap();
        assert!((m.fitted_constant - 4.0 / PI).abs() < 1e-10);
        assert!(m.residual < 1e-6);
    }
}
