//! Bessel J_ν, the normalised Bessel function f_ν, and the Macdonald integrals.
//!
//! `macdonald_k(z, a) = ∫₀^∞ t^{z−1} e^{−(a/2)(t + 1/t)} dt`, which is twice
//! the standard modified Bessel function K_z(a).

use super::gamma::gamma_real;
use crate::numerics::{integrate, Domain, Tolerance};
use crate::prelude::*;

const SERIES_LIMIT: f64 = 8.0;

fn asymptotic_threshold(nu: f64) -> f64 {
    25f64.max(10.0 + 2.0 * nu * nu)
}

/// Bessel's integral: (1/π)∫₀^π cos(νθ − x sin θ)dθ − (sin νπ/π)∫₀^∞ e^{−x sinh t − νt}dt.
fn j_integral(nu: f64, x: f64) -> Result<f64> {
    let tol = Tolerance::abs(1e-16).with_max_subdivisions(4000);
    let a = integrate(|th: f64| (nu * th - x * th.sin()).cos(), Domain::Finite(0.0, PI), &tol).into_result()?;
    let sn = (nu * PI).sin();
    let b =
        if sn == 0.0 { 0.0 } else { integrate(|t: f64| (-x * t.sinh() - nu * t).exp(), Domain::SemiInfinite(0.0), &tol).into_result()? };
    Ok((a - sn * b) / PI)
}

fn series_terms_f(nu: f64, s: Complex64) -> Complex64 {
    let q = s * s * 0.25;
    let mut t = cr(1.0);
    let mut sum = crate::numerics::ComplexSum::new();
    sum.add(t);
    let mut k = 0.0;
    loop {
        k += 1.0;
        t = -t * q / (k * (k + nu));
        sum.add(t);
        if t.norm() < 1e-18 * sum.value().norm().max(1e-300) && k > q.norm().sqrt() {
            break;
        }
        if k > 2000.0 {
            break;
        }
    }
    sum.value()
}

/// Hankel's asymptotic expansion of J_ν(x) for large real x.
fn j_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    let mut xp = 1.0;
    for k in 0..60 {
        let term = a / xp;
        if term.abs() > prev && k > 2 {
            break;
        }
        prev = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-17 {
            break;
        }
        let kf = (k + 1) as f64;
        a *= (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf);
        xp *= x;
    }
    let w = x - 0.5 * nu * PI - 0.25 * PI;
    (2.0 / (PI * x)).sqrt() * (p * w.cos() - q * w.sin())
}

/// J_ν(x) for real ν ≥ −½ and x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if nu < -0.5 {
        return Err(Error::Domain(format!("order must be at least -1/2, got {nu}")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("argument must be nonnegative, got {x}")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    if x >= asymptotic_threshold(nu) {
        return Ok(j_asymptotic(nu, x));
    }
    if x >= SERIES_LIMIT {
        return j_integral(nu, x);
    }
    let f = series_terms_f(nu, cr(x)).re;
    Ok(f * (0.5 * x).powf(nu) / gamma_real(nu + 1.0)?)
}

/// f_ν(s) = Γ(ν+1)(s/2)^{−ν} J_ν(s), the characteristic function of the symmetric Beta law.
///
/// Entire in `s`. The ascending series is used except on the real axis beyond
/// `|s| = 8`; for complex `|s| > 30` accuracy degrades.
pub fn bessel_f_nu(nu: f64, s: Complex64) -> Result<Complex64> {
    if nu < -0.5 {
        return Err(Error::Domain(format!("order must be at least -1/2, got {nu}")));
    }
    if s.im == 0.0 && s.re.abs() >= SERIES_LIMIT {
        let x = s.re.abs();
        let j = bessel_j(nu, x)?;
        return Ok(cr(gamma_real(nu + 1.0)? * (0.5 * x).powf(-nu) * j));
    }
    Ok(series_terms_f(nu, s))
}

fn k_cutoff(zre: f64, a: f64) -> f64 {
    let mut u = 1.0;
    while a * u.cosh() - zre.abs() * u < 60.0 {
        u += 0.25;
    }
    u
}

/// Macdonald integral in the cosh form, `∫_ℝ cosh(zu) e^{−a cosh u} du`.
pub fn macdonald_k(z: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("Macdonald integral needs a > 0, got {a}")));
    }
    let u_max = k_cutoff(z.re, a);
    let tol = Tolerance::rel(1e-14).with_max_subdivisions(4000);
    let r = integrate(|u: f64| (z * u).cosh() * (-a * u.cosh()).exp(), Domain::Finite(0.0, u_max), &tol);
    Ok(r.into_result()? * 2.0)
}

/// The same integral in its defining `t`-form, by an independent quadrature.
pub fn macdonald_k_tform(z: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("Macdonald integral needs a > 0, got {a}")));
    }
    let tol = Tolerance::rel(1e-13).with_max_subdivisions(4000);
    let f = |t: f64| {
        if t <= 0.0 {
            return cr(0.0);
        }
        let e = -0.5 * a * (t + 1.0 / t);
        cr(t).powc(z - 1.0) * e.exp()
    };
    let lo = integrate(f, Domain::Finite(0.0, 1.0), &tol).into_result()?;
    let hi = integrate(f, Domain::SemiInfinite(1.0), &tol).into_result()?;
    Ok(lo + hi)
}

/// 𝔊(z, a) = ∫_ℝ e^{−a(e^u + e^{−u}) + zu} du.
pub fn frak_g(z: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("G integral needs a > 0, got {a}")));
    }
    let tol = Tolerance::rel(1e-14).with_max_subdivisions(4000);
    let up = k_cutoff(z.re.max(0.0), 2.0 * a);
    let dn = k_cutoff(z.re.min(0.0), 2.0 * a);
    let f = |u: f64| (z * u - a * (u.exp() + (-u).exp())).exp();
    let r = integrate(f, Domain::Finite(-dn, up), &tol);
    r.into_result()
}

/// Residuals of the two substitution identities: cosh form vs t-form, and 𝔊(z,a) vs K_z(2a).
pub fn macdonald_identity_residuals(z: Complex64, a: f64) -> Result<(f64, f64)> {
    let k = macdonald_k(z, a)?;
    let kt = macdonald_k_tform(z, a)?;
    let g = frak_g(z, a)?;
    let k2 = macdonald_k(z, 2.0 * a)?;
    Ok(((k - kt).norm(), (g - k2).norm()))
}

/// E(T^s) for the inverse Gaussian with density `a e^{a²}/√(2πt³) e^{−(a²/2)(t + 1/t)}`.
///
/// Equals `a e^{a²}/√(2π) · K_{s−½}(a²)` in the normalisation of [`macdonald_k`].
pub fn inverse_gaussian_mellin(s: Complex64, a: f64) -> Result<Complex64> {
    let pref = a * (a * a).exp() / (2.0 * PI).sqrt();
    Ok(macdonald_k(s - 0.5, a * a)? * pref)
}

/// The printed prefactor form `√π a^{−1} K_{s−½}(a²)`, kept for reporting.
pub fn inverse_gaussian_mellin_literal(s: Complex64, a: f64) -> Result<Complex64> {
    Ok(macdonald_k(s - 0.5, a * a)? * (PI.sqrt() / a))
}

/// Residual of the displayed Pólya identity under the reading
/// `K_z(a) = √2 π a^{−2} e^{−a²} 𝔊(z, a²)` with `z = (σ − ½) + iτ`.
pub fn polya_identity_residual(sigma: f64, tau: f64, a: f64) -> Result<f64> {
    let z = c(sigma - 0.5, tau);
    let lhs = macdonald_k(z, a)?;
    let rhs = frak_g(z, a * a)? * (2f64.sqrt() * PI / (a * a) * (-a * a).exp());
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_half_orders() {
        for x in [0.1, 1.0, 5.0, 13.9, 14.1, 40.0, 300.0] {
            let jp = bessel_j(0.5, x).unwrap();
            let jm = bessel_j(-0.5, x).unwrap();
            let pref = (2.0 / (PI * x)).sqrt();
            assert!((jp - pref * x.sin()).abs() < 1e-13, "x={x}");
            assert!((jm - pref * x.cos()).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn j0_j1_reference() {
        assert!((bessel_j(0.0, 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(1.0, 2.0).unwrap() - 0.576_724_807_756_873_4).abs() < 1e-15);
        assert!((bessel_j(0.0, 20.0).unwrap() - 0.167_024_664_340_583).abs() < 1e-13);
        assert!((bessel_j(1.0, 14.0).unwrap() - 0.133_375_154_698_793).abs() < 1e-12);
        // both sides of each method switch
        for (x, v) in [
            (7.999_999_999, 0.234_636_346_711_593),
            (8.0, 0.234_636_346_853_915),
            (24.999_999, -0.125_350_350_861_023),
            (25.0, -0.125_350_249_580_29),
        ] {
            assert!((bessel_j(1.0, x).unwrap() - v).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn f_nu_closed_forms() {
        for s in [c(0.7, 0.0), c(2.0, 1.0), c(0.0, 3.0), c(-4.0, 0.5)] {
            assert!((bessel_f_nu(-0.5, s).unwrap() - s.cos()).norm() < 1e-13);
            assert!((bessel_f_nu(0.5, s).unwrap() - s.sin() / s).norm() < 1e-13);
        }
    }

    #[test]
    fn macdonald_half_order() {
        // K_{½}(a) = 2·√(π/(2a)) e^{−a} in this normalisation.
        for a in [0.5, 2.0, 5.0] {
            let k = macdonald_k(cr(0.5), a).unwrap();
            let kt = macdonald_k_tform(cr(0.5), a).unwrap();
            let exact = (2.0 * PI / a).sqrt() * (-a).exp();
            assert!((k.re - exact).abs() < 1e-12 * exact.max(1.0));
            assert!((kt.re - exact).abs() < 1e-11 * exact.max(1.0));
        }
    }

    #[test]
    fn macdonald_symmetry_and_substitution() {
        let z = c(0.3, 1.2);
        let a = macdonald_k(z, 1.5).unwrap();
        let b = macdonald_k(-z, 1.5).unwrap();
        assert!((a - b).norm() < 1e-13);
        let (r1, r2) = macdonald_identity_residuals(c(0.7, -0.4), 0.8).unwrap();
        assert!(r1 < 1e-10 && r2 < 1e-10, "{r1} {r2}");
    }

    #[test]
    fn inverse_gaussian_moments() {
        // E T = 1 and E T² = 1 + 1/a² for mean 1, shape a².
        for a in [0.7, 1.0, 2.0] {
            let m1 = inverse_gaussian_mellin(cr(1.0), a).unwrap().re;
            let m2 = inverse_gaussian_mellin(cr(2.0), a).unwrap().re;
            let m0 = inverse_gaussian_mellin(cr(0.0), a).unwrap().re;
            assert!((m0 - 1.0).abs() < 1e-12);
            assert!((m1 - 1.0).abs() < 1e-12);
            assert!((m2 - (1.0 + 1.0 / (a * a))).abs() < 1e-12);
        }
        let lit = inverse_gaussian_mellin_literal(cr(1.0), 1.0).unwrap().re;
        assert!((lit - 1.0).abs() > 0.1);
    }
}
