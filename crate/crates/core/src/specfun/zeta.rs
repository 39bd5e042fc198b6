//! ζ, Hurwitz ζ, Dirichlet η and β, the Riemann ξ function and the Euler product.

use super::gamma::gamma_fn;
use super::primes::Sieve;
use crate::prelude::*;

/// Σ_{k≥0} (−1)^k a_k for a completely monotone sequence, by the
/// Cohen–Rodriguez Villegas–Zagier acceleration with `n` terms.
pub fn alternating_sum<F: FnMut(usize) -> Complex64>(n: usize, mut a: F) -> Complex64 {
    let n = n.clamp(1, 380);
    let nf = n as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(nf);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut cc = -d;
    let mut s = cr(0.0);
    for k in 0..n {
        cc = b - cc;
        s += a(k) * cc;
        let kf = k as f64;
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

fn terms_for(s: Complex64) -> usize {
    (40.0 + 2.5 * s.im.abs()) as usize
}

/// Dirichlet η(s) = Σ (−1)^{n+1} n^{−s}, Re s > 0.
pub fn dirichlet_eta(s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("eta series needs Re s > 0, got {s}")));
    }
    Ok(alternating_sum(terms_for(s), |k| cr((k + 1) as f64).powc(-s)))
}

/// e^z − 1 without cancellation near zero.
pub fn expm1_c(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = z;
        let mut sum = z;
        let mut k = 1.0;
        while term.norm() > 1e-17 * sum.norm() {
            k += 1.0;
            term = term * z / k;
            sum += term;
        }
        sum
    } else {
        z.exp() - 1.0
    }
}

/// (s − 1)/(1 − 2^{1−s}), continuous through s = 1 where it equals 1/log 2.
fn eta_to_zeta_factor(s: Complex64) -> Complex64 {
    let w = (cr(1.0) - s) * 2f64.ln();
    let den = -expm1_c(w);
    if den.norm() == 0.0 {
        return cr(1.0 / 2f64.ln());
    }
    if w.norm() < 1e-8 {
        // (s−1)/(−expm1(w)) with w = (1−s) log 2: expand to second order
        return cr(1.0 / 2f64.ln()) * (cr(1.0) - w * 0.5);
    }
    (s - 1.0) / den
}

/// Riemann ζ(s) for Re s > 0, s ≠ 1, via the accelerated η series.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s == cr(1.0) {
        return Err(Error::Pole { re: 1.0, im: 0.0 });
    }
    let eta = dirichlet_eta(s)?;
    let den = -expm1_c((cr(1.0) - s) * 2f64.ln());
    Ok(eta / den)
}

pub fn zeta_real(x: f64) -> Result<f64> {
    Ok(zeta(cr(x))?.re)
}

const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174_611.0 / 330.0,
    854_513.0 / 138.0,
    -236_364_091.0 / 2730.0,
];

/// Hurwitz ζ(s, a) = Σ_{k≥0} (k + a)^{−s} for real `a > 0`, by Euler–Maclaurin.
///
/// Valid for every `s ≠ 1`; the direct sum runs to `N = 20 + ⌈|s|⌉`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("Hurwitz zeta needs a > 0, got {a}")));
    }
    if s == cr(1.0) {
        return Err(Error::Pole { re: 1.0, im: 0.0 });
    }
    let n = 20 + s.norm().ceil() as usize;
    let mut acc = crate::numerics::ComplexSum::new();
    for k in 0..n {
        acc.add(cr(k as f64 + a).powc(-s));
    }
    let x = n as f64 + a;
    let xs = cr(x).powc(-s);
    acc.add(xs * x / (s - 1.0));
    acc.add(xs * 0.5);
    let mut rising = s;
    let mut xp = xs / x;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let term = rising * xp * (*b / fact);
        acc.add(term);
        let j2 = 2.0 * (j as f64 + 1.0);
        rising = rising * (s + j2 - 1.0) * (s + j2);
        xp /= x * x;
        fact *= (j2 + 1.0) * (j2 + 2.0);
    }
    Ok(acc.value())
}

/// Real Hurwitz ζ(p, a) for `p > 1`.
pub fn hurwitz_zeta_real(p: f64, a: f64) -> Result<f64> {
    Ok(hurwitz_zeta(cr(p), a)?.re)
}

/// ξ(s) = ½ s (s − 1) π^{−s/2} Γ(s/2) ζ(s) on Re s > 0.
///
/// The pole of ζ at 1 is cancelled analytically, so ξ(1) = ½ is returned.
pub fn xi(s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("xi is evaluated on Re s > 0, got {s}")));
    }
    let eta = dirichlet_eta(s)?;
    let g = gamma_fn(s * 0.5)?;
    let pis = cr(PI).powc(-s * 0.5);
    Ok(s * 0.5 * pis * g * eta * eta_to_zeta_factor(s))
}

pub fn xi_real(x: f64) -> Result<f64> {
    Ok(xi(cr(x))?.re)
}

/// Dirichlet β(s) = Σ_{n≥0} (−1)^n (2n+1)^{−s}, Re s > 0.
pub fn dirichlet_beta_c(s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("beta series needs Re s > 0, got {s}")));
    }
    Ok(alternating_sum(terms_for(s), |k| cr((2 * k + 1) as f64).powc(-s)))
}

pub fn dirichlet_beta(s: f64) -> Result<f64> {
    Ok(dirichlet_beta_c(cr(s))?.re)
}

/// Truncated Euler product with its tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerProduct {
    pub value: f64,
    /// Bound on |ζ(α) − value|.
    pub tail_bound: f64,
    pub primes_used: usize,
}

/// Π_{p ≤ P} (1 − p^{−α})^{−1}.
///
/// The log of the omitted factors is at most
/// `Σ_{n>P} n^{−α}/(1 − P^{−α}) ≤ P^{1−α}/((α−1)(1 − P^{−α}))`.
pub fn euler_product_zeta(alpha: f64, prime_bound: usize) -> Result<EulerProduct> {
    if !(alpha > 1.0) {
        return Err(Error::Domain(format!("Euler product needs alpha > 1, got {alpha}")));
    }
    if prime_bound < 2 {
        return Err(Error::Parameter(format!("prime bound must be at least 2, got {prime_bound}")));
    }
    let sieve = Sieve::new(prime_bound);
    euler_product_with(&sieve, alpha)
}

pub fn euler_product_with(sieve: &Sieve, alpha: f64) -> Result<EulerProduct> {
    let mut log = crate::numerics::NeumaierSum::new();
    let mut count = 0;
    for p in sieve.primes() {
        log.add(-(-(p as f64).powf(-alpha)).ln_1p());
        count += 1;
    }
    let value = log.value().exp();
    let pb = sieve.limit() as f64;
    let log_tail = pb.powf(1.0 - alpha) / ((alpha - 1.0) * (1.0 - pb.powf(-alpha)));
    Ok(EulerProduct { value, tail_bound: value * log_tail.exp_m1(), primes_used: count })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_known_values() {
        assert!((zeta_real(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta_real(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta_real(0.5).unwrap() + 1.460_354_508_809_586_8).abs() < 1e-13);
        assert!((zeta_real(3.0).unwrap() - 1.202_056_903_159_594_3).abs() < 1e-14);
        assert!(zeta(cr(1.0)).is_err());
        let z = zeta(cr(0.3)).unwrap();
        assert_eq!(z.im, 0.0);
    }

    #[test]
    fn zeta_first_zero() {
        let z = zeta(c(0.5, 14.134_725_141_734_693)).unwrap();
        assert!(z.norm() < 1e-12);
    }

    #[test]
    fn zeta_matches_hurwitz() {
        for s in [c(0.3, 0.0), c(0.5, 3.0), c(2.0, -1.0), c(1.5, 7.0), c(0.8, 0.2)] {
            let a = zeta(s).unwrap();
            let b = hurwitz_zeta(s, 1.0).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "{s}: {a} {b}");
        }
    }

    #[test]
    fn hurwitz_tails() {
        // ζ(2, a) − ζ(2, a+1) = a^{−2}
        for a in [0.25, 1.0, 7.5, 1e4] {
            let d = hurwitz_zeta_real(2.0, a).unwrap() - hurwitz_zeta_real(2.0, a + 1.0).unwrap();
            assert!((d - 1.0 / (a * a)).abs() < 1e-14 * (1.0 / (a * a)).max(1.0));
        }
        let direct: f64 = (0..2_000_000).map(|k| 1.0 / (k as f64 + 1e4).powi(4)).sum();
        let tail = 1.0 / (3.0 * (2e6f64 + 1e4).powi(3));
        let h = hurwitz_zeta_real(4.0, 1e4).unwrap();
        assert!((h - direct - tail).abs() / h < 1e-9);
    }

    #[test]
    fn xi_values() {
        assert!((xi_real(0.5).unwrap() - 0.497_120_778_188_314_1).abs() < 1e-12);
        assert!((xi_real(1.0).unwrap() - 0.5).abs() < 1e-14);
        assert!((xi_real(1.0 + 1e-9).unwrap() - 0.5).abs() < 1e-9);
        // ξ(2) = π/6
        assert!((xi_real(2.0).unwrap() - PI / 6.0).abs() < 1e-13);
        for s in [0.3, 0.5, 0.7, 0.05] {
            assert!((xi_real(s).unwrap() - xi_real(1.0 - s).unwrap()).abs() < 1e-12);
        }
        let z = xi(c(0.5, 2.0)).unwrap();
        assert!(z.im.abs() < 1e-14);
    }

    #[test]
    fn beta_values() {
        assert!((dirichlet_beta(1.0).unwrap() - PI / 4.0).abs() < 1e-14);
        assert!((dirichlet_beta(2.0).unwrap() - 0.915_965_594_177_219).abs() < 1e-14);
        assert!((dirichlet_beta(3.0).unwrap() - PI.powi(3) / 32.0).abs() < 1e-14);
    }

    #[test]
    fn euler_product() {
        let e = euler_product_zeta(2.0, 2).unwrap();
        assert!((e.value - 4.0 / 3.0).abs() < 1e-15);
        let e = euler_product_zeta(4.0, 1000).unwrap();
        assert!((e.value - PI.powi(4) / 90.0).abs() < 1e-9);
        let e = euler_product_zeta(2.0, 100_000).unwrap();
        let err = (e.value - PI * PI / 6.0).abs();
        assert!(err < e.tail_bound);
        assert!(err > 1e-6);
        assert!(euler_product_zeta(1.0, 10).is_err());
    }

    #[test]
    fn expm1_small() {
        let z = c(1e-10, -2e-10);
        assert!((expm1_c(z) - z).norm() < 1e-19);
    }
}
