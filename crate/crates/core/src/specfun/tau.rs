//! Ramanujan τ, its L-series, the Fourier integral Ξ_τ and the σ₋₁ product identity.

use super::primes::sigma_minus1;
use crate::numerics::{integrate, Domain, NeumaierSum, Tolerance};
use crate::prelude::*;

/// Largest table size accepted; the quadratic expansion stays exact in `i128` well beyond it.
pub const TAU_MAX_N: usize = 20_000;

/// τ(1..=n_max) from `y Π (1 − y^k)^{24}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauTable {
    values: Vec<i128>,
}

impl TauTable {
    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    /// τ(n) for 1 ≤ n ≤ n_max.
    pub fn get(&self, n: usize) -> Option<i128> {
        if n == 0 {
            return None;
        }
        self.values.get(n - 1).copied()
    }

    pub fn values(&self) -> &[i128] {
        &self.values
    }
}

fn mul_trunc(a: &[i128], b: &[i128], len: usize) -> Result<Vec<i128>> {
    let mut out = vec![0i128; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            if y == 0 {
                continue;
            }
            let p = x.checked_mul(y).ok_or(Error::Overflow("tau expansion"))?;
            out[i + j] = out[i + j].checked_add(p).ok_or(Error::Overflow("tau expansion"))?;
        }
    }
    Ok(out)
}

/// Exact τ table. Π(1 − y^k)^3 is taken from Jacobi's series
/// Σ (−1)^m (2m+1) y^{m(m+1)/2} and raised to the 8th power by squaring,
/// with checked `i128` arithmetic throughout.
pub fn ramanujan_tau(n_max: usize) -> Result<TauTable> {
    if n_max == 0 {
        return Err(Error::Parameter("n_max must be at least 1".into()));
    }
    if n_max > TAU_MAX_N {
        return Err(Error::Overflow("tau table size exceeds the supported exact range"));
    }
    // coefficients of Π(1−y^k)^{24} up to degree n_max − 1
    let len = n_max;
    let mut j = vec![0i128; len];
    let mut m = 0usize;
    loop {
        let e = m * (m + 1) / 2;
        if e >= len {
            break;
        }
        let v = (2 * m + 1) as i128;
        j[e] = if m % 2 == 0 { v } else { -v };
        m += 1;
    }
    let j2 = mul_trunc(&j, &j, len)?;
    let j4 = mul_trunc(&j2, &j2, len)?;
    let j8 = mul_trunc(&j4, &j4, len)?;
    Ok(TauTable { values: j8 })
}

/// Σ_{n ≤ n_max} τ(n) n^{−s}, Re s > 13/2.
pub fn l_tau_partial(s: Complex64, table: &TauTable) -> Result<Complex64> {
    if !(s.re > 6.5) {
        return Err(Error::Domain(format!("L_tau series needs Re s > 13/2, got {s}")));
    }
    let mut acc = crate::numerics::ComplexSum::new();
    for (i, &t) in table.values().iter().enumerate() {
        let n = (i + 1) as f64;
        acc.add(cr(n).powc(-s) * t as f64);
    }
    Ok(acc.value())
}

fn log_euler_product(x: f64) -> f64 {
    // Σ_k log(1 − e^{−2πkx})
    let q = (-2.0 * PI * x).exp();
    let mut acc = NeumaierSum::new();
    let mut qk = q;
    while qk > 1e-18 {
        acc.add((-qk).ln_1p());
        qk *= q;
    }
    acc.value()
}

/// Φ_τ(t) = e^{−2π cosh t} Π_k (1 − e^{−2πk e^t})^{12} (1 − e^{−2πk e^{−t}})^{12}.
pub fn phi_tau(t: f64) -> f64 {
    let l = -2.0 * PI * t.cosh() + 12.0 * (log_euler_product(t.exp()) + log_euler_product((-t).exp()));
    l.exp()
}

/// F_τ(t) = e^{6t} g(e^{−2πe^t}) with g the τ generating function.
pub fn f_tau(t: f64, table: &TauTable) -> f64 {
    let ly = -2.0 * PI * t.exp();
    let mut acc = NeumaierSum::new();
    for (i, &tv) in table.values().iter().enumerate() {
        let n = (i + 1) as f64;
        let term = tv as f64 * (n * ly).exp();
        acc.add(term);
        if (n * ly).exp() * n.powf(6.5) < 1e-30 {
            break;
        }
    }
    (6.0 * t).exp() * acc.value()
}

/// Half-width of the Ξ_τ window: e^{−2π cosh T} < 10^{−18} holds comfortably at 3.7.
pub const XI_TAU_WINDOW: f64 = 3.7;

/// Ξ_τ(s) = 2 ∫₀^T cos(st) Φ_τ(t) dt, using the evenness of Φ_τ.
pub fn xi_tau(s: f64, tol: &Tolerance) -> Result<f64> {
    let r = integrate(|t: f64| (s * t).cos() * phi_tau(t), Domain::Finite(0.0, XI_TAU_WINDOW), tol);
    Ok(2.0 * r.into_result()?)
}

/// ∫_{−T}^{T} e^{ist} Φ_τ(t) dt without using any symmetry.
pub fn xi_tau_full(s: f64, tol: &Tolerance) -> Result<Complex64> {
    let r = integrate(|t: f64| c(0.0, s * t).exp() * phi_tau(t), Domain::Finite(-XI_TAU_WINDOW, XI_TAU_WINDOW), tol);
    r.into_result()
}

/// Residual of `Π(1 − e^{−2πnx}) = exp(−Σ σ₋₁(n) e^{−2πnx})` in log form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaResidual {
    pub residual: f64,
    /// Bound on the mismatch caused by truncating both sides at n_max.
    pub truncation_bound: f64,
}

pub fn sigma_minus1_identity_residual(x: f64, n_max: usize) -> Result<SigmaResidual> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let q = (-2.0 * PI * x).exp();
    let mut lhs = NeumaierSum::new();
    let mut rhs = NeumaierSum::new();
    for n in 1..=n_max {
        let qn = q.powi(n as i32);
        lhs.add((-qn).ln_1p());
        rhs.add(sigma_minus1(n as u64) * qn);
    }
    let qn1 = q.powi(n_max as i32 + 1);
    let bound = 2.0 * qn1 / ((1.0 - q) * (1.0 - q));
    Ok(SigmaResidual { residual: (lhs.value() + rhs.value()).abs(), truncation_bound: bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_tau() {
        let t = ramanujan_tau(12).unwrap();
        let expect = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(t.get(n + 1), Some(*e as i128));
        }
        assert!(ramanujan_tau(0).is_err());
        assert!(matches!(ramanujan_tau(TAU_MAX_N + 1), Err(Error::Overflow(_))));
    }

    #[test]
    fn tau_multiplicative() {
        let t = ramanujan_tau(400).unwrap();
        for m in 1..20usize {
            for n in 1..20usize {
                if super::super::primes::gcd(m as u64, n as u64) == 1 && m * n <= 400 {
                    assert_eq!(t.get(m * n).unwrap(), t.get(m).unwrap() * t.get(n).unwrap());
                }
            }
        }
        // Hecke: τ(p²) = τ(p)² − p^{11}
        let p = 7i128;
        assert_eq!(t.get(49).unwrap(), t.get(7).unwrap().pow(2) - p.pow(11));
    }

    #[test]
    fn phi_matches_generating_function() {
        let t = ramanujan_tau(200).unwrap();
        for x in [-0.5, 0.0, 0.3, 1.0, 2.0] {
            let a = phi_tau(x);
            let b = f_tau(x, &t);
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300), "t={x}: {a} {b}");
        }
        assert_eq!(phi_tau(0.7), phi_tau(-0.7));
    }

    #[test]
    fn xi_tau_even_real() {
        let tol = Tolerance::abs(1e-16);
        for s in [0.0, 1.0, 2.0] {
            let a = xi_tau_full(s, &tol).unwrap();
            let b = xi_tau_full(-s, &tol).unwrap();
            let e = xi_tau(s, &tol).unwrap();
            assert!(a.im.abs() < 1e-15);
            assert!((a - b).norm() < 1e-15);
            assert!((a.re - e).abs() < 1e-15);
        }
    }

    #[test]
    fn sigma_identity() {
        let r = sigma_minus1_identity_residual(1.0, 50).unwrap();
        assert!(r.residual < 1e-12);
        let far = sigma_minus1_identity_residual(10.0, 5).unwrap();
        assert!(far.residual < 1e-30);
    }
}
