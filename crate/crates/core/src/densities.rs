//! Series and closed-form densities: Pólya's ξ density, the W_a density,
//! the Ostrovskii class, the sech-type Fourier integrals and the Kendall
//! convolution.

use crate::numerics::{integrate, Domain, NeumaierSum, Tolerance};
use crate::prelude::*;
use crate::specfun::zeta::xi_real;

/// ξ(½).
pub const XI_HALF: f64 = 0.497_120_778_188_314_1;

fn polya_log_terms(y: f64, tol: f64) -> Vec<(f64, f64)> {
    // p_n(y) = 2n²π(2πn²e^{−2y} − 3) e^{−5y/2 − n²πe^{−2y}}, returned as (sign, log|p_n|)
    let q = (-2.0 * y).exp();
    let mut out = Vec::new();
    let mut n = 1.0f64;
    loop {
        let inner = 2.0 * PI * n * n * q - 3.0;
        let le = -2.5 * y - n * n * PI * q;
        if inner != 0.0 {
            out.push((inner.signum(), (2.0 * n * n * PI * inner.abs()).ln() + le));
        }
        // terms decay like e^{−n²πq}; stop once they are below tol relative to the first
        if n > 1.0 && le - out[0].1 < tol.ln() - 5.0 && 2.0 * PI * n * n * q > 3.0 {
            break;
        }
        if n > 1e6 {
            break;
        }
        n += 1.0;
    }
    out
}

fn log_sum(terms: &[(f64, f64)]) -> Option<f64> {
    let m = terms.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
    let mut acc = NeumaierSum::new();
    for &(s, l) in terms {
        acc.add(s * (l - m).exp());
    }
    let v = acc.value();
    if v > 0.0 {
        Some(m + v.ln())
    } else {
        None
    }
}

/// Σ p_n(y) without symmetrisation; converges fastest for y ≤ 0.
pub fn polya_raw_series(y: f64, tol: f64) -> f64 {
    let terms = polya_log_terms(y, tol);
    let mut acc = NeumaierSum::new();
    for (s, l) in terms {
        acc.add(s * l.exp());
    }
    acc.value()
}

/// log p(x), evaluated at −|x| where the series converges geometrically.
pub fn polya_log_density(x: f64, tol: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    let terms = polya_log_terms(-x.abs(), tol);
    log_sum(&terms).map(|l| l - XI_HALF.ln()).ok_or_else(|| Error::Domain(format!("density series is not positive at {x}")))
}

/// p(x) = ξ(½)^{−1} Σ_n p_n(−|x|).
pub fn polya_density(x: f64, tol: f64) -> Result<f64> {
    Ok(polya_log_density(x, tol)?.exp())
}

/// log of the two-sided tail formula 4π² e^{(9/2)|x| − πe^{2|x|}}.
pub fn polya_log_tail(x: f64) -> f64 {
    let y = x.abs();
    (4.0 * PI * PI).ln() + 4.5 * y - PI * (2.0 * y).exp()
}

/// max |Σp_n(x) − Σp_n(−x)| over the grid, with the raw series summed at both signs.
pub fn polya_symmetry_residual(grid: &[f64], tol: f64) -> f64 {
    grid.iter().map(|&x| (polya_raw_series(x, tol) - polya_raw_series(-x, tol)).abs() / XI_HALF).fold(0.0, f64::max)
}

/// ∫ e^{sx} p(x) dx by quadrature; compare with ξ(½+s)/ξ(½).
pub fn polya_mgf_quadrature(s: f64, tol: &Tolerance) -> Result<f64> {
    let f = |x: f64| (s * x).exp() * polya_density(x, 1e-18).unwrap_or(0.0);
    let a = integrate(f, Domain::Finite(-4.0, 0.0), tol).into_result()?;
    let b = integrate(f, Domain::Finite(0.0, 4.0), tol).into_result()?;
    Ok(a + b)
}

pub fn polya_mgf_closed(s: f64) -> Result<f64> {
    Ok(xi_real(0.5 + s)? / XI_HALF)
}

/// A density value with its truncation error and a reliability flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityValue {
    pub value: f64,
    pub truncation_error: f64,
    /// Set when the series is evaluated below its reliable range.
    pub near_zero_warning: bool,
}

/// Density of W_a = S_a + S′_a: Σ π²(π²n²x/a² − 3)(n²/a²) e^{−π²n²x/(2a²)}.
///
/// Below x = 2a²/π the dual series
/// 8a³√(2/π) x^{−5/2} Σ k²(2k²a²/x − 3/2) e^{−2k²a²/x} is summed instead.
/// The warning flag marks x < 0.01a², where the density is below 2e−79.
pub fn w_a_density(x: f64, a: f64, tol: f64) -> Result<DensityValue> {
    if !(x > 0.0) || !(a > 0.0) {
        return Err(Error::Domain(format!("W_a density needs x > 0 and a > 0, got x={x}, a={a}")));
    }
    let near_zero_warning = x < 0.01 * a * a;
    if x < 2.0 * a * a / PI {
        return Ok(w_a_density_dual(x, a, tol, near_zero_warning));
    }
    let k = PI * PI / (a * a);
    let mut acc = NeumaierSum::new();
    let mut n = 1.0f64;
    let mut last;
    loop {
        let m = k * n * n;
        let e = (-0.5 * m * x).exp();
        let term = PI * PI * (m * x - 3.0) * (n * n / (a * a)) * e;
        acc.add(term);
        last = term.abs();
        // past the peak the terms decay faster than geometrically
        if m * x > 6.0 && last < tol * acc.value().abs().max(1e-300) {
            break;
        }
        if n > 1e7 {
            break;
        }
        n += 1.0;
    }
    let ratio = (-0.5 * k * (2.0 * n + 1.0) * x).exp();
    let truncation_error = last * ratio / (1.0 - ratio).max(1e-300);
    Ok(DensityValue { value: acc.value(), truncation_error, near_zero_warning })
}

fn w_a_density_dual(x: f64, a: f64, tol: f64, near_zero_warning: bool) -> DensityValue {
    let b = 2.0 * a * a / x;
    let pre = 8.0 * a * a * a * (2.0 / PI).sqrt() * x.powf(-2.5);
    let mut acc = NeumaierSum::new();
    let mut k = 1.0f64;
    let mut last;
    loop {
        let k2 = k * k;
        let e = (-b * k2).exp();
        let term = pre * k2 * (b * k2 - 1.5) * e;
        acc.add(term);
        last = term.abs();
        if (b * k2 > 3.0 && last <= tol * acc.value().abs()) || e == 0.0 || k > 1e4 {
            break;
        }
        k += 1.0;
    }
    let ratio = (-b * (2.0 * k + 1.0)).exp();
    DensityValue { value: acc.value(), truncation_error: last * ratio / (1.0 - ratio), near_zero_warning }
}

/// The printed series without the factor x, kept for reporting.
pub fn w_a_density_literal(x: f64, a: f64) -> f64 {
    let k = PI * PI / (a * a);
    let mut acc = NeumaierSum::new();
    for n in 1..100_000 {
        let m = k * (n * n) as f64;
        let e = (-0.5 * m * x).exp();
        acc.add(PI * PI * (m - 3.0) * ((n * n) as f64 / (a * a)) * e);
        if e < 1e-30 {
            break;
        }
    }
    acc.value()
}

/// E(W_a^s) by quadrature beside the two closed-form readings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinCheck {
    pub s: f64,
    pub quadrature: f64,
    /// 2(2a²/π)^s ξ(s)
    pub literal: f64,
    /// 2(2a²/π)^s ξ(2s)
    pub corrected: f64,
}

/// The quadrature starts at x₀ = 0.01a², below which the density is under 1e−40.
pub fn w_a_mellin_check(a: f64, s: f64, tol: &Tolerance) -> Result<MellinCheck> {
    if !(a > 0.0) || !(s > 0.0) {
        return Err(Error::Domain(format!("need a > 0 and s > 0, got a={a}, s={s}")));
    }
    let f = |x: f64| x.powf(s) * w_a_density(x, a, 1e-17).map(|d| d.value).unwrap_or(f64::NAN);
    let x0 = 0.01 * a * a;
    let mid = 2.0 * a * a;
    let q = integrate(f, Domain::Finite(x0, mid), tol).into_result()? + integrate(f, Domain::SemiInfinite(mid), tol).into_result()?;
    let pref = 2.0 * (2.0 * a * a / PI).powf(s);
    Ok(MellinCheck { s, quadrature: q, literal: pref * xi_real(s)?, corrected: pref * xi_real(2.0 * s)? })
}

/// Parameters of f_δ(z) = 1/z² − 1/(Cz) + δ Σ a_k/(z + h_k).
#[derive(Debug, Clone, PartialEq)]
pub struct OstrovskiiParams {
    pub c: f64,
    pub b: f64,
    pub delta: f64,
    pub a_k: Vec<f64>,
    pub h_k: Vec<f64>,
}

impl OstrovskiiParams {
    pub fn new(c: f64, b: f64, delta: f64, a_k: Vec<f64>, h_k: Vec<f64>) -> Result<Self> {
        let p = OstrovskiiParams { c, b, delta, a_k, h_k };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > PI / 2.0 && self.c < self.b) {
            return Err(Error::Parameter(format!("need π/2 < C < B, got C={}, B={}", self.c, self.b)));
        }
        if !(self.b > 1.0) {
            return Err(Error::Parameter("B must exceed 1".into()));
        }
        if !(self.delta >= 0.0) {
            return Err(Error::Parameter("δ must be nonnegative".into()));
        }
        if self.a_k.len() != self.h_k.len() {
            return Err(Error::Parameter("a_k and h_k differ in length".into()));
        }
        if self.a_k.iter().any(|&a| !(a > 0.0)) {
            return Err(Error::Parameter("a_k must be positive".into()));
        }
        if self.h_k.iter().any(|&h| !(h >= self.b)) {
            return Err(Error::Parameter("h_k must be at least B".into()));
        }
        Ok(())
    }

    pub fn with_delta(&self, delta: f64) -> Self {
        OstrovskiiParams { delta, ..self.clone() }
    }

    /// α_k = arccosh(h_k).
    pub fn alphas(&self) -> Vec<f64> {
        self.h_k.iter().map(|h| h.acosh()).collect()
    }
}

pub fn ostrovskii_f(z: f64, p: &OstrovskiiParams) -> Result<f64> {
    p.validate()?;
    if z == 0.0 {
        return Err(Error::Domain("f_δ has a pole at 0".into()));
    }
    let g: f64 = p.a_k.iter().zip(&p.h_k).map(|(a, h)| a / (z + h)).sum();
    Ok(1.0 / (z * z) - 1.0 / (p.c * z) + p.delta * g)
}

/// φ_δ(t) = f_δ(cosh t)/f_δ(1).
pub fn ostrovskii_cf(t: f64, p: &OstrovskiiParams) -> Result<f64> {
    Ok(ostrovskii_f(t.cosh(), p)? / ostrovskii_f(1.0, p)?)
}

/// h_δ(x) = {x cosh(πx/2) − C^{−1} sinh(πx/2) + δ Σ a_k sin(α_k x)/sinh α_k} / (f_δ(1) sinh πx).
///
/// For |x| < 1e−3 the bracket and sinh πx are both expanded to fifth order
/// in x; the limit at 0 is (1 − π/(2C) + δ Σ a_k α_k/sinh α_k)/(π f_δ(1)).
pub fn ostrovskii_density(x: f64, p: &OstrovskiiParams) -> Result<f64> {
    p.validate()?;
    let f1 = ostrovskii_f(1.0, p)?;
    let al = p.alphas();
    let x = x.abs();
    if x < 1e-3 {
        let h = PI / 2.0;
        let mut c1 = 1.0 - h / p.c;
        let mut c3 = h * h / 2.0 - h.powi(3) / (6.0 * p.c);
        let mut c5 = h.powi(4) / 24.0 - h.powi(5) / (120.0 * p.c);
        for (a, alpha) in p.a_k.iter().zip(&al) {
            let w = p.delta * a / alpha.sinh();
            c1 += w * alpha;
            c3 -= w * alpha.powi(3) / 6.0;
            c5 += w * alpha.powi(5) / 120.0;
        }
        let x2 = x * x;
        let px2 = PI * PI * x2;
        // bracket/x over sinh(πx)/x
        let num = c1 + c3 * x2 + c5 * x2 * x2;
        let den = PI * (1.0 + px2 / 6.0 + px2 * px2 / 120.0);
        return Ok(num / den / f1);
    }
    // every term over sinh πx, written with decaying exponentials
    let e = (-PI * x).exp();
    let d = 1.0 - e * e;
    let eh = (-0.5 * PI * x).exp();
    let mut v = (x * (eh + eh * e) - (eh - eh * e) / p.c) / d;
    for (a, alpha) in p.a_k.iter().zip(&al) {
        v += p.delta * a * (alpha * x).sin() / alpha.sinh() * 2.0 * e / d;
    }
    Ok(v / f1)
}

/// |∫ e^{ixt} h_δ(x) dx − φ_δ(t)| by quadrature.
pub fn ostrovskii_cf_residual(t: f64, p: &OstrovskiiParams, tol: &Tolerance) -> Result<f64> {
    let f = |x: f64| 2.0 * (t * x).cos() * ostrovskii_density(x, p).unwrap_or(f64::NAN);
    let a = integrate(f, Domain::Finite(0.0, 10.0), tol).into_result()?;
    let b = integrate(f, Domain::SemiInfinite(10.0), tol).into_result()?;
    Ok((a + b - ostrovskii_cf(t, p)?).abs())
}

/// The three sech-type Fourier integrals ∫ e^{itx} k(t) dt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoshCase {
    /// 1/(cosh t + b), −1 < b < 1, cos α = −b
    PoleIn(f64),
    /// 1/(cosh t + b), b > 1, cosh α = b
    PoleGt1(f64),
    /// 1/cosh² t
    Squared,
}

impl CoshCase {
    fn kernel(&self, t: f64) -> f64 {
        match *self {
            CoshCase::PoleIn(b) | CoshCase::PoleGt1(b) => 1.0 / (t.cosh() + b),
            CoshCase::Squared => {
                let s = 1.0 / t.cosh();
                s * s
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            CoshCase::PoleIn(b) if !(b > -1.0 && b < 1.0) => Err(Error::Domain(format!("need −1 < b < 1, got {b}"))),
            CoshCase::PoleGt1(b) if !(b > 1.0) => Err(Error::Domain(format!("need b > 1, got {b}"))),
            _ => Ok(()),
        }
    }
}

fn sinh_ratio(num: f64, x: f64) -> f64 {
    // sinh(num·x)/sinh(πx) for 0 ≤ num < π without overflow
    let e = (-2.0 * PI * x).exp();
    let en = (-2.0 * num * x).exp();
    ((num - PI) * x).exp() * (1.0 - en) / (1.0 - e)
}

/// Closed form of ∫_ℝ e^{itx} k(t) dt.
pub fn cosh_fourier_integral(x: f64, case: CoshCase) -> Result<f64> {
    case.validate()?;
    let x = x.abs();
    Ok(match case {
        CoshCase::PoleIn(b) => {
            let alpha = (-b).acos();
            let pref = 2.0 * PI / alpha.sin();
            if x == 0.0 {
                pref * (PI - alpha) / PI
            } else {
                pref * sinh_ratio(PI - alpha, x)
            }
        }
        CoshCase::PoleGt1(b) => {
            let alpha = b.acosh();
            if x == 0.0 {
                2.0 * alpha / alpha.sinh()
            } else {
                let e = (-2.0 * PI * x).exp();
                2.0 * PI / alpha.sinh() * (alpha * x).sin() * 2.0 * (-PI * x).exp() / (1.0 - e)
            }
        }
        CoshCase::Squared => {
            if x == 0.0 {
                2.0
            } else {
                let e = (-PI * x).exp();
                // cosh(πx/2)/sinh(πx) = (e^{−πx/2} + e^{−3πx/2})/(1 − e^{−2πx})
                2.0 * PI * x * ((-0.5 * PI * x).exp() + (-1.5 * PI * x).exp()) / (1.0 - e * e)
            }
        }
    })
}

/// 2∫₀^∞ cos(xt) k(t) dt by quadrature.
pub fn cosh_fourier_quadrature(x: f64, case: CoshCase, tol: &Tolerance) -> Result<f64> {
    case.validate()?;
    let f = |t: f64| 2.0 * (x * t).cos() * case.kernel(t);
    let a = integrate(f, Domain::Finite(0.0, 45.0), tol).into_result()?;
    Ok(a)
}

pub fn cosh_fourier_residual(x: f64, case: CoshCase, tol: &Tolerance) -> Result<f64> {
    Ok((cosh_fourier_integral(x, case)? - cosh_fourier_quadrature(x, case, tol)?).abs())
}

/// (π/4α) sinh(α(π − 2x)/2)/cosh(απ/2).
pub fn fourier_cos_closed(alpha: f64, x: f64) -> f64 {
    PI / (4.0 * alpha) * (0.5 * alpha * (PI - 2.0 * x)).sinh() / (0.5 * alpha * PI).cosh()
}

/// |Σ_{n≤N} cos((2n+1)x)/(α² + (2n+1)²) + tail − closed form|, x ∈ [0, π].
///
/// At x = 0 the tail is ∫_{N+½}^∞ dn/(α² + (2n+1)²); for x > 0 the tail
/// oscillates and is O(N^{−2}/sin x), so it is not added.
pub fn fourier_cos_identity_residual(alpha: f64, x: f64, n: usize) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("α must be positive, got {alpha}")));
    }
    if !(0.0..=PI).contains(&x) {
        return Err(Error::Domain(format!("x must lie in [0, π], got {x}")));
    }
    let mut acc = NeumaierSum::new();
    for k in 0..=n {
        let m = (2 * k + 1) as f64;
        acc.add((m * x).cos() / (alpha * alpha + m * m));
    }
    if x == 0.0 {
        let u = (2 * n + 2) as f64;
        acc.add((0.5 * PI - (u / alpha).atan()) / (2.0 * alpha));
    }
    Ok((acc.value() - fourier_cos_closed(alpha, x)).abs())
}

/// (1/(4a))(1 + |s|/a) e^{−|s|/a}.
pub fn kendall_density(s: f64, a: f64) -> f64 {
    let u = s.abs() / a;
    (1.0 + u) * (-u).exp() / (4.0 * a)
}

/// Per-point |closed form − ∫_ℝ Laplace(a)(s − z) Laplace(a)(z) dz|.
pub fn kendall_convolution_residual(a: f64, s_grid: &[f64], tol: &Tolerance) -> Result<Vec<f64>> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("a must be positive, got {a}")));
    }
    let lap = |x: f64| (-x.abs() / a).exp() / (2.0 * a);
    s_grid
        .iter()
        .map(|&s| {
            let f = |z: f64| lap(s - z) * lap(z);
            let (lo, hi) = if s < 0.0 { (s, 0.0) } else { (0.0, s) };
            let left = integrate(|u: f64| f(lo - u), Domain::SemiInfinite(0.0), tol).into_result()?;
            let mid = integrate(f, Domain::Finite(lo, hi), tol).into_result()?;
            let right = integrate(f, Domain::SemiInfinite(hi), tol).into_result()?;
            Ok((left + mid + right - kendall_density(s, a)).abs())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polya_normalisation_and_mgf() {
        let tol = Tolerance::abs(1e-12);
        let mass = polya_mgf_quadrature(0.0, &tol).unwrap();
        assert!((mass - 1.0).abs() < 1e-9, "{mass}");
        for s in [0.25, 0.5] {
            let q = polya_mgf_quadrature(s, &tol).unwrap();
            assert!((q - polya_mgf_closed(s).unwrap()).abs() < 1e-9);
        }
        // mpmath: ∫e^{x/2}p = ξ(1)/ξ(½) = 1.00579179535037502
        assert!((polya_mgf_closed(0.5).unwrap() - 1.005_791_795_350_375).abs() < 1e-12);
    }

    #[test]
    fn polya_symmetry_and_tail() {
        let grid: Vec<f64> = (1..=30).map(|k| 0.1 * k as f64).collect();
        assert!(polya_symmetry_residual(&grid, 1e-18) < 1e-12);
        let lp = polya_log_density(5.0, 1e-18).unwrap();
        let lt = polya_log_tail(5.0);
        assert!(((lp - lt) - (1.0 / XI_HALF).ln()).abs() < 1e-4);
        assert!((lp - lt).abs() / lt.abs() < 1e-4);
        for x in [-3.0, -0.5, 0.0, 0.5, 3.0] {
            assert!(polya_density(x, 1e-18).unwrap() >= 0.0);
        }
    }

    #[test]
    fn w_a_density_checks() {
        let tol = Tolerance::abs(1e-12).with_max_subdivisions(4000);
        let a = 1.0;
        let f = |x: f64| w_a_density(x, a, 1e-16).map(|d| d.value).unwrap_or(0.0);
        let mass = integrate(f, Domain::Finite(0.01, 2.0), &tol).value + integrate(f, Domain::SemiInfinite(2.0), &tol).value;
        assert!((mass - 1.0).abs() < 1e-6, "{mass}");
        let s: f64 = 1.0;
        let g = |x: f64| (-0.5 * s * s * x).exp() * f(x);
        let lt = integrate(g, Domain::Finite(0.01, 2.0), &tol).value + integrate(g, Domain::SemiInfinite(2.0), &tol).value;
        let exact = (a * s / (a * s).sinh()).powi(2);
        assert!((lt - exact).abs() < 1e-5);
        // mean: −d/dλ (a√(2λ)/sinh a√(2λ))² at 0 = 2a²/3
        let h = |x: f64| x * f(x);
        let mean = integrate(h, Domain::Finite(0.01, 2.0), &tol).value + integrate(h, Domain::SemiInfinite(2.0), &tol).value;
        assert!((mean - 2.0 / 3.0).abs() < 1e-5);
        assert!(w_a_density(0.001, 1.0, 1e-16).unwrap().near_zero_warning);
        for (x, a) in [(1.0, 1.0), (0.8, 1.0), (3.0, 1.5)] {
            let d = w_a_density_dual(x, a, 1e-16, false).value;
            assert!((d - w_a_density(x, a, 1e-16).unwrap().value).abs() < 1e-13 * d, "{x} {a}");
        }
        // mpmath
        assert!((w_a_density(0.3, 2.0, 1e-16).unwrap().value / 6.838_430_090_801_864e-8 - 1.0).abs() < 1e-12);
        let tiny = w_a_density(0.0129, 1.0, 1e-16).unwrap().value;
        assert!((tiny / 2.411_548_419_887_662e-60 - 1.0).abs() < 1e-12);
        assert!(w_a_density(-1.0, 1.0, 1e-16).is_err());
    }

    #[test]
    fn w_a_mellin() {
        let m = w_a_mellin_check(1.0, 2.0, &Tolerance::abs(1e-13)).unwrap();
        assert!((m.quadrature - 8.0 / 15.0).abs() < 1e-9, "{m:?}");
        assert!((m.corrected - 8.0 / 15.0).abs() < 1e-12);
        assert!((m.literal - 8.0 / 15.0).abs() > 0.1);
        let m = w_a_mellin_check(0.7, 1.0, &Tolerance::abs(1e-13)).unwrap();
        assert!((m.quadrature - m.corrected).abs() < 1e-9);
    }

    fn set_a() -> OstrovskiiParams {
        OstrovskiiParams::new(2.0, 3.0, 0.1, vec![1.0, 0.5], vec![3.0, 5.0]).unwrap()
    }

    fn set_b() -> OstrovskiiParams {
        OstrovskiiParams::new(1.59, 1.6, 20.0, vec![2.0], vec![1.6]).unwrap()
    }

    #[test]
    fn ostrovskii() {
        for p in [set_a(), set_b(), set_a().with_delta(0.0)] {
            for k in 0..=2000 {
                let x = 0.01 * k as f64;
                assert!(ostrovskii_density(x, &p).unwrap() >= 0.0, "x={x}");
            }
            let tol = Tolerance::abs(1e-12);
            for t in [0.0, 1.0] {
                assert!(ostrovskii_cf_residual(t, &p, &tol).unwrap() < 1e-6);
            }
        }
        let big = set_b().with_delta(2000.0);
        assert!((0..=2000).any(|k| ostrovskii_density(0.01 * k as f64, &big).unwrap() < 0.0));
        assert!(OstrovskiiParams::new(1.5, 3.0, 0.1, vec![1.0], vec![3.0]).is_err());
    }

    #[test]
    fn ostrovskii_limit_at_zero() {
        let p = set_a();
        let near = ostrovskii_density(1e-3 * (1.0 + 1e-12), &p).unwrap();
        let below = ostrovskii_density(0.999_999e-3, &p).unwrap();
        assert!((near - below).abs() < 1e-12);
        let f1 = ostrovskii_f(1.0, &p).unwrap();
        let al = p.alphas();
        let lim = (1.0 - PI / (2.0 * p.c) + p.delta * (p.a_k[0] * al[0] / al[0].sinh() + p.a_k[1] * al[1] / al[1].sinh())) / (PI * f1);
        assert!((ostrovskii_density(0.0, &p).unwrap() - lim).abs() < 1e-15);
    }

    #[test]
    fn residue_integrals() {
        let tol = Tolerance::abs(1e-13);
        assert!(cosh_fourier_residual(1.0, CoshCase::Squared, &tol).unwrap() < 1e-8);
        let v = cosh_fourier_integral(1.0, CoshCase::Squared).unwrap();
        assert!((v - 2.0 * PI * (PI / 2.0).cosh() / PI.sinh()).abs() < 1e-14);
        assert_eq!(cosh_fourier_integral(0.0, CoshCase::Squared).unwrap(), 2.0);
        let v = cosh_fourier_integral(0.7, CoshCase::PoleIn(0.0)).unwrap();
        assert!((v - 2.0 * PI * (0.35 * PI).sinh() / (0.7 * PI).sinh()).abs() < 1e-14);
        for x in [0.0, 0.3, 1.0, 2.5] {
            for case in [
                CoshCase::PoleIn(0.0),
                CoshCase::PoleIn(-0.6),
                CoshCase::PoleIn(0.9),
                CoshCase::PoleGt1(1.5),
                CoshCase::PoleGt1(4.0),
                CoshCase::Squared,
            ] {
                assert!(cosh_fourier_residual(x, case, &tol).unwrap() < 1e-8, "{x} {case:?}");
            }
        }
        assert!(cosh_fourier_integral(1.0, CoshCase::PoleIn(1.5)).is_err());
        assert!(cosh_fourier_integral(1.0, CoshCase::PoleGt1(0.5)).is_err());
    }

    #[test]
    fn fourier_cosine() {
        // α = 2z, x = π/6 specialisation at z = 1
        let z = 1.0;
        let closed = PI / (8.0 * z) * (2.0 * PI * z / 3.0).sinh() / (PI * z).cosh();
        assert!((fourier_cos_closed(2.0 * z, PI / 6.0) - closed).abs() < 1e-15);
        assert!(fourier_cos_identity_residual(2.0, PI / 6.0, 200_000).unwrap() < 1e-8);
        assert!(fourier_cos_identity_residual(2.0, PI / 2.0, 1000).unwrap() < 1e-12);
        assert!(fourier_cos_identity_residual(0.5, 0.0, 200_000).unwrap() < 1e-8);
        // α → 0⁺ at x = 0: π²/8
        assert!((fourier_cos_closed(1e-6, 0.0) - PI * PI / 8.0).abs() < 1e-9);
    }

    #[test]
    fn kendall() {
        let tol = Tolerance::abs(1e-13);
        let r = kendall_convolution_residual(1.0, &[0.0, 2.0, -1.3], &tol).unwrap();
        assert!(r.iter().all(|&v| v < 1e-10));
        assert!((kendall_density(0.0, 2.0) - 1.0 / 8.0).abs() < 1e-16);
        let m = integrate(|s| kendall_density(s, 1.5), Domain::WholeLine, &tol).value;
        assert!((m - 1.0).abs() < 1e-8);
    }
}
