//! Truncated Hadamard–Weierstrass products with tail corrections.
//!
//! Products are accumulated in log space as a sum of principal logarithms of
//! the individual factors; the exponential of that sum is branch independent.

use crate::numerics::{find_root, ComplexSum, Tolerance};
use crate::prelude::*;
use crate::specfun::bessel::bessel_j;
use crate::specfun::zeta::hurwitz_zeta_real;

/// Where the zeros come from.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroFamily {
    /// ρ_n = (n + offset)·scale, n ≥ 1.
    Arithmetic { offset: f64, scale: f64 },
    /// Positive zeros of J_ν, with exact Rayleigh sums for the tails.
    Bessel { nu: f64, zeros: Vec<f64> },
    /// A finite list with externally supplied tail sums Σ_{n>len} ρ^{−2}, ρ^{−4}, ρ^{−6}.
    Tabulated { zeros: Vec<f64>, tails: [f64; 3] },
}

/// Positive zeros ρ_n of an even (or genus-one) entire function.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub family: ZeroFamily,
    /// Zeros come in pairs ±ρ.
    pub symmetric: bool,
    pub order_hint: f64,
}

impl ZeroSet {
    /// Zeros (n − ½)π of cosh(is).
    pub fn cosh() -> Self {
        Self::arithmetic(-0.5, PI)
    }

    /// Zeros nπ of sinh(is)/(is).
    pub fn sinh() -> Self {
        Self::arithmetic(0.0, PI)
    }

    /// Zeros nπ/a of sinh(ias)/(ias).
    pub fn sinh_scaled(a: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::Parameter(format!("scale must be positive, got {a}")));
        }
        Ok(Self::arithmetic(0.0, PI / a))
    }

    pub fn arithmetic(offset: f64, scale: f64) -> Self {
        ZeroSet { family: ZeroFamily::Arithmetic { offset, scale }, symmetric: true, order_hint: 1.0 }
    }

    /// The first `n_max` zeros of J_ν.
    pub fn bessel(nu: f64, n_max: usize) -> Result<Self> {
        let zeros = bessel_zeros(nu, n_max)?;
        Ok(ZeroSet { family: ZeroFamily::Bessel { nu, zeros }, symmetric: true, order_hint: 1.0 })
    }

    pub fn tabulated(zeros: Vec<f64>, tails: [f64; 3]) -> Result<Self> {
        check_increasing(&zeros)?;
        Ok(ZeroSet { family: ZeroFamily::Tabulated { zeros, tails }, symmetric: true, order_hint: 1.0 })
    }

    /// Number of zeros available (`None` for unbounded generators).
    pub fn available(&self) -> Option<usize> {
        match &self.family {
            ZeroFamily::Arithmetic { .. } => None,
            ZeroFamily::Bessel { zeros, .. } | ZeroFamily::Tabulated { zeros, .. } => Some(zeros.len()),
        }
    }

    /// ρ_n for n ≥ 1.
    pub fn zero(&self, n: usize) -> Option<f64> {
        if n == 0 {
            return None;
        }
        match &self.family {
            ZeroFamily::Arithmetic { offset, scale } => Some((n as f64 + offset) * scale),
            ZeroFamily::Bessel { zeros, .. } | ZeroFamily::Tabulated { zeros, .. } => zeros.get(n - 1).copied(),
        }
    }

    /// Σ_{n>N} ρ_n^{−p} for p ∈ {2, 4, 6}.
    pub fn tail_power_sum(&self, p: u32, n: usize) -> Result<f64> {
        if !matches!(p, 2 | 4 | 6) {
            return Err(Error::Parameter(format!("tail power sums are available for p = 2, 4, 6, not {p}")));
        }
        match &self.family {
            ZeroFamily::Arithmetic { offset, scale } => Ok(scale.powi(-(p as i32)) * hurwitz_zeta_real(p as f64, n as f64 + 1.0 + offset)?),
            ZeroFamily::Bessel { nu, zeros } => {
                if n > zeros.len() {
                    return Err(Error::Parameter(format!("only {} Bessel zeros were computed", zeros.len())));
                }
                let total = rayleigh_sum(*nu, p);
                let partial = crate::numerics::compensated_sum(zeros[..n].iter().map(|r| r.powi(-(p as i32))));
                Ok((total - partial).max(0.0))
            }
            ZeroFamily::Tabulated { zeros, tails } => {
                if n > zeros.len() {
                    return Err(Error::Parameter(format!("only {} zeros are tabulated", zeros.len())));
                }
                let idx = (p / 2 - 1) as usize;
                let rest = crate::numerics::compensated_sum(zeros[n..].iter().map(|r| r.powi(-(p as i32))));
                Ok(rest + tails[idx])
            }
        }
    }

    /// Total Σ ρ_n^{−2}; finite by construction for all families.
    pub fn inverse_square_sum(&self) -> Result<f64> {
        self.tail_power_sum(2, 0)
    }
}

/// Rayleigh sums Σ_n j_{ν,n}^{−p}.
pub fn rayleigh_sum(nu: f64, p: u32) -> f64 {
    let a = nu + 1.0;
    match p {
        2 => 1.0 / (4.0 * a),
        4 => 1.0 / (16.0 * a * a * (nu + 2.0)),
        6 => 1.0 / (32.0 * a * a * a * (nu + 2.0) * (nu + 3.0)),
        _ => f64::NAN,
    }
}

fn check_increasing(z: &[f64]) -> Result<()> {
    if z.first().is_some_and(|&x| !(x > 0.0)) {
        return Err(Error::Parameter("zeros must be positive".into()));
    }
    if z.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Parameter("zeros must be strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailCorrection {
    None,
    /// log(1 + x) ≈ x over the omitted factors.
    Log1pOrder2,
    /// log(1 + x) ≈ x − x²/2 over the omitted factors.
    Log1pOrder4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductConfig {
    pub truncation: usize,
    pub tail_correction: TailCorrection,
}

impl ProductConfig {
    pub fn new(truncation: usize, tail_correction: TailCorrection) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::Parameter("truncation must be at least 1".into()));
        }
        Ok(ProductConfig { truncation, tail_correction })
    }
}

impl Default for ProductConfig {
    fn default() -> Self {
        ProductConfig { truncation: 10_000, tail_correction: TailCorrection::Log1pOrder4 }
    }
}

/// Π(1 + s²/ρ²) or its reciprocal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Reciprocal,
}

/// `Real` evaluates the factors 1 + s²/ρ²; `Imaginary` substitutes s → is, giving 1 − s²/ρ².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rotation {
    Real,
    Imaginary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductValue {
    pub value: Complex64,
    /// Estimated bound on the relative truncation error after correction.
    pub tail_bound: f64,
}

/// Π_{n≤N}(1 + s²/ρ_n²) with tail correction, or its reciprocal.
pub fn eval_even_product(zs: &ZeroSet, s: Complex64, cfg: &ProductConfig, dir: Direction) -> Result<ProductValue> {
    eval_even_product_rotated(zs, s, cfg, dir, Rotation::Real)
}

pub fn eval_even_product_rotated(zs: &ZeroSet, s: Complex64, cfg: &ProductConfig, dir: Direction, rot: Rotation) -> Result<ProductValue> {
    let n = cfg.truncation;
    if n == 0 {
        return Err(Error::Parameter("truncation must be at least 1".into()));
    }
    if let Some(avail) = zs.available() {
        if n > avail {
            return Err(Error::Parameter(format!("truncation {n} exceeds the {avail} available zeros")));
        }
    }
    let s2 = match rot {
        Rotation::Real => s * s,
        Rotation::Imaginary => -(s * s),
    };
    let mut log = ComplexSum::new();
    for k in 1..=n {
        let rho = zs.zero(k).expect("index checked");
        let factor = cr(1.0) + s2 / (rho * rho);
        if factor.norm() < 1e-14 {
            if dir == Direction::Reciprocal {
                return Err(Error::Pole { re: s.re, im: s.im });
            }
            return Ok(ProductValue { value: cr(0.0), tail_bound: 0.0 });
        }
        log.add(factor.ln());
    }
    let t2 = zs.tail_power_sum(2, n)?;
    let t4 = zs.tail_power_sum(4, n)?;
    let t6 = zs.tail_power_sum(6, n)?;
    let m = s2.norm();
    let (corr, bound) = match cfg.tail_correction {
        TailCorrection::None => (cr(0.0), m * t2 + 0.5 * m * m * t4),
        TailCorrection::Log1pOrder2 => (s2 * t2, 0.5 * m * m * t4 + m * m * m * t6 / 3.0),
        TailCorrection::Log1pOrder4 => (s2 * t2 - s2 * s2 * (0.5 * t4), m * m * m * t6 / 3.0 + m.powi(4) * t6 * t2),
    };
    let mut l = log.value() + corr;
    if dir == Direction::Reciprocal {
        l = -l;
    }
    Ok(ProductValue { value: l.exp(), tail_bound: bound.exp_m1() })
}

/// Zeros for a genus-one product together with their tail power sums.
#[derive(Debug, Clone, PartialEq)]
pub struct Genus1Zeros {
    pub zeros: Vec<f64>,
    /// Σ over omitted zeros of ρ^{−2}, ρ^{−3}, ρ^{−4}.
    pub tails: [f64; 3],
}

impl Genus1Zeros {
    pub fn finite(zeros: Vec<f64>) -> Result<Self> {
        if zeros.iter().any(|&z| z == 0.0 || !z.is_finite()) {
            return Err(Error::Parameter("zeros must be finite and nonzero".into()));
        }
        Ok(Genus1Zeros { zeros, tails: [0.0; 3] })
    }

    /// The zeros −(a + k), k = 0..N−1, of 1/Γ(a + s), with Hurwitz tails.
    pub fn gamma(a: f64, n: usize) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::Parameter(format!("a must be positive, got {a}")));
        }
        let zeros = (0..n).map(|k| -(a + k as f64)).collect();
        let q = a + n as f64;
        let tails = [hurwitz_zeta_real(2.0, q)?, -hurwitz_zeta_real(3.0, q)?, hurwitz_zeta_real(4.0, q)?];
        Ok(Genus1Zeros { zeros, tails })
    }
}

/// e^{−bs} Π_{n≤N} (1 − s/ρ_n) e^{s/ρ_n}, with the omitted factors approximated by
/// exp(−s²T₂/2) (order 2) or exp(−s²T₂/2 − s³T₃/3 − s⁴T₄/4) (order 4).
pub fn eval_genus1_product(z: &Genus1Zeros, b: f64, s: Complex64, cfg: &ProductConfig) -> Result<Complex64> {
    let n = cfg.truncation.min(z.zeros.len());
    let mut log = ComplexSum::new();
    log.add(-s * b);
    for &rho in &z.zeros[..n] {
        let x = s / rho;
        let factor = cr(1.0) - x;
        if factor.norm() == 0.0 {
            return Ok(cr(0.0));
        }
        log.add(factor.ln() + x);
    }
    let [t2, t3, t4] = z.tails;
    let s2 = s * s;
    let corr = match cfg.tail_correction {
        TailCorrection::None => cr(0.0),
        TailCorrection::Log1pOrder2 => -s2 * (0.5 * t2),
        TailCorrection::Log1pOrder4 => -s2 * (0.5 * t2) - s2 * s * (t3 / 3.0) - s2 * s2 * (0.25 * t4),
    };
    let l = log.value() + corr;
    if !l.re.is_finite() {
        return Err(Error::Overflow("genus-one product"));
    }
    Ok(l.exp())
}

fn mcmahon(nu: f64, n: usize) -> f64 {
    let mu = 4.0 * nu * nu;
    let beta = (n as f64 + 0.5 * nu - 0.25) * PI;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e.powi(5))
}

/// First `n_max` positive zeros of J_ν (equivalently of f_ν), ν ≥ −½.
///
/// Each zero is bracketed around McMahon's approximation; if the bracket
/// does not change sign, the interval after the previous zero is scanned.
pub fn bessel_zeros(nu: f64, n_max: usize) -> Result<Vec<f64>> {
    if nu < -0.5 {
        return Err(Error::Domain(format!("order must be at least -1/2, got {nu}")));
    }
    let tol = Tolerance { abs_tol: 1e-13, rel_tol: 1e-15, ..Tolerance::default() };
    let j = |x: f64| bessel_j(nu, x).unwrap_or(f64::NAN);
    let mut out: Vec<f64> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let prev = out.last().copied().unwrap_or(0.0);
        let guess = mcmahon(nu, n);
        let lo = (guess - 0.5).max(prev + 1e-6);
        let hi = (guess + 0.5).max(lo + 0.1);
        let root = if j(lo) * j(hi) < 0.0 {
            find_root(j, lo, hi, &tol)?
        } else {
            let mut a = prev + 1e-6;
            let mut fa = j(a);
            let mut found = None;
            while a < prev + 2.0 * PI + 2.0 {
                let b = a + 0.05;
                let fb = j(b);
                if fa * fb < 0.0 {
                    found = Some(find_root(j, a, b, &tol)?);
                    break;
                }
                a = b;
                fa = fb;
            }
            found.ok_or(Error::BracketFailure { nu, n })?
        };
        if root <= prev {
            return Err(Error::BracketFailure { nu, n });
        }
        out.push(root);
    }
    Ok(out)
}

/// s Σ_{|m|≤M} (−1)^m/(s² + m²) → π/sinh(πs), with the alternating-tail bound.
pub fn sinh_partial_fraction(s: Complex64, m: usize) -> Result<(Complex64, f64)> {
    if s.re == 0.0 && s.im == s.im.round() {
        return Err(Error::Pole { re: s.re, im: s.im });
    }
    let s2 = s * s;
    let mut acc = ComplexSum::new();
    acc.add(s.inv());
    for k in 1..=m {
        let kf = k as f64;
        let t = s * 2.0 / (s2 + kf * kf);
        acc.add(if k % 2 == 0 { t } else { -t });
    }
    let mf = (m + 1) as f64;
    let bound = (s * 2.0 / (s2 + mf * mf)).norm();
    Ok((acc.value(), bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::{digamma_real, gamma_real};

    fn cfg(n: usize, t: TailCorrection) -> ProductConfig {
        ProductConfig::new(n, t).unwrap()
    }

    #[test]
    fn hyperbolic_products() {
        let c0 = cfg(1000, TailCorrection::Log1pOrder2);
        let p = eval_even_product(&ZeroSet::cosh(), cr(0.0), &c0, Direction::Forward).unwrap();
        assert_eq!(p.value, cr(1.0));
        let p = eval_even_product(&ZeroSet::cosh(), cr(1.0), &c0, Direction::Forward).unwrap();
        assert!((p.value.re - 1f64.cosh()).abs() < 1e-10);
        let p = eval_even_product(&ZeroSet::sinh(), cr(1.0), &c0, Direction::Forward).unwrap();
        assert!((p.value.re - 1f64.sinh()).abs() < 1e-10);
        let raw = eval_even_product(&ZeroSet::sinh(), cr(1.0), &cfg(1000, TailCorrection::None), Direction::Forward).unwrap();
        assert!((raw.value.re - 1f64.sinh()).abs() > 1e-5);
    }

    #[test]
    fn forward_times_reciprocal() {
        let zs = ZeroSet::cosh();
        let c0 = cfg(500, TailCorrection::Log1pOrder4);
        for s in [c(0.3, 0.1), c(2.0, -1.0), c(4.5, 0.0)] {
            let f = eval_even_product(&zs, s, &c0, Direction::Forward).unwrap().value;
            let r = eval_even_product(&zs, s, &c0, Direction::Reciprocal).unwrap().value;
            assert!((f * r - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn reciprocal_pole() {
        let zs = ZeroSet::sinh();
        let r = eval_even_product(&zs, c(0.0, PI), &cfg(10, TailCorrection::None), Direction::Reciprocal);
        assert!(matches!(r, Err(Error::Pole { .. })));
    }

    #[test]
    fn ferromagnetic_uniform() {
        for a in [0.5, 1.0, 2.0] {
            let zs = ZeroSet::sinh_scaled(a).unwrap();
            for s in [0.5, 1.5, 3.0] {
                let p = eval_even_product(&zs, cr(s), &cfg(10_000, TailCorrection::Log1pOrder2), Direction::Forward).unwrap();
                let exact = (a * s).sinh() / (a * s);
                assert!((p.value.re / exact - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn bessel_zero_values() {
        let z = bessel_zeros(0.5, 50).unwrap();
        for (n, r) in z.iter().enumerate() {
            assert!((r - (n + 1) as f64 * PI).abs() < 1e-10);
        }
        let z = bessel_zeros(-0.5, 50).unwrap();
        for (n, r) in z.iter().enumerate() {
            assert!((r - (n as f64 + 0.5) * PI).abs() < 1e-10);
        }
        // Oracle: bisection on an independently summed ascending series for J₀.
        let j0 = |x: f64| {
            let mut t = 1.0;
            let mut s = 1.0;
            for k in 1..60 {
                t *= -(x * x / 4.0) / (k as f64 * k as f64);
                s += t;
            }
            s
        };
        let oracle = crate::numerics::bisect(j0, 2.0, 3.0, 1e-14).unwrap();
        let z = bessel_zeros(0.0, 3).unwrap();
        assert!((z[0] - oracle).abs() < 1e-10);
        assert!((z[0] - 2.404_825_557_695_773).abs() < 1e-10);
        let z1 = bessel_zeros(1.0, 3).unwrap();
        assert!((z1[0] - 3.831_705_970_207_512).abs() < 1e-10);
        assert!((z1[2] - 10.173_468_135_062_722).abs() < 1e-10);
    }

    #[test]
    fn bessel_tail_sums() {
        let zs = ZeroSet::bessel(0.5, 2000).unwrap();
        let arith = ZeroSet::sinh();
        for p in [2, 4] {
            let a = zs.tail_power_sum(p, 1000).unwrap();
            let b = arith.tail_power_sum(p, 1000).unwrap();
            assert!((a - b).abs() < 1e-12 * b.max(1e-300) + 1e-17, "p={p}: {a} {b}");
        }
    }

    #[test]
    fn genus1_examples() {
        let c0 = cfg(10_000, TailCorrection::Log1pOrder4);
        let one = Genus1Zeros::finite(vec![1.0]).unwrap();
        assert_eq!(eval_genus1_product(&one, 0.0, cr(0.0), &c0).unwrap(), cr(1.0));
        let v = eval_genus1_product(&one, 0.0, cr(0.5), &c0).unwrap();
        assert!((v.re - 0.5 * 0.5f64.exp()).abs() < 1e-15);
        // Γ(a)/Γ(a+s) e^{sψ(a)} = Π (1 + s/(a+k)) e^{−s/(a+k)}
        for a in [1.0, 2.0, 0.5] {
            let z = Genus1Zeros::gamma(a, 2000).unwrap();
            let s = 0.5;
            let v = eval_genus1_product(&z, 0.0, cr(s), &c0).unwrap().re;
            let exact = gamma_real(a).unwrap() / gamma_real(a + s).unwrap() * (s * digamma_real(a).unwrap()).exp();
            assert!((v - exact).abs() < 1e-12, "a={a}: {v} {exact}");
        }
    }

    #[test]
    fn partial_fractions() {
        for s in [1.0, 0.5] {
            let (v, b) = sinh_partial_fraction(cr(s), 100_000).unwrap();
            let exact = PI / (PI * s).sinh();
            assert!((v.re - exact).abs() <= b);
            assert!((v.re - exact).abs() < 1e-5);
        }
        let (a, _) = sinh_partial_fraction(c(0.7, 0.2), 100).unwrap();
        let (b, _) = sinh_partial_fraction(c(-0.7, -0.2), 100).unwrap();
        assert!((a + b).norm() < 1e-15);
        assert!(sinh_partial_fraction(c(0.0, 2.0), 10).is_err());
    }
}
