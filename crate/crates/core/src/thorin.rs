//! Thorin measures, GGC and symmetric extended GGC transforms, and the
//! measures μ(dx) feeding the completely monotone ν_α construction.

use crate::hadamard::{eval_even_product, eval_even_product_rotated, Direction, ProductConfig, Rotation, TailCorrection, ZeroSet};
use crate::numerics::{integrate, ComplexSum, Domain, NeumaierSum, QuadValue, Tolerance};
use crate::prelude::*;
use crate::specfun::gamma::{digamma_real, ln_gamma_real};
use crate::specfun::zeta::hurwitz_zeta_real;

/// Named densities on (0, ∞) usable as absolutely continuous parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedDensity {
    /// 1/(e^x − 1) on (0, ∞).
    BoseEinstein,
    /// `value` on (lo, hi).
    Constant { value: f64, lo: f64, hi: f64 },
    /// coef·x^exponent on (lo, hi); `hi` may be infinite.
    PowerLaw { coef: f64, exponent: f64, lo: f64, hi: f64 },
}

impl NamedDensity {
    pub fn id(&self) -> &'static str {
        match self {
            NamedDensity::BoseEinstein => "bose-einstein",
            NamedDensity::Constant { .. } => "constant",
            NamedDensity::PowerLaw { .. } => "power-law",
        }
    }

    pub fn support(&self) -> (f64, f64) {
        match *self {
            NamedDensity::BoseEinstein => (0.0, f64::INFINITY),
            NamedDensity::Constant { lo, hi, .. } | NamedDensity::PowerLaw { lo, hi, .. } => (lo, hi),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(x > lo && x < hi) {
            return 0.0;
        }
        match *self {
            NamedDensity::BoseEinstein => 1.0 / x.exp_m1(),
            NamedDensity::Constant { value, .. } => value,
            NamedDensity::PowerLaw { coef, exponent, .. } => coef * x.powf(exponent),
        }
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.support();
        if !(lo >= 0.0) || !(hi > lo) {
            return Err(Error::Parameter(format!("density support ({lo}, {hi}) is invalid")));
        }
        match *self {
            NamedDensity::Constant { value, .. } if !(value >= 0.0) => Err(Error::Parameter("density value must be nonnegative".into())),
            NamedDensity::PowerLaw { coef, .. } if !(coef >= 0.0) => {
                Err(Error::Parameter("density coefficient must be nonnegative".into()))
            }
            _ => Ok(()),
        }
    }

    /// ∫ g(x)·density(x) dx over the support.
    pub fn integrate_against<T: QuadValue, G: FnMut(f64) -> T>(&self, mut g: G, tol: &Tolerance) -> Result<T> {
        let (lo, hi) = self.support();
        let mut f = |x: f64| g(x) * self.eval(x);
        let mid = if hi.is_finite() { hi } else { lo + 1.0 };
        // x = lo + (mid − lo)u² softens integrable endpoint singularities at lo.
        let w = mid - lo;
        let head = integrate(|u: f64| if u <= 0.0 { T::zero() } else { f(lo + w * u * u) * (2.0 * w * u) }, Domain::Finite(0.0, 1.0), tol)
            .into_result()?;
        if hi.is_finite() {
            return Ok(head);
        }
        // x = mid/u² turns algebraic decay into a regular integrand on (0, 1].
        let tail = integrate(
            |u: f64| if u <= 0.0 { T::zero() } else { f(mid / (u * u)) * (2.0 * mid / (u * u * u)) },
            Domain::Finite(0.0, 1.0),
            tol,
        )
        .into_result()?;
        Ok(head + tail)
    }
}

/// Atoms of mass `mass` at `scale·ρ_n²` for the first `truncation` zeros,
/// with the omitted zeros accounted for through tail power sums.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroAtoms {
    pub zeros: ZeroSet,
    pub mass: f64,
    pub scale: f64,
    pub truncation: usize,
}

impl ZeroAtoms {
    fn config(&self) -> ProductConfig {
        ProductConfig { truncation: self.truncation, tail_correction: TailCorrection::Log1pOrder4 }
    }

    fn location(&self, n: usize) -> Option<f64> {
        self.zeros.zero(n).map(|r| self.scale * r * r)
    }
}

/// U(dz) together with the left extremity `a` and Gaussian part `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThorinMeasure {
    pub atoms: Vec<(f64, f64)>,
    pub zero_atoms: Option<ZeroAtoms>,
    pub density: Option<NamedDensity>,
    pub a: f64,
    pub c: f64,
}

impl ThorinMeasure {
    pub fn empty() -> Self {
        ThorinMeasure { atoms: Vec::new(), zero_atoms: None, density: None, a: 0.0, c: 0.0 }
    }

    pub fn from_atoms(atoms: Vec<(f64, f64)>) -> Result<Self> {
        let m = ThorinMeasure { atoms, ..Self::empty() };
        m.validate()?;
        Ok(m)
    }

    /// Σ mass·δ_{scale·ρ_n²}.
    pub fn from_zero_set(zeros: ZeroSet, mass: f64, scale: f64, truncation: usize) -> Result<Self> {
        let m = ThorinMeasure { zero_atoms: Some(ZeroAtoms { zeros, mass, scale, truncation }), ..Self::empty() };
        m.validate()?;
        Ok(m)
    }

    pub fn with_density(mut self, d: NamedDensity) -> Result<Self> {
        self.density = Some(d);
        self.validate()?;
        Ok(self)
    }

    pub fn with_left_extremity(mut self, a: f64) -> Result<Self> {
        self.a = a;
        self.validate()?;
        Ok(self)
    }

    /// C₁ = (2/π²)Σ Γ_{1,n}/(n−½)²: E(e^{−λC₁}) = 1/cosh(√(2λ)).
    pub fn c1(truncation: usize) -> Result<Self> {
        Self::from_zero_set(ZeroSet::cosh(), 1.0, 0.5, truncation)
    }

    /// C₂ = C₁ + C₁′.
    pub fn c2(truncation: usize) -> Result<Self> {
        Self::from_zero_set(ZeroSet::cosh(), 2.0, 0.5, truncation)
    }

    /// S_a: E(e^{−½s²S_a}) = as/sinh(as).
    pub fn s_a(a: f64, truncation: usize) -> Result<Self> {
        Self::from_zero_set(ZeroSet::sinh_scaled(a)?, 1.0, 0.5, truncation)
    }

    /// W_a = S_a + S_a′.
    pub fn w_a(a: f64, truncation: usize) -> Result<Self> {
        Self::from_zero_set(ZeroSet::sinh_scaled(a)?, 2.0, 0.5, truncation)
    }

    /// Σ 2E_n/j²_{ν,n}: E(e^{−½s²H}) = 1/f_ν(is).
    pub fn bessel(nu: f64, truncation: usize) -> Result<Self> {
        Self::from_zero_set(ZeroSet::bessel(nu, truncation)?, 1.0, 0.5, truncation)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a >= 0.0) || !(self.c >= 0.0) {
            return Err(Error::Parameter("left extremity and Gaussian part must be nonnegative".into()));
        }
        for &(z, u) in &self.atoms {
            if !(z > 0.0) || !z.is_finite() || !(u >= 0.0) || !u.is_finite() {
                return Err(Error::Parameter(format!("atom ({z}, {u}) must have z > 0 and u ≥ 0")));
            }
        }
        if let Some(za) = &self.zero_atoms {
            if !(za.mass > 0.0) || !(za.scale > 0.0) || za.truncation == 0 {
                return Err(Error::Parameter("zero-set atoms need positive mass, scale and truncation".into()));
            }
            if let Some(n) = za.zeros.available() {
                if za.truncation > n {
                    return Err(Error::Parameter(format!("truncation {} exceeds the {n} available zeros", za.truncation)));
                }
            }
        }
        if let Some(d) = &self.density {
            d.validate()?;
        }
        Ok(())
    }

    /// Σ u_j/z_j + ∫ density(z)/z dz, which is the mean of the GGC minus `a`.
    pub fn inverse_moment(&self, tol: &Tolerance) -> Result<f64> {
        let mut acc = NeumaierSum::new();
        for &(z, u) in &self.atoms {
            acc.add(u / z);
        }
        if let Some(za) = &self.zero_atoms {
            acc.add(za.mass / za.scale * za.zeros.inverse_square_sum()?);
        }
        if let Some(d) = &self.density {
            let v: f64 = d.integrate_against(|z| 1.0 / z, tol)?;
            if !v.is_finite() {
                return Err(Error::NonConvergence("density inverse moment"));
            }
            acc.add(v);
        }
        Ok(acc.value())
    }

    /// t^{−1} ∫ e^{−tz} U(dz).
    pub fn levy_density(&self, t: f64) -> Result<f64> {
        levy_density_from_thorin(self, t)
    }
}

/// φ(s) = ∫ log(1 + s/z) U(dz).
pub fn ggc_laplace_exponent(u: &ThorinMeasure, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::Domain(format!("Laplace exponent needs s ≥ 0, got {s}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let mut acc = NeumaierSum::new();
    for &(z, m) in &u.atoms {
        acc.add(m * (s / z).ln_1p());
    }
    if let Some(za) = &u.zero_atoms {
        let p = eval_even_product(&za.zeros, cr((s / za.scale).sqrt()), &za.config(), Direction::Forward)?;
        acc.add(za.mass * p.value.re.ln());
    }
    if let Some(d) = &u.density {
        let v: f64 = d.integrate_against(|z| (s / z).ln_1p(), &Tolerance::default().with_max_subdivisions(4000))?;
        if !v.is_finite() {
            return Err(Error::NonConvergence("Laplace exponent density part"));
        }
        acc.add(v);
    }
    Ok(acc.value())
}

/// E(e^{−sH}) = exp(−as − φ(s)).
pub fn ggc_laplace_transform(u: &ThorinMeasure, s: f64) -> Result<f64> {
    Ok((-u.a * s - ggc_laplace_exponent(u, s)?).exp())
}

/// t^{−1} ∫ e^{−tz} U(dz).
pub fn levy_density_from_thorin(u: &ThorinMeasure, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("Lévy density needs t > 0, got {t}")));
    }
    let mut acc = NeumaierSum::new();
    for &(z, m) in &u.atoms {
        acc.add(m * (-t * z).exp());
    }
    if let Some(za) = &u.zero_atoms {
        let mut n = 1;
        let mut part = NeumaierSum::new();
        while let Some(z) = za.location(n) {
            let e = (-t * z).exp();
            part.add(e);
            if e < 1e-18 * part.value() || e == 0.0 {
                break;
            }
            n += 1;
        }
        acc.add(za.mass * part.value());
    }
    if let Some(d) = &u.density {
        let v: f64 = d.integrate_against(|z| (-t * z).exp(), &Tolerance::default().with_max_subdivisions(4000))?;
        acc.add(v);
    }
    Ok(acc.value() / t)
}

/// ∫₀^∞ (1 − e^{−st}) ℓ(t) dt with ℓ the Lévy density; equals φ(s) by Frullani.
pub fn frullani_exponent(u: &ThorinMeasure, s: f64, tol: &Tolerance) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::Domain(format!("needs s ≥ 0, got {s}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    // t = v², dt = 2v dv
    let f = |v: f64| {
        if v <= 0.0 {
            return 0.0;
        }
        let t = v * v;
        -(-s * t).exp_m1() * levy_density_from_thorin(u, t).unwrap_or(f64::NAN) * 2.0 * v
    };
    let a = integrate(f, Domain::Finite(0.0, 1.0), tol).into_result()?;
    let b = integrate(f, Domain::SemiInfinite(1.0), tol).into_result()?;
    Ok(a + b)
}

/// |∫₀^∞ (1 − e^{−s²t}) e^{−tz} dt/t − log((z + s²)/z)|.
pub fn frullani_residual(z: f64, s: f64, tol: &Tolerance) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("Frullani check needs z > 0, got {z}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let s2 = s * s;
    let f = |t: f64| if t <= 0.0 { s2 } else { -(-s2 * t).exp_m1() * (-t * z).exp() / t };
    let split = 1.0 / z.max(s2);
    let a = integrate(f, Domain::Finite(0.0, split), tol).into_result()?;
    let b = integrate(f, Domain::SemiInfinite(split), tol).into_result()?;
    Ok((a + b - (s2 / z).ln_1p()).abs())
}

/// U on the real line for a symmetric extended GGC: atoms at positive
/// locations, atoms on the negative axis (stored as |z|), and an optional
/// symmetric family at ±scale·ρ_n.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedThorinMeasure {
    pub positive: Vec<(f64, f64)>,
    pub negative: Vec<(f64, f64)>,
    pub symmetric_zeros: Option<ZeroAtoms>,
    pub c: f64,
}

impl SignedThorinMeasure {
    pub fn new(positive: Vec<(f64, f64)>, negative: Vec<(f64, f64)>, c: f64) -> Result<Self> {
        for &(z, u) in positive.iter().chain(negative.iter()) {
            if !(z > 0.0) || !(u >= 0.0) {
                return Err(Error::Parameter(format!("atom ({z}, {u}) must have |z| > 0 and u ≥ 0")));
            }
        }
        if !(c >= 0.0) {
            return Err(Error::Parameter("Gaussian part must be nonnegative".into()));
        }
        Ok(SignedThorinMeasure { positive, negative, symmetric_zeros: None, c })
    }

    /// The law of √(2H)Z for H with Thorin measure `u`: atoms at ±√z.
    pub fn gaussian_scale_mixture(u: &ThorinMeasure) -> Result<Self> {
        if u.density.is_some() || u.a != 0.0 {
            return Err(Error::UnsupportedMeasure("scale mixtures need a purely atomic Thorin measure without drift"));
        }
        let atoms: Vec<(f64, f64)> = u.atoms.iter().map(|&(z, m)| (z.sqrt(), m)).collect();
        let mut out = Self::new(atoms.clone(), atoms, 0.0)?;
        out.symmetric_zeros = u.zero_atoms.as_ref().map(|za| ZeroAtoms { scale: za.scale.sqrt(), ..za.clone() });
        Ok(out)
    }
}

/// E(e^{sĤ}) = exp(½cs² + ∫{log(z/(z−s)) − sz/(1+z²)} U(dz)) for imaginary s.
pub fn sym_eggc_mgf(u: &SignedThorinMeasure, s: Complex64) -> Result<Complex64> {
    if s.re != 0.0 {
        return Err(Error::Domain(format!("symmetric EGGC transform needs Re s = 0, got {s}")));
    }
    let mut acc = ComplexSum::new();
    acc.add(s * s * (0.5 * u.c));
    let term = |z: f64| (cr(z) / (cr(z) - s)).ln() - s * (z / (1.0 + z * z));
    for &(z, m) in &u.positive {
        acc.add(term(z) * m);
    }
    for &(z, m) in &u.negative {
        acc.add(term(-z) * m);
    }
    if let Some(za) = &u.symmetric_zeros {
        // ±z pairs: the compensators cancel and log(z²/(z²−s²)) remains.
        let p = eval_even_product_rotated(&za.zeros, s / za.scale, &za.config(), Direction::Reciprocal, Rotation::Imaginary)?;
        acc.add(p.value.ln() * za.mass);
    }
    Ok(acc.value().exp())
}

/// μ(dx) on (0, ∞): explicit atoms, an optional named density, and
/// optionally the infinite prime tower Σ_k (log p) δ_{k log p}.
#[derive(Debug, Clone, PartialEq)]
pub struct MuMeasure {
    atoms: Vec<(f64, f64)>,
    density: Option<NamedDensity>,
    prime_tower: Option<u64>,
}

impl MuMeasure {
    /// Atoms sorted by location; zero masses are dropped.
    pub fn from_atoms(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        for &(x, m) in &atoms {
            if !(x > 0.0) || !x.is_finite() || !(m >= 0.0) || !m.is_finite() {
                return Err(Error::Parameter(format!("atom ({x}, {m}) must have x > 0 and mass ≥ 0")));
            }
        }
        atoms.retain(|a| a.1 > 0.0);
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(MuMeasure { atoms, density: None, prime_tower: None })
    }

    pub fn from_density(d: NamedDensity) -> Result<Self> {
        d.validate()?;
        Ok(MuMeasure { atoms: Vec::new(), density: Some(d), prime_tower: None })
    }

    /// μ^Γ(dx) = dx/(e^x − 1).
    pub fn gamma() -> Self {
        MuMeasure { atoms: Vec::new(), density: Some(NamedDensity::BoseEinstein), prime_tower: None }
    }

    /// μ^ζ_p = Σ_{k≥1} (log p) δ_{k log p}.
    pub fn zeta_prime(p: u64) -> Result<Self> {
        if p < 2 || !crate::specfun::primes::Sieve::new(p as usize).is_prime(p as usize) {
            return Err(Error::Parameter(format!("{p} is not prime")));
        }
        Ok(MuMeasure { atoms: Vec::new(), density: None, prime_tower: Some(p) })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn density(&self) -> Option<NamedDensity> {
        self.density
    }

    pub fn prime_tower(&self) -> Option<u64> {
        self.prime_tower
    }

    /// Mass of the explicit atoms (the density and prime tower are excluded).
    pub fn total_mass(&self) -> f64 {
        crate::numerics::compensated_sum(self.atoms.iter().map(|a| a.1))
    }

    /// The first `k_max` atoms of the prime tower as explicit atoms.
    pub fn tower_atoms(&self, k_max: usize) -> Vec<(f64, f64)> {
        match self.prime_tower {
            Some(p) => {
                let l = (p as f64).ln();
                (1..=k_max).map(|k| (k as f64 * l, l)).collect()
            }
            None => Vec::new(),
        }
    }
}

enum Lemma2Kind {
    Gamma,
    Prime(u64),
}

fn lemma2_kind(mu: &MuMeasure) -> Result<Lemma2Kind> {
    match (mu.atoms.is_empty(), mu.density, mu.prime_tower) {
        (true, Some(NamedDensity::BoseEinstein), None) => Ok(Lemma2Kind::Gamma),
        (true, None, Some(p)) => Ok(Lemma2Kind::Prime(p)),
        _ => Err(Error::UnsupportedMeasure("nu_alpha is available for mu^Gamma and mu^zeta_p only")),
    }
}

fn check_alpha(kind: &Lemma2Kind, alpha: f64) -> Result<()> {
    let ok = match kind {
        Lemma2Kind::Gamma => alpha > 0.0,
        Lemma2Kind::Prime(_) => alpha > 1.0,
    };
    if !ok {
        return Err(Error::Domain(format!("alpha = {alpha} is outside the admissible range")));
    }
    Ok(())
}

/// I(z) = ∫ 2 sin²(x√(z/2)) e^{−αx} μ(dx) in closed form.
pub fn lemma2_inner(mu: &MuMeasure, alpha: f64, z: f64) -> Result<f64> {
    let kind = lemma2_kind(mu)?;
    check_alpha(&kind, alpha)?;
    if !(z >= 0.0) {
        return Err(Error::Domain(format!("z must be nonnegative, got {z}")));
    }
    match kind {
        Lemma2Kind::Prime(p) => {
            let l = (p as f64).ln();
            let r = (-alpha * l).exp();
            let phi = l * (2.0 * z).sqrt();
            let cs = phi.cos();
            Ok(l * (r / (1.0 - r) - (r * cs - r * r) / (1.0 - 2.0 * r * cs + r * r)))
        }
        Lemma2Kind::Gamma => {
            // Σ_{m≥1} 2z/(q(q² + 2z)), q = α + m; tail by Hurwitz expansion in 2z/q².
            let w = 2.0 * z;
            let m_max = 50usize.max((10.0 * w.sqrt()).ceil() as usize);
            let mut acc = NeumaierSum::new();
            for m in 1..=m_max {
                let q = alpha + m as f64;
                acc.add(w / (q * (q * q + w)));
            }
            let q0 = alpha + m_max as f64 + 1.0;
            let mut wk = w;
            let mut sign = 1.0;
            for j in 0..6 {
                acc.add(sign * wk * hurwitz_zeta_real(3.0 + 2.0 * j as f64, q0)?);
                wk *= w;
                sign = -sign;
            }
            Ok(acc.value())
        }
    }
}

/// ν_α(t) = (1/√(2π)) ∫₀^∞ e^{−tz} I(z) dz/√(πz).
///
/// Integrating in z first gives ν_α(t) = (2πt)^{−½} ∫ (1 − e^{−x²/2t}) e^{−αx} μ(dx),
/// which is summed directly for the prime tower and integrated in x for μ^Γ.
pub fn lemma2_nu_alpha(mu: &MuMeasure, alpha: f64, t: f64, tol: &Tolerance) -> Result<f64> {
    let kind = lemma2_kind(mu)?;
    check_alpha(&kind, alpha)?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    let pref = 1.0 / (2.0 * PI * t).sqrt();
    match kind {
        Lemma2Kind::Prime(p) => {
            let l = (p as f64).ln();
            let mut acc = NeumaierSum::new();
            let mut k = 1.0;
            loop {
                let x = k * l;
                let w = (-alpha * x).exp();
                acc.add(l * w * -(-x * x / (2.0 * t)).exp_m1());
                if w < 1e-18 {
                    break;
                }
                k += 1.0;
            }
            Ok(pref * acc.value())
        }
        Lemma2Kind::Gamma => {
            let f = |x: f64| {
                if x <= 0.0 {
                    return 0.0;
                }
                -(-x * x / (2.0 * t)).exp_m1() * (-alpha * x).exp() / x.exp_m1()
            };
            let split = (2.0 * t).sqrt().max(1e-3);
            let a = integrate(f, Domain::Finite(0.0, split), tol).into_result()?;
            let b = integrate(f, Domain::SemiInfinite(split), tol).into_result()?;
            Ok(pref * (a + b))
        }
    }
}

/// ν_α(t) computed literally as the z-integral of the closed-form inner function.
pub fn lemma2_nu_alpha_zform(mu: &MuMeasure, alpha: f64, t: f64, tol: &Tolerance) -> Result<f64> {
    lemma2_kind(mu)?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    // z = w²: dz/√z = 2 dw
    let f = |w: f64| {
        let z = w * w;
        2.0 * (-t * z).exp() * lemma2_inner(mu, alpha, z).unwrap_or(f64::NAN)
    };
    let split = 1.0 / t.sqrt();
    let a = integrate(f, Domain::Finite(0.0, split), tol).into_result()?;
    let b = integrate(f, Domain::SemiInfinite(split), tol).into_result()?;
    Ok((a + b) / ((2.0 * PI).sqrt() * PI.sqrt()))
}

/// The two sides of the ν_α identity at (α, s), plus the printed e^{+½s²t}
/// variant integrated over growing windows.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma2Report {
    /// log(f(α)/f(α+s)) + s f′(α)/f(α)
    pub lhs: f64,
    /// −∫₀^∞ (1 − e^{−½s²t}) ν_α(t) dt/t
    pub rhs: f64,
    pub residual: f64,
    /// (T, −∫₀^T (1 − e^{+½s²t}) ν_α(t) dt/t)
    pub literal_windows: Vec<(f64, f64)>,
}

fn lemma2_lhs(kind: &Lemma2Kind, alpha: f64, s: f64) -> Result<f64> {
    match *kind {
        Lemma2Kind::Prime(p) => {
            let l = (p as f64).ln();
            let r = (-alpha * l).exp();
            let rs = (-(alpha + s) * l).exp();
            let logratio = (-rs).ln_1p() - (-r).ln_1p();
            let dlog = -l * r / (1.0 - r);
            Ok(logratio + s * dlog)
        }
        Lemma2Kind::Gamma => Ok(ln_gamma_real(1.0 + alpha)? - ln_gamma_real(1.0 + alpha + s)? + s * digamma_real(1.0 + alpha)?),
    }
}

pub fn lemma2_report(mu: &MuMeasure, alpha: f64, s: f64, tol: &Tolerance) -> Result<Lemma2Report> {
    let kind = lemma2_kind(mu)?;
    check_alpha(&kind, alpha)?;
    let lhs = lemma2_lhs(&kind, alpha, s)?;
    let h = 0.5 * s * s;
    let mut err = None;
    // t = v²: dt/t = 2 dv/v
    let mut g = |v: f64, sign: f64| {
        if v <= 0.0 {
            return 0.0;
        }
        let t = v * v;
        match lemma2_nu_alpha(mu, alpha, t, tol) {
            Ok(nu) => -(sign * h * t).exp_m1() * -sign * nu * 2.0 / v,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let qt = Tolerance { abs_tol: tol.abs_tol.max(1e-13), rel_tol: tol.rel_tol, ..*tol };
    let a = integrate(|v| g(v, -1.0), Domain::Finite(0.0, 1.0), &qt).into_result()?;
    let b = integrate(|v| g(v, -1.0), Domain::SemiInfinite(1.0), &qt).into_result()?;
    let mut literal_windows = Vec::new();
    for tmax in [1.0f64, 10.0, 100.0] {
        let v = integrate(|v| g(v, 1.0), Domain::Finite(0.0, tmax.sqrt()), &Tolerance::rel(1e-8)).value;
        literal_windows.push((tmax, -v));
    }
    if let Some(e) = err {
        return Err(e);
    }
    let rhs = -(a + b);
    Ok(Lemma2Report { lhs, rhs, residual: (lhs - rhs).abs(), literal_windows })
}

/// Outcome of the finite-difference complete-monotonicity heuristic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityCheck {
    pub pass: bool,
    /// Most negative normalised (−1)^n Δ_h^n f(t) seen.
    pub worst: f64,
    pub worst_t: f64,
    pub worst_order: u32,
}

/// Checks (−1)^n Δ_h^n f(t) ≥ 0 for n = 1..=max_order with h = 0.05·t at each
/// grid point, up to a relative slack of 1e−10·|f(t)|.
pub fn completely_monotone_check<F: FnMut(f64) -> Result<f64>>(mut f: F, grid: &[f64], max_order: u32) -> Result<MonotonicityCheck> {
    let mut out = MonotonicityCheck { pass: true, worst: f64::INFINITY, worst_t: f64::NAN, worst_order: 0 };
    for &t in grid {
        let h = 0.05 * t;
        let vals: Vec<f64> = (0..=max_order).map(|j| f(t + j as f64 * h)).collect::<Result<_>>()?;
        let scale = vals[0].abs().max(1e-300);
        for n in 1..=max_order {
            let mut d = 0.0;
            let mut binom = 1.0;
            for j in 0..=n {
                let sign = if (n - j) % 2 == 0 { 1.0 } else { -1.0 };
                d += sign * binom * vals[j as usize];
                binom = binom * (n - j) as f64 / (j + 1) as f64;
            }
            let signed = if n % 2 == 0 { d } else { -d } / scale;
            if signed < out.worst {
                out.worst = signed;
                out.worst_t = t;
                out.worst_order = n;
            }
            if signed < -1e-10 {
                out.pass = false;
            }
        }
    }
    Ok(out)
}

/// κ in E(e^{−κs²H}): ½ when `half_factor`, 1 otherwise.
#[inline]
pub fn kappa(half_factor: bool) -> f64 {
    if half_factor {
        0.5
    } else {
        1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BridgeDirection {
    /// From E(e^{sX}) = f(α+s)/f(α) to λ ↦ E(e^{−λH}) = 1/f_ratio(√(λ/κ)).
    Forward,
    /// From λ ↦ E(e^{−λH}) to s ↦ E(e^{sX}) = 1/g(κs²).
    Reciprocal,
}

/// The companion transform of a Wald couple.
#[derive(Debug, Clone, Copy)]
pub struct WaldBridge<F> {
    f: F,
    pub direction: BridgeDirection,
    pub half_factor: bool,
}

pub fn wald_bridge<F: Fn(f64) -> f64>(f_ratio: F, direction: BridgeDirection, half_factor: bool) -> WaldBridge<F> {
    WaldBridge { f: f_ratio, direction, half_factor }
}

impl<F: Fn(f64) -> f64> WaldBridge<F> {
    pub fn eval(&self, s: f64) -> Result<f64> {
        let k = kappa(self.half_factor);
        let v = match self.direction {
            BridgeDirection::Forward => {
                if s < 0.0 {
                    return Err(Error::Domain(format!("companion Laplace transform needs λ ≥ 0, got {s}")));
                }
                (self.f)((s / k).sqrt())
            }
            BridgeDirection::Reciprocal => (self.f)(k * s * s),
        };
        if !(v > 0.0) {
            return Err(Error::Domain(format!("transform must be positive, got {v}")));
        }
        Ok(1.0 / v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_basics() {
        let u = ThorinMeasure::from_atoms(vec![(1.0, 1.0)]).unwrap();
        assert!((ggc_laplace_exponent(&u, 1.0).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(ggc_laplace_exponent(&u, 0.0).unwrap(), 0.0);
        assert!((ggc_laplace_transform(&u, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(ggc_laplace_exponent(&u, -1.0).is_err());
        assert!(ThorinMeasure::from_atoms(vec![(0.0, 1.0)]).is_err());
    }

    #[test]
    fn hyperbolic_thorin() {
        let c1 = ThorinMeasure::c1(10_000).unwrap();
        for s in [0.5, 1.0, 3.0] {
            let phi = ggc_laplace_exponent(&c1, 0.5 * s * s).unwrap();
            assert!((phi - s.cosh().ln()).abs() < 1e-10);
        }
        let sa = ThorinMeasure::s_a(2.0, 10_000).unwrap();
        let v = ggc_laplace_transform(&sa, 0.5).unwrap();
        assert!((v - 2.0 / 2f64.sinh()).abs() < 1e-10);
        // cosh-zero atoms with unit scale give 1/cosh(s) at s²
        let u = ThorinMeasure::from_zero_set(ZeroSet::cosh(), 1.0, 1.0, 5000).unwrap();
        assert!((ggc_laplace_transform(&u, 4.0).unwrap() - 1.0 / 2f64.cosh()).abs() < 1e-10);
    }

    #[test]
    fn levy_density_examples() {
        let u = ThorinMeasure::from_atoms(vec![(2.0, 3.0)]).unwrap();
        assert!((levy_density_from_thorin(&u, 0.7).unwrap() - 3.0 * (-1.4f64).exp() / 0.7).abs() < 1e-15);
        let a = 1.5;
        let w = ThorinMeasure::from_zero_set(ZeroSet::sinh_scaled(a).unwrap(), 2.0, 1.0, 100).unwrap();
        let t = 0.3;
        let direct: f64 = (1..200).map(|n| (-(PI * PI) * (n * n) as f64 * t / (a * a)).exp()).sum::<f64>() * 2.0 / t;
        assert!((levy_density_from_thorin(&w, t).unwrap() - direct).abs() < 1e-13 * direct);
        assert!(levy_density_from_thorin(&w, 1e3).unwrap() < 1e-300);
    }

    #[test]
    fn frullani() {
        let tol = Tolerance::abs(1e-13);
        assert_eq!(frullani_residual(1.0, 0.0, &tol).unwrap(), 0.0);
        assert!(frullani_residual(1.0, 1.0, &tol).unwrap() < 1e-9);
        assert!(frullani_residual(2.0, 3.0, &tol).unwrap() < 1e-9);
        let u = ThorinMeasure::from_atoms(vec![(1.0, 1.0), (3.0, 0.5)]).unwrap();
        let a = frullani_exponent(&u, 2.0, &tol).unwrap();
        let b = ggc_laplace_exponent(&u, 2.0).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn density_part() {
        // U(dz) = α sin(πα)/π z^{α−1} dz gives φ(s) = s^α.
        let al = 0.5;
        let d = NamedDensity::PowerLaw { coef: al * (PI * al).sin() / PI, exponent: al - 1.0, lo: 0.0, hi: f64::INFINITY };
        let u = ThorinMeasure::empty().with_density(d).unwrap();
        let v = ggc_laplace_exponent(&u, 2.0).unwrap();
        assert!((v - 2f64.sqrt()).abs() < 1e-8, "{v}");
    }

    #[test]
    fn sym_eggc() {
        let g = SignedThorinMeasure::new(vec![], vec![], 1.0).unwrap();
        let v = sym_eggc_mgf(&g, c(0.0, 1.3)).unwrap();
        assert!((v.re - (-0.5 * 1.3f64 * 1.3).exp()).abs() < 1e-15);
        let sym = SignedThorinMeasure::new(vec![(1.0, 1.0)], vec![(1.0, 1.0)], 0.0).unwrap();
        let v = sym_eggc_mgf(&sym, c(0.0, 0.8)).unwrap();
        assert!(v.im.abs() < 1e-15 && v.norm() <= 1.0);
        let asym = SignedThorinMeasure::new(vec![(1.0, 1.0)], vec![(2.0, 0.3)], 0.5).unwrap();
        let a = sym_eggc_mgf(&asym, c(0.0, 0.8)).unwrap();
        let b = sym_eggc_mgf(&asym, c(0.0, -0.8)).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
        assert!(sym_eggc_mgf(&asym, c(0.1, 0.8)).is_err());
        // √(2H)Z against E(e^{−t²H})
        let c1 = ThorinMeasure::c1(5000).unwrap();
        let gsm = SignedThorinMeasure::gaussian_scale_mixture(&c1).unwrap();
        let t = 1.1;
        let v = sym_eggc_mgf(&gsm, c(0.0, t)).unwrap();
        let h = ggc_laplace_transform(&c1, t * t).unwrap();
        assert!((v.re - h).abs() < 1e-10 && v.im.abs() < 1e-14);
    }

    #[test]
    fn lemma2_inner_closed_form() {
        let mu = MuMeasure::zeta_prime(2).unwrap();
        let alpha = 2.0;
        for z in [0.1, 1.0, 7.5] {
            let direct: f64 =
                mu.tower_atoms(80).iter().map(|&(x, m)| m * 2.0 * (x * (z / 2.0).sqrt()).sin().powi(2) * (-alpha * x).exp()).sum();
            assert!((lemma2_inner(&mu, alpha, z).unwrap() - direct).abs() < 1e-10);
        }
        let g = MuMeasure::gamma();
        for z in [0.3, 4.0, 50.0] {
            let tol = Tolerance::abs(1e-13).with_max_subdivisions(5000);
            let f = |x: f64| if x <= 0.0 { 0.0 } else { 2.0 * (x * (z / 2.0).sqrt()).sin().powi(2) * (-1.5 * x).exp() / x.exp_m1() };
            let q = integrate(f, Domain::Finite(0.0, 60.0), &tol).value;
            assert!((lemma2_inner(&g, 1.5, z).unwrap() - q).abs() < 1e-10, "z={z}");
        }
        assert!(matches!(lemma2_inner(&MuMeasure::from_atoms(vec![(1.0, 1.0)]).unwrap(), 2.0, 1.0), Err(Error::UnsupportedMeasure(_))));
    }

    #[test]
    fn nu_alpha_forms_agree() {
        let tol = Tolerance::abs(1e-13).with_max_subdivisions(5000);
        let mu = MuMeasure::zeta_prime(2).unwrap();
        let g = MuMeasure::gamma();
        for t in [0.05, 1.0, 20.0] {
            let a = lemma2_nu_alpha(&mu, 2.0, t, &tol).unwrap();
            let b = lemma2_nu_alpha_zform(&mu, 2.0, t, &tol).unwrap();
            assert!((a - b).abs() < 1e-8 * a.max(1e-3), "t={t}: {a} {b}");
            let a = lemma2_nu_alpha(&g, 1.0, t, &tol).unwrap();
            let b = lemma2_nu_alpha_zform(&g, 1.0, t, &tol).unwrap();
            assert!((a - b).abs() < 1e-8 * a.max(1e-3), "t={t}: {a} {b}");
        }
        assert!(lemma2_nu_alpha(&mu, 2.0, 1e8, &tol).unwrap() < 1e-10);
    }

    #[test]
    fn nu_alpha_completely_monotone() {
        let tol = Tolerance::abs(1e-15);
        let grid: Vec<f64> = (0..=30).map(|k| 10f64.powf(-2.0 + 3.0 * k as f64 / 30.0)).collect();
        let mu = MuMeasure::zeta_prime(3).unwrap();
        let r = completely_monotone_check(|t| lemma2_nu_alpha(&mu, 2.0, t, &tol), &grid, 3).unwrap();
        assert!(r.pass, "{r:?}");
        let r = completely_monotone_check(|t| lemma2_nu_alpha(&MuMeasure::gamma(), 1.0, t, &tol), &grid, 3).unwrap();
        assert!(r.pass, "{r:?}");
        let bad = completely_monotone_check(|t| Ok((t - 1.0).powi(2)), &grid, 3).unwrap();
        assert!(!bad.pass);
    }

    #[test]
    fn lemma2_identity() {
        let tol = Tolerance::abs(1e-14).with_max_subdivisions(5000);
        let r = lemma2_report(&MuMeasure::zeta_prime(2).unwrap(), 2.0, 0.5, &tol).unwrap();
        assert!(r.residual < 1e-6, "{r:?}");
        assert!(r.literal_windows[2].1.abs() > 10.0 * r.literal_windows[0].1.abs());
        let r = lemma2_report(&MuMeasure::gamma(), 1.0, 0.7, &tol).unwrap();
        assert!(r.residual < 1e-6, "{r:?}");
    }

    #[test]
    fn bridge() {
        let one = wald_bridge(|_| 1.0, BridgeDirection::Forward, false);
        assert_eq!(one.eval(2.0).unwrap(), 1.0);
        let gauss = wald_bridge(|s: f64| (0.5 * s * s).exp(), BridgeDirection::Forward, false);
        for l in [0.0, 0.4, 3.0] {
            assert!((gauss.eval(l).unwrap() - (-0.5 * l).exp()).abs() < 1e-15);
        }
        assert!(gauss.eval(-1.0).is_err());
        let back = wald_bridge(|l: f64| (-0.5 * l).exp(), BridgeDirection::Reciprocal, false);
        assert!((back.eval(1.2).unwrap() - (0.72f64).exp()).abs() < 1e-14);
    }
}
