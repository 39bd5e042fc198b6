//! Registry of van Dantzig pairs and Wald couples, and the checks run on them.
//!
//! Every record carries f, the characteristic function of X, and g, the
//! function with g(s) = E e^{−κs²H} on the real line. For symmetric X this is
//! also g(s) = 1/f(is). The Wald identity reads f(−is)·g(s) = 1, because
//! E e^{sX} = f(−is).

use alloc::sync::Arc;

use crate::densities::OstrovskiiParams;
use crate::hadamard::{eval_even_product, eval_genus1_product, Direction, Genus1Zeros, ProductConfig, ZeroSet};
use crate::prelude::*;
use crate::samplers::{
    empirical_cf, sample_basic, sample_hinds, sample_invgamma32, sample_sym_beta, BasicLaw, PolyaSampler, RngStream, SeriesSampler,
};
use crate::specfun::bessel::bessel_f_nu;
use crate::specfun::gamma::{digamma_real, gamma_fn, gamma_real};
use crate::specfun::zeta::xi;
use crate::thorin::kappa;

pub type Transform = Box<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>;
pub type Sampler = Box<dyn Fn(&mut RngStream) -> Result<f64> + Send + Sync>;
pub type Bound = Box<dyn Fn(f64) -> f64 + Send + Sync>;

pub struct CoupleRecord {
    pub name: String,
    pub description: String,
    pub f: Transform,
    pub g: Transform,
    pub x_sampler: Option<Sampler>,
    pub h_sampler: Option<Sampler>,
    /// κ = ½ when set, κ = 1 otherwise.
    pub half_factor: bool,
    /// Van Dantzig checks run on |s| ≤ window.
    pub window: f64,
    /// Real s > 0 used by the Wald checks.
    pub wald_grid: Vec<f64>,
    /// X symmetric, so g(s) = 1/f(is) for all real s.
    pub symmetric: bool,
    /// Relative error bound of the truncated product behind f or g, when there is one.
    pub product_bound: Option<Bound>,
    pub notes: Vec<String>,
}

impl core::fmt::Debug for CoupleRecord {
    fn fmt(&self, fmt: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        fmt.debug_struct("CoupleRecord")
            .field("name", &self.name)
            .field("half_factor", &self.half_factor)
            .field("symmetric", &self.symmetric)
            .field("x_sampler", &self.x_sampler.is_some())
            .field("h_sampler", &self.h_sampler.is_some())
            .finish()
    }
}

impl CoupleRecord {
    pub fn kappa(&self) -> f64 {
        kappa(self.half_factor)
    }

    pub fn is_product_backed(&self) -> bool {
        self.product_bound.is_some()
    }

    /// E e^{sX} = f(−is).
    pub fn mgf_x(&self, s: f64) -> Result<Complex64> {
        (self.f)(c(0.0, -s))
    }

    /// E e^{−κs²H} = g(s).
    pub fn lt_h(&self, s: f64) -> Result<Complex64> {
        (self.g)(cr(s))
    }

    fn bound(&self, s: f64) -> f64 {
        self.product_bound.as_ref().map_or(0.0, |b| b(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    VanDantzig,
    WaldAnalytic,
    WaldMonteCarlo,
}

impl CheckKind {
    pub fn id(&self) -> &'static str {
        match self {
            CheckKind::VanDantzig => "van-dantzig",
            CheckKind::WaldAnalytic => "wald-analytic",
            CheckKind::WaldMonteCarlo => "wald-monte-carlo",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub label: String,
    pub s: f64,
    pub residual: f64,
    /// Allowed residual at this point.
    pub threshold: f64,
    pub se: Option<f64>,
    pub error: Option<String>,
}

impl PointResult {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.residual <= self.threshold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub couple: String,
    pub check: CheckKind,
    pub points: Vec<PointResult>,
    pub pass: bool,
    pub tolerance: f64,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(couple: &str, check: CheckKind, points: Vec<PointResult>, tolerance: f64, notes: Vec<String>) -> Self {
        let pass = !points.is_empty() && points.iter().all(PointResult::pass);
        VerificationReport { couple: couple.into(), check, points, pass, tolerance, notes }
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }
}

fn point(label: &str, s: f64, r: Result<f64>, threshold: f64, se: Option<f64>) -> PointResult {
    match r {
        Ok(v) if v.is_finite() => PointResult { label: label.into(), s, residual: v, threshold, se, error: None },
        Ok(v) => PointResult { label: label.into(), s, residual: f64::NAN, threshold, se, error: Some(format!("non-finite value {v}")) },
        Err(e) => PointResult { label: label.into(), s, residual: f64::NAN, threshold, se, error: Some(format!("{e}")) },
    }
}

/// Whether the van Dantzig check applies; one-sided couples are verified by the Wald checks only.
pub fn van_dantzig_applies(rec: &CoupleRecord) -> bool {
    rec.symmetric
}

/// Whether a Monte Carlo Wald check can run.
pub fn has_sampler(rec: &CoupleRecord) -> bool {
    rec.x_sampler.is_some() || rec.h_sampler.is_some()
}

/// |f(is)g(s) − 1| on the grid, plus f(0) = 1, g(0) = 1, |f(t)| ≤ 1 and f(−t) = conj f(t).
pub fn verify_van_dantzig(rec: &CoupleRecord, grid: &[f64], tol: f64) -> VerificationReport {
    let mut notes = rec.notes.clone();
    if !rec.symmetric {
        notes.push("X is not symmetric; g(s) = 1/f(is) is not claimed".into());
        return VerificationReport::new(&rec.name, CheckKind::VanDantzig, Vec::new(), tol, notes);
    }
    let mut points = Vec::new();
    points.push(point("f(0)", 0.0, (rec.f)(cr(0.0)).map(|v| (v - 1.0).norm()), 1e-12, None));
    points.push(point("g(0)", 0.0, (rec.g)(cr(0.0)).map(|v| (v - 1.0).norm()), 1e-12, None));
    for &s in grid {
        let th = tol.max(2.0 * rec.bound(s));
        let r = (|| Ok(((rec.f)(c(0.0, s))? * (rec.g)(cr(s))? - 1.0).norm()))();
        points.push(point("f(is)g(s)", s, r, th, None));
        let r = (rec.f)(cr(s)).map(|v| (v.norm() - 1.0).max(0.0));
        points.push(point("|f(s)|<=1", s, r, 1e-12 + rec.bound(s), None));
        let r = (|| Ok(((rec.f)(cr(-s))? - (rec.f)(cr(s))?.conj()).norm()))();
        points.push(point("hermitian", s, r, 1e-12, None));
    }
    VerificationReport::new(&rec.name, CheckKind::VanDantzig, points, tol, notes)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaldMode {
    Analytic,
    /// Draws per side; `h_scale` multiplies every H draw (1 for the honest check).
    MonteCarlo {
        draws: usize,
        seed: u64,
        h_scale: f64,
    },
}

/// |E e^{sX}·E e^{−κs²H} − 1| on real s.
///
/// Monte Carlo mode estimates each side that has a sampler and multiplies by
/// the analytic other side; a point passes when its residual is within
/// 3 standard errors plus the product bound.
pub fn verify_wald(rec: &CoupleRecord, grid: &[f64], tol: f64, mode: WaldMode) -> VerificationReport {
    let mut notes = rec.notes.clone();
    notes.push(format!("kappa = {}", rec.kappa()));
    let mut points = Vec::new();
    match mode {
        WaldMode::Analytic => {
            for &s in grid {
                let r = (|| Ok((rec.mgf_x(s)? * rec.lt_h(s)? - 1.0).norm()))();
                points.push(point("E[e^sX]E[e^-ks2H]", s, r, tol.max(2.0 * rec.bound(s)), None));
            }
            return VerificationReport::new(&rec.name, CheckKind::WaldAnalytic, points, tol, notes);
        }
        WaldMode::MonteCarlo { draws, seed, h_scale } => {
            if h_scale != 1.0 {
                notes.push(format!("H draws scaled by {h_scale}"));
            }
            if let Some(xs) = &rec.x_sampler {
                let mut rng = RngStream::new(seed, 0);
                match (0..draws).map(|_| xs(&mut rng)).collect::<Result<Vec<f64>>>() {
                    Ok(v) => {
                        let sg: Vec<Complex64> = grid.iter().map(|&s| cr(s)).collect();
                        monte_carlo_points(rec, "x-side", &v, grid, &sg, |s| rec.lt_h(s), tol, &mut points, &mut notes);
                    }
                    Err(e) => points.push(point("x-side", f64::NAN, Err(e), 0.0, None)),
                }
            }
            if let Some(hs) = &rec.h_sampler {
                let mut rng = RngStream::new(seed, 1);
                match (0..draws).map(|_| hs(&mut rng).map(|h| h * h_scale)).collect::<Result<Vec<f64>>>() {
                    Ok(v) => {
                        let k = rec.kappa();
                        let sg: Vec<Complex64> = grid.iter().map(|&s| cr(-k * s * s)).collect();
                        monte_carlo_points(rec, "h-side", &v, grid, &sg, |s| rec.mgf_x(s), tol, &mut points, &mut notes);
                    }
                    Err(e) => points.push(point("h-side", f64::NAN, Err(e), 0.0, None)),
                }
            }
            if rec.x_sampler.is_none() && rec.h_sampler.is_none() {
                notes.push("no sampler available".into());
            }
        }
    }
    VerificationReport::new(&rec.name, CheckKind::WaldMonteCarlo, points, tol, notes)
}

#[allow(clippy::too_many_arguments)]
fn monte_carlo_points<F: Fn(f64) -> Result<Complex64>>(
    rec: &CoupleRecord,
    label: &str,
    samples: &[f64],
    grid: &[f64],
    s_grid: &[Complex64],
    other: F,
    tol: f64,
    points: &mut Vec<PointResult>,
    notes: &mut Vec<String>,
) {
    let est = match empirical_cf(samples, s_grid) {
        Ok(e) => e,
        Err(e) => {
            points.push(point(label, f64::NAN, Err(e), 0.0, None));
            return;
        }
    };
    for (e, &s) in est.iter().zip(grid) {
        if e.unstable {
            notes.push(format!("{label}: unstable moment estimate at s = {s}"));
        }
        match other(s) {
            Ok(a) => {
                let se = e.standard_error * a.norm();
                let r = (e.estimate * a - 1.0).norm();
                points.push(point(label, s, Ok(r), 3.0 * se + tol.max(2.0 * rec.bound(s)), Some(se)));
            }
            Err(err) => points.push(point(label, s, Err(err), 0.0, None)),
        }
    }
}

/// Truncation used for product-backed records.
pub const PRODUCT_TRUNCATION: usize = 10_000;
/// Truncation used for series samplers in the registry.
pub const SAMPLER_TRUNCATION: usize = 1_000;

fn sampler_from(s: SeriesSampler) -> Sampler {
    Box::new(move |rng: &mut RngStream| Ok(s.sample(rng)))
}

fn closed(name: &str, description: &str, f: Transform, g: Transform) -> CoupleRecord {
    CoupleRecord {
        name: name.into(),
        description: description.into(),
        f,
        g,
        x_sampler: None,
        h_sampler: None,
        half_factor: true,
        window: 3.0,
        wald_grid: vec![0.5, 1.0],
        symmetric: true,
        product_bound: None,
        notes: Vec::new(),
    }
}

fn rademacher(scale: f64) -> Sampler {
    Box::new(move |rng: &mut RngStream| Ok(scale * sample_sym_beta(-0.5, rng)?))
}

/// (cos, 1/cosh): X = ±1, H = C₁, κ = ½.
pub fn cos_cosh() -> Result<CoupleRecord> {
    let mut r = closed("cos-cosh", "X = +-1, H = C1, kappa = 1/2", Box::new(|s| Ok(s.cos())), Box::new(|s| Ok(s.cosh().inv())));
    r.x_sampler = Some(rademacher(1.0));
    r.h_sampler = Some(sampler_from(SeriesSampler::c1(SAMPLER_TRUNCATION)?));
    Ok(r)
}

/// κ = 1 reading of the C₁ couple: X = ±√2, E e^{−s²C₁} = 1/cosh(√2 s).
pub fn c1_kappa1() -> Result<CoupleRecord> {
    let r2 = 2f64.sqrt();
    let mut r =
        closed("c1", "X = +-sqrt2, H = C1, kappa = 1", Box::new(move |s| Ok((s * r2).cos())), Box::new(move |s| Ok((s * r2).cosh().inv())));
    r.half_factor = false;
    r.x_sampler = Some(rademacher(r2));
    r.h_sampler = Some(sampler_from(SeriesSampler::c1(SAMPLER_TRUNCATION)?));
    Ok(r)
}

/// (cos², 1/cosh²): X the sum of two signs, H = C₂.
pub fn c2() -> Result<CoupleRecord> {
    let mut r = closed(
        "c2",
        "X = sum of two signs, H = C2, kappa = 1/2",
        Box::new(|s| Ok(s.cos().powi(2))),
        Box::new(|s| Ok(s.cosh().powi(2).inv())),
    );
    r.x_sampler = Some(Box::new(|rng: &mut RngStream| Ok(sample_sym_beta(-0.5, rng)? + sample_sym_beta(-0.5, rng)?)));
    r.h_sampler = Some(sampler_from(SeriesSampler::c2(SAMPLER_TRUNCATION)?));
    Ok(r)
}

fn sinc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

fn sinhc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        1.0 + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

/// (sin s/s, s/sinh s): X uniform on (−1, 1), H = S₁.
pub fn sinc_sinh() -> Result<CoupleRecord> {
    let mut r =
        closed("sinc-sinh", "X uniform on (-1,1), H = S1, kappa = 1/2", Box::new(|s| Ok(sinc(s))), Box::new(|s| Ok(sinhc(s).inv())));
    r.x_sampler = Some(Box::new(|rng: &mut RngStream| sample_basic(BasicLaw::Uniform { a: 1.0 }, rng)));
    r.h_sampler = Some(sampler_from(SeriesSampler::s_a(1.0, SAMPLER_TRUNCATION)?));
    Ok(r)
}

/// ((sin as/as)², (as/sinh as)²): X a sum of two uniforms on (−a, a), H = W_a.
pub fn w_a(a: f64) -> Result<CoupleRecord> {
    if !(a > 0.0) {
        return Err(Error::Parameter(format!("a must be positive, got {a}")));
    }
    let mut r = closed(
        &format!("w-{a}"),
        "X = U + U' on (-a,a), H = W_a = S_a + S_a', kappa = 1/2",
        Box::new(move |s| Ok(sinc(s * a).powi(2))),
        Box::new(move |s| Ok(sinhc(s * a).powi(2).inv())),
    );
    r.x_sampler = Some(Box::new(move |rng: &mut RngStream| {
        Ok(sample_basic(BasicLaw::Uniform { a }, rng)? + sample_basic(BasicLaw::Uniform { a }, rng)?)
    }));
    r.h_sampler = Some(sampler_from(SeriesSampler::w_a(a, SAMPLER_TRUNCATION)?));
    Ok(r)
}

/// (f_ν, 1/f_ν(i·)) with g from the product over the zeros of J_ν and H = Σ 2E_n/j²_{ν,n}.
pub fn sym_beta(nu: f64) -> Result<CoupleRecord> {
    let zs = Arc::new(ZeroSet::bessel(nu, PRODUCT_TRUNCATION)?);
    let cfg = ProductConfig::default();
    let zg = zs.clone();
    let g: Transform = Box::new(move |s| Ok(eval_even_product(&zg, s, &cfg, Direction::Reciprocal)?.value));
    let zb = zs.clone();
    let bound: Bound = Box::new(move |s| eval_even_product(&zb, cr(s), &cfg, Direction::Forward).map_or(f64::INFINITY, |p| p.tail_bound));
    let mut r = closed(
        &format!("symbeta{nu:+}"),
        "X = 2B - 1 with B ~ Beta(nu+1/2, nu+1/2), H = sum 2E_n/j_n^2, kappa = 1/2",
        Box::new(move |s| bessel_f_nu(nu, s)),
        g,
    );
    r.x_sampler = Some(Box::new(move |rng: &mut RngStream| sample_sym_beta(nu, rng)));
    r.h_sampler = Some(sampler_from(SeriesSampler::bessel_h(nu, SAMPLER_TRUNCATION)?));
    r.product_bound = Some(bound);
    r.notes.push(format!("g from {PRODUCT_TRUNCATION} zeros of J_nu with order-4 tail correction"));
    Ok(r)
}

/// f₁f₂ = 1/cosh(πs/2), the CF of X₁ − X₂ with X = ½ log Gamma(½); g(s) = cos(πs/2).
pub fn hinds() -> Result<CoupleRecord> {
    let h = PI / 2.0;
    let mut r = closed(
        "hinds",
        "X = X1 - X2 with X_i = (1/2) log Gamma(1/2); g(s) = cos(pi s/2) is not a Laplace transform in s^2",
        Box::new(move |s| Ok((s * h).cosh().inv())),
        Box::new(move |s| Ok((s * h).cos())),
    );
    r.x_sampler = Some(Box::new(|rng: &mut RngStream| Ok(sample_hinds(rng) - sample_hinds(rng))));
    // E e^{2sX} must be finite for the standard error, so s < ½
    r.wald_grid = vec![0.2, 0.4];
    r.notes.push("single-factor CF is Gamma((1+is)/2)/sqrt(pi)".into());
    Ok(r)
}

/// Gamma couple: X = log G_a − ψ(a), H = H^Γ_a, κ = ½; g is the genus-one product.
pub fn gamma_couple(a: f64) -> Result<CoupleRecord> {
    if !(a > 0.0) {
        return Err(Error::Parameter(format!("a must be positive, got {a}")));
    }
    let psi = digamma_real(a)?;
    let ga = gamma_real(a)?;
    let zeros = Arc::new(Genus1Zeros::gamma(a, PRODUCT_TRUNCATION)?);
    let cfg = ProductConfig::default();
    let f: Transform = Box::new(move |s| {
        let is = c(-s.im, s.re);
        Ok(gamma_fn(is + a)? / ga * (-is * psi).exp())
    });
    let g: Transform = Box::new(move |s| eval_genus1_product(&zeros, 0.0, cr(s.re.abs()), &cfg));
    let q = a + PRODUCT_TRUNCATION as f64;
    let bound: Bound = Box::new(move |s| (s.abs() / q).powi(5) * q / 4.0);
    let mut r = closed(&format!("gamma-{a}"), "X = log G_a - psi(a), H = sum (a+k)^-2 H_{1,k}, kappa = 1/2", f, g);
    r.symmetric = false;
    r.wald_grid = vec![0.25, 0.5];
    let gd = rand_distr::Gamma::new(a, 1.0).map_err(|e| Error::Parameter(format!("{e}")))?;
    r.x_sampler = Some(Box::new(move |rng: &mut RngStream| Ok(rand_distr::Distribution::<f64>::sample(&gd, rng).ln() - psi)));
    r.h_sampler = Some(sampler_from(SeriesSampler::gamma_h(a, SAMPLER_TRUNCATION)?));
    r.product_bound = Some(bound);
    r.notes.push("one-sided: the identity holds for s >= 0".into());
    Ok(r)
}

/// H_a = β/Gamma(3/2) with β = 1/(2a²) and X = (1 − E)/a: E e^{sX} = e^{s/a}/(1 + s/a).
pub fn inverse_gamma_couple(a: f64) -> Result<CoupleRecord> {
    if !(a > 0.0) {
        return Err(Error::Parameter(format!("a must be positive, got {a}")));
    }
    let f: Transform = Box::new(move |s| {
        let is = c(-s.im, s.re) / a;
        Ok(is.exp() / (is + 1.0))
    });
    let g: Transform = Box::new(move |s| {
        let u = s.re.abs() / a;
        Ok(cr((1.0 + u) * (-u).exp()))
    });
    let mut r = closed(&format!("h-a-{a}"), "X = (1 - E)/a, H = H_a, kappa = 1/2", f, g);
    r.symmetric = false;
    r.x_sampler = Some(Box::new(move |rng: &mut RngStream| Ok((1.0 - sample_basic(BasicLaw::Exp, rng)?) / a)));
    r.h_sampler = Some(Box::new(move |rng: &mut RngStream| sample_invgamma32(a, rng)));
    r.notes.push("one-sided: the identity holds for s >= 0".into());
    Ok(r)
}

fn xi_reflected(w: Complex64) -> Result<Complex64> {
    if w.re < 0.5 {
        xi(1.0 - w)
    } else {
        xi(w)
    }
}

/// f(s) = ξ(½+is)/ξ(½), g(s) = ξ(½)/ξ(½+s); X sampled from the ξ density.
pub fn xi_couple() -> Result<CoupleRecord> {
    let x0 = xi(cr(0.5))?.re;
    let f: Transform = Box::new(move |s| Ok(xi_reflected(cr(0.5) + c(-s.im, s.re))? / x0));
    let g: Transform = Box::new(move |s| Ok(xi(cr(0.5 + s.re.abs()))?.inv() * x0));
    let mut r = closed("xi", "X with the xi density, g(s) = xi(1/2)/xi(1/2+s); no H sampler", f, g);
    let ps = PolyaSampler::new(1e-17)?;
    r.x_sampler = Some(Box::new(move |rng: &mut RngStream| ps.sample(rng)));
    r.wald_grid = vec![0.5];
    r.window = 2.0;
    Ok(r)
}

fn ostrovskii_complex(z: Complex64, p: &OstrovskiiParams) -> Complex64 {
    let mut v = z.inv() * z.inv() - (z * p.c).inv();
    for (a, h) in p.a_k.iter().zip(&p.h_k) {
        v += p.delta * a / (z + h);
    }
    v
}

/// φ_δ(s) = f_δ(cosh s)/f_δ(1) with g(s) = f_δ(1)/f_δ(cos s).
pub fn ostrovskii(p: OstrovskiiParams) -> Result<CoupleRecord> {
    p.validate()?;
    let p = Arc::new(p);
    let f1 = ostrovskii_complex(cr(1.0), &p);
    let pf = p.clone();
    let f: Transform = Box::new(move |s| Ok(ostrovskii_complex(s.cosh(), &pf) / f1));
    let pg = p.clone();
    let g: Transform = Box::new(move |s| Ok(f1 / ostrovskii_complex(s.cos(), &pg)));
    let mut r = closed("ostrovskii", "density h_delta with CF f_delta(cosh s)/f_delta(1); no samplers", f, g);
    r.notes.push(format!("C = {}, B = {}, delta = {}", p.c, p.b, p.delta));
    Ok(r)
}

/// The parameter set used by the registry: C = 2, B = 3, a = (1, ½), h = (3, 5), δ = 0.1.
pub fn ostrovskii_default_params() -> OstrovskiiParams {
    OstrovskiiParams { c: 2.0, b: 3.0, delta: 0.1, a_k: vec![1.0, 0.5], h_k: vec![3.0, 5.0] }
}

/// A second set close to the nonnegativity boundary: C = 1.59, B = 1.6, a = 2, h = 1.6, δ = 20.
pub fn ostrovskii_edge_params() -> OstrovskiiParams {
    OstrovskiiParams { c: 1.59, b: 1.6, delta: 20.0, a_k: vec![2.0], h_k: vec![1.6] }
}

pub fn builtin_registry() -> Result<Vec<CoupleRecord>> {
    Ok(vec![
        cos_cosh()?,
        sinc_sinh()?,
        c1_kappa1()?,
        c2()?,
        w_a(1.0)?,
        sym_beta(-0.5)?,
        sym_beta(0.5)?,
        sym_beta(1.0)?,
        hinds()?,
        gamma_couple(1.0)?,
        gamma_couple(2.0)?,
        inverse_gamma_couple(1.0)?,
        xi_couple()?,
        ostrovskii(ostrovskii_default_params())?,
    ])
}

/// A linear grid of `n` points on [−window, window].
pub fn symmetric_grid(window: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![0.0];
    }
    (0..n).map(|k| -window + 2.0 * window * k as f64 / (n - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_pairs() {
        let grid = symmetric_grid(3.0, 61);
        for rec in [cos_cosh().unwrap(), sinc_sinh().unwrap(), c2().unwrap(), w_a(1.0).unwrap(), c1_kappa1().unwrap(), hinds().unwrap()] {
            let r = verify_van_dantzig(&rec, &grid, 1e-12);
            assert!(r.pass, "{} {:?}", rec.name, r.points.iter().find(|p| !p.pass()));
            let w = verify_wald(&rec, &rec.wald_grid, 1e-12, WaldMode::Analytic);
            assert!(w.pass, "{}", rec.name);
        }
    }

    #[test]
    fn one_sided_records() {
        for rec in [gamma_couple(1.0).unwrap(), inverse_gamma_couple(1.0).unwrap()] {
            let w = verify_wald(&rec, &[0.25, 0.5, 1.0, 2.0], 1e-10, WaldMode::Analytic);
            assert!(w.pass, "{} {:?}", rec.name, w.points);
            assert!(verify_van_dantzig(&rec, &[1.0], 1e-10).points.is_empty());
        }
    }

    #[test]
    fn wald_monte_carlo_cos_cosh() {
        let rec = cos_cosh().unwrap();
        let mode = WaldMode::MonteCarlo { draws: 20_000, seed: 11, h_scale: 1.0 };
        let r = verify_wald(&rec, &[0.5, 1.0], 1e-12, mode);
        assert!(r.pass, "{:?}", r.points);
        assert_eq!(r.points.len(), 4);
        let bad = verify_wald(&rec, &[0.5, 1.0], 1e-12, WaldMode::MonteCarlo { draws: 20_000, seed: 11, h_scale: 1.1 });
        assert!(!bad.pass);
    }

    #[test]
    fn ostrovskii_record() {
        let rec = ostrovskii(ostrovskii_default_params()).unwrap();
        let r = verify_van_dantzig(&rec, &symmetric_grid(3.0, 31), 1e-12);
        assert!(r.pass, "{:?}", r.points.iter().find(|p| !p.pass()));
    }
}
