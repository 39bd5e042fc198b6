//! Registry of verifiable identities, each producing a [`Report`].

use num_complex::Complex64;
use rayon::prelude::*;
use vdw_core::couples::{self, has_sampler, symmetric_grid, van_dantzig_applies, verify_van_dantzig, verify_wald, CoupleRecord, WaldMode};
use vdw_core::densities::*;
use vdw_core::hadamard::{eval_even_product_rotated, Direction, ProductConfig, Rotation, ZeroSet};
use vdw_core::lseries_process::{first_passage_exponent, lseries_ratio, sample_first_passage, sample_path, SubordinatorSpec};
use vdw_core::numerics::{integrate, Domain, Tolerance};
use vdw_core::samplers::{empirical_cf, sample_basic, sample_sym_beta, BasicLaw, PolyaSampler, SeriesSampler};
use vdw_core::specfun::bessel::{macdonald_identity_residuals, polya_identity_residual};
use vdw_core::specfun::dirichlet::functional_equation_residual;
use vdw_core::specfun::eta::eta_power_lt_quadrature;
use vdw_core::specfun::tau::xi_tau_full;
use vdw_core::specfun::*;
use vdw_core::thorin::{frullani_residual, ggc_laplace_transform, lemma2_report, MuMeasure, ThorinMeasure};

use crate::formats::{error_point, point, stat_point, PointRecord, Report};
use crate::sample::draw_blocks;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub tier: Tier,
    pub seed: u64,
    /// Overrides the tier's Monte Carlo sample size.
    pub draws: Option<usize>,
    /// Overrides the default analytic tolerance of identities that have one.
    pub tol: Option<f64>,
}

impl RunConfig {
    pub fn new(tier: Tier, seed: u64) -> Self {
        RunConfig { tier, seed, draws: None, tol: None }
    }

    fn draws(&self, quick: usize, full: usize) -> usize {
        self.draws.unwrap_or(match self.tier {
            Tier::Quick => quick,
            Tier::Full => full,
        })
    }

    fn pick<T>(&self, quick: T, full: T) -> T {
        match self.tier {
            Tier::Quick => quick,
            Tier::Full => full,
        }
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

type Runner = fn(&str, &RunConfig) -> Report;
type Direct = Box<dyn Fn(Complex64) -> vdw_core::Result<Complex64>>;
type GgcCase<'a> = (&'a str, vdw_core::Result<ThorinMeasure>, fn(f64) -> f64);

pub struct Identity {
    pub id: String,
    pub description: &'static str,
    run: Runner,
}

impl Identity {
    pub fn run(&self, cfg: &RunConfig) -> Report {
        (self.run)(&self.id, cfg)
    }
}

/// Couple ids, in registry order, with the κ convention used by the record.
pub const COUPLE_NAMES: &[&str] = &[
    "cos-cosh",
    "sinc-sinh",
    "c1",
    "c2",
    "w-1",
    "symbeta-0.5",
    "symbeta+0.5",
    "symbeta+1",
    "hinds",
    "gamma-1",
    "gamma-2",
    "h-a-1",
    "xi",
    "ostrovskii",
];

/// Couples whose Monte Carlo Wald check runs in the quick tier.
const QUICK_MONTE_CARLO: &[&str] = &["c1", "sinc-sinh", "w-1", "gamma-1", "h-a-1", "xi"];

pub fn couple_record(name: &str) -> Option<vdw_core::Result<CoupleRecord>> {
    Some(match name {
        "cos-cosh" => couples::cos_cosh(),
        "sinc-sinh" => couples::sinc_sinh(),
        "c1" => couples::c1_kappa1(),
        "c2" => couples::c2(),
        "w-1" => couples::w_a(1.0),
        "symbeta-0.5" => couples::sym_beta(-0.5),
        "symbeta+0.5" => couples::sym_beta(0.5),
        "symbeta+1" => couples::sym_beta(1.0),
        "hinds" => couples::hinds(),
        "gamma-1" => couples::gamma_couple(1.0),
        "gamma-2" => couples::gamma_couple(2.0),
        "h-a-1" => couples::inverse_gamma_couple(1.0),
        "xi" => couples::xi_couple(),
        "ostrovskii" => couples::ostrovskii(couples::ostrovskii_default_params()),
        _ => return None,
    })
}

macro_rules! ident {
    ($id:expr, $f:expr, $d:expr) => {
        Identity { id: $id.to_string(), description: $d, run: $f }
    };
}

/// Every identity, in report order.
pub fn registry() -> Vec<Identity> {
    let mut v = vec![
        ident!("hadamard", hadamard, "truncated Hadamard products vs cosh, sinh(s)/s and f_nu"),
        ident!("frullani", frullani, "Frullani representation of log Gamma ratios"),
        ident!("lemma2", lemma2, "two-sided Levy representation of log f(alpha)/f(alpha+s) for zeta_2 and Gamma"),
        ident!("ggc-transforms", ggc, "GGC Laplace transforms of C1, S1, W1 from Thorin atoms"),
        ident!("euler-product", euler_product, "Euler product vs analytic continuation of zeta"),
        ident!("xi-symmetry", xi_symmetry, "xi(s) = xi(1 - s)"),
        ident!("dirichlet-functional-equation", dirichlet_fe, "completed L-function functional equation"),
        ident!("macdonald", macdonald, "Macdonald integral forms agree"),
        ident!("w-a-mellin", w_a_mellin, "Mellin transform of W_a against 2(2a^2/pi)^s xi(2s)"),
        ident!("w-a-density", w_a_density_check, "W_a density: mass, Laplace transform, mean, sign"),
        ident!("polya-density", polya_density_check, "xi density: mass, symmetry, mgf, sign, tail"),
        ident!("polya-sampler", polya_sampler, "xi density sampler: mean and mgf"),
        ident!("eta", eta, "Dedekind eta: two evaluations and Laplace transforms"),
        ident!("tau", tau, "Ramanujan tau: values, multiplicativity, Hecke relation"),
        ident!("xi-tau", xi_tau_check, "Xi_tau is even and real"),
        ident!("sigma-identity", sigma_identity, "sum sigma_{-1}(n) e^{-2pi n x} identity"),
        ident!("residue-integrals", residue_integrals, "cosh Fourier integrals by residues vs quadrature"),
        ident!("fourier-cosine", fourier_cosine, "Fourier cosine series identity"),
        ident!("kendall", kendall, "Laplace convolution density"),
        ident!("ostrovskii", ostrovskii, "Ostrovskii density: sign, CF round trip, delta sensitivity"),
        ident!("sampler-laws", sampler_laws, "basic samplers against known transforms"),
        ident!("lseries-subordinator", lseries_subordinator, "subordinator Laplace transform vs L-ratio"),
        ident!("first-passage", first_passage, "first-passage exponent: root, grid scan, Monte Carlo"),
    ];
    for name in COUPLE_NAMES {
        v.push(Identity { id: format!("couple:{name}"), description: "van Dantzig and Wald checks", run: couple });
    }
    v
}

pub fn find(id: &str) -> Option<Identity> {
    registry().into_iter().find(|i| i.id == id)
}

/// Runs the identities concurrently; reports come back in input order.
pub fn run_all(ids: &[Identity], cfg: &RunConfig) -> Vec<Report> {
    ids.par_iter().map(|i| i.run(cfg)).collect()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

fn push_result(points: &mut Vec<PointRecord>, label: &str, x: f64, r: vdw_core::Result<f64>, threshold: f64) {
    points.push(match r {
        Ok(v) => point(label, x, v, threshold),
        Err(e) => error_point(label, x, e),
    });
}

fn hadamard(id: &str, cfg: &RunConfig) -> Report {
    let tol = cfg.tol(1e-8);
    let pc = ProductConfig::default();
    let grid = linspace(-5.0, 5.0, cfg.pick(21, 101));
    let mut points = Vec::new();
    let sinhc = |z: Complex64| if z.norm() < 1e-8 { Complex64::new(1.0, 0.0) } else { z.sinh() / z };
    let mut families: Vec<(String, vdw_core::Result<ZeroSet>, Direct)> = vec![
        ("cosh".into(), Ok(ZeroSet::cosh()), Box::new(|z: Complex64| Ok(z.cosh()))),
        ("sinh".into(), Ok(ZeroSet::sinh()), Box::new(move |z| Ok(sinhc(z)))),
    ];
    for nu in [-0.5, 0.5, 1.0] {
        let f = Box::new(move |z: Complex64| bessel_f_nu(nu, Complex64::new(-z.im, z.re)));
        families.push((format!("bessel{nu:+}"), ZeroSet::bessel(nu, pc.truncation), f));
    }
    for (name, zs, direct) in &families {
        let zs = match zs {
            Ok(z) => z,
            Err(e) => {
                points.push(error_point(name, f64::NAN, e));
                continue;
            }
        };
        for &s in &grid {
            for (rot, z, tag) in [(Rotation::Real, Complex64::new(s, 0.0), "real"), (Rotation::Imaginary, Complex64::new(0.0, s), "imag")] {
                let r = eval_even_product_rotated(zs, Complex64::new(s, 0.0), &pc, Direction::Forward, rot)
                    .and_then(|p| Ok(rel(p.value, direct(z)?)));
                push_result(&mut points, &format!("{name}:{tag}"), s, r, tol);
            }
        }
    }
    Report::new(id, "hadamard", points, vec![format!("N = {}, order-4 tail correction", pc.truncation)])
}

fn frullani(id: &str, cfg: &RunConfig) -> Report {
    let t = Tolerance::abs(1e-12);
    let mut points = Vec::new();
    for z in [0.5, 1.0, 2.0] {
        for s in [0.5, 1.0, 2.0] {
            push_result(&mut points, &format!("z={z}"), s, frullani_residual(z, s, &t), cfg.tol(1e-9));
        }
    }
    Report::new(id, "frullani", points, vec![])
}

fn lemma2(id: &str, cfg: &RunConfig) -> Report {
    let t = Tolerance::abs(1e-12);
    let mut points = Vec::new();
    let mut notes = Vec::new();
    let tol = cfg.tol(1e-6);
    match MuMeasure::zeta_prime(2) {
        Ok(mu) => {
            for s in cfg.pick(vec![0.5, 1.0], vec![0.25, 0.5, 1.0, 2.0]) {
                match lemma2_report(&mu, 2.0, s, &t) {
                    Ok(r) => {
                        points.push(point("zeta_2,alpha=2", s, r.residual, tol));
                        if let Some(&(w, v)) = r.literal_windows.last() {
                            notes.push(format!("exp(+s^2 t/2) reading at s = {s}: window {w} gives {v:.3e} and keeps growing"));
                        }
                    }
                    Err(e) => points.push(error_point("zeta_2,alpha=2", s, e)),
                }
            }
        }
        Err(e) => points.push(error_point("zeta_2", f64::NAN, e)),
    }
    for s in cfg.pick(vec![0.7], vec![0.3, 0.7, 1.5]) {
        push_result(&mut points, "gamma,alpha=1", s, lemma2_report(&MuMeasure::gamma(), 1.0, s, &t).map(|r| r.residual), tol);
    }
    Report::new(id, "lemma2", points, notes)
}

fn ggc(id: &str, cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    let n = 10_000;
    let cases: Vec<GgcCase> = vec![
        ("c1", ThorinMeasure::c1(n), |s| 1.0 / s.cosh()),
        ("s1", ThorinMeasure::s_a(1.0, n), |s| s / s.sinh()),
        ("w1", ThorinMeasure::w_a(1.0, n), |s| (s / s.sinh()).powi(2)),
    ];
    for (name, m, exact) in cases {
        match m {
            Ok(m) => {
                for lambda in [0.1f64, 0.5, 2.0] {
                    let s = (2.0 * lambda).sqrt();
                    let r = ggc_laplace_transform(&m, lambda).map(|v| (v - exact(s)).abs());
                    push_result(&mut points, name, lambda, r, cfg.tol(1e-8));
                }
            }
            Err(e) => points.push(error_point(name, f64::NAN, e)),
        }
    }
    Report::new(id, "ggc-transforms", points, vec!["E exp(-lambda H) at s = sqrt(2 lambda)".into()])
}

fn euler_product(id: &str, _cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    for alpha in [2.0, 3.0, 4.0] {
        match (euler_product_zeta(alpha, 100_000), zeta_real(alpha)) {
            (Ok(e), Ok(z)) => points.push(point("P=1e5", alpha, (e.value - z).abs(), e.tail_bound + 1e-14 * z)),
            (Err(e), _) | (_, Err(e)) => points.push(error_point("P=1e5", alpha, e)),
        }
    }
    Report::new(id, "euler-product", points, vec!["threshold: reported tail bound plus rounding".into()])
}

fn xi_symmetry(id: &str, cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    let mut grid = vec![(0.3, 0.0), (0.5, 0.0), (0.7, 0.0)];
    if cfg.tier == Tier::Full {
        grid.extend([(0.1, 0.0), (0.25, 3.0), (0.8, 14.0), (-1.5, 0.5)]);
    }
    for (re, im) in grid {
        let s = Complex64::new(re, im);
        let r = xi(s).and_then(|a| Ok((a - xi(Complex64::new(1.0, 0.0) - s)?).norm()));
        push_result(&mut points, &format!("im={im}"), re, r, cfg.tol(1e-8));
    }
    Report::new(id, "xi-symmetry", points, vec![])
}

fn dirichlet_fe(id: &str, cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    let mut notes = Vec::new();
    let chars: Vec<(&str, vdw_core::Result<DirichletCharacter>)> = vec![
        ("mod4", Ok(DirichletCharacter::mod4())),
        ("mod5,j=1", DirichletCharacter::prime_modulus(5, 1)),
        ("mod7,j=2", DirichletCharacter::prime_modulus(7, 2)),
    ];
    for (name, chi) in chars {
        let chi = match chi {
            Ok(c) => c,
            Err(e) => {
                points.push(error_point(name, f64::NAN, e));
                continue;
            }
        };
        for s in [Complex64::new(0.3, 2.0), Complex64::new(0.8, -1.0)] {
            match functional_equation_residual(&chi, s) {
                Ok(r) => {
                    points.push(point(&format!("{name},im={}", s.im), s.re, r.normalized, cfg.tol(1e-9)));
                    notes.push(format!("{name} at {s}: residual without k^(-1/2) i^(-e) is {:.3e}", r.literal));
                }
                Err(e) => points.push(error_point(name, s.re, e)),
            }
        }
    }
    Report::new(id, "dirichlet-functional-equation", points, notes)
}

fn macdonald(id: &str, cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    let mut notes = Vec::new();
    for (z, a) in [(Complex64::new(0.3, 0.0), 1.0), (Complex64::new(0.5, 1.0), 0.7), (Complex64::new(1.5, 0.0), 2.0)] {
        match macdonald_identity_residuals(z, a) {
            Ok((r1, r2)) => {
                points.push(point(&format!("t-form,z={z}"), a, r1, cfg.tol(1e-10)));
                points.push(point(&format!("G(z,a),z={z}"), a, r2, cfg.tol(1e-10)));
            }
            Err(e) => points.push(error_point("macdonald", a, e)),
        }
        if let Ok(r) = polya_identity_residual(0.5 + z.re, z.im, a) {
            notes.push(format!("Polya identity at z = {z}, a = {a}: residual {r:.3e} (reported only)"));
        }
    }
    Report::new(id, "macdonald", points, notes)
}

fn w_a_mellin(id: &str, cfg: &RunConfig) -> Report {
    let t = Tolerance::abs(1e-13);
    let mut points = Vec::new();
    let mut notes = Vec::new();
    let cases = cfg.pick(vec![(1.0, 2.0), (0.7, 1.0)], vec![(1.0, 2.0), (0.7, 1.0), (1.0, 1.5), (2.0, 3.0)]);
    for (a, s) in cases {
        match w_a_mellin_check(a, s, &t) {
            Ok(m) => {
                points.push(point(&format!("a={a}"), s, (m.quadrature - m.corrected).abs(), cfg.tol(1e-5)));
                notes.push(format!(
                    "a = {a}, s = {s}: quadrature {:.10}, 2(2a^2/pi)^s xi(2s) = {:.10}, 2(2a^2/pi)^s xi(s) = {:.10}",
                    m.quadrature, m.corrected, m.literal
                ));
            }
            Err(e) => points.push(error_point(&format!("a={a}"), s, e)),
        }
    }
    Report::new(id, "w-a-mellin", points, notes)
}

fn two_piece(f: impl Fn(f64) -> f64, split: f64, t: &Tolerance) -> f64 {
    integrate(&f, Domain::Finite(0.0, split), t).value + integrate(&f, Domain::SemiInfinite(split), t).value
}

fn w_a_density_check(id: &str, cfg: &RunConfig) -> Report {
    let t = Tolerance::abs(1e-12).with_max_subdivisions(4000);
    let mut points = Vec::new();
    for a in cfg.pick(vec![1.0], vec![0.5, 1.0, 2.0]) {
        let x0 = 0.01 * a * a;
        let f = move |x: f64| if x < x0 { 0.0 } else { w_a_density(x, a, 1e-16).map_or(f64::NAN, |d| d.value) };
        let split = 2.0 * a * a;
        points.push(point(&format!("mass,a={a}"), a, (two_piece(f, split, &t) - 1.0).abs(), 1e-6));
        for s in [0.5, 1.0, 2.0] {
            let lt = two_piece(|x| (-0.5 * s * s * x).exp() * f(x), split, &t);
            points.push(point(&format!("laplace,a={a}"), s, (lt - (a * s / (a * s).sinh()).powi(2)).abs(), 1e-5));
        }
        let mean = two_piece(|x| x * f(x), split, &t);
        points.push(point(&format!("mean,a={a}"), a, (mean - 2.0 * a * a / 3.0).abs(), 1e-5));
        let neg = linspace(0.1 * a * a, 10.0 * a * a, cfg.pick(200, 2000))
            .into_iter()
            .map(|x| w_a_density(x, a, 1e-16).map(|d| (-d.value).max(0.0)))
            .try_fold(0.0f64, |m, r| r.map(|v| m.max(v)));
        push_result(&mut points, &format!("nonnegative,a={a}"), a, neg, 0.0);
    }
    Report::new(id, "w-a-density", points, vec!["mass below 0.01 a^2 is below 1e-100 and skipped".into()])
}

fn polya_density_check(id: &str, cfg: &RunConfig) -> Report {
    let t = Tolerance::abs(1e-12);
    let mut points = Vec::new();
    push_result(&mut points, "mass", 0.0, polya_mgf_quadrature(0.0, &t).map(|m| (m - 1.0).abs()), 1e-6);
    for s in [0.25, 0.5] {
        let r = polya_mgf_quadrature(s, &t).and_then(|q| Ok((q - polya_mgf_closed(s)?).abs()));
        push_result(&mut points, "mgf", s, r, cfg.tol(1e-5));
    }
    let sym_grid = linspace(0.05, 3.0, 60);
    points.push(point("symmetry", 0.0, polya_symmetry_residual(&sym_grid, 1e-18), 1e-12));
    let step: f64 = cfg.pick(1e-2, 1e-3);
    let n = (8.0 / step).round() as usize + 1;
    let neg = linspace(-4.0, 4.0, n).into_iter().map(|x| polya_density(x, 1e-18)).try_fold(0.0f64, |m, r| r.map(|v| m.max(-v)));
    push_result(&mut points, "nonnegative", step, neg, 0.0);
    let lt = polya_log_density(5.0, 1e-18).map(|lp| ((lp - polya_log_tail(5.0)) - (1.0 / XI_HALF).ln()).abs());
    push_result(&mut points, "tail", 5.0, lt, 1e-4);
    Report::new(id, "polya-density", points, vec!["tail: log p(x) - log tail(x) -> log(1/xi(1/2))".into()])
}

fn polya_sampler(id: &str, cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    let mut notes = Vec::new();
    let sampler = match PolyaSampler::new(1e-17) {
        Ok(s) => s,
        Err(e) => return Report::new(id, "polya-sampler", vec![error_point("setup", f64::NAN, e)], vec![]),
    };
    notes.push(format!("acceptance probability {:.4}", sampler.acceptance_probability()));
    let n = cfg.draws(100_000, 1_000_000);
    match draw_blocks(n, cfg.seed, &|r| sampler.sample(r)) {
        Ok(xs) => {
            let mean = xs.iter().sum::<f64>() / n as f64;
            let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
            points.push(stat_point("mean", 0.0, mean.abs(), sd / (n as f64).sqrt(), 3.0));
            let grid = [0.25, 0.5];
            let sg: Vec<Complex64> = grid.iter().map(|&s| Complex64::new(s, 0.0)).collect();
            match empirical_cf(&xs, &sg) {
                Ok(est) => {
                    for (e, s) in est.iter().zip(grid) {
                        match polya_mgf_closed(s) {
                            Ok(m) => points.push(stat_point("mgf", s, (e.estimate.re - m).abs(), e.standard_error, 3.0)),
                            Err(err) => points.push(error_point("mgf", s, err)),
                        }
                    }
                }
                Err(e) => points.push(error_point("mgf", f64::NAN, e)),
            }
        }
        Err(e) => points.push(error_point("draws", f64::NAN, e)),
    }
    Report::new(id, "polya-sampler", points, notes)
}

fn eta(id: &str, cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    let grid = linspace(0.05, 5.0, cfg.pick(100, 1000));
    let worst = grid
        .iter()
        .map(|&x| Ok((dedekind_eta(x, EtaMethod::QProduct)? - dedekind_eta(x, EtaMethod::EulerSeries)?).abs()))
        .try_fold(0.0f64, |m, r: vdw_core::Result<f64>| r.map(|v| m.max(v)));
    push_result(&mut points, "methods", 0.05, worst, cfg.tol(1e-12));
    for s in [1.0, 2.0, 5.0] {
        let r1 = eta_power_lt_quadrature(s, 1).and_then(|q| Ok((q - eta_lt_closed(s)?).abs()));
        push_result(&mut points, "laplace-eta", s, r1, 1e-8);
        let r3 = eta_power_lt_quadrature(s, 3).and_then(|q| Ok((q - eta3_lt_closed(s)?).abs()));
        push_result(&mut points, "laplace-eta3", s, r3, 1e-8);
    }
    Report::new(id, "eta", points, vec![])
}

const TAU_FIRST: [i128; 10] = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920];

fn tau(id: &str, _cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    let table = match ramanujan_tau(30) {
        Ok(t) => t,
        Err(e) => return Report::new(id, "tau", vec![error_point("table", f64::NAN, e)], vec![]),
    };
    let get = |n: usize| table.get(n).unwrap_or(0);
    for (k, &v) in TAU_FIRST.iter().enumerate() {
        points.push(point("value", (k + 1) as f64, (get(k + 1) - v).abs() as f64, 0.0));
    }
    for m in 2..=30usize {
        for n in m + 1..=30 {
            if m * n <= 30 && primes::gcd(m as u64, n as u64) == 1 {
                let r = (get(m * n) - get(m) * get(n)).abs() as f64;
                points.push(point(&format!("multiplicative,m={m}"), n as f64, r, 0.0));
            }
        }
    }
    for p in [2usize, 3, 5] {
        let r = (get(p * p) - (get(p) * get(p) - (p as i128).pow(11))).abs() as f64;
        points.push(point("hecke", p as f64, r, 0.0));
    }
    Report::new(id, "tau", points, vec!["exact integer arithmetic".into()])
}

fn xi_tau_check(id: &str, cfg: &RunConfig) -> Report {
    let t = Tolerance::abs(1e-13);
    let mut points = Vec::new();
    let scale = match xi_tau_full(0.0, &t) {
        Ok(v) => v.norm(),
        Err(e) => return Report::new(id, "xi-tau", vec![error_point("Xi(0)", 0.0, e)], vec![]),
    };
    for s in cfg.pick(vec![0.5, 1.0, 2.0, 3.0], linspace(0.25, 5.0, 20)) {
        let r = (|| -> vdw_core::Result<(f64, f64, f64)> {
            let a = xi_tau_full(s, &t)?;
            let b = xi_tau_full(-s, &t)?;
            Ok(((a - b).norm() / scale, a.im.abs() / scale, (a.re - xi_tau(s, &t)?).abs() / scale))
        })();
        match r {
            Ok((even, real, agree)) => {
                points.push(point("even", s, even, cfg.tol(1e-10)));
                points.push(point("real", s, real, cfg.tol(1e-10)));
                points.push(point("cosine-form", s, agree, cfg.tol(1e-10)));
            }
            Err(e) => points.push(error_point("xi-tau", s, e)),
        }
    }
    Report::new(id, "xi-tau", points, vec!["residuals relative to |Xi_tau(0)|".into()])
}

fn sigma_identity(id: &str, cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    for x in cfg.pick(vec![1.0], vec![0.5, 1.0, 2.0]) {
        let r = sigma_minus1_identity_residual(x, 60).map(|r| r.residual);
        push_result(&mut points, "residual", x, r, cfg.tol(1e-12));
    }
    Report::new(id, "sigma-identity", points, vec![])
}

fn residue_integrals(id: &str, cfg: &RunConfig) -> Report {
    let t = Tolerance::abs(1e-13);
    let mut points = Vec::new();
    let cases = [
        ("pole-in,b=0", CoshCase::PoleIn(0.0)),
        ("pole-in,b=-0.6", CoshCase::PoleIn(-0.6)),
        ("pole-in,b=0.9", CoshCase::PoleIn(0.9)),
        ("pole-gt1,b=1.5", CoshCase::PoleGt1(1.5)),
        ("pole-gt1,b=4", CoshCase::PoleGt1(4.0)),
        ("squared", CoshCase::Squared),
    ];
    for x in cfg.pick(vec![0.0, 0.3, 1.0, 2.5], linspace(0.0, 3.0, 13)) {
        for (name, case) in cases {
            push_result(&mut points, name, x, cosh_fourier_residual(x, case, &t), cfg.tol(1e-8));
        }
    }
    Report::new(id, "residue-integrals", points, vec![])
}

fn fourier_cosine(id: &str, cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    let n = cfg.pick(200_000, 1_000_000);
    let z = 1.0;
    let pi = std::f64::consts::PI;
    let special = pi / (8.0 * z) * (2.0 * pi * z / 3.0).sinh() / (pi * z).cosh();
    points.push(point("closed(2z,pi/6)", z, (fourier_cos_closed(2.0 * z, pi / 6.0) - special).abs(), 1e-14));
    for (alpha, x) in [(2.0, pi / 6.0), (2.0, pi / 2.0), (0.5, 0.0), (1.0, 1.0), (3.0, 0.4)] {
        push_result(&mut points, &format!("alpha={alpha}"), x, fourier_cos_identity_residual(alpha, x, n), cfg.tol(1e-8));
    }
    Report::new(id, "fourier-cosine", points, vec![format!("{n} series terms")])
}

fn kendall(id: &str, cfg: &RunConfig) -> Report {
    let t = Tolerance::abs(1e-13);
    let mut points = Vec::new();
    for a in [1.0, 1.5] {
        let grid = [-1.3, 0.0, 0.5, 2.0];
        match kendall_convolution_residual(a, &grid, &t) {
            Ok(r) => points.extend(r.iter().zip(grid).map(|(&v, s)| point(&format!("convolution,a={a}"), s, v, cfg.tol(1e-9)))),
            Err(e) => points.push(error_point("convolution", a, e)),
        }
        let m = integrate(|s| kendall_density(s, a), Domain::WholeLine, &t).value;
        points.push(point("mass", a, (m - 1.0).abs(), 1e-8));
    }
    Report::new(id, "kendall", points, vec![])
}

fn ostrovskii(id: &str, cfg: &RunConfig) -> Report {
    let t = Tolerance::abs(1e-12);
    let mut points = Vec::new();
    let grid = linspace(0.0, 20.0, 2001);
    let min_on = |p: &OstrovskiiParams| grid.iter().map(|&x| ostrovskii_density(x, p)).try_fold(f64::INFINITY, |m, r| r.map(|v| m.min(v)));
    for (name, p) in [("A", couples::ostrovskii_default_params()), ("B", couples::ostrovskii_edge_params())] {
        push_result(&mut points, &format!("nonnegative,{name}"), p.delta, min_on(&p).map(|m| (-m).max(0.0)), 0.0);
        for s in cfg.pick(vec![0.0, 1.0], vec![0.0, 0.5, 1.0, 2.0, 4.0]) {
            push_result(&mut points, &format!("cf-round-trip,{name}"), s, ostrovskii_cf_residual(s, &p, &t), cfg.tol(1e-6));
        }
    }
    let edge = couples::ostrovskii_edge_params();
    let big = edge.clone().with_delta(100.0 * edge.delta);
    let detected = min_on(&big).map(|m| if m < 0.0 { 0.0 } else { 1.0 });
    push_result(&mut points, "delta*100 goes negative,B", big.delta, detected, 0.5);
    let notes = vec![
        "A: C = 2, B = 3, a = (1, 1/2), h = (3, 5), delta = 0.1".into(),
        "B: C = 1.59, B = 1.6, a = 2, h = 1.6, delta = 20".into(),
        "sensitivity point: 0 when a negative value is found on [0, 20]".into(),
    ];
    Report::new(id, "ostrovskii", points, notes)
}

fn sampler_laws(id: &str, cfg: &RunConfig) -> Report {
    let n = cfg.draws(100_000, 1_000_000);
    let mut points = Vec::new();
    let c = |re: f64, im: f64| Complex64::new(re, im);
    type Law = Box<dyn Fn(&mut vdw_core::samplers::RngStream) -> vdw_core::Result<f64> + Sync>;
    type Case = (String, Law, Vec<(Complex64, Complex64)>);
    let mut cases: Vec<Case> = vec![
        ("exp".into(), Box::new(|r| sample_basic(BasicLaw::Exp, r)), vec![(c(-1.0, 0.0), c(0.5, 0.0))]),
        ("normal".into(), Box::new(|r| sample_basic(BasicLaw::Normal, r)), vec![(c(0.0, 1.0), c((-0.5f64).exp(), 0.0))]),
        ("laplace".into(), Box::new(|r| sample_basic(BasicLaw::Laplace { scale: 1.0 }, r)), vec![(c(0.0, 1.0), c(0.5, 0.0))]),
        (
            "gumbel".into(),
            Box::new(|r| sample_basic(BasicLaw::Gumbel, r)),
            vec![(c(-0.5, 0.0), c(gamma_real(1.5).unwrap_or(f64::NAN), 0.0))],
        ),
    ];
    if let Ok(s) = SeriesSampler::c1(1000) {
        cases.push(("c1".into(), Box::new(move |r| Ok(s.sample(r))), vec![(c(-0.5, 0.0), c(1.0 / 1f64.cosh(), 0.0))]));
    }
    for nu in [-0.5, 0.5, 1.0] {
        let grid: Vec<(Complex64, Complex64)> =
            [1.0, 2.5, 5.0].iter().map(|&s| (c(0.0, s), bessel_f_nu(nu, c(s, 0.0)).unwrap_or(c(f64::NAN, 0.0)))).collect();
        cases.push((format!("symbeta{nu:+}"), Box::new(move |r| sample_sym_beta(nu, r)), grid));
    }
    for (k, (name, law, targets)) in cases.iter().enumerate() {
        let seed = cfg.seed.wrapping_add(k as u64);
        match draw_blocks(n, seed, &**law).and_then(|xs| empirical_cf(&xs, &targets.iter().map(|t| t.0).collect::<Vec<_>>())) {
            Ok(est) => {
                for (e, (s, target)) in est.iter().zip(targets) {
                    let x = if s.re != 0.0 { -s.re } else { s.im };
                    points.push(stat_point(name, x, (e.estimate - target).norm(), e.standard_error, 3.0));
                }
            }
            Err(e) => points.push(error_point(name, f64::NAN, e)),
        }
    }
    Report::new(id, "sampler-laws", points, vec![format!("{n} draws per law; x = s of E exp(-sX), or t of E exp(itX)")])
}

fn lseries_subordinator(id: &str, cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    let mut notes = Vec::new();
    let n = cfg.draws(100_000, 1_000_000);
    let chi = DirichletCharacter::principal(1).expect("modulus 1");
    let sigma = 2.0;
    let t = 1.0;
    let spec = match SubordinatorSpec::from_character(&chi, sigma, 10_000, 0.0) {
        Ok(s) => s,
        Err(e) => return Report::new(id, "lseries-subordinator", vec![error_point("spec", f64::NAN, e)], vec![]),
    };
    notes.push(format!("principal character, sigma = {sigma}, t = {t}, atoms n <= 10000, tail mass {:.2e}", spec.tail_bound));
    let grid = [0.5, 1.0, 2.0];
    let sg: Vec<Complex64> = grid.iter().map(|&s| Complex64::new(-s, 0.0)).collect();
    match draw_blocks(n, cfg.seed, &|r| sample_path(&spec, t, r).map(|p| p.value())).and_then(|xs| empirical_cf(&xs, &sg)) {
        Ok(est) => {
            for (e, s) in est.iter().zip(grid) {
                match lseries_ratio(&chi, sigma, s, t) {
                    Ok(target) => {
                        let mut p = stat_point("E exp(-sX_t)", s, (e.estimate - target).norm(), e.standard_error, 3.0);
                        p.threshold += t * spec.tail_bound;
                        p.pass = p.residual.is_some_and(|r| r <= p.threshold);
                        points.push(p);
                    }
                    Err(err) => points.push(error_point("E exp(-sX_t)", s, err)),
                }
            }
        }
        Err(e) => points.push(error_point("paths", f64::NAN, e)),
    }
    for s in grid {
        let r = spec.laplace_exponent(s).and_then(|phi| Ok((phi + lseries_ratio(&chi, sigma, s, 1.0)?.re.ln()).abs()));
        push_result(&mut points, "bernstein vs log L-ratio", s, r, spec.tail_bound + 1e-12);
    }
    Report::new(id, "lseries-subordinator", points, notes)
}

/// Independent oracle: scan z on a uniform grid for the sign change, then bisect.
pub fn grid_scan_root(f: impl Fn(f64) -> f64, hi: f64, cells: usize) -> Option<f64> {
    let h = hi / cells as f64;
    let mut a = 0.0;
    for k in 1..=cells {
        let b = k as f64 * h;
        if f(b) >= 0.0 {
            let (mut lo, mut up) = (a, b);
            for _ in 0..200 {
                let mid = 0.5 * (lo + up);
                if f(mid) >= 0.0 {
                    up = mid;
                } else {
                    lo = mid;
                }
                if up - lo < 1e-15 * up.max(1.0) {
                    break;
                }
            }
            return Some(0.5 * (lo + up));
        }
        a = b;
    }
    None
}

fn first_passage(id: &str, cfg: &RunConfig) -> Report {
    let mut points = Vec::new();
    let chi = DirichletCharacter::principal(1).expect("modulus 1");
    let spec = match SubordinatorSpec::from_character(&chi, 2.0, 10_000, 0.0) {
        Ok(s) => s,
        Err(e) => return Report::new(id, "first-passage", vec![error_point("spec", f64::NAN, e)], vec![]),
    };
    let c = 1.0;
    let ws = cfg.pick(vec![0.1, 0.5, 1.0, 2.0], linspace(0.1, 5.0, 25));
    for &w in &ws {
        let psi = |z: f64| {
            let phi: f64 = spec.measure().atoms().iter().map(|&(x, m)| m * -(-z * x).exp_m1()).sum();
            z / c - phi - w
        };
        let oracle = grid_scan_root(psi, 20.0 * (w + 1.0), 100_000);
        let r = first_passage_exponent(&spec, c, w).map(|z| oracle.map_or(f64::NAN, |o| (z - o).abs()));
        push_result(&mut points, "root vs grid scan", w, r, cfg.tol(1e-8));
    }
    let n = cfg.draws(20_000, 200_000);
    let level = 1.0;
    match draw_blocks(n, cfg.seed, &|r| sample_first_passage(&spec, c, level, r)) {
        Ok(ys) => {
            let sg: Vec<Complex64> = [0.5, 1.0].iter().map(|&w| Complex64::new(-w, 0.0)).collect();
            match empirical_cf(&ys, &sg) {
                Ok(est) => {
                    for (e, w) in est.iter().zip([0.5, 1.0]) {
                        match first_passage_exponent(&spec, c, w) {
                            Ok(z) => points.push(stat_point(
                                "E exp(-wY_x)",
                                w,
                                (e.estimate.re - (-level * z).exp()).abs(),
                                e.standard_error,
                                3.0,
                            )),
                            Err(err) => points.push(error_point("E exp(-wY_x)", w, err)),
                        }
                    }
                }
                Err(e) => points.push(error_point("E exp(-wY_x)", f64::NAN, e)),
            }
        }
        Err(e) => points.push(error_point("first passage draws", f64::NAN, e)),
    }
    Report::new(id, "first-passage", points, vec![format!("Z_t = t/c - X_t with c = {c}, level x = {level}")])
}

fn couple(id: &str, cfg: &RunConfig) -> Report {
    let name = id.trim_start_matches("couple:");
    let rec = match couple_record(name) {
        Some(Ok(r)) => r,
        Some(Err(e)) => return Report::new(id, "couple", vec![error_point("record", f64::NAN, e)], vec![]),
        None => return Report::new(id, "couple", vec![], vec![format!("unknown couple {name}")]),
    };
    let tol = cfg.tol(1e-10);
    let mut parts = Vec::new();
    if van_dantzig_applies(&rec) {
        let grid = symmetric_grid(rec.window, cfg.pick(61, 241));
        parts.push(Report::from_couple(id, &verify_van_dantzig(&rec, &grid, tol)));
    }
    parts.push(Report::from_couple(id, &verify_wald(&rec, &rec.wald_grid, tol, WaldMode::Analytic)));
    let mc = cfg.tier == Tier::Full || QUICK_MONTE_CARLO.contains(&name);
    if has_sampler(&rec) && mc {
        let draws = cfg.draws(100_000, 1_000_000);
        let honest = verify_wald(&rec, &rec.wald_grid, tol, WaldMode::MonteCarlo { draws, seed: cfg.seed, h_scale: 1.0 });
        parts.push(Report::from_couple(id, &honest));
        if rec.h_sampler.is_some() {
            let skewed = verify_wald(&rec, &rec.wald_grid, tol, WaldMode::MonteCarlo { draws, seed: cfg.seed, h_scale: 1.1 });
            let worst = skewed.points.iter().filter(|p| p.label == "h-side").map(|p| p.residual / p.threshold).fold(0.0f64, f64::max);
            let note = format!("H scaled by 1.1: largest residual/threshold on the H side {worst:.2}");
            let detected = if skewed.pass { 1.0 } else { 0.0 };
            parts.push(Report::new(id, "sensitivity", vec![point("h*1.1 detected", 1.1, detected, 0.5)], vec![note]));
        }
    }
    let mut r = Report::merge(id, parts);
    r.notes.insert(0, rec.description.clone());
    r
}
