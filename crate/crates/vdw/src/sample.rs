//! Named samplers and blocked parallel drawing.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use vdw_core::lseries_process::{sample_value, SubordinatorSpec};
use vdw_core::samplers::{
    empirical_cf, sample_basic, sample_hinds, sample_invgamma32, sample_sym_beta, BasicLaw, PolyaSampler, RngStream, SeriesSampler,
};
use vdw_core::specfun::DirichletCharacter;

use crate::formats::{SampleSummary, TransformEstimate, SCHEMA_VERSION};
use crate::CliError;

/// Draws per block; block `b` uses stream `b`.
pub const BLOCK: usize = 10_000;

pub type DrawFn = Arc<dyn Fn(&mut RngStream) -> vdw_core::Result<f64> + Send + Sync>;

/// `draws` values in blocks of [`BLOCK`], independent of the thread count.
pub fn draw_blocks(draws: usize, seed: u64, f: &(dyn Fn(&mut RngStream) -> vdw_core::Result<f64> + Sync)) -> vdw_core::Result<Vec<f64>> {
    let blocks = draws.div_ceil(BLOCK);
    let parts: Vec<vdw_core::Result<Vec<f64>>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = RngStream::new(seed, b as u64);
            let n = BLOCK.min(draws - b * BLOCK);
            (0..n).map(|_| f(&mut rng)).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(draws);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SampleParams {
    /// Series terms, or atoms of μ_L for the subordinator.
    pub truncation: Option<usize>,
    pub a: f64,
    pub nu: f64,
    pub chi: DirichletCharacter,
    pub sigma: f64,
    pub t: f64,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams { truncation: None, a: 1.0, nu: 0.5, chi: DirichletCharacter::principal(1).expect("modulus 1"), sigma: 2.0, t: 1.0 }
    }
}

pub const SAMPLER_IDS: &[(&str, &str)] = &[
    ("c1", "C1 = sum 2E_n/(pi^2 (n-1/2)^2)"),
    ("c2", "C2, the sum of two independent C1"),
    ("s-a", "S_a = sum 2a^2 E_n/(pi^2 n^2); alias s1 for a = 1"),
    ("w-a", "W_a = S_a + S_a'; alias w"),
    ("h-gamma", "H^Gamma_a = sum H_{1,k}/(a+k)^2"),
    ("h-a", "H_a = 1/(2a^2 G), G ~ Gamma(3/2)"),
    ("bessel-h", "sum 2E_n/j_{nu,n}^2"),
    ("bessel-laplace", "sum L_n/j_{nu,n}, L_n standard Laplace"),
    ("symbeta", "2B - 1, B ~ Beta(nu+1/2, nu+1/2)"),
    ("hinds", "(1/2) log G, G ~ Gamma(1/2)"),
    ("gumbel", "-log E"),
    ("laplace", "Laplace with scale a"),
    ("exp", "standard exponential"),
    ("normal", "standard normal"),
    ("uniform", "uniform on (-a, a)"),
    ("polya-xi", "the xi density, by rejection"),
    ("subordinator", "X_t of the L-series subordinator for --char, --sigma, --t"),
];

fn series(s: SeriesSampler) -> DrawFn {
    Arc::new(move |rng| Ok(s.sample(rng)))
}

fn basic(law: BasicLaw) -> vdw_core::Result<DrawFn> {
    law.validate()?;
    Ok(Arc::new(move |rng| sample_basic(law, rng)))
}

/// Resolves a sampler id (case-insensitive) to a draw function.
pub fn sampler(id: &str, p: &SampleParams) -> Result<DrawFn, CliError> {
    let n = p.truncation.unwrap_or(1000);
    let a = p.a;
    let nu = p.nu;
    Ok(match id.to_ascii_lowercase().as_str() {
        "c1" => series(SeriesSampler::c1(n)?),
        "c2" => series(SeriesSampler::c2(n)?),
        "s1" => series(SeriesSampler::s_a(1.0, n)?),
        "s-a" | "s" => series(SeriesSampler::s_a(a, n)?),
        "w" | "w-a" => series(SeriesSampler::w_a(a, n)?),
        "w1" => series(SeriesSampler::w_a(1.0, n)?),
        "h-gamma" => series(SeriesSampler::gamma_h(a, n)?),
        "h-a" => {
            sample_invgamma32(a, &mut RngStream::new(0, 0))?;
            Arc::new(move |rng| sample_invgamma32(a, rng))
        }
        "bessel-h" => series(SeriesSampler::bessel_h(nu, n)?),
        "bessel-laplace" => series(SeriesSampler::bessel_laplace(nu, n)?),
        "symbeta" => {
            sample_sym_beta(nu, &mut RngStream::new(0, 0))?;
            Arc::new(move |rng| sample_sym_beta(nu, rng))
        }
        "hinds" => Arc::new(|rng| Ok(sample_hinds(rng))),
        "gumbel" => basic(BasicLaw::Gumbel)?,
        "laplace" => basic(BasicLaw::Laplace { scale: a })?,
        "exp" => basic(BasicLaw::Exp)?,
        "normal" => basic(BasicLaw::Normal)?,
        "uniform" => basic(BasicLaw::Uniform { a })?,
        "polya-xi" => {
            let s = PolyaSampler::new(1e-17)?;
            Arc::new(move |rng| s.sample(rng))
        }
        "subordinator" => {
            let n_max = p.truncation.unwrap_or(10_000);
            let spec = SubordinatorSpec::from_character(&p.chi, p.sigma, n_max, 0.0)?;
            let t = p.t;
            if !(t > 0.0 && t.is_finite()) {
                return Err(vdw_core::Error::Parameter(format!("t must be positive, got {t}")).into());
            }
            Arc::new(move |rng| sample_value(&spec, t, rng))
        }
        _ => return Err(CliError::UnknownId(id.to_string())),
    })
}

/// Mean, variance and E e^{−sX}, E e^{isX} at each `s`.
pub fn summarize(sampler: &str, seed: u64, xs: &[f64], cf_at: &[f64]) -> Result<SampleSummary, CliError> {
    let n = xs.len();
    if n < 2 {
        return Err(CliError::Usage("need at least two draws".into()));
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let variance = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let mut notes = Vec::new();
    let mut transforms = Vec::new();
    for &s in cf_at {
        let est = empirical_cf(xs, &[Complex64::new(-s, 0.0), Complex64::new(0.0, s)])?;
        let (lt, cf) = (est[0], est[1]);
        let lt_ok = lt.estimate.re.is_finite() && !lt.unstable;
        if !lt_ok {
            notes.push(format!("E e^(-sX) at s = {s} is unstable or infinite"));
        }
        transforms.push(TransformEstimate {
            s,
            laplace: lt.estimate.re.is_finite().then_some(lt.estimate.re),
            laplace_se: lt.standard_error.is_finite().then_some(lt.standard_error),
            cf_re: cf.estimate.re,
            cf_im: cf.estimate.im,
            cf_se: cf.standard_error,
            unstable: lt.unstable || cf.unstable,
        });
    }
    Ok(SampleSummary {
        schema_version: SCHEMA_VERSION,
        sampler: sampler.to_string(),
        draws: n,
        seed,
        mean,
        mean_se: (variance / n as f64).sqrt(),
        variance,
        transforms,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_are_deterministic() {
        let f = sampler("exp", &SampleParams::default()).unwrap();
        let a = draw_blocks(25_000, 3, &*f).unwrap();
        let b = draw_blocks(25_000, 3, &*f).unwrap();
        assert_eq!(a.len(), 25_000);
        assert_eq!(a, b);
        assert_ne!(a[..10], a[BLOCK..BLOCK + 10]);
        assert!(sampler("nope", &SampleParams::default()).is_err());
    }

    #[test]
    fn every_id_resolves() {
        let p = SampleParams { truncation: Some(50), ..SampleParams::default() };
        for (id, _) in SAMPLER_IDS {
            let f = sampler(id, &p).unwrap();
            assert!(f(&mut RngStream::new(1, 0)).unwrap().is_finite(), "{id}");
        }
        assert!(matches!(sampler("symbeta", &SampleParams { nu: -1.0, ..p }), Err(CliError::Core(_))));
    }
}
