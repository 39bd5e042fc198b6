//! Seeded random-variate generation: basic laws, truncated series with tail
//! compensation, Brownian subordination and rejection sampling of the ξ law.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Exp1, Gamma, StandardNormal};

use crate::densities::polya_density;
use crate::hadamard::{bessel_zeros, rayleigh_sum};
use crate::prelude::*;
use crate::specfun::zeta::hurwitz_zeta_real;

/// ChaCha8 keyed by a seed, with the stream id selecting an independent keystream.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// A fresh stream with the same seed and another id.
    pub fn split(&self, stream_id: u64) -> Self {
        RngStream::new(self.seed, stream_id)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasicLaw {
    Exp,
    Gamma {
        shape: f64,
    },
    /// density e^{−|x|/b}/(2b)
    Laplace {
        scale: f64,
    },
    /// cdf exp(−e^{−x}), so E e^{−sX} = Γ(1+s)
    Gumbel,
    /// uniform on (−a, a)
    Uniform {
        a: f64,
    },
    Normal,
}

impl BasicLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            BasicLaw::Gamma { shape } if !(shape > 0.0 && shape.is_finite()) => {
                Err(Error::Parameter(format!("Gamma shape must be positive, got {shape}")))
            }
            BasicLaw::Laplace { scale } if !(scale > 0.0 && scale.is_finite()) => {
                Err(Error::Parameter(format!("Laplace scale must be positive, got {scale}")))
            }
            BasicLaw::Uniform { a } if !(a > 0.0 && a.is_finite()) => {
                Err(Error::Parameter(format!("uniform half-width must be positive, got {a}")))
            }
            _ => Ok(()),
        }
    }
}

fn exp1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    Exp1.sample(rng)
}

pub fn sample_basic(law: BasicLaw, rng: &mut RngStream) -> Result<f64> {
    law.validate()?;
    Ok(match law {
        BasicLaw::Exp => exp1(rng),
        BasicLaw::Gamma { shape } => Gamma::new(shape, 1.0).map_err(|e| Error::Parameter(format!("{e}")))?.sample(rng),
        BasicLaw::Laplace { scale } => laplace(scale, rng),
        BasicLaw::Gumbel => -exp1(rng).ln(),
        BasicLaw::Uniform { a } => a * (2.0 * rng.random::<f64>() - 1.0),
        BasicLaw::Normal => StandardNormal.sample(rng),
    })
}

fn laplace<R: Rng + ?Sized>(scale: f64, rng: &mut R) -> f64 {
    let e = exp1(rng);
    if rng.random::<bool>() {
        scale * e
    } else {
        -scale * e
    }
}

/// H_a = 1/(2a²G) with G ∼ Gamma(3/2, 1): density e^{−1/(2a²x)}/(a³√(2π) x^{5/2}), mean 1/a².
pub fn sample_invgamma32(a: f64, rng: &mut RngStream) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Parameter(format!("a must be positive, got {a}")));
    }
    Ok(invgamma32(a, rng))
}

fn invgamma32<R: Rng + ?Sized>(a: f64, rng: &mut R) -> f64 {
    let g: f64 = Gamma::new(1.5, 1.0).expect("shape 3/2").sample(rng);
    1.0 / (2.0 * a * a * g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Innovation {
    Exp,
    Gamma {
        shape: f64,
    },
    /// density e^{−|x|/b}/(2b); b = 1 gives CF 1/(1+s²)
    Laplace {
        scale: f64,
    },
    InvGamma32 {
        a: f64,
    },
}

impl Innovation {
    pub fn mean(&self) -> f64 {
        match *self {
            Innovation::Exp => 1.0,
            Innovation::Gamma { shape } => shape,
            Innovation::Laplace { .. } => 0.0,
            Innovation::InvGamma32 { a } => 1.0 / (a * a),
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            Innovation::Exp => 1.0,
            Innovation::Gamma { shape } => shape,
            Innovation::Laplace { scale } => 2.0 * scale * scale,
            Innovation::InvGamma32 { .. } => f64::INFINITY,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        !matches!(self, Innovation::Laplace { .. })
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Innovation::Exp => true,
            Innovation::Gamma { shape } => shape > 0.0 && shape.is_finite(),
            Innovation::Laplace { scale } => scale > 0.0 && scale.is_finite(),
            Innovation::InvGamma32 { a } => a > 0.0 && a.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!("invalid innovation {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum InnovationDist {
    Exp,
    Gamma(Gamma<f64>),
    Laplace(f64),
    InvGamma(f64, Gamma<f64>),
}

impl InnovationDist {
    fn new(i: Innovation) -> Self {
        match i {
            Innovation::Exp => InnovationDist::Exp,
            Innovation::Gamma { shape: 1.0 } => InnovationDist::Exp,
            Innovation::Gamma { shape } => InnovationDist::Gamma(Gamma::new(shape, 1.0).expect("validated")),
            Innovation::Laplace { scale } => InnovationDist::Laplace(scale),
            Innovation::InvGamma32 { a } => InnovationDist::InvGamma(1.0 / (2.0 * a * a), Gamma::new(1.5, 1.0).expect("shape 3/2")),
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            InnovationDist::Exp => exp1(rng),
            InnovationDist::Gamma(g) => g.sample(rng),
            InnovationDist::Laplace(b) => laplace(*b, rng),
            InnovationDist::InvGamma(beta, g) => beta / g.sample(rng),
        }
    }
}

/// Series weights w_n, n ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub enum Weights {
    /// w_n = coef/(n + offset)^power
    Arithmetic { coef: f64, offset: f64, power: f64 },
    /// listed weights, with Σ of the weights beyond the list
    Explicit { values: Vec<f64>, tail_sum: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compensation {
    None,
    AddMean,
}

/// Σ_{n≤N} w_n I_n, optionally plus the mean of the neglected tail.
#[derive(Debug, Clone)]
pub struct SeriesSampler {
    weights: Vec<f64>,
    innovation: Innovation,
    truncation: usize,
    tail_mean: f64,
    tail_variance: f64,
    compensation: Compensation,
    dist: InnovationDist,
}

impl SeriesSampler {
    pub fn new(weights: Weights, innovation: Innovation, truncation: usize, compensation: Compensation) -> Result<Self> {
        innovation.validate()?;
        let centred = innovation.mean() == 0.0;
        let (w, tail_w, tail_w2) = match weights {
            Weights::Arithmetic { coef, offset, power } => {
                if !(coef > 0.0) || !(1.0 + offset > 0.0) {
                    return Err(Error::Parameter("need coef > 0 and 1 + offset > 0".into()));
                }
                if !(power > 1.0 || (centred && power > 0.5)) {
                    return Err(Error::Parameter(format!("Σ w_n·E[I] diverges for power {power}")));
                }
                let w: Vec<f64> = (1..=truncation).map(|n| coef / (n as f64 + offset).powf(power)).collect();
                let start = truncation as f64 + 1.0 + offset;
                let tail = if power > 1.0 { coef * hurwitz_zeta_real(power, start)? } else { f64::INFINITY };
                let tail2 = coef * coef * hurwitz_zeta_real(2.0 * power, start)?;
                (w, tail, tail2)
            }
            Weights::Explicit { values, tail_sum } => {
                if values.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
                    return Err(Error::Parameter("weights must be positive and finite".into()));
                }
                if !(tail_sum >= 0.0) {
                    return Err(Error::Parameter("tail sum must be nonnegative".into()));
                }
                let n = truncation.min(values.len());
                let dropped: f64 = values[n..].iter().sum();
                // the square tail is bounded by (max tail weight)·(tail sum)
                let wmax = values.get(n).copied().unwrap_or_else(|| values.last().copied().unwrap_or(0.0));
                let t = tail_sum + dropped;
                (values[..n].to_vec(), t, wmax * t)
            }
        };
        let truncation = w.len();
        let tail_mean = if centred { 0.0 } else { tail_w * innovation.mean() };
        Ok(SeriesSampler {
            weights: w,
            innovation,
            truncation,
            tail_mean,
            tail_variance: tail_w2 * innovation.variance(),
            compensation,
            dist: InnovationDist::new(innovation),
        })
    }

    /// C₁ = Σ 2E_n/(π²(n−½)²), E e^{−½s²C₁} = 1/cosh s.
    pub fn c1(truncation: usize) -> Result<Self> {
        Self::new(
            Weights::Arithmetic { coef: 2.0 / (PI * PI), offset: -0.5, power: 2.0 },
            Innovation::Exp,
            truncation,
            Compensation::AddMean,
        )
    }

    /// C₂ = C₁ + C₁′.
    pub fn c2(truncation: usize) -> Result<Self> {
        Self::new(
            Weights::Arithmetic { coef: 2.0 / (PI * PI), offset: -0.5, power: 2.0 },
            Innovation::Gamma { shape: 2.0 },
            truncation,
            Compensation::AddMean,
        )
    }

    /// S_a = Σ 2a²E_n/(π²n²), E e^{−½s²S_a} = as/sinh(as).
    pub fn s_a(a: f64, truncation: usize) -> Result<Self> {
        Self::new(
            Weights::Arithmetic { coef: 2.0 * a * a / (PI * PI), offset: 0.0, power: 2.0 },
            Innovation::Exp,
            truncation,
            Compensation::AddMean,
        )
    }

    /// W_a = S_a + S′_a.
    pub fn w_a(a: f64, truncation: usize) -> Result<Self> {
        Self::new(
            Weights::Arithmetic { coef: 2.0 * a * a / (PI * PI), offset: 0.0, power: 2.0 },
            Innovation::Gamma { shape: 2.0 },
            truncation,
            Compensation::AddMean,
        )
    }

    /// H^Γ_a = Σ_{k≥0} (a+k)^{−2} H_{1,k}.
    pub fn gamma_h(a: f64, truncation: usize) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::Parameter(format!("a must be positive, got {a}")));
        }
        Self::new(
            Weights::Arithmetic { coef: 1.0, offset: a - 1.0, power: 2.0 },
            Innovation::InvGamma32 { a: 1.0 },
            truncation,
            Compensation::AddMean,
        )
    }

    /// Σ 2E_n/j²_{ν,n}, E e^{−½s²H} = 1/f_ν(is).
    pub fn bessel_h(nu: f64, truncation: usize) -> Result<Self> {
        let j = bessel_zeros(nu, truncation)?;
        let w: Vec<f64> = j.iter().map(|z| 2.0 / (z * z)).collect();
        let tail = (2.0 * rayleigh_sum(nu, 2) - w.iter().sum::<f64>()).max(0.0);
        Self::new(Weights::Explicit { values: w, tail_sum: tail }, Innovation::Exp, truncation, Compensation::AddMean)
    }

    /// H_ν = Σ L_n/j_{ν,n} with L_n of density ½e^{−|x|}; E e^{isH_ν} = Π(1+s²/j²)^{−1}.
    pub fn bessel_laplace(nu: f64, truncation: usize) -> Result<Self> {
        let j = bessel_zeros(nu, truncation)?;
        let w: Vec<f64> = j.iter().map(|z| 1.0 / z).collect();
        Self::new(Weights::Explicit { values: w, tail_sum: 0.0 }, Innovation::Laplace { scale: 1.0 }, truncation, Compensation::None)
    }

    pub fn with_compensation(mut self, compensation: Compensation) -> Self {
        self.compensation = compensation;
        self
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn innovation(&self) -> Innovation {
        self.innovation
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn compensation(&self) -> Compensation {
        self.compensation
    }

    /// Σ_{n>N} w_n·E[I].
    pub fn tail_mean(&self) -> f64 {
        self.tail_mean
    }

    /// Σ_{n>N} w_n²·Var[I], the variance neglected by truncation (an upper bound for listed weights).
    pub fn tail_variance(&self) -> f64 {
        self.tail_variance
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut acc = 0.0;
        for w in &self.weights {
            acc += w * self.dist.draw(rng);
        }
        match self.compensation {
            Compensation::AddMean => acc + self.tail_mean,
            Compensation::None => acc,
        }
    }

    pub fn sample_n(&self, n: usize, rng: &mut RngStream) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }
}

pub fn sample_series(spec: &SeriesSampler, rng: &mut RngStream) -> f64 {
    spec.sample(rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subordination {
    /// Ĥ = B_H = √H·Z
    SqrtH,
    /// Ĥ = √(2H)·Z, E e^{isĤ} = E e^{−s²H}
    Sqrt2H,
}

pub fn brownian_subordinate<F: FnMut(&mut RngStream) -> f64>(mut h: F, convention: Subordination, rng: &mut RngStream) -> Result<f64> {
    let v = h(rng);
    if !(v >= 0.0) {
        return Err(Error::Domain(format!("subordinator draw must be nonnegative, got {v}")));
    }
    let z: f64 = StandardNormal.sample(rng);
    Ok(match convention {
        Subordination::SqrtH => v.sqrt() * z,
        Subordination::Sqrt2H => (2.0 * v).sqrt() * z,
    })
}

/// X = 2B − 1 with B ∼ Beta(ν+½, ν+½); ν = −½ is the ±1 coin. CF f_ν(s).
pub fn sample_sym_beta(nu: f64, rng: &mut RngStream) -> Result<f64> {
    if !(nu >= -0.5) {
        return Err(Error::Parameter(format!("ν must be at least −1/2, got {nu}")));
    }
    if nu == -0.5 {
        return Ok(if rng.random::<bool>() { 1.0 } else { -1.0 });
    }
    let b = Beta::new(nu + 0.5, nu + 0.5).map_err(|e| Error::Parameter(format!("{e}")))?;
    Ok(2.0 * b.sample(rng) - 1.0)
}

/// X = ½ log G with G ∼ Gamma(½); E e^{isX} = Γ((1+is)/2)/√π.
pub fn sample_hinds(rng: &mut RngStream) -> f64 {
    let g: f64 = Gamma::new(0.5, 1.0).expect("shape 1/2").sample(rng);
    0.5 * g.ln()
}

/// Rejection sampler for the ξ density p.
///
/// The envelope is piecewise constant on [0, 4] in 800 cells; each cell
/// height is the density at the cell's inner edge times 1.02, which dominates
/// because p decreases in |x|. Mass beyond |x| = 4 is below 1e−300.
#[derive(Debug, Clone)]
pub struct PolyaSampler {
    heights: Vec<f64>,
    cumulative: Vec<f64>,
    width: f64,
    tol: f64,
}

impl PolyaSampler {
    pub const CELLS: usize = 800;
    pub const RANGE: f64 = 4.0;

    pub fn new(tol: f64) -> Result<Self> {
        let width = Self::RANGE / Self::CELLS as f64;
        let mut heights = Vec::with_capacity(Self::CELLS);
        let mut cumulative = Vec::with_capacity(Self::CELLS);
        let mut total = 0.0;
        for k in 0..Self::CELLS {
            let h = 1.02 * polya_density(k as f64 * width, tol)?;
            total += h * width;
            heights.push(h);
            cumulative.push(total);
        }
        Ok(PolyaSampler { heights, cumulative, width, tol })
    }

    /// Envelope mass on [0, 4].
    pub fn envelope_mass(&self) -> f64 {
        *self.cumulative.last().unwrap_or(&0.0)
    }

    /// ½ / envelope mass.
    pub fn acceptance_probability(&self) -> f64 {
        0.5 / self.envelope_mass()
    }

    /// One draw and the number of proposals it took.
    pub fn sample_counted(&self, rng: &mut RngStream) -> Result<(f64, u64)> {
        let total = self.envelope_mass();
        let mut tries = 0u64;
        loop {
            tries += 1;
            let u = rng.random::<f64>() * total;
            let k = self.cumulative.partition_point(|&c| c <= u).min(Self::CELLS - 1);
            let x = (k as f64 + rng.random::<f64>()) * self.width;
            let p = polya_density(x, self.tol)?;
            let ratio = p / self.heights[k];
            if ratio > 1.0 {
                return Err(Error::EnvelopeViolation { x, ratio });
            }
            if rng.random::<f64>() < ratio {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                return Ok((sign * x, tries));
            }
        }
    }

    pub fn sample(&self, rng: &mut RngStream) -> Result<f64> {
        self.sample_counted(rng).map(|r| r.0)
    }
}

pub fn sample_polya_xi(sampler: &PolyaSampler, rng: &mut RngStream) -> Result<f64> {
    sampler.sample(rng)
}

/// A Monte Carlo estimate of E e^{sX}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfEstimate {
    pub s: Complex64,
    pub estimate: Complex64,
    pub standard_error: f64,
    /// SE/|estimate| > 0.5, or a single draw carries over a tenth of the sum.
    pub unstable: bool,
}

impl CfEstimate {
    /// |estimate − target| ≤ k·SE.
    pub fn within(&self, target: Complex64, k: f64) -> bool {
        (self.estimate - target).norm() <= k * self.standard_error
    }
}

/// Sample mean of e^{sX_i} with the jackknife standard error s/√n.
pub fn empirical_cf(samples: &[f64], s_grid: &[Complex64]) -> Result<Vec<CfEstimate>> {
    if samples.is_empty() {
        return Err(Error::Parameter("no samples".into()));
    }
    let n = samples.len() as f64;
    s_grid
        .iter()
        .map(|&s| {
            let mut mean = cr(0.0);
            let mut m2 = 0.0;
            let mut biggest = 0.0f64;
            let mut abs_sum = 0.0;
            for (i, &x) in samples.iter().enumerate() {
                let z = (s * x).exp();
                let d = z - mean;
                mean += d / (i + 1) as f64;
                m2 += (d.conj() * (z - mean)).re;
                let a = z.norm();
                abs_sum += a;
                biggest = biggest.max(a);
            }
            if !mean.re.is_finite() || !mean.im.is_finite() {
                return Err(Error::Domain(format!("e^(sX) overflowed at s = {s}")));
            }
            let se = if samples.len() > 1 { (m2.max(0.0) / ((n - 1.0) * n)).sqrt() } else { f64::INFINITY };
            let heavy = s.re != 0.0 && biggest > 0.1 * abs_sum && samples.len() >= 20;
            Ok(CfEstimate { s, estimate: mean, standard_error: se, unstable: se > 0.5 * mean.norm() || heavy })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma_real;

    #[test]
    fn streams_are_reproducible() {
        let mut a = RngStream::new(7, 3);
        let mut b = RngStream::new(7, 3);
        let mut c = RngStream::new(7, 4);
        let va: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let vb: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        let vc: Vec<u64> = (0..8).map(|_| c.next_u64()).collect();
        assert_eq!(va, vb);
        assert_ne!(va, vc);
        assert_eq!(a.split(4).next_u64(), vc[0]);
    }

    #[test]
    fn basic_laws() {
        let mut rng = RngStream::new(1, 0);
        let xs: Vec<f64> = (0..200_000).map(|_| sample_basic(BasicLaw::Gumbel, &mut rng).unwrap()).collect();
        let e = empirical_cf(&xs, &[cr(-0.5)]).unwrap()[0];
        assert!(e.within(cr(gamma_real(1.5).unwrap()), 3.0), "{e:?}");
        let xs: Vec<f64> = (0..200_000).map(|_| sample_basic(BasicLaw::Uniform { a: 1.0 }, &mut rng).unwrap()).collect();
        let e = empirical_cf(&xs, &[cr(1.0)]).unwrap()[0];
        assert!(e.within(cr(1.0f64.sinh()), 3.0));
        assert!(sample_basic(BasicLaw::Gamma { shape: -1.0 }, &mut rng).is_err());
        assert!(sample_basic(BasicLaw::Laplace { scale: 0.0 }, &mut rng).is_err());
    }

    #[test]
    fn empirical_cf_edges() {
        let e = empirical_cf(&[2.0; 10], &[c(0.3, 0.7)]).unwrap()[0];
        assert_eq!(e.standard_error, 0.0);
        assert!((e.estimate - (c(0.3, 0.7) * 2.0).exp()).norm() < 1e-15);
        assert!(empirical_cf(&[], &[cr(1.0)]).is_err());
    }

    #[test]
    fn series_sampler_basics() {
        let s = SeriesSampler::c1(100).unwrap();
        // Σ_{n>100} 2/(π²(n−½)²) ≈ 2/(π²·100)
        assert!((s.tail_mean() - 2.0 / (PI * PI) * hurwitz_zeta_real(2.0, 100.5).unwrap()).abs() < 1e-15);
        let z =
            SeriesSampler::new(Weights::Explicit { values: vec![], tail_sum: 0.75 }, Innovation::Exp, 0, Compensation::AddMean).unwrap();
        let mut rng = RngStream::new(2, 0);
        assert_eq!(z.sample(&mut rng), 0.75);
        assert!(SeriesSampler::new(Weights::Arithmetic { coef: 1.0, offset: 0.0, power: 1.0 }, Innovation::Exp, 10, Compensation::None)
            .is_err());
        // full C₁ mean is 1
        let total: f64 = s.weights().iter().sum::<f64>() + s.tail_mean();
        assert!((total - 1.0).abs() < 1e-13);
    }

    #[test]
    fn invgamma_scaling() {
        let mut rng = RngStream::new(3, 0);
        let xs: Vec<f64> = (0..200_000).map(|_| sample_invgamma32(1.0, &mut rng).unwrap()).collect();
        let e = empirical_cf(&xs, &[cr(-0.5)]).unwrap()[0];
        assert!(e.within(cr(2.0 / 1.0f64.exp()), 3.0), "{e:?}");
        assert!(sample_invgamma32(0.0, &mut rng).is_err());
    }

    #[test]
    fn polya_envelope() {
        let s = PolyaSampler::new(1e-16).unwrap();
        let acc = s.acceptance_probability();
        assert!(acc > 0.9 && acc < 1.0, "{acc}");
        let mut rng = RngStream::new(4, 0);
        for _ in 0..10_000 {
            s.sample(&mut rng).unwrap();
        }
    }
}
