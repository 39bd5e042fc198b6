//! Compound-Poisson subordinators built from μ_L, their Bernstein exponents
//! and the first-passage exponent of t/c − X_t.

use rand::Rng;
use rand_distr::{Distribution, Exp1, Poisson};

use crate::numerics::{find_root, NeumaierSum, Tolerance};
use crate::prelude::*;
use crate::samplers::RngStream;
use crate::specfun::dirichlet::{dirichlet_l, mu_l_atoms, DirichletCharacter, LMeasure};
use crate::thorin::MuMeasure;

/// X_t = δt + Σ_{j≤N_t} V_j with N_t ∼ Poisson(c_L t) and V_j ∼ μ_L/c_L.
#[derive(Debug, Clone, PartialEq)]
pub struct SubordinatorSpec {
    pub drift: f64,
    measure: MuMeasure,
    c_l: f64,
    cumulative: Vec<f64>,
    /// Free-form provenance, e.g. "principal mod 1, sigma 2".
    pub label: String,
    /// Mass omitted by truncating μ_L.
    pub tail_bound: f64,
}

impl SubordinatorSpec {
    pub fn new(drift: f64, measure: MuMeasure, label: String, tail_bound: f64) -> Result<Self> {
        if !(drift >= 0.0 && drift.is_finite()) {
            return Err(Error::Parameter(format!("drift must be nonnegative, got {drift}")));
        }
        if measure.density().is_some() || measure.prime_tower().is_some() {
            return Err(Error::UnsupportedMeasure("subordinator simulation needs a purely atomic measure"));
        }
        let mut acc = NeumaierSum::new();
        let cumulative = measure
            .atoms()
            .iter()
            .map(|a| {
                acc.add(a.1);
                acc.value()
            })
            .collect();
        let c_l = acc.value();
        Ok(SubordinatorSpec { drift, measure, c_l, cumulative, label, tail_bound })
    }

    /// μ_L for χ at σ with atoms at log n, n ≤ n_max; complex or negative masses are rejected.
    pub fn from_character(chi: &DirichletCharacter, sigma: f64, n_max: usize, drift: f64) -> Result<Self> {
        let l = mu_l_atoms(chi, sigma, n_max)?;
        let label = format!("character mod {}, sigma {sigma}, n_max {n_max}", chi.modulus());
        Self::new(drift, l.to_real()?, label, l.tail_bound())
    }

    pub fn measure(&self) -> &MuMeasure {
        &self.measure
    }

    /// Total jump mass, also the Poisson rate.
    pub fn c_l(&self) -> f64 {
        self.c_l
    }

    /// Σ x·mass, the mean jump rate.
    pub fn mean_jump_rate(&self) -> f64 {
        crate::numerics::compensated_sum(self.measure.atoms().iter().map(|a| a.0 * a.1))
    }

    /// δs + φ_X(s).
    pub fn laplace_exponent(&self, s: f64) -> Result<f64> {
        Ok(self.drift * s + bernstein_phi(&self.measure, s)?)
    }

    fn jump<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u = rng.random::<f64>() * self.c_l;
        let k = self.cumulative.partition_point(|&c| c <= u).min(self.cumulative.len() - 1);
        self.measure.atoms()[k].0
    }
}

/// φ(s) = ∫(1 − e^{−sx}) μ(dx).
pub fn bernstein_phi(measure: &MuMeasure, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::Domain(format!("s must be nonnegative, got {s}")));
    }
    if measure.prime_tower().is_some() {
        return Err(Error::UnsupportedMeasure("the prime tower has infinite mass"));
    }
    let mut acc = NeumaierSum::new();
    for &(x, m) in measure.atoms() {
        acc.add(-m * (-s * x).exp_m1());
    }
    if let Some(d) = measure.density() {
        acc.add(d.integrate_against(|x: f64| -(-s * x).exp_m1(), &Tolerance::abs(1e-12))?);
    }
    Ok(acc.value())
}

/// φ for complex masses; analytic use only.
pub fn bernstein_phi_l(measure: &LMeasure, s: f64) -> Result<Complex64> {
    if !(s >= 0.0) {
        return Err(Error::Domain(format!("s must be nonnegative, got {s}")));
    }
    let mut acc = crate::numerics::ComplexSum::new();
    for &(x, m) in &measure.atoms {
        acc.add(m * -(-s * x).exp_m1());
    }
    Ok(acc.value())
}

/// (L(σ+s)/L(σ))^t = E e^{−sX_t} for the untruncated μ_L.
pub fn lseries_ratio(chi: &DirichletCharacter, sigma: f64, s: f64, t: f64) -> Result<Complex64> {
    let r = dirichlet_l(chi, cr(sigma + s))? / dirichlet_l(chi, cr(sigma))?;
    Ok((r.ln() * t).exp())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathSample {
    pub jump_times: Vec<f64>,
    pub jump_sizes: Vec<f64>,
    pub drift: f64,
    pub horizon: f64,
}

impl PathSample {
    pub fn value(&self) -> f64 {
        self.value_at(self.horizon)
    }

    /// X_u for 0 ≤ u ≤ horizon.
    pub fn value_at(&self, u: f64) -> f64 {
        let k = self.jump_times.partition_point(|&t| t <= u);
        self.drift * u + self.jump_sizes[..k].iter().sum::<f64>()
    }
}

pub fn sample_path(spec: &SubordinatorSpec, t: f64, rng: &mut RngStream) -> Result<PathSample> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Parameter(format!("horizon must be positive, got {t}")));
    }
    let rate = spec.c_l * t;
    let n = if rate > 0.0 { Poisson::new(rate).map_err(|e| Error::Parameter(format!("{e}")))?.sample(rng) as usize } else { 0 };
    let mut jump_times: Vec<f64> = (0..n).map(|_| t * rng.random::<f64>()).collect();
    jump_times.sort_by(f64::total_cmp);
    let jump_sizes = (0..n).map(|_| spec.jump(rng)).collect();
    Ok(PathSample { jump_times, jump_sizes, drift: spec.drift, horizon: t })
}

/// X_t alone, without storing the path.
pub fn sample_value(spec: &SubordinatorSpec, t: f64, rng: &mut RngStream) -> Result<f64> {
    sample_path(spec, t, rng).map(|p| p.value())
}

fn check_drift(spec: &SubordinatorSpec, c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Parameter(format!("c must be positive, got {c}")));
    }
    let slope = 1.0 / c - spec.drift;
    let mean = spec.mean_jump_rate();
    if !(slope > mean) {
        return Err(Error::NoRoot(format!("need 1/c − δ = {slope} to exceed the mean jump rate {mean}")));
    }
    Ok(slope)
}

/// φ_Y(w): the root z of z/c − δz − φ_X(z) = w.
pub fn first_passage_exponent(spec: &SubordinatorSpec, c: f64, w: f64) -> Result<f64> {
    let slope = check_drift(spec, c)?;
    if !(w >= 0.0) {
        return Err(Error::Domain(format!("w must be nonnegative, got {w}")));
    }
    if w == 0.0 {
        return Ok(0.0);
    }
    let g = |z: f64| slope * z - bernstein_phi(&spec.measure, z).unwrap_or(f64::NAN) - w;
    // φ_X ≤ c_L, so g(hi) ≥ 0
    let hi = (w + spec.c_l) / slope * (1.0 + 1e-12) + 1e-300;
    let tol = Tolerance { abs_tol: 1e-15, rel_tol: 1e-15, ..Tolerance::default() };
    find_root(g, 0.0, hi, &tol)
}

/// First passage of Z_t = t/c − X_t above level x.
pub fn sample_first_passage(spec: &SubordinatorSpec, c: f64, x: f64, rng: &mut RngStream) -> Result<f64> {
    let slope = check_drift(spec, c)?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("level must be nonnegative, got {x}")));
    }
    let (mut t, mut z) = (0.0, 0.0);
    loop {
        let e = if spec.c_l > 0.0 { Distribution::<f64>::sample(&Exp1, rng) / spec.c_l } else { f64::INFINITY };
        if z + slope * e > x {
            return Ok(t + (x - z) / slope);
        }
        t += e;
        z += slope * e - spec.jump(rng);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta::zeta_real;

    #[test]
    fn phi_basics() {
        let m = MuMeasure::from_atoms(vec![(2f64.ln(), 0.7)]).unwrap();
        assert_eq!(bernstein_phi(&m, 0.0).unwrap(), 0.0);
        assert!((bernstein_phi(&m, 1.5).unwrap() - 0.7 * (1.0 - 2f64.powf(-1.5))).abs() < 1e-15);
        assert!(bernstein_phi(&MuMeasure::zeta_prime(3).unwrap(), 1.0).is_err());
        // Bose-Einstein density: ψ(1+s) + γ
        let g = bernstein_phi(&MuMeasure::gamma(), 1.0).unwrap();
        assert!((g - 1.0).abs() < 1e-10);
    }

    #[test]
    fn phi_matches_zeta_ratio() {
        let spec = SubordinatorSpec::from_character(&DirichletCharacter::principal(1).unwrap(), 2.0, 10_000, 0.0).unwrap();
        let phi = spec.laplace_exponent(1.0).unwrap();
        let exact = zeta_real(2.0).unwrap().ln() - zeta_real(3.0).unwrap().ln();
        assert!((phi - exact).abs() < 1e-3);
        assert!((phi - exact).abs() <= spec.tail_bound);
    }

    #[test]
    fn first_passage() {
        let empty = SubordinatorSpec::new(0.0, MuMeasure::from_atoms(vec![]).unwrap(), String::new(), 0.0).unwrap();
        assert!((first_passage_exponent(&empty, 2.0, 0.3).unwrap() - 0.6).abs() < 1e-14);
        let one = SubordinatorSpec::new(0.0, MuMeasure::from_atoms(vec![(1.0, 1.0)]).unwrap(), String::new(), 0.0).unwrap();
        assert!(first_passage_exponent(&one, 1.0, 0.3).is_err());
        let z = first_passage_exponent(&one, 0.5, 0.3).unwrap();
        assert!((z / 0.5 - (1.0 - (-z).exp()) - 0.3).abs() < 1e-14);
    }

    #[test]
    fn zero_mass_path_is_drift() {
        let spec = SubordinatorSpec::new(0.4, MuMeasure::from_atoms(vec![]).unwrap(), String::new(), 0.0).unwrap();
        let mut rng = RngStream::new(9, 0);
        let p = sample_path(&spec, 2.5, &mut rng).unwrap();
        assert!(p.jump_times.is_empty());
        assert_eq!(p.value(), 1.0);
    }
}
