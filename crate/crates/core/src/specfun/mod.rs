//! Special functions: Γ, ζ, ξ, Dirichlet L, η, τ and the Bessel/Macdonald family.

pub mod bessel;
pub mod dirichlet;
pub mod eta;
pub mod gamma;
pub mod primes;
pub mod tau;
pub mod zeta;

pub use bessel::{bessel_f_nu, bessel_j, frak_g, inverse_gaussian_mellin, macdonald_k};
pub use dirichlet::{dirichlet_l, gauss_sum, mu_l_atoms, regularized_lambda, DirichletCharacter, LMeasure};
pub use eta::{dedekind_eta, eta3_lt_closed, eta_lt_closed, EtaMethod};
pub use gamma::{digamma, digamma_real, gamma_fn, gamma_real, ln_gamma, ln_gamma_real, EULER_GAMMA};
pub use primes::Sieve;
pub use tau::{l_tau_partial, ramanujan_tau, sigma_minus1_identity_residual, xi_tau, TauTable};
pub use zeta::{dirichlet_beta, euler_product_zeta, hurwitz_zeta, xi, xi_real, zeta, zeta_real};

use crate::prelude::*;
use crate::thorin::MuMeasure;

/// μ^ζ: atoms of mass `log p` at `r log p` for every prime power `p^r ≤ e^{x_max}`.
pub fn mu_zeta_atoms(x_max: f64) -> Result<MuMeasure> {
    if !(x_max > 2f64.ln()) {
        return Err(Error::Domain(format!("x_max must exceed log 2, got {x_max}")));
    }
    let bound = x_max.exp().floor();
    if bound > 5e7 {
        return Err(Error::Parameter(format!("x_max = {x_max} needs a sieve beyond 5e7")));
    }
    let sieve = Sieve::new(bound as usize);
    let mut atoms = Vec::new();
    for p in sieve.primes() {
        let lp = (p as f64).ln();
        let mut r = 1.0;
        while r * lp <= x_max {
            atoms.push((r * lp, lp));
            r += 1.0;
        }
    }
    MuMeasure::from_atoms(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_zeta_enumeration() {
        let m = mu_zeta_atoms(1.0).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert!((m.atoms()[0].0 - 2f64.ln()).abs() < 1e-15);
        let m = mu_zeta_atoms(1.61).unwrap();
        let xs: Vec<f64> = m.atoms().iter().map(|a| a.0).collect();
        // log 5 = 1.6094… also lies below 1.61
        assert_eq!(xs.len(), 4);
        assert!((xs[0] - 2f64.ln()).abs() < 1e-15);
        assert!((xs[1] - 3f64.ln()).abs() < 1e-15);
        assert!((xs[2] - 4f64.ln()).abs() < 1e-15);
        assert!((xs[3] - 5f64.ln()).abs() < 1e-15);
        assert_eq!(mu_zeta_atoms(1.6).unwrap().atoms().len(), 3);
        let m = mu_zeta_atoms(6.0).unwrap();
        let count = Sieve::new(6f64.exp() as usize).primes().count() as f64;
        assert!(m.total_mass() <= 6.0 * count);
        assert!(mu_zeta_atoms(0.5).is_err());
    }
}
