use num_complex::Complex64;
use proptest::prelude::*;
use vdw_core::couples::{cos_cosh, ostrovskii, ostrovskii_default_params, sinc_sinh};
use vdw_core::densities::{kendall_density, ostrovskii_cf, polya_density, w_a_density};
use vdw_core::hadamard::{eval_even_product, Direction, ProductConfig, ZeroSet};
use vdw_core::lseries_process::{bernstein_phi, first_passage_exponent, SubordinatorSpec};
use vdw_core::samplers::{empirical_cf, RngStream, SeriesSampler};
use vdw_core::specfun::{xi, DirichletCharacter};
use vdw_core::thorin::MuMeasure;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn xi_reflection(re in 0.05f64..0.95, im in -20.0f64..20.0) {
        let s = Complex64::new(re, im);
        let a = xi(s).unwrap();
        let b = xi(Complex64::new(1.0, 0.0) - s).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(1e-3));
    }

    #[test]
    fn even_products_are_even_and_reciprocal(re in -3.0f64..3.0, im in -1.0f64..1.0) {
        let zs = ZeroSet::sinh();
        let c = ProductConfig::default();
        let s = Complex64::new(re, im);
        let p = eval_even_product(&zs, s, &c, Direction::Forward).unwrap().value;
        let q = eval_even_product(&zs, -s, &c, Direction::Forward).unwrap().value;
        let r = eval_even_product(&zs, s, &c, Direction::Reciprocal).unwrap().value;
        prop_assert!((p - q).norm() <= 1e-12 * p.norm());
        prop_assert!((p * r - 1.0).norm() <= 1e-12);
    }

    #[test]
    fn closed_form_couples_multiply_to_one(s in -3.0f64..3.0) {
        for rec in [cos_cosh().unwrap(), sinc_sinh().unwrap()] {
            let v = (rec.f)(Complex64::new(0.0, s)).unwrap() * (rec.g)(Complex64::new(s, 0.0)).unwrap();
            prop_assert!((v - 1.0).norm() < 1e-10);
            prop_assert!((rec.f)(Complex64::new(s, 0.0)).unwrap().norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn densities_are_nonnegative_and_symmetric(x in 0.0f64..4.0, a in 0.3f64..3.0) {
        let p = polya_density(x, 1e-18).unwrap();
        prop_assert!(p >= 0.0);
        prop_assert!((p - polya_density(-x, 1e-18).unwrap()).abs() <= 1e-14 * p.max(1e-300));
        prop_assert!(kendall_density(x, a) > 0.0 || x / a > 700.0);
        prop_assert_eq!(kendall_density(x, a), kendall_density(-x, a));
        if x > 0.01 * a * a {
            prop_assert!(w_a_density(x, a, 1e-16).unwrap().value >= 0.0);
        }
    }

    #[test]
    fn ostrovskii_cf_is_bounded(t in -6.0f64..6.0) {
        let p = ostrovskii_default_params();
        let v = ostrovskii_cf(t, &p).unwrap();
        prop_assert!(v.abs() <= 1.0 + 1e-12);
        let rec = ostrovskii(p).unwrap();
        prop_assert!(((rec.f)(Complex64::new(t, 0.0)).unwrap().re - v).abs() < 1e-12);
    }

    #[test]
    fn bernstein_phi_is_increasing_and_concave(s in 0.0f64..10.0, h in 0.01f64..2.0) {
        let m = MuMeasure::from_atoms(vec![(2f64.ln(), 0.7), (3f64.ln(), 0.2), (4f64.ln(), 0.35)]).unwrap();
        let f0 = bernstein_phi(&m, s).unwrap();
        let f1 = bernstein_phi(&m, s + h).unwrap();
        let f2 = bernstein_phi(&m, s + 2.0 * h).unwrap();
        prop_assert!(f1 >= f0);
        prop_assert!(f2 - f1 <= f1 - f0 + 1e-14);
        prop_assert!(f2 <= m.total_mass() + 1e-14);
    }

    #[test]
    fn first_passage_root_solves_equation(w in 0.0f64..5.0, c in 0.2f64..1.5) {
        let spec = SubordinatorSpec::from_character(&DirichletCharacter::principal(1).unwrap(), 2.0, 2000, 0.0).unwrap();
        let z = first_passage_exponent(&spec, c, w).unwrap();
        let residual = z / c - bernstein_phi(spec.measure(), z).unwrap() - w;
        prop_assert!(residual.abs() <= 1e-10 * (1.0 + w));
    }

    #[test]
    fn streams_reproduce(seed in any::<u64>(), stream in 0u64..1000) {
        let s = SeriesSampler::c1(50).unwrap();
        let a = s.sample_n(5, &mut RngStream::new(seed, stream));
        let b = s.sample_n(5, &mut RngStream::new(seed, stream));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn empirical_cf_of_constant_is_exact(x in -3.0f64..3.0, t in -3.0f64..3.0) {
        let e = empirical_cf(&[x; 7], &[Complex64::new(0.0, t)]).unwrap()[0];
        prop_assert!((e.estimate - Complex64::new(0.0, t * x).exp()).norm() < 1e-14);
        prop_assert_eq!(e.standard_error, 0.0);
    }
}
