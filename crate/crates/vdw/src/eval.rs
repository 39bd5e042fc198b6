//! Function tables for `vdw eval`.

use num_complex::Complex64;
use serde::Serialize;
use vdw_core::couples::ostrovskii_default_params;
use vdw_core::densities::{kendall_density, ostrovskii_density, polya_density, w_a_density};
use vdw_core::hadamard::{eval_even_product, Direction, ProductConfig, TailCorrection, ZeroSet};
use vdw_core::numerics::Tolerance;
use vdw_core::specfun::*;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub input: f64,
    pub value: f64,
    /// Imaginary part, for complex-valued functions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_im: Option<f64>,
    /// Absent when the method gives no estimate.
    pub error_estimate: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct EvalParams {
    /// Imaginary part added to each grid point for complex-argument functions.
    pub im: f64,
    pub a: f64,
    pub nu: f64,
    pub chi: DirichletCharacter,
    pub truncation: usize,
    pub tol: f64,
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams { im: 0.0, a: 1.0, nu: 0.5, chi: DirichletCharacter::principal(1).expect("modulus 1"), truncation: 10_000, tol: 1e-12 }
    }
}

pub const FUNCTION_IDS: &[(&str, &str)] = &[
    ("xi", "xi(s), s = x + i*im"),
    ("zeta", "zeta(s)"),
    ("l", "L(s, chi) for --char"),
    ("gamma", "Gamma(s)"),
    ("eta", "Dedekind eta at x > 0"),
    ("macdonald-k", "int t^(z-1) exp(-(a/2)(t+1/t)) dt at z = x + i*im"),
    ("xi-tau", "Xi_tau(x)"),
    ("tau", "Ramanujan tau(n), n = round(x)"),
    ("cosh-product", "truncated product for cosh"),
    ("sinh-product", "truncated product for sinh(s)/s"),
    ("bessel-product", "truncated product over zeros of J_nu"),
    ("polya-density", "the xi density"),
    ("w-a-density", "density of W_a"),
    ("ostrovskii-density", "Ostrovskii density, default parameter set"),
    ("kendall-density", "density of the sum of two Laplace(a)"),
];

fn complex(z: Complex64, err: Option<f64>, x: f64) -> Row {
    Row { input: x, value: z.re, value_im: Some(z.im), error_estimate: err }
}

fn real(v: f64, err: Option<f64>, x: f64) -> Row {
    Row { input: x, value: v, value_im: None, error_estimate: err }
}

/// One row per grid point; fails on the first domain error.
pub fn eval(id: &str, grid: &[f64], p: &EvalParams) -> Result<Vec<Row>, CliError> {
    let id = id.to_ascii_lowercase();
    if !FUNCTION_IDS.iter().any(|(f, _)| *f == id) {
        return Err(CliError::UnknownId(id));
    }
    let cfg = ProductConfig::new(p.truncation, TailCorrection::Log1pOrder4)?;
    let tol = Tolerance::abs(p.tol);
    let zeros = match id.as_str() {
        "cosh-product" => Some(ZeroSet::cosh()),
        "sinh-product" => Some(ZeroSet::sinh()),
        "bessel-product" => Some(ZeroSet::bessel(p.nu, p.truncation)?),
        _ => None,
    };
    let tau_table = if id == "tau" {
        let n_max = grid.iter().fold(1.0f64, |m, &x| m.max(x.round())) as usize;
        Some(ramanujan_tau(n_max)?)
    } else {
        None
    };
    let ost = ostrovskii_default_params();
    let mut rows = Vec::with_capacity(grid.len());
    for &x in grid {
        let s = Complex64::new(x, p.im);
        let row = match id.as_str() {
            "xi" => complex(xi(s)?, None, x),
            "zeta" => complex(zeta(s)?, None, x),
            "l" => complex(dirichlet_l(&p.chi, s)?, None, x),
            "gamma" => complex(gamma_fn(s)?, None, x),
            "macdonald-k" => complex(macdonald_k(s, p.a)?, None, x),
            "eta" => {
                let v = dedekind_eta(x, EtaMethod::QProduct)?;
                let w = dedekind_eta(x, EtaMethod::EulerSeries)?;
                real(v, Some((v - w).abs()), x)
            }
            "xi-tau" => real(xi_tau(x, &tol)?, None, x),
            "tau" => {
                let n = x.round();
                if n.is_nan() || n < 1.0 {
                    return Err(vdw_core::Error::Domain(format!("tau needs n >= 1, got {x}")).into());
                }
                let v = tau_table.as_ref().and_then(|t| t.get(n as usize)).unwrap_or(0);
                real(v as f64, Some(0.0), n)
            }
            "cosh-product" | "sinh-product" | "bessel-product" => {
                let zs = zeros.as_ref().expect("zero set built above");
                let v = eval_even_product(zs, s, &cfg, Direction::Forward)?;
                complex(v.value, Some(v.tail_bound * v.value.norm()), x)
            }
            "polya-density" => real(polya_density(x, 1e-18)?, None, x),
            "w-a-density" => {
                let d = w_a_density(x, p.a, p.tol)?;
                real(d.value, Some(d.truncation_error), x)
            }
            "ostrovskii-density" => real(ostrovskii_density(x, &ost)?, None, x),
            "kendall-density" => {
                if p.a.is_nan() || p.a <= 0.0 {
                    return Err(vdw_core::Error::Parameter(format!("a must be positive, got {}", p.a)).into());
                }
                real(kendall_density(x, p.a), None, x)
            }
            _ => unreachable!("id checked above"),
        };
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_table_is_symmetric() {
        let g = [0.3, 0.4, 0.5, 0.6, 0.7];
        let rows = eval("xi", &g, &EvalParams::default()).unwrap();
        assert_eq!(rows.len(), 5);
        for k in 0..5 {
            assert!((rows[k].value - rows[4 - k].value).abs() < 1e-8);
        }
    }

    #[test]
    fn products_and_errors() {
        let r = eval("cosh-product", &[0.0], &EvalParams::default()).unwrap();
        assert_eq!(r[0].value, 1.0);
        assert!(matches!(eval("nope", &[0.0], &EvalParams::default()), Err(CliError::UnknownId(_))));
        assert!(matches!(eval("w-a-density", &[-1.0], &EvalParams::default()), Err(CliError::Core(_))));
        let t = eval("tau", &[1.0, 2.0, 6.0], &EvalParams::default()).unwrap();
        assert_eq!(t.iter().map(|r| r.value).collect::<Vec<_>>(), vec![1.0, -24.0, -6048.0]);
    }
}
