//! Dirichlet characters, L-functions, Gauss sums and the measure μ_L.

use super::gamma::{digamma_real, gamma_fn};
use super::primes::{gcd, Sieve};
use super::zeta::{hurwitz_zeta, zeta};
use crate::prelude::*;

const TABLE_TOL: f64 = 1e-10;

/// A Dirichlet character stored as its value table on `0..k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<Complex64>,
    parity: u8,
    primitive: bool,
}

impl DirichletCharacter {
    /// Validates and wraps a table `values[n] = χ(n)` for `n = 0..k`.
    pub fn from_values(modulus: u64, values: Vec<Complex64>) -> Result<Self> {
        let k = modulus as usize;
        if k == 0 || values.len() != k {
            return Err(Error::Parameter(format!("character table must have {k} entries, got {}", values.len())));
        }
        for (n, v) in values.iter().enumerate() {
            let coprime = gcd(n as u64, modulus) == 1;
            if coprime && (v.norm() - 1.0).abs() > TABLE_TOL {
                return Err(Error::Parameter(format!("|chi({n})| must be 1")));
            }
            if !coprime && v.norm() > TABLE_TOL {
                return Err(Error::Parameter(format!("chi({n}) must vanish since gcd({n}, {k}) > 1")));
            }
        }
        if k > 1 && (values[1] - 1.0).norm() > TABLE_TOL {
            return Err(Error::Parameter("chi(1) must be 1".into()));
        }
        for m in 0..k {
            for n in m..k {
                let lhs = values[(m * n) % k];
                if (lhs - values[m] * values[n]).norm() > TABLE_TOL {
                    return Err(Error::Parameter(format!("table is not multiplicative at ({m}, {n})")));
                }
            }
        }
        let minus_one = values[(k - 1) % k];
        let parity = if k <= 2 || (minus_one - 1.0).norm() < TABLE_TOL { 0 } else { 1 };
        let mut chi = DirichletCharacter { modulus, values, parity, primitive: false };
        chi.primitive = chi.compute_primitive();
        Ok(chi)
    }

    /// The principal character mod `k`.
    pub fn principal(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Parameter("modulus must be positive".into()));
        }
        let values = (0..modulus).map(|n| if gcd(n, modulus) == 1 { cr(1.0) } else { cr(0.0) }).collect();
        Self::from_values(modulus, values)
    }

    /// The non-principal character mod 4.
    pub fn mod4() -> Self {
        Self::from_values(4, vec![cr(0.0), cr(1.0), cr(0.0), cr(-1.0)]).expect("valid table")
    }

    /// χ(g^m) = e^{2πi j m/(p−1)} for prime `p` with primitive root `g`.
    pub fn prime_modulus(p: u64, j: u64) -> Result<Self> {
        if p < 3 || !Sieve::new(p as usize).is_prime(p as usize) {
            return Err(Error::Parameter(format!("{p} is not an odd prime")));
        }
        let g = primitive_root(p);
        let mut values = vec![cr(0.0); p as usize];
        let mut x = 1u64;
        for m in 0..p - 1 {
            let ang = 2.0 * PI * ((j * m) % (p - 1)) as f64 / (p - 1) as f64;
            values[x as usize] = c(ang.cos(), ang.sin());
            x = x * g % p;
        }
        Self::from_values(p, values)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// ε: 0 when χ(−1) = 1, 1 when χ(−1) = −1.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_principal(&self) -> bool {
        (0..self.modulus).all(|n| {
            let v = self.values[n as usize];
            if gcd(n, self.modulus) == 1 {
                (v - 1.0).norm() < TABLE_TOL
            } else {
                true
            }
        })
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im.abs() < TABLE_TOL)
    }

    pub fn eval(&self, n: i64) -> Complex64 {
        let k = self.modulus as i64;
        self.values[n.rem_euclid(k) as usize]
    }

    pub fn conj(&self) -> Self {
        DirichletCharacter { values: self.values.iter().map(|v| v.conj()).collect(), ..self.clone() }
    }

    fn compute_primitive(&self) -> bool {
        let k = self.modulus;
        if k == 1 {
            return true;
        }
        for d in 1..k {
            if k % d != 0 {
                continue;
            }
            let induced = (1..k).filter(|&n| gcd(n, k) == 1 && n % d == 1 % d).all(|n| (self.values[n as usize] - 1.0).norm() < TABLE_TOL);
            if induced {
                return false;
            }
        }
        true
    }
}

fn primitive_root(p: u64) -> u64 {
    let sieve = Sieve::new((p - 1) as usize);
    let factors = sieve.prime_factors((p - 1) as usize);
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q as u64, p) != 1)).expect("every prime has a primitive root")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// L(s, χ) = Σ χ(n) n^{−s} on Re s > 0 (s ≠ 1 for principal χ).
///
/// Evaluated as `k^{−s} Σ_a χ(a) ζ(s, a/k)`; at s = 1 for non-principal χ
/// the digamma form `−(1/k) Σ_a χ(a) ψ(a/k)` is used.
pub fn dirichlet_l(chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("L-series evaluated on Re s > 0 only, got {s}")));
    }
    let k = chi.modulus();
    if k == 1 {
        return zeta(s);
    }
    let principal = chi.is_principal();
    if (s - 1.0).norm() < 1e-9 {
        if principal {
            return Err(Error::Pole { re: 1.0, im: 0.0 });
        }
        let mut acc = cr(0.0);
        for a in 1..k {
            let v = chi.values[a as usize];
            if v.norm() > 0.0 {
                acc += v * digamma_real(a as f64 / k as f64)?;
            }
        }
        return Ok(-acc / k as f64);
    }
    let mut acc = crate::numerics::ComplexSum::new();
    for a in 1..k {
        let v = chi.values[a as usize];
        if v.norm() > 0.0 {
            acc.add(v * hurwitz_zeta(s, a as f64 / k as f64)?);
        }
    }
    Ok(cr(k as f64).powc(-s) * acc.value())
}

/// Truncated Euler product Π_{p≤P} (1 − χ(p)p^{−s})^{−1}, Re s > 1.
pub fn dirichlet_l_euler(chi: &DirichletCharacter, s: Complex64, prime_bound: usize) -> Result<Complex64> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("Euler product needs Re s > 1, got {s}")));
    }
    let sieve = Sieve::new(prime_bound.max(2));
    let mut log = crate::numerics::ComplexSum::new();
    for p in sieve.primes() {
        let x = chi.eval(p as i64) * cr(p as f64).powc(-s);
        log.add(-(cr(1.0) - x).ln());
    }
    Ok(log.value().exp())
}

/// τ(χ) = Σ_{n=1}^{k} χ(n) e^{2πin/k}.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let k = chi.modulus();
    let mut acc = crate::numerics::ComplexSum::new();
    for n in 1..=k {
        let ang = 2.0 * PI * n as f64 / k as f64;
        acc.add(chi.eval(n as i64) * c(ang.cos(), ang.sin()));
    }
    acc.value()
}

/// Λ(s, χ) = (π/k)^{−(s+ε)/2} Γ((s+ε)/2) L(s, χ).
pub fn regularized_lambda(chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    let eps = chi.parity() as f64;
    let k = chi.modulus() as f64;
    let h = (s + eps) * 0.5;
    Ok(cr(PI / k).powc(-h) * gamma_fn(h)? * dirichlet_l(chi, s)?)
}

/// Residuals of the functional equation at `s` (0 < Re s < 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalEquationResidual {
    /// |Λ(s,χ) − (−1)^ε τ(χ) Λ(1−s, χ̄)|, the relation with no normalisation.
    pub literal: f64,
    /// |Λ(s,χ) − τ(χ) i^{−ε} k^{−½} Λ(1−s, χ̄)|.
    pub normalized: f64,
}

pub fn functional_equation_residual(chi: &DirichletCharacter, s: Complex64) -> Result<FunctionalEquationResidual> {
    let lhs = regularized_lambda(chi, s)?;
    let rhs = regularized_lambda(&chi.conj(), cr(1.0) - s)?;
    let tau = gauss_sum(chi);
    let sign = if chi.parity() == 0 { 1.0 } else { -1.0 };
    let i_eps = if chi.parity() == 0 { cr(1.0) } else { c(0.0, 1.0) };
    let k = chi.modulus() as f64;
    Ok(FunctionalEquationResidual { literal: (lhs - tau * sign * rhs).norm(), normalized: (lhs - tau / (i_eps * k.sqrt()) * rhs).norm() })
}

/// Atoms of μ_L: mass Λ(n)χ(n)/(log n · n^σ) at `log n`, possibly complex.
#[derive(Debug, Clone, PartialEq)]
pub struct LMeasure {
    pub atoms: Vec<(f64, Complex64)>,
    pub sigma: f64,
    pub n_max: usize,
}

impl LMeasure {
    pub fn total_mass(&self) -> Complex64 {
        let mut acc = crate::numerics::ComplexSum::new();
        for (_, m) in &self.atoms {
            acc.add(*m);
        }
        acc.value()
    }

    /// Bound on the omitted mass: Σ_{n>N} Λ(n)/(log n · n^σ) ≤ N^{1−σ}/((σ−1) log N).
    pub fn tail_bound(&self) -> f64 {
        let n = self.n_max as f64;
        n.powf(1.0 - self.sigma) / ((self.sigma - 1.0) * n.ln())
    }

    /// The real measure, when every mass is real and nonnegative.
    pub fn to_real(&self) -> Result<crate::thorin::MuMeasure> {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for &(x, m) in &self.atoms {
            if m.im.abs() > 1e-14 || m.re < 0.0 {
                return Err(Error::ComplexMass);
            }
            if m.re > 0.0 {
                atoms.push((x, m.re));
            }
        }
        crate::thorin::MuMeasure::from_atoms(atoms)
    }
}

pub fn mu_l_atoms(chi: &DirichletCharacter, sigma: f64, n_max: usize) -> Result<LMeasure> {
    if !(sigma > 1.0) {
        return Err(Error::Domain(format!("mu_L needs sigma > 1, got {sigma}")));
    }
    if n_max < 2 {
        return Err(Error::Parameter("n_max must be at least 2".into()));
    }
    let sieve = Sieve::new(n_max);
    let mut atoms = Vec::new();
    for n in 2..=n_max {
        let lam = sieve.von_mangoldt(n);
        if lam == 0.0 {
            continue;
        }
        let chi_n = chi.eval(n as i64);
        if chi_n.norm() == 0.0 {
            continue;
        }
        let nf = n as f64;
        atoms.push((nf.ln(), chi_n * (lam / (nf.ln() * nf.powf(sigma)))));
    }
    Ok(LMeasure { atoms, sigma, n_max })
}
