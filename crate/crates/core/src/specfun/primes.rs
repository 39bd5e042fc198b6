//! Smallest-prime-factor sieve and the arithmetic functions built on it.

use crate::prelude::*;

/// Sieve of smallest prime factors up to `limit` (inclusive).
#[derive(Debug, Clone)]
pub struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(limit: usize) -> Self {
        let n = limit.max(1);
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Sieve { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && n <= self.limit() && self.spf[n] as usize == n
    }

    pub fn smallest_factor(&self, n: usize) -> Option<usize> {
        (n >= 2 && n <= self.limit()).then(|| self.spf[n] as usize)
    }

    pub fn primes(&self) -> impl Iterator<Item = usize> + '_ {
        (2..=self.limit()).filter(move |&n| self.spf[n] as usize == n)
    }

    /// `Some(p)` when `n = p^r` for a prime `p` and `r ≥ 1`.
    pub fn prime_power_base(&self, n: usize) -> Option<usize> {
        let p = self.smallest_factor(n)?;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        (m == 1).then_some(p)
    }

    /// von Mangoldt Λ(n): `log p` at prime powers, zero elsewhere.
    pub fn von_mangoldt(&self, n: usize) -> f64 {
        self.prime_power_base(n).map_or(0.0, |p| (p as f64).ln())
    }

    /// Distinct prime factors of `n`.
    pub fn prime_factors(&self, mut n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        out
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// σ₋₁(n) = Σ_{d | n} 1/d.
pub fn sigma_minus1(n: u64) -> f64 {
    let mut s = 0.0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += 1.0 / d as f64;
            let e = n / d;
            if e != d {
                s += 1.0 / e as f64;
            }
        }
        d += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_basics() {
        let s = Sieve::new(100);
        let ps: Vec<usize> = s.primes().collect();
        assert_eq!(ps.len(), 25);
        assert_eq!(&ps[..6], &[2, 3, 5, 7, 11, 13]);
        assert_eq!(s.von_mangoldt(6), 0.0);
        assert!((s.von_mangoldt(8) - 2f64.ln()).abs() < 1e-15);
        assert!((s.von_mangoldt(97) - 97f64.ln()).abs() < 1e-15);
        assert_eq!(s.von_mangoldt(1), 0.0);
        assert_eq!(s.prime_factors(60), vec![2, 3, 5]);
    }

    #[test]
    fn sigma() {
        assert_eq!(sigma_minus1(1), 1.0);
        assert!((sigma_minus1(4) - 1.75).abs() < 1e-15);
        assert!((sigma_minus1(12) - 28.0 / 12.0).abs() < 1e-15);
    }
}
