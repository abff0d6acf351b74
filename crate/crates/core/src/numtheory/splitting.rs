//! Decomposition of rational primes in abelian number fields.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::primes::{euler_phi, is_prime, legendre, mult_order};
use crate::error::{Error, Result};

/// Ramification index, residue degree and number of primes above `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Splitting {
    pub e: u64,
    pub f: u64,
    pub g: u64,
}

impl Splitting {
    /// `[K_w : Q_p]`, the same at every prime `w | p` of a Galois field.
    pub fn local_degree(&self) -> u64 {
        self.e * self.f
    }

    pub fn field_degree(&self) -> u64 {
        self.e * self.f * self.g
    }

    pub fn is_split(&self) -> bool {
        self.g > 1
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Split `m = p^a * m'` with `p` not dividing `m'`.
fn strip_prime(p: u64, m: u64) -> (u32, u64) {
    let mut a = 0;
    let mut rest = m;
    while rest % p == 0 {
        rest /= p;
        a += 1;
    }
    (a, rest)
}

/// Splitting of `p` in `Q(zeta_m)`.
pub fn splitting_in_cyclotomic(p: u64, m: u64) -> Result<Splitting> {
    require_prime(p)?;
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let (a, rest) = strip_prime(p, m);
    let e = if a == 0 { 1 } else { euler_phi(p.pow(a)) };
    let f = mult_order(p as i64, rest)?;
    Ok(Splitting { e, f, g: euler_phi(rest) / f })
}

/// Splitting of `p` in the fixed field of a subgroup `h` of `(Z/m)^*`,
/// by explicit enumeration of the decomposition and inertia groups.
pub fn splitting_in_subfield(p: u64, m: u64, h: &[u64]) -> Result<Splitting> {
    require_prime(p)?;
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let units: Vec<u64> = (0..m).filter(|x| x.gcd(&m) == 1).collect();
    let mut h: Vec<u64> = h.iter().map(|x| x % m).collect();
    h.sort_unstable();
    h.dedup();
    if !h.contains(&(1 % m)) || h.iter().any(|x| x.gcd(&m) != 1) {
        return Err(Error::InvalidField(format!("{h:?} is not a subgroup of (Z/{m})^*")));
    }
    let (_, rest) = strip_prime(p, m);
    let frob: Vec<u64> = {
        let mut cyc = vec![1 % rest];
        let mut x = p % rest;
        while x != 1 % rest {
            cyc.push(x);
            x = x * p % rest;
        }
        cyc
    };
    let decomposition: Vec<u64> = units.iter().copied().filter(|x| frob.contains(&(x % rest))).collect();
    let inertia: Vec<u64> = units.iter().copied().filter(|x| x % rest == 1 % rest).collect();
    let mul_by_h = |group: &[u64]| -> usize {
        let mut out: Vec<u64> = group.iter().flat_map(|x| h.iter().map(move |y| x * y % m)).collect();
        out.sort_unstable();
        out.dedup();
        out.len()
    };
    let hs = h.len();
    let dh = mul_by_h(&decomposition);
    let ih = mul_by_h(&inertia);
    let e = (ih / hs) as u64;
    let local = (dh / hs) as u64;
    Ok(Splitting { e, f: local / e, g: (units.len() / dh) as u64 })
}

/// Splitting of `p` in the maximal real subfield of `Q(zeta_m)`.
pub fn splitting_in_real_cyclotomic(p: u64, m: u64) -> Result<Splitting> {
    let minus_one = m.saturating_sub(1);
    splitting_in_subfield(p, m, &[1, minus_one])
}

/// Splitting of `p` in `Q(sqrt d)` for square-free `d != 0, 1`,
/// decided by the discriminant and, at 2, by `d mod 8`.
pub fn splitting_in_quadratic(p: u64, d: i64) -> Result<Splitting> {
    require_prime(p)?;
    if d == 0 || d == 1 || !super::primes::is_squarefree(d) {
        return Err(Error::InvalidField(format!("Q(sqrt {d}) is not a quadratic field")));
    }
    let d_mod4 = d.rem_euclid(4);
    let disc_even = d_mod4 != 1;
    let ramified = if p == 2 { disc_even } else { d.rem_euclid(p as i64) == 0 };
    let split = |s: bool| if s { Splitting { e: 1, f: 1, g: 2 } } else { Splitting { e: 1, f: 2, g: 1 } };
    if ramified {
        return Ok(Splitting { e: 2, f: 1, g: 1 });
    }
    if p == 2 {
        return Ok(split(d.rem_euclid(8) == 1));
    }
    Ok(split(legendre(d, p)? == 1))
}
