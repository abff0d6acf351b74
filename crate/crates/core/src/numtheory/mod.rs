//! Elementary number theory: prime powers, cyclotomic polynomials,
//! residue symbols, orders, prime splitting and Newton polygons.

mod poly;
mod primes;
mod splitting;

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use poly::IntPolynomial;
pub use primes::{
    divisors, euler_phi, exact_root, exact_sqrt_i128, factorize, is_prime, is_squarefree, legendre, moebius,
    mult_order, pow_mod,
};
pub use splitting::{
    splitting_in_cyclotomic, splitting_in_quadratic, splitting_in_real_cyclotomic, splitting_in_subfield, Splitting,
};

/// A finite field size `q = p^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPrimePower")]
pub struct PrimePower {
    p: u64,
    n: u32,
    q: u64,
}

#[derive(Deserialize)]
struct RawPrimePower {
    p: u64,
    n: u32,
    q: u64,
}

impl TryFrom<RawPrimePower> for PrimePower {
    type Error = Error;

    fn try_from(raw: RawPrimePower) -> Result<Self> {
        let pp = PrimePower::new(raw.p, raw.n)?;
        if pp.q != raw.q {
            return Err(Error::NotPrimePower(raw.q));
        }
        Ok(pp)
    }
}

impl PrimePower {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::NotPrimePower(1));
        }
        let q = p.checked_pow(n).ok_or(Error::Overflow)?;
        Ok(PrimePower { p, n, q })
    }

    /// Recover `(p, n)` from `q`.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        for n in (1..=q.ilog2()).rev() {
            if let Some(p) = exact_root(q, n) {
                if is_prime(p) {
                    return Ok(PrimePower { p, n, q });
                }
            }
        }
        Err(Error::NotPrimePower(q))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_odd_degree(&self) -> bool {
        self.n % 2 == 1
    }

    pub fn is_even_degree(&self) -> bool {
        !self.is_odd_degree()
    }

    /// `sqrt q`, when it is an integer.
    pub fn sqrt_q(&self) -> Option<u64> {
        self.is_even_degree().then(|| self.p.pow(self.n / 2))
    }

    /// `q^r` as a field of the same characteristic.
    pub fn extend(&self, r: u32) -> Result<Self> {
        Self::new(self.p, self.n.checked_mul(r).ok_or(Error::Overflow)?)
    }

    pub fn q_big(&self) -> BigInt {
        BigInt::from(self.q)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// Parity of `n` in `q = p^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

impl PrimePower {
    pub fn parity(&self) -> Parity {
        if self.is_odd_degree() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            other => Err(Error::OutOfScope(format!("parity '{other}'"))),
        }
    }
}

/// A Newton slope in `[0, 1]`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct Slope {
    num: u32,
    den: u32,
}

impl Slope {
    pub const ZERO: Slope = Slope { num: 0, den: 1 };
    pub const HALF: Slope = Slope { num: 1, den: 2 };
    pub const ONE: Slope = Slope { num: 1, den: 1 };

    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidPolynomial(format!("slope {num}/{den} outside [0,1]")));
        }
        let g = num.gcd(&den);
        Ok(Slope { num: num / g, den: den / g })
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    /// `1 - self`.
    pub fn complement(&self) -> Slope {
        Slope { num: self.den - self.num, den: self.den }
    }
}

impl TryFrom<(u32, u32)> for Slope {
    type Error = Error;
    fn try_from((n, d): (u32, u32)) -> Result<Self> {
        let s = Slope::new(n, d)?;
        if (s.num, s.den) != (n, d) {
            return Err(Error::InvalidPolynomial(format!("slope {n}/{d} not reduced")));
        }
        Ok(s)
    }
}

impl From<Slope> for (u32, u32) {
    fn from(s: Slope) -> Self {
        (s.num, s.den)
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u64 * other.den as u64).cmp(&(other.num as u64 * self.den as u64))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

const CYCLOTOMIC_CACHE: usize = 240;

fn cyclotomic_uncached(r: u64, lookup: impl Fn(u64) -> IntPolynomial) -> IntPolynomial {
    let mut poly = &IntPolynomial::monomial(BigInt::one(), r as usize) - &IntPolynomial::one();
    for d in divisors(r) {
        if d < r {
            poly = poly.exact_div(&lookup(d)).expect("Phi_d divides t^r - 1");
        }
    }
    poly
}

fn cyclotomic_table() -> &'static [IntPolynomial] {
    static TABLE: OnceLock<Vec<IntPolynomial>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: Vec<IntPolynomial> = vec![IntPolynomial::zero()];
        for r in 1..=CYCLOTOMIC_CACHE as u64 {
            let phi = cyclotomic_uncached(r, |d| table[d as usize].clone());
            table.push(phi);
        }
        table
    })
}

/// The `r`-th cyclotomic polynomial.
///
/// # Panics
/// If `r == 0`.
pub fn cyclotomic(r: u64) -> IntPolynomial {
    assert!(r >= 1, "cyclotomic index must be positive");
    match cyclotomic_table().get(r as usize) {
        Some(p) => p.clone(),
        None => cyclotomic_uncached(r, cyclotomic),
    }
}

/// `p`-adic valuation, `None` for zero.
pub fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (quot, rem) = y.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        y = quot;
        v += 1;
    }
}

/// Slopes of the `p`-adic Newton polygon of `f`, normalized so `v(q) = 1`,
/// listed in ascending order with multiplicity.
pub fn newton_slopes(f: &IntPolynomial, q: &PrimePower) -> Result<Vec<Slope>> {
    if !f.is_monic() {
        return Err(Error::InvalidPolynomial(format!("{f} is not monic")));
    }
    if f.coeff(0).is_zero() {
        return Err(Error::InvalidPolynomial(format!("{f} has zero constant term")));
    }
    let points: Vec<(i64, i64)> =
        f.coeffs().iter().enumerate().filter_map(|(i, c)| valuation(c, q.p()).map(|v| (i as i64, v as i64))).collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let n = q.n() as i64;
    let mut slopes = Vec::new();
    for w in hull.windows(2) {
        let (len, drop) = (w[1].0 - w[0].0, w[0].1 - w[1].1);
        let slope = Slope::new(drop as u32, (len * n) as u32)?;
        slopes.extend(std::iter::repeat_n(slope, len as usize));
    }
    slopes.sort();
    Ok(slopes)
}
