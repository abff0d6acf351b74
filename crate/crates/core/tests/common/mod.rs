//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use kummer_core::numtheory::IntPolynomial;

/// `(p, n)` for prime powers `q = p^n <= bound`, by trial division.
pub fn prime_powers(bound: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    for q in 2..=bound {
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut m = q;
        let mut n = 0;
        while m % p == 0 {
            m /= p;
            n += 1;
        }
        if m == 1 {
            out.push((p, n, q));
        }
    }
    out
}

fn isqrt(x: i64) -> Option<i64> {
    (0..=x).take_while(|r| r * r <= x).find(|r| r * r == x)
}

/// Traces `b` of elliptic curves over `F_q`, scanned against the classical
/// list of admissible traces one integer at a time.
pub fn elliptic_traces_brute(p: u64, n: u32, q: u64) -> Vec<i64> {
    let (p, q) = (p as i64, q as i64);
    let even = n % 2 == 0;
    let sq = isqrt(q);
    let mut out = Vec::new();
    let mut b = -2 * q;
    while b <= 2 * q {
        if b * b <= 4 * q {
            let ordinary = b % p != 0;
            let extreme = even && sq.is_some_and(|s| b.abs() == 2 * s);
            let third = even && p % 3 != 1 && sq.is_some_and(|s| b.abs() == s);
            let root_pq = !even && (p == 2 || p == 3) && b * b == p * q;
            let zero = b == 0 && (!even || p % 4 != 1);
            if ordinary || extreme || third || root_pq || zero {
                out.push(b);
            }
        }
        b += 1;
    }
    out
}

fn vp(x: &BigInt, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut y = x.abs();
    let mut v = 0;
    while (&y % &pb).is_zero() {
        y /= &pb;
        v += 1;
    }
    Some(v)
}

/// Newton slopes from the lower envelope `N(x) = min` over chords through
/// coefficient points, evaluated at every integer abscissa.
pub fn newton_envelope_slopes(f: &IntPolynomial, p: u64, n: u32) -> Vec<Ratio<i64>> {
    let pts: Vec<(i64, i64)> =
        f.coeffs().iter().enumerate().filter_map(|(i, c)| vp(c, p).map(|v| (i as i64, v))).collect();
    let d = f.degree().unwrap() as i64;
    let envelope = |x: i64| -> Ratio<i64> {
        let mut best: Option<Ratio<i64>> = None;
        for &(i, vi) in &pts {
            for &(j, vj) in &pts {
                if i <= x && x <= j {
                    let val = if i == j {
                        Ratio::from_integer(vi)
                    } else {
                        Ratio::from_integer(vi) + Ratio::new((vj - vi) * (x - i), j - i)
                    };
                    best = Some(best.map_or(val, |b: Ratio<i64>| b.min(val)));
                }
            }
        }
        best.unwrap()
    };
    let mut slopes: Vec<Ratio<i64>> =
        (0..d).map(|x| (envelope(x) - envelope(x + 1)) / Ratio::from_integer(i64::from(n))).collect();
    slopes.sort();
    slopes
}

fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut out = 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            out = -out;
        }
        d += 1;
    }
    if m > 1 {
        out = -out;
    }
    out
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `c_r(k) = Σ_{d | gcd(r, k)} μ(r / d) d`, the sum of `k`-th powers of primitive `r`-th roots.
pub fn ramanujan_sum(r: u64, k: u64) -> i64 {
    let g = gcd(r, k);
    (1..=g).filter(|d| g % d == 0).map(|d| mobius(r / d) * d as i64).sum()
}

/// `|X(F_{q^k})| = 1 + q^k Σ_r (d_r / φ(r)) c_r(k) + q^{2k}`.
pub fn k3_count_oracle(parts: &BTreeMap<u32, u32>, q: u64, k: u64) -> BigInt {
    let qk = num_traits::pow(BigInt::from(q), k as usize);
    let tr: i64 =
        parts.iter().map(|(&r, &d)| i64::from(d) / phi(u64::from(r)) as i64 * ramanujan_sum(u64::from(r), k)).sum();
    BigInt::from(1) + &qk * BigInt::from(tr) + &qk * &qk
}

/// Characteristic polynomial of a permutation matrix, from traces of its powers
/// (fixed-point counts) through Newton's identities.
pub fn permutation_charpoly(perm: &[usize]) -> IntPolynomial {
    let m = perm.len();
    let fixed = |k: usize| -> BigInt {
        let count = (0..m)
            .filter(|&i| {
                let mut j = i;
                for _ in 0..k {
                    j = perm[j];
                }
                j == i
            })
            .count();
        BigInt::from(count)
    };
    let sums: Vec<BigInt> = (1..=m).map(fixed).collect();
    let mut e = vec![BigInt::from(1)];
    for k in 1..=m {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigInt::from(k));
    }
    // t^m - e1 t^{m-1} + e2 t^{m-2} - ...
    let mut coeffs = vec![BigInt::zero(); m + 1];
    for (i, ei) in e.into_iter().enumerate() {
        coeffs[m - i] = if i % 2 == 0 { ei } else { -ei };
    }
    IntPolynomial::new(coeffs)
}
