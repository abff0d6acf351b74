//! Primality, factorization and modular arithmetic on machine integers.

use num_integer::{Integer, Roots};

use crate::error::Error;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m`, with `m >= 1`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization in ascending order of primes.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    fn split(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime(n) {
            out.push(n);
            return;
        }
        for p in [2u64, 3, 5, 7, 11, 13] {
            if n % p == 0 {
                out.push(p);
                split(n / p, out);
                return;
            }
        }
        let d = pollard_rho(n);
        split(d, out);
        split(n / d, out);
    }
    let mut primes = Vec::new();
    if n > 1 {
        split(n, &mut primes);
    }
    primes.sort_unstable();
    let mut result: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match result.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => result.push((p, 1)),
        }
    }
    result
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let current = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(current.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient.
pub fn euler_phi(r: u64) -> u64 {
    factorize(r).into_iter().fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// The Möbius function, which is also the sum of the primitive `r`-th roots of unity.
pub fn moebius(r: u64) -> i8 {
    let mut sign = 1i8;
    for (_, e) in factorize(r) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Least `k >= 1` with `a^k = 1 (mod m)`.
pub fn mult_order(a: i64, m: u64) -> Result<u64, Error> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let a_red = a.rem_euclid(m as i64) as u64;
    if a_red.gcd(&m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    if m == 1 {
        return Ok(1);
    }
    let mut order = euler_phi(m);
    for (l, _) in factorize(order) {
        while order % l == 0 && pow_mod(a_red, order / l, m) == 1 {
            order /= l;
        }
    }
    Ok(order)
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> Result<i8, Error> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let a_red = a.rem_euclid(p as i64) as u64;
    if a_red == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(a_red, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Exact integer `k`-th root, if `n` is a perfect `k`-th power.
pub fn exact_root(n: u64, k: u32) -> Option<u64> {
    let r = n.nth_root(k);
    (r.checked_pow(k) == Some(n)).then_some(r)
}

/// Exact integer square root of a nonnegative `i128`.
pub fn exact_sqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Square-free test for a nonzero integer (sign ignored).
pub fn is_squarefree(d: i64) -> bool {
    d != 0 && factorize(d.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_range_matches_trial_division() {
        for n in 0u64..2000 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factorization_reassembles() {
        for n in [1u64, 2, 12, 240, 1001, 65_536, 999_983 * 7, 600_851_475_143] {
            let back: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
        }
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn totient_and_moebius_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
    }

    #[test]
    fn totient_counts_units() {
        for m in 1u64..200 {
            let units = (0..m).filter(|a| a.gcd(&m) == 1).count() as u64;
            assert_eq!(euler_phi(m), units);
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(7, 8).unwrap(), 2);
        assert_eq!(mult_order(1, 12).unwrap(), 1);
        assert_eq!(mult_order(2, 5).unwrap(), 4);
        assert_eq!(mult_order(-1, 8).unwrap(), 2);
        assert!(matches!(mult_order(2, 8), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn order_matches_brute_force() {
        for m in 1u64..120 {
            for a in 1..m.max(2) {
                if a.gcd(&m) != 1 {
                    continue;
                }
                let mut k = 1;
                let mut x = a % m;
                while x != 1 % m {
                    x = x * a % m;
                    k += 1;
                }
                assert_eq!(mult_order(a as i64, m).unwrap(), k, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn legendre_examples_and_errors() {
        assert_eq!(legendre(2, 7).unwrap(), 1);
        assert_eq!(legendre(0, 5).unwrap(), 0);
        assert_eq!(legendre(2, 5).unwrap(), -1);
        assert!(legendre(3, 2).is_err());
        assert!(legendre(3, 9).is_err());
    }

    #[test]
    fn legendre_matches_square_enumeration() {
        for p in (3u64..100).filter(|&p| is_prime(p)) {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in -50i64..50 {
                let r = a.rem_euclid(p as i64) as u64;
                let expected = if r == 0 {
                    0
                } else if squares.contains(&r) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(a, p).unwrap(), expected, "a={a} p={p}");
            }
        }
    }
}
