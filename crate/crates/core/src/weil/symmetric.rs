//! Symmetric-function arithmetic on the roots of an integer polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::numtheory::IntPolynomial;

/// Power sums `s_1..=s_count` of the roots of a monic polynomial.
pub fn power_sums(f: &IntPolynomial, count: usize) -> Vec<BigInt> {
    let d = f.degree().unwrap_or(0);
    // e_i = (-1)^i a_{d-i}
    let e = |i: usize| -> BigInt {
        if i > d {
            return BigInt::zero();
        }
        let c = f.coeff(d - i);
        if i % 2 == 0 {
            c
        } else {
            -c
        }
    };
    let mut s: Vec<BigInt> = vec![BigInt::zero(); count + 1];
    for k in 1..=count {
        let mut acc = BigInt::zero();
        for i in 1..k {
            let term = e(i) * &s[k - i];
            if i % 2 == 1 {
                acc += term
            } else {
                acc -= term
            }
        }
        let last = e(k) * BigInt::from(k);
        if k % 2 == 1 {
            acc += last
        } else {
            acc -= last
        }
        s[k] = acc;
    }
    s.remove(0);
    s
}

/// Elementary symmetric values `e_0..=e_m` from power sums `p_1..=p_m`.
pub fn elementary_from_power_sums(p: &[BigInt], m: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::one()];
    for k in 1..=m {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                acc += term
            } else {
                acc -= term
            }
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "Newton identity division must be exact");
        e.push(quot);
    }
    e
}

/// `prod (1 - alpha t)` over a multiset of algebraic integers of size `m`,
/// given the power sums `p_1..=p_m` of that multiset.
pub fn reciprocal_from_power_sums(p: &[BigInt], m: usize) -> IntPolynomial {
    let e = elementary_from_power_sums(p, m);
    IntPolynomial::new(e.into_iter().enumerate().map(|(i, c)| if i % 2 == 0 { c } else { -c }).collect())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `P_i(t) = prod_{j_1<...<j_i} (1 - t pi_{j_1}...pi_{j_i})` for `i = 0..=deg f`.
pub fn exterior_power_polys(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let d = f.degree().unwrap_or(0);
    let max_deg = (0..=d).map(|i| binomial(d, i)).max().unwrap_or(1);
    let s = power_sums(f, d * max_deg);
    (0..=d)
        .map(|i| {
            let m = binomial(d, i);
            // power sums of the multiset {pi_S : |S| = i} are e_i of the k-th powers
            let sums: Vec<BigInt> = (1..=m)
                .map(|k| {
                    let kth: Vec<BigInt> = (1..=i).map(|j| s[j * k - 1].clone()).collect();
                    elementary_from_power_sums(&kth, i)[i].clone()
                })
                .collect();
            reciprocal_from_power_sums(&sums, m)
        })
        .collect()
}

/// Determinant of a square integer matrix by fraction-free Bareiss elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(BigInt::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect()).collect()
}

/// Companion matrix of a monic polynomial.
pub fn companion(f: &IntPolynomial) -> Vec<Vec<BigInt>> {
    let d = f.degree().unwrap_or(0);
    let mut c = vec![vec![BigInt::zero(); d]; d];
    for i in 1..d {
        c[i][i - 1] = BigInt::one();
    }
    for (i, row) in c.iter_mut().enumerate() {
        row[d - 1] = -f.coeff(i);
    }
    c
}

/// `prod_j (pi_j^r - 1)` as `det(C_f^r - I)`.
pub fn root_power_minus_one_product(f: &IntPolynomial, r: u32) -> BigInt {
    let c = companion(f);
    let d = c.len();
    let mut m: Vec<Vec<BigInt>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut base = c;
    let mut e = r;
    while e > 0 {
        if e & 1 == 1 {
            m = mat_mul(&m, &base);
        }
        base = mat_mul(&base, &base);
        e >>= 1;
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= BigInt::one();
    }
    bareiss_det(m)
}
