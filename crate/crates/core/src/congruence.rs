//! Congruence conditions on a prime `p`, as they appear in table rows.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A predicate on the characteristic `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Condition {
    /// `p > bound`.
    Greater { bound: u64 },
    /// `p != value`.
    NotEqual { value: u64 },
    /// `p ≢ r mod m`.
    NotCongruent { r: i64, m: u64 },
    /// `p ≢ ±1 mod m`.
    NotPlusMinusOne { m: u64 },
    /// `p ≡ r (m)`.
    Congruent { r: i64, m: u64 },
}

impl Condition {
    pub const ANY: Condition = Condition::Greater { bound: 0 };

    pub fn greater(bound: u64) -> Self {
        Condition::Greater { bound }
    }

    pub fn not_congruent(r: i64, m: u64) -> Self {
        Condition::NotCongruent { r, m }
    }

    pub fn not_pm_one(m: u64) -> Self {
        Condition::NotPlusMinusOne { m }
    }

    pub fn congruent(r: i64, m: u64) -> Self {
        Condition::Congruent { r, m }
    }

    pub fn eval(&self, p: u64) -> bool {
        let residue = |r: i64, m: u64| r.rem_euclid(m as i64) as u64;
        match *self {
            Condition::Greater { bound } => p > bound,
            Condition::NotEqual { value } => p != value,
            Condition::NotCongruent { r, m } => p % m != residue(r, m),
            Condition::NotPlusMinusOne { m } => p % m != residue(1, m) && p % m != residue(-1, m),
            Condition::Congruent { r, m } => p % m == residue(r, m),
        }
    }
}

fn signed(r: i64) -> String {
    if r < 0 {
        format!("−{}", -r)
    } else {
        r.to_string()
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Condition::Greater { bound } => write!(f, "p > {bound}"),
            Condition::NotEqual { value } => write!(f, "p ≠ {value}"),
            Condition::NotCongruent { r, m } => write!(f, "p ≢ {} mod {m}", signed(r)),
            Condition::NotPlusMinusOne { m } => write!(f, "p ≢ ±1 mod {m}"),
            Condition::Congruent { r, m } => write!(f, "p ≡ {} ({m})", signed(r)),
        }
    }
}

/// Conjunction of conditions.
pub fn all_hold(conds: &[Condition], p: u64) -> bool {
    conds.iter().all(|c| c.eval(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation() {
        assert!(Condition::ANY.eval(2));
        assert!(!Condition::greater(3).eval(3));
        assert!(Condition::not_congruent(1, 8).eval(7));
        assert!(!Condition::not_pm_one(8).eval(7));
        assert!(!Condition::not_pm_one(8).eval(17));
        assert!(Condition::not_pm_one(8).eval(5));
        assert!(!Condition::not_congruent(-1, 8).eval(23));
        assert!(Condition::congruent(3, 4).eval(7));
        assert!(Condition::NotEqual { value: 2 }.eval(3));
    }

    #[test]
    fn display_matches_table_notation() {
        assert_eq!(Condition::ANY.to_string(), "p > 0");
        assert_eq!(Condition::not_pm_one(8).to_string(), "p ≢ ±1 mod 8");
        assert_eq!(Condition::not_congruent(-1, 8).to_string(), "p ≢ −1 mod 8");
        assert_eq!(Condition::congruent(3, 4).to_string(), "p ≡ 3 (4)");
    }
}
