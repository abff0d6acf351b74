//! Decision procedures for abelian surfaces with rigid (and symplectic)
//! group actions over a given finite field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::citation::Citation;
use crate::congruence::Condition;
use crate::error::{Error, Result};
use crate::groups::{facts, GroupId};
use crate::numtheory::{is_prime, Parity, PrimePower};
use crate::weil::{WeilDescriptor, WeilShape};

/// How much a verdict flag is backed by the cited statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// The cited statement is an equivalence.
    Theorem,
    /// The cited statement guarantees existence but says nothing otherwise.
    Sufficient,
    /// Outside the cases the cited statement covers.
    NotDetermined,
    /// The tabulated row cannot be read unambiguously.
    TableAmbiguity,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Theorem => "theorem",
            Basis::Sufficient => "sufficient condition",
            Basis::NotDetermined => "not determined",
            Basis::TableAmbiguity => "ambiguous table row",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub citation: Citation,
    pub statement: String,
    pub holds: bool,
}

impl Reason {
    fn new(citation: Citation, statement: impl Into<String>, holds: bool) -> Self {
        Reason { citation, statement: statement.into(), holds }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} [{}]", self.statement, if self.holds { "holds" } else { "fails" }, self.citation)
    }
}

/// One Weil polynomial family of the odd-degree table and whether `G` acts on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilOption {
    pub shape: WeilShape,
    pub eps: Option<i8>,
    pub condition: Condition,
    pub holds: bool,
    pub basis: Basis,
    pub descriptors: Vec<WeilDescriptor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceVerdict {
    pub group: GroupId,
    pub q: PrimePower,
    pub exists_rigid: bool,
    pub exists_rigid_symplectic: bool,
    pub rigid_basis: Basis,
    pub symplectic_basis: Basis,
    pub reasons: Vec<Reason>,
    pub weil_options: Vec<WeilOption>,
    pub supersingular_forced: bool,
}

impl ExistenceVerdict {
    pub fn citations(&self) -> Vec<Citation> {
        let mut out: Vec<Citation> = self.reasons.iter().map(|r| r.citation).collect();
        out.sort();
        out.dedup();
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for ExistenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cites: Vec<&str> = self.citations().iter().map(|c| c.label()).collect();
        write!(
            f,
            "rigid: {}; symplectic: {} [{}]",
            yes_no(self.exists_rigid),
            yes_no(self.exists_rigid_symplectic),
            cites.join(", ")
        )
    }
}

const TRIGGERS: [u32; 3] = [5, 8, 12];

/// Orders `n ∈ {5, 8, 12}` of cyclic subgroups of `g`.
pub fn cyclic_triggers(g: GroupId) -> Vec<u32> {
    let orders = facts(g).cyclic_subgroup_orders;
    TRIGGERS.iter().copied().filter(|n| orders.contains(n)).collect()
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn require_table_group(g: GroupId) -> Result<()> {
    if !g.in_katsura_list() {
        return Err(Error::OutOfScope(format!("{g} is outside the theorem's group table")));
    }
    if g.order() <= 2 {
        return Err(Error::OutOfScope(format!("|{g}| = {} ≤ 2 is out of theorem scope", g.order())));
    }
    Ok(())
}

fn require_scope(g: GroupId, p: u64) -> Result<()> {
    require_table_group(g)?;
    if u64::from(g.order()) % p == 0 {
        return Err(Error::OutOfScope(format!("p = {p} divides |{g}| = {}; out of theorem scope", g.order())));
    }
    Ok(())
}

/// Column II of the even-degree table: `p ≢ ±1 mod n` for each cyclic subgroup order `n ∈ {5, 8, 12}`.
pub fn symplectic_column(g: GroupId) -> Vec<Condition> {
    cyclic_triggers(g).into_iter().map(|n| Condition::not_pm_one(u64::from(n))).collect()
}

/// Column I: a cyclic group only needs `ζ_n` to stay out of `F_p`; otherwise as column II.
pub fn rigid_column(g: GroupId) -> Vec<Condition> {
    match g {
        GroupId::Cyclic(n) => {
            let n = if n == 10 { 5 } else { n };
            if TRIGGERS.contains(&n) {
                vec![Condition::not_congruent(1, u64::from(n))]
            } else {
                vec![]
            }
        }
        _ => symplectic_column(g),
    }
}

fn describe(label: &str, conds: &[Condition]) -> String {
    if conds.is_empty() {
        format!("{label}: p > 0")
    } else {
        let parts: Vec<String> = conds.iter().map(|c| c.to_string()).collect();
        format!("{label}: {}", parts.join(" and "))
    }
}

/// Existence over `F_{p^2}`. Both columns are equivalences for `p ∤ |G|`. When
/// `p | |G|`, column I is still sufficient and column II is reported as tabulated.
pub fn exists_over_even_degree(g: GroupId, p: u64) -> Result<ExistenceVerdict> {
    require_prime(p)?;
    require_table_group(g)?;
    let col_i = rigid_column(g);
    let col_ii = symplectic_column(g);
    let rigid = col_i.iter().all(|c| c.eval(p));
    let sympl = col_ii.iter().all(|c| c.eval(p));
    let coprime = u64::from(g.order()) % p != 0;
    let (rigid_basis, symplectic_basis) = match (coprime, rigid) {
        (true, _) => (Basis::Theorem, Basis::Theorem),
        (false, true) => (Basis::Sufficient, Basis::TableAmbiguity),
        (false, false) => (Basis::NotDetermined, Basis::NotDetermined),
    };
    let mut reasons = vec![
        Reason::new(Citation::Thm6_2, describe("column I", &col_i), rigid),
        Reason::new(Citation::Thm6_2, describe("column II", &col_ii), sympl),
    ];
    if !coprime {
        reasons.push(Reason::new(Citation::Thm6_2, format!("p ∤ |{g}|"), false));
    }
    Ok(ExistenceVerdict {
        group: g,
        q: PrimePower::new(p, 2)?,
        exists_rigid: rigid,
        exists_rigid_symplectic: sympl,
        rigid_basis,
        symplectic_basis,
        reasons,
        weil_options: vec![],
        supersingular_forced: !cyclic_triggers(g).is_empty(),
    })
}

/// Existence over `F_p`; the cited statement is sufficient only.
pub fn exists_over_prime_field(g: GroupId, p: u64) -> Result<ExistenceVerdict> {
    require_prime(p)?;
    let (covered, condition) = match g {
        GroupId::Cyclic(2 | 3 | 4 | 6) => (true, Condition::ANY),
        GroupId::BinaryDihedral(8) | GroupId::SL2F3 => (true, Condition::NotEqual { value: 2 }),
        GroupId::BinaryDihedral(12) => (true, Condition::greater(3)),
        _ => (false, Condition::ANY),
    };
    let holds = covered && condition.eval(p);
    let statement =
        if covered { format!("{g} over F_p when {condition}") } else { format!("{g} is not among the listed groups") };
    let basis = if holds { Basis::Sufficient } else { Basis::NotDetermined };
    Ok(ExistenceVerdict {
        group: g,
        q: PrimePower::prime(p)?,
        exists_rigid: holds,
        exists_rigid_symplectic: holds,
        rigid_basis: basis,
        symplectic_basis: basis,
        reasons: vec![Reason::new(Citation::Thm6_6, statement, holds)],
        weil_options: vec![],
        supersingular_forced: false,
    })
}

/// Rows of the odd-degree table that mention `g`, with the condition on `p`.
pub fn odd_degree_rows(g: GroupId, p: u64) -> Vec<(WeilShape, Condition, Basis)> {
    use GroupId::*;
    use WeilShape::*;
    let small_cyclic = matches!(g, Cyclic(3 | 4 | 6));
    let mut rows = Vec::new();
    if g == Cyclic(4) {
        rows.push((QuarticZero, Condition::ANY, Basis::Theorem));
    }
    if matches!(g, Cyclic(3 | 6)) {
        rows.push((QuarticPm, Condition::ANY, Basis::Theorem));
    }
    let square_rows = |minus: bool| -> Option<Condition> {
        match g {
            _ if small_cyclic => Some(Condition::greater(2)),
            BinaryDihedral(8) | SL2F3 => Some(Condition::not_congruent(if minus { 1 } else { -1 }, 8)),
            BinaryDihedral(12) => Some(Condition::not_congruent(if minus { 2 } else { 1 }, 3)),
            _ => None,
        }
    };
    if let Some(c) = square_rows(true) {
        rows.push((DiffSquare, c, Basis::Theorem));
    }
    if let Some(c) = square_rows(false) {
        rows.push((SumSquare, c, Basis::Theorem));
    }
    if p == 3 && matches!(g, Cyclic(4 | 8) | BinaryDihedral(8)) {
        rows.push((SpecialThree, Condition::ANY, Basis::TableAmbiguity));
    }
    if p == 2 && g == Cyclic(3) {
        rows.push((SpecialTwo, Condition::ANY, Basis::TableAmbiguity));
    }
    rows
}

/// Existence over `F_q` for `q` an odd power of `p`, one Weil polynomial family at a time.
pub fn exists_over_odd_degree(g: GroupId, q: &PrimePower) -> Result<ExistenceVerdict> {
    if q.parity() != Parity::Odd {
        return Err(Error::OutOfScope(format!("q = {q} is an even power of p")));
    }
    let p = q.p();
    require_scope(g, p)?;
    let mut options = Vec::new();
    let mut reasons = Vec::new();
    for (shape, condition, basis) in odd_degree_rows(g, p) {
        let descriptors: Vec<WeilDescriptor> = match shape.polynomials(q) {
            Ok(polys) => polys.iter().filter_map(|f| WeilDescriptor::from_polynomial(q, f).ok()).collect(),
            Err(_) => vec![],
        };
        let holds = condition.eval(p) && (basis == Basis::TableAmbiguity || !descriptors.is_empty());
        reasons.push(Reason::new(Citation::Thm6_7, format!("f = {shape}: {condition}"), holds));
        options.push(WeilOption { shape, eps: shape.eps(), condition, holds, basis, descriptors });
    }
    let settled = options.iter().any(|o| o.holds && o.basis == Basis::Theorem);
    let ambiguous = options.iter().any(|o| o.holds && o.basis == Basis::TableAmbiguity);
    let exists = settled || ambiguous;
    let basis = if settled || !ambiguous { Basis::Theorem } else { Basis::TableAmbiguity };
    if options.is_empty() {
        reasons.push(Reason::new(Citation::Thm6_7, format!("{g} acts on no listed Weil polynomial"), false));
    }
    Ok(ExistenceVerdict {
        group: g,
        q: *q,
        exists_rigid: exists,
        exists_rigid_symplectic: exists,
        rigid_basis: basis,
        symplectic_basis: basis,
        reasons,
        weil_options: options,
        supersingular_forced: true,
    })
}

const CLAUSE_ONE: [GroupId; 7] = [
    GroupId::Cyclic(2),
    GroupId::Cyclic(3),
    GroupId::Cyclic(4),
    GroupId::Cyclic(6),
    GroupId::BinaryDihedral(8),
    GroupId::BinaryDihedral(12),
    GroupId::SL2F3,
];

/// Whether some abelian surface over `F_q` has a `G`-action with K3 quotient.
pub fn katsura_refinement(g: GroupId, q: &PrimePower) -> Result<ExistenceVerdict> {
    let p = q.p();
    if p == 2 {
        return Err(Error::NotOddPrime(p));
    }
    if u64::from(g.order()) % p == 0 {
        return Err(Error::OutOfScope(format!("p = {p} divides |{g}| = {}", g.order())));
    }
    let mut reasons =
        vec![Reason::new(Citation::KatsuraList, format!("{g} is in the Katsura list"), g.in_katsura_list())];
    let triggers = cyclic_triggers(g);
    let exists = if !g.in_katsura_list() {
        false
    } else if CLAUSE_ONE.contains(&g) {
        reasons.push(Reason::new(Citation::Thm1_4, format!("clause (1): {g} occurs over every field"), true));
        true
    } else {
        let even = q.is_even_degree();
        reasons.push(Reason::new(Citation::Thm1_4, "clause (2): F_{p^2} ⊂ k", even));
        let mut ok = even;
        for n in &triggers {
            let c = Condition::not_pm_one(u64::from(*n));
            let holds = c.eval(p);
            reasons.push(Reason::new(Citation::Thm1_4, format!("clause (2), C{n} ⊂ {g}: {c}"), holds));
            ok &= holds;
        }
        ok
    };
    Ok(ExistenceVerdict {
        group: g,
        q: *q,
        exists_rigid: exists,
        exists_rigid_symplectic: exists,
        rigid_basis: if exists { Basis::Theorem } else { Basis::NotDetermined },
        symplectic_basis: Basis::Theorem,
        reasons,
        weil_options: vec![],
        supersingular_forced: !triggers.is_empty(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64) -> PrimePower {
        PrimePower::from_q(n).unwrap()
    }

    #[test]
    fn even_degree_examples() {
        let v = exists_over_even_degree(GroupId::SL2F5, 3).unwrap();
        assert!(v.exists_rigid && v.exists_rigid_symplectic);
        assert_eq!(v.to_string(), "rigid: yes; symplectic: yes [Thm 6.2]");
        let v = exists_over_even_degree(GroupId::Cyclic(8), 7).unwrap();
        assert!(v.exists_rigid && !v.exists_rigid_symplectic);
        let v = exists_over_even_degree(GroupId::Cyclic(4), 5).unwrap();
        assert!(v.exists_rigid && v.exists_rigid_symplectic);
        assert_eq!(v.rigid_basis, Basis::Theorem);
        let v = exists_over_even_degree(GroupId::Cyclic(6), 3).unwrap();
        assert_eq!(v.rigid_basis, Basis::Sufficient);
        assert!(exists_over_even_degree(GroupId::Cyclic(2), 3).is_err());
        assert!(exists_over_even_degree(GroupId::C3xQ8, 7).is_err());
    }

    #[test]
    fn prime_field_examples() {
        let v = exists_over_prime_field(GroupId::Cyclic(6), 7).unwrap();
        assert!(v.exists_rigid_symplectic);
        assert_eq!(v.rigid_basis, Basis::Sufficient);
        assert!(exists_over_prime_field(GroupId::BinaryDihedral(12), 5).unwrap().exists_rigid);
        assert!(!exists_over_prime_field(GroupId::BinaryDihedral(12), 3).unwrap().exists_rigid);
        let v = exists_over_prime_field(GroupId::BinaryDihedral(16), 7).unwrap();
        assert!(!v.exists_rigid);
        assert_eq!(v.rigid_basis, Basis::NotDetermined);
    }

    #[test]
    fn odd_degree_examples() {
        let v = exists_over_odd_degree(GroupId::Cyclic(4), &q(7)).unwrap();
        let zero = v.weil_options.iter().find(|o| o.shape == WeilShape::QuarticZero).unwrap();
        assert!(zero.holds && !zero.descriptors.is_empty());
        let diff = |g, n| {
            exists_over_odd_degree(g, &q(n))
                .unwrap()
                .weil_options
                .into_iter()
                .find(|o| o.shape == WeilShape::DiffSquare)
                .unwrap()
                .holds
        };
        assert!(!diff(GroupId::BinaryDihedral(8), 17));
        assert!(diff(GroupId::BinaryDihedral(8), 7));
        assert!(diff(GroupId::BinaryDihedral(8), 343));
        let sum12 = exists_over_odd_degree(GroupId::BinaryDihedral(12), &q(7)).unwrap();
        let opt = sum12.weil_options.iter().find(|o| o.shape == WeilShape::SumSquare).unwrap();
        assert!(!opt.holds);
        assert!(exists_over_odd_degree(GroupId::Cyclic(4), &q(9)).is_err());
        assert!(exists_over_odd_degree(GroupId::Cyclic(3), &q(3)).is_err());
        let special = exists_over_odd_degree(GroupId::Cyclic(8), &q(3)).unwrap();
        assert!(special.exists_rigid);
        assert_eq!(special.rigid_basis, Basis::TableAmbiguity);
        let none = exists_over_odd_degree(GroupId::Cyclic(8), &q(7)).unwrap();
        assert!(!none.exists_rigid);
    }

    #[test]
    fn katsura_examples() {
        assert!(!katsura_refinement(GroupId::SL2F5, &q(7)).unwrap().exists_rigid_symplectic);
        assert!(katsura_refinement(GroupId::BinaryDihedral(8), &q(7)).unwrap().exists_rigid_symplectic);
        assert!(katsura_refinement(GroupId::Cyclic(8), &q(9)).unwrap().exists_rigid_symplectic);
        assert!(!katsura_refinement(GroupId::Cyclic(8), &q(49)).unwrap().exists_rigid_symplectic);
        assert!(katsura_refinement(GroupId::Cyclic(4), &q(4)).is_err());
        assert!(katsura_refinement(GroupId::Cyclic(6), &q(9)).is_err());
    }
}
