//! Singularities of `A/G`, the Frobenius action on their exceptional curves,
//! and the Néron–Severi characteristic polynomial, trace, point count and
//! zeta function of the generalized Kummer surface.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::citation::Citation;
use crate::congruence::Condition;
use crate::error::{Error, Result};
use crate::groups::{facts, GroupId};
use crate::numtheory::{
    cyclotomic, divisors, euler_phi, factorize, moebius, pow_mod, IntPolynomial, Parity, PrimePower,
};
use crate::weil::symmetric::power_sums;
use crate::weil::WeilShape;

/// `|A^g|` for a rigid `g` of prime-power order `n = l^r` on an abelian variety of
/// dimension `dim`: the fixed locus is a subgroup of `A[l]` of order `l^{2 dim / φ(n)}`.
pub fn fixed_points_in_dim(n: u64, dim: u64) -> Result<u64> {
    let fac = factorize(n);
    if fac.len() != 1 {
        return Err(Error::OutOfScope(format!("{n} is not a prime power")));
    }
    let (ell, _) = fac[0];
    let phi = euler_phi(n);
    if (2 * dim) % phi != 0 {
        return Err(Error::OutOfScope(format!("φ({n}) = {phi} does not divide {}", 2 * dim)));
    }
    ell.checked_pow(((2 * dim) / phi) as u32).ok_or(Error::Overflow)
}

/// Fixed points of a rigid automorphism of order `n` on an abelian surface.
pub fn cyclic_fixed_points(n: u64) -> Result<u64> {
    fixed_points_in_dim(n, 2)
}

/// A Dynkin diagram of a rational double point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ADEType {
    A(u32),
    D(u32),
    E(u32),
}

impl ADEType {
    pub fn new(letter: char, m: u32) -> Result<Self> {
        match letter.to_ascii_uppercase() {
            'A' if m >= 1 => Ok(ADEType::A(m)),
            'D' if m >= 4 => Ok(ADEType::D(m)),
            'E' if (6..=8).contains(&m) => Ok(ADEType::E(m)),
            _ => Err(Error::InvalidNotation(format!("{letter}{m} is not a Dynkin type"))),
        }
    }

    pub fn node_count(&self) -> u32 {
        match *self {
            ADEType::A(m) | ADEType::D(m) | ADEType::E(m) => m,
        }
    }

    /// Quotient singularity `C^2 / H` for a finite `H ⊂ SL_2`.
    pub fn of_stabilizer(h: GroupId) -> Result<Self> {
        match h {
            GroupId::Cyclic(m) => ADEType::new('A', m - 1),
            GroupId::BinaryDihedral(order) => ADEType::new('D', order / 4 + 2),
            GroupId::SL2F3 => Ok(ADEType::E(6)),
            GroupId::ESL2F3 => Ok(ADEType::E(7)),
            GroupId::SL2F5 => Ok(ADEType::E(8)),
            other => Err(Error::OutOfScope(format!("{other} is not a stabilizer in SL_2"))),
        }
    }

    fn rank_key(&self) -> (u8, u32) {
        match *self {
            ADEType::E(m) => (0, m),
            ADEType::D(m) => (1, m),
            ADEType::A(m) => (2, m),
        }
    }
}

impl fmt::Display for ADEType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ADEType::A(m) => write!(f, "A{m}"),
            ADEType::D(m) => write!(f, "D{m}"),
            ADEType::E(m) => write!(f, "E{m}"),
        }
    }
}

impl FromStr for ADEType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !matches!(c, '_' | '{' | '}' | ' ')).collect();
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(|| Error::InvalidNotation("empty Dynkin type".into()))?;
        let m: u32 = chars.as_str().parse().map_err(|_| Error::InvalidNotation(format!("bad Dynkin type '{s}'")))?;
        ADEType::new(letter, m)
    }
}

impl TryFrom<String> for ADEType {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ADEType> for String {
    fn from(t: ADEType) -> String {
        t.to_string()
    }
}

/// Frobenius action on the exceptional curves over one singular point,
/// relative to the Frobenius orbit of that point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphAction {
    Trivial,
    ChainFlip,
    Unknown,
}

/// `count` singular points of one Dynkin type; with field data, they fall into
/// Frobenius orbits of size `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularOrbit {
    pub ade: ADEType,
    pub count: u32,
    pub degree: u32,
    pub graph_action: GraphAction,
}

impl SingularOrbit {
    /// Geometric data only.
    pub fn geometric(ade: ADEType, count: u32) -> Self {
        SingularOrbit { ade, count, degree: 1, graph_action: GraphAction::Unknown }
    }

    pub fn with_field_data(ade: ADEType, count: u32, degree: u32, graph_action: GraphAction) -> Result<Self> {
        if count == 0 || degree == 0 || count % degree != 0 {
            return Err(Error::Inconsistent(format!(
                "{count} points of type {ade} do not split into orbits of size {degree}"
            )));
        }
        if graph_action == GraphAction::ChainFlip && !matches!(ade, ADEType::A(_)) {
            return Err(Error::Inconsistent(format!("chain flip on {ade}")));
        }
        Ok(SingularOrbit { ade, count, degree, graph_action })
    }
}

/// The singular points of `A/G` over the algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularConfig {
    pub group: GroupId,
    pub case_tag: Option<char>,
    pub orbits: Vec<SingularOrbit>,
}

/// A multiset of Dynkin types in the order `E`, `D`, `A`, largest first.
pub type AdeMultiset = Vec<(ADEType, u32)>;

fn canonical_multiset(items: impl IntoIterator<Item = (ADEType, u32)>) -> AdeMultiset {
    let mut merged: BTreeMap<(u8, std::cmp::Reverse<u32>), (ADEType, u32)> = BTreeMap::new();
    for (t, c) in items {
        let (k, m) = t.rank_key();
        merged.entry((k, std::cmp::Reverse(m))).or_insert((t, 0)).1 += c;
    }
    merged.into_values().filter(|&(_, c)| c > 0).collect()
}

/// Prints `E8 + D4 + A4 + 2A2`.
pub fn format_multiset(items: &[(ADEType, u32)]) -> String {
    items.iter().map(|(t, c)| if *c == 1 { t.to_string() } else { format!("{c}{t}") }).collect::<Vec<_>>().join(" + ")
}

/// Parses `2D_4+3A_3+2A_1` or `2D4 + 3A3 + 2A1`.
pub fn parse_multiset(s: &str) -> Result<AdeMultiset> {
    let mut items = Vec::new();
    for term in s.split('+') {
        let term: String = term.chars().filter(|c| !c.is_whitespace() && *c != '$').collect();
        let split = term
            .find(|c: char| c.is_ascii_alphabetic())
            .ok_or_else(|| Error::InvalidNotation(format!("bad term '{term}'")))?;
        let count: u32 = if split == 0 {
            1
        } else {
            term[..split].parse().map_err(|_| Error::InvalidNotation(format!("bad count in '{term}'")))?
        };
        items.push((term[split..].parse::<ADEType>()?, count));
    }
    Ok(canonical_multiset(items))
}

impl SingularConfig {
    pub fn multiset(&self) -> AdeMultiset {
        canonical_multiset(self.orbits.iter().map(|o| (o.ade, o.count)))
    }

    pub fn node_count(&self) -> u32 {
        self.orbits.iter().map(|o| o.count * o.ade.node_count()).sum()
    }
}

impl fmt::Display for SingularConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_multiset(&self.multiset()))
    }
}

/// Singular points of `A/G`: a point with stabilizer `H` lies in an orbit of
/// size `|G|/|H|`, so `N(H)` points give `N(H) |H| / |G|` singularities of type `C^2/H`.
pub fn singular_config(g: GroupId) -> Result<Vec<SingularConfig>> {
    let f = facts(g);
    if f.stabilizer_tables.is_empty() {
        return Err(Error::OutOfScope(format!("{g} is not in the singularity classification")));
    }
    let order = u64::from(f.order);
    f.stabilizer_tables
        .iter()
        .map(|table| {
            let mut items = Vec::new();
            for &(h, n) in &table.entries {
                let weighted = n * u64::from(h.order());
                if weighted % order != 0 {
                    return Err(Error::Inconsistent(format!("N({h}) = {n} points do not form whole {g}-orbits")));
                }
                items.push((ADEType::of_stabilizer(h)?, (weighted / order) as u32));
            }
            let orbits = canonical_multiset(items)
                .into_iter()
                .map(|(ade, count)| SingularOrbit::geometric(ade, count))
                .collect();
            Ok(SingularConfig { group: g, case_tag: table.case_tag, orbits })
        })
        .collect()
}

/// Every point with a nontrivial stabilizer is `l`-torsion for each prime `l`
/// dividing the order of its stabilizer, and `A[l]` has `l^4` points. The points of
/// `A[l]` whose stabilizer has order prime to `l` are free, so they form whole orbits.
pub fn check_torsion_conservation(g: GroupId) -> Result<()> {
    let f = facts(g);
    let order = u64::from(f.order);
    for table in &f.stabilizer_tables {
        for (ell, _) in factorize(order) {
            let marked: u64 =
                table.entries.iter().filter(|(h, _)| u64::from(h.order()) % ell == 0).map(|&(_, n)| n).sum();
            let total = ell.pow(4);
            if marked > total || (total - marked) % order != 0 {
                return Err(Error::Inconsistent(format!(
                    "{g}: {marked} marked points in A[{ell}] leave {} free points",
                    total as i64 - marked as i64
                )));
            }
        }
    }
    Ok(())
}

/// Counting pairs `(g, x)` with `g ≠ 1`, `gx = x` in two ways:
/// `Σ_H N(H)(|H| - 1) = Σ_{g ≠ 1} |A^g|`.
pub fn check_fixed_point_balance(g: GroupId) -> Result<()> {
    let f = facts(g);
    let by_elements: u64 = f
        .element_orders
        .iter()
        .filter(|(&n, _)| n > 1)
        .map(|(&n, &count)| u64::from(count) * cyclic_fixed_points(u64::from(n)).unwrap_or(1))
        .sum();
    for table in &f.stabilizer_tables {
        let by_points: u64 = table.entries.iter().map(|&(h, n)| n * (u64::from(h.order()) - 1)).sum();
        if by_points != by_elements {
            return Err(Error::Inconsistent(format!(
                "{g}: {by_points} fixed pairs from stabilizers, {by_elements} from elements"
            )));
        }
    }
    Ok(())
}

/// Lower bound or exact value of the Picard number of `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsRank {
    pub bound: u32,
    pub exact: bool,
}

impl fmt::Display for NsRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "rank = {}", self.bound)
        } else {
            write!(f, "rank ≥ {}", self.bound)
        }
    }
}

/// Exceptional classes plus one ample class, and rank 22 once the exceptional
/// classes reach 20.
pub fn ns_rank_bound(c: &SingularConfig) -> NsRank {
    let nodes = c.node_count();
    if nodes == 20 {
        NsRank { bound: 22, exact: true }
    } else {
        NsRank { bound: nodes + 1, exact: false }
    }
}

/// Frobenius on the `A_{n/r-1}` chain over the image of a `G = C_n`-fixed point
/// of degree `r`: it flips the chain iff `zeta_{n/r}` is not in `F_{q^r}`.
pub fn graph_frobenius(n: u64, r: u64, q: &PrimePower) -> Result<GraphAction> {
    if n % q.p() == 0 {
        return Err(Error::OutOfScope(format!("p = {} divides n = {n}", q.p())));
    }
    if r == 0 || n % r != 0 || n / r < 2 {
        return Err(Error::OutOfScope(format!("need r | n and n/r >= 2, got n = {n}, r = {r}")));
    }
    let m = n / r;
    let qr = pow_mod(q.q() % m, r, m);
    Ok(if qr == 1 % m { GraphAction::Trivial } else { GraphAction::ChainFlip })
}

/// Frobenius on the `D4` graph over the origin of `A/Q8`, for `p > 2`.
pub fn q8_origin_graph_action(q: &PrimePower) -> Result<GraphAction> {
    if q.p() == 2 {
        return Err(Error::OutOfScope("Q8 origin action needs p > 2".into()));
    }
    Ok(GraphAction::Trivial)
}

/// Degree contributions `d_r` of cyclotomic factors, before the total is known.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsFragment {
    pub parts: BTreeMap<u32, u32>,
}

impl NsFragment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, r: u32, d: u32) {
        if d > 0 {
            *self.parts.entry(r).or_default() += d;
        }
    }

    pub fn merge(&mut self, other: &NsFragment) {
        for (&r, &d) in &other.parts {
            self.add(r, d);
        }
    }

    /// Adds the permutation spectrum of a `k`-cycle: `t^k - 1 = Π_{r | k} Φ_r`.
    pub fn add_cycle(&mut self, k: u32, times: u32) {
        for r in divisors(u64::from(k)) {
            self.add(r as u32, euler_phi(r) as u32 * times);
        }
    }

    pub fn total(&self) -> u32 {
        self.parts.values().sum()
    }
}

/// The Frobenius characteristic polynomial on `NS ⊗ Q` of a rank-22 surface,
/// as degree contributions `d_r` of the factors `Φ_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<u32, u32>", into = "BTreeMap<u32, u32>")]
pub struct NSCharPoly {
    parts: BTreeMap<u32, u32>,
}

impl NSCharPoly {
    pub fn new(parts: BTreeMap<u32, u32>) -> Result<Self> {
        let parts: BTreeMap<u32, u32> = parts.into_iter().filter(|&(_, d)| d > 0).collect();
        for (&r, &d) in &parts {
            if r == 0 {
                return Err(Error::InvalidNotation("cyclotomic index 0".into()));
            }
            let phi = euler_phi(u64::from(r)) as u32;
            if d % phi != 0 {
                return Err(Error::InvalidNotation(format!("d_{r} = {d} is not a multiple of φ({r}) = {phi}")));
            }
        }
        let total: u32 = parts.values().sum();
        if total != 22 {
            return Err(Error::InvalidNotation(format!("degrees sum to {total}, not 22")));
        }
        Ok(NSCharPoly { parts })
    }

    pub fn from_fragment(f: &NsFragment) -> Result<Self> {
        Self::new(f.parts.clone())
    }

    pub fn parts(&self) -> &BTreeMap<u32, u32> {
        &self.parts
    }

    pub fn degree_of(&self, r: u32) -> u32 {
        self.parts.get(&r).copied().unwrap_or(0)
    }

    /// `P_2(t) = Π Φ_r(t)^{d_r / φ(r)}`.
    pub fn polynomial(&self) -> IntPolynomial {
        self.parts.iter().map(|(&r, &d)| cyclotomic(u64::from(r)).pow(d / euler_phi(u64::from(r)) as u32)).product()
    }
}

impl TryFrom<BTreeMap<u32, u32>> for NSCharPoly {
    type Error = Error;

    fn try_from(parts: BTreeMap<u32, u32>) -> Result<Self> {
        NSCharPoly::new(parts)
    }
}

impl From<NSCharPoly> for BTreeMap<u32, u32> {
    fn from(n: NSCharPoly) -> Self {
        n.parts
    }
}

impl fmt::Display for NSCharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.parts.iter().map(|(r, d)| if *d == 1 { r.to_string() } else { format!("{r}^{d}") }).collect();
        f.write_str(&terms.join(","))
    }
}

impl FromStr for NSCharPoly {
    type Err = Error;

    /// Reads `1^21,2` or `(1^{10},3^12)`; exponents are degree contributions.
    fn from_str(s: &str) -> Result<Self> {
        let body: String = s.chars().filter(|c| !matches!(c, ' ' | '(' | ')' | '{' | '}' | '$')).collect();
        let bad = |t: &str| Error::InvalidNotation(format!("bad term '{t}' in '{s}'"));
        let mut parts = BTreeMap::new();
        for term in body.split(',') {
            let (r, d) = match term.split_once('^') {
                Some((r, d)) => (r, d),
                None => (term, "1"),
            };
            let r: u32 = r.parse().map_err(|_| bad(term))?;
            let d: u32 = d.parse().map_err(|_| bad(term))?;
            if d == 0 || parts.insert(r, d).is_some() {
                return Err(bad(term));
            }
        }
        NSCharPoly::new(parts)
    }
}

/// Spectrum of Frobenius on the exceptional curves over one family of
/// singular points. Each Frobenius orbit of size `d` permutes the nodes; a node
/// fixed by the relative action gives a `d`-cycle, a flipped pair a `2d`-cycle.
pub fn exceptional_charpoly(o: &SingularOrbit) -> Result<NsFragment> {
    if o.degree == 0 || o.count % o.degree != 0 {
        return Err(Error::Inconsistent(format!("{} points in orbits of size {}", o.count, o.degree)));
    }
    let orbits = o.count / o.degree;
    let nodes = o.ade.node_count();
    let (fixed, pairs) = match (o.graph_action, o.ade) {
        (GraphAction::Trivial, _) => (nodes, 0),
        (GraphAction::ChainFlip, ADEType::A(m)) => (m % 2, m / 2),
        (GraphAction::ChainFlip, t) => {
            return Err(Error::Inconsistent(format!("chain flip on {t}")));
        }
        (GraphAction::Unknown, t) => {
            return Err(Error::Inconsistent(format!("Frobenius action on the {t} graph is not determined")));
        }
    };
    let mut frag = NsFragment::new();
    frag.add_cycle(o.degree, orbits * fixed);
    frag.add_cycle(2 * o.degree, orbits * pairs);
    Ok(frag)
}

/// Frobenius on `H^2(A)^G` for `f_A = (t^2 + eps q)^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantH {
    pub poly: IntPolynomial,
    pub fragment: NsFragment,
}

pub fn invariant_h_poly(g: GroupId, eps: i8, q: &PrimePower) -> Result<InvariantH> {
    if eps != 1 && eps != -1 {
        return Err(Error::OutOfScope(format!("sign {eps}")));
    }
    let qb = q.q_big();
    let lin = |sign: i64| IntPolynomial::linear_root(BigInt::from(sign) * &qb);
    let eq = i64::from(eps);
    let (poly, ones, twos) = match g {
        GroupId::Cyclic(3) | GroupId::Cyclic(4) | GroupId::Cyclic(6) => (lin(1).pow(2) * lin(-1).pow(2), 2, 2),
        GroupId::BinaryDihedral(8) | GroupId::BinaryDihedral(12) | GroupId::SL2F3 => {
            // (t + eps q)^2 (t - eps q)
            let poly = lin(-eq).pow(2) * lin(eq);
            if eps == -1 {
                (poly, 2, 1)
            } else {
                (poly, 1, 2)
            }
        }
        other => return Err(Error::OutOfScope(format!("no invariant cohomology formula for {other}"))),
    };
    let mut fragment = NsFragment::new();
    fragment.add(1, ones);
    fragment.add(2, twos);
    Ok(InvariantH { poly, fragment })
}

/// Exceptional classes plus the invariant part of `NS(A)`.
pub fn assemble_ns(orbits: &[SingularOrbit], h: &NsFragment) -> Result<NSCharPoly> {
    let mut frag = h.clone();
    for o in orbits {
        frag.merge(&exceptional_charpoly(o)?);
    }
    if frag.total() != 22 {
        return Err(Error::Inconsistent(format!(
            "exceptional and invariant classes have total degree {}, not 22",
            frag.total()
        )));
    }
    NSCharPoly::from_fragment(&frag)
}

/// `Tr = Σ_r μ(r) d_r / φ(r)`.
pub fn trace_of(n: &NSCharPoly) -> i64 {
    n.parts
        .iter()
        .map(|(&r, &d)| i64::from(moebius(u64::from(r))) * i64::from(d) / euler_phi(u64::from(r)) as i64)
        .sum()
}

/// Trace of `F^k`: each block of primitive `r`-th roots contributes a Ramanujan sum.
pub fn trace_of_power(n: &NSCharPoly, k: u64) -> i64 {
    let ramanujan = |r: u64| -> i64 {
        divisors(num_integer::gcd(r, k)).into_iter().map(|d| i64::from(moebius(r / d)) * d as i64).sum()
    };
    n.parts.iter().map(|(&r, &d)| ramanujan(u64::from(r)) * i64::from(d) / euler_phi(u64::from(r)) as i64).sum()
}

/// `|X(F_q)| = 1 + q Tr + q^2`.
pub fn k3_point_count(q: &PrimePower, tr: i64) -> BigInt {
    let qb = q.q_big();
    BigInt::one() + &qb * BigInt::from(tr) + &qb * &qb
}

/// `Z_X(t) = 1 / ((1 - t) P_2(qt) (1 - q^2 t))`, kept as a list of
/// denominator factors with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaDescriptor {
    pub q: PrimePower,
    pub denominator: Vec<(IntPolynomial, u32)>,
}

impl ZetaDescriptor {
    pub fn denominator_poly(&self) -> IntPolynomial {
        self.denominator.iter().map(|(f, e)| f.pow(*e)).product()
    }

    /// `N_1, ..., N_count` from `log Z = Σ N_m t^m / m`.
    pub fn point_counts(&self, count: usize) -> Vec<BigInt> {
        let den = self.denominator_poly();
        let deg = den.degree().unwrap_or(0);
        power_sums(&den.reversed(deg), count)
    }
}

impl fmt::Display for ZetaDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .denominator
            .iter()
            .map(|(p, e)| if *e == 1 { format!("({p})") } else { format!("({p})^{e}") })
            .collect();
        write!(f, "1 / {}", parts.join(""))
    }
}

pub fn k3_zeta(q: &PrimePower, n: &NSCharPoly) -> ZetaDescriptor {
    let qb = q.q_big();
    let mut denominator = vec![(IntPolynomial::from_i64(&[1, -1]), 1)];
    for (&r, &d) in &n.parts {
        let phi = euler_phi(u64::from(r));
        // Π over primitive r-th roots ζ of (1 - ζ q t)
        let factor = cyclotomic(u64::from(r)).reversed(phi as usize).scale_var(&qb);
        denominator.push((factor, d / phi as u32));
    }
    denominator.push((IntPolynomial::new(vec![BigInt::one(), -(&qb * &qb)]), 1));
    ZetaDescriptor { q: *q, denominator }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ArtinVerdict {
    Accept,
    Reject { reason: String, citation: Citation },
}

impl ArtinVerdict {
    pub fn accepted(&self) -> bool {
        matches!(self, ArtinVerdict::Accept)
    }
}

/// Over an odd-degree field, Frobenius cannot act on `NS` through odd-order roots of unity only.
pub fn artin_check(q: &PrimePower, n: &NSCharPoly) -> ArtinVerdict {
    if q.is_even_degree() {
        return ArtinVerdict::Accept;
    }
    if n.degree_of(1) == 22 {
        return ArtinVerdict::Reject {
            reason: "trivial Frobenius on NS needs p^2 | q".into(),
            citation: Citation::Artin,
        };
    }
    if n.parts.keys().all(|r| r % 2 == 1) {
        return ArtinVerdict::Reject {
            reason: "some even r must have d_r > 0 when q is an odd power of p".into(),
            citation: Citation::Artin,
        };
    }
    ArtinVerdict::Accept
}

/// A row of the supersingular Kummer trace tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub trace: i64,
    pub zeta: NSCharPoly,
    pub group: GroupId,
    pub condition: Condition,
    pub shape: WeilShape,
    pub citation: Citation,
}

fn rows_for(parity: Parity) -> Vec<(&'static str, u32, Condition, WeilShape)> {
    use WeilShape::*;
    let any = Condition::greater(2);
    match parity {
        Parity::Even => vec![
            ("1^22", 2, any.clone(), LinearFourth),
            ("1^20,2^2", 4, any.clone(), DiffSquare),
            ("1^18,2^4", 2, any.clone(), DiffSquare),
            ("1^14,2^4,4^4", 2, any.clone(), SumTimesLinear),
            ("1^15,2^7", 4, any.clone(), DiffSquare),
            ("1^14,2^8", 2, any.clone(), PmSquare),
            ("1^10,3^12", 2, any.clone(), TraceRootSquare),
            ("1^12,2^10", 2, any, DiffSquare),
            ("1^6,2^4,3^8,6^4", 2, Condition::not_congruent(1, 12), QuarticMinus),
        ],
        Parity::Odd => vec![
            ("1^21,2", 8, Condition::congruent(3, 4), DiffSquare),
            ("1^20,2^2", 4, Condition::congruent(1, 4), DiffSquare),
            ("1^20,2^2", 2, Condition::congruent(3, 4), SumSquare),
            ("1^18,2^4", 2, Condition::congruent(1, 4), DiffSquare),
            ("1^16,2^6", 2, Condition::congruent(3, 4), SumSquare),
            ("1^15,2^7", 4, Condition::congruent(1, 4), DiffSquare),
            ("1^14,2^8", 2, any.clone(), SumSquare),
            ("1^12,2^10", 2, any.clone(), DiffSquare),
            ("1^6,2^4,3^8,6^4", 2, any, QuarticMinus),
        ],
    }
}

/// Every tabulated row for the given parity, unfiltered.
pub fn trace_table_all(parity: Parity) -> Vec<TraceRow> {
    let citation = match parity {
        Parity::Even => Citation::Thm7_7,
        Parity::Odd => Citation::Thm7_12,
    };
    rows_for(parity)
        .into_iter()
        .map(|(zeta, order, condition, shape)| {
            let zeta: NSCharPoly = zeta.parse().expect("tabulated notation");
            let group = if order == 8 { GroupId::BinaryDihedral(8) } else { GroupId::Cyclic(order) };
            TraceRow { trace: trace_of(&zeta), zeta, group, condition, shape, citation }
        })
        .collect()
}

/// Rows whose congruence condition holds at `p`.
pub fn trace_table(parity: Parity, p: u64) -> Result<Vec<TraceRow>> {
    if !crate::numtheory::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::NotOddPrime(2));
    }
    Ok(trace_table_all(parity).into_iter().filter(|r| r.condition.eval(p)).collect())
}

/// The worked constructions that fix field data for the singular points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// `C4`, `q ≡ 1 mod 4`, all 2-torsion rational.
    C4Rational,
    /// `C4`, `q ≡ 1 mod 4`, Frobenius of order 2 on the 2-torsion.
    C4Mixed,
    /// `Q8`, `q` an odd power of `p ≡ 3 mod 4`, Frobenius acting as `i` on the 2-torsion.
    Q8OddDegree,
}

impl Construction {
    pub const ALL: [Construction; 3] = [Construction::C4Rational, Construction::C4Mixed, Construction::Q8OddDegree];

    pub fn citation(&self) -> Citation {
        match self {
            Construction::C4Rational | Construction::C4Mixed => Citation::Prop7_4,
            Construction::Q8OddDegree => Citation::Thm7_12,
        }
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c4-rational" => Ok(Construction::C4Rational),
            "c4-mixed" => Ok(Construction::C4Mixed),
            "q8-odd-degree" => Ok(Construction::Q8OddDegree),
            other => Err(Error::OutOfScope(format!("unknown construction '{other}'"))),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::C4Rational => "c4-rational",
            Construction::C4Mixed => "c4-mixed",
            Construction::Q8OddDegree => "q8-odd-degree",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    pub construction: Construction,
    pub q: PrimePower,
    pub config: SingularConfig,
    pub orbits: Vec<SingularOrbit>,
    pub h: InvariantH,
    pub ns: NSCharPoly,
    pub trace: i64,
    pub point_count: BigInt,
    pub artin: ArtinVerdict,
}

/// Singular points of type `A_{n-1}` over fixed points of a cyclic stabilizer of
/// order `n`, in Frobenius orbits of size `degree`.
fn cyclic_orbit(n: u64, count: u32, degree: u32, q: &PrimePower) -> Result<SingularOrbit> {
    let action = graph_frobenius(n, 1, &q.extend(degree)?)?;
    SingularOrbit::with_field_data(ADEType::new('A', n as u32 - 1)?, count, degree, action)
}

pub fn assemble_construction(c: Construction, q: &PrimePower) -> Result<Assembly> {
    let (group, case, eps, orbits) = match c {
        Construction::C4Rational | Construction::C4Mixed => {
            if q.q() % 4 != 1 {
                return Err(Error::OutOfScope(format!("{c} needs q ≡ 1 mod 4, q = {q}")));
            }
            let orbits = if c == Construction::C4Rational {
                vec![cyclic_orbit(4, 4, 1, q)?, cyclic_orbit(2, 6, 1, q)?]
            } else {
                vec![
                    cyclic_orbit(4, 2, 1, q)?,
                    cyclic_orbit(4, 2, 2, q)?,
                    cyclic_orbit(2, 2, 1, q)?,
                    cyclic_orbit(2, 4, 2, q)?,
                ]
            };
            (GroupId::Cyclic(4), None, -1, orbits)
        }
        Construction::Q8OddDegree => {
            if q.is_even_degree() || q.p() % 4 != 3 {
                return Err(Error::OutOfScope(format!("{c} needs q an odd power of p ≡ 3 mod 4, q = {q}")));
            }
            let d4 = ADEType::D(4);
            let origin = q8_origin_graph_action(q)?;
            // the other three D4 points are fixed by Frobenius = i, with trivial graph action by construction
            let orbits = vec![
                SingularOrbit::with_field_data(d4, 1, 1, origin)?,
                SingularOrbit::with_field_data(d4, 3, 1, GraphAction::Trivial)?,
                SingularOrbit::with_field_data(ADEType::A(1), 3, 1, GraphAction::Trivial)?,
            ];
            (GroupId::BinaryDihedral(8), Some('A'), -1, orbits)
        }
    };
    let config = singular_config(group)?
        .into_iter()
        .find(|cfg| cfg.case_tag == case)
        .ok_or_else(|| Error::Inconsistent(format!("no configuration for {group}")))?;
    let listed = canonical_multiset(orbits.iter().map(|o| (o.ade, o.count)));
    if listed != config.multiset() {
        return Err(Error::Inconsistent(format!(
            "field data {} does not match the singularities {}",
            format_multiset(&listed),
            config
        )));
    }
    let h = invariant_h_poly(group, eps, q)?;
    let ns = assemble_ns(&orbits, &h.fragment)?;
    let trace = trace_of(&ns);
    Ok(Assembly {
        construction: c,
        q: *q,
        config,
        orbits,
        h,
        point_count: k3_point_count(q, trace),
        artin: artin_check(q, &ns),
        ns,
        trace,
    })
}

impl NSCharPoly {
    /// All-ones spectrum, used as a neutral example.
    pub fn trivial() -> Self {
        NSCharPoly { parts: BTreeMap::from([(1, 22)]) }
    }
}

impl Default for NSCharPoly {
    fn default() -> Self {
        Self::trivial()
    }
}

impl NsFragment {
    pub fn is_empty(&self) -> bool {
        self.parts.values().all(|d| d.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64) -> PrimePower {
        PrimePower::from_q(n).unwrap()
    }

    #[test]
    fn fixed_points() {
        assert_eq!(cyclic_fixed_points(2).unwrap(), 16);
        assert_eq!(cyclic_fixed_points(3).unwrap(), 9);
        assert_eq!(cyclic_fixed_points(5).unwrap(), 5);
        assert_eq!(cyclic_fixed_points(8).unwrap(), 2);
        assert!(cyclic_fixed_points(7).is_err());
        assert!(cyclic_fixed_points(6).is_err());
    }

    #[test]
    fn configs() {
        let c6 = &singular_config(GroupId::Cyclic(6)).unwrap()[0];
        assert_eq!(c6.to_string(), "A5 + 4A2 + 5A1");
        assert_eq!(ns_rank_bound(c6).to_string(), "rank ≥ 19");
        let q20 = &singular_config(GroupId::BinaryDihedral(20)).unwrap()[0];
        assert_eq!(q20.to_string(), "D7 + A4 + 3A3");
        let q8 = singular_config(GroupId::BinaryDihedral(8)).unwrap();
        let shown: Vec<String> = q8.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, vec!["4D4 + 3A1", "2D4 + 3A3 + 2A1"]);
        assert!(singular_config(GroupId::C3xQ8).is_err());
        assert_eq!(parse_multiset("E_8+D_4+A_4+2A_2").unwrap(), singular_config(GroupId::SL2F5).unwrap()[0].multiset());
    }

    #[test]
    fn graph_actions() {
        assert_eq!(graph_frobenius(4, 1, &q(5)).unwrap(), GraphAction::Trivial);
        assert_eq!(graph_frobenius(4, 1, &q(7)).unwrap(), GraphAction::ChainFlip);
        assert_eq!(graph_frobenius(4, 1, &q(49)).unwrap(), GraphAction::Trivial);
        assert!(graph_frobenius(6, 1, &q(3)).is_err());
        assert_eq!(q8_origin_graph_action(&q(27)).unwrap(), GraphAction::Trivial);
    }

    #[test]
    fn exceptional_spectra() {
        let flip = SingularOrbit::with_field_data(ADEType::A(3), 1, 1, GraphAction::ChainFlip).unwrap();
        assert_eq!(exceptional_charpoly(&flip).unwrap().parts, BTreeMap::from([(1, 2), (2, 1)]));
        let pair = SingularOrbit::with_field_data(ADEType::A(1), 2, 2, GraphAction::Trivial).unwrap();
        assert_eq!(exceptional_charpoly(&pair).unwrap().parts, BTreeMap::from([(1, 1), (2, 1)]));
        let d4 = SingularOrbit::with_field_data(ADEType::D(4), 1, 1, GraphAction::Trivial).unwrap();
        assert_eq!(exceptional_charpoly(&d4).unwrap().parts, BTreeMap::from([(1, 4)]));
        assert!(exceptional_charpoly(&SingularOrbit::geometric(ADEType::A(1), 1)).is_err());
        assert!(SingularOrbit::with_field_data(ADEType::D(4), 1, 1, GraphAction::ChainFlip).is_err());
    }

    #[test]
    fn h_polys() {
        let h = invariant_h_poly(GroupId::Cyclic(4), -1, &q(5)).unwrap();
        assert_eq!(h.fragment.parts, BTreeMap::from([(1, 2), (2, 2)]));
        assert_eq!(h.poly, IntPolynomial::from_i64(&[625, 0, -50, 0, 1]));
        let h = invariant_h_poly(GroupId::BinaryDihedral(8), -1, &q(3)).unwrap();
        assert_eq!(h.fragment.parts, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(h.poly, IntPolynomial::from_i64(&[27, -9, -3, 1]));
        let h = invariant_h_poly(GroupId::BinaryDihedral(12), 1, &q(5)).unwrap();
        assert_eq!(h.fragment.parts, BTreeMap::from([(1, 1), (2, 2)]));
        assert!(invariant_h_poly(GroupId::Cyclic(2), 1, &q(5)).is_err());
    }

    #[test]
    fn notation_and_traces() {
        let n: NSCharPoly = "1^6,2^4,3^8,6^4".parse().unwrap();
        assert_eq!(trace_of(&n), 0);
        assert_eq!(trace_of(&"(1^{14},2^4,4^4)".parse().unwrap()), 10);
        assert_eq!(trace_of(&"1^22".parse().unwrap()), 22);
        assert_eq!(n.to_string(), "1^6,2^4,3^8,6^4");
        assert_eq!("1^21,2".parse::<NSCharPoly>().unwrap().to_string(), "1^21,2");
        assert!("1^10,3^6".parse::<NSCharPoly>().is_err());
        assert!("1^21,3".parse::<NSCharPoly>().is_err());
        assert_eq!(n.polynomial().degree(), Some(22));
    }

    #[test]
    fn point_counts_and_zeta() {
        assert_eq!(k3_point_count(&q(9), 18), BigInt::from(244));
        assert_eq!(k3_point_count(&q(5), 0), BigInt::from(26));
        assert_eq!(k3_point_count(&q(3), 20), BigInt::from(70));
        let z = k3_zeta(&q(9), &NSCharPoly::trivial());
        assert_eq!(z.denominator[1], (IntPolynomial::from_i64(&[1, -9]), 22));
        assert_eq!(z.denominator[2], (IntPolynomial::from_i64(&[1, -81]), 1));
        let n: NSCharPoly = "1^21,2".parse().unwrap();
        let z = k3_zeta(&q(7), &n);
        assert_eq!(z.denominator[2], (IntPolynomial::from_i64(&[1, 7]), 1));
        assert_eq!(z.point_counts(1)[0], k3_point_count(&q(7), trace_of(&n)));
    }

    #[test]
    fn artin() {
        let triv = NSCharPoly::trivial();
        assert!(!artin_check(&q(7), &triv).accepted());
        assert!(artin_check(&q(49), &triv).accepted());
        assert!(!artin_check(&q(7), &"1^10,3^12".parse().unwrap()).accepted());
        assert!(artin_check(&q(7), &"1^21,2".parse().unwrap()).accepted());
    }

    #[test]
    fn worked_constructions() {
        let a = assemble_construction(Construction::C4Rational, &q(5)).unwrap();
        assert_eq!(a.ns.to_string(), "1^20,2^2");
        assert_eq!(a.trace, 18);
        let b = assemble_construction(Construction::C4Mixed, &q(13)).unwrap();
        assert_eq!(b.ns.to_string(), "1^15,2^7");
        let c = assemble_construction(Construction::Q8OddDegree, &q(7)).unwrap();
        assert_eq!(c.ns.to_string(), "1^21,2");
        assert!(c.artin.accepted());
        assert!(assemble_construction(Construction::C4Rational, &q(7)).is_err());
        assert!(assemble_construction(Construction::Q8OddDegree, &q(5)).is_err());
    }

    #[test]
    fn tables() {
        let even = trace_table(Parity::Even, 7).unwrap();
        assert!(even.iter().any(|r| r.trace == 4 && r.shape == WeilShape::TraceRootSquare));
        let odd3 = trace_table(Parity::Odd, 3).unwrap();
        assert_eq!(odd3.len(), 6);
        assert!(odd3.iter().any(|r| r.trace == 20 && r.group == GroupId::BinaryDihedral(8)));
        let odd5 = trace_table(Parity::Odd, 5).unwrap();
        assert!(odd5.iter().any(|r| r.trace == 18 && r.group == GroupId::Cyclic(4)));
        assert!(trace_table(Parity::Even, 2).is_err());
        let even13 = trace_table(Parity::Even, 13).unwrap();
        assert!(even13.iter().all(|r| r.trace != 0));
    }
}
