//! Central simple algebras over abelian number fields, described by their
//! center, degree and local invariants in `Q/Z`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{rigid_algebra, GroupId};
use crate::numtheory::{
    euler_phi, is_prime, is_squarefree, splitting_in_cyclotomic, splitting_in_quadratic, splitting_in_real_cyclotomic,
    Splitting,
};

/// An abelian number field of the kinds that occur as centers and subfields here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawField")]
pub enum FieldDesc {
    Rationals,
    /// `Q(sqrt d)` with `d` square-free and not `-1` or `-3`.
    Quadratic {
        d: i64,
    },
    /// `Q(zeta_m)` with `m >= 3`, `m != 2 mod 4`.
    Cyclotomic {
        m: u64,
    },
    /// `Q(zeta_m)^real` of degree at least 3.
    RealCyclotomic {
        m: u64,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawField {
    Rationals,
    Quadratic { d: i64 },
    Cyclotomic { m: u64 },
    RealCyclotomic { m: u64 },
}

impl TryFrom<RawField> for FieldDesc {
    type Error = Error;

    fn try_from(raw: RawField) -> Result<Self> {
        match raw {
            RawField::Rationals => Ok(FieldDesc::Rationals),
            RawField::Quadratic { d } => FieldDesc::quadratic(d),
            RawField::Cyclotomic { m } => FieldDesc::cyclotomic(m),
            RawField::RealCyclotomic { m } => FieldDesc::real_cyclotomic(m),
        }
    }
}

fn odd_part_index(m: u64) -> u64 {
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

impl FieldDesc {
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidField(format!("Q(√{d}) is not a quadratic field")));
        }
        Ok(match d {
            -1 => FieldDesc::Cyclotomic { m: 4 },
            -3 => FieldDesc::Cyclotomic { m: 3 },
            _ => FieldDesc::Quadratic { d },
        })
    }

    pub fn cyclotomic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidField("Q(ζ_0)".into()));
        }
        let m = odd_part_index(m);
        Ok(if m <= 2 { FieldDesc::Rationals } else { FieldDesc::Cyclotomic { m } })
    }

    pub fn real_cyclotomic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidField("Q(ζ_0)^real".into()));
        }
        let m = odd_part_index(m);
        let deg = if m <= 2 { 1 } else { euler_phi(m) / 2 };
        Ok(match (deg, m) {
            (1, _) => FieldDesc::Rationals,
            (2, 5) => FieldDesc::Quadratic { d: 5 },
            (2, 8) => FieldDesc::Quadratic { d: 2 },
            (2, 12) => FieldDesc::Quadratic { d: 3 },
            _ => FieldDesc::RealCyclotomic { m },
        })
    }

    pub fn degree(&self) -> u64 {
        match *self {
            FieldDesc::Rationals => 1,
            FieldDesc::Quadratic { .. } => 2,
            FieldDesc::Cyclotomic { m } => euler_phi(m),
            FieldDesc::RealCyclotomic { m } => euler_phi(m) / 2,
        }
    }

    /// Number of real embeddings.
    pub fn real_places(&self) -> u32 {
        match *self {
            FieldDesc::Rationals => 1,
            FieldDesc::Quadratic { d } => {
                if d > 0 {
                    2
                } else {
                    0
                }
            }
            FieldDesc::Cyclotomic { .. } => 0,
            FieldDesc::RealCyclotomic { m } => (euler_phi(m) / 2) as u32,
        }
    }

    pub fn is_totally_real(&self) -> bool {
        u64::from(self.real_places()) == self.degree()
    }

    pub fn is_rationals(&self) -> bool {
        *self == FieldDesc::Rationals
    }

    /// The maximal totally real subfield of a CM field.
    pub fn real_subfield(&self) -> Option<FieldDesc> {
        match *self {
            FieldDesc::Cyclotomic { m } => FieldDesc::real_cyclotomic(m).ok(),
            FieldDesc::Quadratic { d } if d < 0 => Some(FieldDesc::Rationals),
            _ => None,
        }
    }

    /// Decomposition data of the rational prime `p`.
    pub fn splitting(&self, p: u64) -> Result<Splitting> {
        match *self {
            FieldDesc::Rationals => {
                if is_prime(p) {
                    Ok(Splitting { e: 1, f: 1, g: 1 })
                } else {
                    Err(Error::NotPrime(p))
                }
            }
            FieldDesc::Quadratic { d } => splitting_in_quadratic(p, d),
            FieldDesc::Cyclotomic { m } => splitting_in_cyclotomic(p, m),
            FieldDesc::RealCyclotomic { m } => splitting_in_real_cyclotomic(p, m),
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::Quadratic { d } => write!(f, "Q(√{d})"),
            FieldDesc::Cyclotomic { m } => write!(f, "Q(ζ_{m})"),
            FieldDesc::RealCyclotomic { m } => write!(f, "Q(ζ_{m})^real"),
        }
    }
}

/// A place of the center: a real embedding, or the `index`-th prime above `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Place {
    Real { index: u32 },
    Prime { p: u64, index: u32 },
}

impl Place {
    pub const INFINITY: Place = Place::Real { index: 0 };

    pub fn rational(p: u64) -> Place {
        Place::Prime { p, index: 0 }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Place::Real { index } => write!(f, "∞_{}", index + 1),
            Place::Prime { p, index: 0 } => write!(f, "{p}"),
            Place::Prime { p, index } => write!(f, "{p}.{index}"),
        }
    }
}

/// An element of `Q/Z`, kept in `[0, 1)`.
pub type Invariant = Ratio<i64>;

fn reduce(r: Invariant) -> Invariant {
    r - r.floor()
}

fn order(r: Invariant) -> i64 {
    *reduce(r).denom()
}

/// One nonzero local invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalInvariant {
    pub place: Place,
    pub value: Invariant,
}

/// A central simple algebra of dimension `degree^2` over `center`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCsa", into = "RawCsa")]
pub struct CSADescriptor {
    center: FieldDesc,
    degree: u32,
    invariants: BTreeMap<Place, Invariant>,
}

#[derive(Serialize, Deserialize)]
struct RawCsa {
    center: FieldDesc,
    degree: u32,
    invariants: Vec<LocalInvariant>,
}

impl TryFrom<RawCsa> for CSADescriptor {
    type Error = Error;

    fn try_from(raw: RawCsa) -> Result<Self> {
        CSADescriptor::new(raw.center, raw.degree, raw.invariants.into_iter().map(|l| (l.place, l.value)))
    }
}

impl From<CSADescriptor> for RawCsa {
    fn from(a: CSADescriptor) -> Self {
        RawCsa { center: a.center, degree: a.degree, invariants: a.local_invariants() }
    }
}

impl CSADescriptor {
    /// Validates reciprocity, place existence, and denominators.
    pub fn new(
        center: FieldDesc,
        degree: u32,
        invariants: impl IntoIterator<Item = (Place, Invariant)>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidAlgebra(msg));
        if degree == 0 {
            return bad("degree must be positive".into());
        }
        let mut map = BTreeMap::new();
        let mut total = Invariant::zero();
        for (place, value) in invariants {
            let value = reduce(value);
            if map.contains_key(&place) {
                return bad(format!("place {place} listed twice"));
            }
            match place {
                Place::Real { index } => {
                    if index >= center.real_places() {
                        return bad(format!("{center} has no real place {place}"));
                    }
                    if !value.is_zero() && value != Invariant::new(1, 2) {
                        return bad(format!("real invariant {value} at {place}"));
                    }
                }
                Place::Prime { p, index } => {
                    let s = center.splitting(p)?;
                    if u64::from(index) >= s.g {
                        return bad(format!("{center} has only {} primes over {p}", s.g));
                    }
                }
            }
            if i64::from(degree) % order(value) != 0 {
                return bad(format!("invariant {value} at {place} does not divide degree {degree}"));
            }
            total += value;
            if !value.is_zero() {
                map.insert(place, value);
            }
        }
        if !reduce(total).is_zero() {
            return bad(format!("invariants sum to {} in Q/Z", reduce(total)));
        }
        Ok(CSADescriptor { center, degree, invariants: map })
    }

    /// The field `K` as an algebra over itself.
    pub fn field(center: FieldDesc) -> Self {
        CSADescriptor { center, degree: 1, invariants: BTreeMap::new() }
    }

    /// `M(n, self)`.
    pub fn matrix(&self, n: u32) -> Self {
        CSADescriptor { degree: self.degree * n, ..self.clone() }
    }

    pub fn center(&self) -> FieldDesc {
        self.center
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim_over_center(&self) -> u64 {
        u64::from(self.degree).pow(2)
    }

    pub fn dim_over_q(&self) -> u64 {
        self.dim_over_center() * self.center.degree()
    }

    pub fn invariant(&self, place: &Place) -> Invariant {
        self.invariants.get(place).copied().unwrap_or_else(Invariant::zero)
    }

    pub fn local_invariants(&self) -> Vec<LocalInvariant> {
        self.invariants.iter().map(|(&place, &value)| LocalInvariant { place, value }).collect()
    }

    /// Sum of all local invariants in `Q/Z`.
    pub fn reciprocity_sum(&self) -> Invariant {
        reduce(self.invariants.values().copied().sum())
    }

    /// Schur index: the least common multiple of the local orders.
    pub fn index(&self) -> u32 {
        self.invariants.values().fold(1i64, |acc, &v| acc.lcm(&order(v))) as u32
    }

    fn finite_primes(&self) -> BTreeSet<u64> {
        self.invariants
            .keys()
            .filter_map(|pl| match *pl {
                Place::Prime { p, .. } => Some(p),
                Place::Real { .. } => None,
            })
            .collect()
    }

    fn is_hp(&self) -> Option<u64> {
        if !self.center.is_rationals() || self.invariants.len() != 2 {
            return None;
        }
        let half = Invariant::new(1, 2);
        if self.invariant(&Place::INFINITY) != half {
            return None;
        }
        let p = *self.finite_primes().iter().next()?;
        (self.invariant(&Place::rational(p)) == half).then_some(p)
    }

    fn is_h_infty(&self) -> bool {
        let r = self.center.real_places();
        self.center.is_totally_real()
            && self.center.degree() % 2 == 0
            && self.invariants.len() == r as usize
            && (0..r).all(|index| self.invariant(&Place::Real { index }) == Invariant::new(1, 2))
    }
}

impl fmt::Display for CSADescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, n: u32, inner: String| {
            if n == 1 {
                write!(f, "{inner}")
            } else {
                write!(f, "M({n},{inner})")
            }
        };
        if self.invariants.is_empty() {
            return wrap(f, self.degree, self.center.to_string());
        }
        if self.index() == 2 {
            if let Some(p) = self.is_hp() {
                return wrap(f, self.degree / 2, format!("H_{p}"));
            }
            if self.is_h_infty() {
                return wrap(f, self.degree / 2, format!("H_∞({})", self.center));
            }
        }
        write!(f, "CSA({}; degree {}; ", self.center, self.degree)?;
        let parts: Vec<String> = self.invariants.iter().map(|(pl, v)| format!("{pl}: {v}")).collect();
        write!(f, "{})", parts.join(", "))
    }
}

/// `H_p`: the quaternion algebra over `Q` ramified at `∞` and `p`.
pub fn make_hp(p: u64) -> Result<CSADescriptor> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let half = Invariant::new(1, 2);
    CSADescriptor::new(FieldDesc::Rationals, 2, [(Place::INFINITY, half), (Place::rational(p), half)])
}

/// `H_∞(K)`: ramified exactly at the real places of a totally real `K` of even degree.
pub fn make_h_infty(k: FieldDesc) -> Result<CSADescriptor> {
    if !k.is_totally_real() || k.degree() % 2 != 0 {
        return Err(Error::InvalidField(format!("{k} is not totally real of even degree")));
    }
    let half = Invariant::new(1, 2);
    CSADescriptor::new(k, 2, (0..k.real_places()).map(|index| (Place::Real { index }, half)))
}

/// `L ⊗_Q H` for an algebra `H` with center `Q`; each local invariant is
/// multiplied by the local degree `[L_w : Q_v]`.
pub fn extend_scalars(h: &CSADescriptor, l: FieldDesc) -> Result<CSADescriptor> {
    if !h.center.is_rationals() {
        return Err(Error::OutOfScope(format!("scalar extension from center {}", h.center)));
    }
    let mut out = Vec::new();
    let at_inf = h.invariant(&Place::INFINITY);
    for index in 0..l.real_places() {
        out.push((Place::Real { index }, at_inf));
    }
    for p in h.finite_primes() {
        let s = l.splitting(p)?;
        let inv = h.invariant(&Place::rational(p)) * Invariant::from(s.local_degree() as i64);
        for index in 0..s.g as u32 {
            out.push((Place::Prime { p, index }, inv));
        }
    }
    CSADescriptor::new(l, h.degree, out)
}

pub fn is_split(h: &CSADescriptor) -> bool {
    h.invariants.is_empty()
}

fn divides(m: u64, r: Invariant) -> bool {
    m % order(r) as u64 == 0
}

/// Whether there is a homomorphism of `Q`-algebras `b -> a`.
///
/// `b` embeds in `a` exactly when the centralizer of the center of `b` in `a`
/// contains `b`; locally, this asks that every `[K_w : Q_v] inv_v(a) - inv_w(b)`
/// have order dividing the relative degree `deg a / ([K:Q] deg b)`.
pub fn csa_embeds_in(b: &CSADescriptor, a: &CSADescriptor) -> Result<bool> {
    if b.center == a.center {
        if a.degree % b.degree != 0 {
            return Ok(false);
        }
        let m = u64::from(a.degree / b.degree);
        let places: BTreeSet<Place> = a.invariants.keys().chain(b.invariants.keys()).copied().collect();
        return Ok(places.iter().all(|pl| divides(m, a.invariant(pl) - b.invariant(pl))));
    }
    if b.center.is_rationals() {
        let extended = extend_scalars(b, a.center)?;
        return csa_embeds_in(&extended, a);
    }
    if !a.center.is_rationals() {
        return Err(Error::OutOfScope(format!("embedding over {} into {}", b.center, a.center)));
    }
    let k = b.center;
    let outer = k.degree() * u64::from(b.degree);
    if u64::from(a.degree) % outer != 0 {
        return Ok(false);
    }
    let m = u64::from(a.degree) / outer;
    let a_inf = a.invariant(&Place::INFINITY);
    for index in 0..k.real_places() {
        if !divides(m, a_inf - b.invariant(&Place::Real { index })) {
            return Ok(false);
        }
    }
    // complex places carry 2 * inv_∞(a) = 0 and nothing from b
    let primes: BTreeSet<u64> = a.finite_primes().union(&b.finite_primes()).copied().collect();
    for p in primes {
        let s = k.splitting(p)?;
        let base = a.invariant(&Place::rational(p)) * Invariant::from(s.local_degree() as i64);
        for index in 0..s.g as u32 {
            if !divides(m, base - b.invariant(&Place::Prime { p, index })) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the field `l` embeds in `h`; requires `[l : center]` to divide the degree of `h`.
pub fn field_embeds_in_csa(l: FieldDesc, h: &CSADescriptor) -> Result<bool> {
    let rel = if h.center.is_rationals() {
        l.degree()
    } else if l == h.center {
        1
    } else if l.real_subfield() == Some(h.center) {
        return relative_field_embeds(l, h);
    } else {
        return Err(Error::OutOfScope(format!("{l} over center {}", h.center)));
    };
    if u64::from(h.degree) % rel != 0 {
        return Err(Error::InvalidAlgebra(format!(
            "[{l} : {}] = {rel} does not divide the degree {} of {h}",
            h.center, h.degree
        )));
    }
    csa_embeds_in(&CSADescriptor::field(l), h)
}

/// A CM field `L` over its real subfield `K = Z(h)`: `L` embeds iff `[L:K] = 2`
/// divides the degree and, at every place `w` of `K`, the local index divides
/// `(deg h / 2) [L_v : K_w]`.
fn relative_field_embeds(l: FieldDesc, h: &CSADescriptor) -> Result<bool> {
    let k = h.center;
    if h.degree % 2 != 0 {
        return Err(Error::InvalidAlgebra(format!("[{l} : {k}] = 2 does not divide the degree {} of {h}", h.degree)));
    }
    let half = i64::from(h.degree / 2);
    for inv in h.local_invariants() {
        let local = match inv.place {
            Place::Real { .. } => 2,
            Place::Prime { p, .. } => (l.splitting(p)?.local_degree() / k.splitting(p)?.local_degree()) as i64,
        };
        if (half * local) % order(inv.value) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `H_p` maps to `H_∞(Q(sqrt d))`, computed from local invariants.
pub fn hp_into_hinfty(p: u64, d: i64) -> Result<bool> {
    let k = FieldDesc::quadratic(d)?;
    if d < 0 {
        return Err(Error::InvalidField(format!("{k} is not real")));
    }
    csa_embeds_in(&make_hp(p)?, &make_h_infty(k)?)
}

/// Whether `Q[G]^rig` maps to `M(2, H_p)`, computed from local invariants.
pub fn rigid_embeds_in_m2hp(g: GroupId, p: u64) -> Result<bool> {
    let alg = rigid_algebra(g);
    let covered = matches!(
        g,
        GroupId::Cyclic(n) if n > 2
    ) || matches!(g, GroupId::BinaryDihedral(_) | GroupId::SL2F3 | GroupId::ESL2F3 | GroupId::SL2F5);
    if !covered {
        return Err(Error::OutOfScope(format!("Q[{g}]^rig = {alg} is not in the embedding table")));
    }
    csa_embeds_in(&alg, &make_hp(p)?.matrix(2))
}

struct Parser<'a> {
    s: &'a str,
}

impl<'a> Parser<'a> {
    fn eat(&mut self, tok: &str) -> bool {
        if let Some(rest) = self.s.strip_prefix(tok) {
            self.s = rest;
            true
        } else {
            false
        }
    }

    fn eat_any(&mut self, toks: &[&str]) -> bool {
        toks.iter().any(|t| self.eat(t))
    }

    fn expect(&mut self, toks: &[&str]) -> Result<()> {
        if self.eat_any(toks) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {}", toks[0])))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::InvalidAlgebra(format!("{msg} at '{}'", self.s))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat_any(&["-", "−"]);
        let digits: String = self.s.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        self.s = &self.s[digits.len()..];
        let v: i64 = digits.parse().map_err(|_| self.error("integer too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn braced_int(&mut self) -> Result<i64> {
        if self.eat_any(&["{", "("]) {
            let v = self.int()?;
            self.expect(&["}", ")"])?;
            Ok(v)
        } else {
            self.int()
        }
    }

    fn field(&mut self) -> Result<FieldDesc> {
        self.expect(&["Q"])?;
        let close = if self.eat("(") {
            ")"
        } else if self.eat("[") {
            "]"
        } else {
            return Ok(FieldDesc::Rationals);
        };
        let field = if self.eat_any(&["ζ", "zeta"]) {
            self.eat("_");
            let m = self.braced_int()?;
            if m <= 0 {
                return Err(self.error("cyclotomic index must be positive"));
            }
            self.expect(&[close])?;
            if self.eat_any(&["^real", "^+", "^{real}", "^{+}"]) {
                FieldDesc::real_cyclotomic(m as u64)?
            } else {
                FieldDesc::cyclotomic(m as u64)?
            }
        } else if self.eat_any(&["√", "sqrt"]) {
            let d = self.braced_int()?;
            self.expect(&[close])?;
            FieldDesc::quadratic(d)?
        } else {
            return Err(self.error("expected ζ or √"));
        };
        Ok(field)
    }

    fn algebra(&mut self) -> Result<CSADescriptor> {
        if self.eat("M(") {
            let n = self.int()?;
            if n <= 0 {
                return Err(self.error("matrix size must be positive"));
            }
            self.expect(&[","])?;
            let inner = self.algebra()?;
            self.expect(&[")"])?;
            return Ok(inner.matrix(n as u32));
        }
        if self.eat_any(&["H_∞", "H_inf", "H_{∞}", "H_{inf}"]) {
            self.eat("ty");
            self.expect(&["("])?;
            let k = self.field()?;
            self.expect(&[")"])?;
            return make_h_infty(k);
        }
        if self.eat("H_") {
            let p = self.braced_int()?;
            if p <= 0 {
                return Err(self.error("expected a prime"));
            }
            return make_hp(p as u64);
        }
        Ok(CSADescriptor::field(self.field()?))
    }
}

/// Parses notation such as `H_2`, `H_∞(Q(√5))`, `M(2,Q[ζ_4])`, `Q(ζ_12)`.
pub fn parse_algebra(s: &str) -> Result<CSADescriptor> {
    let compact: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .replace("\\mathbb", "")
        .replace("\\zeta", "ζ")
        .replace("\\infty", "∞")
        .replace("\\sqrt", "√")
        .replace("{Q}", "Q")
        .replace("{H}", "H");
    let mut parser = Parser { s: &compact };
    let alg = parser.algebra()?;
    if !parser.s.is_empty() {
        return Err(parser.error("trailing input"));
    }
    Ok(alg)
}

impl FromStr for CSADescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_algebra(s)
    }
}

/// Parses a field in the same notation.
pub fn parse_field(s: &str) -> Result<FieldDesc> {
    let alg = parse_algebra(s)?;
    if alg.degree() != 1 {
        return Err(Error::InvalidField(format!("{s} is not a field")));
    }
    Ok(alg.center())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Invariant {
        Invariant::new(1, 2)
    }

    #[test]
    fn quaternion_constructors() {
        let h2 = make_hp(2).unwrap();
        assert_eq!(h2.to_string(), "H_2");
        assert!(h2.reciprocity_sum().is_zero());
        assert!(!is_split(&h2));
        let h = make_h_infty(FieldDesc::quadratic(5).unwrap()).unwrap();
        assert_eq!(h.invariant(&Place::Real { index: 1 }), half());
        assert_eq!(h.to_string(), "H_∞(Q(√5))");
        assert!(make_h_infty(FieldDesc::Rationals).is_err());
        assert!(make_h_infty(FieldDesc::cyclotomic(5).unwrap()).is_err());
        assert!(make_hp(9).is_err());
    }

    #[test]
    fn reciprocity_is_enforced() {
        let bad = CSADescriptor::new(FieldDesc::Rationals, 2, [(Place::INFINITY, half())]);
        assert!(bad.is_err());
        let bad_real = CSADescriptor::new(
            FieldDesc::Rationals,
            4,
            [(Place::INFINITY, Invariant::new(1, 4)), (Place::rational(3), Invariant::new(3, 4))],
        );
        assert!(bad_real.is_err());
        let too_small = CSADescriptor::new(
            FieldDesc::Rationals,
            2,
            [(Place::rational(5), Invariant::new(1, 3)), (Place::rational(7), Invariant::new(2, 3))],
        );
        assert!(too_small.is_err());
        let cubic = CSADescriptor::new(
            FieldDesc::Rationals,
            3,
            [(Place::rational(5), Invariant::new(1, 3)), (Place::rational(7), Invariant::new(2, 3))],
        )
        .unwrap();
        assert_eq!(cubic.index(), 3);
    }

    #[test]
    fn scalar_extension() {
        let h7 = make_hp(7).unwrap();
        let ext = extend_scalars(&h7, FieldDesc::quadratic(7).unwrap()).unwrap();
        assert_eq!(ext, make_h_infty(FieldDesc::quadratic(7).unwrap()).unwrap());
        let h2 = make_hp(2).unwrap();
        assert!(is_split(&extend_scalars(&h2, FieldDesc::cyclotomic(4).unwrap()).unwrap()));
        let h5 = make_hp(5).unwrap();
        assert!(is_split(&extend_scalars(&h5, FieldDesc::cyclotomic(5).unwrap()).unwrap()));
        // 11 splits in Q(zeta_5): four primes with invariant 1/2
        let ext = extend_scalars(&make_hp(11).unwrap(), FieldDesc::cyclotomic(5).unwrap()).unwrap();
        assert_eq!(ext.local_invariants().len(), 4);
    }

    #[test]
    fn field_embeddings() {
        let m2 = |p| make_hp(p).unwrap().matrix(2);
        let z5 = FieldDesc::cyclotomic(5).unwrap();
        assert!(field_embeds_in_csa(z5, &m2(7)).unwrap());
        assert!(!field_embeds_in_csa(FieldDesc::cyclotomic(8).unwrap(), &m2(17)).unwrap());
        for m in [5, 8, 12] {
            let l = FieldDesc::cyclotomic(m).unwrap();
            let h = make_h_infty(l.real_subfield().unwrap()).unwrap();
            assert!(field_embeds_in_csa(l, &h).unwrap());
        }
        assert!(field_embeds_in_csa(z5, &make_hp(3).unwrap()).is_err());
    }

    #[test]
    fn quaternion_into_real_quaternion() {
        assert!(hp_into_hinfty(7, 5).unwrap());
        assert!(!hp_into_hinfty(11, 5).unwrap());
        assert!(hp_into_hinfty(2, 2).unwrap());
        assert!(hp_into_hinfty(5, 5).unwrap());
    }

    #[test]
    fn notation_round_trip() {
        for s in [
            "Q",
            "Q(ζ_5)",
            "Q(√2)",
            "Q(ζ_16)^real",
            "H_3",
            "H_∞(Q(√3))",
            "M(2,H_5)",
            "M(2,Q(ζ_4))",
            "M(2,Q(ζ_3))",
            "H_∞(Q(ζ_15)^real)",
        ] {
            let a = parse_algebra(s).unwrap();
            assert_eq!(a.to_string(), s);
        }
        assert_eq!(parse_algebra("M(2, Q[ζ_4])").unwrap().to_string(), "M(2,Q(ζ_4))");
        assert_eq!(
            parse_algebra("\\mathbb{H}_\\infty(\\mathbb{Q}(\\sqrt{5}))").unwrap(),
            make_h_infty(FieldDesc::quadratic(5).unwrap()).unwrap()
        );
        assert_eq!(parse_algebra("Q(ζ_8)^real").unwrap().center(), FieldDesc::quadratic(2).unwrap());
        assert_eq!(parse_algebra("Q(√-1)").unwrap(), parse_algebra("Q(ζ_4)").unwrap());
        assert!(parse_algebra("H_4").is_err());
        assert!(parse_algebra("Q(ζ_5").is_err());
    }
}
