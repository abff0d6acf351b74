//! The finite groups acting rigidly and symplectically on abelian surfaces,
//! with the structural data consumed by the existence and singularity code.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::brauer::{make_h_infty, make_hp, CSADescriptor, FieldDesc, Invariant, Place};
use crate::error::{Error, Result};
use crate::kummer::cyclic_fixed_points;
use crate::numtheory::{divisors, euler_phi, factorize, moebius};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GroupId {
    Cyclic(u32),
    /// Binary dihedral group, by its order `4n`.
    BinaryDihedral(u32),
    SL2F3,
    /// Binary octahedral group, also written `CSU_2(F_3)`.
    ESL2F3,
    SL2F5,
    C5SemiC8,
    C3SemiC8,
    C3xQ8,
    C3SemiQ16,
    /// Written `CSU_2(F_5)` in the rigid-algebra tables.
    ESL2F5,
}

pub const SMALL_CYCLIC: [u32; 8] = [2, 3, 4, 5, 6, 8, 10, 12];

pub fn is_small_cyclic(n: u32) -> bool {
    SMALL_CYCLIC.contains(&n)
}

impl GroupId {
    pub fn cyclic(n: u32) -> Result<Self> {
        if is_small_cyclic(n) {
            Ok(GroupId::Cyclic(n))
        } else {
            Err(Error::UnknownGroup(format!("C{n}")))
        }
    }

    pub fn binary_dihedral(order: u32) -> Result<Self> {
        if order % 4 == 0 && (8..=24).contains(&order) {
            Ok(GroupId::BinaryDihedral(order))
        } else {
            Err(Error::UnknownGroup(format!("Q{order}")))
        }
    }

    /// The sixteen groups of the Katsura list, in table order.
    pub fn katsura_list() -> Vec<GroupId> {
        let mut out: Vec<GroupId> = SMALL_CYCLIC.iter().map(|&n| GroupId::Cyclic(n)).collect();
        out.extend([8, 12, 16, 20, 24].map(GroupId::BinaryDihedral));
        out.extend([GroupId::SL2F3, GroupId::ESL2F3, GroupId::SL2F5]);
        out
    }

    /// Groups that occur only when `p` divides their order.
    pub fn characteristic_special() -> Vec<GroupId> {
        vec![GroupId::ESL2F5, GroupId::C5SemiC8, GroupId::C3SemiC8, GroupId::C3xQ8, GroupId::C3SemiQ16]
    }

    pub fn all() -> Vec<GroupId> {
        let mut out = GroupId::katsura_list();
        out.extend(GroupId::characteristic_special());
        out
    }

    pub fn in_katsura_list(&self) -> bool {
        !GroupId::characteristic_special().contains(self)
    }

    /// Characteristics in which a special group acts rigidly and symplectically.
    pub fn special_characteristics(&self) -> &'static [u64] {
        match self {
            GroupId::ESL2F5 | GroupId::C5SemiC8 => &[5],
            GroupId::C3SemiC8 | GroupId::C3xQ8 => &[3, 2],
            GroupId::C3SemiQ16 => &[3],
            _ => &[],
        }
    }

    pub fn order(&self) -> u32 {
        match *self {
            GroupId::Cyclic(n) | GroupId::BinaryDihedral(n) => n,
            GroupId::SL2F3 | GroupId::C3SemiC8 | GroupId::C3xQ8 => 24,
            GroupId::ESL2F3 | GroupId::C3SemiQ16 => 48,
            GroupId::SL2F5 => 120,
            GroupId::C5SemiC8 => 40,
            GroupId::ESL2F5 => 240,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, GroupId::Cyclic(_))
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupId::Cyclic(n) => write!(f, "C{n}"),
            GroupId::BinaryDihedral(n) => write!(f, "Q{n}"),
            GroupId::SL2F3 => write!(f, "SL2F3"),
            GroupId::ESL2F3 => write!(f, "ESL2F3"),
            GroupId::SL2F5 => write!(f, "SL2F5"),
            GroupId::C5SemiC8 => write!(f, "C5⋊C8"),
            GroupId::C3SemiC8 => write!(f, "C3⋊C8"),
            GroupId::C3xQ8 => write!(f, "C3×Q8"),
            GroupId::C3SemiQ16 => write!(f, "C3⋊Q16"),
            GroupId::ESL2F5 => write!(f, "ESL2F5"),
        }
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .to_lowercase()
            .replace("\\rtimes", "semi")
            .replace("\\times", "x")
            .replace('⋊', "semi")
            .replace('×', "x")
            .replace(':', "semi")
            .replace("mathbb", "")
            .chars()
            .filter(|c| !matches!(c, ' ' | '_' | '{' | '}' | '(' | ')' | '\\' | '$'))
            .collect();
        let unknown = || Error::UnknownGroup(s.to_string());
        let named = match key.as_str() {
            "sl2f3" => Some(GroupId::SL2F3),
            "esl2f3" | "csu2f3" => Some(GroupId::ESL2F3),
            "sl2f5" => Some(GroupId::SL2F5),
            "esl2f5" | "csu2f5" => Some(GroupId::ESL2F5),
            "c5semic8" => Some(GroupId::C5SemiC8),
            "c3semic8" => Some(GroupId::C3SemiC8),
            "c3xq8" => Some(GroupId::C3xQ8),
            "c3semiq16" => Some(GroupId::C3SemiQ16),
            _ => None,
        };
        if let Some(g) = named {
            return Ok(g);
        }
        let number = |rest: &str| rest.parse::<u32>().map_err(|_| unknown());
        if let Some(rest) = key.strip_prefix('c') {
            GroupId::cyclic(number(rest)?).map_err(|_| unknown())
        } else if let Some(rest) = key.strip_prefix('q') {
            GroupId::binary_dihedral(number(rest)?).map_err(|_| unknown())
        } else {
            Err(unknown())
        }
    }
}

impl TryFrom<String> for GroupId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GroupId> for String {
    fn from(g: GroupId) -> String {
        g.to_string()
    }
}

/// Numbers `N(H)` of points of `A` whose stabilizer is exactly a conjugate of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerTable {
    /// Distinguishes the two possible tables of `Q8`.
    pub case_tag: Option<char>,
    pub entries: Vec<(GroupId, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFacts {
    pub group: GroupId,
    pub order: u32,
    /// Number of elements of each order.
    pub element_orders: BTreeMap<u32, u32>,
    pub cyclic_subgroup_orders: BTreeSet<u32>,
    pub sylow_counts: BTreeMap<u64, u32>,
    /// Empty for groups outside the singularity classification.
    pub stabilizer_tables: Vec<StabilizerTable>,
}

fn cyclic_element_orders(n: u32) -> BTreeMap<u32, u32> {
    divisors(u64::from(n)).into_iter().map(|d| (d as u32, euler_phi(d) as u32)).collect()
}

fn element_orders(g: GroupId) -> BTreeMap<u32, u32> {
    let table = |pairs: &[(u32, u32)]| pairs.iter().copied().collect::<BTreeMap<_, _>>();
    match g {
        GroupId::Cyclic(n) => cyclic_element_orders(n),
        GroupId::BinaryDihedral(order) => {
            let mut m = cyclic_element_orders(order / 2);
            *m.entry(4).or_default() += order / 2;
            m
        }
        GroupId::SL2F3 => table(&[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]),
        GroupId::ESL2F3 => table(&[(1, 1), (2, 1), (3, 8), (4, 18), (6, 8), (8, 12)]),
        GroupId::SL2F5 => table(&[(1, 1), (2, 1), (3, 20), (4, 30), (5, 24), (6, 20), (10, 24)]),
        GroupId::C5SemiC8 => table(&[(1, 1), (2, 1), (4, 10), (5, 4), (8, 20), (10, 4)]),
        GroupId::C3SemiC8 => table(&[(1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (8, 12), (12, 4)]),
        GroupId::C3xQ8 => table(&[(1, 1), (2, 1), (3, 2), (4, 6), (6, 2), (12, 12)]),
        GroupId::C3SemiQ16 => table(&[(1, 1), (2, 1), (3, 2), (4, 18), (6, 2), (8, 12), (12, 12)]),
        GroupId::ESL2F5 => table(&[(1, 1), (2, 1), (3, 20), (4, 50), (5, 24), (6, 20), (8, 60), (10, 24), (12, 40)]),
    }
}

fn sylow_counts(g: GroupId) -> BTreeMap<u64, u32> {
    let listed: &[(u64, u32)] = match g {
        GroupId::Cyclic(_) | GroupId::C3xQ8 => &[],
        GroupId::BinaryDihedral(8) | GroupId::BinaryDihedral(16) => &[],
        GroupId::BinaryDihedral(12) | GroupId::BinaryDihedral(24) => &[(2, 3)],
        GroupId::BinaryDihedral(_) => &[(2, 5)],
        GroupId::SL2F3 => &[(3, 4)],
        GroupId::ESL2F3 => &[(2, 3), (3, 4)],
        GroupId::SL2F5 => &[(2, 5), (3, 10), (5, 6)],
        GroupId::C5SemiC8 => &[(2, 5)],
        GroupId::C3SemiC8 | GroupId::C3SemiQ16 => &[(2, 3)],
        GroupId::ESL2F5 => &[(2, 15), (3, 10), (5, 6)],
    };
    let mut out: BTreeMap<u64, u32> = factorize(u64::from(g.order())).into_iter().map(|(l, _)| (l, 1)).collect();
    out.extend(listed.iter().copied());
    out
}

/// Exact stabilizer counts for `C_n`, by Möbius inversion over the subgroups
/// `C_d`, `d | n`, from the fixed-point counts `|A^{C_d}|`.
fn cyclic_stabilizers(n: u32) -> Vec<(GroupId, u64)> {
    let fix = |d: u64| -> u64 {
        // a generator of composite order fixes only the origin
        cyclic_fixed_points(d).unwrap_or(1)
    };
    let n = u64::from(n);
    let mut out = Vec::new();
    for d in divisors(n).into_iter().rev().filter(|&d| d > 1) {
        let exact: i64 = divisors(n / d).into_iter().map(|k| i64::from(moebius(k)) * fix(d * k) as i64).sum();
        if exact > 0 {
            out.push((GroupId::Cyclic(d as u32), exact as u64));
        }
    }
    out
}

fn stabilizer_tables(g: GroupId) -> Vec<StabilizerTable> {
    let c = GroupId::Cyclic;
    let q = GroupId::BinaryDihedral;
    let plain = |entries: Vec<(GroupId, u64)>| vec![StabilizerTable { case_tag: None, entries }];
    match g {
        GroupId::Cyclic(n) => plain(cyclic_stabilizers(n)),
        GroupId::BinaryDihedral(8) => vec![
            StabilizerTable { case_tag: Some('A'), entries: vec![(g, 4), (c(2), 12)] },
            StabilizerTable { case_tag: Some('B'), entries: vec![(g, 2), (c(4), 6), (c(2), 8)] },
        ],
        GroupId::BinaryDihedral(12) => plain(vec![(g, 1), (c(4), 9), (c(3), 8), (c(2), 6)]),
        GroupId::BinaryDihedral(16) => plain(vec![(g, 2), (q(8), 2), (c(4), 4), (c(2), 8)]),
        GroupId::BinaryDihedral(20) => plain(vec![(g, 1), (c(5), 4), (c(4), 15)]),
        GroupId::BinaryDihedral(24) => plain(vec![(g, 1), (q(8), 3), (c(4), 12), (c(3), 8)]),
        GroupId::SL2F3 => plain(vec![(g, 1), (q(8), 3), (c(3), 32), (c(2), 12)]),
        GroupId::ESL2F3 => plain(vec![(g, 1), (q(16), 3), (c(4), 12), (c(3), 32)]),
        GroupId::SL2F5 => plain(vec![(g, 1), (q(8), 15), (c(5), 24), (c(3), 80)]),
        _ => Vec::new(),
    }
}

pub fn facts(g: GroupId) -> GroupFacts {
    let element_orders = element_orders(g);
    GroupFacts {
        group: g,
        order: g.order(),
        cyclic_subgroup_orders: element_orders.keys().copied().collect(),
        element_orders,
        sylow_counts: sylow_counts(g),
        stabilizer_tables: stabilizer_tables(g),
    }
}

/// `Q[Q_{4n}]^rig`, the quaternion algebra over `K = Q(zeta_2n)^real` spanned by
/// `L = Q(zeta_2n)` and `j` with `j^2 = -1`.
///
/// `L` is CM, so every real place of `K` ramifies. A finite place can carry an
/// invariant only if it ramifies in `L/K`, since units are local norms from
/// unramified extensions. Reciprocity then fixes the remaining invariant.
pub fn binary_dihedral_rigid_algebra(n: u32) -> Result<CSADescriptor> {
    if !(2..=6).contains(&n) {
        return Err(Error::UnknownGroup(format!("Q{}", 4 * n)));
    }
    let m = u64::from(2 * n);
    let l = FieldDesc::cyclotomic(m)?;
    let k = FieldDesc::real_cyclotomic(m)?;
    let half = Invariant::new(1, 2);
    let mut invariants: Vec<(Place, Invariant)> =
        (0..k.real_places()).map(|index| (Place::Real { index }, half)).collect();
    let mut candidates = Vec::new();
    for (ell, _) in factorize(m) {
        let (sl, sk) = (l.splitting(ell)?, k.splitting(ell)?);
        if sl.e > sk.e {
            candidates.extend((0..sk.g as u32).map(|index| Place::Prime { p: ell, index }));
        }
    }
    let real_sum = invariants.iter().fold(Invariant::zero(), |acc, (_, v)| acc + v);
    let needs_half = !(real_sum - real_sum.floor()).is_zero();
    match (needs_half, candidates.as_slice()) {
        (false, _) if candidates.len() <= 1 => {}
        (true, [place]) => invariants.push((*place, half)),
        _ => return Err(Error::OutOfScope(format!("local invariants of Q[Q{}]^rig are not forced", 4 * n))),
    }
    CSADescriptor::new(k, 2, invariants)
}

/// `Q[G]^rig` as a central simple algebra.
pub fn rigid_algebra(g: GroupId) -> CSADescriptor {
    let field = |m: u64| CSADescriptor::field(FieldDesc::cyclotomic(m).expect("positive index"));
    let hp = |p: u64| make_hp(p).expect("prime");
    let h_inf = |d: i64| make_h_infty(FieldDesc::quadratic(d).expect("square-free")).expect("real quadratic");
    match g {
        GroupId::Cyclic(n) => field(u64::from(n)),
        GroupId::BinaryDihedral(order) => {
            binary_dihedral_rigid_algebra(order / 4).expect("catalog binary dihedral group")
        }
        GroupId::SL2F3 => hp(2),
        GroupId::ESL2F3 => h_inf(2),
        GroupId::SL2F5 => h_inf(5),
        GroupId::ESL2F5 | GroupId::C5SemiC8 => hp(5).matrix(2),
        GroupId::C3SemiC8 => field(4).matrix(2),
        GroupId::C3xQ8 => field(3).matrix(2),
        GroupId::C3SemiQ16 => hp(3).matrix(2),
    }
}
