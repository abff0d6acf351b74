//! Published tables kept as raw LaTeX cells, read back by small parsers and
//! compared against what the library computes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::brauer::{parse_algebra, rigid_embeds_in_m2hp, CSADescriptor};
use crate::citation::Citation;
use crate::congruence::Condition;
use crate::error::{Error, Result};
use crate::existence::{exists_over_even_degree, exists_over_odd_degree};
use crate::groups::{binary_dihedral_rigid_algebra, rigid_algebra, GroupId};
use crate::kummer::{ns_rank_bound, parse_multiset, singular_config, trace_table, trace_table_all, NSCharPoly};
use crate::numtheory::{is_prime, IntPolynomial, Parity, PrimePower};
use crate::weil::WeilShape;

/// `(G, singularities, rank)`; a blank group cell continues the previous row.
pub const SINGULARITIES: [(&str, &str, &str); 17] = [
    ("$C_2$", "$16A_1$", "$\\geq 17$"),
    ("$C_3$", "$9A_2$", "$\\geq 19$"),
    ("$C_4$", "$4A_3+6A_1$", "$\\geq 19$"),
    ("$C_5$", "$5A_4$", "$22$"),
    ("$C_6$", "$A_5+4A_2+5A_1$", "$\\geq 19$"),
    ("$C_8$", "$2A_7+A_3+3A_1$", "$22$"),
    ("$C_{10}$", "$A_9+2A_4+3A_1$", "$22$"),
    ("$C_{12}$", "$A_{11}+A_3+2A_2+2A_1$", "$22$"),
    ("$Q_8$", "$2D_4+3A_3+2A_1$", "$\\geq 20$"),
    ("", "$4D_4+3A_1$", "$\\geq 20$"),
    ("$Q_{12}$", "$D_5+3A_3+2A_2+A_1$", "$\\geq 20$"),
    ("$Q_{16}$", "$2D_6+D_4+A_3+A_1$", "$22$"),
    ("$Q_{20}$", "$D_7+A_4+3A_3$", "$22$"),
    ("$Q_{24}$", "$D_8+D_4+2A_3+A_2$", "$22$"),
    ("$\\SL_2({\\mathbb F}_3)$", "$E_6+D_4+4A_2+A_1$", "$\\geq 20$"),
    ("$\\ESL_2({\\mathbb F}_3)$", "$E_7+D_6+A_3+2A_2$", "$22$"),
    ("$\\SL_2({\\mathbb F}_5)$", "$E_8+D_4+A_4+2A_2$", "$ 22$"),
];

/// The six case tables of rigid algebras, flattened to `(case, G, Q[G]^rig)`.
pub const RIGID_ALGEBRAS: [(u8, &str, &str); 23] = [
    (1, "$C_2$", "${\\mathbb Q}(\\zeta_2)$"),
    (1, "$C_3$", "${\\mathbb Q}(\\zeta_3)$"),
    (1, "$C_4$", "${\\mathbb Q}(\\zeta_4)$"),
    (1, "$C_5$", "${\\mathbb Q}(\\zeta_5)$"),
    (1, "$C_6$", "${\\mathbb Q}(\\zeta_6)$"),
    (1, "$C_8$", "${\\mathbb Q}(\\zeta_8)$"),
    (1, "$C_{10}$", "${\\mathbb Q}(\\zeta_{10})$"),
    (1, "$C_{12}$", "${\\mathbb Q}(\\zeta_{12})$"),
    (2, "$Q_8$", "${\\mathbb H}_2$"),
    (2, "$Q_{12}$", "${\\mathbb H}_3$"),
    (2, "$Q_{16}$", "${\\mathbb H}_\\infty({\\mathbb Q}(\\sqrt{2}))$"),
    (2, "$Q_{20}$", "${\\mathbb H}_\\infty({\\mathbb Q}(\\sqrt{5}))$"),
    (2, "$Q_{24}$", "${\\mathbb H}_\\infty({\\mathbb Q}(\\sqrt{3}))$"),
    (3, "$\\SL_2({\\mathbb F}_3)$", "${\\mathbb H}_2$"),
    (3, "$\\CSU_2({\\mathbb F}_3)$", "${\\mathbb H}_\\infty({\\mathbb Q}(\\sqrt{2}))$"),
    (3, "$\\SL_2({\\mathbb F}_5)$", "${\\mathbb H}_\\infty({\\mathbb Q}(\\sqrt{5}))$"),
    (4, "$\\CSU_2({\\mathbb F}_5)$", "$M(2,{\\mathbb H}_5)$"),
    (4, "$C_5\\rtimes C_8$", "$M(2,{\\mathbb H}_5)$"),
    (5, "$C_3\\rtimes C_8$", "$M(2,{\\mathbb Q}[\\zeta_4])$"),
    (5, "$C_3\\times Q_8$", "$M(2,{\\mathbb Q}[\\zeta_3])$"),
    (5, "$C_3\\rtimes Q_{16}$", "$M(2,{\\mathbb H}_3)$"),
    (6, "$C_3\\rtimes C_8$", "$M(2,{\\mathbb Q}[\\zeta_4])$"),
    (6, "$C_3\\times Q_8$", "$M(2,{\\mathbb Q}[\\zeta_3])$"),
];

/// `Q[Q_4n]^rig` for `n = 2..=6`.
pub const BINARY_DIHEDRAL_ALGEBRAS: [(u32, &str); 5] = [
    (2, "${\\mathbb H}_2$"),
    (3, "${\\mathbb H}_3$"),
    (4, "${\\mathbb H}_\\infty({\\mathbb Q}(\\zeta_{8})^{\\mathrm{real}})$"),
    (5, "${\\mathbb H}_\\infty({\\mathbb Q}(\\zeta_{10})^{\\mathrm{real}})$"),
    (6, "${\\mathbb H}_\\infty({\\mathbb Q}(\\zeta_{12})^{\\mathrm{real}})$"),
];

/// Algebras admitting a map to `M(2, H_p)`, with the condition on `p`.
pub const EMBEDDINGS: [(&str, &str); 10] = [
    ("${\\mathbb Q}[\\zeta_4]$", "$p>0$"),
    ("${\\mathbb Q}[\\zeta_3]={\\mathbb Q}[\\zeta_6]$", "$p>0$"),
    ("${\\mathbb Q}[\\zeta_5]={\\mathbb Q}[\\zeta_{10}]$", "$p\\not\\equiv 1\\bmod 5$"),
    ("${\\mathbb Q}[\\zeta_8]$", "$p\\not\\equiv 1\\bmod 8$"),
    ("${\\mathbb Q}[\\zeta_{12}]$", "$p\\not\\equiv 1\\bmod 12$"),
    ("${\\mathbb H}_2$", "$p>0$"),
    ("${\\mathbb H}_3$", "$p>0$"),
    ("${\\mathbb H}_\\infty({\\mathbb Q}(\\sqrt{5}))$", "$p\\not\\equiv \\pm 1\\bmod 5$"),
    ("${\\mathbb H}_\\infty({\\mathbb Q}(\\sqrt{2}))$", "$p\\not\\equiv \\pm 1\\bmod 8$"),
    ("${\\mathbb H}_\\infty({\\mathbb Q}(\\sqrt{3}))$", "$p\\not\\equiv \\pm 1\\bmod 12$"),
];

/// `(G, column I, column II)` over `F_{p^2}`.
pub const EVEN_DEGREE_EXISTENCE: [(&str, &str, &str); 13] = [
    ("$C_3$, $C_6$", "$p>0$", "$p>0$"),
    ("$C_4$", "$p>0$", "$p>0$"),
    ("$C_8$", "$p\\not\\equiv 1\\bmod 8$", "$p\\not\\equiv \\pm 1\\bmod 8$"),
    ("$C_5$ $C_{10}$", "$p\\not\\equiv 1\\bmod 5$", "$p\\not\\equiv \\pm 1\\bmod 5$"),
    ("$C_{12}$", "$p\\not\\equiv 1\\bmod 12$", "$p\\not\\equiv \\pm 1\\bmod 12$,"),
    ("$Q_8$", "$p>0$", "$p>0$"),
    ("$Q_{12}$", "$p>0$", "$p>0$"),
    ("$Q_{16}$", "$p\\not\\equiv \\pm 1\\bmod 8$", "$p\\not\\equiv \\pm 1\\bmod 8$"),
    ("$Q_{20}$", "$p\\not\\equiv \\pm 1\\bmod 5$", "$p\\not\\equiv \\pm 1\\bmod 5$"),
    ("$Q_{24}$", "$p\\not\\equiv \\pm 1\\bmod 12$", "$p\\not\\equiv \\pm 1\\bmod 12$"),
    ("$\\SL_2({\\mathbb F}_3)$", "$p>0$", "$p>0$"),
    ("$\\CSU_2({\\mathbb F}_3)$", "$p\\not\\equiv \\pm 1\\bmod 8$", "$p\\not\\equiv \\pm 1\\bmod 8$"),
    ("$\\SL_2({\\mathbb F}_5)$", "$p\\not\\equiv \\pm 1\\bmod 5$", "$p\\not\\equiv \\pm 1\\bmod 5$"),
];

/// `(f, G, p)` over odd-degree fields, for the two square Weil polynomials.
pub const ODD_DEGREE_EXISTENCE: [(&str, &str, &str); 8] = [
    ("$(t^2-q)^2$", "$C_3$, $C_4$, $C_6$", "$p>2$"),
    ("$(t^2-q)^2$", "$Q_8$", "$p\\not\\equiv 1\\bmod 8$"),
    ("$(t^2-q)^2$", "$Q_{12}$", "$p\\not\\equiv 2\\bmod 3$"),
    ("$(t^2-q)^2$", "$\\SL_2({\\mathbb F}_3)$", "$p\\not\\equiv 1\\bmod 8$"),
    ("$(t^2+q)^2$", "$C_3$, $C_4$, $C_6$", "$p>2$"),
    ("$(t^2+q)^2$", "$Q_8$", "$p\\not\\equiv  -1\\bmod 8$"),
    ("$(t^2+q)^2$", "$Q_{12}$", "$p\\not\\equiv 1\\bmod 3$"),
    ("$(t^2+q)^2$", "$\\SL_2({\\mathbb F}_3)$", "$p\\not\\equiv -1\\bmod 8$"),
];

/// `(trace, zeta, G, p, f_A)` over `F_q`, `q` an even power of `p`.
pub const EVEN_TRACES: [(&str, &str, &str, &str, &str); 9] = [
    ("$22$", "$1^{22}$", "$C_2$", "$p>2$", "$(t\\pm\\sqrt{q})^4$"),
    ("$18$", "$1^{20},2^2$", "$C_4$", "$p>2$", "$(t^2-q)^2$"),
    ("$14$", "$1^{18},2^4$", "$C_2$", "$p>2$", "$(t^2-q)^2$"),
    ("$10$", "$1^{14},2^4,4^4$", "$C_2$", "$p>2$", "$(t^2+q)(t\\pm\\sqrt{q})^2$"),
    ("$8$", "$1^{15},2^7$", "$C_4$", "$p>2$", "$(t^2-q)^2$"),
    ("$6$", "$1^{14},2^8$", "$C_2$", "$p>2$", "$(t^2\\pm q)^2$"),
    ("$4$", "$1^{10},3^12$", "$C_2$", "$p>2$", "$(t^2\\pm\\sqrt{q}t+q)^2$"),
    ("$2$", "$1^{12},2^{10}$", "$C_2$", "$p>2$", "$(t^2-q)^2$"),
    ("$0$", "$1^6,2^4,3^8,6^4$", "$C_2$", "$p\\not\\equiv 1\\bmod 12$", "$t^4-qt^2+q^2$"),
];

/// The same columns over odd-degree fields.
pub const ODD_TRACES: [(&str, &str, &str, &str, &str); 9] = [
    ("$20$", "$1^{21},2$", "$Q_8$", "$p\\equiv 3(4)$", "$(t^2-q)^2$"),
    ("$18$", "$1^{20},2^2$", "$C_4$", "$p\\equiv 1(4)$", "$(t^2-q)^2$"),
    ("$18$", "$1^{20},2^2$", "$C_2$", "$p\\equiv 3(4)$", "$(t^2+q)^2$"),
    ("$14$", "$1^{18},2^4$", "$C_2$", "$p\\equiv 1(4)$", "$(t^2-q)^2$"),
    ("$10$", "$1^{16},2^6$", "$C_2$", "$p\\equiv 3(4)$", "$(t^2+q)^2$"),
    ("$8$", "$1^{15},2^7$", "$C_4$", "$p\\equiv 1(4)$", "$(t^2-q)^2$"),
    ("$6$", "$1^{14},2^8$", "$C_2$", "$p>2$", "$(t^2+q)^2$"),
    ("$2$", "$1^{12},2^{10}$", "$C_2$", "$p>2$", "$(t^2-q)^2$"),
    ("$0$", "$1^6,2^4,3^8,6^4$", "$C_2$", "$p>2$", "$t^4-qt^2+q^2$"),
];

fn strip(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace() && *c != '$').collect()
}

fn bad(s: &str) -> Error {
    Error::InvalidNotation(format!("cannot read table cell '{s}'"))
}

/// Reads `p>0`, `p\not\equiv \pm 1\bmod 8`, `p\not\equiv -1\bmod 8`, `p\equiv 3(4)`.
pub fn parse_condition(s: &str) -> Result<Condition> {
    let t = strip(s).trim_end_matches(',').replace("\\bmod", "mod");
    let int = |x: &str| x.parse::<i64>().map_err(|_| bad(s));
    if let Some(rest) = t.strip_prefix("p>") {
        return Ok(Condition::greater(int(rest)? as u64));
    }
    if let Some(rest) = t.strip_prefix("p\\not\\equiv") {
        let (r, m) = rest.split_once("mod").ok_or_else(|| bad(s))?;
        let m = int(m)? as u64;
        return if r == "\\pm1" { Ok(Condition::not_pm_one(m)) } else { Ok(Condition::not_congruent(int(r)?, m)) };
    }
    if let Some(rest) = t.strip_prefix("p\\equiv") {
        let (r, m) = rest.split_once('(').ok_or_else(|| bad(s))?;
        return Ok(Condition::congruent(int(r)?, int(m.trim_end_matches(')'))? as u64));
    }
    Err(bad(s))
}

/// Reads one group cell or a list such as `$C_3$, $C_6$` or `$C_5$ $C_{10}$`.
pub fn parse_groups(s: &str) -> Result<Vec<GroupId>> {
    s.split('$').map(str::trim).filter(|t| !t.is_empty() && *t != ",").map(|t| t.parse::<GroupId>()).collect()
}

fn parse_group(s: &str) -> Result<GroupId> {
    match parse_groups(s)?.as_slice() {
        [g] => Ok(*g),
        _ => Err(bad(s)),
    }
}

/// Reads `$\geq 17$` or `$22$` as `(bound, exact)`.
pub fn parse_rank(s: &str) -> Result<(u32, bool)> {
    let t = strip(s);
    match t.strip_prefix("\\geq") {
        Some(rest) => Ok((rest.parse().map_err(|_| bad(s))?, false)),
        None => Ok((t.parse().map_err(|_| bad(s))?, true)),
    }
}

/// Reads an algebra cell, checking that every `=`-separated alternative agrees.
pub fn parse_algebra_cell(s: &str) -> Result<CSADescriptor> {
    let t = strip(s).replace("^{\\mathrm{real}}", "^real");
    let mut parts = t.split('=').map(parse_algebra);
    let first = parts.next().ok_or_else(|| bad(s))??;
    for other in parts {
        if other? != first {
            return Err(Error::Inconsistent(format!("alternatives in '{s}' differ")));
        }
    }
    Ok(first)
}

/// Evaluates a Weil polynomial cell at a given `q`, once per choice of `±`.
pub fn expand_polynomial_cell(s: &str, q: u64) -> Result<Vec<IntPolynomial>> {
    let t = strip(s).replace("\\sqrt{q}", "r").replace("\\pm", "±");
    let root = (1..=q).find(|r| r * r == q);
    let signs: &[i64] = if t.contains('±') { &[1, -1] } else { &[1] };
    signs
        .iter()
        .map(|&sign| {
            let mut parser = PolyParser { chars: t.chars().collect(), pos: 0, q, root, sign };
            let f = parser.expr()?;
            if parser.pos != parser.chars.len() {
                return Err(bad(s));
            }
            Ok(f)
        })
        .collect()
}

struct PolyParser {
    chars: Vec<char>,
    pos: usize,
    q: u64,
    root: Option<u64>,
    sign: i64,
}

impl PolyParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self) -> Error {
        Error::InvalidNotation(format!("cannot expand polynomial near position {}", self.pos))
    }

    fn expr(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            let s = match c {
                '+' => 1,
                '-' => -1,
                '±' => self.sign,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            acc = if s == 1 { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(c) if c == '(' || c == 't' || c == 'q' || c == 'r' || c.is_ascii_digit()) {
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<IntPolynomial> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number()?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error())
    }

    fn base(&mut self) -> Result<IntPolynomial> {
        let c = self.peek().ok_or_else(|| self.error())?;
        self.pos += 1;
        Ok(match c {
            't' => IntPolynomial::monomial(BigInt::one(), 1),
            'q' => IntPolynomial::constant(BigInt::from(self.q)),
            'r' => IntPolynomial::constant(BigInt::from(self.root.ok_or_else(|| self.error())?)),
            '(' => {
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error());
                }
                self.pos += 1;
                inner
            }
            d if d.is_ascii_digit() => {
                self.pos -= 1;
                IntPolynomial::constant(BigInt::from(self.number()?))
            }
            _ => return Err(self.error()),
        })
    }
}

/// Identifies a Weil polynomial cell with a shape by expanding both at a test field.
pub fn parse_shape(s: &str) -> Result<WeilShape> {
    let t = strip(s);
    if t.contains("3^r") {
        return Ok(WeilShape::SpecialThree);
    }
    if t.contains("2^r") {
        return Ok(WeilShape::SpecialTwo);
    }
    let q = PrimePower::new(5, 2)?;
    let mut cell: Vec<IntPolynomial> = expand_polynomial_cell(s, q.q())?;
    cell.sort_by_key(|f| f.to_string());
    let matches: Vec<WeilShape> = WeilShape::ALL
        .into_iter()
        .filter(|shape| {
            shape.polynomials(&q).is_ok_and(|mut polys| {
                polys.sort_by_key(|f| f.to_string());
                polys == cell
            })
        })
        .collect();
    match matches.as_slice() {
        [shape] => Ok(*shape),
        _ => Err(bad(s)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub table: Citation,
    pub row: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for GoldenCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "ok" } else { "MISMATCH" };
        write!(f, "[{}] {}: {mark}", self.table, self.row)?;
        if !self.passed {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

fn check(table: Citation, row: impl Into<String>, outcome: Result<Option<String>>) -> GoldenCheck {
    let (passed, detail) = match outcome {
        Ok(None) => (true, String::new()),
        Ok(Some(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    GoldenCheck { table, row: row.into(), passed, detail }
}

fn primes_below(n: u64) -> impl Iterator<Item = u64> {
    (2..n).filter(|&p| is_prime(p))
}

/// Every singularity row against configurations derived from stabilizer data.
pub fn check_singularities() -> Vec<GoldenCheck> {
    let mut current: Option<GroupId> = None;
    let mut used: Vec<(GroupId, usize)> = Vec::new();
    SINGULARITIES
        .iter()
        .map(|&(g_cell, sing, rank)| {
            let outcome = (|| -> Result<Option<String>> {
                let g = if g_cell.is_empty() { current.ok_or_else(|| bad(g_cell))? } else { parse_group(g_cell)? };
                current = Some(g);
                let expected = parse_multiset(&strip(sing))?;
                let (bound, exact) = parse_rank(rank)?;
                let configs = singular_config(g)?;
                let Some(idx) = configs.iter().position(|c| c.multiset() == expected) else {
                    let got: Vec<String> = configs.iter().map(|c| c.to_string()).collect();
                    return Ok(Some(format!("computed {}", got.join(" | "))));
                };
                if used.contains(&(g, idx)) {
                    return Ok(Some("configuration matched twice".into()));
                }
                used.push((g, idx));
                let r = ns_rank_bound(&configs[idx]);
                Ok((r.bound != bound || r.exact != exact).then(|| format!("computed {r}")))
            })();
            check(Citation::Prop5_1, format!("{} {}", if g_cell.is_empty() { "  " } else { g_cell }, sing), outcome)
        })
        .collect()
}

/// Every rigid-algebra cell, plus the binary dihedral formula for `n = 2..=6`.
pub fn check_rigid_algebras() -> Vec<GoldenCheck> {
    let mut out: Vec<GoldenCheck> = RIGID_ALGEBRAS
        .iter()
        .map(|&(case, g, alg)| {
            let outcome = (|| -> Result<Option<String>> {
                let expected = parse_algebra_cell(alg)?;
                let got = rigid_algebra(parse_group(g)?);
                Ok((got != expected).then(|| format!("computed {got}")))
            })();
            check(Citation::Thm4_2, format!("case ({case}) {g} -> {alg}"), outcome)
        })
        .collect();
    out.extend(BINARY_DIHEDRAL_ALGEBRAS.iter().map(|&(n, alg)| {
        let outcome = (|| -> Result<Option<String>> {
            let expected = parse_algebra_cell(alg)?;
            let got = binary_dihedral_rigid_algebra(n)?;
            Ok((got != expected).then(|| format!("computed {got}")))
        })();
        check(Citation::Lemma4_1, format!("Q_{} -> {alg}", 4 * n), outcome)
    }));
    out
}

/// Every embedding row, for all primes below `bound`, through the groups realizing that algebra.
pub fn check_embeddings(bound: u64) -> Vec<GoldenCheck> {
    EMBEDDINGS
        .iter()
        .map(|&(alg, cond)| {
            let outcome = (|| -> Result<Option<String>> {
                let algebra = parse_algebra_cell(alg)?;
                let condition = parse_condition(cond)?;
                let groups: Vec<GroupId> = GroupId::katsura_list()
                    .into_iter()
                    .filter(|g| g.order() > 2 && rigid_algebra(*g) == algebra)
                    .collect();
                if groups.is_empty() {
                    return Ok(Some("no group has this rigid algebra".into()));
                }
                for g in groups {
                    for p in primes_below(bound) {
                        if rigid_embeds_in_m2hp(g, p)? != condition.eval(p) {
                            return Ok(Some(format!("{g} at p = {p}")));
                        }
                    }
                }
                Ok(None)
            })();
            check(Citation::Prop6_1, format!("{alg}: {cond}"), outcome)
        })
        .collect()
}

/// Both columns of the even-degree existence table, for all primes below `bound` prime to `|G|`.
pub fn check_even_existence(bound: u64) -> Vec<GoldenCheck> {
    EVEN_DEGREE_EXISTENCE
        .iter()
        .map(|&(gs, col_i, col_ii)| {
            let outcome = (|| -> Result<Option<String>> {
                let (ci, cii) = (parse_condition(col_i)?, parse_condition(col_ii)?);
                for g in parse_groups(gs)? {
                    for p in primes_below(bound).filter(|p| u64::from(g.order()) % p != 0) {
                        let v = exists_over_even_degree(g, p)?;
                        if v.exists_rigid != ci.eval(p) || v.exists_rigid_symplectic != cii.eval(p) {
                            return Ok(Some(format!("{g} at p = {p}")));
                        }
                    }
                }
                Ok(None)
            })();
            check(Citation::Thm6_2, format!("{gs}: I {col_i}, II {col_ii}"), outcome)
        })
        .collect()
}

/// The two square-polynomial tables over odd-degree fields, for `q = p` and `q = p^3`.
pub fn check_odd_existence(bound: u64) -> Vec<GoldenCheck> {
    ODD_DEGREE_EXISTENCE
        .iter()
        .map(|&(f, gs, cond)| {
            let outcome = (|| -> Result<Option<String>> {
                let shape = parse_shape(f)?;
                let condition = parse_condition(cond)?;
                for g in parse_groups(gs)? {
                    for p in primes_below(bound).filter(|p| u64::from(g.order()) % p != 0) {
                        for n in [1, 3] {
                            let Ok(q) = PrimePower::new(p, n) else { continue };
                            let v = exists_over_odd_degree(g, &q)?;
                            let holds = v.weil_options.iter().any(|o| o.shape == shape && o.holds);
                            if holds != condition.eval(p) {
                                return Ok(Some(format!("{g} at q = {q}")));
                            }
                        }
                    }
                }
                Ok(None)
            })();
            check(Citation::Thm6_7, format!("{f} {gs}: {cond}"), outcome)
        })
        .collect()
}

type TraceCells = (&'static str, &'static str, &'static str, &'static str, &'static str);

/// A trace-table row read from its cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedTraceRow {
    pub trace: i64,
    pub zeta: NSCharPoly,
    pub group: GroupId,
    pub condition: Condition,
    pub shape: WeilShape,
}

pub fn parse_trace_row(cells: &TraceCells) -> Result<ParsedTraceRow> {
    let &(tr, zeta, g, cond, f) = cells;
    Ok(ParsedTraceRow {
        trace: strip(tr).parse().map_err(|_| bad(tr))?,
        zeta: strip(zeta).parse()?,
        group: parse_group(g)?,
        condition: parse_condition(cond)?,
        shape: parse_shape(f)?,
    })
}

pub const REPRESENTATIVE_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// Each trace row against the computed table, and the per-prime filtering.
pub fn check_traces(parity: Parity) -> Vec<GoldenCheck> {
    let (raw, citation): (&[TraceCells], Citation) = match parity {
        Parity::Even => (&EVEN_TRACES, Citation::Thm7_7),
        Parity::Odd => (&ODD_TRACES, Citation::Thm7_12),
    };
    let computed = trace_table_all(parity);
    let mut out: Vec<GoldenCheck> = raw
        .iter()
        .enumerate()
        .map(|(i, cells)| {
            let outcome = (|| -> Result<Option<String>> {
                let row = parse_trace_row(cells)?;
                let Some(c) = computed.get(i) else { return Ok(Some("missing row".into())) };
                let same = c.trace == row.trace
                    && c.zeta == row.zeta
                    && c.group == row.group
                    && c.condition == row.condition
                    && c.shape == row.shape;
                Ok((!same).then(|| format!("computed {} {} {} {} {}", c.trace, c.zeta, c.group, c.condition, c.shape)))
            })();
            check(citation, format!("Tr {} {}", strip(cells.0), strip(cells.1)), outcome)
        })
        .collect();
    for p in REPRESENTATIVE_PRIMES {
        let outcome = (|| -> Result<Option<String>> {
            let expected: BTreeSet<(i64, String, GroupId)> = raw
                .iter()
                .map(parse_trace_row)
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|r| r.condition.eval(p))
                .map(|r| (r.trace, r.zeta.to_string(), r.group))
                .collect();
            let got: BTreeSet<(i64, String, GroupId)> =
                trace_table(parity, p)?.into_iter().map(|r| (r.trace, r.zeta.to_string(), r.group)).collect();
            Ok((got != expected).then(|| format!("{} rows computed, {} tabulated", got.len(), expected.len())))
        })();
        out.push(check(citation, format!("rows applicable at p = {p}"), outcome));
    }
    out
}

/// Everything above with the exhaustive prime range.
pub fn run_all() -> Vec<GoldenCheck> {
    let mut out = check_singularities();
    out.extend(check_rigid_algebras());
    out.extend(check_embeddings(1000));
    out.extend(check_even_existence(1000));
    out.extend(check_odd_existence(1000));
    out.extend(check_traces(Parity::Even));
    out.extend(check_traces(Parity::Odd));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_cells() {
        assert_eq!(parse_condition("$p>0$").unwrap(), Condition::ANY);
        assert_eq!(parse_condition("$p\\not\\equiv \\pm 1\\bmod 12$,").unwrap(), Condition::not_pm_one(12));
        assert_eq!(parse_condition("$p\\not\\equiv  -1\\bmod 8$").unwrap(), Condition::not_congruent(-1, 8));
        assert_eq!(parse_condition("$p\\equiv 3(4)$").unwrap(), Condition::congruent(3, 4));
        assert!(parse_condition("$q>1$").is_err());
    }

    #[test]
    fn group_cells() {
        assert_eq!(parse_groups("$C_5$ $C_{10}$").unwrap(), vec![GroupId::Cyclic(5), GroupId::Cyclic(10)]);
        assert_eq!(parse_groups("$C_3$, $C_4$, $C_6$").unwrap().len(), 3);
        assert_eq!(parse_group("$\\CSU_2({\\mathbb F}_3)$").unwrap(), GroupId::ESL2F3);
        assert_eq!(parse_group("$C_3\\rtimes Q_{16}$").unwrap(), GroupId::C3SemiQ16);
    }

    #[test]
    fn polynomial_cells() {
        let f = expand_polynomial_cell("$(t^2\\pm\\sqrt{q}t+q)^2$", 9).unwrap();
        assert_eq!(f[0], IntPolynomial::from_i64(&[9, 3, 1]).pow(2));
        assert_eq!(f[1], IntPolynomial::from_i64(&[9, -3, 1]).pow(2));
        assert_eq!(parse_shape("$t^4-qt^2+q^2$").unwrap(), WeilShape::QuarticMinus);
        assert_eq!(parse_shape("$(t^2+q)(t\\pm\\sqrt{q})^2$").unwrap(), WeilShape::SumTimesLinear);
        assert_eq!(parse_shape("$(t^2\\pm q)^2$").unwrap(), WeilShape::PmSquare);
        assert_eq!(parse_shape("$(t^2\\pm 3^r+q)^2$").unwrap(), WeilShape::SpecialThree);
    }

    #[test]
    fn algebra_cells() {
        assert_eq!(
            parse_algebra_cell("${\\mathbb Q}[\\zeta_3]={\\mathbb Q}[\\zeta_6]$").unwrap().to_string(),
            "Q(ζ_3)"
        );
        assert!(parse_algebra_cell("${\\mathbb Q}[\\zeta_3]={\\mathbb Q}[\\zeta_4]$").is_err());
        let h = parse_algebra_cell("${\\mathbb H}_\\infty({\\mathbb Q}(\\zeta_{8})^{\\mathrm{real}})$").unwrap();
        assert_eq!(h.to_string(), "H_∞(Q(√2))");
    }

    #[test]
    fn all_tables_agree() {
        let failures: Vec<String> = run_all().into_iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }
}
