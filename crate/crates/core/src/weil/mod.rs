//! Weil polynomials of elliptic curves and abelian surfaces over `F_q`:
//! validation against the classification theorems, Newton types, point
//! counts and zeta functions.

mod shape;
pub mod symmetric;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::citation::Citation;
use crate::error::{Error, Result};
use crate::numtheory::{divisors, newton_slopes, IntPolynomial, PrimePower, Slope};

pub use shape::WeilShape;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NewtonType {
    Ordinary,
    Supersingular,
    Mixed,
}

impl fmt::Display for NewtonType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NewtonType::Ordinary => "ordinary",
            NewtonType::Supersingular => "supersingular",
            NewtonType::Mixed => "mixed",
        })
    }
}

/// Newton type of a symmetric slope multiset of length `2 dim`.
pub fn newton_type_of(slopes: &[Slope]) -> Result<NewtonType> {
    let g = slopes.len() / 2;
    let zeros = slopes.iter().filter(|s| **s == Slope::ZERO).count();
    let ones = slopes.iter().filter(|s| **s == Slope::ONE).count();
    let halves = slopes.iter().filter(|s| **s == Slope::HALF).count();
    if halves == slopes.len() {
        Ok(NewtonType::Supersingular)
    } else if zeros == g && ones == g {
        Ok(NewtonType::Ordinary)
    } else if zeros == ones && zeros > 0 && halves > 0 && zeros + ones + halves == slopes.len() {
        Ok(NewtonType::Mixed)
    } else {
        let shown: Vec<String> = slopes.iter().map(|s| s.to_string()).collect();
        Err(Error::weil(format!("slope multiset {{{}}} has no Newton type", shown.join(", "))))
    }
}

/// The endomorphism algebra `End(A) ⊗ Q`, as named by the classification theorems.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EndoDescriptor {
    /// `Q[t]/P(t)`.
    FieldOfPoly { poly: IntPolynomial },
    /// `H_∞(Q(√d))`, `d > 0`.
    QuaternionOverRealQuadratic { d: i64 },
    /// A quaternion algebra over `Q(√d)`, `d < 0`.
    QuaternionOverImagQuadratic { d: i64 },
    /// `M(2, Q[t]/P(t))`.
    Matrix2OverField { poly: IntPolynomial },
    /// `H_p` (`size = 1`) or `M(2, H_p)` (`size = 2`).
    HpMatrix { p: u64, size: u8 },
    /// Product of the algebras of non-isogenous factors.
    Product { factors: Vec<EndoDescriptor> },
}

impl fmt::Display for EndoDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoDescriptor::FieldOfPoly { poly } => write!(f, "Q[t]/({poly})"),
            EndoDescriptor::QuaternionOverRealQuadratic { d } => write!(f, "H_∞(Q(√{d}))"),
            EndoDescriptor::QuaternionOverImagQuadratic { d } => {
                write!(f, "quaternion algebra over Q(√−{})", -d)
            }
            EndoDescriptor::Matrix2OverField { poly } => write!(f, "M(2,Q[t]/({poly}))"),
            EndoDescriptor::HpMatrix { p, size: 1 } => write!(f, "H_{p}"),
            EndoDescriptor::HpMatrix { p, size } => write!(f, "M({size},H_{p})"),
            EndoDescriptor::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|e| e.to_string()).collect();
                f.write_str(&parts.join(" × "))
            }
        }
    }
}

/// Which clause of the classification accepted a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeilClause {
    EllipticOrdinary,
    Elliptic2a,
    Elliptic2b,
    Elliptic2c,
    Elliptic2d,
    Elliptic3,
    SurfaceOrdinaryOrMixed,
    SurfaceI,
    SurfaceII,
    SurfaceIII,
    SurfaceIV,
    SurfaceV,
    SurfaceVI,
    SurfaceVII,
    SurfaceVIII,
    SurfaceB,
    SurfaceCi,
    SurfaceCii,
    NonSimple,
}

impl WeilClause {
    pub fn citation(&self) -> Citation {
        match self {
            WeilClause::EllipticOrdinary
            | WeilClause::Elliptic2a
            | WeilClause::Elliptic2b
            | WeilClause::Elliptic2c
            | WeilClause::Elliptic2d
            | WeilClause::Elliptic3
            | WeilClause::NonSimple => Citation::Thm2_8,
            _ => Citation::Thm2_9,
        }
    }
}

impl fmt::Display for WeilClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeilClause::EllipticOrdinary => "case 1",
            WeilClause::Elliptic2a => "case 2(a)",
            WeilClause::Elliptic2b => "case 2(b)",
            WeilClause::Elliptic2c => "case 2(c)",
            WeilClause::Elliptic2d => "case 2(d)",
            WeilClause::Elliptic3 => "case 3",
            WeilClause::SurfaceOrdinaryOrMixed => "case 1",
            WeilClause::SurfaceI => "case 2(a)(i)",
            WeilClause::SurfaceII => "case 2(a)(ii)",
            WeilClause::SurfaceIII => "case 2(a)(iii)",
            WeilClause::SurfaceIV => "case 2(a)(iv)",
            WeilClause::SurfaceV => "case 2(a)(v)",
            WeilClause::SurfaceVI => "case 2(a)(vi)",
            WeilClause::SurfaceVII => "case 2(a)(vii)",
            WeilClause::SurfaceVIII => "case 2(a)(viii)",
            WeilClause::SurfaceB => "case 2(b)",
            WeilClause::SurfaceCi => "case 2(c)(i)",
            WeilClause::SurfaceCii => "case 2(c)(ii)",
            WeilClause::NonSimple => "product of elliptic classes",
        })
    }
}

/// A validated Weil polynomial of an elliptic curve or abelian surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilDescriptor {
    q: PrimePower,
    dim: u8,
    poly: IntPolynomial,
    /// Irreducible factors with exponents.
    factors: Vec<(IntPolynomial, u32)>,
    simple: bool,
    newton: NewtonType,
    endo: EndoDescriptor,
    clause: WeilClause,
}

impl WeilDescriptor {
    pub fn q(&self) -> &PrimePower {
        &self.q
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn factors(&self) -> &[(IntPolynomial, u32)] {
        &self.factors
    }

    /// `(P, e)` with `f = P^e`, when `f` is a power of one irreducible.
    pub fn simple_power(&self) -> Option<(&IntPolynomial, u32)> {
        match self.factors.as_slice() {
            [(p, e)] => Some((p, *e)),
            _ => None,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn newton_type(&self) -> NewtonType {
        self.newton
    }

    pub fn endo(&self) -> &EndoDescriptor {
        &self.endo
    }

    pub fn clause(&self) -> WeilClause {
        self.clause
    }

    /// Trace `b` of an elliptic Weil polynomial `t^2 - bt + q`.
    pub fn trace(&self) -> BigInt {
        -self.poly.coeff(self.poly.degree().unwrap_or(1) - 1)
    }

    /// Product of two elliptic classes over the same field.
    pub fn product(a: &WeilDescriptor, b: &WeilDescriptor) -> Result<WeilDescriptor> {
        if a.dim != 1 || b.dim != 1 || a.q != b.q {
            return Err(Error::weil("products are formed from two elliptic classes over one field"));
        }
        let poly = &a.poly * &b.poly;
        let mut factors = a.factors.clone();
        for (p, e) in &b.factors {
            match factors.iter_mut().find(|(f, _)| f == p) {
                Some((_, acc)) => *acc += e,
                None => factors.push((p.clone(), *e)),
            }
        }
        let endo = if a.poly == b.poly {
            match &a.endo {
                EndoDescriptor::FieldOfPoly { poly } => EndoDescriptor::Matrix2OverField { poly: poly.clone() },
                EndoDescriptor::HpMatrix { p, .. } => EndoDescriptor::HpMatrix { p: *p, size: 2 },
                other => other.clone(),
            }
        } else {
            EndoDescriptor::Product { factors: vec![a.endo.clone(), b.endo.clone()] }
        };
        let newton = classify_poly(&poly, &a.q)?;
        Ok(WeilDescriptor { q: a.q, dim: 2, poly, factors, simple: false, newton, endo, clause: WeilClause::NonSimple })
    }

    /// Classify an arbitrary monic polynomial of degree 2 or 4 as a Weil polynomial.
    pub fn from_polynomial(q: &PrimePower, f: &IntPolynomial) -> Result<WeilDescriptor> {
        let deg = f.degree().unwrap_or(0);
        if !f.is_monic() || (deg != 2 && deg != 4) {
            return Err(Error::weil(format!("{f} is not monic of degree 2 or 4")));
        }
        let dim = (deg / 2) as u8;
        if !satisfies_functional_equation(f, q, dim) {
            return Err(Error::weil(format!("{f} fails the functional equation over F_{q}")));
        }
        if dim == 1 {
            let b = big_to_i64(&-f.coeff(1))?;
            return validate_elliptic(q, b);
        }
        let mut first_err = None;
        if let Some(base) = square_root_quadratic(f) {
            match validate_surface_simple(
                q,
                SurfaceSpec::Square { c1: big_to_i64(&base.coeff(1))?, c0: big_to_i64(&base.coeff(0))? },
            ) {
                Ok(w) => return Ok(w),
                Err(e) => first_err = Some(e),
            }
        }
        // (t^2 - b1 t + q)(t^2 - b2 t + q): b1 + b2 = -a3, b1 b2 = a2 - 2q
        let qb = q.q_big();
        if let Some((b2, b1)) = integer_roots(&-f.coeff(3), &(f.coeff(2) - BigInt::from(2) * &qb)) {
            let (b1, b2) = (big_to_i64(&b1)?, big_to_i64(&b2)?);
            if let (Ok(x), Ok(y)) = (validate_elliptic(q, b1), validate_elliptic(q, b2)) {
                return WeilDescriptor::product(&x, &y);
            }
        }
        let a1 = big_to_i64(&f.coeff(3))?;
        let a2 = big_to_i64(&f.coeff(2))?;
        match validate_surface_simple(q, SurfaceSpec::Quartic { a1, a2 }) {
            Ok(w) => Ok(w),
            Err(e) => Err(first_err.unwrap_or(e)),
        }
    }
}

fn big_to_i64(x: &BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

fn square_root_quadratic(f: &IntPolynomial) -> Option<IntPolynomial> {
    // monic P with P^2 = f: c1 = a3 / 2, c0 = (a2 - c1^2) / 2
    let two = BigInt::from(2);
    if !(f.coeff(3).clone() % &two).is_zero() {
        return None;
    }
    let c1 = f.coeff(3) / &two;
    let rest = f.coeff(2) - &c1 * &c1;
    if !(rest.clone() % &two).is_zero() {
        return None;
    }
    let p = IntPolynomial::new(vec![rest / two, c1, BigInt::one()]);
    (p.pow(2) == *f).then_some(p)
}

/// `t^{2g} f(q/t) = q^g f(t)`, checked coefficientwise.
pub fn satisfies_functional_equation(f: &IntPolynomial, q: &PrimePower, dim: u8) -> bool {
    let d = 2 * dim as usize;
    if f.degree() != Some(d) {
        return false;
    }
    let qb = q.q_big();
    let qg = num_traits::pow(qb.clone(), dim as usize);
    (0..=d).all(|j| f.coeff(d - j) * num_traits::pow(qb.clone(), d - j) == &qg * f.coeff(j))
}

fn classify_poly(f: &IntPolynomial, q: &PrimePower) -> Result<NewtonType> {
    let slopes = newton_slopes(f, q).map_err(|e| Error::weil(e.to_string()))?;
    newton_type_of(&slopes)
}

/// Newton type recomputed from the Newton polygon.
pub fn classify_newton(w: &WeilDescriptor) -> NewtonType {
    classify_poly(&w.poly, &w.q).expect("validated descriptors have a Newton type")
}

fn elliptic_poly(q: &PrimePower, b: i64) -> IntPolynomial {
    IntPolynomial::new(vec![q.q_big(), BigInt::from(-b), BigInt::one()])
}

/// Accept `t^2 - bt + q` exactly when an elliptic curve over `F_q` has it as Weil polynomial.
pub fn validate_elliptic(q: &PrimePower, b: i64) -> Result<WeilDescriptor> {
    let (p, qq) = (q.p() as i128, q.q() as i128);
    let bb = b as i128;
    if bb * bb > 4 * qq {
        return Err(Error::weil(format!("Weil bound: b² = {} > 4q = {}", bb * bb, 4 * qq)));
    }
    let f = elliptic_poly(q, b);
    let sqrt_q = q.sqrt_q().map(|s| s as i128);
    let (clause, factors, endo) = if bb % p != 0 {
        (WeilClause::EllipticOrdinary, vec![(f.clone(), 1)], EndoDescriptor::FieldOfPoly { poly: f.clone() })
    } else if bb * bb == 4 * qq {
        let root = IntPolynomial::linear_root(BigInt::from(b / 2));
        (WeilClause::Elliptic3, vec![(root, 2)], EndoDescriptor::HpMatrix { p: q.p(), size: 1 })
    } else {
        let field = EndoDescriptor::FieldOfPoly { poly: f.clone() };
        let clause = match (b, sqrt_q) {
            (0, None) => WeilClause::Elliptic2a,
            (0, Some(_)) if p % 4 != 1 => WeilClause::Elliptic2b,
            (0, Some(_)) => return Err(Error::weil("case 2(b) requires p ≢ 1 mod 4")),
            (_, Some(s)) if bb.abs() == s && p % 3 != 1 => WeilClause::Elliptic2c,
            (_, Some(s)) if bb.abs() == s => return Err(Error::weil("case 2(c) requires p ≢ 1 mod 3")),
            (_, None) if (p == 2 || p == 3) && bb * bb == p * qq => WeilClause::Elliptic2d,
            _ => return Err(Error::weil(format!("p | b = {b} but no supersingular clause applies"))),
        };
        (clause, vec![(f.clone(), 1)], field)
    };
    let newton = classify_poly(&f, q)?;
    let expected =
        if clause == WeilClause::EllipticOrdinary { NewtonType::Ordinary } else { NewtonType::Supersingular };
    if newton != expected {
        return Err(Error::weil(format!("{clause} expects {expected} but the Newton polygon gives {newton}")));
    }
    Ok(WeilDescriptor { q: *q, dim: 1, poly: f, factors, simple: true, newton, endo, clause })
}

/// All elliptic Weil polynomials over `F_q`, by ascending trace.
pub fn enumerate_elliptic(q: &PrimePower) -> Vec<WeilDescriptor> {
    let bound = (4 * q.q() as u128).sqrt() as i64;
    (-bound..=bound).filter_map(|b| validate_elliptic(q, b).ok()).collect()
}

/// Input to [`validate_surface_simple`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceSpec {
    /// `f = t^4 + a1 t^3 + a2 t^2 + a1 q t + q^2`, `e = 1`.
    Quartic { a1: i64, a2: i64 },
    /// `f = P^2` with `P = t^2 + c1 t + c0`.
    Square { c1: i64, c0: i64 },
}

fn quartic_poly(q: &PrimePower, a1: i64, a2: i64) -> IntPolynomial {
    let qb = q.q_big();
    IntPolynomial::new(vec![&qb * &qb, BigInt::from(a1) * &qb, BigInt::from(a2), BigInt::from(a1), BigInt::one()])
}

/// Integer roots of `x^2 - s x + m`.
fn integer_roots(s: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let disc = s * s - BigInt::from(4) * m;
    if disc.is_negative() {
        return None;
    }
    let r = disc.sqrt();
    if &r * &r != disc || !((s + &r) % BigInt::from(2)).is_zero() {
        return None;
    }
    Some(((s + &r) / 2, (s - &r) / 2))
}

/// Exact irreducibility test for a monic integer quartic with nonzero constant term,
/// by rational-root and quadratic-factor elimination.
pub fn is_irreducible_quartic(f: &IntPolynomial) -> Result<bool> {
    if f.degree() != Some(4) || !f.is_monic() || f.coeff(0).is_zero() {
        return Err(Error::InvalidPolynomial(format!("{f} is not a monic quartic with f(0) ≠ 0")));
    }
    let d0 = u64::try_from(f.coeff(0).abs()).map_err(|_| Error::Overflow)?;
    let signed_divisors: Vec<BigInt> =
        divisors(d0).into_iter().flat_map(|d| [BigInt::from(d), -BigInt::from(d)]).collect();
    if signed_divisors.iter().any(|r| f.eval(r).is_zero()) {
        return Ok(false);
    }
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    for c1 in &signed_divisors {
        let e1 = &d / c1;
        // (t^2 + x t + c1)(t^2 + y t + e1): x + y = a, xy = b - c1 - e1, x e1 + y c1 = c
        let Some((x, y)) = integer_roots(&a, &(&b - c1 - &e1)) else { continue };
        if &x * &e1 + &y * c1 == c || &y * &e1 + &x * c1 == c {
            return Ok(false);
        }
    }
    Ok(true)
}

fn supersingular_clause(q: &PrimePower, a1: i64, a2: i64) -> Result<WeilClause> {
    let (p, qq) = (q.p() as i128, q.q() as i128);
    let (a1, a2) = (a1 as i128, a2 as i128);
    let odd = q.is_odd_degree();
    let s = q.sqrt_q().map(|s| s as i128);
    type Row = (WeilClause, bool, bool, &'static str);
    let rows: [Row; 8] = [
        (WeilClause::SurfaceI, a1 == 0 && a2 == 0 && odd, p != 2, "p ≠ 2"),
        (WeilClause::SurfaceII, a1 == 0 && a2 == 0 && !odd, p % 8 != 1, "p ≢ 1 mod 8"),
        (WeilClause::SurfaceIII, a1 == 0 && a2 == qq && odd, true, ""),
        (WeilClause::SurfaceIV, a1 == 0 && a2 == -qq && odd, p != 3, "p ≠ 3"),
        (WeilClause::SurfaceV, a1 == 0 && a2 == -qq && !odd, p % 12 != 1, "p ≢ 1 mod 12"),
        (WeilClause::SurfaceVI, s.is_some_and(|s| a1.abs() == s) && a2 == qq && !odd, p % 5 != 1, "p ≢ 1 mod 5"),
        (WeilClause::SurfaceVII, a1 * a1 == 5 * qq && a2 == 3 * qq && odd, p == 5, "p = 5"),
        (WeilClause::SurfaceVIII, a1 * a1 == 2 * qq && a2 == qq && odd, p == 2, "p = 2"),
    ];
    for (clause, shape, cond, text) in rows {
        if shape {
            return if cond { Ok(clause) } else { Err(Error::weil(format!("{clause} requires {text}"))) };
        }
    }
    Err(Error::weil(format!("supersingular pair ({a1}, {a2}) is not a simple class")))
}

/// Accept Weil polynomials of simple abelian surfaces over `F_q`.
pub fn validate_surface_simple(q: &PrimePower, spec: SurfaceSpec) -> Result<WeilDescriptor> {
    if q.q() > u32::MAX as u64 {
        return Err(Error::Overflow);
    }
    match spec {
        SurfaceSpec::Quartic { a1, a2 } => validate_quartic(q, a1, a2),
        SurfaceSpec::Square { c1, c0 } => validate_square(q, c1, c0),
    }
}

fn validate_quartic(q: &PrimePower, a1: i64, a2: i64) -> Result<WeilDescriptor> {
    let qq = q.q() as i128;
    let (x, y) = (a1 as i128, a2 as i128);
    if x * x > 16 * qq {
        return Err(Error::weil(format!("Weil bound: a1² = {} > 16q", x * x)));
    }
    if 4 * y > x * x + 8 * qq {
        return Err(Error::weil("Weil bound: a2 > a1²/4 + 2q"));
    }
    if y + 2 * qq < 0 || (y + 2 * qq) * (y + 2 * qq) < 4 * x * x * qq {
        return Err(Error::weil("Weil bound: a2 < 2|a1|√q − 2q"));
    }
    let f = quartic_poly(q, a1, a2);
    let newton = classify_poly(&f, q)?;
    let clause = if newton == NewtonType::Supersingular {
        supersingular_clause(q, a1, a2)?
    } else {
        WeilClause::SurfaceOrdinaryOrMixed
    };
    if !is_irreducible_quartic(&f)? {
        return Err(Error::weil(format!("{f} is reducible, so e = 1 is impossible")));
    }
    Ok(WeilDescriptor {
        q: *q,
        dim: 2,
        poly: f.clone(),
        factors: vec![(f.clone(), 1)],
        simple: true,
        newton,
        endo: EndoDescriptor::FieldOfPoly { poly: f },
        clause,
    })
}

fn validate_square(q: &PrimePower, c1: i64, c0: i64) -> Result<WeilDescriptor> {
    let (p, qq) = (q.p() as i128, q.q() as i128);
    let (c1, c0) = (c1 as i128, c0 as i128);
    let (clause, endo) = if q.is_odd_degree() {
        if c1 != 0 || c0 != -qq {
            return Err(Error::weil("case 2(b): for odd n, P must be t² − q"));
        }
        (WeilClause::SurfaceB, EndoDescriptor::QuaternionOverRealQuadratic { d: q.p() as i64 })
    } else {
        let s = q.sqrt_q().expect("even degree") as i128;
        if c0 != qq {
            return Err(Error::weil("case 2(c): P must have constant term q"));
        }
        match c1.abs() {
            0 if p % 4 == 1 => (WeilClause::SurfaceCi, EndoDescriptor::QuaternionOverImagQuadratic { d: -1 }),
            0 => return Err(Error::weil("case 2(c)(i) requires p ≡ 1 mod 4")),
            v if v == s && p % 3 == 1 => {
                (WeilClause::SurfaceCii, EndoDescriptor::QuaternionOverImagQuadratic { d: -3 })
            }
            v if v == s => return Err(Error::weil("case 2(c)(ii) requires p ≡ 1 mod 3")),
            _ => return Err(Error::weil("case 2(c): P = t² − bt + q needs b = 0 or b = ±√q")),
        }
    };
    let base = IntPolynomial::new(vec![BigInt::from(c0), BigInt::from(c1), BigInt::one()]);
    let poly = base.pow(2);
    let newton = classify_poly(&poly, q)?;
    if newton != NewtonType::Supersingular {
        return Err(Error::weil(format!("{clause} expects supersingular but got {newton}")));
    }
    Ok(WeilDescriptor { q: *q, dim: 2, poly, factors: vec![(base, 2)], simple: true, newton, endo, clause })
}

/// Supersingular simple surface classes over `F_q` with `e = 1` or `e = 2`.
pub fn enumerate_surface_supersingular(q: &PrimePower) -> Vec<WeilDescriptor> {
    let qq = q.q() as i64;
    let mut out = Vec::new();
    let mut a1s = vec![0i64];
    if let Some(s) = q.sqrt_q() {
        a1s.extend([s as i64, -(s as i64)]);
    }
    for k in [2i64, 5] {
        if let Some(r) = crate::numtheory::exact_root(k as u64 * q.q(), 2) {
            a1s.extend([r as i64, -(r as i64)]);
        }
    }
    a1s.sort_unstable();
    a1s.dedup();
    for &a1 in &a1s {
        for a2 in [-qq, 0, qq, 3 * qq] {
            if let Ok(w) = validate_surface_simple(q, SurfaceSpec::Quartic { a1, a2 }) {
                if w.newton == NewtonType::Supersingular {
                    out.push(w);
                }
            }
        }
    }
    let squares: Vec<(i64, i64)> = match q.sqrt_q() {
        None => vec![(0, -qq)],
        Some(s) => vec![(0, qq), (s as i64, qq), (-(s as i64), qq)],
    };
    out.extend(
        squares.into_iter().filter_map(|(c1, c0)| validate_surface_simple(q, SurfaceSpec::Square { c1, c0 }).ok()),
    );
    out
}

/// `|A(F_{q^r})| = prod_j (pi_j^r - 1)`.
pub fn abelian_point_count(w: &WeilDescriptor, r: u32) -> BigInt {
    symmetric::root_power_minus_one_product(&w.poly, r).abs()
}

/// `P_0, ..., P_{2 dim}` with `Z_A(t) = prod_i P_i(t)^{(-1)^{i+1}}`.
pub fn abelian_zeta(w: &WeilDescriptor) -> Vec<IntPolynomial> {
    symmetric::exterior_power_polys(&w.poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_q(q).unwrap()
    }

    #[test]
    fn elliptic_examples() {
        let w = validate_elliptic(&pp(7), 0).unwrap();
        assert_eq!(w.clause(), WeilClause::Elliptic2a);
        assert_eq!(w.newton_type(), NewtonType::Supersingular);
        let e = validate_elliptic(&pp(7), 6).unwrap_err();
        assert!(e.to_string().contains("Weil bound"));
        // p = 5 ≡ 2 mod 3, q = 25, b = ±5
        for b in [5, -5] {
            assert_eq!(validate_elliptic(&pp(25), b).unwrap().clause(), WeilClause::Elliptic2c);
        }
        assert!(validate_elliptic(&pp(49), 7).is_err());
    }

    #[test]
    fn elliptic_enumeration_examples() {
        let traces = |q: u64| -> Vec<i64> {
            enumerate_elliptic(&pp(q)).iter().map(|w| i64::try_from(w.trace()).unwrap()).collect()
        };
        assert_eq!(traces(7), (-5..=5).collect::<Vec<_>>());
        assert!(traces(2).contains(&2) && traces(2).contains(&-2));
        let nine = enumerate_elliptic(&pp(9));
        let clause = |b: i64| nine.iter().find(|w| w.trace() == BigInt::from(b)).unwrap().clause();
        assert_eq!(clause(0), WeilClause::Elliptic2b);
        assert_eq!(clause(3), WeilClause::Elliptic2c);
        assert_eq!(clause(-6), WeilClause::Elliptic3);
    }

    #[test]
    fn surface_examples() {
        for q in [3u64, 27, 5, 125] {
            let w = validate_surface_simple(&pp(q), SurfaceSpec::Quartic { a1: 0, a2: 0 }).unwrap();
            assert_eq!(w.clause(), WeilClause::SurfaceI);
        }
        let w = validate_surface_simple(&pp(49), SurfaceSpec::Quartic { a1: 7, a2: 49 }).unwrap();
        assert_eq!(w.clause(), WeilClause::SurfaceVI);
        let w = validate_surface_simple(&pp(7), SurfaceSpec::Square { c1: 0, c0: -7 }).unwrap();
        assert_eq!(w.endo(), &EndoDescriptor::QuaternionOverRealQuadratic { d: 7 });
        assert_eq!(w.simple_power().unwrap().1, 2);
        assert!(validate_surface_simple(&pp(11 * 11), SurfaceSpec::Quartic { a1: 11, a2: 121 }).is_err());
        assert!(validate_surface_simple(&pp(2), SurfaceSpec::Quartic { a1: 0, a2: 0 }).is_err());
    }

    #[test]
    fn ordinary_and_mixed_quartics() {
        // (t^2 - t + 5)(t^2 + 5) is reducible and must be refused as simple
        assert!(validate_surface_simple(&pp(5), SurfaceSpec::Quartic { a1: -1, a2: 10 }).is_err());
        let w = validate_surface_simple(&pp(5), SurfaceSpec::Quartic { a1: 1, a2: 1 }).unwrap();
        assert_eq!(w.newton_type(), NewtonType::Ordinary);
        let w = validate_surface_simple(&pp(5), SurfaceSpec::Quartic { a1: 1, a2: 5 }).unwrap();
        assert_eq!(w.newton_type(), NewtonType::Mixed);
    }

    #[test]
    fn mixed_product_classifies_mixed() {
        let q = pp(5);
        let w =
            WeilDescriptor::product(&validate_elliptic(&q, 1).unwrap(), &validate_elliptic(&q, 0).unwrap()).unwrap();
        assert_eq!(classify_newton(&w), NewtonType::Mixed);
        assert!(!w.is_simple());
    }

    #[test]
    fn from_polynomial_routes() {
        let q = pp(9);
        let f = WeilShape::LinearFourth.polynomials(&q).unwrap()[0].clone();
        let w = WeilDescriptor::from_polynomial(&q, &f).unwrap();
        assert_eq!(w.endo(), &EndoDescriptor::HpMatrix { p: 3, size: 2 });
        let q = pp(7);
        let f = WeilShape::DiffSquare.polynomials(&q).unwrap()[0].clone();
        assert_eq!(WeilDescriptor::from_polynomial(&q, &f).unwrap().clause(), WeilClause::SurfaceB);
        let f = WeilShape::SumSquare.polynomials(&q).unwrap()[0].clone();
        assert_eq!(WeilDescriptor::from_polynomial(&q, &f).unwrap().clause(), WeilClause::NonSimple);
    }

    #[test]
    fn point_counts() {
        let q = pp(9);
        let w = WeilDescriptor::from_polynomial(&q, &IntPolynomial::from_i64(&[81, -108, 54, -12, 1])).unwrap();
        assert_eq!(abelian_point_count(&w, 1), BigInt::from(16));
        let e = validate_elliptic(&pp(2), 1).unwrap();
        assert_eq!(abelian_point_count(&e, 1), BigInt::from(2));
        let p = 7i64;
        let w = validate_surface_simple(&pp(7), SurfaceSpec::Square { c1: 0, c0: -p }).unwrap();
        assert_eq!(abelian_point_count(&w, 2), BigInt::from((p - 1).pow(4)));
    }

    #[test]
    fn zeta_of_square_difference() {
        let p = 5i64;
        let w = validate_surface_simple(&pp(5), SurfaceSpec::Square { c1: 0, c0: -p }).unwrap();
        let ps = abelian_zeta(&w);
        assert_eq!(ps.len(), 5);
        assert_eq!(ps[0], IntPolynomial::from_i64(&[1, -1]));
        assert_eq!(ps[4], IntPolynomial::from_i64(&[1, -p * p]));
        // pair products of {√p, √p, −√p, −√p}: p twice, −p four times
        let expected = &IntPolynomial::from_i64(&[1, -p]).pow(2) * &IntPolynomial::from_i64(&[1, p]).pow(4);
        assert_eq!(ps[2], expected);
    }
}
