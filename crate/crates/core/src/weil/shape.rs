//! Named supersingular Weil polynomial shapes used in the existence and trace tables.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{IntPolynomial, PrimePower};

/// A family of degree-4 Weil polynomials, with `±` expanding to several members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeilShape {
    /// `(t ± √q)^4`
    LinearFourth,
    /// `(t^2 - q)^2`
    DiffSquare,
    /// `(t^2 + q)^2`
    SumSquare,
    /// `(t^2 ± q)^2`
    PmSquare,
    /// `(t^2 + q)(t ± √q)^2`
    SumTimesLinear,
    /// `(t^2 ± √q t + q)^2`
    TraceRootSquare,
    /// `t^4 - q t^2 + q^2`
    QuarticMinus,
    /// `t^4 ± q t^2 + q^2`
    QuarticPm,
    /// `t^4 + q^2`
    QuarticZero,
    /// `(t^2 ± 3^r + q)^2`, printed as tabulated for `p = 3`
    SpecialThree,
    /// `(t^2 ± 2^r + q)^2`, printed as tabulated for `p = 2`
    SpecialTwo,
}

fn quad(c1: &BigInt, c0: &BigInt) -> IntPolynomial {
    IntPolynomial::new(vec![c0.clone(), c1.clone(), BigInt::from(1)])
}

impl WeilShape {
    pub const ALL: [WeilShape; 11] = [
        WeilShape::LinearFourth,
        WeilShape::DiffSquare,
        WeilShape::SumSquare,
        WeilShape::PmSquare,
        WeilShape::SumTimesLinear,
        WeilShape::TraceRootSquare,
        WeilShape::QuarticMinus,
        WeilShape::QuarticPm,
        WeilShape::QuarticZero,
        WeilShape::SpecialThree,
        WeilShape::SpecialTwo,
    ];

    /// The sign `ε` with `f = (t^2 + εq)^2`, for the two square shapes.
    pub fn eps(&self) -> Option<i8> {
        match self {
            WeilShape::DiffSquare => Some(-1),
            WeilShape::SumSquare => Some(1),
            _ => None,
        }
    }

    pub fn needs_square_q(&self) -> bool {
        matches!(self, WeilShape::LinearFourth | WeilShape::SumTimesLinear | WeilShape::TraceRootSquare)
    }

    /// Every member of the family over `F_q`.
    pub fn polynomials(&self, q: &PrimePower) -> Result<Vec<IntPolynomial>> {
        let qb = q.q_big();
        let zero = BigInt::from(0);
        let root = || -> Result<BigInt> {
            q.sqrt_q().map(BigInt::from).ok_or_else(|| Error::weil(format!("{self} needs √q ∈ Z, but q = {q}")))
        };
        let quartic = |a2: BigInt| IntPolynomial::new(vec![&qb * &qb, zero.clone(), a2, zero.clone(), BigInt::from(1)]);
        Ok(match self {
            WeilShape::LinearFourth => {
                let s = root()?;
                vec![IntPolynomial::linear_root(s.clone()).pow(4), IntPolynomial::linear_root(-s).pow(4)]
            }
            WeilShape::DiffSquare => vec![quad(&zero, &-&qb).pow(2)],
            WeilShape::SumSquare => vec![quad(&zero, &qb).pow(2)],
            WeilShape::PmSquare => vec![quad(&zero, &-&qb).pow(2), quad(&zero, &qb).pow(2)],
            WeilShape::SumTimesLinear => {
                let s = root()?;
                let base = quad(&zero, &qb);
                vec![
                    &base * &IntPolynomial::linear_root(s.clone()).pow(2),
                    &base * &IntPolynomial::linear_root(-s).pow(2),
                ]
            }
            WeilShape::TraceRootSquare => {
                let s = root()?;
                vec![quad(&s, &qb).pow(2), quad(&-s, &qb).pow(2)]
            }
            WeilShape::QuarticMinus => vec![quartic(-&qb)],
            WeilShape::QuarticPm => vec![quartic(qb.clone()), quartic(-&qb)],
            WeilShape::QuarticZero => vec![quartic(zero.clone())],
            WeilShape::SpecialThree | WeilShape::SpecialTwo => {
                return Err(Error::weil(format!(
                    "{self}: the placement of r in this tabulated polynomial is ambiguous"
                )))
            }
        })
    }
}

impl fmt::Display for WeilShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeilShape::LinearFourth => "(t±√q)⁴",
            WeilShape::DiffSquare => "(t²−q)²",
            WeilShape::SumSquare => "(t²+q)²",
            WeilShape::PmSquare => "(t²±q)²",
            WeilShape::SumTimesLinear => "(t²+q)(t±√q)²",
            WeilShape::TraceRootSquare => "(t²±√qt+q)²",
            WeilShape::QuarticMinus => "t⁴−qt²+q²",
            WeilShape::QuarticPm => "t⁴±qt²+q²",
            WeilShape::QuarticZero => "t⁴+q²",
            WeilShape::SpecialThree => "(t²±3^r+q)²",
            WeilShape::SpecialTwo => "(t²±2^r+q)²",
        })
    }
}
