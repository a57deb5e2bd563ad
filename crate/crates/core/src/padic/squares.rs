use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::PAdicNumber;
use crate::arith::{generalized_legendre, legendre, split_unit, valuation, Prime, Rational, Valuation};
use crate::error::{Error, Result};

/// An element of Q_p^x / (Q_p^x)^2.
///
/// For odd p there are four classes, represented by 1, u, p and pu with u
/// the least quadratic non-residue mod p. For p = 2 there are eight,
/// represented by +-1, +-2, +-5, +-10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareClass {
    One,
    NonResidue,
    Uniformizer,
    UniformizerNonResidue,
    Dyadic(i8),
}

impl SquareClass {
    /// Multiplication in the group of square classes. `None` when mixing
    /// odd and dyadic classes.
    pub fn product(self, other: SquareClass) -> Option<SquareClass> {
        use SquareClass::*;
        let bits = |c: SquareClass| match c {
            One => Some((false, false)),
            NonResidue => Some((false, true)),
            Uniformizer => Some((true, false)),
            UniformizerNonResidue => Some((true, true)),
            Dyadic(_) => None,
        };
        match (self, other) {
            (Dyadic(a), Dyadic(b)) => {
                let prod = Rational::from(a as i64 * b as i64);
                Some(dyadic_class(&prod))
            }
            (a, b) => {
                let (va, ua) = bits(a)?;
                let (vb, ub) = bits(b)?;
                Some(match (va ^ vb, ua ^ ub) {
                    (false, false) => One,
                    (false, true) => NonResidue,
                    (true, false) => Uniformizer,
                    (true, true) => UniformizerNonResidue,
                })
            }
        }
    }

    pub fn is_square(self) -> bool {
        matches!(self, SquareClass::One | SquareClass::Dyadic(1))
    }

    /// A rational in this class.
    pub fn representative(self, p: &Prime) -> Rational {
        let u = || Rational::from(least_non_residue(p) as i64);
        let pr = || Rational::from(p.to_bigint());
        match self {
            SquareClass::One => Rational::one(),
            SquareClass::NonResidue => u(),
            SquareClass::Uniformizer => pr(),
            SquareClass::UniformizerNonResidue => pr() * u(),
            SquareClass::Dyadic(r) => Rational::from(r as i64),
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::One => f.write_str("1"),
            SquareClass::NonResidue => f.write_str("u"),
            SquareClass::Uniformizer => f.write_str("p"),
            SquareClass::UniformizerNonResidue => f.write_str("pu"),
            SquareClass::Dyadic(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub(crate) fn least_non_residue(p: &Prime) -> u64 {
    (2u64..)
        .find(|&a| legendre(&BigInt::from(a), p).unwrap() == -1)
        .unwrap()
}

/// Odd 2-adic unit reduced mod 8.
pub(crate) fn unit_mod_8(u: &Rational) -> u8 {
    // an odd denominator is its own inverse mod 8
    let r = (u.numer() * u.denom()).mod_floor(&BigInt::from(8));
    r.to_u8().unwrap()
}

fn dyadic_class(x: &Rational) -> SquareClass {
    let two = Prime::two();
    let (v, u) = split_unit(x, &two);
    let rep: i8 = match unit_mod_8(&u) {
        1 => 1,
        3 => -5,
        5 => 5,
        7 => -1,
        _ => unreachable!("unit is odd"),
    };
    SquareClass::Dyadic(if v.is_odd() { rep * 2 } else { rep })
}

/// Square class of a nonzero rational in Q_p.
pub fn square_class(x: &Rational, p: &Prime) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("square class of 0".into()));
    }
    if p.is_two() {
        return Ok(dyadic_class(x));
    }
    let v = match valuation(x, p) {
        Valuation::Finite(v) => v,
        Valuation::Infinity => unreachable!(),
    };
    let residue = generalized_legendre(x, p)? == 1;
    Ok(match (v.is_odd(), residue) {
        (false, true) => SquareClass::One,
        (false, false) => SquareClass::NonResidue,
        (true, true) => SquareClass::Uniformizer,
        (true, false) => SquareClass::UniformizerNonResidue,
    })
}

/// Square class of a truncated p-adic number. Needs one known digit for odd
/// p and three for p = 2.
pub fn square_class_padic(x: &PAdicNumber) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("square class of 0".into()));
    }
    let p = Prime::try_from(x.prime())?;
    let needed = if p.is_two() { 3 } else { 1 };
    if x.precision() < needed {
        return Err(Error::InsufficientPrecision {
            needed,
            available: x.precision(),
        });
    }
    let modulus = if p.is_two() { 8u64 } else { x.prime() };
    let unit = (x.mantissa() % modulus).to_u64().unwrap() as i64;
    let parity = x.offset().rem_euclid(2);
    let rep = Rational::from(unit) * Rational::from(p.to_bigint()).pow(parity as i32);
    square_class(&rep, &p)
}

/// Which criterion decided a membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipCriterion {
    /// The value has even valuation and a square unit part.
    UnitSquare,
    /// The value has a non-square unit part.
    UnitNonResidue,
    /// The valuation is incompatible with a square (or a cube).
    ValuationObstruction,
}

/// Certificate for the existential Z_p definitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZpMembership {
    pub member: bool,
    /// 1 + p x^2 (or 1 + 2 x^3 for the cubic variant at p = 2).
    pub value: Rational,
    pub value_valuation: i64,
    pub class: Option<SquareClass>,
    pub criterion: MembershipCriterion,
}

/// Decides whether `1 + p x^2 = y^2` has a solution y in Q_p (odd p) by
/// classifying `1 + p x^2` exactly; no search is involved.
pub fn is_zp_member(x: &Rational, p: &Prime) -> Result<ZpMembership> {
    if p.is_two() {
        return Err(Error::InvalidArgument(
            "the square-based definition needs an odd prime; use is_z2_member_cubic".into(),
        ));
    }
    let pr = Rational::from(p.to_bigint());
    let value = Rational::one() + pr * x.square();
    let v = crate::arith::val(&value, p);
    let class = square_class(&value, p)?;
    let criterion = match class {
        SquareClass::One => MembershipCriterion::UnitSquare,
        SquareClass::NonResidue => MembershipCriterion::UnitNonResidue,
        _ => MembershipCriterion::ValuationObstruction,
    };
    Ok(ZpMembership {
        member: class.is_square(),
        value,
        value_valuation: v,
        class: Some(class),
        criterion,
    })
}

/// Decides whether `1 + 2 x^3 = y^3` has a solution y in Q_2.
///
/// An element of Q_2 is a cube exactly when its valuation is divisible by
/// 3: for a 2-adic unit c the polynomial Y^3 - c has the simple root
/// Y = 1 mod 2 (the derivative 3 is a unit), so c is a cube by Hensel, and
/// a cube 2^(3k) c is then a cube as well. If v_2(x) >= 0 then 1 + 2x^3 is
/// a unit, hence a cube. If v_2(x) = -m < 0 then
/// v_2(1 + 2x^3) = 1 - 3m, which is 1 mod 3, so 1 + 2x^3 is not a cube.
/// Hence the predicate holds exactly on Z_2.
pub fn is_z2_member_cubic(x: &Rational) -> Result<ZpMembership> {
    let two = Prime::two();
    let value = Rational::one() + Rational::from(2) * x.pow(3);
    if value.is_zero() {
        // 1 + 2x^3 = 0 forces x^3 = -1/2, which has no rational solution
        unreachable!("-1/2 is not a rational cube");
    }
    let v = crate::arith::val(&value, &two);
    let member = v.rem_euclid(3) == 0;
    Ok(ZpMembership {
        member,
        value,
        value_valuation: v,
        class: None,
        criterion: if member {
            MembershipCriterion::UnitSquare
        } else {
            MembershipCriterion::ValuationObstruction
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::try_from(n).unwrap()
    }

    #[test]
    fn class_examples() {
        assert_eq!(square_class(&Rational::from(10), &p(5)).unwrap(), SquareClass::UniformizerNonResidue);
        assert_eq!(square_class(&Rational::from(9), &p(5)).unwrap(), SquareClass::One);
        assert_eq!(square_class(&Rational::frac(1, 5), &p(5)).unwrap(), SquareClass::Uniformizer);
        assert!(square_class(&Rational::zero(), &p(5)).is_err());
    }

    #[test]
    fn dyadic_classes() {
        let two = Prime::two();
        let cls = |n: i64, d: i64| square_class(&Rational::frac(n, d), &two).unwrap();
        assert_eq!(cls(17, 1), SquareClass::Dyadic(1));
        assert_eq!(cls(7, 1), SquareClass::Dyadic(-1));
        assert_eq!(cls(3, 1), SquareClass::Dyadic(-5));
        assert_eq!(cls(6, 1), SquareClass::Dyadic(-10));
        assert_eq!(cls(1, 8), SquareClass::Dyadic(2));
        assert_eq!(cls(4, 9), SquareClass::Dyadic(1));
    }

    #[test]
    fn padic_class_agrees_with_rational() {
        for q in [2u64, 3, 5, 7] {
            for n in -30i64..30 {
                if n == 0 {
                    continue;
                }
                for d in [1i64, 2, 3, 4, 9] {
                    let x = Rational::frac(n, d);
                    let e = PAdicNumber::embed(&x, &p(q), 5).unwrap();
                    assert_eq!(square_class_padic(&e).unwrap(), square_class(&x, &p(q)).unwrap());
                }
            }
        }
    }

    #[test]
    fn zp_examples() {
        let m = is_zp_member(&Rational::frac(1, 3), &p(3)).unwrap();
        assert!(!m.member);
        assert_eq!(m.value, Rational::frac(4, 3));
        assert_eq!(m.criterion, MembershipCriterion::ValuationObstruction);
        let m = is_zp_member(&Rational::from(7), &p(3)).unwrap();
        assert!(m.member);
        assert_eq!(m.value, Rational::from(148));
        assert!(is_zp_member(&Rational::zero(), &p(5)).unwrap().member);
        assert!(is_zp_member(&Rational::one(), &Prime::two()).is_err());
    }

    #[test]
    fn cubic_two_adic_examples() {
        assert!(is_z2_member_cubic(&Rational::from(3)).unwrap().member);
        assert!(is_z2_member_cubic(&Rational::frac(5, 7)).unwrap().member);
        assert!(!is_z2_member_cubic(&Rational::frac(1, 2)).unwrap().member);
        assert!(!is_z2_member_cubic(&Rational::frac(3, 4)).unwrap().member);
    }

    #[test]
    fn class_product_table() {
        use SquareClass::*;
        assert_eq!(Uniformizer.product(UniformizerNonResidue), Some(NonResidue));
        assert_eq!(Dyadic(-5).product(Dyadic(-10)), Some(Dyadic(2)));
        assert_eq!(One.product(Dyadic(1)), None);
    }
}
