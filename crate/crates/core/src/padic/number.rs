use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{mod_floor, mod_inverse, split_unit, Prime, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 16;

/// A truncated p-adic number `sum_{i < precision} digits[i] * p^(offset + i)`.
///
/// Nonzero elements have a nonzero leading digit, so `offset` is the
/// valuation. The zero element has all-zero digits and offset 0.
///
/// Values obtained from [`PAdicNumber::embed`] remember the rational they
/// came from, and arithmetic on such values tracks the exact result. That
/// is the only way a computation may produce the zero element through
/// cancellation: if all known digits cancel and the exact value is not
/// known to be zero, the operation fails with
/// [`Error::PrecisionExhausted`].
#[derive(Clone, Serialize)]
pub struct PAdicNumber {
    p: u64,
    offset: i64,
    digits: Vec<u64>,
    precision: usize,
    #[serde(skip)]
    exact: Option<Rational>,
}

impl PartialEq for PAdicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.offset == other.offset && self.digits == other.digits
    }
}

impl Eq for PAdicNumber {}

impl fmt::Debug for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "p={} offset={} digits=[{}] (prec {})",
            self.p,
            self.offset,
            digits.join(","),
            self.precision
        )
    }
}

pub(crate) fn small_prime(p: &Prime) -> Result<u64> {
    p.to_u64()
        .filter(|&v| v < (1 << 32))
        .ok_or_else(|| Error::InvalidArgument(format!("prime {p} too large for digit storage")))
}

fn pow(p: u64, e: usize) -> BigUint {
    BigUint::from(p).pow(e as u32)
}

impl PAdicNumber {
    fn from_mantissa(p: u64, offset: i64, mantissa: &BigUint, precision: usize) -> Self {
        let mut digits = Vec::with_capacity(precision);
        let mut m = mantissa % pow(p, precision);
        let pb = BigUint::from(p);
        for _ in 0..precision {
            let (q, r) = m.div_rem(&pb);
            digits.push(r.to_u64().unwrap());
            m = q;
        }
        PAdicNumber {
            p,
            offset,
            digits,
            precision,
            exact: None,
        }
    }

    /// The zero element with the given number of (zero) digits.
    pub fn zero(p: &Prime, precision: usize) -> Result<Self> {
        let p = small_prime(p)?;
        let precision = precision.max(1);
        Ok(PAdicNumber {
            p,
            offset: 0,
            digits: vec![0; precision],
            precision,
            exact: Some(Rational::zero()),
        })
    }

    /// The expansion of `x` to `precision` significant digits.
    pub fn embed(x: &Rational, p: &Prime, precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        if x.is_zero() {
            return PAdicNumber::zero(p, precision);
        }
        let ps = small_prime(p)?;
        let (v, u) = split_unit(x, p);
        let modulus = pow(ps, precision);
        let inv = mod_inverse(u.denom(), &modulus).expect("unit denominator");
        let mantissa = (mod_floor(u.numer(), &modulus) * inv) % &modulus;
        let mut out = PAdicNumber::from_mantissa(ps, v, &mantissa, precision);
        out.exact = Some(x.clone());
        Ok(out)
    }

    /// The p-adic integer known modulo p^n whose residue is `value`.
    pub fn from_residue(value: &BigInt, p: &Prime, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        let ps = small_prime(p)?;
        let modulus = pow(ps, n);
        let r = mod_floor(value, &modulus);
        if r.is_zero() {
            let mut z = PAdicNumber::zero(p, n)?;
            z.exact = None;
            return Ok(z);
        }
        let (v, unit) = crate::arith::remove_factor(&r, p.value());
        Ok(PAdicNumber::from_mantissa(
            ps,
            v,
            &unit,
            n - v as usize,
        ))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// The rational this value is known to equal, when tracked.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// v_p of a nonzero element; `None` for the zero element.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    /// Integer value of the digit string (without the p^offset factor).
    pub fn mantissa(&self) -> BigUint {
        let pb = BigUint::from(self.p);
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &pb + d)
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }

    fn with_exact(mut self, exact: Option<Rational>) -> Self {
        self.exact = exact;
        self
    }

    fn exact_zero(p: u64, precision: usize) -> Self {
        PAdicNumber {
            p,
            offset: 0,
            digits: vec![0; precision],
            precision,
            exact: Some(Rational::zero()),
        }
    }

    fn is_exact_zero(&self) -> bool {
        self.exact.as_ref().is_some_and(|e| e.is_zero())
    }

    fn truncated(&self, precision: usize) -> Self {
        let precision = precision.min(self.precision);
        PAdicNumber {
            p: self.p,
            offset: self.offset,
            digits: self.digits[..precision].to_vec(),
            precision,
            exact: self.exact.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let r = self.precision.min(other.precision);
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        if self.is_exact_zero() {
            return Ok(other.truncated(r).with_exact(exact));
        }
        if other.is_exact_zero() {
            return Ok(self.truncated(r).with_exact(exact));
        }
        // absolute precision of the sum and the smallest exponent present
        let abs = (self.offset + self.precision as i64).min(other.offset + other.precision as i64);
        let low = self.offset.min(other.offset);
        let width = (abs - low) as usize;
        let modulus = pow(self.p, width);
        let lift = |x: &Self| x.mantissa() * pow(self.p, (x.offset - low) as usize);
        let sum = (lift(self) + lift(other)) % &modulus;
        if sum.is_zero() {
            return match exact {
                Some(e) if e.is_zero() => Ok(PAdicNumber::exact_zero(self.p, r)),
                _ => Err(Error::PrecisionExhausted),
            };
        }
        let pb = Prime::new_unchecked(BigUint::from(self.p));
        let (v, unit) = crate::arith::remove_factor(&sum, pb.value());
        let keep = r.min(width - v as usize);
        Ok(PAdicNumber::from_mantissa(self.p, low + v, &unit, keep).with_exact(exact))
    }

    pub fn neg(&self) -> Self {
        let exact = self.exact.as_ref().map(|e| -e);
        if self.is_zero() {
            return self.clone().with_exact(exact);
        }
        let modulus = pow(self.p, self.precision);
        let m = &modulus - self.mantissa();
        PAdicNumber::from_mantissa(self.p, self.offset, &m, self.precision).with_exact(exact)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let r = self.precision.min(other.precision);
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        if self.is_zero() || other.is_zero() {
            let mut z = PAdicNumber::exact_zero(self.p, r);
            z.exact = if self.is_exact_zero() || other.is_exact_zero() {
                Some(Rational::zero())
            } else {
                None
            };
            return Ok(z);
        }
        let m = self.mantissa() * other.mantissa();
        Ok(PAdicNumber::from_mantissa(self.p, self.offset + other.offset, &m, r).with_exact(exact))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = pow(self.p, self.precision);
        let inv = mod_inverse(&BigInt::from(self.mantissa()), &modulus).expect("unit mantissa");
        let exact = self.exact.as_ref().map(|e| e.recip().unwrap());
        Ok(PAdicNumber::from_mantissa(self.p, -self.offset, &inv, self.precision).with_exact(exact))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// Image in Z/p^n Z of a p-adic integer.
    pub fn to_residue(&self, n: usize) -> Result<ResidueRingElement> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if !self.is_zero() && self.offset < 0 {
            return Err(Error::NegativeValuation(self.offset));
        }
        // known modulo p^(offset + precision)
        let available = if self.is_zero() {
            self.precision
        } else {
            self.offset as usize + self.precision
        };
        if n > available {
            return Err(Error::InsufficientPrecision { needed: n, available });
        }
        if self.is_zero() {
            return Ok(ResidueRingElement::new(self.p, n, BigUint::zero()));
        }
        let value = self.mantissa() * pow(self.p, self.offset as usize);
        Ok(ResidueRingElement::new(self.p, n, value))
    }
}

/// An element of Z / p^n Z.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueRingElement {
    pub p: u64,
    pub n: usize,
    #[serde(serialize_with = "crate::arith::big_serde::uint")]
    pub value: BigUint,
}

impl ResidueRingElement {
    pub fn new(p: u64, n: usize, value: BigUint) -> Self {
        let value = value % pow(p, n);
        ResidueRingElement { p, n, value }
    }

    pub fn modulus(&self) -> BigUint {
        pow(self.p, self.n)
    }

    fn same_ring(&self, other: &Self) {
        assert!(self.p == other.p && self.n == other.n, "different residue rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        ResidueRingElement::new(self.p, self.n, &self.value + &other.value)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        ResidueRingElement::new(self.p, self.n, &self.value * &other.value)
    }

    /// Canonical projection Z/p^n -> Z/p^m for m <= n.
    pub fn project(&self, m: usize) -> Self {
        assert!(m <= self.n);
        ResidueRingElement::new(self.p, m, self.value.clone())
    }
}

impl fmt::Display for ResidueRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus())
    }
}
