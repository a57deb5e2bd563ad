use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::PAdicNumber;
use crate::arith::{mod_floor, mod_inverse, Prime};
use crate::error::{Error, Result};

/// A polynomial with integer coefficients, stored lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Coefficients from the constant term upwards; trailing zeros dropped.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_mod(&self, x: &BigInt, m: &BigUint) -> BigUint {
        let m_int = BigInt::from(m.clone());
        let x = mod_floor(x, m);
        let x = BigInt::from(x);
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * &x + c) % &m_int);
        mod_floor(&v, m)
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() == 1 {
            return IntPoly::new(vec![]);
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }
}

/// Comma-separated coefficients from the leading term down, e.g. `1,0,-6`
/// for X^2 - 6.
impl FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .replace('\u{2212}', "-")
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        coeffs.reverse();
        Ok(IntPoly::new(coeffs))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().rev().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Lift a simple root of `f` modulo p to a root modulo p^precision.
///
/// Newton iteration in the residue rings; the exponent of the modulus
/// doubles with each step.
pub fn hensel_lift(
    f: &IntPoly,
    alpha0: &BigInt,
    p: &Prime,
    precision: usize,
) -> Result<PAdicNumber> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be positive".into()));
    }
    if !f.is_monic() {
        return Err(Error::InvalidArgument(format!("{f} is not monic")));
    }
    let pv = p.value();
    let df = f.derivative();
    if !f.eval_mod(alpha0, pv).is_zero() {
        return Err(Error::NotASimpleRoot(format!(
            "f({alpha0}) is not 0 mod {p}"
        )));
    }
    if df.eval_mod(alpha0, pv).is_zero() {
        return Err(Error::NotASimpleRoot(format!(
            "f'({alpha0}) is 0 mod {p}"
        )));
    }
    let mut beta = BigInt::from(mod_floor(alpha0, pv));
    let mut k = 1;
    while k < precision {
        k = (2 * k).min(precision);
        let modulus = pv.pow(k as u32);
        let fx = f.eval_mod(&beta, &modulus);
        let dfx = df.eval_mod(&beta, &modulus);
        let inv = mod_inverse(&BigInt::from(dfx), &modulus).expect("f' is a unit");
        let step = BigInt::from((fx * inv) % &modulus);
        beta = BigInt::from(mod_floor(&(beta - step), &modulus));
    }
    PAdicNumber::from_residue(&beta, p, precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::try_from(n).unwrap()
    }

    fn lift(f: &[i64], a: i64, q: u64, k: usize) -> Result<BigUint> {
        let f = IntPoly::from_i64(f);
        hensel_lift(&f, &BigInt::from(a), &p(q), k).map(|b| b.to_residue(k).unwrap().value)
    }

    /// Residues r = a mod q with f(r) = 0 mod q^k, by enumeration.
    fn search(f: &[i64], a: i64, q: u64, k: u32) -> Vec<u64> {
        let m = q.pow(k);
        let f = IntPoly::from_i64(f);
        (0..m)
            .filter(|r| r % q == a as u64 % q)
            .filter(|&r| f.eval_mod(&BigInt::from(r), &BigUint::from(m)).is_zero())
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(search(&[-6, 0, 1], 4, 5, 2), vec![9]);
        assert_eq!(lift(&[-6, 0, 1], 4, 5, 2).unwrap(), BigUint::from(9u32));
        assert_eq!(search(&[-1, 0, 0, 0, 1], 2, 5, 2), vec![7]);
        assert_eq!(lift(&[-1, 0, 0, 0, 1], 2, 5, 2).unwrap(), BigUint::from(7u32));
        assert!(matches!(lift(&[-2, 0, 1], 1, 5, 2), Err(Error::NotASimpleRoot(_))));
    }

    #[test]
    fn rejects_double_root_and_non_monic() {
        // X^2 has a double root at 0
        assert!(matches!(lift(&[0, 0, 1], 0, 3, 3), Err(Error::NotASimpleRoot(_))));
        assert!(matches!(lift(&[-1, 2], 1, 3, 3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn root_of_unity_lifts_far() {
        let f = IntPoly::from_i64(&[-1, 0, 0, 0, 0, 0, 1]);
        let beta = hensel_lift(&f, &BigInt::from(3), &p(7), 20).unwrap();
        let r = beta.to_residue(20).unwrap();
        assert!(f.eval_mod(&BigInt::from(r.value.clone()), &r.modulus()).is_zero());
    }

    #[test]
    fn root_divisible_by_p_keeps_full_residue() {
        // X^2 + X - 6 = (X - 2)(X + 3); the root -3 is 0 mod 3
        assert_eq!(lift(&[-6, 1, 1], 0, 3, 4).unwrap(), BigUint::from(78u32));
        assert_eq!(search(&[-6, 1, 1], 0, 3, 4), vec![78]);
    }

    #[test]
    fn parse_descending() {
        let f: IntPoly = "1,0,-6".parse().unwrap();
        assert_eq!(f, IntPoly::from_i64(&[-6, 0, 1]));
        assert_eq!(f.to_string(), "1,0,-6");
    }
}
