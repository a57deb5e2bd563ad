use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{split_unit, Prime, Rational};
use crate::error::{Error, Result};

fn require_odd(l: &Prime) -> Result<()> {
    if l.is_two() {
        Err(Error::InvalidArgument(
            "Legendre symbol needs an odd prime".into(),
        ))
    } else {
        Ok(())
    }
}

/// Reduce an integer into [0, m).
pub fn mod_floor(a: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from(m.clone());
    a.mod_floor(&m).to_biguint().unwrap()
}

/// Legendre symbol (a | l) by Euler's criterion.
pub fn legendre(a: &BigInt, l: &Prime) -> Result<i8> {
    require_odd(l)?;
    let p = l.value();
    let r = mod_floor(a, p);
    if r.is_zero() {
        return Ok(0);
    }
    let e = (p - 1u32) >> 1;
    let t = r.modpow(&e, p);
    Ok(if t.is_one() { 1 } else { -1 })
}

/// Legendre symbol of the l-adic unit part of a nonzero rational.
pub fn generalized_legendre(x: &Rational, l: &Prime) -> Result<i8> {
    if x.is_zero() {
        return Err(Error::InvalidArgument(
            "generalized Legendre symbol of 0".into(),
        ));
    }
    let (_, u) = split_unit(x, l);
    // the denominator's symbol equals that of its inverse
    legendre(&(u.numer() * u.denom()), l)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigUint) -> Option<BigUint> {
    let m_int = BigInt::from(m.clone());
    let ext = a.mod_floor(&m_int).extended_gcd(&m_int);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(&m_int).to_biguint().unwrap())
}

/// Square root of `a` modulo an odd prime (Tonelli-Shanks).
pub fn sqrt_mod_prime(a: &BigInt, l: &Prime) -> Option<BigUint> {
    let p = l.value();
    if l.is_two() {
        return Some(mod_floor(a, p));
    }
    let a = mod_floor(a, p);
    if a.is_zero() {
        return Some(a);
    }
    if legendre(&BigInt::from(a.clone()), l).ok()? != 1 {
        return None;
    }
    let one = BigUint::one();
    let p_minus_1 = p - &one;
    let s = p_minus_1.trailing_zeros().unwrap();
    let q = &p_minus_1 >> s;
    let mut z = BigUint::from(2u32);
    while z.modpow(&(&p_minus_1 >> 1), p) != p_minus_1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::try_from(n).unwrap()
    }

    fn squares_mod(l: u64) -> Vec<u64> {
        (1..l).map(|x| x * x % l).collect()
    }

    #[test]
    fn legendre_examples() {
        // squares mod 7 are {1, 2, 4}
        assert_eq!(squares_mod(7).contains(&2), true);
        assert_eq!(legendre(&2.into(), &p(7)).unwrap(), 1);
        assert_eq!(legendre(&3.into(), &p(7)).unwrap(), -1);
        assert_eq!(legendre(&14.into(), &p(7)).unwrap(), 0);
        assert_eq!(legendre(&(-1).into(), &p(7)).unwrap(), -1);
        assert!(legendre(&3.into(), &Prime::two()).is_err());
    }

    #[test]
    fn generalized_examples() {
        assert_eq!(generalized_legendre(&Rational::from(12), &p(3)).unwrap(), 1);
        assert_eq!(generalized_legendre(&Rational::frac(1, 5), &p(5)).unwrap(), 1);
        assert_eq!(generalized_legendre(&Rational::from(10), &p(5)).unwrap(), -1);
        // denominator unit part 2 mod 5 is a non-residue
        assert_eq!(generalized_legendre(&Rational::frac(1, 10), &p(5)).unwrap(), -1);
    }

    #[test]
    fn legendre_matches_enumeration() {
        for l in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let sq = squares_mod(l);
            for a in -40i64..40 {
                let r = a.rem_euclid(l as i64) as u64;
                let expect = if r == 0 {
                    0
                } else if sq.contains(&r) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(&a.into(), &p(l)).unwrap(), expect, "({a}|{l})");
            }
        }
    }

    #[test]
    fn tonelli_shanks_roots_square() {
        for l in [3u64, 5, 13, 17, 41, 97, 113] {
            for a in 1..l {
                let a_big = BigInt::from(a);
                if let Some(r) = sqrt_mod_prime(&a_big, &p(l)) {
                    assert_eq!((&r * &r) % l, BigUint::from(a));
                } else {
                    assert_eq!(legendre(&a_big, &p(l)).unwrap(), -1);
                }
            }
        }
    }
}
