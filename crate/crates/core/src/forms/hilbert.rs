use num_integer::Integer;

use crate::arith::{generalized_legendre, split_unit, val, Place, Prime, Rational};
use crate::error::{Error, Result};
use crate::padic::unit_mod_8;

fn epsilon(u: u8) -> u8 {
    ((u - 1) / 2) & 1
}

fn omega(u: u8) -> u8 {
    ((u as u32 * u as u32 - 1) / 8) as u8 & 1
}

/// The Hilbert symbol (a, b)_v: +1 iff a x^2 + b y^2 = z^2 has a nonzero
/// solution over the completion of Q at v.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument(
            "Hilbert symbol needs nonzero arguments".into(),
        ));
    }
    match v {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(p) if p.is_two() => Ok(dyadic(a, b)),
        Place::Finite(l) => odd(a, b, l),
    }
}

/// (a,b)_2 = (-1)^(eps(u) eps(w) + alpha omega(w) + beta omega(u)) for
/// a = 2^alpha u, b = 2^beta w.
fn dyadic(a: &Rational, b: &Rational) -> i8 {
    let two = Prime::two();
    let (alpha, u) = split_unit(a, &two);
    let (beta, w) = split_unit(b, &two);
    let (u, w) = (unit_mod_8(&u), unit_mod_8(&w));
    let alpha = alpha.rem_euclid(2) as u8;
    let beta = beta.rem_euclid(2) as u8;
    let e = epsilon(u) * epsilon(w) + alpha * omega(w) + beta * omega(u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Odd l ramifies H_{a,b} exactly in one of three valuation/residue cases.
fn odd(a: &Rational, b: &Rational, l: &Prime) -> Result<i8> {
    let va = val(a, l).is_odd();
    let vb = val(b, l).is_odd();
    let ramified = match (va, vb) {
        (true, false) => generalized_legendre(b, l)? == -1,
        (false, true) => generalized_legendre(a, l)? == -1,
        (true, true) => generalized_legendre(&-(a * b), l)? == -1,
        (false, false) => false,
    };
    Ok(if ramified { -1 } else { 1 })
}
