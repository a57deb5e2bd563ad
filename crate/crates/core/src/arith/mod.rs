//! Exact integers and rationals, primes and places, valuations, Legendre
//! symbols and four-square decompositions.

mod primes;
mod rational;
mod squares;
mod symbols;

use num_bigint::BigUint;

pub use primes::{
    factor, factor_bit_limit, factor_rational, factor_with_limit, is_prime, primes,
    set_factor_bit_limit, split_unit, support, valuation, Factorization, Place, Prime, Valuation,
    DEFAULT_FACTOR_BIT_LIMIT,
};
pub(crate) use primes::{remove_factor, val};
pub use rational::Rational;
pub use squares::four_squares;
pub use symbols::{generalized_legendre, legendre, mod_floor, mod_inverse, sqrt_mod_prime};

pub(crate) fn isqrt_exact(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub(crate) fn icbrt_exact(n: &BigUint) -> Option<BigUint> {
    let r = n.cbrt();
    (&r * &r * &r == *n).then_some(r)
}

/// Serde helpers: integers that fit in 64 bits serialize as JSON numbers,
/// larger ones as decimal strings.
pub(crate) mod big_serde {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use serde::Serializer;

    pub fn uint<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match n.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.collect_str(n),
        }
    }
}
