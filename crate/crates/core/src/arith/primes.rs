use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Bases for Miller-Rabin; deterministic for n < 3.317 * 10^24.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
/// Above the deterministic range a further batch of bases is tried.
const MR_EXTRA_BASES: [u32; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

pub const DEFAULT_FACTOR_BIT_LIMIT: u64 = 256;

static FACTOR_BIT_LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_FACTOR_BIT_LIMIT);

/// Bit bound used by every operation that factors internally.
pub fn factor_bit_limit() -> u64 {
    FACTOR_BIT_LIMIT.load(Ordering::Relaxed)
}

pub fn set_factor_bit_limit(bits: u64) {
    FACTOR_BIT_LIMIT.store(bits, Ordering::Relaxed);
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// Deterministic Miller-Rabin below 3.3 * 10^24; a strong probable-prime
/// test with 25 fixed bases above that.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &p in &MR_BASES {
            if small == p as u64 {
                return true;
            }
            if small % p as u64 == 0 {
                return false;
            }
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let witness = |a: u32| -> bool {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            return false;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                return false;
            }
        }
        true
    };
    if MR_BASES.iter().any(|&a| witness(a)) {
        return false;
    }
    let bound: BigUint = "3317044064679887385961981".parse().unwrap();
    if *n >= bound && MR_EXTRA_BASES.iter().any(|&a| witness(a)) {
        return false;
    }
    true
}

/// A rational prime, certified at construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(BigUint);

impl Prime {
    pub fn new(n: impl Into<BigUint>) -> Result<Self> {
        let n = n.into();
        if is_prime(&n) {
            Ok(Prime(n))
        } else {
            Err(Error::NotPrime(n.to_string()))
        }
    }

    /// Callers guarantee primality (e.g. factors produced by [`factor`]).
    pub(crate) fn new_unchecked(n: BigUint) -> Self {
        debug_assert!(is_prime(&n));
        Prime(n)
    }

    pub fn two() -> Self {
        Prime(BigUint::from(2u32))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_two(&self) -> bool {
        self.0 == BigUint::from(2u32)
    }

    /// Residue of the prime modulo `m`.
    pub fn rem_u32(&self, m: u32) -> u32 {
        (&self.0 % m).to_u32().unwrap()
    }
}

impl From<Prime> for BigUint {
    fn from(p: Prime) -> Self {
        p.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(n: u64) -> Result<Self> {
        Prime::new(BigUint::from(n))
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Prime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let n: BigUint = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a prime: {s:?}")))?;
        Prime::new(n)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.collect_str(&self.0),
        }
    }
}

/// A place of Q: a finite prime or the real place.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Prime),
    Infinity,
}

impl Place {
    pub fn prime(&self) -> Option<&Prime> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity => None,
        }
    }

    pub fn finite(p: u64) -> Result<Self> {
        Ok(Place::Finite(Prime::try_from(p)?))
    }
}

impl From<Prime> for Place {
    fn from(p: Prime) -> Self {
        Place::Finite(p)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "\u{221e}" | "infinity" => Ok(Place::Infinity),
            other => Ok(Place::Finite(other.parse()?)),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The p-adic valuation of a rational; `Infinity` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_nonnegative(self) -> bool {
        self >= Valuation::Finite(0)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_i64(*v),
            Valuation::Infinity => serializer.serialize_str("+inf"),
        }
    }
}

/// Exponent of `p` in the nonzero integer `n`; also returns `n / p^e`.
pub(crate) fn remove_factor(n: &BigUint, p: &BigUint) -> (i64, BigUint) {
    let mut e = 0;
    let mut m = n.clone();
    if m.is_zero() {
        return (0, m);
    }
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (e, m);
        }
        m = q;
        e += 1;
    }
}

/// v_p(x), with `Valuation::Infinity` for x = 0.
pub fn valuation(x: &Rational, p: &Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinity;
    }
    let (en, _) = remove_factor(x.numer().magnitude(), p.value());
    let (ed, _) = remove_factor(x.denom().magnitude(), p.value());
    Valuation::Finite(en - ed)
}

/// v_p(x) for x known to be nonzero.
pub(crate) fn val(x: &Rational, p: &Prime) -> i64 {
    valuation(x, p)
        .finite()
        .expect("valuation of a nonzero rational")
}

/// x = p^v * u; returns (v, u) with u a p-unit. x must be nonzero.
pub fn split_unit(x: &Rational, p: &Prime) -> (i64, Rational) {
    let (en, n) = remove_factor(x.numer().magnitude(), p.value());
    let (ed, d) = remove_factor(x.denom().magnitude(), p.value());
    let n = if x.is_negative() {
        -BigInt::from(n)
    } else {
        BigInt::from(n)
    };
    (en - ed, Rational::new(n, BigInt::from(d)).unwrap())
}

/// Prime factorization of a nonzero rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    /// Strictly increasing primes with nonzero exponents.
    pub factors: Vec<(BigUint, i64)>,
}

impl Factorization {
    pub fn product(&self) -> Rational {
        let mut num = BigInt::from(self.sign);
        let mut den = BigInt::one();
        for (p, e) in &self.factors {
            let pe = BigInt::from(p.pow(e.unsigned_abs() as u32));
            if *e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        Rational::new(num, den).unwrap()
    }

    pub fn primes(&self) -> impl Iterator<Item = Prime> + '_ {
        self.factors
            .iter()
            .map(|(p, _)| Prime::new_unchecked(p.clone()))
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let factors: Vec<(String, i64)> = self
            .factors
            .iter()
            .map(|(p, e)| (p.to_string(), *e))
            .collect();
        let mut st = serializer.serialize_struct("Factorization", 2)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("factors", &factors)?;
        st.end()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.sign < 0 { "-1" } else { "+1" })?;
        for (p, e) in &self.factors {
            write!(f, " * {p}^{e}")?;
        }
        Ok(())
    }
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let one = BigUint::one();
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let m: u64 = 128;
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g > one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_composite(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = super::isqrt_exact(&n) {
        split_composite(r.clone(), out);
        split_composite(r, out);
        return;
    }
    for c in 1.. {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            split_composite(d, out);
            split_composite(other, out);
            return;
        }
    }
}

/// Factorization of a nonzero integer under the global bit limit.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    factor_with_limit(n, factor_bit_limit())
}

pub fn factor_with_limit(n: &BigInt, bit_limit: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let bits = n.magnitude().bits();
    if bits > bit_limit {
        return Err(Error::FactorizationLimitExceeded {
            bits,
            limit: bit_limit,
        });
    }
    let sign = if n.sign() == num_bigint::Sign::Minus { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut factors: Vec<(BigUint, i64)> = Vec::new();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let (e, rest) = remove_factor(&m, &pb);
        if e > 0 {
            factors.push((pb, e));
            m = rest;
        }
    }
    if !m.is_one() {
        let mut big = Vec::new();
        split_composite(m, &mut big);
        big.sort();
        for p in big {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    factors.sort();
    Ok(Factorization { sign, factors })
}

/// Factorization of a nonzero rational; denominator primes get negative
/// exponents.
pub fn factor_rational(x: &Rational) -> Result<Factorization> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let num = factor(x.numer())?;
    let den = factor(x.denom())?;
    let mut factors = num.factors;
    factors.extend(den.factors.into_iter().map(|(p, e)| (p, -e)));
    factors.sort();
    Ok(Factorization {
        sign: num.sign,
        factors,
    })
}

/// Primes dividing the numerator or denominator of a nonzero rational.
pub fn support(x: &Rational) -> Result<Vec<Prime>> {
    Ok(factor_rational(x)?.primes().collect())
}

/// Primes in increasing order, starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(&BigUint::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: i64) -> Factorization {
        factor(&BigInt::from(n)).unwrap()
    }

    #[test]
    fn factor_examples() {
        assert_eq!(fac(12).to_string(), "+1 * 2^2 * 3^1");
        assert_eq!(fac(-7).to_string(), "-1 * 7^1");
        assert_eq!(fac(555660).to_string(), "+1 * 2^2 * 3^4 * 5^1 * 7^3");
        assert_eq!(fac(1).factors, vec![]);
    }

    #[test]
    fn factors_beyond_trial_division() {
        let p: BigUint = "1000000007".parse().unwrap();
        let q: BigUint = "998244353".parse().unwrap();
        let r: BigUint = "2305843009213693951".parse().unwrap();
        let n = BigInt::from(&p * &q * &q * &r);
        let f = factor(&n).unwrap();
        assert_eq!(f.factors, vec![(q, 2), (p, 1), (r, 1)]);
        assert_eq!(f.product(), Rational::from(n));
    }

    #[test]
    fn factor_limit_is_enforced() {
        let n = BigInt::one() << 300;
        assert!(matches!(
            factor(&n),
            Err(Error::FactorizationLimitExceeded { bits: 301, .. })
        ));
        assert!(factor_with_limit(&BigInt::from(1u64 << 40), 16).is_err());
    }

    #[test]
    fn valuation_examples() {
        let three = Prime::try_from(3).unwrap();
        let two = Prime::two();
        assert_eq!(valuation(&Rational::frac(18, 5), &three), Valuation::Finite(2));
        assert_eq!(
            valuation(&Rational::zero(), &Prime::try_from(7).unwrap()),
            Valuation::Infinity
        );
        assert_eq!(valuation(&Rational::frac(5, 12), &two), Valuation::Finite(-2));
        assert_eq!(Valuation::Infinity.to_string(), "+inf");
    }

    #[test]
    fn primality_against_sieve() {
        let sieve = small_primes();
        let mut idx = 0;
        for n in 0u32..20_000 {
            let expect = sieve.get(idx) == Some(&n);
            if expect {
                idx += 1;
            }
            assert_eq!(is_prime(&BigUint::from(n)), expect, "{n}");
        }
        // strong pseudoprime to bases 2..37
        let psp: BigUint = "3825123056546413051".parse().unwrap();
        assert!(!is_prime(&psp));
        assert!(is_prime(&"170141183460469231731687303715884105727".parse().unwrap()));
    }

    #[test]
    fn place_parse_and_order() {
        let mut places: Vec<Place> = ["inf", "7", "2"].iter().map(|s| s.parse().unwrap()).collect();
        places.sort();
        assert_eq!(format!("{places:?}"), "[2, 7, inf]");
        assert!("9".parse::<Place>().is_err());
    }
}
