//! Brute-force oracles for the integration tests. Nothing here calls into
//! the library's number theory; everything is residue enumeration over
//! machine integers.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use qdef::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_primes(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Numerator and denominator as machine integers.
pub fn parts(x: &Rational) -> (i64, i64) {
    (x.numer().to_i64().unwrap(), x.denom().to_i64().unwrap())
}

pub fn vp_int(mut n: i64, p: i64) -> i64 {
    assert!(n != 0);
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// v_p by repeated division; `None` for zero.
pub fn vp(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let (n, d) = parts(x);
    Some(vp_int(n, p as i64) - vp_int(d, p as i64))
}

pub fn random_rational(rng: &mut impl Rng, height: i64) -> Rational {
    loop {
        let n = rng.gen_range(-height..=height);
        let d = rng.gen_range(1..=height);
        if n != 0 {
            return Rational::frac(n, d);
        }
    }
}

/// Every nonzero rational of height at most `h`.
pub fn nonzero_rationals(h: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for d in 1..=h {
        for n in -h..=h {
            if n != 0 && gcd(n, d) == 1 {
                out.push(Rational::frac(n, d));
            }
        }
    }
    out
}

/// The set of nonzero squares mod l.
pub fn residues(l: u64) -> BTreeSet<u64> {
    (1..l).map(|x| x * x % l).collect()
}

/// Legendre symbol by enumeration of squares.
pub fn legendre_by_enumeration(a: i64, l: u64) -> i8 {
    let r = a.rem_euclid(l as i64) as u64;
    if r == 0 {
        0
    } else if residues(l).contains(&r) {
        1
    } else {
        -1
    }
}

/// Whether a nonzero rational is a square in Q_p, p odd, from its
/// valuation and a residue table of the unit part.
pub fn is_square_odd(x: &Rational, p: u64) -> bool {
    let (mut n, mut d) = parts(x);
    let pi = p as i64;
    let mut v = 0;
    while n % pi == 0 {
        n /= pi;
        v += 1;
    }
    while d % pi == 0 {
        d /= pi;
        v -= 1;
    }
    v % 2 == 0 && legendre_by_enumeration(n * d, p) == 1
}

/// All roots of a monic integer polynomial (coefficients low degree first)
/// modulo m, by trying every residue.
pub fn roots_mod(coeffs: &[i64], m: i64) -> Vec<i64> {
    (0..m)
        .filter(|&x| {
            let mut acc: i128 = 0;
            for &c in coeffs.iter().rev() {
                acc = (acc * x as i128 + c as i128).rem_euclid(m as i128);
            }
            acc == 0
        })
        .collect()
}

/// An integer in the square class of r over every Q_p: numerator times
/// denominator.
pub fn integral_rep(r: &Rational) -> BigInt {
    r.numer() * r.denom()
}

/// Outcome of the residue search for a nontrivial zero of sum c_i x_i^2 in
/// Q_p. `None` when the search budget runs out undecided.
///
/// Each coefficient is first stripped of p^2 factors (a change of variable)
/// and, if all coefficients are then divisible by p, the form is divided
/// by p. At level j the search enumerates every vector mod p^j:
/// - a solution mod p^j with some coordinate whose partial derivative has
///   valuation e, 2e + 1 <= j, lifts by Hensel to a nontrivial zero;
/// - no primitive solution mod p^j rules out every nontrivial zero.
pub fn residue_isotropic(coeffs: &[BigInt], p: u64) -> Option<bool> {
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    let mut c: Vec<BigInt> = coeffs
        .iter()
        .map(|x| {
            assert!(x.sign() != num_bigint::Sign::NoSign);
            let mut x = x.clone();
            while (&x % &p2).sign() == num_bigint::Sign::NoSign {
                x /= &p2;
            }
            x
        })
        .collect();
    if c.iter().all(|x| (x % &pb).sign() == num_bigint::Sign::NoSign) {
        for x in &mut c {
            *x /= &pb;
        }
    }
    let max_level = if p == 2 { 6 } else { 4 };
    for j in 1..=max_level {
        let m = p.checked_pow(j)?;
        if m > 200_000 {
            return None;
        }
        let (certified, primitive) = search_level(&c, p, j, m);
        if certified {
            return Some(true);
        }
        if !primitive {
            return Some(false);
        }
    }
    None
}

fn v_u64(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Returns (a certified zero exists mod p^j, a primitive zero exists mod p^j).
fn search_level(c: &[BigInt], p: u64, j: u32, m: u64) -> (bool, bool) {
    let mb = BigInt::from(m);
    let m_us = m as usize;
    // reach[flags][s]: some partial vector with sum s; flag bit 0 = has a
    // unit coordinate, bit 1 = has a certifying coordinate
    let mut reach = vec![vec![false; m_us]; 4];
    reach[0][0] = true;
    for coeff in c {
        let a = {
            let r = coeff % &mb;
            let r = if r.sign() == num_bigint::Sign::Minus { r + &mb } else { r };
            r.to_u64().unwrap()
        };
        let va = {
            let abs = coeff.magnitude();
            let mut e = 0u32;
            let mut t = abs.clone();
            while (&t % p).to_u64() == Some(0) {
                t /= p;
                e += 1;
            }
            e
        };
        let two_v = if p == 2 { 1 } else { 0 };
        let mut moves: BTreeSet<(u64, usize)> = BTreeSet::new();
        for x in 0..m {
            let val = ((x as u128 * x as u128 % m as u128) * a as u128 % m as u128) as u64;
            let mut flag = 0usize;
            if x % p != 0 {
                flag |= 1;
            }
            if x != 0 {
                let e = two_v + va + v_u64(x, p);
                if 2 * e < j {
                    flag |= 2;
                }
            }
            moves.insert((val, flag));
        }
        let mut next = vec![vec![false; m_us]; 4];
        for (f, row) in reach.iter().enumerate() {
            for (s, &on) in row.iter().enumerate() {
                if !on {
                    continue;
                }
                for &(val, flag) in &moves {
                    next[f | flag][(s + val as usize) % m_us] = true;
                }
            }
        }
        reach = next;
    }
    let certified = reach[2][0] || reach[3][0];
    let primitive = reach[1][0] || reach[3][0];
    (certified, primitive)
}

/// Isotropy oracle for rational coefficients, including the real place.
pub fn oracle_isotropic(coeffs: &[Rational], place: Option<u64>) -> Option<bool> {
    match place {
        None => Some(coeffs.iter().any(|c| c.is_positive()) && coeffs.iter().any(|c| c.is_negative())),
        Some(p) => residue_isotropic(&coeffs.iter().map(integral_rep).collect::<Vec<_>>(), p),
    }
}

/// (a, b)_v = 1 iff a x^2 + b y^2 - z^2 has a nontrivial zero over Q_v.
pub fn oracle_hilbert(a: &Rational, b: &Rational, place: Option<u64>) -> Option<i8> {
    let isotropic = oracle_isotropic(&[a.clone(), b.clone(), Rational::from(-1)], place)?;
    Some(if isotropic { 1 } else { -1 })
}

/// q represents a over Q_v: a = 0 always; otherwise q + <-a> is isotropic.
pub fn oracle_represents(q: &[Rational], a: &Rational, place: Option<u64>) -> Option<bool> {
    if a.is_zero() {
        return Some(true);
    }
    let mut aug = q.to_vec();
    aug.push(-a);
    oracle_isotropic(&aug, place)
}

/// Every (x, y) with x^2 - d y^2 = 1, x, y >= 0 and y <= bound.
pub fn pell_brute_force(d: u64, bound: u64) -> Vec<(u64, u64)> {
    (0..=bound)
        .filter_map(|y| {
            let t = d as u128 * y as u128 * y as u128 + 1;
            let x = (t as f64).sqrt() as u128;
            (x.saturating_sub(2)..=x + 2).find(|r| r * r == t).map(|r| (r as u64, y))
        })
        .collect()
}

/// A random small Turing machine program over states z1..z{states} and
/// symbols a0..a{symbols-1}, one line per (state, symbol) pair with
/// probability 3/4.
pub fn random_program(rng: &mut impl Rng, states: usize, symbols: usize) -> String {
    let mut lines = Vec::new();
    for z in 1..=states {
        for a in 0..symbols {
            if rng.gen_range(0..4) == 0 {
                continue;
            }
            let op = match rng.gen_range(0..4) {
                0 => format!("w:a{}", rng.gen_range(0..symbols)),
                1 => "r".to_string(),
                2 => "l".to_string(),
                _ => "s".to_string(),
            };
            lines.push(format!("z{z} a{a} {op} z{}", rng.gen_range(1..=states)));
        }
    }
    if lines.is_empty() {
        lines.push("z1 a0 s z1".into());
    }
    lines.join("\n")
}
