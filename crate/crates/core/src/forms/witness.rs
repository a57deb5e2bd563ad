//! Constructive search for rational points: bounded enumeration for small
//! heights, then Legendre's descent for ternary equations.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::DiagonalForm;
use crate::arith::{factor, sqrt_mod_prime, Prime, Rational};

/// Rationals ordered by height, then by absolute value, positive first:
/// 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, ...
pub fn rationals_by_height(max_height: u64) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for h in 1..=max_height {
        let mut layer = Vec::new();
        for other in 1..=h {
            if other.gcd(&h) != 1 {
                continue;
            }
            layer.push(Rational::frac(h as i64, other as i64));
            if other != h {
                layer.push(Rational::frac(other as i64, h as i64));
            }
        }
        layer.sort_by(|a, b| b.cmp(a));
        for r in layer {
            out.push(r.clone());
            out.push(-r);
        }
    }
    out
}

fn within(x: &Rational, bound: &BigUint) -> bool {
    x.height() <= *bound
}

/// Largest odd square divisor aside, writes n = core * s^2 with core
/// squarefree. Requires n != 0.
fn squarefree_split(n: &BigInt) -> Option<(BigInt, BigInt)> {
    let f = factor(n).ok()?;
    let mut core = BigInt::from(f.sign);
    let mut s = BigInt::one();
    for (p, e) in f.factors {
        let p = BigInt::from(p);
        if e % 2 == 1 {
            core *= &p;
        }
        s *= p.pow((e / 2) as u32);
    }
    Some((core, s))
}

/// Square root of `a` modulo a squarefree |m|, via CRT over its primes.
fn sqrt_mod_squarefree(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let f = factor(m).ok()?;
    let mut r = BigInt::zero();
    let mut modulus = BigInt::one();
    for (p, _) in f.factors {
        let prime = Prime::new_unchecked(p.clone());
        let root = BigInt::from(sqrt_mod_prime(a, &prime)?);
        let p = BigInt::from(p);
        // combine r mod modulus with root mod p
        let ext = modulus.extended_gcd(&p);
        let t = ((&root - &r) * ext.x).mod_floor(&p);
        r += &modulus * t;
        modulus *= &p;
        r = r.mod_floor(&modulus);
    }
    Some(r)
}

/// Nontrivial integer solution of a x^2 + b y^2 = z^2 for squarefree
/// nonzero a, b, or `None` when none exists.
fn legendre_descent(a: &BigInt, b: &BigInt, depth: usize) -> Option<(BigInt, BigInt, BigInt)> {
    if depth > 4096 {
        return None;
    }
    if a.is_one() {
        return Some((BigInt::one(), BigInt::zero(), BigInt::one()));
    }
    if b.is_one() {
        return Some((BigInt::zero(), BigInt::one(), BigInt::one()));
    }
    if a.is_negative() && b.is_negative() {
        return None;
    }
    if a.abs() > b.abs() {
        let (x, y, z) = legendre_descent(b, a, depth + 1)?;
        return Some((y, x, z));
    }
    let bm = b.abs();
    let mut t = sqrt_mod_squarefree(a, &bm)?;
    if &t * BigInt::from(2) > bm {
        t -= &bm;
    }
    let num = &t * &t - a;
    if num.is_zero() {
        // a = t^2 is a square, hence 1
        return Some((BigInt::one(), BigInt::zero(), t.abs()));
    }
    let (k, m) = squarefree_split(&(num / b))?;
    let (x, y, z) = legendre_descent(a, &k, depth + 1)?;
    // (z + x sqrt a)(t + sqrt a) has norm b (k m y)^2
    let nx = &z + &t * &x;
    let ny = &k * &m * &y;
    let nz = &t * &z + a * &x;
    let g = nx.gcd(&ny).gcd(&nz);
    Some((nx / &g, ny / &g, nz / &g))
}

/// Nontrivial solution of a x^2 + b y^2 = z^2 for nonzero integers a, b.
pub fn solve_ternary(a: &BigInt, b: &BigInt) -> Option<(BigInt, BigInt, BigInt)> {
    let (a0, sa) = squarefree_split(a)?;
    let (b0, sb) = squarefree_split(b)?;
    let (x, y, z) = legendre_descent(&a0, &b0, 0)?;
    debug_assert_eq!(&a0 * &x * &x + &b0 * &y * &y, &z * &z);
    Some((x * &sb, y * &sa, z * &sa * &sb))
}

/// r = A / d^2 with A an integer.
fn integral_class(r: &Rational) -> (BigInt, BigInt) {
    (r.numer() * r.denom(), r.denom().clone())
}

/// Solution of a1 x^2 + a2 y^2 = c over Q.
pub fn represent_binary(a1: &Rational, a2: &Rational, c: &Rational) -> Option<(Rational, Rational)> {
    if c.is_zero() {
        return Some((Rational::zero(), Rational::zero()));
    }
    let (big_a1, d1) = integral_class(a1);
    let (big_a2, d2) = integral_class(a2);
    let (big_c, dc) = integral_class(c);
    // C A1 X^2 + C A2 Y^2 = (C W)^2
    let (x, y, z) = solve_ternary(&(&big_c * &big_a1), &(&big_c * &big_a2))?;
    if !z.is_zero() {
        // A1 X^2 + A2 Y^2 = C W^2 with W = z / C
        let w = Rational::new(z, big_c).unwrap();
        let scale = Rational::from(dc) * w;
        let x1 = Rational::from(x * d1) / scale.clone();
        let x2 = Rational::from(y * d2) / scale;
        return Some((x1, x2));
    }
    // (x, y) is an isotropic vector of <A1, A2>; move along it
    let v1 = Rational::from(x) * Rational::from(d1.clone());
    let v2 = Rational::from(y) * Rational::from(d2.clone());
    let (w1, w2) = if !(a1 * &v1).is_zero() {
        (Rational::one(), Rational::zero())
    } else {
        (Rational::zero(), Rational::one())
    };
    let bilinear = a1 * &v1 * &w1 + a2 * &v2 * &w2;
    let qw = a1 * &w1.square() + a2 * &w2.square();
    let t = (c - &qw) / (Rational::from(2) * bilinear);
    Some((&t * &v1 + w1, &t * &v2 + w2))
}

/// Bounded search for x with q(x) = a and every coordinate of height at
/// most `height_bound`. A returned tuple always satisfies q(x) = a exactly.
pub fn witness_search(q: &DiagonalForm, a: &Rational, height_bound: &BigUint) -> Option<Vec<Rational>> {
    let coeffs = q.coefficients();
    let n = coeffs.len();
    let brute_height = height_bound.clone().min(BigUint::from(if n <= 3 { 6u32 } else { 4 }));
    let small = rationals_by_height(brute_height.try_into().unwrap());
    let found = brute_force(coeffs, a, &small, height_bound).or_else(|| {
        if n < 2 {
            return None;
        }
        descent_search(coeffs, a, height_bound)
    })?;
    debug_assert!(q.evaluate(&found) == *a);
    (q.evaluate(&found) == *a).then_some(found)
}

fn brute_force(coeffs: &[Rational], a: &Rational, list: &[Rational], bound: &BigUint) -> Option<Vec<Rational>> {
    let n = coeffs.len();
    let free = n - 1;
    let mut idx = vec![0usize; free];
    loop {
        let mut rest = a.clone();
        for (i, &k) in idx.iter().enumerate() {
            rest = rest - &coeffs[i] * &list[k].square();
        }
        if let Some(last) = (rest / coeffs[n - 1].clone()).sqrt_exact() {
            if within(&last, bound) {
                let mut out: Vec<Rational> = idx.iter().map(|&k| list[k].clone()).collect();
                out.push(last);
                return Some(out);
            }
        }
        // odometer over the free coordinates, last one fastest
        let mut pos = free;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < list.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn descent_search(coeffs: &[Rational], a: &Rational, bound: &BigUint) -> Option<Vec<Rational>> {
    let n = coeffs.len();
    let tail_height: u64 = match n {
        2 => 0,
        3 => 40,
        4 => 8,
        _ => 3,
    };
    let list = rationals_by_height(tail_height);
    let tail = n - 2;
    let mut idx = vec![0usize; tail];
    loop {
        let mut target = a.clone();
        for (i, &k) in idx.iter().enumerate() {
            target = target - &coeffs[2 + i] * &list[k].square();
        }
        if let Some((x1, x2)) = represent_binary(&coeffs[0], &coeffs[1], &target) {
            if within(&x1, bound) && within(&x2, bound) {
                let mut out = vec![x1, x2];
                out.extend(idx.iter().map(|&k| list[k].clone()));
                return Some(out);
            }
        }
        let mut pos = tail;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < list.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(c: &[i64]) -> DiagonalForm {
        DiagonalForm::new(c.iter().map(|&x| Rational::from(x)).collect()).unwrap()
    }

    fn ws(c: &[i64], a: i64, h: u32) -> Option<Vec<String>> {
        witness_search(&form(c), &Rational::from(a), &BigUint::from(h))
            .map(|v| v.iter().map(|x| x.to_string()).collect())
    }

    #[test]
    fn examples() {
        assert_eq!(ws(&[1, 1, 1], 5, 10), Some(vec!["0".into(), "1".into(), "2".into()]));
        assert_eq!(ws(&[1, 1], 3, 1000), None);
        assert_eq!(ws(&[1], 0, 1), Some(vec!["0".into()]));
    }

    #[test]
    fn height_order() {
        let l = rationals_by_height(2);
        let s: Vec<String> = l.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["0", "1", "-1", "2", "-2", "1/2", "-1/2"]);
    }

    #[test]
    fn ternary_descent_solves() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                if a == 0 || b == 0 {
                    continue;
                }
                if let Some((x, y, z)) = solve_ternary(&a.into(), &b.into()) {
                    assert_eq!(BigInt::from(a) * &x * &x + BigInt::from(b) * &y * &y, &z * &z);
                    assert!(!(x.is_zero() && y.is_zero() && z.is_zero()));
                }
            }
        }
        assert!(solve_ternary(&(-1).into(), &(-1).into()).is_none());
        assert!(solve_ternary(&3.into(), &3.into()).is_none());
        assert!(solve_ternary(&2.into(), &7.into()).is_some());
    }

    #[test]
    fn binary_isotropic_case() {
        // <1,-1> is isotropic and represents everything
        let (x, y) = represent_binary(&Rational::one(), &Rational::from(-1), &Rational::from(7)).unwrap();
        assert_eq!(x.square() - y.square(), Rational::from(7));
    }

    #[test]
    fn larger_witnesses_via_descent() {
        let f = form(&[3, 5, -7]);
        let w = witness_search(&f, &Rational::from(101), &BigUint::from(10_000u32)).unwrap();
        assert_eq!(f.evaluate(&w), Rational::from(101));
    }
}
