use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{factor, sqrt_mod_prime, Prime};

/// Decomposition n = x1^2 + x2^2 + x3^2 + x4^2 with x1 >= x2 >= x3 >= x4 >= 0.
///
/// Greedy from the top with backtracking, so the result is the
/// lexicographically largest such tuple.
pub fn four_squares(n: &BigUint) -> [BigUint; 4] {
    // 8 | n forces every entry even
    let mut m = n.clone();
    let mut scale = 0u64;
    while !m.is_zero() && (&m % 8u32).is_zero() {
        m >>= 2;
        scale += 1;
    }
    let mut out: [BigUint; 4] = Default::default();
    let found = descend(&m, 4, None, &mut out);
    assert!(found, "Lagrange: every n >= 0 is a sum of four squares");
    out.map(|x| x << scale)
}

/// Legendre: n is a sum of three squares unless n = 4^a (8b + 7).
fn sum_of_three_squares(n: &BigUint) -> bool {
    if n.is_zero() {
        return true;
    }
    let mut m = n.clone();
    while (&m % 4u32).is_zero() {
        m >>= 2;
    }
    &m % 8u32 != BigUint::from(7u32)
}

type Gaussian = (BigInt, BigInt);

fn gmul(a: &Gaussian, b: &Gaussian) -> Gaussian {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gpow(a: &Gaussian, e: i64) -> Gaussian {
    (0..e).fold((BigInt::one(), BigInt::zero()), |acc, _| gmul(&acc, a))
}

/// a + bi with a^2 + b^2 = p, for a prime p = 1 mod 4 (Cornacchia).
fn gaussian_prime(p: &BigUint) -> Gaussian {
    let t = sqrt_mod_prime(&BigInt::from(-1), &Prime::new_unchecked(p.clone())).unwrap();
    let (mut r0, mut r1) = (p.clone(), t);
    while &r1 * &r1 > *p {
        (r0, r1) = (r1.clone(), &r0 % &r1);
    }
    let b = (p - &r1 * &r1).sqrt();
    (r1.into(), b.into())
}

/// Every (a, b) with a >= b >= 0 and a^2 + b^2 = n, via Gaussian
/// factorization. `None` when n cannot be factored.
fn two_square_reps(n: &BigUint) -> Option<Vec<(BigUint, BigUint)>> {
    if n.is_zero() {
        return Some(vec![(BigUint::zero(), BigUint::zero())]);
    }
    let f = factor(&BigInt::from(n.clone())).ok()?;
    let mut acc: Vec<Gaussian> = vec![(BigInt::one(), BigInt::zero())];
    for (p, e) in f.factors {
        let choices: Vec<Gaussian> = match (&p % 4u32).try_into().unwrap_or(0u32) {
            2 => vec![gpow(&(BigInt::one(), BigInt::one()), e)],
            3 if e % 2 == 1 => return Some(Vec::new()),
            3 => vec![(BigInt::from(p).pow((e / 2) as u32), BigInt::zero())],
            _ => {
                let pi = gaussian_prime(&p);
                let conj = (pi.0.clone(), -&pi.1);
                (0..=e).map(|k| gmul(&gpow(&pi, k), &gpow(&conj, e - k))).collect()
            }
        };
        acc = acc.iter().flat_map(|a| choices.iter().map(move |c| gmul(a, c))).collect();
    }
    let mut reps: Vec<(BigUint, BigUint)> = acc
        .into_iter()
        .map(|(x, y)| {
            let (x, y) = (x.abs().to_biguint().unwrap(), y.abs().to_biguint().unwrap());
            if x >= y { (x, y) } else { (y, x) }
        })
        .collect();
    reps.sort();
    reps.dedup();
    Some(reps)
}

fn descend(rem: &BigUint, slots: usize, cap: Option<&BigUint>, out: &mut [BigUint; 4]) -> bool {
    let idx = 4 - slots;
    if slots == 0 {
        return rem.is_zero();
    }
    if slots == 2 {
        if let Some(reps) = two_square_reps(rem) {
            let best = reps.into_iter().filter(|(a, _)| cap.map_or(true, |c| a <= c)).max();
            return match best {
                Some((a, b)) => {
                    out[idx] = a;
                    out[idx + 1] = b;
                    true
                }
                None => false,
            };
        }
    }
    let top = rem.sqrt();
    let mut x = match cap {
        Some(c) if c < &top => c.clone(),
        _ => top,
    };
    if slots == 1 {
        if &x * &x == *rem {
            out[idx] = x;
            return true;
        }
        return false;
    }
    loop {
        let sq = &x * &x;
        let r = rem - &sq;
        // the remaining slots hold at most (slots - 1) * x^2
        if r > &sq * (slots as u32 - 1) {
            return false;
        }
        if (slots != 4 || sum_of_three_squares(&r)) && descend(&r, slots - 1, Some(&x), out) {
            out[idx] = x;
            return true;
        }
        if x.is_zero() {
            return false;
        }
        x -= 1u32;
    }
}
