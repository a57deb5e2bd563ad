//! Pell equations x^2 - (a^2 - 1) y^2 = 1 and the growth of their
//! solutions.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::big_serde;
use crate::error::{Error, Result};

/// x + y sqrt(a^2 - 1) = (a + sqrt(a^2 - 1))^m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    #[serde(serialize_with = "big_serde::uint")]
    pub a: BigUint,
    pub m: u64,
    #[serde(serialize_with = "big_serde::uint")]
    pub x: BigUint,
    #[serde(serialize_with = "big_serde::uint")]
    pub y: BigUint,
}

impl PellSolution {
    pub fn d(&self) -> BigUint {
        &self.a * &self.a - 1u32
    }

    pub fn verify(&self) -> bool {
        &self.x * &self.x == self.d() * &self.y * &self.y + 1u32
    }
}

fn check_parameter(a: &BigUint) -> Result<()> {
    if *a < BigUint::from(2u32) {
        return Err(Error::InvalidArgument(format!("Pell parameter a must be >= 2, got {a}")));
    }
    Ok(())
}

/// The power pairs m = 0, 1, ..., count - 1.
pub fn pell_solutions(a: &BigUint, count: usize) -> Result<Vec<PellSolution>> {
    check_parameter(a)?;
    let d = a * a - 1u32;
    let mut out = Vec::with_capacity(count);
    let (mut x, mut y) = (BigUint::one(), BigUint::zero());
    for m in 0..count as u64 {
        out.push(PellSolution {
            a: a.clone(),
            m,
            x: x.clone(),
            y: y.clone(),
        });
        let nx = a * &x + &d * &y;
        let ny = &x + a * &y;
        x = nx;
        y = ny;
    }
    Ok(out)
}

/// (a + sqrt d)^m for any integer m, times `sign`. Negative powers are
/// conjugates: (x, -y).
pub fn pell_power(a: &BigUint, m: i64, negate: bool) -> Result<(BigInt, BigInt)> {
    let sols = pell_solutions(a, m.unsigned_abs() as usize + 1)?;
    let s = sols.last().unwrap();
    let mut x = BigInt::from(s.x.clone());
    let mut y = BigInt::from(s.y.clone());
    if m < 0 {
        y = -y;
    }
    if negate {
        x = -x;
        y = -y;
    }
    Ok((x, y))
}

/// x^2 - (a^2 - 1) y^2 = 1.
pub fn j_relation(x: &BigInt, y: &BigInt, a: &BigInt) -> Result<bool> {
    if *a < BigInt::from(2) {
        return Err(Error::InvalidArgument(format!("Pell parameter a must be >= 2, got {a}")));
    }
    let d = a * a - 1;
    Ok(x * x - d * y * y == BigInt::one())
}

/// v < u^e, decided from bit lengths when the power would be huge.
pub fn less_than_power(v: &BigUint, u: &BigUint, e: &BigUint) -> bool {
    if u.is_zero() {
        return e.is_zero() && v.is_zero();
    }
    if u.is_one() {
        return v.is_zero();
    }
    let vb = v.bits();
    let ub = u.bits();
    let Ok(e_small) = u64::try_from(e) else {
        return true;
    };
    // 2^(ub-1) <= u < 2^ub
    if e_small.saturating_mul(ub - 1) >= vb {
        return true;
    }
    if vb > e_small.saturating_mul(ub) {
        return false;
    }
    *v < u.pow(e_small as u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthWitness {
    pub k: u64,
    /// Power index of the first listed pair with v > u^k.
    pub first_index: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientationReport {
    pub u: &'static str,
    pub v: &'static str,
    pub all_below_u_pow_u: bool,
    /// Power indices where v < u^u fails.
    pub exceptions: Vec<u64>,
    pub growth: Vec<GrowthWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    #[serde(serialize_with = "big_serde::uint")]
    pub a: BigUint,
    pub pairs: Vec<PellSolution>,
    pub k_bound: u64,
    pub orientations: Vec<OrientationReport>,
}

pub const DEFAULT_K_BOUND: u64 = 5;

fn orientation(pairs: &[PellSolution], u_is_x: bool, k_bound: u64) -> OrientationReport {
    let uv = |s: &PellSolution| if u_is_x { (s.x.clone(), s.y.clone()) } else { (s.y.clone(), s.x.clone()) };
    let exceptions: Vec<u64> = pairs
        .iter()
        .filter(|s| {
            let (u, v) = uv(s);
            !less_than_power(&v, &u, &u)
        })
        .map(|s| s.m)
        .collect();
    let growth = (1..=k_bound)
        .map(|k| GrowthWitness {
            k,
            first_index: pairs
                .iter()
                .find(|s| {
                    let (u, v) = uv(s);
                    // v > u^k  <=>  not (v < u^k + 1)
                    !less_than_power(&v, &u, &BigUint::from(k)) && (v != u.pow(k as u32))
                })
                .map(|s| s.m),
        })
        .collect();
    OrientationReport {
        u: if u_is_x { "x" } else { "y" },
        v: if u_is_x { "y" } else { "x" },
        all_below_u_pow_u: exceptions.is_empty(),
        exceptions,
        growth,
    }
}

/// Compares y against powers of x (and x against powers of y) over the
/// first `count` solutions with y >= 1.
pub fn growth_report(a: &BigUint, count: usize, k_bound: u64) -> Result<GrowthReport> {
    if count < 2 {
        return Err(Error::InvalidArgument("growth report needs count >= 2".into()));
    }
    let pairs: Vec<PellSolution> = pell_solutions(a, count)?
        .into_iter()
        .filter(|s| !s.y.is_zero())
        .collect();
    Ok(GrowthReport {
        a: a.clone(),
        k_bound,
        orientations: vec![orientation(&pairs, true, k_bound), orientation(&pairs, false, k_bound)],
        pairs,
    })
}
