mod common;

use num_bigint::{BigInt, BigUint};
use num_traits::Pow;
use proptest::prelude::*;
use qdef::arith::four_squares;
use qdef::dprm::{growth_report, j_relation, less_than_power, pell_power, pell_solutions};

use common::*;

proptest! {
    #[test]
    fn solutions_satisfy_the_equation(a in 2u64..u64::MAX, count in 1usize..60) {
        let sols = pell_solutions(&BigUint::from(a), count).unwrap();
        prop_assert_eq!(sols.len(), count);
        for s in &sols {
            prop_assert!(s.verify());
            let (x, y) = (BigInt::from(s.x.clone()), BigInt::from(s.y.clone()));
            prop_assert!(j_relation(&x, &y, &BigInt::from(a)).unwrap());
        }
    }

    #[test]
    fn solutions_increase_strictly(a in 2u64..10_000, count in 2usize..40) {
        let sols = pell_solutions(&BigUint::from(a), count).unwrap();
        for w in sols[1..].windows(2) {
            prop_assert!(w[0].x < w[1].x && w[0].y < w[1].y);
        }
    }

    #[test]
    fn every_power_lies_on_the_curve(a in 2u64..1000, m in -30i64..30, negate in any::<bool>()) {
        let (x, y) = pell_power(&BigUint::from(a), m, negate).unwrap();
        prop_assert!(j_relation(&x, &y, &BigInt::from(a)).unwrap());
    }

    #[test]
    fn less_than_power_is_exact(v in 0u64..u64::MAX, u in 0u64..50, e in 0u32..20) {
        let (vb, ub) = (BigUint::from(v), BigUint::from(u));
        prop_assert_eq!(less_than_power(&vb, &ub, &BigUint::from(e)), vb < ub.pow(e));
    }

    #[test]
    fn naturals_as_sums_of_four_squares(n in any::<u64>()) {
        // t is a natural number iff t - x1^2 - x2^2 - x3^2 - x4^2 = 0 is solvable
        let t = BigInt::from(n);
        let xs = four_squares(&BigUint::from(n));
        let p = xs.iter().fold(t, |acc, x| acc - BigInt::from(x * x));
        prop_assert_eq!(p, BigInt::from(0));
    }
}

#[test]
fn complete_for_small_parameters() {
    for a in 2u64..=12 {
        let brute = pell_brute_force(a * a - 1, 100_000);
        let ours: Vec<(u64, u64)> = pell_solutions(&BigUint::from(a), 30)
            .unwrap()
            .into_iter()
            .filter(|s| s.y <= BigUint::from(100_000u32))
            .map(|s| (u64::try_from(&s.x).unwrap(), u64::try_from(&s.y).unwrap()))
            .collect();
        assert_eq!(ours, brute, "a = {a}");
    }
}

/// v < u^e by logarithms, with exact powers when the logarithms are close.
fn below_power(v: &BigUint, u: &BigUint, e: &BigUint) -> bool {
    let one = BigUint::from(1u32);
    if u <= &one || v.bits() == 0 {
        return v < &u.pow(u32::try_from(e).unwrap());
    }
    let ln = |n: &BigUint| {
        let shift = n.bits().saturating_sub(52);
        let top: f64 = (n >> shift).to_string().parse().unwrap();
        top.ln() + shift as f64 * std::f64::consts::LN_2
    };
    let e_f: f64 = e.to_string().parse().unwrap();
    let (lv, rhs) = (ln(v), e_f * ln(u));
    if (lv - rhs).abs() > 1e-6 * rhs.max(1.0) {
        return lv < rhs;
    }
    v < &u.pow(u32::try_from(e).unwrap())
}

#[test]
fn growth_report_matches_exact_powers() {
    for a in [2u32, 3, 7] {
        let report = growth_report(&BigUint::from(a), 12, 5).unwrap();
        assert!(report.pairs.iter().all(|s| s.y > BigUint::from(0u32)));
        for o in &report.orientations {
            let uv = |s: &qdef::dprm::PellSolution| if o.u == "x" { (s.x.clone(), s.y.clone()) } else { (s.y.clone(), s.x.clone()) };
            let exceptions: Vec<u64> = report
                .pairs
                .iter()
                .filter(|s| {
                    let (u, v) = uv(s);
                    !below_power(&v, &u, &u)
                })
                .map(|s| s.m)
                .collect();
            assert_eq!(o.exceptions, exceptions, "a = {a}, u = {}", o.u);
            for g in &o.growth {
                let first = report.pairs.iter().find(|s| {
                    let (u, v) = uv(s);
                    !below_power(&v, &u, &BigUint::from(g.k)) && v != u.pow(g.k as u32)
                });
                assert_eq!(g.first_index, first.map(|s| s.m), "a = {a}, u = {}, k = {}", o.u, g.k);
            }
        }
    }
}
