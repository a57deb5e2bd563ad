//! Quaternion ramification sets, the rings T_{a,b} and the semi-local
//! rings built from them, and both characterizations of Z inside Q.

mod characterization;
mod rings;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::{factor_rational, val, valuation, Place, Prime, Rational};
use crate::error::{Error, Result};
use crate::forms::{hilbert_symbol, represents, DiagonalForm};

pub use characterization::{
    koenigsmann_certificate, koenigsmann_certificate_with, poonen_exclusion_witness,
    poonen_exclusion_witness_with_bound, Clause, ClauseKind, KoenigsmannCertificate, KoenigsmannConfig,
    Verdict, DEFAULT_POONEN_GRID, DEFAULT_Q_SEARCH_BOUND, DEFAULT_SAMPLES,
};
pub use rings::{
    congruent_mod_8, jacobson_tilde_membership, phi_k_membership, psi_membership, semilocal_ring,
    semilocal_ring_1, semilocal_ring_1_via_delta, semilocal_ring_via_delta, RingKind, SemiLocalRing,
};

/// A finite set of primes, possibly together with the infinite place.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Default)]
pub struct PlaceSet {
    finite_places: Vec<Prime>,
    includes_infinity: bool,
}

impl PlaceSet {
    pub fn new(mut finite_places: Vec<Prime>, includes_infinity: bool) -> Self {
        finite_places.sort();
        finite_places.dedup();
        Self {
            finite_places,
            includes_infinity,
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn finite_places(&self) -> &[Prime] {
        &self.finite_places
    }

    pub fn includes_infinity(&self) -> bool {
        self.includes_infinity
    }

    pub fn is_empty(&self) -> bool {
        self.finite_places.is_empty() && !self.includes_infinity
    }

    pub fn len(&self) -> usize {
        self.finite_places.len() + usize::from(self.includes_infinity)
    }

    pub fn contains(&self, v: &Place) -> bool {
        match v {
            Place::Infinity => self.includes_infinity,
            Place::Finite(p) => self.finite_places.binary_search(p).is_ok(),
        }
    }

    pub fn contains_prime(&self, p: &Prime) -> bool {
        self.finite_places.binary_search(p).is_ok()
    }

    pub fn places(&self) -> Vec<Place> {
        let mut out: Vec<Place> = self.finite_places.iter().cloned().map(Place::Finite).collect();
        if self.includes_infinity {
            out.push(Place::Infinity);
        }
        out
    }

    pub fn intersection(&self, other: &PlaceSet) -> PlaceSet {
        PlaceSet {
            finite_places: self
                .finite_places
                .iter()
                .filter(|p| other.contains_prime(p))
                .cloned()
                .collect(),
            includes_infinity: self.includes_infinity && other.includes_infinity,
        }
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.places().iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

fn require_nonzero(x: &Rational, what: &str) -> Result<()> {
    if x.is_zero() {
        return Err(Error::InvalidArgument(format!("{what} must be nonzero")));
    }
    Ok(())
}

/// The primes of odd valuation in p, ascending.
pub fn prime_support(p: &Rational) -> Result<Vec<Prime>> {
    require_nonzero(p, "p")?;
    Ok(factor_rational(p)?
        .factors
        .into_iter()
        .filter(|(_, e)| e.is_odd())
        .map(|(l, _)| Prime::new_unchecked(l))
        .collect())
}

/// The places where the quaternion algebra (a, b) ramifies.
pub fn delta(a: &Rational, b: &Rational) -> Result<PlaceSet> {
    require_nonzero(a, "a")?;
    require_nonzero(b, "b")?;
    let mut candidates = vec![Prime::two()];
    candidates.extend(prime_support(a)?);
    candidates.extend(prime_support(b)?);
    candidates.sort();
    candidates.dedup();
    let mut finite = Vec::new();
    for l in candidates {
        if hilbert_symbol(a, b, &Place::Finite(l.clone()))? == -1 {
            finite.push(l);
        }
    }
    let inf = hilbert_symbol(a, b, &Place::Infinity)? == -1;
    Ok(PlaceSet::new(finite, inf))
}

/// Whether s is the trace of a norm-one element of the quaternion algebra (a, b).
pub fn s_membership(s: &Rational, a: &Rational, b: &Rational) -> Result<bool> {
    require_nonzero(a, "a")?;
    require_nonzero(b, "b")?;
    let q = DiagonalForm::new(vec![a.clone(), b.clone(), -(a * b)])?;
    let target = s.square() / Rational::from(4) - Rational::one();
    Ok(represents(&q, &target)?.representable)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TMembership {
    pub member: bool,
    pub delta: PlaceSet,
    pub violated_place: Option<Place>,
}

/// Whether t is integral at every place of `places`, where integrality at
/// infinity means -4 <= t <= 4. Returns the first violated place.
pub fn first_violated_place(t: &Rational, places: &PlaceSet) -> Option<Place> {
    for l in places.finite_places() {
        if !valuation(t, l).is_nonnegative() {
            return Some(Place::Finite(l.clone()));
        }
    }
    if places.includes_infinity() && t.abs() > Rational::from(4) {
        return Some(Place::Infinity);
    }
    None
}

/// Membership of t in T_{a,b} = S_{a,b} + S_{a,b}.
pub fn t_membership(t: &Rational, a: &Rational, b: &Rational) -> Result<TMembership> {
    let delta = delta(a, b)?;
    let violated_place = first_violated_place(t, &delta);
    Ok(TMembership {
        member: violated_place.is_none(),
        delta,
        violated_place,
    })
}

/// v_2(p - k) >= 3, i.e. p lies in k + 8 Z_(2).
pub(crate) fn congruent_2adic(p: &Rational, k: i64) -> bool {
    let d = p - &Rational::from(k);
    d.is_zero() || val(&d, &Prime::two()) >= 3
}

pub(crate) fn prime_mod_8(l: &Prime) -> u32 {
    l.rem_u32(8)
}

pub(crate) fn as_rational(p: &Prime) -> Rational {
    Rational::from(BigInt::from(p.value().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&r("-1"), &r("-1")).unwrap().to_string(), "{2, inf}");
        assert!(delta(&r("1"), &r("7/3")).unwrap().is_empty());
        assert_eq!(delta(&r("3"), &r("3")).unwrap().to_string(), "{2, 3}");
    }

    #[test]
    fn prime_support_examples() {
        let s = |x: &str| -> Vec<String> { prime_support(&r(x)).unwrap().iter().map(|p| p.to_string()).collect() };
        assert_eq!(s("12"), ["3"]);
        assert!(s("1").is_empty());
        assert_eq!(s("30/7"), ["2", "3", "5", "7"]);
    }

    #[test]
    fn s_examples() {
        assert!(s_membership(&r("2"), &r("-1"), &r("-1")).unwrap());
        assert!(s_membership(&r("1"), &r("-1"), &r("-1")).unwrap());
        assert!(!s_membership(&r("5"), &r("-1"), &r("-1")).unwrap());
    }

    #[test]
    fn t_examples() {
        assert!(t_membership(&r("1/3"), &r("-1"), &r("-1")).unwrap().member);
        let m = t_membership(&r("5"), &r("-1"), &r("-1")).unwrap();
        assert_eq!(m.violated_place, Some(Place::Infinity));
        let m = t_membership(&r("1/2"), &r("3"), &r("3")).unwrap();
        assert_eq!(m.violated_place, Some(Place::finite(2).unwrap()));
    }

    #[test]
    fn two_adic_congruence() {
        assert!(congruent_2adic(&r("3"), 3));
        assert!(congruent_2adic(&r("11/9"), 3));
        assert!(!congruent_2adic(&r("3"), 7));
        assert!(congruent_2adic(&r("205"), 5));
    }
}
