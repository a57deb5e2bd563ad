use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{congruent_2adic, delta, prime_mod_8, prime_support, require_nonzero, PlaceSet};
use crate::arith::{generalized_legendre, val, valuation, Prime, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RingKind {
    R3,
    R5,
    R7,
}

impl RingKind {
    pub fn k(self) -> i64 {
        match self {
            RingKind::R3 => 3,
            RingKind::R5 => 5,
            RingKind::R7 => 7,
        }
    }

    pub fn from_k(k: i64) -> Result<Self> {
        match k {
            3 => Ok(RingKind::R3),
            5 => Ok(RingKind::R5),
            7 => Ok(RingKind::R7),
            _ => Err(Error::InvalidArgument(format!("ring kind must be 3, 5 or 7, got {k}"))),
        }
    }

    pub fn all() -> [RingKind; 3] {
        [RingKind::R3, RingKind::R5, RingKind::R7]
    }

    /// The two quaternion parameter pairs whose T-rings sum to R_p^[k].
    fn pairs(self, p: &Rational) -> [(Rational, Rational); 2] {
        let two_p = Rational::from(2) * p;
        match self {
            RingKind::R3 => [(-p, -p), (two_p, -p)],
            RingKind::R5 => [(-&two_p, -p), (two_p, -p)],
            RingKind::R7 => [(-p, -p), (two_p, p.clone())],
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.k())
    }
}

impl FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['R', 'r']);
        let k: i64 = t.parse().map_err(|_| Error::Parse(format!("bad ring kind `{s}`")))?;
        Self::from_k(k)
    }
}

/// The intersection of the localizations Z_(l) over `places`, or all of Q
/// when there are no places.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiLocalRing {
    places: PlaceSet,
    whole_field: bool,
}

impl SemiLocalRing {
    pub fn new(places: PlaceSet) -> Self {
        let whole_field = places.is_empty();
        Self { places, whole_field }
    }

    /// Z_(l) for a single prime l.
    pub fn localization(l: Prime) -> Self {
        Self::new(PlaceSet::new(vec![l], false))
    }

    pub fn places(&self) -> &PlaceSet {
        &self.places
    }

    pub fn is_whole_field(&self) -> bool {
        self.whole_field
    }

    pub fn contains(&self, x: &Rational) -> bool {
        super::first_violated_place(x, &self.places).is_none()
    }
}

impl fmt::Display for SemiLocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.whole_field {
            return write!(f, "Q");
        }
        let parts: Vec<String> = self.places.places().iter().map(|v| format!("Z_({v})")).collect();
        write!(f, "{}", parts.join(" ∩ "))
    }
}

/// p lies in k + 8 Z_(2).
pub fn congruent_mod_8(p: &Rational, k: i64) -> bool {
    congruent_2adic(p, k)
}

fn require_congruence(p: &Rational, k: i64, name: &str) -> Result<()> {
    if !congruent_2adic(p, k) {
        return Err(Error::HypothesisViolated(format!(
            "{name} = {p} is not congruent to {k} mod 8 in Z_(2)"
        )));
    }
    Ok(())
}

/// R_p^[k] as the intersection of Z_(l) over primes l of odd valuation in p
/// with l = k mod 8. Requires p = k mod 8 in Z_(2).
pub fn semilocal_ring(kind: RingKind, p: &Rational) -> Result<SemiLocalRing> {
    require_nonzero(p, "p")?;
    require_congruence(p, kind.k(), "p")?;
    let places = prime_support(p)?
        .into_iter()
        .filter(|l| i64::from(prime_mod_8(l)) == kind.k())
        .collect();
    Ok(SemiLocalRing::new(PlaceSet::new(places, false)))
}

/// R_p^[k] computed as T_{a,b} + T_{c,d}, the intersection over the common
/// ramified places. Valid for every nonzero p.
pub fn semilocal_ring_via_delta(kind: RingKind, p: &Rational) -> Result<SemiLocalRing> {
    require_nonzero(p, "p")?;
    let [(a, b), (c, d)] = kind.pairs(p);
    Ok(SemiLocalRing::new(delta(&a, &b)?.intersection(&delta(&c, &d)?)))
}

/// R_{p,q}^[1], requiring p = 1 and q = 3 mod 8 in Z_(2).
pub fn semilocal_ring_1(p: &Rational, q: &Rational) -> Result<SemiLocalRing> {
    require_nonzero(p, "p")?;
    require_nonzero(q, "q")?;
    require_congruence(p, 1, "p")?;
    require_congruence(q, 3, "q")?;
    let sp = prime_support(p)?;
    let sq = prime_support(q)?;
    let two_p = Rational::from(2) * p;
    let two_pq = &two_p * q;
    let mut places = Vec::new();
    for l in sp.iter().chain(sq.iter()) {
        let in_p = sp.contains(l);
        let in_q = sq.contains(l);
        let keep = match (in_p, in_q) {
            (true, false) => generalized_legendre(q, l)? == -1,
            (false, true) => {
                generalized_legendre(&two_p, l)? == -1 && generalized_legendre(&-&two_p, l)? == -1
            }
            _ => generalized_legendre(&two_pq, l)? == -1 && generalized_legendre(&-&two_pq, l)? == -1,
        };
        if keep {
            places.push(l.clone());
        }
    }
    Ok(SemiLocalRing::new(PlaceSet::new(places, false)))
}

/// R_{p,q}^[1] computed as T_{2pq,q} + T_{-2pq,q}.
pub fn semilocal_ring_1_via_delta(p: &Rational, q: &Rational) -> Result<SemiLocalRing> {
    require_nonzero(p, "p")?;
    require_nonzero(q, "q")?;
    let two_pq = Rational::from(2) * p * q;
    Ok(SemiLocalRing::new(delta(&two_pq, q)?.intersection(&delta(&-two_pq, q)?)))
}

/// p = k mod 8 in Z_(2), and every prime of odd valuation in p is 1 or k mod 8.
pub fn phi_k_membership(p: &Rational, k: i64) -> Result<bool> {
    if ![1, 3, 5, 7].contains(&k) {
        return Err(Error::InvalidArgument(format!("k must be 1, 3, 5 or 7, got {k}")));
    }
    require_nonzero(p, "p")?;
    if !congruent_2adic(p, k) {
        return Ok(false);
    }
    Ok(prime_support(p)?.iter().all(|l| {
        let r = i64::from(prime_mod_8(l));
        r == 1 || r == k
    }))
}

/// (p, q) in Phi_1 x Phi_3 with p in 2 (Q^x)^2 (1 + J(R_q^[3])).
///
/// J(R_q^[3]) is the set of x with v_l(x) > 0 at every place l of the ring,
/// all odd. Since 1 + l Z_l consists of squares, the condition holds iff p/2
/// is a square in every Q_l, and weak approximation supplies the global
/// square.
pub fn psi_membership(p: &Rational, q: &Rational) -> Result<bool> {
    if !phi_k_membership(p, 1)? || !phi_k_membership(q, 3)? {
        return Ok(false);
    }
    let ring = semilocal_ring(RingKind::R3, q)?;
    let half = p / &Rational::from(2);
    for l in ring.places().finite_places() {
        if val(&half, l) % 2 != 0 || generalized_legendre(&half, l)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in ~R = {x : no y in J(R) has x y = 1}, which is the union of
/// Z_(l) over the places of R.
pub fn jacobson_tilde_membership(x: &Rational, ring: &SemiLocalRing) -> Result<bool> {
    if ring.is_whole_field() {
        return Err(Error::WholeFieldRing);
    }
    if x.is_zero() {
        return Ok(true);
    }
    let finite = ring.places().finite_places();
    if finite.is_empty() {
        return Err(Error::InvalidArgument("ring has no finite places".into()));
    }
    Ok(finite.iter().any(|l| valuation(x, l).is_nonnegative()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn semilocal_examples() {
        assert_eq!(semilocal_ring(RingKind::R3, &r("3")).unwrap().to_string(), "Z_(3)");
        assert_eq!(semilocal_ring(RingKind::R5, &r("205")).unwrap().to_string(), "Z_(5)");
        assert!(matches!(
            semilocal_ring(RingKind::R7, &r("3")),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            semilocal_ring(RingKind::R5, &r("65")),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn semilocal_1_examples() {
        assert_eq!(semilocal_ring_1(&r("17"), &r("3")).unwrap().to_string(), "Z_(17)");
        assert!(semilocal_ring_1(&r("17"), &r("43")).unwrap().is_whole_field());
        assert!(matches!(semilocal_ring_1(&r("3"), &r("3")), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn delta_route_agrees_on_examples() {
        for (kind, p) in [(RingKind::R3, "3"), (RingKind::R5, "205"), (RingKind::R7, "7"), (RingKind::R3, "51")] {
            assert_eq!(
                semilocal_ring(kind, &r(p)).unwrap(),
                semilocal_ring_via_delta(kind, &r(p)).unwrap(),
                "{kind} {p}"
            );
        }
        assert_eq!(
            semilocal_ring_1(&r("17"), &r("3")).unwrap(),
            semilocal_ring_1_via_delta(&r("17"), &r("3")).unwrap()
        );
    }

    #[test]
    fn phi_examples() {
        assert!(phi_k_membership(&r("3"), 3).unwrap());
        assert!(!phi_k_membership(&r("15"), 3).unwrap());
        assert!(phi_k_membership(&r("51"), 3).unwrap());
    }

    #[test]
    fn psi_examples() {
        assert!(psi_membership(&r("17"), &r("3")).unwrap());
        assert!(!psi_membership(&r("3"), &r("3")).unwrap());
        // 1/2 = 2 mod 3 is a non-residue
        assert!(!psi_membership(&r("1"), &r("3")).unwrap());
    }

    #[test]
    fn tilde_examples() {
        let z3 = semilocal_ring(RingKind::R3, &r("3")).unwrap();
        for (x, want) in [("1/3", false), ("3/2", true), ("0", true), ("-9/5", true)] {
            assert_eq!(jacobson_tilde_membership(&r(x), &z3).unwrap(), want, "{x}");
        }
        let ring = SemiLocalRing::new(PlaceSet::new(
            vec![Prime::try_from(3).unwrap(), Prime::try_from(5).unwrap()],
            false,
        ));
        assert!(jacobson_tilde_membership(&r("1/3"), &ring).unwrap());
        assert!(!jacobson_tilde_membership(&r("1/15"), &ring).unwrap());
        let q = SemiLocalRing::new(PlaceSet::empty());
        assert!(matches!(jacobson_tilde_membership(&r("1"), &q), Err(Error::WholeFieldRing)));
    }
}
