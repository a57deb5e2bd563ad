use serde::Serialize;

use super::rings::{jacobson_tilde_membership, phi_k_membership, psi_membership, semilocal_ring, semilocal_ring_1};
use super::{as_rational, delta, prime_mod_8, RingKind, SemiLocalRing};
use crate::arith::{legendre, primes, support, Place, Prime, Rational};
use crate::error::{Error, Result};
use crate::forms::rationals_by_height;

pub const DEFAULT_POONEN_GRID: u64 = 64;
pub const DEFAULT_SAMPLES: usize = 8;
pub const DEFAULT_Q_SEARCH_BOUND: u64 = 100_000;

/// Primes at which t fails to be integral.
fn offending_primes(t: &Rational) -> Result<Vec<Prime>> {
    support(&Rational::from(t.denom().clone()))
}

/// Positive a, b with t outside T_{a,b}; a and b run over the positive
/// rationals with numerator and denominator at most `bound`.
pub fn poonen_exclusion_witness_with_bound(t: &Rational, bound: u64) -> Result<(Rational, Rational)> {
    let bad = offending_primes(t)?;
    if bad.is_empty() {
        return Err(Error::InvalidArgument(format!("{t} is an integer")));
    }
    let two_bad = bad.iter().any(Prime::is_two);
    let grid: Vec<(Rational, bool)> = rationals_by_height(bound)
        .into_iter()
        .filter(|x| x.is_positive())
        .map(|x| {
            let touches = support(&x).map(|s| s.iter().any(|l| bad.contains(l))).unwrap_or(false);
            (x, touches)
        })
        .collect();
    for i in 0..grid.len() {
        for j in 0..=i {
            for (x, y) in [(&grid[i], &grid[j]), (&grid[j], &grid[i])] {
                if !two_bad && !x.1 && !y.1 {
                    continue;
                }
                let d = delta(&x.0, &y.0)?;
                if bad.iter().any(|l| d.contains_prime(l)) {
                    debug_assert!(!super::t_membership(t, &x.0, &y.0)?.member);
                    return Ok((x.0.clone(), y.0.clone()));
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no pair with numerators and denominators <= {bound} excludes {t}"
    )))
}

pub fn poonen_exclusion_witness(t: &Rational) -> Result<(Rational, Rational)> {
    poonen_exclusion_witness_with_bound(t, DEFAULT_POONEN_GRID)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClauseKind {
    #[serde(rename = "tilde-Z(2)")]
    TildeZ2,
    #[serde(rename = "tilde-R3")]
    TildeR3,
    #[serde(rename = "tilde-R5")]
    TildeR5,
    #[serde(rename = "tilde-R7")]
    TildeR7,
    #[serde(rename = "tilde-R1")]
    TildeR1,
}

impl ClauseKind {
    fn of(kind: RingKind) -> Self {
        match kind {
            RingKind::R3 => ClauseKind::TildeR3,
            RingKind::R5 => ClauseKind::TildeR5,
            RingKind::R7 => ClauseKind::TildeR7,
        }
    }
}

/// One conjunct "t in ~R" of the universal definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub kind: ClauseKind,
    pub parameters: Vec<Rational>,
    pub places: Vec<Place>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated_place: Option<Place>,
    /// The ring is all of Q, so J(R) = 0 and ~R = Q.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub whole_field: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Integer,
    NotInteger,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoenigsmannCertificate {
    pub t: Rational,
    pub verdict: Verdict,
    pub clauses: Vec<Clause>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoenigsmannConfig {
    pub samples_per_family: usize,
    /// Height bound for the candidate parameters p, q.
    pub candidate_height: u64,
    pub q_search_bound: u64,
}

impl Default for KoenigsmannConfig {
    fn default() -> Self {
        Self {
            samples_per_family: DEFAULT_SAMPLES,
            candidate_height: 48,
            q_search_bound: DEFAULT_Q_SEARCH_BOUND,
        }
    }
}

fn evaluate(t: &Rational, kind: ClauseKind, parameters: Vec<Rational>, ring: &SemiLocalRing) -> Result<Clause> {
    let whole_field = ring.is_whole_field();
    let holds = whole_field || jacobson_tilde_membership(t, ring)?;
    let places = ring.places().places();
    // ~R fails only when t is non-integral at every place of R
    let violated_place = if holds { None } else { places.first().cloned() };
    Ok(Clause {
        kind,
        parameters,
        places,
        holds,
        violated_place,
        whole_field,
    })
}

/// Z_(2) realized as T_{3,3} + T_{2,5}.
fn z2_ring() -> Result<SemiLocalRing> {
    let d1 = delta(&Rational::from(3), &Rational::from(3))?;
    let d2 = delta(&Rational::from(2), &Rational::from(5))?;
    Ok(SemiLocalRing::new(d1.intersection(&d2)))
}

fn sample_phi(k: i64, config: &KoenigsmannConfig) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for p in rationals_by_height(config.candidate_height) {
        if out.len() == config.samples_per_family {
            break;
        }
        if !p.is_zero() && phi_k_membership(&p, k)? {
            out.push(p);
        }
    }
    Ok(out)
}

fn sample_psi(config: &KoenigsmannConfig) -> Result<Vec<(Rational, Rational)>> {
    let ps = {
        let mut c = config.clone();
        c.samples_per_family *= 4;
        sample_phi(1, &c)?
    };
    let qs = sample_phi(3, config)?;
    let mut out = Vec::new();
    // diagonal order so small p and small q mix
    for s in 0..ps.len() + qs.len() {
        for (i, p) in ps.iter().enumerate() {
            if out.len() == config.samples_per_family {
                return Ok(out);
            }
            let Some(q) = s.checked_sub(i).and_then(|j| qs.get(j)) else {
                continue;
            };
            if psi_membership(p, q)? {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    Ok(out)
}

/// A prime q = 3 mod 8 that is a non-residue mod l.
fn non_residue_partner(l: &Prime, bound: u64) -> Result<Prime> {
    for q in primes().take_while(|&q| q <= bound) {
        if q % 8 != 3 {
            continue;
        }
        if legendre(&q.into(), l)? == -1 {
            return Ok(Prime::try_from(q)?);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no prime q = 3 mod 8 below {bound} is a non-residue mod {l}"
    )))
}

/// The ~R clause that excludes a non-integer t, built from its smallest
/// offending prime l.
fn violated_clause(t: &Rational, l: &Prime, config: &KoenigsmannConfig) -> Result<Clause> {
    if l.is_two() {
        return evaluate(t, ClauseKind::TildeZ2, vec![], &z2_ring()?);
    }
    let lr = as_rational(l);
    match prime_mod_8(l) {
        1 => {
            let q = as_rational(&non_residue_partner(l, config.q_search_bound)?);
            if !psi_membership(&lr, &q)? {
                return Err(Error::HypothesisViolated(format!("({lr}, {q}) is not in Psi")));
            }
            evaluate(t, ClauseKind::TildeR1, vec![lr.clone(), q.clone()], &semilocal_ring_1(&lr, &q)?)
        }
        k => {
            let kind = RingKind::from_k(i64::from(k))?;
            evaluate(t, ClauseKind::of(kind), vec![lr.clone()], &semilocal_ring(kind, &lr)?)
        }
    }
}

/// Checks t against the universal definition of Z: for non-integers an
/// explicit failing clause, for integers a sample of passing clauses.
pub fn koenigsmann_certificate_with(t: &Rational, config: &KoenigsmannConfig) -> Result<KoenigsmannCertificate> {
    let bad = offending_primes(t)?;
    let clauses = if let Some(l) = bad.first() {
        vec![violated_clause(t, l, config)?]
    } else {
        let mut clauses = vec![evaluate(t, ClauseKind::TildeZ2, vec![], &z2_ring()?)?];
        for kind in RingKind::all() {
            for p in sample_phi(kind.k(), config)? {
                let ring = semilocal_ring(kind, &p)?;
                clauses.push(evaluate(t, ClauseKind::of(kind), vec![p], &ring)?);
            }
        }
        for (p, q) in sample_psi(config)? {
            let ring = semilocal_ring_1(&p, &q)?;
            clauses.push(evaluate(t, ClauseKind::TildeR1, vec![p, q], &ring)?);
        }
        clauses
    };
    let verdict = if clauses.iter().all(|c| c.holds) {
        Verdict::Integer
    } else {
        Verdict::NotInteger
    };
    Ok(KoenigsmannCertificate {
        t: t.clone(),
        verdict,
        clauses,
    })
}

pub fn koenigsmann_certificate(t: &Rational) -> Result<KoenigsmannCertificate> {
    koenigsmann_certificate_with(t, &KoenigsmannConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn poonen_examples() {
        for t in ["1/3", "1/2", "7/10", "-5/49"] {
            let (a, b) = poonen_exclusion_witness(&r(t)).unwrap();
            assert!(a.is_positive() && b.is_positive());
            assert!(!super::super::t_membership(&r(t), &a, &b).unwrap().member, "{t}");
        }
        assert!(matches!(poonen_exclusion_witness(&r("5")), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            poonen_exclusion_witness(&r("1/67")),
            Err(Error::SearchExhausted(_))
        ));
    }

    #[test]
    fn koenigsmann_examples() {
        assert_eq!(koenigsmann_certificate(&r("0")).unwrap().verdict, Verdict::Integer);
        let c = koenigsmann_certificate(&r("7")).unwrap();
        assert_eq!(c.verdict, Verdict::Integer);
        assert_eq!(c.clauses.len(), 1 + 4 * DEFAULT_SAMPLES);

        // -1 lies in Phi_7 but R_{-1}^[7] = T_{1,1} + T_{-2,-1} = Q
        assert!(c.clauses.iter().any(|c| c.whole_field && c.parameters == vec![r("-1")]));

        let c = koenigsmann_certificate(&r("1/17")).unwrap();
        assert_eq!(c.verdict, Verdict::NotInteger);
        assert_eq!(c.clauses[0].kind, ClauseKind::TildeR1);
        assert_eq!(c.clauses[0].parameters, vec![r("17"), r("3")]);

        let c = koenigsmann_certificate(&r("1/3")).unwrap();
        assert_eq!(c.clauses[0].kind, ClauseKind::TildeR3);
        assert_eq!(c.clauses[0].parameters, vec![r("3")]);
        assert_eq!(c.clauses[0].violated_place, Some(Place::finite(3).unwrap()));
    }

    #[test]
    fn certificate_json_shape() {
        let c = koenigsmann_certificate(&r("1/2")).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["t"], "1/2");
        assert_eq!(v["verdict"], "not-integer");
        assert_eq!(v["clauses"][0]["kind"], "tilde-Z(2)");
        assert_eq!(v["clauses"][0]["places"][0], "2");
        assert_eq!(v["clauses"][0]["violated_place"], "2");
    }
}
