//! Diagonal quadratic forms over Q: Hilbert symbols, local and global
//! representation, bounded witness search and the Selmer cubic.

mod hilbert;
mod local;
mod selmer;
mod witness;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{support, Place, Prime, Rational};
use crate::error::{Error, Result};

pub use hilbert::hilbert_symbol;
pub use local::{is_locally_isotropic, locally_represents, normalize_at, LocalReason, LocalVerdict};
pub use selmer::{selmer_demo, selmer_global_search, HenselCertificate, SelmerPlaceCheck, SelmerReport};
pub use witness::{rationals_by_height, represent_binary, solve_ternary, witness_search};

/// a1 X1^2 + ... + an Xn^2 with every ai nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalForm {
    coefficients: Vec<Rational>,
}

impl DiagonalForm {
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument("form needs at least one coefficient".into()));
        }
        if coefficients.iter().any(Rational::is_zero) {
            return Err(Error::InvalidArgument("form coefficients must be nonzero".into()));
        }
        Ok(Self { coefficients })
    }

    pub fn from_integers(c: &[i64]) -> Result<Self> {
        Self::new(c.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    /// q(x). Panics if the lengths differ.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.rank(), "point has wrong dimension");
        self.coefficients
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, xi)| acc + a * &xi.square())
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for DiagonalForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['<', '⟨']).trim_end_matches(['>', '⟩']);
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalVerdict {
    pub representable: bool,
    pub trace: Vec<LocalVerdict>,
}

/// The places where q could fail to represent a: 2, infinity, and the
/// primes in the support of a and of the coefficients.
pub fn relevant_places(q: &DiagonalForm, a: &Rational) -> Result<Vec<Place>> {
    let mut primes: Vec<Prime> = vec![Prime::two()];
    if !a.is_zero() {
        primes.extend(support(a)?);
    }
    for c in q.coefficients() {
        primes.extend(support(c)?);
    }
    primes.sort();
    primes.dedup();
    let mut places: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    places.push(Place::Infinity);
    Ok(places)
}

/// Decides whether q represents a over Q by checking each relevant place.
pub fn represents(q: &DiagonalForm, a: &Rational) -> Result<GlobalVerdict> {
    let trace = relevant_places(q, a)?
        .iter()
        .map(|v| locally_represents(q, a, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(GlobalVerdict {
        representable: trace.iter().all(|t| t.representable),
        trace,
    })
}

/// Whether 2 + a b k^2 + b z^2 = x^2 + a y^2 has a rational solution.
pub fn robinson_phi(a: &Rational, b: &Rational, k: &Rational) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("robinson_phi needs nonzero a and b".into()));
    }
    let q = DiagonalForm::new(vec![Rational::one(), a.clone(), -b])?;
    let target = Rational::from(2) + a * b * &k.square();
    Ok(represents(&q, &target)?.representable)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let q: DiagonalForm = "1, 1,-3/2".parse().unwrap();
        assert_eq!(q.to_string(), "1,1,-3/2");
        assert!("1,0".parse::<DiagonalForm>().is_err());
        assert!("".parse::<DiagonalForm>().is_err());
    }

    #[test]
    fn global_examples() {
        let q = DiagonalForm::from_integers(&[1, 1, 1]).unwrap();
        assert!(represents(&q, &r("5")).unwrap().representable);
        let v = represents(&q, &r("7")).unwrap();
        assert!(!v.representable);
        assert!(!v.trace[0].representable);
        assert!(represents(&DiagonalForm::from_integers(&[1]).unwrap(), &r("4")).unwrap().representable);
    }

    #[test]
    fn trace_covers_exactly_the_relevant_places() {
        let q = DiagonalForm::from_integers(&[1, 3]).unwrap();
        let v = represents(&q, &r("10/7")).unwrap();
        let names: Vec<String> = v.trace.iter().map(|t| t.place.to_string()).collect();
        assert_eq!(names, ["2", "3", "5", "7", "inf"]);
    }

    #[test]
    fn phi_examples() {
        assert!(robinson_phi(&r("1"), &r("3"), &r("1")).unwrap());
        assert!(!robinson_phi(&r("1"), &r("3"), &r("1/3")).unwrap());
        assert!(!robinson_phi(&r("1"), &r("3"), &r("1/2")).unwrap());
    }
}
