use num_integer::Integer;
use serde::Serialize;

use super::hilbert::hilbert_symbol;
use super::DiagonalForm;
use crate::arith::{split_unit, val, Place, Prime, Rational};
use crate::error::Result;

/// Why a local verdict came out the way it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LocalReason {
    #[serde(rename = "zero-tuple")]
    ZeroTuple,
    #[serde(rename = "valuation-parity")]
    ValuationParity,
    #[serde(rename = "residue-symbol")]
    ResidueSymbol,
    #[serde(rename = "sign")]
    Sign,
    #[serde(rename = "automatic-n>=5")]
    AutomaticRankFive,
    #[serde(rename = "two-adic-table")]
    TwoAdicTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalVerdict {
    pub place: Place,
    pub representable: bool,
    pub reason: LocalReason,
}

/// Replace x by p^(v mod 2) * (integral unit), same square class in Q_p.
pub fn normalize_at(x: &Rational, p: &Prime) -> Rational {
    let (v, u) = split_unit(x, p);
    let unit = Rational::from(u.numer() * u.denom());
    if v.is_odd() {
        unit * Rational::from(p.to_bigint())
    } else {
        unit
    }
}

/// Whether the diagonal form with the given nonzero coefficients has a
/// nontrivial zero over Q_v.
pub fn is_locally_isotropic(coeffs: &[Rational], v: &Place) -> Result<bool> {
    let p = match v {
        Place::Infinity => {
            let pos = coeffs.iter().any(|c| c.is_positive());
            let neg = coeffs.iter().any(|c| c.is_negative());
            return Ok(pos && neg);
        }
        Place::Finite(p) => p,
    };
    let coeffs: Vec<Rational> = coeffs.iter().map(|c| normalize_at(c, p)).collect();
    let n = coeffs.len();
    if n >= 5 {
        return Ok(true);
    }
    if n <= 1 {
        return Ok(false);
    }
    let d = coeffs.iter().fold(Rational::one(), |acc, c| acc * c);
    let mut eps = 1i8;
    for i in 0..n {
        for j in i + 1..n {
            eps *= hilbert_symbol(&coeffs[i], &coeffs[j], v)?;
        }
    }
    let minus_one = Rational::from(-1);
    let is_square = |x: &Rational| -> Result<bool> {
        Ok(crate::padic::square_class(x, p)?.is_square())
    };
    Ok(match n {
        2 => is_square(&-&d)?,
        3 => hilbert_symbol(&minus_one, &-&d, v)? == eps,
        _ => !is_square(&d)? || eps == hilbert_symbol(&minus_one, &minus_one, v)?,
    })
}

/// Decides whether q represents a over Q_v (the zero tuple represents 0).
pub fn locally_represents(q: &DiagonalForm, a: &Rational, v: &Place) -> Result<LocalVerdict> {
    let verdict = |representable, reason| LocalVerdict {
        place: v.clone(),
        representable,
        reason,
    };
    if a.is_zero() {
        return Ok(verdict(true, LocalReason::ZeroTuple));
    }
    let coeffs = q.coefficients();
    let p = match v {
        Place::Infinity => {
            let ok = coeffs.iter().any(|c| c.signum() == a.signum());
            return Ok(verdict(ok, LocalReason::Sign));
        }
        Place::Finite(p) => p,
    };
    let mut augmented: Vec<Rational> = coeffs.to_vec();
    augmented.push(-a);
    let representable = is_locally_isotropic(&augmented, v)?;
    let reason = if augmented.len() >= 5 {
        LocalReason::AutomaticRankFive
    } else if p.is_two() {
        LocalReason::TwoAdicTable
    } else if coeffs.len() == 1 && (val(a, p) - val(&coeffs[0], p)).is_odd() {
        LocalReason::ValuationParity
    } else {
        LocalReason::ResidueSymbol
    };
    Ok(verdict(representable, reason))
}
