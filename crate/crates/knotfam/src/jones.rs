//! Jones polynomials from Tutte polynomials of Tait graphs.
//!
//! The substitution `x -> -x`, `y -> -1/x` gives the Jones polynomial of the alternating link
//! only up to a unit `±x^k`, and up to the mirror `x <-> 1/x`. Neither ambiguity is resolved
//! here; [`normalize`] picks a canonical representative instead.

use crate::poly::{LaurentPoly1, LaurentPoly2};
use num_bigint::BigInt;
use num_traits::Signed;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JonesError {
    #[error("the zero polynomial has no normal form")]
    Zero,
}

/// Jones polynomial up to a unit factor `±x^k`.
///
/// ```
/// use knotfam::{jones::jones_from_tutte, LaurentPoly2};
/// let trefoil: LaurentPoly2 = "x^2 + x + y".parse().unwrap();
/// assert_eq!(jones_from_tutte(&trefoil).to_string(), "-1*x^-1 + -1*x^1 + 1*x^2");
/// ```
pub fn jones_from_tutte(t: &LaurentPoly2) -> LaurentPoly1 {
    t.substitute_thistlethwaite()
}

/// `j = sign * x^shift * poly`, where `poly` has lowest exponent 0 and a positive top coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub poly: LaurentPoly1,
    pub shift: i64,
    pub sign: i8,
}

impl Normalized {
    pub fn degree(&self) -> usize {
        self.poly.max_exp().unwrap_or(0) as usize
    }
}

pub fn normalize(j: &LaurentPoly1) -> Result<Normalized, JonesError> {
    let (Some(lo), Some(hi)) = (j.min_exp(), j.max_exp()) else {
        return Err(JonesError::Zero);
    };
    let sign: i8 = if j.coeff(hi).is_negative() { -1 } else { 1 };
    let poly = j.scale(&BigInt::from(sign), -lo);
    Ok(Normalized { poly, shift: lo, sign })
}

/// Substitution followed by [`normalize`].
pub fn normalized_jones(t: &LaurentPoly2) -> Result<Normalized, JonesError> {
    normalize(&jones_from_tutte(t))
}
