//! Decomposition shape of a rational prime, read off the factorization of the
//! defining polynomial modulo `p` when the Dedekind criterion certifies that
//! `Z[θ]` is maximal at `p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{factor_mod_p, is_prime, ExactMathError, IntPoly, ResiduePoly};
use crate::numberfield::NumberField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Z[θ] is not {0}-maximal, so the decomposition of {0} cannot be read off this presentation")]
    Indeterminate(u64),
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingClass {
    Inert,
    TotallyRamified,
    TotallySplit,
    Other,
    Indeterminate,
}

impl fmt::Display for SplittingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Inert => "inert",
            Self::TotallyRamified => "totally ramified",
            Self::TotallySplit => "totally split",
            Self::Other => "other",
            Self::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

/// One prime above `p`: `(p, g(θ))` with ramification index `e` and residue degree `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeAbove {
    pub e: u32,
    pub f: usize,
    pub gen_poly: ResiduePoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingShape {
    pub p: u64,
    pub degree: usize,
    pub pairs: Vec<PrimeAbove>,
    pub classification: SplittingClass,
    pub p_maximal: bool,
    /// The defining polynomial is Eisenstein at `p`.
    pub eisenstein: bool,
}

impl SplittingShape {
    pub fn is_determinate(&self) -> bool {
        self.p_maximal
    }

    /// `[(1, n)]`. In degree one every determinate shape is inert, totally
    /// ramified and totally split at once.
    pub fn is_inert(&self) -> bool {
        self.p_maximal && self.pairs.len() == 1 && self.pairs[0].e == 1 && self.pairs[0].f == self.degree
    }

    /// `[(n, 1)]`.
    pub fn is_totally_ramified(&self) -> bool {
        self.p_maximal
            && self.pairs.len() == 1
            && self.pairs[0].e as usize == self.degree
            && self.pairs[0].f == 1
    }

    /// `n` copies of `(1, 1)`.
    pub fn is_totally_split(&self) -> bool {
        self.p_maximal
            && self.pairs.len() == self.degree
            && self.pairs.iter().all(|q| q.e == 1 && q.f == 1)
    }

    pub fn ef_pairs(&self) -> Vec<(u32, usize)> {
        self.pairs.iter().map(|q| (q.e, q.f)).collect()
    }

    /// `Σ e_i f_i`.
    pub fn ef_sum(&self) -> usize {
        self.pairs.iter().map(|q| q.e as usize * q.f).sum()
    }
}

/// Dedekind criterion: with `f ≡ Π g_i^{e_i} (mod p)` and lifts `G_i`, let
/// `F = (f - Π G_i^{e_i}) / p`. Then `Z[θ]` is `p`-maximal iff `F mod p` is
/// coprime to every `g_i` with `e_i ≥ 2`.
pub fn dedekind_p_maximal(f: &IntPoly, p: u64) -> Result<bool, SplittingError> {
    if !is_prime(p) {
        return Err(SplittingError::NotPrime(p));
    }
    if !f.discriminant().is_multiple_of(&BigInt::from(p)) {
        return Ok(true);
    }
    if f.is_eisenstein_at(p) {
        return Ok(true);
    }
    let fac = factor_mod_p(f, p)?;
    let lifted = fac
        .factors
        .iter()
        .fold(IntPoly::constant(BigInt::from(fac.unit)), |acc, (g, e)| {
            &acc * &g.lift().pow(*e)
        });
    let defect = (f - &lifted).div_exact_scalar(&BigInt::from(p))?;
    let defect_mod_p = defect.reduce_mod(p);
    let repeated = fac
        .factors
        .iter()
        .filter(|(_, e)| *e >= 2)
        .fold(ResiduePoly::one(p), |acc, (g, _)| acc.mul(g));
    Ok(defect_mod_p.gcd(&repeated).is_one())
}

pub fn splitting_shape(field: &NumberField, p: u64) -> Result<SplittingShape, SplittingError> {
    if !is_prime(p) {
        return Err(SplittingError::NotPrime(p));
    }
    let f = field.minpoly();
    let n = field.degree();
    let eisenstein = f.is_eisenstein_at(p);
    let p_maximal = dedekind_p_maximal(f, p)?;
    if !p_maximal {
        return Ok(SplittingShape {
            p,
            degree: n,
            pairs: Vec::new(),
            classification: SplittingClass::Indeterminate,
            p_maximal,
            eisenstein,
        });
    }
    let pairs: Vec<PrimeAbove> = factor_mod_p(f, p)?
        .factors
        .into_iter()
        .map(|(g, e)| PrimeAbove {
            e,
            f: g.degree().unwrap_or(0),
            gen_poly: g,
        })
        .collect();
    let mut shape = SplittingShape {
        p,
        degree: n,
        pairs,
        classification: SplittingClass::Other,
        p_maximal,
        eisenstein,
    };
    shape.classification = if shape.is_totally_split() {
        SplittingClass::TotallySplit
    } else if shape.is_totally_ramified() {
        SplittingClass::TotallyRamified
    } else if shape.is_inert() {
        SplittingClass::Inert
    } else {
        SplittingClass::Other
    };
    Ok(shape)
}

/// Residues `a_i` with `(p, θ - a_i)` a degree-one prime above `p`; reducing
/// an element modulo that prime is evaluation at `a_i`.
pub fn degree_one_residues(field: &NumberField, p: u64) -> Result<Vec<u64>, SplittingError> {
    let shape = splitting_shape(field, p)?;
    if !shape.p_maximal {
        return Err(SplittingError::Indeterminate(p));
    }
    let mut roots: Vec<u64> = shape
        .pairs
        .iter()
        .filter(|q| q.f == 1)
        .map(|q| (p - q.gen_poly.coeff(0)) % p)
        .collect();
    roots.sort_unstable();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> std::sync::Arc<NumberField> {
        NumberField::from_coeffs(c).unwrap()
    }

    #[test]
    fn dedekind_examples() {
        assert!(dedekind_p_maximal(&IntPoly::from_i64(&[1, 1, 1]), 3).unwrap());
        assert!(dedekind_p_maximal(&IntPoly::from_i64(&[-3, 9, -6, 1]), 3).unwrap());
        assert!(!dedekind_p_maximal(&IntPoly::from_i64(&[-5, 0, 1]), 2).unwrap());
        assert_eq!(
            dedekind_p_maximal(&IntPoly::from_i64(&[1, 1]), 9),
            Err(SplittingError::NotPrime(9))
        );
    }

    #[test]
    fn dedekind_non_eisenstein_ramified() {
        // x^2 + 1 at 2: (x+1)^2, defect (x^2+1 - (x^2+2x+1))/2 = -x, coprime to x+1.
        assert!(dedekind_p_maximal(&IntPoly::from_i64(&[1, 0, 1]), 2).unwrap());
        // x^2 - 3 at 2: (x+1)^2, defect (x^2-3-(x^2+2x+1))/2 = -x-2 ≡ x mod 2, coprime.
        assert!(dedekind_p_maximal(&IntPoly::from_i64(&[-3, 0, 1]), 2).unwrap());
        // x^2 + 3 at 2 has index 2 (Z[(1+√-3)/2]).
        assert!(!dedekind_p_maximal(&IntPoly::from_i64(&[3, 0, 1]), 2).unwrap());
    }

    #[test]
    fn shape_examples() {
        let s = splitting_shape(&field(&[1, 1, 1]), 3).unwrap();
        assert_eq!(s.classification, SplittingClass::TotallyRamified);
        let s = splitting_shape(&field(&[-3, 9, -6, 1]), 3).unwrap();
        assert_eq!(s.classification, SplittingClass::TotallyRamified);
        assert!(s.eisenstein);
        let s = splitting_shape(&field(&[1, 0, 1]), 5).unwrap();
        assert_eq!(s.classification, SplittingClass::TotallySplit);
        assert_eq!(s.ef_pairs(), vec![(1, 1), (1, 1)]);
        let s = splitting_shape(&field(&[1, 0, 1]), 3).unwrap();
        assert_eq!(s.classification, SplittingClass::Inert);
        let s = splitting_shape(&field(&[-5, 0, 1]), 2).unwrap();
        assert_eq!(s.classification, SplittingClass::Indeterminate);
        assert!(!s.is_inert() && !s.is_totally_ramified() && !s.is_totally_split());
    }

    #[test]
    fn degree_one_field_has_every_shape() {
        let s = splitting_shape(&NumberField::rationals(), 2).unwrap();
        assert!(s.is_inert() && s.is_totally_ramified() && s.is_totally_split());
        assert_eq!(s.classification, SplittingClass::TotallySplit);
    }

    #[test]
    fn residue_examples() {
        assert_eq!(degree_one_residues(&field(&[-3, 9, -6, 1]), 3).unwrap(), vec![0]);
        assert_eq!(degree_one_residues(&field(&[1, 0, 1]), 5).unwrap(), vec![2, 3]);
        assert_eq!(degree_one_residues(&NumberField::rationals(), 3).unwrap(), vec![0]);
        assert_eq!(
            degree_one_residues(&field(&[-5, 0, 1]), 2),
            Err(SplittingError::Indeterminate(2))
        );
    }
}
