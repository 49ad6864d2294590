//! Valuations at the unique prime `𝔮` above 2, solutions of `λ + μ = 1` in
//! `{𝔮}`-units, the statistic `m = max(|ord λ|, |ord μ|)`, the reduction to an
//! integral `λ`, and the two bounds on `m`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::exactmath::{is_power_of_two, v2};
use crate::numberfield::{FieldElement, FieldError, NumberField};
use crate::splitting::{splitting_shape, SplittingError, SplittingShape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SUnitError {
    #[error("2 is neither inert nor totally ramified (or Z[θ] is not 2-maximal)")]
    NoUniquePrimeAbove2,
    #[error("zero element has no valuation")]
    ZeroElement,
    #[error("v2(Norm) = {v} is not divisible by the residue degree {f}")]
    NonDivisible { v: i64, f: usize },
    #[error("element is not a unit away from 2")]
    NotSUnit,
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeAbove2 {
    Inert,
    TotallyRamified,
}

#[derive(Clone, Debug)]
pub struct SUnitContext {
    pub field: Arc<NumberField>,
    pub q_shape: SplittingShape,
    pub kind: PrimeAbove2,
    pub f_q: usize,
    pub ord_q_of_2: u64,
}

impl SUnitContext {
    /// Degree one is treated as inert, which gives `f_q = ord_q(2) = 1` either way.
    pub fn new(field: &Arc<NumberField>) -> Result<Self, SUnitError> {
        let q_shape = splitting_shape(field, 2)?;
        let n = field.degree();
        let kind = if q_shape.is_inert() {
            PrimeAbove2::Inert
        } else if q_shape.is_totally_ramified() {
            PrimeAbove2::TotallyRamified
        } else {
            return Err(SUnitError::NoUniquePrimeAbove2);
        };
        let (f_q, ord_q_of_2) = match kind {
            PrimeAbove2::Inert => (n, 1),
            PrimeAbove2::TotallyRamified => (1, n as u64),
        };
        Ok(Self {
            field: field.clone(),
            q_shape,
            kind,
            f_q,
            ord_q_of_2,
        })
    }

    pub fn ord_q(&self, lambda: &FieldElement) -> Result<i64, SUnitError> {
        if lambda.is_zero() {
            return Err(SUnitError::ZeroElement);
        }
        let norm = lambda.norm();
        let v = v2(norm.numer()) as i64 - v2(norm.denom()) as i64;
        if v % self.f_q as i64 != 0 {
            return Err(SUnitError::NonDivisible { v, f: self.f_q });
        }
        Ok(v / self.f_q as i64)
    }

    pub fn is_s_unit(&self, lambda: &FieldElement) -> Result<bool, SUnitError> {
        if lambda.is_zero() {
            return Err(SUnitError::ZeroElement);
        }
        Ok(is_s_unit_above_2(lambda))
    }

    pub fn solution(&self, lambda: FieldElement) -> Result<SUnitSolution, SUnitError> {
        let mu = &FieldElement::one(&self.field) - &lambda;
        self.solution_pair(lambda, mu)
    }

    pub fn solution_pair(&self, lambda: FieldElement, mu: FieldElement) -> Result<SUnitSolution, SUnitError> {
        if !(&lambda + &mu).is_one() {
            return Err(SUnitError::InvalidSolution("λ + μ ≠ 1".into()));
        }
        if lambda.is_zero() || mu.is_zero() {
            return Err(SUnitError::ZeroElement);
        }
        if !is_s_unit_above_2(&lambda) || !is_s_unit_above_2(&mu) {
            return Err(SUnitError::NotSUnit);
        }
        let v_lambda = self.ord_q(&lambda)?;
        let v_mu = self.ord_q(&mu)?;
        Ok(SUnitSolution::from_parts(lambda, mu, v_lambda, v_mu))
    }
}

fn two_power_denominators(c: &crate::numberfield::CharPolyResult) -> bool {
    c.charpoly.coeffs().iter().all(|x| is_power_of_two(x.denom()))
}

/// `λ` and `λ⁻¹` are both integral away from 2.
pub fn is_s_unit_above_2(lambda: &FieldElement) -> bool {
    if lambda.is_zero() {
        return false;
    }
    let norm = lambda.norm();
    if !is_power_of_two(norm.numer()) || !is_power_of_two(norm.denom()) {
        return false;
    }
    let Ok(inv) = lambda.inverse() else {
        return false;
    };
    two_power_denominators(&lambda.char_poly()) && two_power_denominators(&inv.char_poly())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SUnitSolution {
    pub lambda: FieldElement,
    pub mu: FieldElement,
    pub v_lambda: i64,
    pub v_mu: i64,
    pub m: u64,
}

impl SUnitSolution {
    pub(crate) fn from_parts(lambda: FieldElement, mu: FieldElement, v_lambda: i64, v_mu: i64) -> Self {
        let m = v_lambda.unsigned_abs().max(v_mu.unsigned_abs());
        Self {
            lambda,
            mu,
            v_lambda,
            v_mu,
            m,
        }
    }

    pub fn profile(&self) -> (i64, i64) {
        (self.v_lambda, self.v_mu)
    }

    pub fn is_unit_solution(&self) -> bool {
        self.v_lambda == 0 && self.v_mu == 0
    }

    pub fn swapped(&self) -> Self {
        Self::from_parts(self.mu.clone(), self.lambda.clone(), self.v_mu, self.v_lambda)
    }
}

impl Serialize for SUnitSolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SUnitSolution", 5)?;
        st.serialize_field("lambda", &self.lambda.coord_strings())?;
        st.serialize_field("mu", &self.mu.coord_strings())?;
        st.serialize_field("v_lambda", &self.v_lambda)?;
        st.serialize_field("v_mu", &self.v_mu)?;
        st.serialize_field("m", &self.m)?;
        st.end()
    }
}

pub fn m_value(sol: &SUnitSolution) -> u64 {
    sol.m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplifyCase {
    BothUnits,
    LambdaPositive,
    Swap,
    Invert,
}

/// Case of the reduction that applies to a valuation profile. With
/// `λ + μ = 1` the two valuations are either both negative and equal, or
/// at least one is zero and the other nonnegative.
pub fn simplify_case(v_lambda: i64, v_mu: i64) -> Option<SimplifyCase> {
    let ultrametric = (v_lambda == v_mu && v_lambda <= 0) || v_lambda.min(v_mu) == 0;
    if !ultrametric {
        return None;
    }
    match (v_lambda, v_mu) {
        (0, 0) => Some(SimplifyCase::BothUnits),
        (l, _) if l > 0 => Some(SimplifyCase::LambdaPositive),
        (_, u) if u > 0 => Some(SimplifyCase::Swap),
        (l, u) if l < 0 && u < 0 => Some(SimplifyCase::Invert),
        _ => None,
    }
}

/// Returns an equivalent solution with `λ'` integral and the same `m`.
pub fn simplify_solution(sol: &SUnitSolution) -> Result<SUnitSolution, SUnitError> {
    if !(&sol.lambda + &sol.mu).is_one() {
        return Err(SUnitError::InvalidSolution("λ + μ ≠ 1".into()));
    }
    let case = simplify_case(sol.v_lambda, sol.v_mu).ok_or_else(|| {
        SUnitError::InvalidSolution(format!(
            "valuation profile ({}, {}) violates the ultrametric inequality",
            sol.v_lambda, sol.v_mu
        ))
    })?;
    Ok(match case {
        SimplifyCase::BothUnits | SimplifyCase::LambdaPositive => sol.clone(),
        SimplifyCase::Swap => sol.swapped(),
        SimplifyCase::Invert => {
            let lambda = sol.lambda.inverse()?;
            let mu = -&sol.mu.try_div(&sol.lambda)?;
            SUnitSolution::from_parts(lambda, mu, -sol.v_lambda, sol.v_mu - sol.v_lambda)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsViolation {
    pub index: usize,
    pub m: u64,
    pub v_sum: i64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsReport {
    pub kind: PrimeAbove2,
    pub m_bound: u64,
    pub checked: usize,
    pub violations: Vec<FsViolation>,
    pub pass: bool,
}

/// Totally ramified: `m ≤ 4·ord_q(2)`. Inert: `m ≤ 4` and
/// `ord_q(λμ) ≡ 1 (mod 3)`, in odd degree only.
pub fn check_fs_conditions(ctx: &SUnitContext, solutions: &[SUnitSolution]) -> Result<FsReport, SUnitError> {
    let n = ctx.field.degree();
    if ctx.kind == PrimeAbove2::Inert && n.is_multiple_of(2) {
        return Err(SUnitError::Hypothesis(format!("F has odd degree (n = {n})")));
    }
    let m_bound = 4 * ctx.ord_q_of_2;
    let mut violations = Vec::new();
    for (index, s) in solutions.iter().enumerate() {
        let v_sum = s.v_lambda + s.v_mu;
        if s.m > m_bound {
            violations.push(FsViolation {
                index,
                m: s.m,
                v_sum,
                reason: format!("m = {} > {m_bound}", s.m),
            });
        }
        if ctx.kind == PrimeAbove2::Inert && v_sum.rem_euclid(3) != 1 {
            violations.push(FsViolation {
                index,
                m: s.m,
                v_sum,
                reason: format!("ord(λμ) = {v_sum} ≢ 1 (mod 3)"),
            });
        }
    }
    Ok(FsReport {
        kind: ctx.kind,
        m_bound,
        checked: solutions.len(),
        pass: violations.is_empty(),
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValboundReport {
    /// Strict bound `2·ord_q(2)`.
    pub bound: u64,
    pub checked: usize,
    pub exceeding: Vec<usize>,
    /// Unit solutions (`m = 0`) in the inert case; these would refute the unit criterion.
    pub flagged_unit_solutions: Vec<usize>,
    pub pass: bool,
}

pub fn check_valbound_lemma(ctx: &SUnitContext, solutions: &[SUnitSolution]) -> ValboundReport {
    let bound = 2 * ctx.ord_q_of_2;
    let exceeding: Vec<usize> = (0..solutions.len()).filter(|&i| solutions[i].m >= bound).collect();
    let flagged_unit_solutions = if ctx.kind == PrimeAbove2::Inert {
        (0..solutions.len()).filter(|&i| solutions[i].m == 0).collect()
    } else {
        Vec::new()
    };
    ValboundReport {
        bound,
        checked: solutions.len(),
        pass: exceeding.is_empty(),
        exceeding,
        flagged_unit_solutions,
    }
}

/// `|Norm|` as a signed power of two, `None` otherwise.
pub fn norm_power_of_two(norm: &BigInt) -> Option<u64> {
    (!norm.is_zero() && is_power_of_two(norm)).then(|| v2(&norm.abs()))
}
