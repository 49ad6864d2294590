//! Congruence checks for integral elements modulo degree-one primes: the
//! residue modulo a totally ramified prime, the charpoly and norm
//! congruences it forces, the ±1 restriction on unit residues, the 3-adic
//! restriction on S-unit solutions when 3 splits completely, and the mod-9
//! trace obstruction built on it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{gcd_u64, mod_pow, rational_mod, IntPoly, ResiduePoly};
use crate::numberfield::{FieldElement, NumberField};
use crate::splitting::{degree_one_residues, splitting_shape, SplittingError};
use crate::sunit::is_s_unit_above_2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("{p} is not totally ramified in this field (or Z[θ] is not {p}-maximal)")]
    NotTotallyRamified { p: u64 },
    #[error("3 is not totally split in this field (or Z[θ] is not 3-maximal)")]
    ThreeNotSplit,
    #[error("element is not an algebraic integer")]
    NotIntegral,
    #[error("element is not a unit: norm {norm}")]
    NotUnit { norm: String },
    #[error("element is not an S-unit for the primes above 2")]
    NotSUnit,
    #[error("the pair does not sum to 1")]
    NotASolution,
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("lemma contradicted: {0}")]
    LemmaContradiction(String),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
}

/// `λ mod (p, θ - a)` for an element whose coordinate denominators are prime to `p`.
pub fn residue_at(lambda: &FieldElement, p: u64, a: u64) -> Result<u64, ResidueError> {
    let x = BigRational::from_integer(BigInt::from(a));
    rational_mod(&lambda.eval_coords(&x), p).ok_or(ResidueError::NotIntegral)
}

fn ramified_root(field: &NumberField, p: u64) -> Result<u64, ResidueError> {
    let shape = splitting_shape(field, p)?;
    if !shape.is_totally_ramified() {
        return Err(ResidueError::NotTotallyRamified { p });
    }
    Ok(degree_one_residues(field, p)?[0])
}

/// The integer `b ∈ [0, p)` with `λ ≡ b` modulo the unique prime above a totally ramified `p`.
pub fn residue_totally_ramified(
    field: &NumberField,
    p: u64,
    lambda: &FieldElement,
) -> Result<u64, ResidueError> {
    let a = ramified_root(field, p)?;
    if !lambda.is_algebraic_integer() {
        return Err(ResidueError::NotIntegral);
    }
    residue_at(lambda, p, a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharpolyCongruence {
    pub b: u64,
    pub pass: bool,
    /// Lowest coefficient index where `C(X)` and `(X - b)^n` differ mod `p`.
    pub differing_index: Option<usize>,
}

/// `C_λ(X) ≡ (X - b)^n (mod p)`.
pub fn check_charpoly_congruence(
    field: &NumberField,
    p: u64,
    lambda: &FieldElement,
) -> Result<CharpolyCongruence, ResidueError> {
    let b = residue_totally_ramified(field, p, lambda)?;
    let charpoly = lambda
        .char_poly()
        .integer_charpoly()
        .ok_or(ResidueError::NotIntegral)?;
    let n = field.degree() as u32;
    let target = IntPoly::from_i64(&[-(b as i64), 1]).pow(n);
    let lhs = charpoly.reduce_mod(p);
    let rhs = target.reduce_mod(p);
    let differing_index = (0..=n as usize).find(|&i| lhs.coeff(i) != rhs.coeff(i));
    Ok(CharpolyCongruence {
        b,
        pass: differing_index.is_none(),
        differing_index,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormCongruence {
    pub b: u64,
    pub norm_mod_p: u64,
    pub b_pow_n_mod_p: u64,
    pub pass: bool,
}

/// `Norm(λ) ≡ b^n (mod p)`.
pub fn check_norm_congruence(
    field: &NumberField,
    p: u64,
    lambda: &FieldElement,
) -> Result<NormCongruence, ResidueError> {
    let b = residue_totally_ramified(field, p, lambda)?;
    let norm = lambda.norm();
    let norm_mod_p = rational_mod(&norm, p).ok_or(ResidueError::NotIntegral)?;
    let b_pow_n_mod_p = mod_pow(b, field.degree() as u64, p);
    Ok(NormCongruence {
        b,
        norm_mod_p,
        b_pow_n_mod_p,
        pass: norm_mod_p == b_pow_n_mod_p,
    })
}

/// Sign `s` with `λ ≡ s` modulo the prime above `p`, for a unit `λ` when
/// `p` is odd, totally ramified, and `gcd(n, (p-1)/2) = 1`.
pub fn unit_residue_pm1(field: &NumberField, p: u64, lambda: &FieldElement) -> Result<i8, ResidueError> {
    if p.is_multiple_of(2) {
        return Err(ResidueError::Hypothesis(format!("p = {p} must be odd")));
    }
    let n = field.degree() as u64;
    let g = gcd_u64(n, (p - 1) / 2);
    if g != 1 {
        return Err(ResidueError::Hypothesis(format!("gcd(n, (p-1)/2) = gcd({n}, {}) = {g}", (p - 1) / 2)));
    }
    let b = residue_totally_ramified(field, p, lambda)?;
    let norm = lambda.norm();
    if !norm.abs().is_one() {
        return Err(ResidueError::NotUnit { norm: norm.to_string() });
    }
    if b == 1 {
        Ok(1)
    } else if b == p - 1 {
        Ok(-1)
    } else {
        Err(ResidueError::LemmaContradiction(format!(
            "unit has residue {b} mod the prime above {p}, not ±1"
        )))
    }
}

/// Integers `u, v` with `u·n + v·m = 1`, the Bezout witness behind the ±1 restriction.
pub fn bezout(n: u64, m: u64) -> Option<(i64, i64)> {
    let e = (n as i64).extended_gcd(&(m as i64));
    (e.gcd == 1).then_some((e.x, e.y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub p: u64,
    pub b: u64,
    pub checks: BTreeMap<String, bool>,
}

/// All residue checks that apply to `λ` at a totally ramified `p`.
pub fn residue_report(field: &NumberField, p: u64, lambda: &FieldElement) -> Result<ResidueReport, ResidueError> {
    let cp = check_charpoly_congruence(field, p, lambda)?;
    let nc = check_norm_congruence(field, p, lambda)?;
    let mut checks = BTreeMap::new();
    checks.insert("charpoly_congruence".to_string(), cp.pass);
    checks.insert("norm_congruence".to_string(), nc.pass);
    if lambda.norm().abs().is_one() && p % 2 == 1 && gcd_u64(field.degree() as u64, (p - 1) / 2) == 1 {
        checks.insert("unit_residue_pm1".to_string(), unit_residue_pm1(field, p, lambda).is_ok());
    }
    Ok(ResidueReport { p, b: cp.b, checks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeAdicCheck {
    /// The `a_i` with `(3, θ - a_i)` the primes above 3.
    pub residues: Vec<u64>,
    pub lambda_residues: Vec<u64>,
    pub mu_residues: Vec<u64>,
    pub pass: bool,
}

fn require_three_split(field: &NumberField) -> Result<Vec<u64>, ResidueError> {
    let shape = splitting_shape(field, 3)?;
    if !shape.is_totally_split() {
        return Err(ResidueError::ThreeNotSplit);
    }
    Ok(degree_one_residues(field, 3)?)
}

/// `λ ≡ μ ≡ -1 (mod 3)` for an integral S-unit solution with S the primes above 2.
pub fn check_3adic_lemma(
    field: &Arc<NumberField>,
    lambda: &FieldElement,
    mu: &FieldElement,
) -> Result<ThreeAdicCheck, ResidueError> {
    let residues = require_three_split(field)?;
    if !(lambda + mu).is_one() {
        return Err(ResidueError::NotASolution);
    }
    for x in [lambda, mu] {
        if !x.is_algebraic_integer() {
            return Err(ResidueError::NotIntegral);
        }
        if !is_s_unit_above_2(x) {
            return Err(ResidueError::NotSUnit);
        }
    }
    let lambda_residues = residues
        .iter()
        .map(|&a| residue_at(lambda, 3, a))
        .collect::<Result<Vec<_>, _>>()?;
    let mu_residues = residues
        .iter()
        .map(|&a| residue_at(mu, 3, a))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = lambda_residues.iter().chain(&mu_residues).all(|&r| r == 2);
    Ok(ThreeAdicCheck {
        residues,
        lambda_residues,
        mu_residues,
        pass,
    })
}

fn sign_pow(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(-1)^n + (-1)^{n-1}·3·t  (mod 9)`, the expansion of `Norm(-1 + 3φ)` with `t = Tr(φ)`.
pub fn mod9_norm_expansion(n: usize, trace_phi: &BigInt) -> u64 {
    let t = trace_phi.mod_floor(&BigInt::from(9)).to_i64().expect("small");
    (sign_pow(n) + sign_pow(n + 1) * 3 * t).rem_euclid(9) as u64
}

/// Residues `t mod 3` solving `3t ≡ target (mod 9)`; empty when `3 ∤ target`.
pub fn three_t_solutions(target: i64) -> Vec<u64> {
    (0..3u64).filter(|&t| (3 * t as i64 - target).rem_euclid(9) == 0).collect()
}

/// Trace residues mod 3 compatible with `Norm(-1 + 3φ) = ±1` in degree `n`.
pub fn mod9_admissible_traces(n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = (0..3u64)
        .filter(|&t| {
            let v = mod9_norm_expansion(n, &BigInt::from(t));
            v == 1 || v == 8
        })
        .collect();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceObstruction {
    pub n: usize,
    pub phi: Vec<String>,
    pub psi: Vec<String>,
    pub trace_phi: String,
    pub trace_psi: String,
    pub norm_lambda: String,
    pub norm_mu: String,
    /// Norms agree with the mod-9 expansion.
    pub expansion_consistent: bool,
    pub trace_phi_mod_3: u64,
    pub trace_psi_mod_3: u64,
    /// `n mod 3`, nonzero under the hypotheses, while `Tr φ + Tr ψ = n`
    /// with both traces `≡ 0 (mod 3)`.
    pub n_mod_3: u64,
    pub contradiction: String,
}

/// Runs the mod-9 trace argument on a claimed unit solution. Under the
/// hypotheses no such solution exists, so an `Ok` return means the input
/// passed every check it should have failed.
pub fn trace_obstruction(
    field: &Arc<NumberField>,
    lambda: &FieldElement,
    mu: &FieldElement,
) -> Result<TraceObstruction, ResidueError> {
    let n = field.degree();
    if n.is_multiple_of(3) {
        return Err(ResidueError::Hypothesis(format!("3 divides n = {n}")));
    }
    require_three_split(field)?;
    if !(lambda + mu).is_one() {
        return Err(ResidueError::NotASolution);
    }
    for x in [lambda, mu] {
        if !x.is_algebraic_integer() {
            return Err(ResidueError::NotIntegral);
        }
        let norm = x.norm();
        if !norm.abs().is_one() {
            return Err(ResidueError::NotUnit { norm: norm.to_string() });
        }
    }
    let one = FieldElement::one(field);
    let three = FieldElement::integer(field, 3);
    let phi = (lambda + &one).try_div(&three).expect("nonzero");
    let psi = (mu + &one).try_div(&three).expect("nonzero");
    if !phi.is_algebraic_integer() || !psi.is_algebraic_integer() {
        return Err(ResidueError::LemmaContradiction(
            "(λ + 1)/3 or (μ + 1)/3 is not integral, against λ ≡ μ ≡ -1 (mod 3)".into(),
        ));
    }
    let tp = phi.trace().to_integer();
    let tq = psi.trace().to_integer();
    let nl = lambda.norm().to_integer();
    let nm = mu.norm().to_integer();
    let nine = BigInt::from(9);
    let expansion_consistent = mod9_norm_expansion(n, &tp) as i64
        == nl.mod_floor(&nine).to_i64().expect("small")
        && mod9_norm_expansion(n, &tq) as i64 == nm.mod_floor(&nine).to_i64().expect("small");
    let three_b = BigInt::from(3);
    let trace_phi_mod_3 = tp.mod_floor(&three_b).to_u64().expect("small");
    let trace_psi_mod_3 = tq.mod_floor(&three_b).to_u64().expect("small");
    let n_mod_3 = (n % 3) as u64;
    let contradiction = if trace_phi_mod_3 != 0 || trace_psi_mod_3 != 0 {
        "a trace is nonzero mod 3, but 3·Tr must be ≡ 0 (mod 9)".to_string()
    } else {
        format!("Tr φ + Tr ψ = n ≡ 0 (mod 3), but n ≡ {n_mod_3} (mod 3)")
    };
    Ok(TraceObstruction {
        n,
        phi: phi.coord_strings(),
        psi: psi.coord_strings(),
        trace_phi: tp.to_string(),
        trace_psi: tq.to_string(),
        norm_lambda: nl.to_string(),
        norm_mu: nm.to_string(),
        expansion_consistent,
        trace_phi_mod_3,
        trace_psi_mod_3,
        n_mod_3,
        contradiction,
    })
}

/// Reduction of the characteristic polynomial mod `p`, for reports.
pub fn charpoly_mod_p(lambda: &FieldElement, p: u64) -> Option<ResiduePoly> {
    lambda.char_poly().integer_charpoly().map(|c| c.reduce_mod(p))
}
