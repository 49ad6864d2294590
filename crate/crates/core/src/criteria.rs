//! Hypothesis checks for the local criteria and replayable certificates that
//! follow the proofs step by step.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{factor_integer, gcd_u64, is_prime, mod_pow, primes_up_to};
use crate::numberfield::NumberField;
use crate::residues::{bezout, mod9_admissible_traces, three_t_solutions};
use crate::splitting::{degree_one_residues, splitting_shape, SplittingError, SplittingShape};
use crate::sunit::{simplify_case, PrimeAbove2, SUnitContext, SimplifyCase};

pub const CONDITIONAL_ASSUMPTIONS: [&str; 2] = ["Haluk Conj 3.1", "Haluk Conj 4.1"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error(
        "p = {0} is too small: the criterion needs p ≥ 5, and over Q(√-3) (x^2 + x + 1, p = 3) \
         the unit equation has the solution ((1+√-3)/2, (1-√-3)/2)"
    )]
    PrimeTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Pram,
    T23,
    T23ram,
    Unitcrit,
    Triantafillou,
    PramConditional,
    T23ramConditional,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        Self::Pram,
        Self::T23,
        Self::T23ram,
        Self::Unitcrit,
        Self::Triantafillou,
        Self::PramConditional,
        Self::T23ramConditional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Pram => "pram",
            Self::T23 => "t23",
            Self::T23ram => "t23ram",
            Self::Unitcrit => "unitcrit",
            Self::Triantafillou => "triantafillou",
            Self::PramConditional => "pram_conditional",
            Self::T23ramConditional => "t23ram_conditional",
        }
    }

    pub fn takes_prime(self) -> bool {
        matches!(self, Self::Pram | Self::Unitcrit | Self::PramConditional)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown criterion {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Holds {
    Yes,
    No,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    fn from_bool(b: bool) -> Self {
        if b {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub hypothesis: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeRequirement {
    Inert,
    TotallyRamified,
    TotallySplit,
    InertOrTotallyRamified,
}

impl ShapeRequirement {
    pub fn holds(self, s: &SplittingShape) -> bool {
        match self {
            Self::Inert => s.is_inert(),
            Self::TotallyRamified => s.is_totally_ramified(),
            Self::TotallySplit => s.is_totally_split(),
            Self::InertOrTotallyRamified => s.is_inert() || s.is_totally_ramified(),
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Self::Inert => "inert",
            Self::TotallyRamified => "totally ramified",
            Self::TotallySplit => "totally split",
            Self::InertOrTotallyRamified => "inert or totally ramified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum CertStep {
    /// All `n` roots of the defining polynomial are real.
    TotallyReal { degree: usize, real_roots: usize },
    /// `u·a + v·b = 1`.
    GcdCondition { a: u64, b: u64, bezout: (i64, i64) },
    DegreeResidue { n: usize, modulus: usize, residue: usize, allowed: Vec<usize> },
    Splitting { p: u64, requirement: ShapeRequirement, ef_pairs: Vec<(u32, usize)> },
    /// The only `b ∈ F_p^×` with `b^n ≡ ±1` are `±1`, so units are `≡ ±1` mod the prime above `p`.
    UnitResidueSigns { p: u64, n: usize },
    /// `±1 ± 1 ≢ 1 (mod p)`.
    SumOfSignsAvoidsOne { p: u64 },
    /// Primes above 3 are `(3, θ - a)`; the only nonzero `x, y ∈ F_3` with `x + y = 1` are `x = y = -1`.
    ThreeAdicResidues { residues: Vec<u64> },
    /// `Norm(-1 + 3φ) ≡ (-1)^n + (-1)^{n-1}·3·Tr φ (mod 9)` forces `Tr φ ≡ 0 (mod 3)`.
    Mod9TraceStep { n: usize, admissible: Vec<u64> },
    /// `Tr φ + Tr ψ = n` cannot be `≡ 0 (mod 3)`.
    TraceSumContradiction { n: usize },
    /// A solution with `m ≥ threshold` becomes one with `λ'` integral, `μ'` a unit, `ord λ' = m`.
    SimplifyReduction { threshold: u64 },
    /// `μ' = 1 - λ' ≡ 1 (mod 4)`, so `Norm(μ') ≡ 1 (mod 4)` and `Norm(μ') = 1`.
    NormMod4,
    /// `μ' ≡ -1` modulo a prime above `p` gives `Norm(μ') ≡ (-1)^n = -1 (mod p)`.
    NormSignFromResidue { p: u64, n: usize },
    /// Every solution has `m < bound`.
    ValuationBound { bound: u64 },
    ValuationProfiles { profiles: Vec<(i64, i64)> },
    FsConditions { kind: PrimeAbove2, m_bound: u64, max_m: u64, profiles: Vec<(i64, i64)> },
    Conclusion { statement: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("certificate step {index} does not replay: {reason}")]
pub struct ReplayError {
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<CertStep>,
}

impl Certificate {
    /// Re-executes every step against `field`; `Ok(Holds::Yes)` when all of them hold.
    pub fn replay(&self, field: &Arc<NumberField>) -> Result<Holds, ReplayError> {
        for (index, step) in self.steps.iter().enumerate() {
            replay_step(field, step).map_err(|reason| ReplayError { index, reason })?;
        }
        Ok(Holds::Yes)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn unit_residues(p: u64, n: usize) -> Vec<u64> {
    (1..p)
        .filter(|&b| {
            let r = mod_pow(b, n as u64, p);
            r == 1 || r == p - 1
        })
        .collect()
}

fn profiles_with_m_one() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in -1..=1i64 {
        for b in -1..=1i64 {
            if a.abs().max(b.abs()) == 1 && simplify_case(a, b).is_some() {
                out.push((a, b));
            }
        }
    }
    out
}

fn replay_step(field: &Arc<NumberField>, step: &CertStep) -> Result<(), String> {
    let n = field.degree();
    match step {
        CertStep::TotallyReal { degree, real_roots } => ensure(
            *degree == n && *real_roots == n && field.real_roots() == n,
            || format!("{} of {n} roots are real", field.real_roots()),
        ),
        CertStep::GcdCondition { a, b, bezout: (u, v) } => ensure(
            (*u as i128) * (*a as i128) + (*v as i128) * (*b as i128) == 1,
            || format!("{u}·{a} + {v}·{b} ≠ 1"),
        ),
        CertStep::DegreeResidue { n: m, modulus, residue, allowed } => ensure(
            *m == n && n % modulus == *residue && allowed.contains(residue),
            || format!("n = {n} mod {modulus} is not in {allowed:?}"),
        ),
        CertStep::Splitting { p, requirement, ef_pairs } => {
            let shape = splitting_shape(field, *p).map_err(|e| e.to_string())?;
            ensure(requirement.holds(&shape) && &shape.ef_pairs() == ef_pairs, || {
                format!("{p} is not {} ({:?})", requirement.describe(), shape.ef_pairs())
            })
        }
        CertStep::UnitResidueSigns { p, n: m } => {
            ensure(*m == n && *p % 2 == 1 && is_prime(*p), || format!("bad inputs p = {p}, n = {m}"))?;
            let residues = unit_residues(*p, n);
            ensure(residues == vec![1, p - 1], || {
                format!("residues with b^n ≡ ±1 mod {p} are {residues:?}")
            })
        }
        CertStep::SumOfSignsAvoidsOne { p } => {
            let hits: Vec<i64> = [2i64, 0, -2]
                .into_iter()
                .filter(|s| (s - 1).rem_euclid(*p as i64) == 0)
                .collect();
            ensure(hits.is_empty(), || format!("±1 ± 1 ≡ 1 (mod {p})"))
        }
        CertStep::ThreeAdicResidues { residues } => {
            let actual = degree_one_residues(field, 3).map_err(|e| e.to_string())?;
            ensure(&actual == residues && actual.len() == n, || {
                format!("degree-one residues at 3 are {actual:?}")
            })?;
            let pairs: Vec<(u64, u64)> = (1..3u64)
                .flat_map(|x| (1..3u64).map(move |y| (x, y)))
                .filter(|(x, y)| (x + y) % 3 == 1)
                .collect();
            ensure(pairs == vec![(2, 2)], || format!("nonzero pairs summing to 1 mod 3: {pairs:?}"))
        }
        CertStep::Mod9TraceStep { n: m, admissible } => ensure(
            *m == n
                && mod9_admissible_traces(n) == *admissible
                && admissible == &vec![0]
                && three_t_solutions(2).is_empty()
                && three_t_solutions(-2).is_empty(),
            || format!("admissible traces mod 3 are {:?}", mod9_admissible_traces(n)),
        ),
        CertStep::TraceSumContradiction { n: m } => {
            ensure(*m == n && !n.is_multiple_of(3), || format!("n = {n} is divisible by 3"))
        }
        CertStep::SimplifyReduction { threshold } => {
            for m in 1..=(*threshold as i64 + 2) {
                for (vl, vm) in [(-m, -m), (0, m), (m, 0)] {
                    let target = match simplify_case(vl, vm) {
                        Some(SimplifyCase::Invert) => (-vl, vm - vl),
                        Some(SimplifyCase::Swap) => (vm, vl),
                        Some(SimplifyCase::LambdaPositive | SimplifyCase::BothUnits) => (vl, vm),
                        None => return Err(format!("profile ({vl}, {vm}) has no case")),
                    };
                    ensure(target == (m, 0), || format!("({vl}, {vm}) maps to {target:?}"))?;
                }
            }
            Ok(())
        }
        CertStep::NormMod4 => ensure((-1i64).rem_euclid(4) != 1, || "−1 ≡ 1 (mod 4)".into()),
        CertStep::NormSignFromResidue { p, n: m } => ensure(
            *m == n && n % 2 == 1 && *p > 2 && mod_pow(p - 1, n as u64, *p) == p - 1,
            || format!("(-1)^{n} mod {p} does not separate ±1"),
        ),
        CertStep::ValuationBound { bound } => {
            let ctx = SUnitContext::new(field).map_err(|e| e.to_string())?;
            ensure(*bound == 2 * ctx.ord_q_of_2, || {
                format!("bound {bound} ≠ 2·ord_q(2) = {}", 2 * ctx.ord_q_of_2)
            })
        }
        CertStep::ValuationProfiles { profiles } => {
            let expected = profiles_with_m_one();
            ensure(&expected == profiles, || format!("profiles with m = 1 are {expected:?}"))
        }
        CertStep::FsConditions { kind, m_bound, max_m, profiles } => {
            let ctx = SUnitContext::new(field).map_err(|e| e.to_string())?;
            ensure(*m_bound == 4 * ctx.ord_q_of_2 && max_m <= m_bound, || {
                format!("m ≤ {max_m} does not meet 4·ord_q(2) = {}", 4 * ctx.ord_q_of_2)
            })?;
            let kind_ok = match kind {
                PrimeAbove2::Inert => ctx.q_shape.is_inert(),
                PrimeAbove2::TotallyRamified => ctx.q_shape.is_totally_ramified(),
            };
            ensure(kind_ok, || format!("2 is not {kind:?}"))?;
            if *kind == PrimeAbove2::Inert {
                ensure(n % 2 == 1, || format!("n = {n} is even"))?;
                ensure(*max_m <= 4, || format!("m ≤ {max_m} exceeds 4"))?;
                for (a, b) in profiles {
                    ensure((a + b).rem_euclid(3) == 1, || format!("ord(λμ) = {} ≢ 1 (mod 3)", a + b))?;
                }
            }
            Ok(())
        }
        CertStep::Conclusion { .. } => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: TheoremId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub holds: Holds,
    pub hypothesis_trace: Vec<HypothesisCheck>,
    #[serde(default)]
    pub conditional_on: Vec<String>,
    pub conclusion: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

struct Builder {
    theorem: TheoremId,
    prime: Option<u64>,
    trace: Vec<HypothesisCheck>,
    notes: Vec<String>,
}

impl Builder {
    fn new(theorem: TheoremId, prime: Option<u64>, field: &NumberField) -> Self {
        let mut notes = Vec::new();
        if field.degree() == 1 {
            notes.push("degree 1: hypotheses evaluated literally".to_string());
        }
        Self {
            theorem,
            prime,
            trace: Vec::new(),
            notes,
        }
    }

    fn check(&mut self, hypothesis: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.trace.push(HypothesisCheck {
            hypothesis: hypothesis.into(),
            status: Status::from_bool(ok),
            detail: detail.into(),
        });
    }

    fn totally_real(&mut self, field: &NumberField) {
        let (r, n) = (field.real_roots(), field.degree());
        self.check("F totally real", r == n, format!("{r} of {n} roots real"));
    }

    fn shape(
        &mut self,
        field: &NumberField,
        p: u64,
        req: ShapeRequirement,
    ) -> Result<SplittingShape, CriteriaError> {
        let shape = splitting_shape(field, p)?;
        let hypothesis = format!("{p} {}", req.describe());
        if !shape.p_maximal {
            self.notes.push(format!(
                "Z[θ] is not {p}-maximal; the decomposition of {p} is not determined by this presentation"
            ));
            self.trace.push(HypothesisCheck {
                hypothesis,
                status: Status::Indeterminate,
                detail: "Dedekind criterion fails".into(),
            });
        } else {
            let detail = format!("{} {:?}", shape.classification, shape.ef_pairs());
            self.check(hypothesis, req.holds(&shape), detail);
        }
        Ok(shape)
    }

    fn finish(self, conclusion: &str, conditional: bool, cert: impl FnOnce() -> Vec<CertStep>) -> Verdict {
        let holds = if self.trace.iter().any(|h| h.status == Status::Indeterminate) {
            Holds::Indeterminate
        } else if self.trace.iter().all(|h| h.status == Status::Pass) {
            Holds::Yes
        } else {
            Holds::No
        };
        let conditional_on = if conditional {
            CONDITIONAL_ASSUMPTIONS.iter().map(|s| s.to_string()).collect()
        } else {
            Vec::new()
        };
        let certificate = (holds == Holds::Yes).then(|| {
            let mut steps = cert();
            steps.push(CertStep::Conclusion {
                statement: conclusion.to_string(),
            });
            Certificate { steps }
        });
        Verdict {
            theorem: self.theorem,
            prime: self.prime,
            holds,
            hypothesis_trace: self.trace,
            conditional_on,
            conclusion: conclusion.to_string(),
            certificate,
            notes: self.notes,
        }
    }
}

const NO_UNIT_SOLUTIONS: &str = "the unit equation λ + μ = 1 has no solutions in units of O_F";
const ASYMPTOTIC_FLT: &str = "the asymptotic Fermat's Last Theorem holds over F";

fn require_prime(p: u64) -> Result<(), CriteriaError> {
    if !is_prime(p) {
        return Err(CriteriaError::NotPrime(p));
    }
    if p < 5 {
        return Err(CriteriaError::PrimeTooSmall(p));
    }
    Ok(())
}

fn gcd_step(a: u64, b: u64) -> CertStep {
    CertStep::GcdCondition {
        a,
        b,
        bezout: bezout(a, b).expect("coprime"),
    }
}

fn splitting_step(shape: &SplittingShape, requirement: ShapeRequirement) -> CertStep {
    CertStep::Splitting {
        p: shape.p,
        requirement,
        ef_pairs: shape.ef_pairs(),
    }
}

fn triantafillou_steps(field: &NumberField) -> Vec<CertStep> {
    let n = field.degree();
    vec![
        CertStep::ThreeAdicResidues {
            residues: degree_one_residues(field, 3).unwrap_or_default(),
        },
        CertStep::Mod9TraceStep {
            n,
            admissible: mod9_admissible_traces(n),
        },
        CertStep::TraceSumContradiction { n },
    ]
}

/// Units of `O_F` are `≡ ±1` modulo the prime above `p`, and `±1 ± 1 ≠ 1`.
pub fn check_unitcrit(field: &Arc<NumberField>, p: u64) -> Result<Verdict, CriteriaError> {
    require_prime(p)?;
    let n = field.degree();
    let half = (p - 1) / 2;
    let mut b = Builder::new(TheoremId::Unitcrit, Some(p), field);
    let g = gcd_u64(n as u64, half);
    b.check("gcd(n, (p-1)/2) = 1", g == 1, format!("gcd({n}, {half}) = {g}"));
    let shape = b.shape(field, p, ShapeRequirement::TotallyRamified)?;
    Ok(b.finish(NO_UNIT_SOLUTIONS, false, || {
        vec![
            gcd_step(n as u64, half),
            splitting_step(&shape, ShapeRequirement::TotallyRamified),
            CertStep::UnitResidueSigns { p, n },
            CertStep::SumOfSignsAvoidsOne { p },
        ]
    }))
}

pub fn check_triantafillou(field: &Arc<NumberField>) -> Result<Verdict, CriteriaError> {
    let n = field.degree();
    let mut b = Builder::new(TheoremId::Triantafillou, None, field);
    b.check("3 ∤ n", !n.is_multiple_of(3), format!("n = {n}"));
    let shape = b.shape(field, 3, ShapeRequirement::TotallySplit)?;
    Ok(b.finish(NO_UNIT_SOLUTIONS, false, || {
        let mut steps = vec![
            CertStep::DegreeResidue {
                n,
                modulus: 3,
                residue: n % 3,
                allowed: vec![1, 2],
            },
            splitting_step(&shape, ShapeRequirement::TotallySplit),
        ];
        steps.extend(triantafillou_steps(field));
        steps
    }))
}

fn pram_like(
    field: &Arc<NumberField>,
    p: u64,
    conditional: bool,
) -> Result<Verdict, CriteriaError> {
    require_prime(p)?;
    let n = field.degree();
    let (id, req2) = if conditional {
        (TheoremId::PramConditional, ShapeRequirement::TotallyRamified)
    } else {
        (TheoremId::Pram, ShapeRequirement::InertOrTotallyRamified)
    };
    let mut b = Builder::new(id, Some(p), field);
    if !conditional {
        b.totally_real(field);
    }
    let g = gcd_u64(n as u64, p - 1);
    b.check("gcd(n, p-1) = 1", g == 1, format!("gcd({n}, {}) = {g}", p - 1));
    let shape2 = b.shape(field, 2, req2)?;
    let shape_p = b.shape(field, p, ShapeRequirement::TotallyRamified)?;
    Ok(b.finish(ASYMPTOTIC_FLT, conditional, || {
        let ctx = SUnitContext::new(field).expect("2 inert or totally ramified");
        let ord2 = ctx.ord_q_of_2;
        let mut steps = Vec::new();
        if !conditional {
            steps.push(CertStep::TotallyReal {
                degree: n,
                real_roots: field.real_roots(),
            });
        }
        steps.extend([
            gcd_step(n as u64, p - 1),
            splitting_step(&shape2, req2),
            splitting_step(&shape_p, ShapeRequirement::TotallyRamified),
            CertStep::SimplifyReduction { threshold: 2 * ord2 },
            CertStep::NormMod4,
            CertStep::UnitResidueSigns { p, n },
            CertStep::NormSignFromResidue { p, n },
            CertStep::ValuationBound { bound: 2 * ord2 },
        ]);
        let (kind, max_m, profiles) = if ctx.kind == PrimeAbove2::Inert && !conditional {
            steps.push(CertStep::SumOfSignsAvoidsOne { p });
            let profiles = profiles_with_m_one();
            steps.push(CertStep::ValuationProfiles {
                profiles: profiles.clone(),
            });
            (PrimeAbove2::Inert, 1, profiles)
        } else {
            (PrimeAbove2::TotallyRamified, 2 * ord2 - 1, Vec::new())
        };
        steps.push(CertStep::FsConditions {
            kind,
            m_bound: 4 * ord2,
            max_m,
            profiles,
        });
        steps
    }))
}

pub fn check_pram(field: &Arc<NumberField>, p: u64) -> Result<Verdict, CriteriaError> {
    pram_like(field, p, false)
}

pub fn check_t23(field: &Arc<NumberField>) -> Result<Verdict, CriteriaError> {
    let n = field.degree();
    let mut b = Builder::new(TheoremId::T23, None, field);
    b.totally_real(field);
    b.check("n ≡ 1 or 5 (mod 6)", matches!(n % 6, 1 | 5), format!("n = {n}"));
    let shape2 = b.shape(field, 2, ShapeRequirement::Inert)?;
    let shape3 = b.shape(field, 3, ShapeRequirement::TotallySplit)?;
    Ok(b.finish(ASYMPTOTIC_FLT, false, || {
        let mut steps = vec![
            CertStep::TotallyReal {
                degree: n,
                real_roots: field.real_roots(),
            },
            CertStep::DegreeResidue {
                n,
                modulus: 6,
                residue: n % 6,
                allowed: vec![1, 5],
            },
            splitting_step(&shape2, ShapeRequirement::Inert),
            splitting_step(&shape3, ShapeRequirement::TotallySplit),
        ];
        steps.extend(triantafillou_steps(field));
        let profiles = profiles_with_m_one();
        steps.extend([
            CertStep::SimplifyReduction { threshold: 2 },
            CertStep::NormMod4,
            CertStep::NormSignFromResidue { p: 3, n },
            CertStep::ValuationBound { bound: 2 },
            CertStep::ValuationProfiles {
                profiles: profiles.clone(),
            },
            CertStep::FsConditions {
                kind: PrimeAbove2::Inert,
                m_bound: 4,
                max_m: 1,
                profiles,
            },
        ]);
        steps
    }))
}

fn t23ram_like(field: &Arc<NumberField>, conditional: bool) -> Result<Verdict, CriteriaError> {
    let n = field.degree();
    let id = if conditional {
        TheoremId::T23ramConditional
    } else {
        TheoremId::T23ram
    };
    let mut b = Builder::new(id, None, field);
    if !conditional {
        b.totally_real(field);
    }
    b.check("n odd", n % 2 == 1, format!("n = {n}"));
    let shape2 = b.shape(field, 2, ShapeRequirement::TotallyRamified)?;
    let shape3 = b.shape(field, 3, ShapeRequirement::TotallySplit)?;
    Ok(b.finish(ASYMPTOTIC_FLT, conditional, || {
        let ord2 = n as u64;
        let mut steps = Vec::new();
        if !conditional {
            steps.push(CertStep::TotallyReal {
                degree: n,
                real_roots: field.real_roots(),
            });
        }
        steps.extend([
            CertStep::DegreeResidue {
                n,
                modulus: 2,
                residue: n % 2,
                allowed: vec![1],
            },
            splitting_step(&shape2, ShapeRequirement::TotallyRamified),
            splitting_step(&shape3, ShapeRequirement::TotallySplit),
            CertStep::SimplifyReduction { threshold: 2 * ord2 },
            CertStep::NormMod4,
            CertStep::ThreeAdicResidues {
                residues: degree_one_residues(field, 3).unwrap_or_default(),
            },
            CertStep::NormSignFromResidue { p: 3, n },
            CertStep::ValuationBound { bound: 2 * ord2 },
            CertStep::FsConditions {
                kind: PrimeAbove2::TotallyRamified,
                m_bound: 4 * ord2,
                max_m: 2 * ord2 - 1,
                profiles: Vec::new(),
            },
        ]);
        steps
    }))
}

pub fn check_t23ram(field: &Arc<NumberField>) -> Result<Verdict, CriteriaError> {
    t23ram_like(field, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionalVariant {
    PramConditional,
    T23ramConditional,
}

/// Variants valid for any field under the two modularity conjectures; 2 must be totally ramified.
pub fn check_conditional(
    field: &Arc<NumberField>,
    variant: ConditionalVariant,
    p: Option<u64>,
) -> Result<Verdict, CriteriaError> {
    match variant {
        ConditionalVariant::PramConditional => match p {
            Some(p) => pram_like(field, p, true),
            None => Ok(auto_prime(field, TheoremId::PramConditional, |p| pram_like(field, p, true))?),
        },
        ConditionalVariant::T23ramConditional => t23ram_like(field, true),
    }
}

/// Primes `p ≥ 5` dividing the discriminant of the defining polynomial.
pub fn candidate_primes(field: &NumberField) -> Vec<u64> {
    let disc = field.disc().abs();
    let mut out: Vec<u64> = match factor_integer(&disc) {
        Some(fac) => fac.iter().filter_map(|(q, _)| q.to_u64()).collect(),
        None => primes_up_to(10_000)
            .into_iter()
            .filter(|&q| (&disc % BigInt::from(q)) == BigInt::from(0))
            .collect(),
    };
    out.retain(|&q| q >= 5);
    out
}

fn auto_prime(
    field: &NumberField,
    theorem: TheoremId,
    check: impl Fn(u64) -> Result<Verdict, CriteriaError>,
) -> Result<Verdict, CriteriaError> {
    let mut verdicts = Vec::new();
    for p in candidate_primes(field) {
        let v = check(p)?;
        if v.holds == Holds::Yes {
            return Ok(v);
        }
        verdicts.push(v);
    }
    if let Some(v) = verdicts.iter().find(|v| v.holds == Holds::Indeterminate) {
        return Ok(v.clone());
    }
    if let Some(v) = verdicts.into_iter().next() {
        return Ok(v);
    }
    let mut b = Builder::new(theorem, None, field);
    b.check(
        "some prime p ≥ 5 is totally ramified",
        false,
        "no prime p ≥ 5 divides the discriminant",
    );
    let conclusion = if theorem == TheoremId::Unitcrit {
        NO_UNIT_SOLUTIONS
    } else {
        ASYMPTOTIC_FLT
    };
    Ok(b.finish(conclusion, theorem == TheoremId::PramConditional, Vec::new))
}

/// Evaluates one criterion; for criteria that take a prime and none is
/// given, tries each prime `p ≥ 5` dividing the discriminant and reports
/// the first `yes` (otherwise the first indeterminate, otherwise the first `no`).
pub fn check(field: &Arc<NumberField>, theorem: TheoremId, p: Option<u64>) -> Result<Verdict, CriteriaError> {
    match (theorem, p) {
        (TheoremId::Unitcrit, Some(p)) => check_unitcrit(field, p),
        (TheoremId::Unitcrit, None) => auto_prime(field, theorem, |p| check_unitcrit(field, p)),
        (TheoremId::Pram, Some(p)) => check_pram(field, p),
        (TheoremId::Pram, None) => auto_prime(field, theorem, |p| check_pram(field, p)),
        (TheoremId::PramConditional, p) => check_conditional(field, ConditionalVariant::PramConditional, p),
        (TheoremId::T23, _) => check_t23(field),
        (TheoremId::T23ram, _) => check_t23ram(field),
        (TheoremId::T23ramConditional, _) => check_conditional(field, ConditionalVariant::T23ramConditional, None),
        (TheoremId::Triantafillou, _) => check_triantafillou(field),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::from_coeffs(c).unwrap()
    }

    fn assert_replays(v: &Verdict, k: &Arc<NumberField>) {
        assert_eq!(v.holds, Holds::Yes, "{v:#?}");
        assert_eq!(v.certificate.as_ref().unwrap().replay(k), Ok(Holds::Yes));
    }

    #[test]
    fn unitcrit_rejects_small_primes() {
        let k = field(&[1, 1, 1]);
        let e = check_unitcrit(&k, 3).unwrap_err();
        assert_eq!(e, CriteriaError::PrimeTooSmall(3));
        assert!(e.to_string().contains("√-3"));
        assert_eq!(check_unitcrit(&k, 9), Err(CriteriaError::NotPrime(9)));
    }

    #[test]
    fn unitcrit_examples() {
        // x^3 - 5 is Eisenstein at 5 and gcd(3, 2) = 1.
        let k = field(&[-5, 0, 0, 1]);
        let v = check_unitcrit(&k, 5).unwrap();
        assert_replays(&v, &k);
        let quad = field(&[-5, 0, 1]);
        let v = check_unitcrit(&quad, 5).unwrap();
        assert_eq!(v.holds, Holds::No);
        assert_eq!(v.hypothesis_trace[0].status, Status::Fail);
        assert!(v.certificate.is_none());
    }

    #[test]
    fn triantafillou_examples() {
        let q = NumberField::rationals();
        let v = check_triantafillou(&q).unwrap();
        assert_replays(&v, &q);
        assert!(!v.notes.is_empty());
        for c in [&[-3i64, 9, -6, 1][..], &[1, 1, 1]] {
            let v = check_triantafillou(&field(c)).unwrap();
            assert_eq!(v.holds, Holds::No);
            assert_eq!(v.hypothesis_trace[1].status, Status::Fail);
        }
    }

    #[test]
    fn t23_for_rationals() {
        let q = NumberField::rationals();
        assert_replays(&check_t23(&q).unwrap(), &q);
        assert_eq!(check_t23(&field(&[-3, 9, -6, 1])).unwrap().holds, Holds::No);
    }

    #[test]
    fn pram_parity_and_reality() {
        let v = check_pram(&field(&[-3, 0, 1]), 5).unwrap();
        assert_eq!(v.holds, Holds::No);
        assert_eq!(v.hypothesis_trace[1].status, Status::Fail);
        let v = check_pram(&field(&[-5, 0, 0, 1]), 5).unwrap();
        assert_eq!(v.hypothesis_trace[0].status, Status::Fail);
        assert_eq!(v.holds, Holds::No);
    }

    #[test]
    fn indeterminate_shape_forces_indeterminate() {
        // x^2 - 5 is not 2-maximal, so the verdict stays open even though gcd(2, 4) = 2 fails.
        let v = check_pram(&field(&[-5, 0, 1]), 5).unwrap();
        assert_eq!(v.holds, Holds::Indeterminate);
        assert!(v.hypothesis_trace.iter().any(|h| h.status == Status::Indeterminate));
        assert!(v.hypothesis_trace.iter().any(|h| h.status == Status::Fail));
    }

    #[test]
    fn conditional_needs_ramified_two() {
        // x^3 - 10: Eisenstein at 2 and 5, one real root, gcd(3, 4) = 1.
        let k = field(&[-10, 0, 0, 1]);
        let v = check_conditional(&k, ConditionalVariant::PramConditional, Some(5)).unwrap();
        assert_replays(&v, &k);
        assert_eq!(v.conditional_on.len(), 2);
        assert_eq!(check_pram(&k, 5).unwrap().holds, Holds::No);
        let inert = field(&[-5, 1, 0, 1]);
        let v = check_conditional(&inert, ConditionalVariant::PramConditional, Some(5)).unwrap();
        assert_ne!(v.holds, Holds::Yes);
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let k = field(&[-5, 0, 0, 1]);
        let mut cert = check_unitcrit(&k, 5).unwrap().certificate.unwrap();
        cert.steps[0] = CertStep::GcdCondition { a: 3, b: 2, bezout: (1, 1) };
        assert_eq!(cert.replay(&k).unwrap_err().index, 0);
        let other = field(&[-7, 0, 0, 1]);
        let cert = check_unitcrit(&k, 5).unwrap().certificate.unwrap();
        assert!(cert.replay(&other).is_err());
    }

    #[test]
    fn auto_prime_selection() {
        let k = field(&[-5, 0, 0, 1]);
        let v = check(&k, TheoremId::Unitcrit, None).unwrap();
        assert_eq!((v.prime, v.holds), (Some(5), Holds::Yes));
        let v = check(&NumberField::rationals(), TheoremId::Pram, None).unwrap();
        assert_eq!((v.prime, v.holds), (None, Holds::No));
    }

    #[test]
    fn m_one_profiles() {
        assert_eq!(profiles_with_m_one(), vec![(-1, -1), (0, 1), (1, 0)]);
        assert_eq!(unit_residues(7, 5), vec![1, 6]);
        assert_eq!(unit_residues(7, 3), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn verdict_round_trips() {
        let k = field(&[-5, 0, 0, 1]);
        let v = check_unitcrit(&k, 5).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Verdict>(&s).unwrap(), v);
    }
}
