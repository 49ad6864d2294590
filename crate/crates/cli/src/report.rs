use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use unitgate_core::criteria::{Holds, Status, Verdict};
use unitgate_core::exactmath::IrreducibilityCertificate;
use unitgate_core::search::Orbit;
use unitgate_core::splitting::SplittingShape;
use unitgate_core::sunit::{FsReport, PrimeAbove2, SUnitSolution, ValboundReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
    pub v_lambda: i64,
    pub v_mu: i64,
    pub m: u64,
}

impl From<&SUnitSolution> for SolutionRecord {
    fn from(s: &SUnitSolution) -> Self {
        Self {
            lambda: s.lambda.coord_strings(),
            mu: s.mu.coord_strings(),
            v_lambda: s.v_lambda,
            v_mu: s.v_mu,
            m: s.m,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeEntry {
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<SplittingShape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSearchReport {
    pub height: i64,
    pub count: usize,
    pub solutions: Vec<SolutionRecord>,
    pub orbits: Vec<Orbit>,
}

/// Outcome of applying the simplification map to every found S-unit solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplifyCheck {
    pub checked: usize,
    /// Indices whose image changes `m`, fails integrality, or leaves `μ'` a non-unit when `m > 0`.
    pub failures: Vec<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SUnitSearchReport {
    pub height: i64,
    pub denom_exp_max: u32,
    pub prime_above_2: PrimeAbove2,
    pub ord_q_of_2: u64,
    pub count: usize,
    pub solutions: Vec<SolutionRecord>,
    pub orbits: Vec<Orbit>,
    /// Distinct `(ord λ, ord μ)` pairs, sorted.
    pub profiles: Vec<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fs_conditions: Option<FsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fs_skipped: Option<String>,
    pub valbound: ValboundReport,
    pub simplify: SimplifyCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub label: String,
    pub coeffs: Vec<i64>,
    pub polynomial: String,
    pub degree: usize,
    pub discriminant: String,
    pub signature: (usize, usize),
    pub irreducibility: IrreducibilityCertificate,
    pub shapes: Vec<ShapeEntry>,
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_search: Option<UnitSearchReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sunit_search: Option<SUnitSearchReport>,
    #[serde(default)]
    pub warnings: Vec<String>,
    /// Oracle results contradicting a certificate.
    #[serde(default)]
    pub violations: Vec<String>,
    /// Microseconds per phase, present only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_us: Option<BTreeMap<String, u64>>,
}

impl Report {
    pub fn verdict(&self, theorem: unitgate_core::criteria::TheoremId) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.theorem == theorem)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "field      {}  [{}]", self.polynomial, self.label);
        let _ = writeln!(
            out,
            "degree     {}   signature {:?}   disc {}",
            self.degree, self.signature, self.discriminant
        );
        for s in &self.shapes {
            match (&s.shape, &s.error) {
                (Some(sh), _) => {
                    let _ = writeln!(
                        out,
                        "p = {:<6} {:?}  (e,f) = {:?}{}",
                        s.p,
                        sh.classification,
                        sh.ef_pairs(),
                        if sh.p_maximal { "" } else { "  not p-maximal" }
                    );
                }
                (None, Some(e)) => {
                    let _ = writeln!(out, "p = {:<6} error: {e}", s.p);
                }
                _ => {}
            }
        }
        for v in &self.verdicts {
            let prime = v.prime.map(|p| format!("(p={p})")).unwrap_or_default();
            let holds = match v.holds {
                Holds::Yes => "yes",
                Holds::No => "no",
                Holds::Indeterminate => "indeterminate",
            };
            let _ = writeln!(out, "{:<20} {:<14} {}", format!("{}{prime}", v.theorem), holds, v.conclusion);
            for h in v.hypothesis_trace.iter().filter(|h| h.status != Status::Pass) {
                let _ = writeln!(out, "    {:?}: {} ({})", h.status, h.hypothesis, h.detail);
            }
        }
        if let Some(u) = &self.unit_search {
            let _ = writeln!(out, "unit search H={}: {} solutions, {} orbits", u.height, u.count, u.orbits.len());
            for s in &u.solutions {
                let _ = writeln!(out, "    λ = [{}]", s.lambda.join(", "));
            }
        }
        if let Some(s) = &self.sunit_search {
            let _ = writeln!(
                out,
                "S-unit search H={} denom 2^{}: {} solutions, profiles {:?}",
                s.height, s.denom_exp_max, s.count, s.profiles
            );
            for x in &s.solutions {
                let _ = writeln!(
                    out,
                    "    λ = [{}]  μ = [{}]  ord = ({}, {})  m = {}",
                    x.lambda.join(", "),
                    x.mu.join(", "),
                    x.v_lambda,
                    x.v_mu,
                    x.m
                );
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for v in &self.violations {
            let _ = writeln!(out, "VIOLATION: {v}");
        }
        out
    }
}
