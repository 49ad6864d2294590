use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use unitgate_core::criteria::{check, CertStep, Holds, TheoremId, Verdict};
use unitgate_core::exactmath::{factor_integer, is_prime};
use unitgate_core::numberfield::NumberField;
use unitgate_core::search::{enumerate_sunit_solutions, enumerate_unit_solutions, SearchConfig};
use unitgate_core::splitting::{dedekind_p_maximal, splitting_shape};
use unitgate_core::sunit::{
    check_fs_conditions, check_valbound_lemma, simplify_solution, SUnitContext, SUnitSolution,
};

use crate::poly::format_polynomial;
use crate::record::FieldRecord;
use crate::report::{
    Report, SUnitSearchReport, ShapeEntry, SimplifyCheck, SolutionRecord, UnitSearchReport,
};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SUnitOptions {
    pub height: i64,
    /// Exponent bound `k` for denominators `2^k`; defaults to `4·ord_q(2) + 1`.
    pub denom_exp_max: Option<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeOptions {
    /// Primes whose splitting shape is reported; `None` means 2, 3 and the primes ≥ 5 dividing the discriminant.
    pub primes: Option<Vec<u64>>,
    /// Prime used by the criteria that take one; `None` tries every candidate.
    pub criterion_prime: Option<u64>,
    pub unit_height: Option<i64>,
    pub sunits: Option<SUnitOptions>,
    pub timings: bool,
}

/// Parses `H=20`, `h=20` or `20`.
pub fn parse_height(s: &str) -> Result<i64, CliError> {
    let v = s
        .strip_prefix("H=")
        .or_else(|| s.strip_prefix("h="))
        .unwrap_or(s);
    match v.parse::<i64>() {
        Ok(h) if h >= 1 => Ok(h),
        _ => Err(CliError::Input(format!("bad search height {s:?}"))),
    }
}

/// Parses tokens such as `H=4 denom=3`.
pub fn parse_sunit_options(tokens: &[String]) -> Result<SUnitOptions, CliError> {
    let mut height = None;
    let mut denom = None;
    for tok in tokens.iter().flat_map(|t| t.split_whitespace()) {
        if let Some(d) = tok.strip_prefix("denom=") {
            let k = d
                .parse::<u32>()
                .map_err(|_| CliError::Input(format!("bad denominator exponent {tok:?}")))?;
            denom = Some(k);
        } else {
            height = Some(parse_height(tok)?);
        }
    }
    let height = height.ok_or_else(|| CliError::Input("--sunits needs a height H=..".into()))?;
    Ok(SUnitOptions {
        height,
        denom_exp_max: denom,
    })
}

pub fn parse_primes(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| match t.trim().parse::<u64>() {
            Ok(p) if is_prime(p) => Ok(p),
            _ => Err(CliError::Input(format!("{t:?} is not a prime"))),
        })
        .collect()
}

struct Timer {
    enabled: bool,
    laps: BTreeMap<String, u64>,
    start: Instant,
}

impl Timer {
    fn new(enabled: bool) -> Self {
        Self {
            enabled,
            laps: BTreeMap::new(),
            start: Instant::now(),
        }
    }

    fn lap(&mut self, name: &str) {
        if self.enabled {
            self.laps.insert(name.to_string(), self.start.elapsed().as_micros() as u64);
            self.start = Instant::now();
        }
    }

    fn finish(self) -> Option<BTreeMap<String, u64>> {
        self.enabled.then_some(self.laps)
    }
}

fn default_primes(field: &NumberField) -> Vec<u64> {
    let mut ps = vec![2, 3];
    ps.extend(unitgate_core::criteria::candidate_primes(field));
    ps
}

fn maximality_warnings(field: &NumberField) -> Vec<String> {
    let disc = field.disc();
    if field.degree() == 1 {
        return Vec::new();
    }
    let Some(fac) = factor_integer(disc) else {
        return vec![format!(
            "discriminant {disc} not factored; Z[θ] may be a proper suborder of the maximal order"
        )];
    };
    let mut out = Vec::new();
    for (q, e) in fac {
        let Some(q) = q.to_u64() else { continue };
        if e < 2 {
            continue;
        }
        match dedekind_p_maximal(field.minpoly(), q) {
            Ok(true) => {}
            Ok(false) => out.push(format!(
                "Z[θ] is not {q}-maximal; splitting at {q} is indeterminate and searches cover Z[θ]-coordinates only"
            )),
            Err(e) => out.push(format!("maximality at {q} unknown: {e}")),
        }
    }
    out
}

pub fn analyze(record: &FieldRecord, opts: &AnalyzeOptions) -> Result<Report, CliError> {
    let mut timer = Timer::new(opts.timings);
    let field = record.load()?;
    timer.lap("load");

    let primes = opts.primes.clone().unwrap_or_else(|| default_primes(&field));
    let shapes = primes
        .iter()
        .map(|&p| match splitting_shape(&field, p) {
            Ok(shape) => ShapeEntry {
                p,
                shape: Some(shape),
                error: None,
            },
            Err(e) => ShapeEntry {
                p,
                shape: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let mut warnings = maximality_warnings(&field);
    timer.lap("splitting");

    let mut verdicts = Vec::with_capacity(TheoremId::ALL.len());
    for theorem in TheoremId::ALL {
        let p = if theorem.takes_prime() { opts.criterion_prime } else { None };
        verdicts.push(check(&field, theorem, p).map_err(|e| CliError::Input(format!("{theorem}: {e}")))?);
    }
    timer.lap("criteria");

    let mut violations = Vec::new();
    let unit_search = opts.unit_height.map(|h| {
        let set = enumerate_unit_solutions(&field, &SearchConfig::units(h));
        for theorem in [TheoremId::Unitcrit, TheoremId::Triantafillou] {
            let v = verdicts.iter().find(|v| v.theorem == theorem).unwrap();
            if v.holds == Holds::Yes {
                if let Some(s) = set.solutions.first() {
                    violations.push(format!(
                        "{theorem} certifies no unit solutions, but λ = [{}] is one",
                        s.lambda.coord_strings().join(", ")
                    ));
                }
            }
        }
        UnitSearchReport {
            height: h,
            count: set.len(),
            solutions: set.solutions.iter().map(SolutionRecord::from).collect(),
            orbits: set.orbits,
        }
    });
    timer.lap("unit_search");

    let sunit_search = match opts.sunits {
        None => None,
        Some(so) => match SUnitContext::new(&field) {
            Err(e) => {
                warnings.push(format!("S-unit search skipped: {e}"));
                None
            }
            Ok(ctx) => Some(sunit_report(&ctx, so, &verdicts, &mut violations, &mut warnings)?),
        },
    };
    timer.lap("sunit_search");

    let coeffs = record.coeffs.clone();
    Ok(Report {
        label: record.label.clone(),
        polynomial: format_polynomial(&coeffs),
        coeffs,
        degree: field.degree(),
        discriminant: field.disc().to_string(),
        signature: field.signature(),
        irreducibility: field.irreducibility().clone(),
        shapes,
        verdicts,
        unit_search,
        sunit_search,
        warnings,
        violations,
        timings_us: timer.finish(),
    })
}

fn simplify_check(solutions: &[SUnitSolution]) -> SimplifyCheck {
    let failures: Vec<usize> = solutions
        .iter()
        .enumerate()
        .filter(|(_, s)| match simplify_solution(s) {
            Ok(t) => {
                t.m != s.m
                    || !t.lambda.is_algebraic_integer()
                    || t.v_lambda < 0
                    || (t.m > 0 && !t.mu.norm().abs().is_one())
            }
            Err(_) => true,
        })
        .map(|(i, _)| i)
        .collect();
    SimplifyCheck {
        checked: solutions.len(),
        pass: failures.is_empty(),
        failures,
    }
}

fn sunit_report(
    ctx: &SUnitContext,
    so: SUnitOptions,
    verdicts: &[Verdict],
    violations: &mut Vec<String>,
    warnings: &mut Vec<String>,
) -> Result<SUnitSearchReport, CliError> {
    let mut cfg = SearchConfig::sunits(ctx, so.height);
    if let Some(k) = so.denom_exp_max {
        cfg = cfg.with_denom_exp_max(k);
    }
    let set = enumerate_sunit_solutions(ctx, &cfg).map_err(|e| CliError::Input(e.to_string()))?;
    let sols = &set.solutions;
    let mut profiles: Vec<(i64, i64)> = sols.iter().map(SUnitSolution::profile).collect();
    profiles.sort_unstable();
    profiles.dedup();

    let (fs_conditions, fs_skipped) = match check_fs_conditions(ctx, sols) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let valbound = check_valbound_lemma(ctx, sols);
    let simplify = simplify_check(sols);
    if !simplify.pass {
        violations.push(format!(
            "simplification fails on solutions {:?} (m not preserved or λ' not integral)",
            simplify.failures
        ));
    }

    for v in verdicts.iter().filter(|v| v.holds == Holds::Yes) {
        let Some(cert) = &v.certificate else { continue };
        let mut found = Vec::new();
        for step in &cert.steps {
            match step {
                CertStep::ValuationBound { bound } => {
                    if let Some(s) = sols.iter().find(|s| s.m >= *bound) {
                        found.push(format!("m = {} ≥ {bound}", s.m));
                    }
                }
                CertStep::ValuationProfiles { profiles: allowed }
                | CertStep::FsConditions {
                    profiles: allowed, ..
                } => {
                    // An empty list places no restriction on profiles.
                    let outside = |s: &&SUnitSolution| !allowed.is_empty() && !allowed.contains(&s.profile());
                    if let Some(s) = sols.iter().find(outside) {
                        found.push(format!("profile {:?} outside {allowed:?}", s.profile()));
                    }
                }
                _ => {}
            }
            if let CertStep::FsConditions { max_m, .. } = step {
                if let Some(s) = sols.iter().find(|s| s.m > *max_m) {
                    found.push(format!("m = {} > {max_m}", s.m));
                }
            }
        }
        for f in found {
            let msg = format!("{} certificate contradicted by S-unit search: {f}", v.theorem);
            if v.conditional_on.is_empty() {
                violations.push(msg);
            } else {
                warnings.push(msg);
            }
        }
    }

    Ok(SUnitSearchReport {
        height: cfg.height,
        denom_exp_max: cfg.denom_exp_max,
        prime_above_2: ctx.kind,
        ord_q_of_2: ctx.ord_q_of_2,
        count: set.len(),
        solutions: sols.iter().map(SolutionRecord::from).collect(),
        orbits: set.orbits,
        profiles,
        fs_conditions,
        fs_skipped,
        valbound,
        simplify,
    })
}

/// Field-level helper shared with `scan`: every verdict with automatic prime selection.
pub fn verdict_map(field: &Arc<NumberField>) -> Result<BTreeMap<TheoremId, Holds>, CliError> {
    TheoremId::ALL
        .into_iter()
        .map(|t| {
            check(field, t, None)
                .map(|v| (t, v.holds))
                .map_err(|e| CliError::Input(format!("{t}: {e}")))
        })
        .collect()
}
