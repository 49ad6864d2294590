use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use unitgate_core::criteria::{check, Holds, TheoremId};
use unitgate_core::exactmath::{is_prime, IntPoly};
use unitgate_core::numberfield::NumberField;
use unitgate_core::search::{enumerate_unit_solutions, SearchConfig};
use unitgate_core::splitting::splitting_shape;

use crate::analyze::verdict_map;
use crate::record::FieldRecord;
use crate::CliError;

pub const MAX_DEGREE: usize = 7;
pub const MAX_BOUND: i64 = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Any,
    TotallyReal,
    Eisenstein(u64),
    TotallyRamified(u64),
    Inert(u64),
    TotallySplit(u64),
    Holds(TheoremId, Option<u64>),
}

/// A conjunction of atoms, written comma-separated: `totally_real,eisenstein:5`, `pram(p=5)`, `t23ram`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate(pub Vec<Atom>);

fn parse_prime_arg(s: &str) -> Result<u64, String> {
    let s = s.strip_prefix("p=").unwrap_or(s);
    match s.parse::<u64>() {
        Ok(p) if is_prime(p) => Ok(p),
        _ => Err(format!("{s:?} is not a prime")),
    }
}

impl FromStr for Atom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, arg) = if let Some((n, rest)) = s.split_once('(') {
            let a = rest.strip_suffix(')').ok_or_else(|| format!("unbalanced parenthesis in {s:?}"))?;
            (n, Some(parse_prime_arg(a)?))
        } else if let Some((n, a)) = s.split_once(':') {
            (n, Some(parse_prime_arg(a)?))
        } else {
            (s, None)
        };
        let need = |a: Option<u64>| a.ok_or_else(|| format!("{name} needs a prime, as in {name}:5"));
        Ok(match name {
            "any" => Atom::Any,
            "totally_real" => Atom::TotallyReal,
            "eisenstein" => Atom::Eisenstein(need(arg)?),
            "ramified" | "totally_ramified" => Atom::TotallyRamified(need(arg)?),
            "inert" => Atom::Inert(need(arg)?),
            "split" | "totally_split" => Atom::TotallySplit(need(arg)?),
            _ => {
                let t: TheoremId = name.parse()?;
                if arg.is_some() && !t.takes_prime() {
                    return Err(format!("{t} does not take a prime"));
                }
                if let Some(p) = arg.filter(|&p| p < 5) {
                    return Err(format!("{t} needs p ≥ 5, got {p}"));
                }
                Atom::Holds(t, arg)
            }
        })
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut atoms = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    atoms.push(s[start..i].trim().parse()?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        atoms.push(s[start..].trim().parse()?);
        Ok(Predicate(atoms))
    }
}

impl Predicate {
    /// Tests that need only the coefficients; run before the field is built.
    pub fn prefilter(&self, coeffs: &[i64]) -> bool {
        self.0.iter().all(|a| match *a {
            Atom::Eisenstein(p) => IntPoly::from_i64(coeffs).is_eisenstein_at(p),
            _ => true,
        })
    }

    pub fn matches(&self, field: &Arc<NumberField>) -> bool {
        self.0.iter().all(|a| match *a {
            Atom::Any => true,
            Atom::TotallyReal => field.is_totally_real(),
            Atom::Eisenstein(p) => field.minpoly().is_eisenstein_at(p),
            Atom::TotallyRamified(p) => splitting_shape(field, p).is_ok_and(|s| s.is_totally_ramified()),
            Atom::Inert(p) => splitting_shape(field, p).is_ok_and(|s| s.is_inert()),
            Atom::TotallySplit(p) => splitting_shape(field, p).is_ok_and(|s| s.is_totally_split()),
            Atom::Holds(t, p) => check(field, t, p).is_ok_and(|v| v.holds == Holds::Yes),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub degree: usize,
    pub bound: i64,
    pub predicate: Predicate,
    pub limit: Option<usize>,
    /// Run the unit-equation search at this height on fields certified by
    /// `unitcrit` or `triantafillou`, and report any solution found.
    pub oracle_height: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanOutcome {
    pub records: Vec<FieldRecord>,
    pub violations: Vec<String>,
}

fn decode(mut idx: u64, n: usize, bound: i64) -> Vec<i64> {
    let side = (2 * bound + 1) as u64;
    let mut c = Vec::with_capacity(n + 1);
    for _ in 0..n {
        c.push((idx % side) as i64 - bound);
        idx /= side;
    }
    c.push(1);
    c
}

struct Hit {
    record: FieldRecord,
    violation: Option<String>,
}

fn examine(coeffs: Vec<i64>, opts: &ScanOptions) -> Result<Option<Hit>, CliError> {
    if !opts.predicate.prefilter(&coeffs) {
        return Ok(None);
    }
    let Ok(field) = NumberField::from_coeffs(&coeffs) else {
        return Ok(None);
    };
    if !opts.predicate.matches(&field) {
        return Ok(None);
    }
    let verdicts = verdict_map(&field)?;
    let mut record = FieldRecord::new(coeffs);
    let violation = opts.oracle_height.and_then(|h| {
        let certified = [TheoremId::Unitcrit, TheoremId::Triantafillou]
            .into_iter()
            .filter(|t| verdicts[t] == Holds::Yes)
            .collect::<Vec<_>>();
        if certified.is_empty() {
            return None;
        }
        let set = enumerate_unit_solutions(&field, &SearchConfig::units(h));
        set.solutions.first().map(|s| {
            format!(
                "{}: {:?} certified, but λ = [{}] solves the unit equation",
                record.label,
                certified.iter().map(|t| t.name()).collect::<Vec<_>>(),
                s.lambda.coord_strings().join(", ")
            )
        })
    });
    record.verdicts = Some(verdicts);
    Ok(Some(Hit { record, violation }))
}

/// Every monic irreducible polynomial of the given degree with coefficients
/// in `[-bound, bound]` whose field satisfies the predicate. Degree one yields `x` only.
pub fn scan(opts: &ScanOptions) -> Result<ScanOutcome, CliError> {
    if opts.degree == 0 || opts.degree > MAX_DEGREE {
        return Err(CliError::Input(format!("degree must be between 1 and {MAX_DEGREE}")));
    }
    if !(0..=MAX_BOUND).contains(&opts.bound) {
        return Err(CliError::Input(format!("coefficient bound must be between 0 and {MAX_BOUND}")));
    }
    let mut out = ScanOutcome::default();
    if opts.degree == 1 {
        if let Some(hit) = examine(vec![0, 1], opts)? {
            out.records.push(hit.record);
        }
        return Ok(out);
    }
    let total = ((2 * opts.bound + 1) as u64).pow(opts.degree as u32);
    const CHUNK: u64 = 1 << 14;
    let mut start = 0;
    while start < total {
        let end = (start + CHUNK).min(total);
        let hits: Vec<Hit> = (start..end)
            .into_par_iter()
            .map(|i| examine(decode(i, opts.degree, opts.bound), opts))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        for hit in hits {
            if opts.limit.is_some_and(|l| out.records.len() >= l) {
                return Ok(out);
            }
            out.violations.extend(hit.violation);
            out.records.push(hit.record);
        }
        start = end;
    }
    Ok(out)
}

/// Verdict annotations for an existing record; used to compare batch output with scan output.
pub fn annotate(record: &FieldRecord) -> Result<BTreeMap<TheoremId, Holds>, CliError> {
    verdict_map(&record.load()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(degree: usize, bound: i64, predicate: &str) -> ScanOptions {
        ScanOptions {
            degree,
            bound,
            predicate: predicate.parse().unwrap(),
            limit: None,
            oracle_height: None,
        }
    }

    #[test]
    fn predicate_syntax() {
        let p: Predicate = "totally_real, eisenstein:5,pram(p=7),t23ram".parse().unwrap();
        assert_eq!(
            p.0,
            vec![
                Atom::TotallyReal,
                Atom::Eisenstein(5),
                Atom::Holds(TheoremId::Pram, Some(7)),
                Atom::Holds(TheoremId::T23ram, None),
            ]
        );
        for bad in ["pram:3", "t23:5", "eisenstein", "nonsense", "inert:4", "pram(p=5"] {
            assert!(bad.parse::<Predicate>().is_err(), "{bad}");
        }
    }

    #[test]
    fn guard_rails() {
        assert!(scan(&opts(8, 2, "any")).is_err());
        assert!(scan(&opts(0, 2, "any")).is_err());
        assert!(scan(&opts(2, 51, "any")).is_err());
    }

    #[test]
    fn degree_one_is_the_rationals() {
        let out = scan(&opts(1, 10, "any")).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].coeffs, vec![0, 1]);
    }

    #[test]
    fn quadratic_scan_is_ordered_and_irreducible() {
        let out = scan(&opts(2, 3, "any")).unwrap();
        assert!(!out.records.is_empty());
        for r in &out.records {
            assert!(r.load().is_ok());
        }
        // x^2 - 1, x^2 - 4, x^2 + x, ... are reducible.
        assert!(out.records.iter().all(|r| r.coeffs != vec![-1, 0, 1]));
        let again = scan(&opts(2, 3, "any")).unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn limit_truncates() {
        let mut o = opts(2, 5, "any");
        o.limit = Some(3);
        assert_eq!(scan(&o).unwrap().records.len(), 3);
    }
}
