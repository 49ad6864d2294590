use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use unitgate_core::criteria::{Holds, TheoremId};

use crate::analyze::{analyze, AnalyzeOptions};
use crate::record::FieldRecord;
use crate::report::Report;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub yes: usize,
    pub no: usize,
    pub indeterminate: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub fields: usize,
    /// Lines that are not valid records.
    pub skipped: usize,
    /// Valid records whose polynomial is reducible, not monic, or not certified irreducible.
    pub rejected: usize,
    pub violations: usize,
    pub verdicts: BTreeMap<TheoremId, VerdictCounts>,
}

impl Summary {
    pub fn add(&mut self, report: &Report) {
        self.fields += 1;
        self.violations += report.violations.len();
        for v in &report.verdicts {
            let c = self.verdicts.entry(v.theorem).or_default();
            match v.holds {
                Holds::Yes => c.yes += 1,
                Holds::No => c.no += 1,
                Holds::Indeterminate => c.indeterminate += 1,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchOutcome {
    pub reports: Vec<Report>,
    /// `(line number, reason)` for every skipped or rejected line.
    pub problems: Vec<(usize, String)>,
    pub summary: Summary,
}

enum Line {
    Blank,
    Bad(String),
    Record(FieldRecord),
}

/// Analyzes newline-delimited JSON records in parallel; output keeps input order.
pub fn run_batch(input: &str, opts: &AnalyzeOptions, lmfdb_order: bool) -> BatchOutcome {
    let lines: Vec<(usize, Line)> = input
        .lines()
        .enumerate()
        .map(|(i, l)| {
            let l = l.trim();
            let parsed = if l.is_empty() {
                Line::Blank
            } else {
                match serde_json::from_str::<FieldRecord>(l) {
                    Ok(r) if lmfdb_order => Line::Record(r.from_big_endian()),
                    Ok(r) => Line::Record(r),
                    Err(e) => Line::Bad(e.to_string()),
                }
            };
            (i + 1, parsed)
        })
        .collect();

    // (line number, outcome, malformed)
    type Analyzed = (usize, Option<Result<Report, String>>, bool);
    let results: Vec<Analyzed> = lines
        .into_par_iter()
        .map(|(n, line)| match line {
            Line::Blank => (n, None, false),
            Line::Bad(e) => (n, Some(Err(format!("malformed record: {e}"))), true),
            Line::Record(r) => (n, Some(analyze(&r, opts).map_err(|e| e.to_string())), false),
        })
        .collect();

    let mut out = BatchOutcome {
        reports: Vec::new(),
        problems: Vec::new(),
        summary: Summary::default(),
    };
    for t in TheoremId::ALL {
        out.summary.verdicts.insert(t, VerdictCounts::default());
    }
    for (n, res, malformed) in results {
        match res {
            None => {}
            Some(Ok(report)) => {
                out.summary.add(&report);
                out.reports.push(report);
            }
            Some(Err(e)) => {
                if malformed {
                    out.summary.skipped += 1;
                } else {
                    out.summary.rejected += 1;
                }
                out.problems.push((n, e));
            }
        }
    }
    out
}
