//! Parsing defining polynomials from the command line.

use crate::CliError;

/// Parses `x^3 - 6x^2 + 9*x - 3` (any single-letter variable) into
/// little-endian coefficients.
pub fn parse_polynomial(s: &str) -> Result<Vec<i64>, CliError> {
    let bad = |why: &str| CliError::Input(format!("cannot parse polynomial {s:?}: {why}"));
    let compact: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    if compact.is_empty() {
        return Err(bad("empty"));
    }
    let mut var: Option<char> = None;
    let mut coeffs: Vec<i64> = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (negative, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if coeffs.is_empty() && var.is_none() => (false, rest),
            _ => return Err(bad("expected + or -")),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        rest = tail;
        let (c, k) = parse_term(term, &mut var).map_err(|e| bad(&e))?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        let c = if negative { -c } else { c };
        coeffs[k] = coeffs[k].checked_add(c).ok_or_else(|| bad("coefficient overflow"))?;
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

fn parse_term(term: &str, var: &mut Option<char>) -> Result<(i64, usize), String> {
    if term.is_empty() {
        return Err("empty term".into());
    }
    let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
    let coeff = if digits == 0 {
        1
    } else {
        term[..digits].parse::<i64>().map_err(|e| e.to_string())?
    };
    let mut rest = &term[digits..];
    if rest.is_empty() {
        return Ok((coeff, 0));
    }
    if digits > 0 {
        rest = rest.strip_prefix('*').unwrap_or(rest);
    }
    let mut chars = rest.chars();
    let v = chars.next().ok_or("dangling *")?;
    if !v.is_ascii_alphabetic() {
        return Err(format!("unexpected {v:?}"));
    }
    match var {
        Some(w) if *w != v => return Err(format!("mixed variables {w} and {v}")),
        _ => *var = Some(v),
    }
    let rest = chars.as_str();
    let k = if rest.is_empty() {
        1
    } else {
        let e = rest
            .strip_prefix('^')
            .or_else(|| rest.strip_prefix("**"))
            .ok_or_else(|| format!("unexpected {rest:?}"))?;
        e.parse::<usize>().map_err(|e| e.to_string())?
    };
    if k > 64 {
        return Err(format!("degree {k} too large"));
    }
    Ok((coeff, k))
}

/// Parses a comma-separated coefficient list.
pub fn parse_coeff_list(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .replace('−', "-")
                .parse::<i64>()
                .map_err(|e| CliError::Input(format!("bad coefficient {t:?}: {e}")))
        })
        .collect()
}

/// `x^3 - 6*x^2 + 9*x - 3` from little-endian coefficients.
pub fn format_polynomial(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.unsigned_abs();
        match (k, a) {
            (0, _) => out.push_str(&a.to_string()),
            (_, 1) => {}
            _ => out.push_str(&format!("{a}*")),
        }
        match k {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
