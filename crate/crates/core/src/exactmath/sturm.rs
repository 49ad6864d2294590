//! Real-root counting with Sturm sequences over the rationals.

use num_bigint::Sign;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{ExactMathError, IntPoly, RatPoly};

/// Squarefree part `f / gcd(f, f')`, primitive with positive leading coefficient.
pub fn squarefree_part(f: &IntPoly) -> Result<IntPoly, ExactMathError> {
    if f.is_zero() {
        return Err(ExactMathError::ZeroPolynomial);
    }
    let rf = RatPoly::from(f);
    let g = rf.gcd(&rf.derivative());
    let (q, r) = rf.div_rem(&g)?;
    if !r.is_zero() {
        return Err(ExactMathError::InexactDivision);
    }
    Ok(q.to_primitive())
}

pub fn sturm_sequence(f: &IntPoly) -> Vec<RatPoly> {
    let mut seq = vec![RatPoly::from(f)];
    let d = seq[0].derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero");
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes(signs: impl Iterator<Item = Sign>) -> usize {
    let mut last = None;
    let mut changes = 0;
    for s in signs.filter(|s| *s != Sign::NoSign) {
        if last.is_some_and(|l| l != s) {
            changes += 1;
        }
        last = Some(s);
    }
    changes
}

fn rat_sign(x: &BigRational) -> Sign {
    if x.is_zero() {
        Sign::NoSign
    } else if x.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn sign_at_infinity(p: &RatPoly, positive: bool) -> Sign {
    let Some(d) = p.degree() else {
        return Sign::NoSign;
    };
    let s = rat_sign(p.leading().expect("nonzero"));
    if positive || d % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Number of distinct real roots of `f`.
pub fn count_real_roots(f: &IntPoly) -> Result<usize, ExactMathError> {
    let sf = squarefree_part(f)?;
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let seq = sturm_sequence(&sf);
    let at_neg = sign_changes(seq.iter().map(|p| sign_at_infinity(p, false)));
    let at_pos = sign_changes(seq.iter().map(|p| sign_at_infinity(p, true)));
    Ok(at_neg - at_pos)
}

/// Distinct real roots in the half-open interval `(a, b]`; `f` must not vanish at `a`.
pub fn count_roots_in(f: &IntPoly, a: &BigRational, b: &BigRational) -> Result<usize, ExactMathError> {
    let sf = squarefree_part(f)?;
    let seq = sturm_sequence(&sf);
    let va = sign_changes(seq.iter().map(|p| rat_sign(&p.eval(a))));
    let vb = sign_changes(seq.iter().map(|p| rat_sign(&p.eval(b))));
    Ok(va.saturating_sub(vb))
}
