//! Irreducibility certificates over the rationals for monic integer polynomials.
//!
//! The certificates tried, in order: degree one, an integer root (reducible),
//! repeated factors (reducible), Eisenstein at a prime, irreducibility modulo a
//! probe prime, Eisenstein after a small shift, incompatible degree patterns
//! across probe primes, and finally Kronecker's interpolation search bounded by
//! the Mignotte coefficient bound.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{divisors, factor_mod_p, primes_up_to, IntPoly, RatPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IrreducibilityCertificate {
    Linear,
    Eisenstein { prime: u64, shift: i64 },
    IrreducibleModP { prime: u64 },
    DegreePatterns { primes: Vec<u64> },
    ExhaustiveFactorSearch { max_degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Irreducibility {
    CertifiedIrreducible { certificate: IrreducibilityCertificate },
    CertifiedReducible { witness: IntPoly },
    Unknown { reason: String },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Self::CertifiedIrreducible { .. })
    }
}

#[derive(Clone, Debug)]
pub struct IrreducibilityConfig {
    /// Probe primes are all primes up to this bound that do not divide the discriminant.
    pub probe_prime_bound: u64,
    /// Eisenstein is tried on `f(X + c)` for `|c|` up to this.
    pub eisenstein_shift: i64,
    /// Maximum number of interpolation candidates per factor degree.
    pub candidate_budget: u64,
}

impl Default for IrreducibilityConfig {
    fn default() -> Self {
        Self {
            probe_prime_bound: 100,
            eisenstein_shift: 3,
            candidate_budget: 2_000_000,
        }
    }
}

pub fn is_irreducible_over_q(f: &IntPoly) -> Irreducibility {
    is_irreducible_over_q_with(f, &IrreducibilityConfig::default())
}

pub fn is_irreducible_over_q_with(f: &IntPoly, cfg: &IrreducibilityConfig) -> Irreducibility {
    let Some(n) = f.degree().filter(|&n| n >= 1) else {
        return Irreducibility::Unknown {
            reason: "constant polynomial".into(),
        };
    };
    if !f.is_monic() {
        return Irreducibility::Unknown {
            reason: "polynomial is not monic".into(),
        };
    }
    if n == 1 {
        return certified(IrreducibilityCertificate::Linear);
    }
    if let Some(root) = integer_root(f) {
        return Irreducibility::CertifiedReducible {
            witness: IntPoly::new(vec![-root, BigInt::one()]),
        };
    }
    let disc = f.discriminant();
    if disc.is_zero() {
        let rf = RatPoly::from(f);
        let g = rf.gcd(&rf.derivative()).to_primitive();
        return Irreducibility::CertifiedReducible { witness: g };
    }
    for p in primes_up_to(cfg.probe_prime_bound) {
        if f.is_eisenstein_at(p) {
            return certified(IrreducibilityCertificate::Eisenstein { prime: p, shift: 0 });
        }
    }

    let probes: Vec<u64> = primes_up_to(cfg.probe_prime_bound)
        .into_iter()
        .filter(|&p| !disc.is_multiple_of(&BigInt::from(p)))
        .collect();
    let mut possible: BTreeSet<usize> = (1..=n / 2).collect();
    let mut used = Vec::new();
    for &p in &probes {
        let fac = factor_mod_p(f, p).expect("monic is nonzero mod p");
        if fac.is_irreducible() {
            return certified(IrreducibilityCertificate::IrreducibleModP { prime: p });
        }
        let sums = subset_sums(&fac.degree_pattern());
        let before = possible.len();
        possible.retain(|d| sums.contains(d));
        if possible.len() < before {
            used.push(p);
        }
        if possible.is_empty() {
            break;
        }
    }

    for c in 1..=cfg.eisenstein_shift {
        for shift in [c, -c] {
            let g = f.shift(&BigInt::from(shift));
            for p in primes_up_to(cfg.probe_prime_bound) {
                if g.is_eisenstein_at(p) {
                    return certified(IrreducibilityCertificate::Eisenstein { prime: p, shift });
                }
            }
        }
    }

    if possible.is_empty() {
        return certified(IrreducibilityCertificate::DegreePatterns { primes: used });
    }

    for &d in &possible {
        match kronecker_factor(f, d, cfg.candidate_budget) {
            KroneckerOutcome::Found(g) => return Irreducibility::CertifiedReducible { witness: g },
            KroneckerOutcome::NoneOfDegree => {}
            KroneckerOutcome::GaveUp(reason) => return Irreducibility::Unknown { reason },
        }
    }
    certified(IrreducibilityCertificate::ExhaustiveFactorSearch { max_degree: n / 2 })
}

fn certified(certificate: IrreducibilityCertificate) -> Irreducibility {
    Irreducibility::CertifiedIrreducible { certificate }
}

fn subset_sums(parts: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for &d in parts {
        let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(shifted);
    }
    sums
}

/// Smallest-magnitude integer root, positive first on ties.
fn integer_root(f: &IntPoly) -> Option<BigInt> {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let divs = divisors(&c0.abs())?;
    for d in divs {
        for cand in [d.clone(), -d] {
            if f.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

enum KroneckerOutcome {
    Found(IntPoly),
    NoneOfDegree,
    GaveUp(String),
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Searches for a monic integer factor of degree `d` through its values at
/// `d` sample points, each of which must divide the value of `f` there.
fn kronecker_factor(f: &IntPoly, d: usize, budget: u64) -> KroneckerOutcome {
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    // Sample points with small |f(x)| keep the divisor lists short.
    let mut pts: Vec<(BigInt, BigInt, Vec<BigInt>)> = Vec::new();
    for x in -12i64..=12 {
        let x = BigInt::from(x);
        let v = f.eval(&x);
        if v.is_zero() {
            continue;
        }
        if let Some(divs) = divisors(&v.abs()) {
            pts.push((x, v, divs));
        }
    }
    if pts.len() < d + 1 {
        return KroneckerOutcome::GaveUp("not enough sample points with factorable values".into());
    }
    pts.sort_by_key(|(_, _, divs)| divs.len());
    let chosen = &pts[..d];
    let (check_x, check_v, _) = &pts[d];

    let total: u64 = chosen
        .iter()
        .map(|(_, _, divs)| 2 * divs.len() as u64)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .unwrap_or(u64::MAX);
    if total > budget {
        return KroneckerOutcome::GaveUp(format!(
            "degree-{d} factor search needs {total} candidates, budget {budget}"
        ));
    }

    let xs: Vec<BigRational> = chosen
        .iter()
        .map(|(x, _, _)| BigRational::from_integer(x.clone()))
        .collect();
    // prod (X - x_j)
    let base = xs.iter().fold(RatPoly::one(), |acc, x| {
        &acc * &RatPoly::new(vec![-x.clone(), BigRational::one()])
    });
    let base_at: Vec<BigRational> = xs.iter().map(|x| base.eval(x)).collect();
    debug_assert!(base_at.iter().all(Zero::is_zero));
    // Lagrange basis polynomials.
    let lagrange: Vec<RatPoly> = (0..d)
        .map(|j| {
            let mut num = RatPoly::one();
            let mut den = BigRational::one();
            for (k, xk) in xs.iter().enumerate() {
                if k != j {
                    num = &num * &RatPoly::new(vec![-xk.clone(), BigRational::one()]);
                    den *= &xs[j] - xk;
                }
            }
            num.scale(&den.recip())
        })
        .collect();

    let mut idx = vec![0usize; d];
    let choices: Vec<Vec<BigInt>> = chosen
        .iter()
        .map(|(_, _, divs)| divs.iter().flat_map(|v| [v.clone(), -v]).collect())
        .collect();
    loop {
        let mut g = base.clone();
        for (j, &i) in idx.iter().enumerate() {
            let v = BigRational::from_integer(choices[j][i].clone());
            g = &g + &lagrange[j].scale(&v);
        }
        if let Some(cand) = integral(&g) {
            let within_bound = cand.coeffs().iter().enumerate().all(|(i, c)| {
                let b = binomial(d, i);
                c * c <= &b * &b * &norm_sq
            });
            let gv = cand.eval(check_x);
            if within_bound && !gv.is_zero() && check_v.is_multiple_of(&gv) {
                if let Ok((_, r)) = f.div_rem(&cand) {
                    if r.is_zero() {
                        return KroneckerOutcome::Found(cand);
                    }
                }
            }
        }
        // Odometer increment.
        let mut pos = 0;
        loop {
            if pos == d {
                return KroneckerOutcome::NoneOfDegree;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn integral(g: &RatPoly) -> Option<IntPoly> {
    g.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(IntPoly::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn irr(c: &[i64]) -> Irreducibility {
        is_irreducible_over_q(&IntPoly::from_i64(c))
    }

    #[test]
    fn named_examples() {
        assert!(matches!(
            irr(&[1, 1, 1]),
            Irreducibility::CertifiedIrreducible {
                certificate: IrreducibilityCertificate::IrreducibleModP { prime: 2 }
            }
        ));
        assert_eq!(
            irr(&[-1, 0, 1]),
            Irreducibility::CertifiedReducible {
                witness: IntPoly::from_i64(&[-1, 1])
            }
        );
        assert_eq!(
            irr(&[-3, 9, -6, 1]),
            Irreducibility::CertifiedIrreducible {
                certificate: IrreducibilityCertificate::Eisenstein { prime: 3, shift: 0 }
            }
        );
    }

    #[test]
    fn swinnerton_dyer_needs_degree_patterns_or_search() {
        // x^4 - 10x^2 + 1 is reducible modulo every prime but irreducible over Q.
        let r = irr(&[1, 0, -10, 0, 1]);
        assert!(r.is_irreducible(), "{r:?}");
    }

    #[test]
    fn product_of_quadratics_is_found() {
        let f = &IntPoly::from_i64(&[2, 0, 1]) * &IntPoly::from_i64(&[3, 1, 1]);
        match is_irreducible_over_q(&f) {
            Irreducibility::CertifiedReducible { witness } => {
                let (_, r) = f.div_rem(&witness).unwrap();
                assert!(r.is_zero());
                assert_eq!(witness.degree(), Some(2));
            }
            other => panic!("expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn repeated_factor_is_reducible() {
        let f = &IntPoly::from_i64(&[1, 0, 1]) * &IntPoly::from_i64(&[1, 0, 1]);
        assert!(matches!(
            is_irreducible_over_q(&f),
            Irreducibility::CertifiedReducible { .. }
        ));
    }

    #[test]
    fn non_monic_is_unknown() {
        assert!(matches!(irr(&[1, 2]), Irreducibility::Unknown { .. }));
    }
}
