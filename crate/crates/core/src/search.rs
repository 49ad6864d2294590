//! Bounded brute-force enumeration of unit-equation and `{𝔮}`-unit-equation
//! solutions with `λ ∈ 2^{-k} Z[θ]`, grouped into orbits of the six maps
//! `λ ↦ λ, 1-λ, 1/λ, 1/(1-λ), λ/(λ-1), (λ-1)/λ`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactmath::{is_power_of_two, v2};
use crate::numberfield::{small_norm, FieldElement, NumberField};
use crate::sunit::{SUnitContext, SUnitError, SUnitSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub height: i64,
    pub denom_exp_max: u32,
    pub report_orbits: bool,
}

impl SearchConfig {
    pub fn units(height: i64) -> Self {
        Self {
            height: height.max(1),
            denom_exp_max: 0,
            report_orbits: true,
        }
    }

    /// Default exponent bound `4·ord_q(2) + 1`.
    pub fn sunits(ctx: &SUnitContext, height: i64) -> Self {
        Self {
            height: height.max(1),
            denom_exp_max: 4 * ctx.ord_q_of_2 as u32 + 1,
            report_orbits: true,
        }
    }

    pub fn with_denom_exp_max(mut self, k: u32) -> Self {
        self.denom_exp_max = k;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Indices into `SolutionSet::solutions`.
    pub members: Vec<usize>,
    /// Number of distinct images of `λ` under the six maps.
    pub size: usize,
    /// Every image is among the found solutions.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    pub solutions: Vec<SUnitSolution>,
    pub orbits: Vec<Orbit>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn contains(&self, lambda: &FieldElement) -> bool {
        self.solutions.iter().any(|s| &s.lambda == lambda)
    }
}

fn decode(mut idx: u64, n: usize, h: i64) -> Vec<i64> {
    let side = (2 * h + 1) as u64;
    let mut c = vec![0i64; n];
    for x in c.iter_mut() {
        *x = (idx % side) as i64 - h;
        idx /= side;
    }
    c
}

fn box_size(n: usize, h: i64) -> u64 {
    ((2 * h + 1) as u64).checked_pow(n as u32).expect("search box too large")
}

fn is_pm1(x: &BigInt) -> bool {
    x.abs().is_one()
}

fn is_pm_power_of_two(x: &BigInt) -> bool {
    !x.is_zero() && is_power_of_two(x)
}

fn one_minus(c: &[i64], scale: i64) -> Vec<i64> {
    let mut d: Vec<i64> = c.iter().map(|x| -x).collect();
    d[0] += scale;
    d
}

/// All `λ` with `|c_i| ≤ H`, `|N(λ)| = 1`, `|N(1 - λ)| = 1`.
pub fn enumerate_unit_solutions(field: &Arc<NumberField>, cfg: &SearchConfig) -> SolutionSet {
    let n = field.degree();
    let h = cfg.height;
    let mut hits: Vec<Vec<i64>> = (0..box_size(n, h))
        .into_par_iter()
        .filter_map(|idx| {
            let c = decode(idx, n, h);
            (is_pm1(&small_norm(field, &c)) && is_pm1(&small_norm(field, &one_minus(&c, 1)))).then_some(c)
        })
        .collect();
    hits.sort();
    let mut solutions: Vec<SUnitSolution> = hits
        .iter()
        .map(|c| {
            let lambda = FieldElement::from_i64(field, c).expect("coordinate count");
            let mu = &FieldElement::one(field) - &lambda;
            SUnitSolution::from_parts(lambda, mu, 0, 0)
        })
        .collect();
    sort_solutions(&mut solutions);
    finish(solutions, cfg)
}

/// All `λ = 2^{-k} α` with `α ∈ Z[θ]`, `|α_i| ≤ H`, `0 ≤ k ≤ denom_exp_max`,
/// and `λ`, `1 - λ` both `{𝔮}`-units. Each `λ` is found once, at its minimal `k`.
pub fn enumerate_sunit_solutions(
    ctx: &SUnitContext,
    cfg: &SearchConfig,
) -> Result<SolutionSet, SUnitError> {
    let field = &ctx.field;
    let n = field.degree();
    let h = cfg.height;
    let mut hits: Vec<(u32, Vec<i64>)> = Vec::new();
    for k in 0..=cfg.denom_exp_max {
        let Some(scale) = 1i64.checked_shl(k).filter(|s| *s > 0) else {
            break;
        };
        let mut level: Vec<(u32, Vec<i64>)> = (0..box_size(n, h))
            .into_par_iter()
            .filter_map(|idx| {
                let c = decode(idx, n, h);
                if k > 0 && c.iter().all(|x| x % 2 == 0) {
                    return None;
                }
                (is_pm_power_of_two(&small_norm(field, &c))
                    && is_pm_power_of_two(&small_norm(field, &one_minus(&c, scale))))
                .then_some((k, c))
            })
            .collect();
        hits.append(&mut level);
    }
    let mut solutions = Vec::with_capacity(hits.len());
    for (k, c) in hits {
        let denom = BigInt::one() << k;
        let coords = c
            .iter()
            .map(|&x| BigRational::new(BigInt::from(x), denom.clone()))
            .collect();
        let lambda = FieldElement::new(field, coords)?;
        solutions.push(ctx.solution(lambda)?);
    }
    sort_solutions(&mut solutions);
    Ok(finish(solutions, cfg))
}

fn sort_solutions(solutions: &mut [SUnitSolution]) {
    solutions.sort_by(|a, b| a.lambda.coords().cmp(b.lambda.coords()));
}

fn finish(solutions: Vec<SUnitSolution>, cfg: &SearchConfig) -> SolutionSet {
    let orbits = if cfg.report_orbits {
        orbit_partition(&solutions)
    } else {
        Vec::new()
    };
    SolutionSet { solutions, orbits }
}

/// The six images `(λ', μ')` of a solution, in a fixed order.
pub fn symmetry_images(lambda: &FieldElement, mu: &FieldElement) -> [(FieldElement, FieldElement); 6] {
    let inv_l = lambda.inverse().expect("λ ≠ 0");
    let inv_m = mu.inverse().expect("μ ≠ 0");
    let neg_mu_over_l = -&(mu * &inv_l);
    let neg_l_over_mu = -&(lambda * &inv_m);
    [
        (lambda.clone(), mu.clone()),
        (mu.clone(), lambda.clone()),
        (inv_l.clone(), neg_mu_over_l.clone()),
        (neg_mu_over_l, inv_l),
        (inv_m.clone(), neg_l_over_mu.clone()),
        (neg_l_over_mu, inv_m),
    ]
}

fn image_keys(s: &SUnitSolution) -> BTreeSet<Vec<BigRational>> {
    symmetry_images(&s.lambda, &s.mu)
        .iter()
        .map(|(l, _)| l.coords().to_vec())
        .collect()
}

pub fn orbit_partition(solutions: &[SUnitSolution]) -> Vec<Orbit> {
    let index: BTreeMap<Vec<BigRational>, usize> = solutions
        .iter()
        .enumerate()
        .map(|(i, s)| (s.lambda.coords().to_vec(), i))
        .collect();
    let mut assigned = vec![false; solutions.len()];
    let mut orbits = Vec::new();
    for (i, s) in solutions.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let keys = image_keys(s);
        let mut members: Vec<usize> = keys.iter().filter_map(|k| index.get(k).copied()).collect();
        members.sort_unstable();
        for &j in &members {
            assigned[j] = true;
        }
        orbits.push(Orbit {
            complete: members.len() == keys.len(),
            size: keys.len(),
            members,
        });
    }
    orbits
}

/// Whether `λ` lies in the search box: `2^k λ` has integer coordinates of
/// height at most `H` for some `k ≤ denom_exp_max`.
pub fn within_bounds(lambda: &FieldElement, cfg: &SearchConfig) -> bool {
    let d = lambda.denominator();
    if !is_power_of_two(&d) {
        return false;
    }
    let k = v2(&d);
    if k > cfg.denom_exp_max as u64 {
        return false;
    }
    let scale = BigRational::from_integer(d);
    lambda.coords().iter().all(|c| {
        (c * &scale)
            .to_integer()
            .abs()
            .to_i64()
            .is_some_and(|x| x <= cfg.height)
    })
}

/// Images of found solutions that fall inside the search box but were not found.
pub fn missing_symmetry_images(set: &SolutionSet, cfg: &SearchConfig) -> Vec<FieldElement> {
    let mut missing = Vec::new();
    for s in &set.solutions {
        for (l, _) in symmetry_images(&s.lambda, &s.mu) {
            if within_bounds(&l, cfg) && !set.contains(&l) && !missing.contains(&l) {
                missing.push(l);
            }
        }
    }
    missing
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_have_no_unit_solutions() {
        let q = NumberField::rationals();
        assert!(enumerate_unit_solutions(&q, &SearchConfig::units(50)).is_empty());
    }

    #[test]
    fn rationals_sunit_fixture() {
        let q = NumberField::rationals();
        let ctx = SUnitContext::new(&q).unwrap();
        let cfg = SearchConfig::units(4).with_denom_exp_max(2);
        let set = enumerate_sunit_solutions(&ctx, &cfg).unwrap();
        let lambdas: Vec<String> = set.solutions.iter().map(|s| s.lambda.coord_strings()[0].clone()).collect();
        assert_eq!(lambdas, vec!["-1", "1/2", "2"]);
        assert!(set.solutions.iter().all(|s| s.m == 1));
        assert_eq!(set.orbits.len(), 1);
        assert_eq!((set.orbits[0].size, set.orbits[0].complete), (3, true));
        assert!(missing_symmetry_images(&set, &cfg).is_empty());
    }

    #[test]
    fn eisenstein_cyclotomic_unit_solution() {
        let k = NumberField::from_coeffs(&[1, 1, 1]).unwrap();
        let set = enumerate_unit_solutions(&k, &SearchConfig::units(2));
        let l = FieldElement::from_i64(&k, &[1, 1]).unwrap();
        assert!(set.contains(&l));
        assert!(set.orbits.iter().all(|o| 6 % o.size == 0));
    }

    #[test]
    fn decode_covers_box() {
        let all: BTreeSet<Vec<i64>> = (0..box_size(2, 1)).map(|i| decode(i, 2, 1)).collect();
        assert_eq!(all.len(), 9);
        assert!(all.contains(&vec![-1, 1]));
    }

    #[test]
    fn bounds() {
        let q = NumberField::rationals();
        let cfg = SearchConfig::units(4).with_denom_exp_max(1);
        let half = FieldElement::constant(&q, BigRational::new(3.into(), 2.into()));
        assert!(within_bounds(&half, &cfg));
        let quarter = FieldElement::constant(&q, BigRational::new(1.into(), 4.into()));
        assert!(!within_bounds(&quarter, &cfg));
        assert!(!within_bounds(&FieldElement::integer(&q, 5), &cfg));
    }
}
