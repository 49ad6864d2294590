//! Factorization over prime fields: squarefree decomposition, distinct-degree
//! splitting and Cantor–Zassenhaus equal-degree splitting.

use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{is_prime, ExactMathError, IntPoly, ResiduePoly};

/// Seed used when `UNITGATE_SEED` is unset.
pub const DEFAULT_SEED: u64 = 0x5eed_2021_f1a7;

/// Seed for the randomized equal-degree splitting, read once from
/// `UNITGATE_SEED`. The factorization itself does not depend on it.
pub fn default_seed() -> u64 {
    static SEED: OnceLock<u64> = OnceLock::new();
    *SEED.get_or_init(|| {
        std::env::var("UNITGATE_SEED")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_SEED)
    })
}

/// `unit * prod g_i^{e_i}` with monic, irreducible, pairwise distinct `g_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationModP {
    pub modulus: u64,
    pub unit: u64,
    pub factors: Vec<(ResiduePoly, u32)>,
}

impl FactorizationModP {
    pub fn expand(&self) -> ResiduePoly {
        self.factors.iter().fold(
            ResiduePoly::new(self.modulus, vec![self.unit]),
            |acc, (g, e)| (0..*e).fold(acc, |a, _| a.mul(g)),
        )
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Degrees of the irreducible factors, repeated by multiplicity.
    pub fn degree_pattern(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (g, e) in &self.factors {
            for _ in 0..*e {
                out.push(g.degree().unwrap_or(0));
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<FactorizationModP, ExactMathError> {
    factor_mod_p_seeded(f, p, default_seed())
}

pub fn factor_mod_p_seeded(
    f: &IntPoly,
    p: u64,
    seed: u64,
) -> Result<FactorizationModP, ExactMathError> {
    if !is_prime(p) {
        return Err(ExactMathError::NotPrime(p));
    }
    let r = f.reduce_mod(p);
    if r.is_zero() {
        return Err(ExactMathError::ZeroModP(p));
    }
    Ok(factor_residue_poly(&r, seed))
}

pub fn factor_residue_poly(f: &ResiduePoly, seed: u64) -> FactorizationModP {
    let p = f.modulus();
    let unit = f.leading().expect("nonzero");
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
            .then(ea.cmp(eb))
    });
    FactorizationModP { modulus: p, unit, factors }
}

/// Monic squarefree parts with multiplicities; input must be monic.
pub fn squarefree_decomposition(f: &ResiduePoly) -> Vec<(ResiduePoly, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).expect("nonzero").0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).expect("nonzero").0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).expect("nonzero").0;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = c.pth_root().expect("derivative-free remainder is a p-th power");
        for (g, e) in squarefree_decomposition(&root.monic()) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal degree.
pub fn distinct_degree(f: &ResiduePoly) -> Vec<(ResiduePoly, usize)> {
    let p = f.modulus();
    let x = ResiduePoly::x(p);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_rem(&g).expect("nonzero").0;
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest.monic(), d));
    }
    out
}

/// Cantor–Zassenhaus; trace-map variant in characteristic two.
pub fn equal_degree(f: &ResiduePoly, d: usize, rng: &mut impl Rng) -> Vec<ResiduePoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let p = f.modulus();
    let half_exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = ResiduePoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            let mut term = a.rem(f);
            let mut acc = term.clone();
            for _ in 1..d {
                term = term.mul(&term).rem(f);
                acc = acc.add(&term);
            }
            acc
        } else {
            a.pow_mod_big(&half_exp, f).sub(&ResiduePoly::one(p))
        };
        let g = b.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_rem(&g).expect("nonzero").0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h.monic(), d, rng));
            return out;
        }
    }
}
