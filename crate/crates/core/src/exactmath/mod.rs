//! Exact scalars and polynomials: integer and rational polynomials,
//! polynomials over prime fields with full factorization, irreducibility
//! certificates over the rationals, and Sturm real-root counting.

mod factor;
mod int_poly;
mod irreducible;
pub mod matrix;
mod rat_poly;
mod residue_poly;
mod sturm;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use factor::{
    default_seed, distinct_degree, equal_degree, factor_mod_p, factor_mod_p_seeded,
    factor_residue_poly, squarefree_decomposition, FactorizationModP, DEFAULT_SEED,
};
pub use int_poly::IntPoly;
pub(crate) use int_poly::write_poly as write_poly_var;
pub use irreducible::{
    is_irreducible_over_q, is_irreducible_over_q_with, Irreducibility,
    IrreducibilityCertificate, IrreducibilityConfig,
};
pub use rat_poly::RatPoly;
pub use residue_poly::ResiduePoly;
pub use sturm::{count_real_roots, count_roots_in, squarefree_part, sturm_sequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactMathError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact over the integers")]
    InexactDivision,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial vanishes modulo {0}")]
    ZeroModP(u64),
    #[error("zero polynomial has no roots to count")]
    ZeroPolynomial,
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

pub fn mod_pow(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128 % m as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// Residue of a rational in `[0, p)`; `None` when `p` divides the denominator.
pub fn rational_mod(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb).to_u64()?;
    let den = x.denom().mod_floor(&pb).to_u64()?;
    let inv = mod_inv(den, p)?;
    Some(((num as u128 * inv as u128) % p as u128) as u64)
}

/// 2-adic valuation of a nonzero integer.
pub fn v2(x: &BigInt) -> u64 {
    x.trailing_zeros().unwrap_or(0)
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(x: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while !x.is_zero() && x.is_multiple_of(&p) {
        x /= &p;
        v += 1;
    }
    v
}

/// True when `|x|` is a power of two (including 1).
pub fn is_power_of_two(x: &BigInt) -> bool {
    let a = x.abs();
    !a.is_zero() && (&a >> v2(&a)).is_one()
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization of a positive integer by trial division to 10^6.
///
/// `None` when a cofactor above 10^12 survives, since its primality is then
/// not settled by trial division.
pub fn factor_integer(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    if n.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0;
        while n.is_multiple_of(&pb) {
            n /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        let limit = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
        if n > limit {
            return None;
        }
        out.push((n, 1));
    }
    Some(out)
}

/// Positive divisors in ascending order.
pub fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let fac = factor_integer(n)?;
    let mut divs = vec![BigInt::one()];
    for (p, e) in fac {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = primes_up_to(30);
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(561));
        assert!(!is_prime(1));
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(2, 4), None);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_mod(&half, 5), Some(3));
        assert_eq!(rational_mod(&half, 2), None);
        assert_eq!(rational_mod(&BigRational::from_integer(BigInt::from(-1)), 3), Some(2));
    }

    #[test]
    fn valuations_and_powers() {
        assert_eq!(v2(&BigInt::from(-24)), 3);
        assert_eq!(valuation(&BigInt::from(81), 3), 4);
        assert!(is_power_of_two(&BigInt::from(-8)));
        assert!(is_power_of_two(&BigInt::from(1)));
        assert!(!is_power_of_two(&BigInt::from(6)));
    }

    #[test]
    fn divisor_lists() {
        let d: Vec<i64> = divisors(&BigInt::from(12))
            .unwrap()
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
