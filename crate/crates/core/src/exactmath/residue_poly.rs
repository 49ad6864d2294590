use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::int_poly::write_poly;
use super::{mod_inv, ExactMathError, IntPoly};

/// Polynomial over the prime field of order `modulus`.
///
/// Coefficients are reduced into `[0, modulus)` and stored little-endian with
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResiduePoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl ResiduePoly {
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    pub fn from_i64(modulus: u64, coeffs: &[i64]) -> Self {
        let m = modulus as i128;
        Self::new(
            modulus,
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(m) as u64)
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: &[BigInt], modulus: u64) -> Self {
        let m = BigInt::from(modulus);
        Self::new(
            modulus,
            coeffs
                .iter()
                .map(|c| {
                    let r = ((c % &m) + &m) % &m;
                    r.to_u64().expect("reduced residue fits")
                })
                .collect(),
        )
    }

    pub fn zero(modulus: u64) -> Self {
        Self { modulus, coeffs: Vec::new() }
    }

    pub fn one(modulus: u64) -> Self {
        Self::new(modulus, vec![1])
    }

    pub fn x(modulus: u64) -> Self {
        Self::new(modulus, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    /// Lift to integer coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.modulus;
        let x = x % p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
    }

    pub fn scale(&self, k: u64) -> Self {
        let p = self.modulus;
        Self::new(p, self.coeffs.iter().map(|&c| mulmod(c, k % p, p)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(mod_inv(l, self.modulus).expect("prime modulus")),
            None => self.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(p, (0..len).map(|i| (self.coeff(i) + other.coeff(i)) % p).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            p,
            (0..len).map(|i| (self.coeff(i) + p - other.coeff(i)) % p).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Self::zero(p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ExactMathError> {
        let p = self.modulus;
        let d = divisor.degree().ok_or(ExactMathError::DivisionByZero)?;
        let inv = mod_inv(divisor.leading().expect("nonzero"), p).ok_or(ExactMathError::NotPrime(p))?;
        let Some(n) = self.degree() else {
            return Ok((Self::zero(p), Self::zero(p)));
        };
        if n < d {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; n - d + 1];
        for k in (0..=n - d).rev() {
            let top = rem[k + d];
            if top == 0 {
                continue;
            }
            let q = mulmod(top, inv, p);
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mulmod(q, dc, p)) % p;
            }
            quot[k] = q;
        }
        rem.truncate(d);
        Ok((Self::new(p, quot), Self::new(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).expect("nonzero divisor").1
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.modulus;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, i as u64 % p, p))
                .collect(),
        )
    }

    /// `self^e mod m`, exponent given as little-endian bits source.
    pub fn pow_mod_big(&self, e: &num_bigint::BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.modulus).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn pow_mod(&self, e: u64, m: &Self) -> Self {
        self.pow_mod_big(&num_bigint::BigUint::from(e), m)
    }

    /// If every exponent with a nonzero coefficient is a multiple of `p`,
    /// returns `g` with `g(X)^p = self` (Frobenius is the identity on the prime field).
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.modulus as usize;
        if self.coeffs.iter().enumerate().any(|(i, &c)| c != 0 && i % p != 0) {
            return None;
        }
        Some(Self::new(
            self.modulus,
            self.coeffs.iter().step_by(p).copied().collect(),
        ))
    }

    /// Roots in `[0, p)` by exhaustion.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.modulus).filter(|&a| self.eval(a) == 0).collect()
    }
}

impl fmt::Display for ResiduePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| c.to_string()).collect(), "x")?;
        write!(f, " (mod {})", self.modulus)
    }
}
