//! The number field `Q[X]/(f)` for a monic irreducible integer polynomial `f`,
//! elements in the power basis `1, θ, …, θ^{n-1}`, and the characteristic
//! polynomial, norm and trace of the multiplication map.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::matrix::{bareiss_det, det_i128_or_big};
use crate::exactmath::{
    count_real_roots, is_irreducible_over_q, IntPoly, Irreducibility,
    IrreducibilityCertificate, RatPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("defining polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("defining polynomial is reducible: factor {witness}")]
    Reducible { witness: IntPoly },
    #[error("irreducibility could not be certified: {reason}")]
    IrreducibilityUnknown { reason: String },
    #[error("elements belong to different fields")]
    MismatchedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} coordinates, got {got}")]
    WrongCoordinateCount { expected: usize, got: usize },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

/// `Q[X]/(f)` with `f` monic and certified irreducible.
#[derive(Debug)]
pub struct NumberField {
    minpoly: IntPoly,
    degree: usize,
    disc: BigInt,
    real_roots: usize,
    irreducibility: IrreducibilityCertificate,
    /// Power-basis coordinates of `θ^k` for `k < 2n - 1`.
    reductions: Vec<Vec<BigInt>>,
    /// `reductions` narrowed to `i128` when every entry fits.
    reductions_i128: Option<Vec<Vec<i128>>>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl Eq for NumberField {}

impl NumberField {
    pub fn new(minpoly: IntPoly) -> Result<Arc<Self>, FieldError> {
        if !minpoly.is_monic() || minpoly.degree().unwrap_or(0) == 0 {
            return Err(FieldError::NotMonic);
        }
        let certificate = match is_irreducible_over_q(&minpoly) {
            Irreducibility::CertifiedIrreducible { certificate } => certificate,
            Irreducibility::CertifiedReducible { witness } => {
                return Err(FieldError::Reducible { witness })
            }
            Irreducibility::Unknown { reason } => {
                return Err(FieldError::IrreducibilityUnknown { reason })
            }
        };
        Ok(Self::with_certificate(minpoly, certificate))
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Result<Arc<Self>, FieldError> {
        Self::new(IntPoly::from_i64(coeffs))
    }

    /// The rationals, presented as `Q[X]/(X)`.
    pub fn rationals() -> Arc<Self> {
        Self::with_certificate(IntPoly::x(), IrreducibilityCertificate::Linear)
    }

    fn with_certificate(minpoly: IntPoly, irreducibility: IrreducibilityCertificate) -> Arc<Self> {
        let degree = minpoly.degree().expect("nonconstant");
        let disc = minpoly.discriminant();
        let real_roots = count_real_roots(&minpoly).expect("nonzero polynomial");
        let reductions = power_reductions(&minpoly, degree);
        let reductions_i128 = reductions
            .iter()
            .map(|row| row.iter().map(|c| c.to_i128()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>();
        Arc::new(Self {
            minpoly,
            degree,
            disc,
            real_roots,
            irreducibility,
            reductions,
            reductions_i128,
        })
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Discriminant of the defining polynomial.
    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn real_roots(&self) -> usize {
        self.real_roots
    }

    pub fn is_totally_real(&self) -> bool {
        self.real_roots == self.degree
    }

    /// `(r1, r2)`: real embeddings and pairs of complex embeddings.
    pub fn signature(&self) -> (usize, usize) {
        (self.real_roots, (self.degree - self.real_roots) / 2)
    }

    pub fn irreducibility(&self) -> &IrreducibilityCertificate {
        &self.irreducibility
    }

    /// Multiplication matrix of `θ^i` on the power basis.
    fn theta_power_matrix(&self, i: usize) -> Vec<Vec<BigInt>> {
        let n = self.degree;
        (0..n)
            .map(|row| (0..n).map(|col| self.reductions[i + col][row].clone()).collect())
            .collect()
    }
}

fn power_reductions(f: &IntPoly, n: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(2 * n);
    for k in 0..n {
        let mut v = vec![BigInt::zero(); n];
        v[k] = BigInt::one();
        out.push(v);
    }
    // θ^n = -(f_0 + f_1 θ + … + f_{n-1} θ^{n-1})
    for _ in n..(2 * n).max(n + 1) {
        let prev = out.last().expect("nonempty");
        let top = prev[n - 1].clone();
        let mut next = vec![BigInt::zero(); n];
        for l in (1..n).rev() {
            next[l] = prev[l - 1].clone();
        }
        for (l, slot) in next.iter_mut().enumerate() {
            *slot -= &top * f.coeff(l);
        }
        out.push(next);
    }
    out
}

/// Characteristic polynomial of multiplication by an element, with the norm
/// and trace read off its coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyResult {
    pub charpoly: RatPoly,
    pub norm: BigRational,
    pub trace: BigRational,
}

impl CharPolyResult {
    pub fn is_integral(&self) -> bool {
        self.charpoly.coeffs().iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, when integral.
    pub fn integer_charpoly(&self) -> Option<IntPoly> {
        self.charpoly
            .coeffs()
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }
}

/// `c_0 + c_1 θ + … + c_{n-1} θ^{n-1}` with rational coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coords: Vec<BigRational>) -> Result<Self, FieldError> {
        if coords.len() != field.degree {
            return Err(FieldError::WrongCoordinateCount {
                expected: field.degree,
                got: coords.len(),
            });
        }
        Ok(Self { field: Arc::clone(field), coords })
    }

    pub fn from_integers(field: &Arc<NumberField>, coords: &[BigInt]) -> Result<Self, FieldError> {
        Self::new(
            field,
            coords.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        )
    }

    pub fn from_i64(field: &Arc<NumberField>, coords: &[i64]) -> Result<Self, FieldError> {
        Self::new(
            field,
            coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Parses coordinates such as `"3"`, `"-1/2"`.
    pub fn parse(field: &Arc<NumberField>, coords: &[String]) -> Result<Self, FieldError> {
        let parsed = coords
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, parsed)
    }

    pub fn constant(field: &Arc<NumberField>, c: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree];
        coords[0] = c;
        Self { field: Arc::clone(field), coords }
    }

    pub fn integer(field: &Arc<NumberField>, c: i64) -> Self {
        Self::constant(field, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::integer(field, 0)
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::integer(field, 1)
    }

    /// The generator `θ`. In degree one this is the rational `-f(0)`.
    pub fn theta(field: &Arc<NumberField>) -> Self {
        let coords = field.reductions[1].iter().cloned().map(BigRational::from_integer).collect();
        Self { field: Arc::clone(field), coords }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// True when every coordinate is an integer, i.e. the element lies in `Z[θ]`.
    pub fn has_integer_coords(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MismatchedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Self { field: Arc::clone(&self.field), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(Self { field: Arc::clone(&self.field), coords })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let n = self.field.degree;
        let mut conv = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                conv[i + j] += a * b;
            }
        }
        Ok(self.reduce(conv))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        self.try_mul(&other.inverse()?)
    }

    fn reduce(&self, conv: Vec<BigRational>) -> Self {
        let n = self.field.degree;
        let mut coords = vec![BigRational::zero(); n];
        for (k, c) in conv.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, r) in self.field.reductions[k].iter().enumerate() {
                if !r.is_zero() {
                    coords[l] += c * BigRational::from_integer(r.clone());
                }
            }
        }
        Self { field: Arc::clone(&self.field), coords }
    }

    /// Inverse through the extended gcd with the defining polynomial.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let a = RatPoly::new(self.coords.clone());
        let f = RatPoly::from(&self.field.minpoly);
        let (g, s, _) = a.xgcd(&f);
        debug_assert!(g == RatPoly::one(), "irreducible modulus");
        let (_, s) = s.div_rem(&f).expect("nonzero modulus");
        let n = self.field.degree;
        let coords = (0..n).map(|i| s.coeff(i)).collect();
        Ok(Self { field: Arc::clone(&self.field), coords })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `self` on the power basis; column `j` holds `self·θ^j`.
    pub fn mul_matrix(&self) -> Vec<Vec<BigRational>> {
        let n = self.field.degree;
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (col, _) in (0..n).enumerate() {
                for (row, r) in self.field.reductions[i + col].iter().enumerate() {
                    if !r.is_zero() {
                        m[row][col] += c * BigRational::from_integer(r.clone());
                    }
                }
            }
        }
        m
    }

    /// `det(X·I - M)` for the multiplication matrix `M`.
    ///
    /// The matrix is cleared to integers, the determinant evaluated with
    /// Bareiss elimination at `n + 1` integer points, and the result
    /// interpolated and rescaled.
    pub fn char_poly(&self) -> CharPolyResult {
        let n = self.field.degree;
        let m = self.mul_matrix();
        let denom = m
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<Vec<BigInt>> = m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
                    .collect()
            })
            .collect();
        let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
        let values: Vec<BigInt> = xs
            .iter()
            .map(|t| {
                let mut a: Vec<Vec<BigInt>> = scaled.iter().map(|row| row.iter().map(|c| -c).collect()).collect();
                for (i, row) in a.iter_mut().enumerate() {
                    row[i] += t;
                }
                bareiss_det(a)
            })
            .collect();
        let scaled_poly = interpolate(&xs, &values);
        // charpoly(M)(X) = D^{-n} · charpoly(D·M)(D·X)
        let mut coeffs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let c = scaled_poly.coeff(i);
            let d = num_traits::pow(denom.clone(), n - i);
            coeffs.push(c / BigRational::from_integer(d));
        }
        let charpoly = RatPoly::new(coeffs);
        let norm = if n.is_multiple_of(2) { charpoly.coeff(0) } else { -charpoly.coeff(0) };
        let trace = -charpoly.coeff(n - 1);
        CharPolyResult { charpoly, norm, trace }
    }

    pub fn norm(&self) -> BigRational {
        if let Some(ints) = self.integer_coords() {
            return BigRational::from_integer(integral_norm(&self.field, &ints));
        }
        let m = self.mul_matrix();
        let denom = m.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<Vec<BigInt>> = m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
                    .collect()
            })
            .collect();
        let d = num_traits::pow(denom, self.field.degree);
        BigRational::new(bareiss_det(scaled), d)
    }

    pub fn trace(&self) -> BigRational {
        let n = self.field.degree;
        let mut t = BigRational::zero();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let tr_i: BigInt = (0..n).map(|j| &self.field.reductions[i + j][j]).sum();
            t += c * BigRational::from_integer(tr_i);
        }
        t
    }

    /// Integral over `Z`: the characteristic polynomial has integer coefficients.
    pub fn is_algebraic_integer(&self) -> bool {
        self.has_integer_coords() || self.char_poly().is_integral()
    }

    /// Evaluates the coordinate polynomial at a rational point.
    pub fn eval_coords(&self, x: &BigRational) -> BigRational {
        self.coords
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// Norm of `Σ c_i θ^i` with integer coordinates, via an `i128` determinant
/// when the entries fit.
pub fn integral_norm(field: &NumberField, coords: &[BigInt]) -> BigInt {
    let n = field.degree;
    if let (Some(red), Some(c)) = (
        field.reductions_i128.as_ref(),
        coords.iter().map(|c| c.to_i64()).collect::<Option<Vec<_>>>(),
    ) {
        if let Some(m) = i128_matrix(red, &c, n) {
            return det_i128_or_big(&m);
        }
    }
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = field.theta_power_matrix(i);
        for r in 0..n {
            for col in 0..n {
                m[r][col] += c * &t[r][col];
            }
        }
    }
    bareiss_det(m)
}

/// Norm evaluation for small integer coordinates, the hot path of the searches.
pub fn small_norm(field: &NumberField, coords: &[i64]) -> BigInt {
    let n = field.degree;
    if let Some(red) = field.reductions_i128.as_ref() {
        if let Some(m) = i128_matrix(red, coords, n) {
            return det_i128_or_big(&m);
        }
    }
    let big: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
    integral_norm(field, &big)
}

fn i128_matrix(red: &[Vec<i128>], coords: &[i64], n: usize) -> Option<Vec<Vec<i128>>> {
    let mut m = vec![vec![0i128; n]; n];
    for (i, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let c = c as i128;
        for col in 0..n {
            for (row, &r) in red[i + col].iter().enumerate() {
                if r != 0 {
                    m[row][col] = m[row][col].checked_add(c.checked_mul(r)?)?;
                }
            }
        }
    }
    Some(m)
}

fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> RatPoly {
    let xs: Vec<BigRational> = xs.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut acc = RatPoly::zero();
    for (j, yj) in ys.iter().enumerate() {
        if yj.is_zero() {
            continue;
        }
        let mut num = RatPoly::one();
        let mut den = BigRational::one();
        for (k, xk) in xs.iter().enumerate() {
            if k != j {
                num = &num * &RatPoly::new(vec![-xk.clone(), BigRational::one()]);
                den *= &xs[j] - xk;
            }
        }
        acc = &acc + &num.scale(&(BigRational::from_integer(yj.clone()) / den));
    }
    acc
}

pub fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other).is_ok() && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::exactmath::write_poly_var(f, self.coord_strings(), "t")
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    /// Panics on mismatched fields; see [`FieldElement::try_add`].
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.try_add(rhs).expect("same field")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.try_sub(rhs).expect("same field")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.try_mul(rhs).expect("same field")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// Serialized form: the field's coefficients are carried by the enclosing
/// record, so an element is just its coordinate strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementCoords(pub Vec<String>);

impl From<&FieldElement> for ElementCoords {
    fn from(e: &FieldElement) -> Self {
        Self(e.coord_strings())
    }
}
