use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use unitgate_core::exactmath::{IntPoly, RatPoly};
use unitgate_core::numberfield::{small_norm, FieldElement, NumberField};

const FIELDS: [&[i64]; 7] = [
    &[1, 0, 1],
    &[1, 1, 1],
    &[-3, 9, -6, 1],
    &[-5, 0, 0, 1],
    &[1, 1, 0, 1],
    &[-1, -1, 0, 0, 1],
    &[-3, 0, 0, 0, 0, 1],
];

fn field(i: usize) -> Arc<NumberField> {
    NumberField::from_coeffs(FIELDS[i % FIELDS.len()]).unwrap()
}

fn element(k: &Arc<NumberField>, raw: &[(i64, i64)]) -> FieldElement {
    let coords = (0..k.degree())
        .map(|i| {
            let (n, d) = raw[i % raw.len()];
            BigRational::new(BigInt::from(n), BigInt::from(d))
        })
        .collect();
    FieldElement::new(k, coords).unwrap()
}

fn coords_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..10, 1i64..5), 5)
}

fn int_coords(k: &NumberField, raw: &[i64]) -> Vec<i64> {
    (0..k.degree()).map(|i| raw[i % raw.len()]).collect()
}

/// `Σ c_i λ^i` for a polynomial with rational coefficients.
fn eval_at(poly: &RatPoly, x: &FieldElement) -> FieldElement {
    let k = x.field();
    let mut acc = FieldElement::zero(k);
    for c in poly.coeffs().iter().rev() {
        acc = &(&acc * x) + &FieldElement::constant(k, c.clone());
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn norm_is_multiplicative(fi in 0usize..7, a in coords_strategy(), b in coords_strategy()) {
        let k = field(fi);
        let (a, b) = (element(&k, &a), element(&k, &b));
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn trace_is_additive(fi in 0usize..7, a in coords_strategy(), b in coords_strategy()) {
        let k = field(fi);
        let (a, b) = (element(&k, &a), element(&k, &b));
        prop_assert_eq!((&a + &b).trace(), a.trace() + b.trace());
    }

    #[test]
    fn cayley_hamilton(fi in 0usize..7, a in coords_strategy()) {
        let k = field(fi);
        let a = element(&k, &a);
        let cp = a.char_poly();
        prop_assert_eq!(cp.charpoly.degree(), Some(k.degree()));
        prop_assert!(eval_at(&cp.charpoly, &a).is_zero());
    }

    #[test]
    fn inverse_and_division(fi in 0usize..7, a in coords_strategy(), b in coords_strategy()) {
        let k = field(fi);
        let (a, b) = (element(&k, &a), element(&k, &b));
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inverse().unwrap()).is_one());
        prop_assert_eq!(&b.try_div(&a).unwrap() * &a, b);
    }

    /// For monic `f` and `λ = g(θ)`, `Norm(λ) = Res(f, g)`.
    #[test]
    fn norm_matches_resultant(fi in 0usize..7, raw in prop::collection::vec(-12i64..13, 5)) {
        let k = field(fi);
        let c = int_coords(&k, &raw);
        prop_assume!(c.iter().skip(1).any(|&x| x != 0));
        let g = IntPoly::from_i64(&c);
        let expected = k.minpoly().resultant(&g);
        prop_assert_eq!(small_norm(&k, &c), expected.clone());
        prop_assert_eq!(FieldElement::from_i64(&k, &c).unwrap().norm(), BigRational::from_integer(expected));
    }

    #[test]
    fn charpoly_of_constant(fi in 0usize..7, n in -20i64..20, d in 1i64..6) {
        let k = field(fi);
        let c = BigRational::new(BigInt::from(n), BigInt::from(d));
        let x = FieldElement::constant(&k, c.clone());
        let linear = RatPoly::new(vec![-c, BigRational::one()]);
        let expected = (0..k.degree()).fold(RatPoly::one(), |acc, _| &acc * &linear);
        prop_assert_eq!(x.char_poly().charpoly, expected);
    }

    #[test]
    fn integral_coordinates_are_integral(fi in 0usize..7, raw in prop::collection::vec(-12i64..13, 5)) {
        let k = field(fi);
        let x = FieldElement::from_i64(&k, &int_coords(&k, &raw)).unwrap();
        prop_assert!(x.is_algebraic_integer());
        prop_assert!(x.char_poly().integer_charpoly().is_some());
    }
}

#[test]
fn theta_reproduces_the_minimal_polynomial() {
    for i in 0..FIELDS.len() {
        let k = field(i);
        let cp = FieldElement::theta(&k).char_poly();
        assert_eq!(cp.integer_charpoly().as_ref(), Some(k.minpoly()));
        assert_eq!(cp.trace, BigRational::from_integer(-k.minpoly().coeff(k.degree() - 1)));
    }
}
