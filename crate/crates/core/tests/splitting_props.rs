use num_bigint::BigInt;
use proptest::prelude::*;
use unitgate_core::exactmath::{primes_up_to, IntPoly};
use unitgate_core::numberfield::NumberField;
use unitgate_core::splitting::{splitting_shape, SplittingClass};

fn monic(c: &[i64]) -> Vec<i64> {
    let mut c = c.to_vec();
    c.push(1);
    c
}

fn brute_root_count(f: &IntPoly, p: u64) -> usize {
    (0..p)
        .filter(|&a| (f.eval(&BigInt::from(a)) % BigInt::from(p)) == BigInt::from(0))
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ef_sum_and_root_count(c in prop::collection::vec(-12i64..13, 2..5), pi in 0usize..15) {
        let coeffs = monic(&c);
        let Ok(k) = NumberField::from_coeffs(&coeffs) else { return Ok(()); };
        let p = primes_up_to(50)[pi];
        let shape = splitting_shape(&k, p).unwrap();
        if shape.p_maximal {
            prop_assert_eq!(shape.ef_sum(), k.degree());
        } else {
            prop_assert_eq!(shape.classification, SplittingClass::Indeterminate);
            prop_assert!(shape.pairs.is_empty());
        }
        if (k.disc() % BigInt::from(p)) != BigInt::from(0) {
            prop_assert!(shape.p_maximal);
            prop_assert!(shape.pairs.iter().all(|q| q.e == 1));
            let linear = shape.pairs.iter().filter(|q| q.f == 1).count();
            prop_assert_eq!(linear, brute_root_count(k.minpoly(), p));
        }
    }

    #[test]
    fn shape_is_shift_invariant(c in prop::collection::vec(-8i64..9, 2..5), s in -4i64..5, pi in 0usize..8) {
        let coeffs = monic(&c);
        let Ok(k) = NumberField::from_coeffs(&coeffs) else { return Ok(()); };
        let shifted = NumberField::new(k.minpoly().shift(&BigInt::from(s))).unwrap();
        let p = primes_up_to(20)[pi];
        let a = splitting_shape(&k, p).unwrap();
        let b = splitting_shape(&shifted, p).unwrap();
        let mut ea = a.ef_pairs();
        let mut eb = b.ef_pairs();
        ea.sort();
        eb.sort();
        prop_assert_eq!(a.p_maximal, b.p_maximal);
        prop_assert_eq!(ea, eb);
        prop_assert_eq!(a.classification, b.classification);
    }
}

#[test]
fn classification_examples() {
    let cubic = NumberField::from_coeffs(&[-3, 9, -6, 1]).unwrap();
    assert_eq!(splitting_shape(&cubic, 3).unwrap().classification, SplittingClass::TotallyRamified);
    assert_eq!(splitting_shape(&cubic, 2).unwrap().classification, SplittingClass::Inert);
    // x^3 - 3x - 1 (the real cubic of conductor 9) mod 17 has three roots.
    let c9 = NumberField::from_coeffs(&[-1, -3, 0, 1]).unwrap();
    assert_eq!(splitting_shape(&c9, 17).unwrap().classification, SplittingClass::TotallySplit);
    assert_eq!(splitting_shape(&c9, 5).unwrap().classification, SplittingClass::Inert);
}
