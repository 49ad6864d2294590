use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use unitgate_core::exactmath::{
    count_real_roots, factor_mod_p, factor_mod_p_seeded, is_irreducible_over_q, primes_up_to,
    squarefree_part, IntPoly, Irreducibility, RatPoly, ResiduePoly,
};

fn linear_product(roots: &[i64]) -> IntPoly {
    roots
        .iter()
        .fold(IntPoly::one(), |acc, &a| &acc * &IntPoly::from_i64(&[-a, 1]))
}

fn monic_residue_polys(p: u64, d: usize) -> Vec<ResiduePoly> {
    let total = p.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(idx % p);
                idx /= p;
            }
            c.push(1);
            ResiduePoly::new(p, c)
        })
        .collect()
}

/// Irreducibility by trial division over every monic polynomial of degree ≤ d/2.
fn brute_irreducible(g: &ResiduePoly) -> bool {
    let d = g.degree().unwrap();
    (1..=d / 2).all(|k| {
        monic_residue_polys(g.modulus(), k)
            .iter()
            .all(|h| !g.rem(h).is_zero())
    })
}

fn small_primes() -> Vec<u64> {
    primes_up_to(97)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn factorization_expands_back(
        coeffs in prop::collection::vec(-50i64..50, 2..13),
        pi in 0usize..25,
        seed in any::<u64>(),
    ) {
        let p = small_primes()[pi];
        let mut c = coeffs;
        c.push(1);
        let f = IntPoly::from_i64(&c);
        let fac = factor_mod_p_seeded(&f, p, seed).unwrap();
        prop_assert_eq!(fac.expand(), f.reduce_mod(p));
        let degree_sum: usize = fac.factors.iter().map(|(g, e)| g.degree().unwrap() * *e as usize).sum();
        prop_assert_eq!(degree_sum, c.len() - 1);
        for (g, _) in &fac.factors {
            prop_assert_eq!(g.leading(), Some(1));
            if g.degree().unwrap() <= 3 {
                prop_assert!(g.roots().is_empty() || g.degree() == Some(1));
            }
        }
        prop_assert_eq!(fac, factor_mod_p(&f, p).unwrap());
    }

    #[test]
    fn small_field_factors_are_irreducible(
        coeffs in prop::collection::vec(0i64..7, 1..9),
        pi in 0usize..4,
    ) {
        let p = [2u64, 3, 5, 7][pi];
        let mut c = coeffs;
        c.push(1);
        let fac = factor_mod_p(&IntPoly::from_i64(&c), p).unwrap();
        for (g, _) in &fac.factors {
            prop_assert!(brute_irreducible(g), "{} is reducible", g);
        }
    }

    #[test]
    fn sturm_counts_constructed_roots(
        roots in prop::collection::btree_set(-20i64..20, 0..6),
        c in 1i64..30,
        extra in 0usize..2,
    ) {
        let roots: Vec<i64> = roots.into_iter().collect();
        let mut f = linear_product(&roots);
        for _ in 0..extra {
            f = &f * &IntPoly::from_i64(&[c, 0, 1]);
        }
        if f.degree() == Some(0) {
            f = IntPoly::from_i64(&[c, 0, 1]);
        }
        prop_assert_eq!(count_real_roots(&f).unwrap(), roots.len());
        // Repeated roots are counted once.
        let doubled = &f * &f;
        prop_assert_eq!(count_real_roots(&doubled).unwrap(), roots.len());
    }

    #[test]
    fn real_root_parity(coeffs in prop::collection::vec(-9i64..10, 2..8)) {
        let mut c = coeffs;
        c.push(1);
        let f = squarefree_part(&IntPoly::from_i64(&c)).unwrap();
        let n = f.degree().unwrap();
        let r = count_real_roots(&f).unwrap();
        prop_assert!(r <= n);
        prop_assert_eq!((n - r) % 2, 0);
    }

    #[test]
    fn discriminant_of_split_polynomial(roots in prop::collection::vec(-12i64..12, 2..6)) {
        let f = linear_product(&roots);
        let mut expected = BigInt::from(1);
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = BigInt::from(roots[i] - roots[j]);
                expected *= &d * &d;
            }
        }
        prop_assert_eq!(f.discriminant(), expected);
    }

    #[test]
    fn rational_division_identity(
        a in prop::collection::vec(-30i64..30, 1..9),
        b in prop::collection::vec(-30i64..30, 1..5),
    ) {
        let a = RatPoly::from(&IntPoly::from_i64(&a));
        let b = RatPoly::from(&IntPoly::from_i64(&b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn integer_division_identity(
        a in prop::collection::vec(-30i64..30, 1..9),
        b in prop::collection::vec(-30i64..30, 0..4),
    ) {
        let mut b = b;
        b.push(1);
        let a = IntPoly::from_i64(&a);
        let b = IntPoly::from_i64(&b);
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn products_are_never_certified_irreducible(
        g in prop::collection::vec(-6i64..6, 1..4),
        h in prop::collection::vec(-6i64..6, 1..4),
    ) {
        let mut g = g;
        g.push(1);
        let mut h = h;
        h.push(1);
        let f = &IntPoly::from_i64(&g) * &IntPoly::from_i64(&h);
        let certified = matches!(is_irreducible_over_q(&f), Irreducibility::CertifiedIrreducible { .. });
        prop_assert!(!certified);
    }
}

#[test]
fn shifted_polynomial_keeps_discriminant() {
    let f = IntPoly::from_i64(&[-3, 9, -6, 1]);
    for c in -5i64..=5 {
        assert_eq!(f.shift(&BigInt::from(c)).discriminant(), BigInt::from(81));
    }
    assert!(!f.discriminant().is_zero());
}
