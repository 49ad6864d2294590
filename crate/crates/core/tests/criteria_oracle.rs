//! Certificates against the brute-force search on a small corpus of cubics.

use std::sync::Arc;

use proptest::prelude::*;
use unitgate_core::criteria::{check, check_pram, check_unitcrit, Holds, TheoremId};
use unitgate_core::numberfield::{FieldElement, NumberField};
use unitgate_core::residues::{check_3adic_lemma, check_charpoly_congruence, check_norm_congruence};
use unitgate_core::search::{enumerate_sunit_solutions, enumerate_unit_solutions, SearchConfig};
use unitgate_core::splitting::splitting_shape;
use unitgate_core::sunit::SUnitContext;

fn cubics(bound: i64, totally_real: bool) -> Vec<Arc<NumberField>> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                if let Ok(k) = NumberField::from_coeffs(&[c, b, a, 1]) {
                    if !totally_real || k.is_totally_real() {
                        out.push(k);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn no_unit_solutions_when_a_certificate_exists() {
    let corpus = cubics(5, true);
    let mut certified = 0;
    for k in &corpus {
        for theorem in [TheoremId::Unitcrit, TheoremId::Triantafillou] {
            let v = check(k, theorem, None).unwrap();
            if v.holds != Holds::Yes {
                continue;
            }
            certified += 1;
            assert_eq!(v.certificate.as_ref().unwrap().replay(k), Ok(Holds::Yes));
            let set = enumerate_unit_solutions(k, &SearchConfig::units(6));
            assert!(set.is_empty(), "{} has unit solutions despite {theorem}", k.minpoly());
        }
    }
    assert!(certified > 0);
}

#[test]
fn pram_implies_unitcrit() {
    for k in cubics(4, true) {
        for p in [5u64, 7, 11, 13] {
            if check_pram(&k, p).unwrap().holds == Holds::Yes {
                assert_eq!(check_unitcrit(&k, p).unwrap().holds, Holds::Yes);
            }
        }
    }
}

#[test]
fn yes_verdicts_replay_and_flipping_a_hypothesis_breaks_them() {
    let fields = cubics(4, false);
    let cubic = NumberField::from_coeffs(&[-3, 9, -6, 1]).unwrap();
    for k in &fields {
        for theorem in TheoremId::ALL {
            let v = check(k, theorem, None).unwrap();
            assert_eq!(
                v.holds == Holds::Yes,
                v.hypothesis_trace.iter().all(|h| h.status == unitgate_core::criteria::Status::Pass)
            );
            if let Some(cert) = &v.certificate {
                assert_eq!(cert.replay(k), Ok(Holds::Yes), "{theorem} on {}", k.minpoly());
                if matches!(theorem, TheoremId::Triantafillou | TheoremId::T23ram) {
                    // 3 is ramified in the fixture cubic, so the splitting step must not replay there.
                    assert!(cert.replay(&cubic).is_err());
                }
            }
        }
    }
}

#[test]
fn three_adic_lemma_on_searched_solutions() {
    let mut checked = 0;
    for k in cubics(4, false) {
        let Ok(shape) = splitting_shape(&k, 3) else { continue };
        if !shape.is_totally_split() {
            continue;
        }
        let Ok(ctx) = SUnitContext::new(&k) else { continue };
        let cfg = SearchConfig::sunits(&ctx, 3).with_denom_exp_max(0);
        for s in enumerate_sunit_solutions(&ctx, &cfg).unwrap().solutions {
            let r = check_3adic_lemma(&k, &s.lambda, &s.mu).unwrap();
            assert!(r.pass, "{} at {:?}", k.minpoly(), s.lambda.coord_strings());
            checked += 1;
        }
    }
    assert!(checked > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn congruences_hold_in_eisenstein_fields(
        pick in 0usize..4,
        coords in prop::collection::vec(-5i64..6, 5),
    ) {
        let (c, p): (&[i64], u64) = match pick {
            0 => (&[-5, 0, 0, 1], 5),
            1 => (&[7, 14, -7, 1], 7),
            2 => (&[-5, 5, 0, 0, 0, 1], 5),
            _ => (&[14, 0, 7, 0, 0, 1], 7),
        };
        let k = NumberField::from_coeffs(c).unwrap();
        let x = FieldElement::from_i64(&k, &coords[..k.degree()]).unwrap();
        prop_assert!(check_charpoly_congruence(&k, p, &x).unwrap().pass);
        prop_assert!(check_norm_congruence(&k, p, &x).unwrap().pass);
    }
}
