use unitgate_core::numberfield::{FieldElement, NumberField};
use unitgate_core::search::{enumerate_unit_solutions, missing_symmetry_images, SearchConfig};

fn cubic() -> std::sync::Arc<NumberField> {
    NumberField::from_coeffs(&[-3, 9, -6, 1]).unwrap()
}

#[test]
fn cubic_low_heights_miss_one_orbit_partially() {
    let k = cubic();
    let s20 = enumerate_unit_solutions(&k, &SearchConfig::units(20));
    let s40 = enumerate_unit_solutions(&k, &SearchConfig::units(40));
    assert_eq!(s20.len(), 14);
    assert_eq!(s20.solutions, s40.solutions);
    assert!(s20.contains(&FieldElement::from_i64(&k, &[2, -1, 0]).unwrap()));
    let shape: Vec<(usize, usize, bool)> = s20.orbits.iter().map(|o| (o.members.len(), o.size, o.complete)).collect();
    assert_eq!(shape, vec![(6, 6, true), (6, 6, true), (2, 6, false)]);
    // The missing images are out of the box, so closure holds within bounds.
    assert!(missing_symmetry_images(&s20, &SearchConfig::units(20)).is_empty());
}

#[test]
fn cubic_eighteen_solutions_stabilize() {
    let k = cubic();
    let s91 = enumerate_unit_solutions(&k, &SearchConfig::units(91));
    let s120 = enumerate_unit_solutions(&k, &SearchConfig::units(120));
    assert_eq!(s91.len(), 18);
    assert_eq!(s91.solutions, s120.solutions);
    assert_eq!(s91.orbits.len(), 3);
    assert!(s91.orbits.iter().all(|o| o.size == 6 && o.complete));
    let far = FieldElement::from_i64(&k, &[89, -77, 14]).unwrap();
    assert!(s91.contains(&far));
    assert_eq!(enumerate_unit_solutions(&k, &SearchConfig::units(90)).len(), 16);
}
