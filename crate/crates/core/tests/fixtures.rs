use std::path::PathBuf;

use multider::derivations::{hilbert_dimension, is_member, module_contains, parse_der, saito_check};
use multider::{builtin_group, free_basis_search, MultiArrangement, SearchOptions};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn group_arrangement(name: &str) -> MultiArrangement {
    builtin_group(name, None).unwrap().reflection_arrangement().unwrap()
}

#[test]
fn displayed_forms_match_group_data() {
    for g in ["G25", "G26"] {
        let shown = MultiArrangement::from_marr(&fixture(&format!("{}_display.marr", g.to_lowercase()))).unwrap();
        assert_eq!(shown, group_arrangement(g), "{g}");
    }
}

#[test]
fn g25_basis_certifies() {
    let arr = group_arrangement("G25");
    let (_, _, basis) = parse_der(&fixture("g25.der")).unwrap();
    let cert = saito_check(&basis, &arr).unwrap();
    assert_eq!(cert.exponents(), vec![8, 8, 8]);
}

#[test]
fn g26_basis_certifies() {
    let arr = group_arrangement("G26");
    let (_, _, basis) = parse_der(&fixture("g26.der")).unwrap();
    let cert = saito_check(&basis, &arr).unwrap();
    assert_eq!(cert.exponents(), vec![10, 10, 13]);
}

#[test]
fn g25_first_element_on_z() {
    let arr = group_arrangement("G25");
    let (_, _, basis) = parse_der(&fixture("g25.der")).unwrap();
    let z = multider::algebra::parse_poly(arr.field(), 3, "z").unwrap();
    let img = basis[0].apply_to_form(&z).unwrap();
    let want = multider::algebra::parse_poly(
        arr.field(),
        3,
        "14*x^6*z^2 + 28*x^3*y^3*z^2 + 14*y^6*z^2 - 14*x^3*z^5 - 14*y^3*z^5 - z^8",
    )
    .unwrap();
    assert_eq!(img, want);
    assert!(img.power_divides(&z, 2).unwrap());
    for t in &basis {
        assert!(is_member(t, &arr).unwrap().is_member());
    }
}

#[test]
fn g25_graded_dimensions() {
    let arr = group_arrangement("G25");
    for p in 0..8 {
        assert_eq!(hilbert_dimension(&arr, p).unwrap(), 0, "degree {p}");
    }
    assert_eq!(hilbert_dimension(&arr, 8).unwrap(), 3);
}

#[test]
fn g26_graded_dimensions() {
    let arr = group_arrangement("G26");
    assert_eq!(hilbert_dimension(&arr, 9).unwrap(), 0);
    assert_eq!(hilbert_dimension(&arr, 10).unwrap(), 2);
    assert_eq!(hilbert_dimension(&arr, 13).unwrap(), 21);
}

#[test]
fn searched_and_fixture_bases_generate_the_same_module() {
    let arr = group_arrangement("G25");
    let (_, _, fixed) = parse_der(&fixture("g25.der")).unwrap();
    let found = free_basis_search(&arr, &SearchOptions::default()).unwrap();
    let searched = &found.certificate().unwrap().basis;
    for t in &fixed {
        assert!(module_contains(searched, t, &arr).unwrap());
    }
    for t in searched {
        assert!(module_contains(&fixed, t, &arr).unwrap());
    }
}
