use proptest::prelude::*;

use multider::algebra::{monomials_of_degree, Monomial};
use multider::derivations::{
    free_basis_search, graded_piece, hilbert_consistency, is_member, saito_check, Derivation, SearchOptions,
};
use multider::{CycloField, CycloScalar, ExactMatrix, MultiArrangement, Poly};

fn field(n: u32) -> &'static CycloField {
    CycloField::get(n).unwrap()
}

fn scalar(f: &'static CycloField, (a, b): (i64, i64)) -> CycloScalar {
    if f.conductor() == 1 {
        f.int(a)
    } else {
        &f.int(a) + &(&f.int(b) * &f.zeta_pow(1))
    }
}

fn small() -> impl Strategy<Value = (i64, i64)> {
    (-4i64..=4, -4i64..=4)
}

fn conductor() -> impl Strategy<Value = u32> {
    prop_oneof![Just(1u32), Just(3u32)]
}

fn poly(f: &'static CycloField, nvars: usize, coeffs: &[(i64, i64)], degree: u32) -> Poly {
    let terms: Vec<(Monomial, CycloScalar)> = monomials_of_degree(nvars, degree)
        .into_iter()
        .zip(coeffs)
        .map(|(m, c)| (m, scalar(f, *c)))
        .collect();
    Poly::from_terms(nvars, f, terms)
}

/// (a, b, multiplicity) for the form a·x + b·y.
type Row = ((i64, i64), (i64, i64), u32);

/// Rank-2 multi-arrangement from a list of (a, b) normals and multiplicities.
fn plane_arrangement(f: &'static CycloField, rows: &[Row]) -> MultiArrangement {
    let raw: Vec<_> = rows
        .iter()
        .map(|(a, b, m)| (vec![scalar(f, *a), scalar(f, *b)], *m))
        .filter(|(v, _)| v.iter().any(|c| !c.is_zero()))
        .collect();
    MultiArrangement::normalize(f, 2, raw).unwrap()
}

fn rows2() -> impl Strategy<Value = Vec<Row>> {
    proptest::collection::vec((small(), small(), 1u32..=3), 1..=5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(n in conductor(), a in small(), b in small(), c in small()) {
        let f = field(n);
        let (a, b, c) = (scalar(f, a), scalar(f, b), scalar(f, c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn division_by_linear_form(n in conductor(), g in proptest::collection::vec(small(), 10), l in proptest::collection::vec(small(), 3)) {
        let f = field(n);
        let g = poly(f, 3, &g, 2);
        let alpha = poly(f, 3, &l, 1);
        prop_assume!(!alpha.is_zero());
        let (q, r) = g.divrem_linear(&alpha).unwrap();
        prop_assert_eq!(&(&q * &alpha) + &r, g.clone());
        let sq = &(&g * &alpha) * &alpha;
        prop_assert!(g.is_zero() || sq.power_divides(&alpha, 2).unwrap());
    }

    #[test]
    fn rref_is_idempotent_and_nullspace_is_killed(n in conductor(), entries in proptest::collection::vec(small(), 12)) {
        let f = field(n);
        let rows: Vec<Vec<CycloScalar>> = entries.chunks(4).map(|r| r.iter().map(|c| scalar(f, *c)).collect()).collect();
        let m = ExactMatrix::from_rows(f, 4, rows).unwrap();
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        let ns = m.nullspace();
        prop_assert_eq!(ns.len() + r.rank, 4);
        for v in &ns {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(CycloScalar::is_zero));
        }
    }

    #[test]
    fn normalize_ignores_order_and_scaling(n in conductor(), rows in rows2(), k in small()) {
        let f = field(n);
        let a = plane_arrangement(f, &rows);
        let mut rev = rows.clone();
        rev.reverse();
        prop_assert_eq!(&plane_arrangement(f, &rev), &a);
        let again = MultiArrangement::normalize(f, 2, a.hyperplanes().iter().map(|(h, m)| (h.normal().to_vec(), *m)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(a.defining_polynomial().degree().unwrap_or(0) as u64, a.total_multiplicity());
        let s = scalar(f, k);
        prop_assume!(!s.is_zero());
        let scaled = MultiArrangement::normalize(f, 2, a.hyperplanes().iter().map(|(h, m)| (h.normal().iter().map(|c| c * &s).collect(), *m)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(scaled, a);
    }

    #[test]
    fn graded_pieces_are_members_and_closed(n in conductor(), rows in rows2(), p in 0u32..6, g in proptest::collection::vec(small(), 3)) {
        let f = field(n);
        let a = plane_arrangement(f, &rows);
        let piece = graded_piece(&a, p).unwrap();
        for t in &piece {
            prop_assert!(is_member(t, &a).unwrap().is_member());
        }
        if piece.len() >= 2 {
            let u = poly(f, 2, &g, 1);
            let combo = piece[0].mul_poly(&u).checked_add(&piece[1].mul_poly(&Poly::var(2, f, 0))).unwrap();
            prop_assert!(is_member(&combo, &a).unwrap().is_member());
        }
    }

    #[test]
    fn rank_two_is_always_free(n in conductor(), rows in rows2()) {
        let f = field(n);
        let a = plane_arrangement(f, &rows);
        let out = free_basis_search(&a, &SearchOptions::default()).unwrap();
        let cert = out.certificate().expect("rank 2 arrangements are free");
        prop_assert_eq!(cert.degrees.iter().map(|&d| d as u64).sum::<u64>(), a.total_multiplicity());
        let recheck = saito_check(&cert.basis, &a).unwrap();
        prop_assert_eq!(recheck.exponents(), cert.exponents());
        let top = cert.degrees.iter().max().unwrap() + 3;
        prop_assert!(hilbert_consistency(cert, &a, top).unwrap().consistent());
    }

    #[test]
    fn scaling_a_form_keeps_membership_and_exponents(n in conductor(), rows in rows2(), k in small(), which in 0usize..5) {
        let f = field(n);
        let s = scalar(f, k);
        prop_assume!(!s.is_zero());
        let a = plane_arrangement(f, &rows);
        prop_assume!(a.order() > 0);
        let i = which % a.order();
        let raw: Vec<_> = a.hyperplanes().iter().enumerate().map(|(j, (h, m))| {
            let v = if i == j { h.normal().iter().map(|c| c * &s).collect() } else { h.normal().to_vec() };
            (v, *m)
        }).collect();
        let b = MultiArrangement::normalize(f, 2, raw).unwrap();
        let ea = free_basis_search(&a, &SearchOptions::default()).unwrap();
        let eb = free_basis_search(&b, &SearchOptions::default()).unwrap();
        prop_assert_eq!(ea.exponents(), eb.exponents());
        for t in &ea.certificate().unwrap().basis {
            prop_assert_eq!(is_member(t, &a).unwrap().is_member(), is_member(t, &b).unwrap().is_member());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn product_exponents_are_unions(n in conductor(), r1 in proptest::collection::vec((small(), small(), 1u32..=2), 1..=3), r2 in proptest::collection::vec((small(), small(), 1u32..=2), 1..=3)) {
        let f = field(n);
        let a = plane_arrangement(f, &r1);
        let b = plane_arrangement(f, &r2);
        let ea = free_basis_search(&a, &SearchOptions::default()).unwrap().exponents().unwrap();
        let eb = free_basis_search(&b, &SearchOptions::default()).unwrap().exponents().unwrap();
        let prod = free_basis_search(&a.product(&b).unwrap(), &SearchOptions::default()).unwrap();
        let mut want = [ea, eb].concat();
        want.sort_unstable();
        prop_assert_eq!(prod.exponents(), Some(want));
    }
}

#[test]
fn euler_in_simple_arrangements() {
    let f = field(3);
    let a = plane_arrangement(f, &[((1, 0), (0, 0), 1), ((0, 0), (1, 0), 1), ((1, 0), (0, 1), 1)]);
    assert!(is_member(&Derivation::euler(f, 2), &a).unwrap().is_member());
}
