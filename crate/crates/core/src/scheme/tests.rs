use num_bigint::BigInt;

use super::*;
use crate::arrangement::stabilizer;
use crate::invariants::analyze;
use crate::test_schemes::*;

#[test]
fn ammann_kramer_scheme_reproduces_the_arrangement() {
    let s = ammann_kramer();
    validate_scheme(&s).unwrap();
    let data = derive_internal(&s).unwrap();
    assert_eq!((data.rk_delta, data.dim_v, data.rank_gamma), (0, 3, 6));
    assert_eq!(data.nu, q(2, 1));
    let o = enumerate_orientations(&s, &data).unwrap();
    assert_eq!(o.meeting_v.len(), 15);
    let arr = to_arrangement(&s, &data).unwrap();
    assert_eq!(arr.hyperplanes().len(), 15);
    let a = analyze(&arr, crate::arrangement::DEFAULT_SUBSET_CAP).unwrap();
    let d: Vec<i64> = a.report.d.iter().map(|x| x.try_into().unwrap()).collect();
    assert_eq!(d, vec![180, 71, 12, 1]);
}

#[test]
fn ammann_kramer_window_has_thirty_faces() {
    let s = ammann_kramer();
    let data = derive_internal(&s).unwrap();
    let z = Zonotope::from_functionals(&data.e_perp, s.n).unwrap();
    assert_eq!(z.facet_count(), 30);
}

#[test]
fn penrose_internal_data() {
    let s = penrose();
    validate_scheme(&s).unwrap();
    let data = derive_internal(&s).unwrap();
    assert_eq!(data.delta.basis(), &[vec![BigInt::from(1); 5]]);
    assert_eq!((data.dim_v, data.rank_gamma), (2, 4));
    let o = enumerate_orientations(&s, &data).unwrap();
    assert_eq!(o.all.len(), 10);
    let arr = to_arrangement(&s, &data).unwrap();
    for h in arr.hyperplanes() {
        assert_eq!(stabilizer(&arr, std::slice::from_ref(&h.normal)).rank(), 2);
    }
}

#[test]
fn octagonal_internal_data() {
    let s = octagonal();
    validate_scheme(&s).unwrap();
    let data = derive_internal(&s).unwrap();
    assert_eq!((data.rk_delta, data.dim_v, data.rank_gamma), (0, 2, 4));
    let arr = to_arrangement(&s, &data).unwrap();
    assert_eq!(arr.hyperplanes().len(), 4);
    for h in arr.hyperplanes() {
        assert_eq!(stabilizer(&arr, std::slice::from_ref(&h.normal)).rank(), 2);
    }
}

#[test]
fn generic_cubic_scheme() {
    let s = generic5();
    validate_scheme(&s).unwrap();
    let data = derive_internal(&s).unwrap();
    assert_eq!((data.rk_delta, data.dim_v, data.rank_gamma), (0, 3, 5));
}

#[test]
fn rational_direction_is_rejected() {
    let f = golden();
    let rows: &[&[&[i64]]] = &[&[&[1], &[0]], &[&[0], &[1]], &[&[0], &[0, 1]]];
    let s = scheme(&f, rows, small_offset(&f, 3));
    assert!(matches!(validate_scheme(&s), Err(SchemeError::RationalDirection(_))));
}

#[test]
fn empty_window_is_rejected() {
    // E is orthogonal to e_1, so the slice through an integral first coordinate misses Int K.
    let f = golden();
    let rows: &[&[&[i64]]] = &[&[&[0]], &[&[1]], &[&[0, 1]]];
    let mut u = small_offset(&f, 3);
    u[0] = FieldElement::from_int(&f, 2);
    let s = scheme(&f, rows, u.clone());
    assert_eq!(validate_scheme(&s), Err(SchemeError::EmptyWindow));
    u[0] = FieldElement::from_rational(&f, q(1, 3));
    assert!(validate_scheme(&s.with_offset(u)).is_ok());
}

#[test]
fn fibonacci_codim1_path() {
    let s = fibonacci();
    validate_scheme(&s).unwrap();
    let data = derive_internal(&s).unwrap();
    let dom = codim1_domain(&s, &data).unwrap();
    assert_eq!(codim1_orbit_count(&dom), 1);
    assert_eq!(dom.rank(), 2);
}

#[test]
fn hyperplane_classes_do_not_depend_on_offset_when_delta_is_trivial() {
    let s = octagonal();
    let f = s.field.clone();
    let other = s.with_offset((0..4).map(|i| FieldElement::from_rational(&f, q(3 + i, 41))).collect());
    let a = to_arrangement(&s, &derive_internal(&s).unwrap()).unwrap();
    let b = to_arrangement(&other, &derive_internal(&other).unwrap()).unwrap();
    assert_eq!(a.hyperplanes().len(), b.hyperplanes().len());
    for (x, y) in a.hyperplanes().iter().zip(b.hyperplanes()) {
        assert_eq!(x.normal, y.normal);
    }
}

#[test]
fn normals_are_orthogonal_to_their_planes() {
    let s = penrose();
    let data = derive_internal(&s).unwrap();
    let o = enumerate_orientations(&s, &data).unwrap();
    for &i in &o.meeting_v {
        let orient = &o.all[i];
        for &j in &orient.subset {
            let face = data.perp(&unit(&s.field, s.n, j));
            assert!(field_dot(&orient.functional, &face).is_zero());
        }
    }
}
