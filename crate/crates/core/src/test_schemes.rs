//! Projection schemes shared by unit tests.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exact::{FieldElement, FieldVector, NumberField};
use crate::scheme::ProjectionScheme;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn golden() -> Arc<NumberField> {
    NumberField::new(vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)], q(1, 2), q(1, 1)).unwrap()
}

pub fn sqrt2() -> Arc<NumberField> {
    NumberField::new(vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)], q(1, 1), q(2, 1)).unwrap()
}

pub fn cbrt2() -> Arc<NumberField> {
    NumberField::new(vec![BigInt::from(-2), BigInt::from(0), BigInt::from(0), BigInt::from(1)], q(1, 1), q(2, 1))
        .unwrap()
}

/// Element from power-basis integer coefficients.
pub fn el(f: &Arc<NumberField>, c: &[i64]) -> FieldElement {
    FieldElement::from_coeffs(f, c.iter().map(|&x| q(x, 1)).collect())
}

pub fn scheme(f: &Arc<NumberField>, rows: &[&[&[i64]]], u: FieldVector) -> ProjectionScheme {
    let e_basis: Vec<FieldVector> = rows.iter().map(|r| r.iter().map(|c| el(f, c)).collect()).collect();
    ProjectionScheme { n: e_basis.len(), d: e_basis[0].len(), field: f.clone(), e_basis, u, label: String::new() }
}

pub fn small_offset(f: &Arc<NumberField>, n: usize) -> FieldVector {
    (0..n).map(|i| FieldElement::from_rational(f, q(1 + 2 * i as i64, 97 + 10 * i as i64))).collect()
}

pub fn ammann_kramer() -> ProjectionScheme {
    let f = golden();
    // τ' = −1 − τ is the Galois conjugate of τ.
    let t: &[i64] = &[-1, -1];
    let mt: &[i64] = &[1, 1];
    let rows: &[&[&[i64]]] = &[
        &[t, &[1], &[0]],
        &[mt, &[1], &[0]],
        &[&[0], t, &[-1]],
        &[&[0], t, &[1]],
        &[&[1], &[0], mt],
        &[&[1], &[0], t],
    ];
    let u = small_offset(&f, 6);
    scheme(&f, rows, u)
}

pub fn penrose() -> ProjectionScheme {
    let f = golden();
    let rows: &[&[&[i64]]] =
        &[&[&[2], &[0]], &[&[0, 1], &[1]], &[&[-1, -1], &[0, 1]], &[&[-1, -1], &[0, -1]], &[&[0, 1], &[-1]]];
    let u = small_offset(&f, 5);
    scheme(&f, rows, u)
}

pub fn octagonal() -> ProjectionScheme {
    let f = sqrt2();
    let rows: &[&[&[i64]]] = &[&[&[2], &[0]], &[&[0, 1], &[0, 1]], &[&[0], &[2]], &[&[0, -1], &[0, 1]]];
    let u = small_offset(&f, 4);
    scheme(&f, rows, u)
}

pub fn generic5() -> ProjectionScheme {
    let f = cbrt2();
    let rows: &[&[&[i64]]] =
        &[&[&[1], &[0]], &[&[0, 1], &[1]], &[&[0, 0, 1], &[0, 1]], &[&[0], &[0, 0, 1]], &[&[1], &[0, 1]]];
    let u = small_offset(&f, 5);
    scheme(&f, rows, u)
}

pub fn fibonacci() -> ProjectionScheme {
    let f = golden();
    let rows: &[&[&[i64]]] = &[&[&[1]], &[&[0, 1]]];
    let u = small_offset(&f, 2);
    scheme(&f, rows, u)
}
