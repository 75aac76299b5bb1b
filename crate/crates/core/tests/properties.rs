use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qcohom::battery::check_matrix;
use qcohom::exact::{FieldElement, IntegerMatrix, NumberField};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn golden() -> Arc<NumberField> {
    NumberField::new(vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)], q(1, 2), q(1, 1)).unwrap()
}

fn cube_root_two() -> Arc<NumberField> {
    NumberField::new(vec![BigInt::from(-2), BigInt::from(0), BigInt::from(0), BigInt::from(1)], q(1, 1), q(2, 1)).unwrap()
}

fn element(f: &Arc<NumberField>, c: &[(i64, i64)]) -> FieldElement {
    FieldElement::from_coeffs(f, c.iter().take(f.degree()).map(|&(n, d)| q(n, d)).collect())
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-30i64..=30, 1i64..=12), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in coeffs(), b in coeffs(), c in coeffs(), cubic in any::<bool>()) {
        let f = if cubic { cube_root_two() } else { golden() };
        let (a, b, c) = (element(&f, &a), element(&f, &b), element(&f, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn exact_sign_agrees_with_floating_point(a in coeffs(), cubic in any::<bool>()) {
        let f = if cubic { cube_root_two() } else { golden() };
        let x = element(&f, &a);
        let approx = x.to_f64();
        let s = x.sign().unwrap();
        if approx.abs() > 1e-9 {
            prop_assert_eq!(s, if approx > 0.0 { 1 } else { -1 });
        }
        prop_assert_eq!(s == 0, x.is_zero());
    }

    #[test]
    fn ordering_is_translation_invariant(a in coeffs(), b in coeffs(), c in coeffs()) {
        let f = golden();
        let (a, b, c) = (element(&f, &a), element(&f, &b), element(&f, &c));
        prop_assert_eq!(a.cmp_real(&b).unwrap(), (&a + &c).cmp_real(&(&b + &c)).unwrap());
    }

    #[test]
    fn normal_form_identities(rows in 1usize..=6, cols in 1usize..=6, seed in prop::collection::vec(-20i64..=20, 36)) {
        let data: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(seed[i * 6 + j])).collect()).collect();
        let m = IntegerMatrix::from_rows(data, cols);
        let w = IntegerMatrix::identity(rows);
        let bad = check_matrix(&m, &w);
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }
}
