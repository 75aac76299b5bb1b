//! Exact integer, rational and number-field arithmetic with lattice linear algebra.

mod field;
pub mod linalg;
mod lattice;
mod matrix;
mod normal_form;
mod poly;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use field::{field_sign, FieldElement, NumberField, DEFAULT_BISECTION_CAP};
pub use lattice::{coset_representatives, integer_kernel, is_unimodular, subgroup_index, Index, Lattice};
pub use linalg::{span_rank, Scalar};
pub use matrix::{FieldMatrix, IntegerMatrix, Matrix, RationalMatrix};
pub use normal_form::{determinant, hnf, snf};

/// A vector of number-field elements (one coordinate per entry).
pub type FieldVector = Vec<FieldElement>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("sign undecided after {0} root-interval bisections")]
    RefinementBudgetExceeded(u32),
    #[error("sublattice is not contained in the claimed supergroup")]
    NotASubgroup,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Expands each field coordinate into its power-basis rational coefficients.
pub fn rational_coordinates(v: &[FieldElement]) -> Vec<BigRational> {
    v.iter().flat_map(|x| x.coeffs().iter().cloned()).collect()
}

/// k×k minors of the k input vectors over lexicographically ordered column subsets.
pub fn wedge_coordinates(vs: &[Vec<BigInt>]) -> Result<Vec<BigInt>, ExactError> {
    let k = vs.len();
    let Some(r) = vs.first().map(Vec::len) else {
        return Ok(vec![BigInt::from(1)]);
    };
    if vs.iter().any(|v| v.len() != r) {
        return Err(ExactError::DimensionMismatch("wedge factors of unequal length".into()));
    }
    if k > r {
        return Err(ExactError::DimensionMismatch(format!("cannot wedge {k} vectors in dimension {r}")));
    }
    Ok((0..r)
        .combinations(k)
        .map(|cols| {
            let minor = IntegerMatrix::from_rows(
                vs.iter().map(|v| cols.iter().map(|&c| v[c].clone()).collect()).collect(),
                k,
            );
            determinant(&minor)
        })
        .collect())
}

/// Dot product of two field vectors.
pub fn field_dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let zero = FieldElement::zero(a.first().expect("nonempty vectors").field());
    linalg::dot(a, b, &zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge_coordinates(&[zv(&[1, 0, 0]), zv(&[0, 1, 0])]).unwrap(), zv(&[1, 0, 0]));
        assert_eq!(wedge_coordinates(&[zv(&[0, 1, 0]), zv(&[1, 0, 0])]).unwrap(), zv(&[-1, 0, 0]));
        assert_eq!(wedge_coordinates(&[zv(&[1, 1, 0]), zv(&[0, 1, 1])]).unwrap(), zv(&[1, 1, 1]));
        assert!(wedge_coordinates(&[zv(&[1]), zv(&[1])]).is_err());
    }

    #[test]
    fn rational_coordinates_examples() {
        let f = NumberField::new(
            vec![(-1).into(), 1.into(), 1.into()],
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer(1.into()),
        )
        .unwrap();
        let t = FieldElement::generator(&f);
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(rational_coordinates(&[t.clone()]), vec![q(0), q(1)]);
        let v = vec![&FieldElement::one(&f) + &t.scale(&q(2)), FieldElement::from_int(&f, 3)];
        assert_eq!(rational_coordinates(&v), vec![q(1), q(2), q(3), q(0)]);
        assert_eq!(rational_coordinates(&[FieldElement::zero(&f)]), vec![q(0), q(0)]);
    }
}
