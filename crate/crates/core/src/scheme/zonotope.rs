use itertools::Itertools;

use crate::exact::{field_dot, linalg, ExactError, FieldElement, FieldVector};

/// A pair of parallel supporting hyperplanes lo ≤ ⟨normal, x⟩ ≤ hi.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    /// Functional on the ambient R^N, first nonzero coordinate equal to 1.
    pub normal: FieldVector,
    /// The same functional as a combination of the defining rows.
    pub coeffs: FieldVector,
    pub lo: FieldElement,
    pub hi: FieldElement,
    /// Coordinate subsets J whose generators span this facet direction.
    pub subsets: Vec<Vec<usize>>,
}

/// Where a point sits relative to a zonotope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Position {
    Outside,
    /// On the boundary; lists the facet pairs with a tight inequality.
    Boundary(Vec<usize>),
    Interior,
}

/// Image of the unit cube [0,1]^N under x ↦ (⟨r_a, x⟩)_a, in H-representation.
///
/// Membership is tested on ambient points x ∈ R^N through the facet functionals, which
/// lie in the span of the rows, so only the image of x matters.
#[derive(Clone, Debug, PartialEq)]
pub struct Zonotope {
    pub ambient: usize,
    pub facets: Vec<Facet>,
}

impl Zonotope {
    /// `rows` must be linearly independent vectors of length `ambient`.
    pub fn from_functionals(rows: &[FieldVector], ambient: usize) -> Result<Self, ExactError> {
        let k = rows.len();
        let Some(zero) = rows.first().map(|r| FieldElement::zero(r[0].field())) else {
            return Ok(Zonotope { ambient, facets: Vec::new() });
        };
        let mut facets: Vec<Facet> = Vec::new();
        for subset in (0..ambient).combinations(k - 1) {
            // c with Σ_a c_a r_a vanishing on every coordinate in the subset.
            let eqs: Vec<FieldVector> = subset.iter().map(|&j| rows.iter().map(|r| r[j].clone()).collect()).collect();
            let null = linalg::nullspace(&eqs, k, &zero);
            if null.len() != 1 {
                continue;
            }
            let mut coeffs = null.into_iter().next().expect("one vector");
            let mut normal: FieldVector =
                (0..ambient).map(|i| field_dot(&coeffs, &rows.iter().map(|r| r[i].clone()).collect::<Vec<_>>())).collect();
            let lead = normal.iter().find(|x| !x.is_zero()).expect("rows are independent").inv();
            normal = normal.iter().map(|x| x * &lead).collect();
            coeffs = coeffs.iter().map(|x| x * &lead).collect();
            if let Some(f) = facets.iter_mut().find(|f| f.normal == normal) {
                f.subsets.push(subset);
                continue;
            }
            let (mut lo, mut hi) = (zero.clone(), zero.clone());
            for x in &normal {
                match x.sign()? {
                    1 => hi = &hi + x,
                    -1 => lo = &lo + x,
                    _ => {}
                }
            }
            facets.push(Facet { normal, coeffs, lo, hi, subsets: vec![subset] });
        }
        Ok(Zonotope { ambient, facets })
    }

    /// Number of facets (two per normal direction).
    pub fn facet_count(&self) -> usize {
        2 * self.facets.len()
    }

    /// Exact position of the ambient point x.
    pub fn locate(&self, x: &[FieldElement]) -> Result<Position, ExactError> {
        let mut tight = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let v = field_dot(&f.normal, x);
            let below = (&v - &f.lo).sign()?;
            let above = (&f.hi - &v).sign()?;
            if below < 0 || above < 0 {
                return Ok(Position::Outside);
            }
            if below == 0 || above == 0 {
                tight.push(i);
            }
        }
        Ok(if tight.is_empty() { Position::Interior } else { Position::Boundary(tight) })
    }

    /// Position of a point given by its row values t = (⟨r_a, x⟩)_a.
    pub fn locate_values(&self, t: &[FieldElement]) -> Result<Position, ExactError> {
        let mut tight = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let v = field_dot(&f.coeffs, t);
            let below = (&v - &f.lo).sign()?;
            let above = (&f.hi - &v).sign()?;
            if below < 0 || above < 0 {
                return Ok(Position::Outside);
            }
            if below == 0 || above == 0 {
                tight.push(i);
            }
        }
        Ok(if tight.is_empty() { Position::Interior } else { Position::Boundary(tight) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::NumberField;
    use num_rational::BigRational;
    use std::sync::Arc;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn row(f: &Arc<NumberField>, v: &[i64]) -> FieldVector {
        v.iter().map(|&x| FieldElement::from_int(f, x)).collect()
    }

    #[test]
    fn hexagon_from_three_generators() {
        // Kernel of (1,1,1) projects the unit cube onto a hexagon.
        let f = q();
        let z = Zonotope::from_functionals(&[row(&f, &[1, -1, 0]), row(&f, &[1, 0, -1])], 3).unwrap();
        assert_eq!(z.facet_count(), 6);
        // The generators sum to zero, so the origin is the centre and e_1 maps to a vertex.
        assert_eq!(z.locate(&row(&f, &[0, 0, 0])).unwrap(), Position::Interior);
        assert!(matches!(z.locate(&row(&f, &[1, 0, 0])).unwrap(), Position::Boundary(t) if t.len() == 2));
        assert_eq!(z.locate(&row(&f, &[2, 0, 0])).unwrap(), Position::Outside);
    }

    #[test]
    fn interval_from_one_functional() {
        let f = q();
        let z = Zonotope::from_functionals(&[row(&f, &[2, -1])], 2).unwrap();
        assert_eq!(z.facet_count(), 2);
        assert_eq!(z.facets[0].lo, FieldElement::from_rational(&f, BigRational::new((-1).into(), 2.into())));
        assert_eq!(z.facets[0].hi, FieldElement::from_int(&f, 1));
    }
}
