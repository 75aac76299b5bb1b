use crate::exact::{rational_coordinates, FieldElement, Lattice};

use super::SchemeError;

/// A finite union of closed intervals on the internal line, with the translation group
/// generated by `generators` (the internal images of the lattice basis).
#[derive(Clone, Debug, PartialEq)]
pub struct Codim1Domain {
    pub generators: Vec<FieldElement>,
    /// Ascending endpoints p_1 < p_2 < …; consecutive pairs are the intervals.
    pub endpoints: Vec<FieldElement>,
}

impl Codim1Domain {
    pub fn new(generators: Vec<FieldElement>, endpoints: Vec<FieldElement>) -> Result<Self, SchemeError> {
        if generators.is_empty() {
            return Err(SchemeError::Invalid("codimension-one domain needs at least one generator".into()));
        }
        if endpoints.is_empty() || endpoints.len() % 2 != 0 {
            return Err(SchemeError::Invalid("endpoints must come in pairs".into()));
        }
        for w in endpoints.windows(2) {
            if (&w[1] - &w[0]).sign()? <= 0 {
                return Err(SchemeError::Invalid("endpoints must be strictly ascending".into()));
            }
        }
        Ok(Codim1Domain { generators, endpoints })
    }

    /// Rank of the translation group over Z.
    pub fn rank(&self) -> usize {
        self.group().rank()
    }

    fn group(&self) -> Lattice {
        let gens: Vec<_> = self.generators.iter().map(|g| rational_coordinates(std::slice::from_ref(g))).collect();
        Lattice::from_rational_generators(&gens, gens[0].len())
    }
}

/// Number of orbits of the endpoint set under translation by the generated group.
pub fn codim1_orbit_count(dom: &Codim1Domain) -> usize {
    let group = dom.group();
    let mut reps: Vec<&FieldElement> = Vec::new();
    for p in &dom.endpoints {
        let known = reps.iter().any(|r| group.contains(&rational_coordinates(&[p - *r])));
        if !known {
            reps.push(p);
        }
    }
    reps.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::NumberField;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use std::sync::Arc;

    fn golden() -> Arc<NumberField> {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        NumberField::new(vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)], q(1, 2), q(1, 1)).unwrap()
    }

    fn el(f: &Arc<NumberField>, a: (i64, i64), b: (i64, i64)) -> FieldElement {
        let q = |(n, d): (i64, i64)| BigRational::new(n.into(), d.into());
        FieldElement::from_coeffs(f, vec![q(a), q(b)])
    }

    #[test]
    fn orbit_counts() {
        let f = golden();
        let gens = vec![el(&f, (1, 1), (0, 1)), el(&f, (0, 1), (1, 1))];
        let one_tau = el(&f, (1, 1), (1, 1));
        let canonical = Codim1Domain::new(gens.clone(), vec![FieldElement::zero(&f), one_tau.clone()]).unwrap();
        assert_eq!(codim1_orbit_count(&canonical), 1);
        let half = el(&f, (1, 2), (0, 1));
        let split = Codim1Domain::new(gens.clone(), vec![FieldElement::zero(&f), half]).unwrap();
        assert_eq!(codim1_orbit_count(&split), 2);
        let unit = Codim1Domain::new(gens, vec![FieldElement::zero(&f), FieldElement::one(&f)]).unwrap();
        assert_eq!(codim1_orbit_count(&unit), 1);
        assert_eq!(unit.rank(), 2);
    }

    #[test]
    fn rejects_unsorted_endpoints() {
        let f = golden();
        let gens = vec![FieldElement::one(&f)];
        assert!(Codim1Domain::new(gens.clone(), vec![FieldElement::one(&f), FieldElement::zero(&f)]).is_err());
        assert!(Codim1Domain::new(gens, vec![FieldElement::one(&f)]).is_err());
    }
}
