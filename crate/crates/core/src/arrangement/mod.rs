//! Orbit classes of singular spaces for a dense lattice Γ acting on a hyperplane family.
//!
//! The datum is a field vector space V = K^m, a finitely generated group Γ ⊂ V given by
//! r generators (parametrized by Z^r), and a finite list of hyperplane classes.

mod decompose;
mod enumerate;

use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{
    self, field_dot, integer_kernel, linalg, rational_coordinates, ExactError, FieldElement, FieldVector,
    Lattice, NumberField, RationalMatrix,
};

pub(crate) use enumerate::independent_subsets;
pub use decompose::{indecomposable_components, projected_group, ProjectedGroup};
pub use enumerate::{
    compute_tables, enumerate_level, point_orbits_on, relative_level, ClassId, OrbitTables, Provenance,
    RelativeEntry, RelativeTable, SingularOrbitClass, DEFAULT_SUBSET_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("invalid arrangement: {0}")]
    Invalid(String),
    #[error("normals do not span V")]
    NotSpanning,
    #[error("normals of the chosen subset are not transversal")]
    NotTransversal,
    #[error("infinitely many orbits of singular {level}-spaces (witness subset {subset:?})")]
    InfiniteOrbitSet { level: usize, subset: Vec<usize> },
    #[error("enumeration stopped after {cap} generating subsets; raise the cap to continue")]
    Incomplete { cap: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Where a hyperplane class came from: a subset J of lattice directions or an input row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HyperplaneSource {
    Orientation(Vec<usize>),
    Input(usize),
}

/// One Γ-orbit class of hyperplanes {y : ⟨normal, y⟩ = offset}.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneClass {
    pub normal: FieldVector,
    pub offset: FieldElement,
    pub provenance: Vec<HyperplaneSource>,
}

impl HyperplaneClass {
    /// Normalizes the first nonzero normal coordinate to 1, scaling the offset alike.
    pub fn new(
        normal: FieldVector,
        offset: FieldElement,
        provenance: Vec<HyperplaneSource>,
    ) -> Result<Self, ArrangementError> {
        let lead = normal
            .iter()
            .find(|x| !x.is_zero())
            .ok_or_else(|| ArrangementError::Invalid("hyperplane normal is zero".into()))?
            .inv();
        Ok(HyperplaneClass {
            normal: scale(&normal, &lead),
            offset: &offset * &lead,
            provenance,
        })
    }
}

/// The datum (V, Γ, 𝒲).
#[derive(Clone, Debug)]
pub struct Arrangement {
    field: Arc<NumberField>,
    dim_v: usize,
    gamma: Vec<FieldVector>,
    hyperplanes: Vec<HyperplaneClass>,
}

impl Arrangement {
    /// Validates the datum and merges Γ-equivalent hyperplane classes.
    pub fn new(
        field: Arc<NumberField>,
        dim_v: usize,
        gamma: Vec<FieldVector>,
        hyperplanes: Vec<HyperplaneClass>,
    ) -> Result<Self, ArrangementError> {
        let arr = Self::unchecked(field, dim_v, gamma, hyperplanes)?;
        let m = arr.dim_v;
        if arr.gamma.len() < m {
            return Err(ArrangementError::Invalid(format!("rank of Γ ({}) is below dim V ({m})", arr.gamma.len())));
        }
        if linalg::rank(&arr.gamma) < m {
            return Err(ArrangementError::Invalid("Γ does not span V".into()));
        }
        let normals: Vec<FieldVector> = arr.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        if linalg::rank(&normals) < m {
            return Err(ArrangementError::NotSpanning);
        }
        Ok(arr)
    }

    /// Shape checks, Γ independence over Q and dedupe only; used for induced arrangements.
    pub(crate) fn unchecked(
        field: Arc<NumberField>,
        dim_v: usize,
        gamma: Vec<FieldVector>,
        hyperplanes: Vec<HyperplaneClass>,
    ) -> Result<Self, ArrangementError> {
        if dim_v == 0 {
            return Err(ArrangementError::Invalid("dim V must be positive".into()));
        }
        for g in &gamma {
            if g.len() != dim_v {
                return Err(ArrangementError::Invalid("Γ generator has wrong length".into()));
            }
            if g.iter().any(|x| x.field() != &field) {
                return Err(ArrangementError::Invalid("Γ generator over a different field".into()));
            }
        }
        for h in &hyperplanes {
            if h.normal.len() != dim_v {
                return Err(ArrangementError::Invalid("hyperplane normal has wrong length".into()));
            }
        }
        let expanded: Vec<Vec<BigRational>> = gamma.iter().map(|g| rational_coordinates(g)).collect();
        if exact::span_rank(&expanded) < gamma.len() {
            return Err(ArrangementError::Invalid("Γ generators are rationally dependent".into()));
        }
        let mut arr = Arrangement { field, dim_v, gamma, hyperplanes: Vec::new() };
        for h in hyperplanes {
            arr.insert_class(h);
        }
        if arr.hyperplanes.is_empty() {
            return Err(ArrangementError::Invalid("empty hyperplane family".into()));
        }
        Ok(arr)
    }

    fn insert_class(&mut self, h: HyperplaneClass) {
        let h = HyperplaneClass::new(h.normal, h.offset, h.provenance).expect("nonzero normal");
        let found = self.hyperplanes.iter().position(|e| {
            e.normal == h.normal && self.offset_lattice(&h.normal).contains((&h.offset - &e.offset).coeffs())
        });
        match found {
            Some(i) => {
                let prov = &mut self.hyperplanes[i].provenance;
                for p in h.provenance {
                    if !prov.contains(&p) {
                        prov.push(p);
                    }
                }
            }
            None => self.hyperplanes.push(h),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    /// Number r of Γ generators, equal to rk Γ.
    pub fn rank_gamma(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[FieldVector] {
        &self.gamma
    }

    pub fn hyperplanes(&self) -> &[HyperplaneClass] {
        &self.hyperplanes
    }

    /// ν = rk Γ / dim V.
    pub fn nu(&self) -> BigRational {
        BigRational::new(self.gamma.len().into(), self.dim_v.into())
    }

    pub fn normals(&self) -> Vec<FieldVector> {
        self.hyperplanes.iter().map(|h| h.normal.clone()).collect()
    }

    pub(crate) fn zero(&self) -> FieldElement {
        FieldElement::zero(&self.field)
    }

    /// Image of an integer coefficient vector c under Z^r → Γ.
    pub fn gamma_element(&self, c: &[num_bigint::BigInt]) -> FieldVector {
        let mut out = vec![self.zero(); self.dim_v];
        for (ck, g) in c.iter().zip(&self.gamma) {
            let s = BigRational::from_integer(ck.clone());
            for (o, x) in out.iter_mut().zip(g) {
                *o = &*o + &x.scale(&s);
            }
        }
        out
    }

    /// Lattice {⟨n, γ⟩ : γ ∈ Γ} in expanded coordinates.
    pub fn offset_lattice(&self, normal: &[FieldElement]) -> Lattice {
        self.value_lattice(&[normal.to_vec()])
    }

    /// Lattice of expanded value tuples (⟨w_b, γ⟩)_b for γ ∈ Γ.
    pub fn value_lattice(&self, rows: &[FieldVector]) -> Lattice {
        let gens: Vec<Vec<BigRational>> = self.gamma.iter().map(|g| values(rows, g)).collect();
        Lattice::from_rational_generators(&gens, rows.len() * self.field.degree())
    }

    /// True iff x ∈ Γ + D where D is the common kernel of `rows`.
    pub fn in_gamma_plus(&self, rows: &[FieldVector], x: &[FieldElement]) -> bool {
        self.value_lattice(rows).contains(&values(rows, x))
    }
}

/// Stabilizer {c ∈ Z^r : Σ c_k g_k is annihilated by every normal}, a saturated lattice.
pub fn stabilizer(arr: &Arrangement, normals: &[FieldVector]) -> Lattice {
    let r = arr.rank_gamma();
    if normals.is_empty() {
        return Lattice::standard(r);
    }
    let cols: Vec<Vec<BigRational>> = arr.gamma.iter().map(|g| values(normals, g)).collect();
    let height = cols[0].len();
    let rows = (0..height).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    integer_kernel(&RationalMatrix::from_rows(rows, r))
}

/// Two singular spaces {y : ⟨w, y⟩ = ⟨w, point⟩ for w in normals}.
#[derive(Clone, Debug)]
pub struct SingularSpace {
    pub normals: Vec<FieldVector>,
    pub point: FieldVector,
}

/// Γ-equivalence of singular spaces of the same dimension.
pub fn equivalent(arr: &Arrangement, a: &SingularSpace, b: &SingularSpace) -> bool {
    let ka = direction_key(&a.normals);
    let kb = direction_key(&b.normals);
    if ka != kb {
        return false;
    }
    let diff = sub(&a.point, &b.point);
    arr.in_gamma_plus(&ka, &diff)
}

/// Canonical form of the span of a set of covectors (its reduced row echelon rows).
pub fn direction_key(normals: &[FieldVector]) -> Vec<FieldVector> {
    linalg::rref(normals).0
}

/// Expanded value tuple (⟨w_b, x⟩)_b.
pub(crate) fn values(rows: &[FieldVector], x: &[FieldElement]) -> Vec<BigRational> {
    rows.iter().flat_map(|w| field_dot(w, x).coeffs().to_vec()).collect()
}

pub(crate) fn sub(a: &[FieldElement], b: &[FieldElement]) -> FieldVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[FieldElement], b: &[FieldElement]) -> FieldVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale(a: &[FieldElement], s: &FieldElement) -> FieldVector {
    a.iter().map(|x| x * s).collect()
}

/// The point y in the span of `normals` with ⟨n_i, y⟩ = v_i.
pub(crate) fn gram_solve(normals: &[FieldVector], v: &[FieldElement], zero: &FieldElement) -> Option<FieldVector> {
    let gram: Vec<FieldVector> = normals
        .iter()
        .map(|a| normals.iter().map(|b| field_dot(a, b)).collect())
        .collect();
    let beta = linalg::solve(&gram, v, zero)?;
    let dim = normals.first().map_or(0, Vec::len);
    let mut y = vec![zero.clone(); dim];
    for (b, n) in beta.iter().zip(normals) {
        y = add(&y, &scale(n, b));
    }
    Some(y)
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use num_bigint::BigInt;

    pub fn golden() -> Arc<NumberField> {
        NumberField::new(
            vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)],
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer(1.into()),
        )
        .unwrap()
    }

    /// Element a + b·τ.
    pub fn el(f: &Arc<NumberField>, a: i64, b: i64) -> FieldElement {
        FieldElement::from_coeffs(f, vec![BigRational::from_integer(a.into()), BigRational::from_integer(b.into())])
    }

    pub fn cross(a: &[FieldElement], b: &[FieldElement]) -> FieldVector {
        vec![
            &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
            &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
            &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
        ]
    }

    /// The icosahedral datum: six generators and the fifteen planes they span pairwise.
    pub fn ammann_kramer() -> Arrangement {
        let f = golden();
        let raw = [
            [(0, 1), (1, 0), (0, 0)],
            [(0, -1), (1, 0), (0, 0)],
            [(0, 0), (0, 1), (-1, 0)],
            [(0, 0), (0, 1), (1, 0)],
            [(1, 0), (0, 0), (0, -1)],
            [(1, 0), (0, 0), (0, 1)],
        ];
        let gens: Vec<FieldVector> =
            raw.iter().map(|g| g.iter().map(|&(a, b)| el(&f, a, b)).collect()).collect();
        let mut planes = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                let n = cross(&gens[i], &gens[j]);
                planes.push(
                    HyperplaneClass::new(n, FieldElement::zero(&f), vec![HyperplaneSource::Orientation(vec![i, j])])
                        .unwrap(),
                );
            }
        }
        Arrangement::new(f, 3, gens, planes).unwrap()
    }
}
