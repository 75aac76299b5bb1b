//! Projection schemes (E, K, u) with canonical window: validation, the internal datum
//! (V, Γ, Δ, ν), the finite hyperplane family and the codimension-one path.

mod codim1;
mod zonotope;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, HyperplaneClass, HyperplaneSource};
use crate::exact::{
    coset_representatives, field_dot, integer_kernel, linalg, rational_coordinates, ExactError, FieldElement,
    FieldVector, Lattice, NumberField, RationalMatrix,
};

pub use codim1::{codim1_orbit_count, Codim1Domain};
pub use zonotope::{Facet, Position, Zonotope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("invalid scheme: {0}")]
    Invalid(String),
    #[error("the physical space contains the lattice vector {0:?}")]
    RationalDirection(Vec<BigInt>),
    #[error("the window meets no slice through the offset")]
    EmptyWindow,
    #[error("orientation {subset:?} gives infinitely many hyperplane classes")]
    InfiniteFamily { subset: Vec<usize> },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// Cut-and-project data with the canonical window K = π⊥([0,1]^N).
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionScheme {
    pub n: usize,
    pub d: usize,
    pub field: Arc<NumberField>,
    /// N rows of length d; the columns span E.
    pub e_basis: Vec<FieldVector>,
    pub u: FieldVector,
    pub label: String,
}

impl ProjectionScheme {
    /// The d spanning vectors of E as ambient N-vectors.
    pub fn e_columns(&self) -> Vec<FieldVector> {
        (0..self.d).map(|c| self.e_basis.iter().map(|row| row[c].clone()).collect()).collect()
    }

    fn zero(&self) -> FieldElement {
        FieldElement::zero(&self.field)
    }

    /// Same scheme with another offset.
    pub fn with_offset(&self, u: FieldVector) -> Self {
        ProjectionScheme { u, ..self.clone() }
    }
}

/// Derived internal datum.
#[derive(Clone, Debug)]
pub struct InternalData {
    /// Δ = E⊥ ∩ Z^N.
    pub delta: Lattice,
    pub rk_delta: usize,
    /// Field basis of E⊥ as ambient vectors.
    pub e_perp: Vec<FieldVector>,
    /// Orthogonal (unnormalized) basis v_b of V = (span Δ)⊥ ∩ E⊥.
    pub v_basis: Vec<FieldVector>,
    /// Orthogonal projection π onto E as an N×N matrix.
    pub proj_e: Vec<FieldVector>,
    /// {z ∈ Z^N : z ⊥ Δ}, the lattice whose images form Γ.
    pub gamma_lattice: Lattice,
    /// Images of the basis of `gamma_lattice` in V-coordinates.
    pub gamma_generators: Vec<FieldVector>,
    pub dim_v: usize,
    pub rank_gamma: usize,
    pub nu: BigRational,
}

impl InternalData {
    /// Coordinates (⟨x, v_b⟩ / ⟨v_b, v_b⟩)_b of the orthogonal projection of x onto V.
    pub fn v_coordinates(&self, x: &[FieldElement]) -> FieldVector {
        self.v_basis.iter().map(|v| &field_dot(x, v) * &field_dot(v, v).inv()).collect()
    }

    /// π⊥(x) = x − π(x).
    pub fn perp(&self, x: &[FieldElement]) -> FieldVector {
        x.iter().zip(&self.proj_e).map(|(xi, row)| xi - &field_dot(row, x)).collect()
    }
}

fn unit(field: &Arc<NumberField>, n: usize, i: usize) -> FieldVector {
    (0..n).map(|j| if i == j { FieldElement::one(field) } else { FieldElement::zero(field) }).collect()
}

/// Integer vectors z with ⟨z, w⟩ = 0 for every row w.
fn integer_annihilator(rows: &[FieldVector], n: usize) -> Lattice {
    let deg = rows.first().map_or(1, |r| r[0].field().degree());
    let mut eqs = Vec::with_capacity(rows.len() * deg);
    for w in rows {
        for slot in 0..deg {
            eqs.push(w.iter().map(|x| x.coeffs()[slot].clone()).collect());
        }
    }
    integer_kernel(&RationalMatrix::from_rows(eqs, n))
}

fn check_shape(s: &ProjectionScheme) -> Result<(), SchemeError> {
    if s.d == 0 || s.d >= s.n {
        return Err(SchemeError::Invalid(format!("need 1 <= d < N, got d = {}, N = {}", s.d, s.n)));
    }
    if s.e_basis.len() != s.n || s.e_basis.iter().any(|r| r.len() != s.d) {
        return Err(SchemeError::Invalid("E basis must be an N x d array".into()));
    }
    if s.u.len() != s.n {
        return Err(SchemeError::Invalid("offset must have N entries".into()));
    }
    let same_field = s.e_basis.iter().flatten().chain(&s.u).all(|x| x.field() == &s.field);
    if !same_field {
        return Err(SchemeError::Invalid("entries over a different field".into()));
    }
    if linalg::rank(&s.e_columns()) != s.d {
        return Err(SchemeError::Invalid("columns of the E basis are dependent".into()));
    }
    Ok(())
}

fn e_perp_basis(s: &ProjectionScheme) -> Vec<FieldVector> {
    linalg::nullspace(&s.e_columns(), s.n, &s.zero())
}

/// True iff some lattice translate of the offset meets the interior of K within its slice.
///
/// The slices are the cosets of (span Δ)⊥; on span Δ the window is the zonotope D·[0,1]^N
/// where D has a Z-basis of Δ as rows, and D·Z^N = Z^k because Δ is saturated.
fn window_meets_slice(s: &ProjectionScheme, delta: &Lattice) -> Result<bool, SchemeError> {
    if delta.rank() == 0 {
        return Ok(true);
    }
    let rows: Vec<FieldVector> = delta
        .basis()
        .iter()
        .map(|b| b.iter().map(|x| FieldElement::from_rational(&s.field, BigRational::from_integer(x.clone()))).collect())
        .collect();
    let zono = Zonotope::from_functionals(&rows, s.n)?;
    let t0: FieldVector = rows.iter().map(|r| field_dot(r, &s.u)).collect();
    let ranges: Vec<(i64, i64)> = delta
        .basis()
        .iter()
        .zip(&t0)
        .map(|(b, t)| {
            let lo: i64 = b.iter().map(|x| x.to_i64().unwrap_or(0).min(0)).sum();
            let hi: i64 = b.iter().map(|x| x.to_i64().unwrap_or(0).max(0)).sum();
            let tf = t.to_f64();
            ((lo as f64 - tf).floor() as i64 - 1, (hi as f64 - tf).ceil() as i64 + 1)
        })
        .collect();
    let mut p: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let t: FieldVector = t0.iter().zip(&p).map(|(t, &pi)| t + &FieldElement::from_int(&s.field, pi)).collect();
        if zono.locate_values(&t)? == Position::Interior {
            return Ok(true);
        }
        let mut pos = 0;
        loop {
            if pos == p.len() {
                return Ok(false);
            }
            p[pos] += 1;
            if p[pos] <= ranges[pos].1 {
                break;
            }
            p[pos] = ranges[pos].0;
            pos += 1;
        }
    }
}

/// Checks shape, irrationality of E (E ∩ Z^N = 0) and that the window is not empty.
pub fn validate_scheme(s: &ProjectionScheme) -> Result<(), SchemeError> {
    check_shape(s)?;
    let in_e = integer_annihilator(&e_perp_basis(s), s.n);
    if let Some(z) = in_e.basis().first() {
        return Err(SchemeError::RationalDirection(z.clone()));
    }
    let delta = integer_annihilator(&s.e_columns(), s.n);
    if !window_meets_slice(s, &delta)? {
        return Err(SchemeError::EmptyWindow);
    }
    Ok(())
}

/// Orthogonal basis by Gram–Schmidt without normalization.
fn gram_schmidt(vs: &[FieldVector]) -> Vec<FieldVector> {
    let mut out: Vec<FieldVector> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for b in &out {
            let c = &field_dot(&w, b) * &field_dot(b, b).inv();
            w = w.iter().zip(b).map(|(x, y)| x - &(&c * y)).collect();
        }
        if w.iter().any(|x| !x.is_zero()) {
            out.push(w);
        }
    }
    out
}

/// Derives Δ, V, Γ and ν from a validated scheme.
pub fn derive_internal(s: &ProjectionScheme) -> Result<InternalData, SchemeError> {
    check_shape(s)?;
    let zero = s.zero();
    let cols = s.e_columns();
    let e_perp = e_perp_basis(s);
    let delta = integer_annihilator(&cols, s.n);
    let rk_delta = delta.rank();
    let delta_rows: Vec<FieldVector> = delta
        .basis()
        .iter()
        .map(|b| b.iter().map(|x| FieldElement::from_rational(&s.field, BigRational::from_integer(x.clone()))).collect())
        .collect();
    let mut constraints = cols.clone();
    constraints.extend(delta_rows.iter().cloned());
    let v_basis = gram_schmidt(&linalg::nullspace(&constraints, s.n, &zero));
    let dim_v = v_basis.len();
    if dim_v == 0 {
        return Err(SchemeError::Invalid("internal space V is trivial".into()));
    }
    if dim_v + s.d + rk_delta != s.n {
        return Err(SchemeError::Inconsistent(format!(
            "dim V = {dim_v}, d = {}, rk Delta = {rk_delta} do not add up to N = {}",
            s.d, s.n
        )));
    }
    let gram: Vec<FieldVector> = cols.iter().map(|a| cols.iter().map(|b| field_dot(a, b)).collect()).collect();
    let ginv = linalg::inverse(&gram, &zero).ok_or_else(|| SchemeError::Invalid("degenerate E basis".into()))?;
    // P = E (EᵀE)⁻¹ Eᵀ with E the N×d basis matrix.
    let proj_e: Vec<FieldVector> = (0..s.n)
        .map(|i| {
            (0..s.n)
                .map(|j| {
                    let mut acc = zero.clone();
                    for a in 0..s.d {
                        for b in 0..s.d {
                            acc = &acc + &(&(&s.e_basis[i][a] * &ginv[a][b]) * &s.e_basis[j][b]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let gamma_lattice = if rk_delta == 0 {
        Lattice::standard(s.n)
    } else {
        integer_kernel(&RationalMatrix::from_rows(
            delta.basis().iter().map(|b| b.iter().cloned().map(BigRational::from_integer).collect()).collect(),
            s.n,
        ))
    };
    let mut data = InternalData {
        delta,
        rk_delta,
        e_perp,
        v_basis,
        proj_e,
        gamma_lattice,
        gamma_generators: Vec::new(),
        dim_v,
        rank_gamma: 0,
        nu: BigRational::from_integer(0.into()),
    };
    let generators: Vec<FieldVector> = data
        .gamma_lattice
        .basis()
        .iter()
        .map(|z| {
            let zf: FieldVector =
                z.iter().map(|x| FieldElement::from_rational(&s.field, BigRational::from_integer(x.clone()))).collect();
            data.v_coordinates(&zf)
        })
        .collect();
    let expanded: Vec<Vec<BigRational>> = generators.iter().map(|g| rational_coordinates(g)).collect();
    if linalg::span_rank(&expanded) != generators.len() {
        return Err(SchemeError::Inconsistent("projected lattice generators are rationally dependent".into()));
    }
    data.rank_gamma = generators.len();
    data.nu = BigRational::new(generators.len().into(), dim_v.into());
    data.gamma_generators = generators;
    Ok(data)
}

/// A subset J of n − 1 coordinates together with the functional ℓ_J ∈ E⊥ vanishing on J.
#[derive(Clone, Debug, PartialEq)]
pub struct Orientation {
    pub subset: Vec<usize>,
    /// Ambient functional, first nonzero coordinate 1.
    pub functional: FieldVector,
}

#[derive(Clone, Debug)]
pub struct Orientations {
    /// Subsets J with dim π⊥(e^J) = n − 1.
    pub all: Vec<Orientation>,
    /// Indices into `all` of those whose face plane meets V in codimension one.
    pub meeting_v: Vec<usize>,
}

/// Enumerates the facet orientations of the window and those transverse to V.
///
/// Membership in the transverse set is decided twice, by a dimension count of
/// π⊥(e^J) ∩ V and by ℓ_J not vanishing on V; disagreement is an error.
pub fn enumerate_orientations(s: &ProjectionScheme, data: &InternalData) -> Result<Orientations, SchemeError> {
    let n = s.n - s.d;
    if n < 2 {
        return Err(SchemeError::Invalid("orientations need codimension at least two".into()));
    }
    let zero = s.zero();
    let perp_units: Vec<FieldVector> = (0..s.n).map(|i| data.perp(&unit(&s.field, s.n, i))).collect();
    let m = data.dim_v;
    let subsets: Vec<Vec<usize>> = itertools::Itertools::combinations(0..s.n, n - 1).collect();
    let found: Vec<Result<Option<(Orientation, bool)>, SchemeError>> = subsets
        .into_par_iter()
        .map(|subset| {
            let face: Vec<FieldVector> = subset.iter().map(|&j| perp_units[j].clone()).collect();
            if linalg::rank(&face) != n - 1 {
                return Ok(None);
            }
            // ℓ = Σ c_a f_a with ℓ_j = 0 on the subset.
            let eqs: Vec<FieldVector> =
                subset.iter().map(|&j| data.e_perp.iter().map(|f| f[j].clone()).collect()).collect();
            let null = linalg::nullspace(&eqs, n, &zero);
            if null.len() != 1 {
                return Err(SchemeError::Inconsistent(format!("functional for {subset:?} is not unique")));
            }
            let c = &null[0];
            let mut ell: FieldVector = (0..s.n)
                .map(|i| field_dot(c, &data.e_perp.iter().map(|f| f[i].clone()).collect::<Vec<_>>()))
                .collect();
            let lead = ell.iter().find(|x| !x.is_zero()).expect("nonzero functional").inv();
            ell = ell.iter().map(|x| x * &lead).collect();
            let by_value = data.v_basis.iter().any(|v| !field_dot(&ell, v).is_zero());
            let mut joint = face.clone();
            joint.extend(data.v_basis.iter().cloned());
            let meet_dim = (n - 1) + m - linalg::rank(&joint);
            let by_dimension = meet_dim + 1 == m;
            if by_value != by_dimension {
                return Err(SchemeError::Inconsistent(format!(
                    "orientation {subset:?}: dimension count and restriction test disagree"
                )));
            }
            Ok(Some((Orientation { subset, functional: ell }, by_value)))
        })
        .collect();
    let mut out = Orientations { all: Vec::new(), meeting_v: Vec::new() };
    for item in found {
        if let Some((o, meets)) = item? {
            if meets {
                out.meeting_v.push(out.all.len());
            }
            out.all.push(o);
        }
    }
    Ok(out)
}

/// Hyperplane classes of the internal arrangement, deduplicated up to Γ-equivalence.
///
/// For an orientation with functional ℓ the face planes sit at ⟨ℓ, x⟩ ∈ ⟨ℓ, Z^N⟩; within
/// the slice through u they are {y ∈ V : ⟨ℓ, y⟩ = c − ⟨ℓ, u⟩}, and Γ moves c by ⟨ℓ, Γ⟩.
pub fn derive_hyperplane_classes(s: &ProjectionScheme, data: &InternalData) -> Result<Vec<HyperplaneClass>, SchemeError> {
    Ok(to_arrangement(s, data)?.hyperplanes().to_vec())
}

/// The arrangement (V, Γ, 𝒲) of a scheme.
pub fn to_arrangement(s: &ProjectionScheme, data: &InternalData) -> Result<Arrangement, SchemeError> {
    let orientations = enumerate_orientations(s, data)?;
    let deg = s.field.degree();
    let gamma_ints: Vec<FieldVector> = data
        .gamma_lattice
        .basis()
        .iter()
        .map(|z| z.iter().map(|x| FieldElement::from_rational(&s.field, BigRational::from_integer(x.clone()))).collect())
        .collect();
    let per_orientation: Vec<Result<Vec<HyperplaneClass>, SchemeError>> = orientations
        .meeting_v
        .par_iter()
        .map(|&i| {
            let o = &orientations.all[i];
            let ell = &o.functional;
            let sup_gens: Vec<Vec<BigRational>> = ell.iter().map(|x| rational_coordinates(std::slice::from_ref(x))).collect();
            let sub_gens: Vec<Vec<BigRational>> = gamma_ints.iter().map(|z| rational_coordinates(&[field_dot(ell, z)])).collect();
            let sup = Lattice::from_rational_generators(&sup_gens, deg);
            let sub = Lattice::from_rational_generators(&sub_gens, deg);
            let reps = coset_representatives(&sub, &sup)?
                .ok_or_else(|| SchemeError::InfiniteFamily { subset: o.subset.clone() })?;
            let normal: FieldVector = data.v_basis.iter().map(|v| field_dot(ell, v)).collect();
            let shift = field_dot(ell, &s.u);
            reps.into_iter()
                .map(|t| {
                    let c = FieldElement::from_coeffs(&s.field, t);
                    HyperplaneClass::new(
                        normal.clone(),
                        &c - &shift,
                        vec![HyperplaneSource::Orientation(o.subset.clone())],
                    )
                    .map_err(SchemeError::from)
                })
                .collect()
        })
        .collect();
    let mut classes = Vec::new();
    for r in per_orientation {
        classes.extend(r?);
    }
    Ok(Arrangement::new(s.field.clone(), data.dim_v, data.gamma_generators.clone(), classes)?)
}

/// Codimension-one scheme (N = d + 1): endpoints of the window interval on the internal
/// line, in V-coordinates relative to the slice through u.
pub fn codim1_domain(s: &ProjectionScheme, data: &InternalData) -> Result<Codim1Domain, SchemeError> {
    if data.dim_v != 1 || s.n != s.d + 1 {
        return Err(SchemeError::Invalid("codimension-one path needs N = d + 1".into()));
    }
    let coords: Vec<FieldElement> = (0..s.n).map(|i| data.v_coordinates(&unit(&s.field, s.n, i))[0].clone()).collect();
    let (mut lo, mut hi) = (s.zero(), s.zero());
    for y in &coords {
        if y.sign()? > 0 {
            hi = &hi + y;
        } else {
            lo = &lo + y;
        }
    }
    let shift = data.v_coordinates(&s.u)[0].clone();
    Codim1Domain::new(data.gamma_generators.iter().map(|g| g[0].clone()).collect(), vec![&lo - &shift, &hi - &shift])
}

#[cfg(test)]
mod tests;
