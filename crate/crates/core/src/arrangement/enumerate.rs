//! Enumeration of Γ-orbit classes of singular spaces and their relative tables.

use std::collections::HashMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    gram_solve, direction_key, stabilizer, sub, values, Arrangement, ArrangementError, HyperplaneClass,
    HyperplaneSource, SingularSpace,
};
use crate::exact::{
    coset_representatives, field_dot, linalg, FieldElement, FieldVector, Lattice,
};

/// Default cap on the number of independent generating subsets visited per level.
pub const DEFAULT_SUBSET_CAP: usize = 5_000_000;

/// Stable identifier of a global orbit class: its level and position within the level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassId {
    pub level: usize,
    pub index: usize,
}

/// A generating subset of hyperplane classes and the offset coset that produced a representative.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub subset: Vec<usize>,
    pub coset: Vec<BigRational>,
}

/// A Γ-orbit class of singular l-spaces.
#[derive(Clone, Debug)]
pub struct SingularOrbitClass {
    pub id: ClassId,
    pub level: usize,
    /// Reduced row echelon covectors cutting out the direction subspace.
    pub normals: Vec<FieldVector>,
    /// Basis of the direction subspace (dimension `level`).
    pub direction: Vec<FieldVector>,
    /// A point on a representative space.
    pub offset_point: FieldVector,
    /// Stabilizer Γ^Θ as a saturated sublattice of Z^r.
    pub stabilizer: Lattice,
    pub provenance: Vec<Provenance>,
}

impl SingularOrbitClass {
    pub fn space(&self) -> SingularSpace {
        SingularSpace { normals: self.normals.clone(), point: self.offset_point.clone() }
    }

    /// Distinct generating subsets, in discovery order.
    pub fn generating_subsets(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for p in &self.provenance {
            if !out.contains(&p.subset) {
                out.push(p.subset.clone());
            }
        }
        out
    }
}

/// A relative class inside a parent, with the global class it belongs to.
#[derive(Clone, Debug)]
pub struct RelativeEntry {
    pub class: ClassId,
    pub point: FieldVector,
}

/// The lists I_l^Θ for one parent Θ, indexed by l < dim Θ.
#[derive(Clone, Debug)]
pub struct RelativeTable {
    pub parent: ClassId,
    pub by_level: Vec<Vec<RelativeEntry>>,
}

impl RelativeTable {
    /// Number of relative classes of each global class at level l (multiplicity).
    pub fn multiplicities(&self, l: usize) -> Vec<(ClassId, usize)> {
        let mut out: Vec<(ClassId, usize)> = Vec::new();
        for e in &self.by_level[l] {
            match out.iter_mut().find(|(c, _)| *c == e.class) {
                Some((_, n)) => *n += 1,
                None => out.push((e.class, 1)),
            }
        }
        out
    }
}

/// All orbit classes of an arrangement with their relative tables.
#[derive(Clone, Debug)]
pub struct OrbitTables {
    pub dim_v: usize,
    pub rank_gamma: usize,
    pub levels: Vec<Vec<SingularOrbitClass>>,
    /// One table per class of level ≥ 1, ordered by class id.
    pub relative: Vec<RelativeTable>,
    /// J_l: every independent generating subset, per level.
    pub defining_subsets: Vec<Vec<Vec<usize>>>,
}

impl OrbitTables {
    /// L_l.
    pub fn count(&self, l: usize) -> usize {
        self.levels[l].len()
    }

    pub fn class(&self, id: ClassId) -> &SingularOrbitClass {
        &self.levels[id.level][id.index]
    }

    pub fn relative_table(&self, id: ClassId) -> Option<&RelativeTable> {
        self.relative.iter().find(|t| t.parent == id)
    }

    /// L_l^Θ.
    pub fn relative_count(&self, parent: ClassId, l: usize) -> usize {
        self.relative_table(parent).map_or(0, |t| t.by_level[l].len())
    }

    pub fn all_classes(&self) -> impl Iterator<Item = &SingularOrbitClass> {
        self.levels.iter().flatten()
    }
}

/// Independent k-subsets of hyperplane indices in lexicographic order.
pub(crate) fn independent_subsets(arr: &Arrangement, k: usize, cap: usize) -> Result<Vec<Vec<usize>>, ArrangementError> {
    fn walk(
        normals: &[FieldVector],
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), ArrangementError> {
        if chosen.len() == k {
            if out.len() >= cap {
                return Err(ArrangementError::Incomplete { cap });
            }
            out.push(chosen.clone());
            return Ok(());
        }
        for i in start..normals.len() {
            if normals.len() - i < k - chosen.len() {
                break;
            }
            chosen.push(i);
            let rows: Vec<FieldVector> = chosen.iter().map(|&j| normals[j].clone()).collect();
            if linalg::rank(&rows) == chosen.len() {
                walk(normals, k, i + 1, chosen, out, cap)?;
            }
            chosen.pop();
        }
        Ok(())
    }
    let normals = arr.normals();
    let mut out = Vec::new();
    walk(&normals, k, 0, &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

/// Representative points, one per Γ-orbit of intersections ∩_{i∈A}(W_i + γ_i).
///
/// Offsets of each member range over c_i + ⟨n_i, Γ⟩ independently; two offset tuples give
/// Γ-equivalent intersections iff they differ by (⟨n_i, γ⟩)_i, so orbits are cosets.
fn offset_points(
    arr: &Arrangement,
    subset: &[usize],
) -> Result<Option<Vec<(Vec<BigRational>, FieldVector)>>, ArrangementError> {
    let deg = arr.field().degree();
    let k = subset.len();
    let hs: Vec<&HyperplaneClass> = subset.iter().map(|&i| &arr.hyperplanes()[i]).collect();
    let normals: Vec<FieldVector> = hs.iter().map(|h| h.normal.clone()).collect();
    let zero_q = vec![BigRational::from_integer(0.into()); deg * k];
    let mut sup_gens = Vec::with_capacity(k * arr.rank_gamma());
    for (i, h) in hs.iter().enumerate() {
        for g in arr.gamma() {
            let mut v = zero_q.clone();
            for (slot, c) in field_dot(&h.normal, g).coeffs().iter().enumerate() {
                v[deg * i + slot] = c.clone();
            }
            sup_gens.push(v);
        }
    }
    let sub_gens: Vec<Vec<BigRational>> = arr.gamma().iter().map(|g| values(&normals, g)).collect();
    let sup = Lattice::from_rational_generators(&sup_gens, deg * k);
    let subl = Lattice::from_rational_generators(&sub_gens, deg * k);
    let Some(reps) = coset_representatives(&subl, &sup)? else {
        return Ok(None);
    };
    let zero = arr.zero();
    let mut out = Vec::with_capacity(reps.len());
    for t in reps {
        let offsets: Vec<FieldElement> = hs
            .iter()
            .enumerate()
            .map(|(i, h)| &h.offset + &FieldElement::from_coeffs(arr.field(), t[deg * i..deg * (i + 1)].to_vec()))
            .collect();
        let y = gram_solve(&normals, &offsets, &zero).ok_or(ArrangementError::NotTransversal)?;
        out.push((t, y));
    }
    Ok(Some(out))
}

/// Orbit representatives of the points cut out by a transversal family of m hyperplane classes.
///
/// Returns `Ok(None)` when infinitely many orbits occur.
pub fn point_orbits_on(arr: &Arrangement, transversal: &[usize]) -> Result<Option<Vec<FieldVector>>, ArrangementError> {
    let rows: Vec<FieldVector> = transversal.iter().map(|&i| arr.hyperplanes()[i].normal.clone()).collect();
    if transversal.len() != arr.dim_v() || linalg::rank(&rows) != arr.dim_v() {
        return Err(ArrangementError::NotTransversal);
    }
    Ok(offset_points(arr, transversal)?.map(|v| v.into_iter().map(|(_, y)| y).collect()))
}

/// Deduplicates candidate points of one direction modulo Γ + D.
struct DirectionBucket {
    lam: Lattice,
    full: bool,
    key: Vec<FieldVector>,
    reps: Vec<(FieldVector, Vec<BigRational>, Vec<Provenance>)>,
    index: HashMap<Vec<BigRational>, usize>,
}

impl DirectionBucket {
    fn new(arr: &Arrangement, key: Vec<FieldVector>) -> Self {
        let lam = arr.value_lattice(&key);
        let full = lam.rank() == lam.ambient_dim();
        DirectionBucket { lam, full, key, reps: Vec::new(), index: HashMap::new() }
    }

    fn find(&self, vals: &[BigRational]) -> (Option<usize>, Option<Vec<BigRational>>) {
        if self.full {
            let red = self.lam.reduce(vals).expect("full rank");
            (self.index.get(&red).copied(), Some(red))
        } else {
            let hit = self.reps.iter().position(|(_, v, _)| {
                let diff: Vec<BigRational> = vals.iter().zip(v).map(|(a, b)| a - b).collect();
                self.lam.contains(&diff)
            });
            (hit, None)
        }
    }

    fn insert(&mut self, point: FieldVector, prov: Provenance) {
        let vals = values(&self.key, &point);
        match self.find(&vals) {
            (Some(i), _) => self.reps[i].2.push(prov),
            (None, red) => {
                if let Some(red) = red {
                    self.index.insert(red, self.reps.len());
                }
                self.reps.push((point, vals, vec![prov]));
            }
        }
    }
}

fn enumerate_with_subsets(
    arr: &Arrangement,
    l: usize,
    cap: usize,
) -> Result<(Vec<SingularOrbitClass>, Vec<Vec<usize>>), ArrangementError> {
    let m = arr.dim_v();
    if l >= m {
        return Err(ArrangementError::Invalid(format!("level {l} must be below dim V = {m}")));
    }
    let subsets = independent_subsets(arr, m - l, cap)?;
    let mut keys: Vec<Vec<FieldVector>> = Vec::new();
    let mut groups: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut lookup: HashMap<Vec<FieldVector>, usize> = HashMap::new();
    for a in &subsets {
        let rows: Vec<FieldVector> = a.iter().map(|&i| arr.hyperplanes()[i].normal.clone()).collect();
        let key = direction_key(&rows);
        let slot = *lookup.entry(key.clone()).or_insert_with(|| {
            keys.push(key);
            groups.push(Vec::new());
            keys.len() - 1
        });
        groups[slot].push(a.clone());
    }
    let per_direction: Vec<Result<(Vec<FieldVector>, Vec<(FieldVector, Vec<Provenance>)>), ArrangementError>> = keys
        .into_par_iter()
        .zip(groups.par_iter())
        .map(|(key, group)| {
            let mut bucket = DirectionBucket::new(arr, key);
            for a in group {
                let Some(points) = offset_points(arr, a)? else {
                    return Err(ArrangementError::InfiniteOrbitSet { level: l, subset: a.clone() });
                };
                for (coset, y) in points {
                    bucket.insert(y, Provenance { subset: a.clone(), coset });
                }
            }
            let reps = bucket.reps.into_iter().map(|(y, _, p)| (y, p)).collect();
            Ok((bucket.key, reps))
        })
        .collect();
    let zero = arr.zero();
    let mut classes = Vec::new();
    for res in per_direction {
        let (key, reps) = res?;
        let stab = stabilizer(arr, &key);
        let direction = linalg::nullspace(&key, m, &zero);
        for (point, provenance) in reps {
            classes.push(SingularOrbitClass {
                id: ClassId { level: l, index: classes.len() },
                level: l,
                normals: key.clone(),
                direction: direction.clone(),
                offset_point: point,
                stabilizer: stab.clone(),
                provenance,
            });
        }
    }
    Ok((classes, subsets))
}

/// The Γ-orbit classes I_l of singular l-spaces.
pub fn enumerate_level(arr: &Arrangement, l: usize, cap: usize) -> Result<Vec<SingularOrbitClass>, ArrangementError> {
    enumerate_with_subsets(arr, l, cap).map(|(c, _)| c)
}

/// Global classes of one level indexed by direction, for mapping relative classes back.
struct GlobalIndex<'a> {
    by_key: HashMap<Vec<FieldVector>, (Lattice, Vec<&'a SingularOrbitClass>)>,
}

impl<'a> GlobalIndex<'a> {
    fn new(arr: &Arrangement, classes: &'a [SingularOrbitClass]) -> Self {
        let mut by_key: HashMap<Vec<FieldVector>, (Lattice, Vec<&'a SingularOrbitClass>)> = HashMap::new();
        for c in classes {
            by_key
                .entry(c.normals.clone())
                .or_insert_with(|| (arr.value_lattice(&c.normals), Vec::new()))
                .1
                .push(c);
        }
        GlobalIndex { by_key }
    }

    fn locate(&self, key: &[FieldVector], point: &[FieldElement]) -> Option<ClassId> {
        let (lam, classes) = self.by_key.get(key)?;
        classes
            .iter()
            .find(|c| lam.contains(&values(key, &sub(point, &c.offset_point))))
            .map(|c| c.id)
    }
}

/// The arrangement induced on a representative of Θ, acted on by Γ^Θ, in coordinates along Θ.
fn induced_arrangement(arr: &Arrangement, theta: &SingularOrbitClass) -> Result<Arrangement, ArrangementError> {
    let zero = arr.zero();
    let d = &theta.direction;
    let dim = d.len();
    // Columns d_j; coordinates t solve Σ t_j d_j = x.
    let dmat: Vec<FieldVector> = (0..arr.dim_v()).map(|i| d.iter().map(|v| v[i].clone()).collect()).collect();
    let coords = |x: &FieldVector| -> Result<FieldVector, ArrangementError> {
        linalg::solve(&dmat, x, &zero)
            .ok_or_else(|| ArrangementError::Invalid("stabilizer element leaves its space".into()))
    };
    let stab_vectors: Vec<FieldVector> = theta.stabilizer.basis().iter().map(|c| arr.gamma_element(c)).collect();
    let gens = stab_vectors.iter().map(coords).collect::<Result<Vec<_>, _>>()?;
    let mut traces = Vec::new();
    for (idx, h) in arr.hyperplanes().iter().enumerate() {
        let restricted: FieldVector = d.iter().map(|v| field_dot(&h.normal, v)).collect();
        if restricted.iter().all(FieldElement::is_zero) {
            continue;
        }
        let full = arr.offset_lattice(&h.normal);
        let gens_q: Vec<Vec<BigRational>> =
            stab_vectors.iter().map(|g| field_dot(&h.normal, g).coeffs().to_vec()).collect();
        let part = Lattice::from_rational_generators(&gens_q, arr.field().degree());
        let Some(reps) = coset_representatives(&part, &full)? else {
            return Err(ArrangementError::InfiniteOrbitSet { level: theta.level - 1, subset: vec![idx] });
        };
        let base = &h.offset - &field_dot(&h.normal, &theta.offset_point);
        for mu in reps {
            let offset = &base + &FieldElement::from_coeffs(arr.field(), mu);
            traces.push(HyperplaneClass::new(restricted.clone(), offset, vec![HyperplaneSource::Input(idx)])?);
        }
    }
    Arrangement::unchecked(arr.field().clone(), dim, gens, traces)
}

/// The relative classes I_l^Θ, each tagged with its global class.
pub fn relative_level(
    arr: &Arrangement,
    theta: &SingularOrbitClass,
    l: usize,
    global_level: &[SingularOrbitClass],
    cap: usize,
) -> Result<Vec<RelativeEntry>, ArrangementError> {
    let index = GlobalIndex::new(arr, global_level);
    relative_with_index(arr, theta, l, &index, cap)
}

fn relative_with_index(
    arr: &Arrangement,
    theta: &SingularOrbitClass,
    l: usize,
    index: &GlobalIndex<'_>,
    cap: usize,
) -> Result<Vec<RelativeEntry>, ArrangementError> {
    if l >= theta.level {
        return Err(ArrangementError::Invalid(format!("level {l} is not below dim Θ = {}", theta.level)));
    }
    let induced = induced_arrangement(arr, theta)?;
    let local = enumerate_level(&induced, l, cap).map_err(|e| match e {
        ArrangementError::InfiniteOrbitSet { subset, .. } => ArrangementError::InfiniteOrbitSet { level: l, subset },
        other => other,
    })?;
    let zero = arr.zero();
    let lift = |t: &FieldVector| -> FieldVector {
        let mut y = theta.offset_point.clone();
        for (tj, dj) in t.iter().zip(&theta.direction) {
            y = super::add(&y, &super::scale(dj, tj));
        }
        y
    };
    let lift_linear = |t: &FieldVector| -> FieldVector {
        let mut y = vec![zero.clone(); arr.dim_v()];
        for (tj, dj) in t.iter().zip(&theta.direction) {
            y = super::add(&y, &super::scale(dj, tj));
        }
        y
    };
    local
        .iter()
        .map(|c| {
            let point = lift(&c.offset_point);
            let dir: Vec<FieldVector> = c.direction.iter().map(lift_linear).collect();
            let annihilator = linalg::nullspace(&dir, arr.dim_v(), &zero);
            let key = direction_key(&annihilator);
            let class = index.locate(&key, &point).ok_or_else(|| {
                ArrangementError::Invalid("relative class has no global counterpart".into())
            })?;
            Ok(RelativeEntry { class, point })
        })
        .collect()
}

/// Full orbit tables: every level and the relative tables of every class of level ≥ 1.
pub fn compute_tables(arr: &Arrangement, cap: usize) -> Result<OrbitTables, ArrangementError> {
    let m = arr.dim_v();
    let mut levels = Vec::with_capacity(m);
    let mut defining_subsets = Vec::with_capacity(m);
    for l in 0..m {
        let (classes, subsets) = enumerate_with_subsets(arr, l, cap)?;
        levels.push(classes);
        defining_subsets.push(subsets);
    }
    let indices: Vec<GlobalIndex<'_>> = levels.iter().map(|c| GlobalIndex::new(arr, c)).collect();
    let parents: Vec<&SingularOrbitClass> = levels.iter().skip(1).flatten().collect();
    let relative = parents
        .par_iter()
        .map(|theta| {
            let by_level = (0..theta.level)
                .map(|l| relative_with_index(arr, theta, l, &indices[l], cap))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(RelativeTable { parent: theta.id, by_level })
        })
        .collect::<Result<Vec<_>, ArrangementError>>()?;
    Ok(OrbitTables { dim_v: m, rank_gamma: arr.rank_gamma(), levels, relative, defining_subsets })
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;

    #[test]
    fn ammann_kramer_levels() {
        let arr = ammann_kramer();
        let tables = compute_tables(&arr, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(tables.count(2), 15);
        assert_eq!(tables.count(1), 46);
        assert_eq!(tables.count(0), 32);
        for t in &tables.relative {
            if t.parent.level == 2 {
                assert_eq!(t.by_level[1].len(), 8);
                assert_eq!(t.by_level[0].len(), 8);
            }
        }
        let sum: usize = tables.levels[1].iter().map(|c| tables.relative_count(c.id, 0)).sum();
        assert_eq!(sum, 152);
    }

    #[test]
    fn orthogonal_triple_has_eight_point_orbits() {
        let arr = ammann_kramer();
        // Planes spanned by pairs of mutually orthogonal generators: (0,1) ⟂ {(2,3)-plane, (4,5)-plane}.
        let idx = |a: usize, b: usize| {
            arr.hyperplanes()
                .iter()
                .position(|h| h.provenance.contains(&HyperplaneSource::Orientation(vec![a, b])))
                .unwrap()
        };
        let triple = [idx(0, 1), idx(2, 3), idx(4, 5)];
        let pts = point_orbits_on(&arr, &triple).unwrap().unwrap();
        assert_eq!(pts.len(), 8);
    }
}
