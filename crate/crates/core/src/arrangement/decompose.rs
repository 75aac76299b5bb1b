//! Decomposition of normal sets and projected groups Γ_A.

use num_rational::BigRational;

use super::{Arrangement, ArrangementError};
use crate::exact::{self, field_dot, linalg, rational_coordinates, FieldElement, FieldVector};

/// Connected components of the graph G(B; A) on a spanning set of normals.
///
/// Parallel normals are merged first. B is chosen greedily by index; x and y in B are joined
/// when some z outside B has nonzero coefficients on both in its B-expansion. Every input
/// index lands in exactly one part; parts are ordered by smallest member.
pub fn indecomposable_components(normals: &[FieldVector]) -> Result<Vec<Vec<usize>>, ArrangementError> {
    let Some(first) = normals.first() else {
        return Err(ArrangementError::NotSpanning);
    };
    let m = first.len();
    let zero = FieldElement::zero(first[0].field());
    // Representative of each parallel class.
    let mut rep_of = vec![0usize; normals.len()];
    let mut reps: Vec<usize> = Vec::new();
    for (i, n) in normals.iter().enumerate() {
        if n.iter().all(FieldElement::is_zero) {
            return Err(ArrangementError::Invalid("zero normal".into()));
        }
        let hit = reps.iter().copied().find(|&j| linalg::rank(&[normals[j].clone(), n.clone()]) == 1);
        rep_of[i] = match hit {
            Some(j) => j,
            None => {
                reps.push(i);
                i
            }
        };
    }
    let mut basis: Vec<usize> = Vec::new();
    for &i in &reps {
        let mut rows: Vec<FieldVector> = basis.iter().map(|&j| normals[j].clone()).collect();
        rows.push(normals[i].clone());
        if linalg::rank(&rows) == rows.len() {
            basis.push(i);
        }
    }
    if basis.len() < m {
        return Err(ArrangementError::NotSpanning);
    }
    let mut parent: Vec<usize> = (0..normals.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra.max(rb)] = ra.min(rb);
        }
    };
    // Columns are the basis vectors; coefficients c solve Σ c_j b_j = z.
    let bmat: Vec<FieldVector> =
        (0..m).map(|k| basis.iter().map(|&j| normals[j][k].clone()).collect()).collect();
    for &z in reps.iter().filter(|i| !basis.contains(i)) {
        let coeffs = linalg::solve(&bmat, &normals[z], &zero).expect("basis spans V");
        let support: Vec<usize> =
            basis.iter().zip(&coeffs).filter(|(_, c)| !c.is_zero()).map(|(&j, _)| j).collect();
        for w in support.windows(2) {
            union(&mut parent, w[0], w[1]);
        }
        union(&mut parent, z, support[0]);
    }
    for i in 0..normals.len() {
        union(&mut parent, i, rep_of[i]);
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..normals.len() {
        let r = find(&mut parent, i);
        match roots.iter().position(|&x| x == r) {
            Some(p) => parts[p].push(i),
            None => {
                roots.push(r);
                parts.push(vec![i]);
            }
        }
    }
    let dims: usize = parts
        .iter()
        .map(|p| linalg::rank(&p.iter().map(|&i| normals[i].clone()).collect::<Vec<_>>()))
        .sum();
    if dims != m {
        return Err(ArrangementError::Invalid("component spans are not independent".into()));
    }
    Ok(parts)
}

/// The group Γ_A: projections of Γ onto dir(W_A) along dir(W_{A^c}).
#[derive(Clone, Debug)]
pub struct ProjectedGroup {
    /// Positions within the transversal family forming A.
    pub subset: Vec<usize>,
    /// Hyperplane indices of the full transversal family (A and its complement).
    pub transversal: Vec<usize>,
    pub images: Vec<FieldVector>,
    pub rank: usize,
}

/// Projects every Γ generator onto dir(W_A) along dir(W_{A^c}).
///
/// `transversal` lists m hyperplane indices with independent normals and `subset` picks
/// positions in it. The image a of γ is characterized by ⟨n_i, a⟩ = 0 for i in A and
/// ⟨n_i, a⟩ = ⟨n_i, γ⟩ otherwise. The result does not depend on a base point.
pub fn projected_group(
    arr: &Arrangement,
    transversal: &[usize],
    subset: &[usize],
) -> Result<ProjectedGroup, ArrangementError> {
    let m = arr.dim_v();
    let normals: Vec<FieldVector> = transversal.iter().map(|&i| arr.hyperplanes()[i].normal.clone()).collect();
    if normals.len() != m || linalg::rank(&normals) != m || subset.iter().any(|&p| p >= m) {
        return Err(ArrangementError::NotTransversal);
    }
    let zero = arr.zero();
    let images: Vec<FieldVector> = arr
        .gamma()
        .iter()
        .map(|g| {
            let rhs: FieldVector = normals
                .iter()
                .enumerate()
                .map(|(i, n)| if subset.contains(&i) { zero.clone() } else { field_dot(n, g) })
                .collect();
            linalg::solve(&normals, &rhs, &zero).expect("transversal normals are invertible")
        })
        .collect();
    let expanded: Vec<Vec<BigRational>> = images.iter().map(|v| rational_coordinates(v)).collect();
    let rank = exact::span_rank(&expanded);
    Ok(ProjectedGroup { subset: subset.to_vec(), transversal: transversal.to_vec(), images, rank })
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::super::{HyperplaneClass, HyperplaneSource};
    use super::*;

    #[test]
    fn component_examples() {
        let f = golden();
        let v = |a: i64, b: i64| vec![el(&f, a, 0), el(&f, b, 0)];
        assert_eq!(indecomposable_components(&[v(1, 0), v(0, 1)]).unwrap(), vec![vec![0], vec![1]]);
        assert_eq!(indecomposable_components(&[v(1, 0), v(0, 1), v(1, 1)]).unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(indecomposable_components(&[v(1, 0), v(2, 0), v(0, 1)]).unwrap(), vec![vec![0, 1], vec![2]]);
        assert!(matches!(indecomposable_components(&[v(1, 0), v(2, 0)]), Err(ArrangementError::NotSpanning)));
    }

    #[test]
    fn ammann_kramer_normals_are_indecomposable() {
        let arr = ammann_kramer();
        assert_eq!(indecomposable_components(&arr.normals()).unwrap().len(), 1);
    }

    #[test]
    fn projection_onto_axis_has_rank_two() {
        let f = golden();
        let gens = vec![vec![el(&f, 1, 0), el(&f, 0, 0)], vec![el(&f, 0, 0), el(&f, 1, 0)], vec![el(&f, 0, 1), el(&f, 0, 1)]];
        let hs = vec![
            HyperplaneClass::new(vec![el(&f, 0, 0), el(&f, 1, 0)], el(&f, 0, 0), vec![HyperplaneSource::Input(0)]).unwrap(),
            HyperplaneClass::new(vec![el(&f, 1, 0), el(&f, 0, 0)], el(&f, 0, 0), vec![HyperplaneSource::Input(1)]).unwrap(),
        ];
        let arr = Arrangement::new(f, 2, gens, hs).unwrap();
        assert_eq!(projected_group(&arr, &[0, 1], &[0]).unwrap().rank, 2);
        assert_eq!(projected_group(&arr, &[0, 1], &[]).unwrap().rank, 3);
        assert_eq!(projected_group(&arr, &[0, 1], &[0, 1]).unwrap().rank, 0);
    }

    #[test]
    fn ammann_kramer_plane_projection_has_rank_four() {
        let arr = ammann_kramer();
        let idx = |a: usize, b: usize| {
            arr.hyperplanes()
                .iter()
                .position(|h| h.provenance.contains(&HyperplaneSource::Orientation(vec![a, b])))
                .unwrap()
        };
        let triple = [idx(0, 1), idx(2, 3), idx(4, 5)];
        for p in 0..3 {
            assert_eq!(projected_group(&arr, &triple, &[p]).unwrap().rank, 4);
        }
    }

    #[test]
    fn projection_rank_does_not_depend_on_the_complement() {
        let arr = ammann_kramer();
        let k = arr.hyperplanes().len();
        for a in 0..k {
            let mut ranks = std::collections::BTreeSet::new();
            for b in 0..k {
                for c in b + 1..k {
                    if let Ok(p) = projected_group(&arr, &[a, b, c], &[0]) {
                        ranks.insert(p.rank);
                    }
                }
            }
            assert_eq!(ranks.into_iter().collect::<Vec<_>>(), vec![4], "plane {a}");
        }
    }
}
