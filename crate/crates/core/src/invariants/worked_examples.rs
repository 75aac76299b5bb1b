use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::arrangement::test_support::ammann_kramer;
use crate::arrangement::{compute_tables, Arrangement, HyperplaneClass, HyperplaneSource, DEFAULT_SUBSET_CAP};
use crate::exact::{FieldElement, FieldVector, NumberField};

fn zv(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Q(θ) with θ³ = 2.
fn cube_root_two() -> Arc<NumberField> {
    let q = |x: i64| BigRational::from_integer(x.into());
    NumberField::new(zv(&[-2, 0, 0, 1]), q(1), q(2)).unwrap()
}

fn el(f: &Arc<NumberField>, c: &[i64]) -> FieldElement {
    FieldElement::from_coeffs(f, c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
}

/// Codimension two with a line whose stabilizer has rank 1 instead of ν = 2.
fn deficient_codim2() -> Arrangement {
    let f = cube_root_two();
    let v = |a: &[i64], b: &[i64]| -> FieldVector { vec![el(&f, a), el(&f, b)] };
    let gamma = vec![v(&[1], &[0]), v(&[0, 1], &[0]), v(&[0], &[1]), v(&[0], &[0, 1])];
    let lines = [v(&[0], &[1]), v(&[1], &[0]), v(&[0, 1], &[-1])]
        .into_iter()
        .enumerate()
        .map(|(i, n)| HyperplaneClass::new(n, FieldElement::zero(&f), vec![HyperplaneSource::Input(i)]).unwrap())
        .collect();
    Arrangement::new(f, 2, gamma, lines).unwrap()
}

#[test]
fn ammann_kramer_ranks() {
    let arr = ammann_kramer();
    let a = analyze(&arr, DEFAULT_SUBSET_CAP).unwrap();
    let rep = &a.report;
    assert_eq!(rep.d, zv(&[180, 71, 12, 1]));
    assert_eq!(rep.e, BigInt::from(120));
    assert_eq!(rep.k0_rank, Some(BigInt::from(192)));
    assert_eq!(rep.k1_rank, Some(BigInt::from(72)));
    match &rep.aux {
        Auxiliary::Codim3 { l2, l1, l0, l1_tilde, big_r } => {
            assert_eq!((l2, l1, l0), (&BigInt::from(15), &BigInt::from(46), &BigInt::from(32)));
            assert_eq!(l1_tilde, &BigInt::from(74));
            assert_eq!(big_r, &zv(&[69, 9]));
        }
        other => panic!("unexpected auxiliary data {other:?}"),
    }
}

#[test]
fn ammann_kramer_line_and_point_counts_per_plane() {
    let arr = ammann_kramer();
    let tables = compute_tables(&arr, DEFAULT_SUBSET_CAP).unwrap();
    // Lines are sorted by how many plane classes contain their direction.
    let mut by_planes = std::collections::BTreeMap::new();
    let mut theta_sum = 0;
    for line in &tables.levels[1] {
        let planes = tables.levels[2]
            .iter()
            .filter(|p| {
                let mut rows = p.normals.clone();
                rows.extend(line.normals.iter().cloned());
                crate::exact::linalg::rank(&rows) == 2
            })
            .count();
        let pts = tables.relative_count(line.id, 0);
        assert_eq!(pts, if planes == 2 { 4 } else { 2 });
        theta_sum += pts;
        *by_planes.entry(planes).or_insert(0) += 1;
    }
    assert_eq!(by_planes.into_iter().collect::<Vec<_>>(), vec![(2, 30), (3, 10), (5, 6)]);
    assert_eq!(theta_sum, 152);
    for plane in &tables.levels[2] {
        let nested: usize = tables.relative_table(plane.id).unwrap().by_level[1]
            .iter()
            .map(|e| tables.relative_count(e.class, 0))
            .sum();
        assert_eq!(nested, 24);
    }
    assert_eq!(closed_euler(&tables), Some(BigInt::from(120)));
    assert_eq!(euler_chain(&tables).unwrap(), BigInt::from(120));
}

#[test]
fn ammann_kramer_has_no_obstruction() {
    let arr = ammann_kramer();
    let v = obstruction_check(&ObstructionInput { arrangement: Some(&arr), scheme: None, cap: DEFAULT_SUBSET_CAP });
    assert_eq!(v.verdict, Verdict::NoObstruction, "{v:?}");
    assert!(v.reasons.is_empty());
}

#[test]
fn deficient_line_stabilizer_is_a_witness() {
    let arr = deficient_codim2();
    let v = obstruction_check(&ObstructionInput { arrangement: Some(&arr), scheme: None, cap: DEFAULT_SUBSET_CAP });
    assert_eq!(v.verdict, Verdict::InfinitelyGenerated);
    assert_eq!(v.reasons[0].rule, rules::STABILIZER_RANK);
}

#[test]
fn divisibility_failure_in_scheme_mode() {
    let v = obstruction_check(&ObstructionInput {
        arrangement: None,
        scheme: Some(SchemeRanks { n: 5, d: 2, rk_delta: 0 }),
        cap: DEFAULT_SUBSET_CAP,
    });
    assert_eq!(v.verdict, Verdict::InfinitelyGenerated);
    assert_eq!(v.reasons[0].rule, rules::DIVISIBILITY);
}

#[test]
fn codim1_golden_case() {
    let rep = ranks_codim1(2, &BigInt::from(1));
    assert_eq!(rep.d, zv(&[2, 1]));
    assert_eq!(rep.cohomology, Some(zv(&[1, 2])));
    assert_eq!((rep.k0_rank, rep.k1_rank), (Some(BigInt::from(2)), Some(BigInt::from(1))));
}
