use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::exact::{span_rank, wedge_coordinates, Lattice};

/// Rank of the span of Λ_k of each lattice inside Λ_k Z^r.
///
/// Each lattice contributes the wedges of all k-subsets of its basis. Duplicate lattices are
/// skipped; k = 0 gives rank 1 for any nonempty input.
pub fn wedge_span_rank(stabs: &[&Lattice], k: usize) -> usize {
    let mut distinct: Vec<&Lattice> = Vec::new();
    for s in stabs {
        if !distinct.contains(s) {
            distinct.push(s);
        }
    }
    if distinct.is_empty() {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    if distinct.iter().any(|s| s.ambient_dim() < k) {
        return 0;
    }
    let vectors: Vec<Vec<BigRational>> = distinct
        .par_iter()
        .flat_map_iter(|s| {
            s.basis()
                .iter()
                .combinations(k)
                .map(|vs| {
                    let owned: Vec<Vec<BigInt>> = vs.into_iter().cloned().collect();
                    wedge_coordinates(&owned)
                        .expect("k never exceeds the ambient rank here")
                        .into_iter()
                        .map(BigRational::from_integer)
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    span_rank(&vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[&[i64]], n: usize) -> Lattice {
        let gens: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        Lattice::from_integer_generators(&gens, n)
    }

    #[test]
    fn single_lattice_gives_binomial() {
        let l = lat(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1]], 4);
        assert_eq!(wedge_span_rank(&[&l], 1), 3);
        assert_eq!(wedge_span_rank(&[&l], 2), 3);
        assert_eq!(wedge_span_rank(&[&l], 3), 1);
        assert_eq!(wedge_span_rank(&[&l], 4), 0);
    }

    #[test]
    fn overlapping_planes() {
        let a = lat(&[&[1, 0, 0], &[0, 1, 0]], 3);
        let b = lat(&[&[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(wedge_span_rank(&[&a, &b], 1), 3);
        assert_eq!(wedge_span_rank(&[&a, &b, &a], 2), 2);
        assert_eq!(wedge_span_rank(&[], 1), 0);
    }
}
