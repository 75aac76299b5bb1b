//! Seeded randomized checks of the exact integer linear algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exact::{determinant, hnf, integer_kernel, is_unimodular, snf, subgroup_index, Index, IntegerMatrix, Lattice};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_260_101;

/// Outcome of a battery run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BatteryReport {
    pub cases: usize,
    /// One message per failed identity, prefixed by the case number.
    pub failures: Vec<String>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random integer matrix of size up to `max_dim` with entries in [−bound, bound].
pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> IntegerMatrix {
    let rows = rng.random_range(1..=max_dim);
    let cols = rng.random_range(1..=max_dim);
    let data = (0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect()).collect();
    IntegerMatrix::from_rows(data, cols)
}

/// Random unimodular matrix built from elementary row operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> IntegerMatrix {
    let mut w = IntegerMatrix::identity(n);
    if n < 2 {
        if rng.random_bool(0.5) {
            w[(0, 0)] = -BigInt::one();
        }
        return w;
    }
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.random_range(0..3) {
            0 => w.swap_rows(i, j),
            1 => {
                for c in 0..n {
                    w[(i, c)] = -w[(i, c)].clone();
                }
            }
            _ => {
                let k = BigInt::from(rng.random_range(-3i64..=3));
                for c in 0..n {
                    let v = &w[(j, c)] * &k;
                    w[(i, c)] += v;
                }
            }
        }
    }
    w
}

fn is_hermite(h: &IntegerMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
            None => seen_zero_row = true,
            Some(p) => {
                if seen_zero_row || last_pivot.is_some_and(|q| p <= q) || !h[(i, p)].is_positive() {
                    return false;
                }
                if (0..i).any(|k| h[(k, p)].is_negative() || h[(k, p)] >= h[(i, p)]) {
                    return false;
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

/// Nonzero diagonal entries of a Smith form, or `None` if the shape is wrong.
fn smith_diagonal(s: &IntegerMatrix) -> Option<Vec<BigInt>> {
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if i != j && !s[(i, j)].is_zero() {
                return None;
            }
        }
    }
    let diag: Vec<BigInt> = (0..s.rows().min(s.cols())).map(|i| s[(i, i)].clone()).collect();
    let nonzero = diag.iter().take_while(|x| !x.is_zero()).count();
    if diag[nonzero..].iter().any(|x| !x.is_zero()) || diag.iter().any(Signed::is_negative) {
        return None;
    }
    let chain = diag[..nonzero].windows(2).all(|w| w[1].is_multiple_of(&w[0]));
    chain.then(|| diag[..nonzero].to_vec())
}

fn row_lattice(m: &IntegerMatrix) -> Lattice {
    Lattice::from_integer_generators(&m.to_rows(), m.cols())
}

/// Checks one matrix and returns the identities that fail.
pub fn check_matrix(m: &IntegerMatrix, w: &IntegerMatrix) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let (h, u) = hnf(m);
    if &u * m != h {
        bad.push("U*M = H");
    }
    if !is_unimodular(&u) {
        bad.push("HNF transform unimodular");
    }
    if !is_hermite(&h) {
        bad.push("HNF shape");
    }
    let (s, su, sv) = snf(m);
    if &(&su * m) * &sv != s {
        bad.push("U*M*V = S");
    }
    if !is_unimodular(&su) || !is_unimodular(&sv) {
        bad.push("SNF transforms unimodular");
    }
    let Some(diag) = smith_diagonal(&s) else {
        bad.push("SNF divisibility chain");
        return bad;
    };
    if m.rows() == m.cols() {
        let det = determinant(m).abs();
        let prod = if diag.len() == m.rows() { diag.iter().product() } else { BigInt::zero() };
        if det != prod {
            bad.push("|det| = product of invariant factors");
        }
    }
    let kernel = integer_kernel(&m.to_rational());
    if kernel.rank() + diag.len() != m.cols() {
        bad.push("kernel rank");
    }
    if kernel.saturation() != kernel {
        bad.push("kernel saturated");
    }
    if kernel.basis().iter().any(|k| (0..m.rows()).any(|i| !(0..m.cols()).map(|j| &m[(i, j)] * &k[j]).sum::<BigInt>().is_zero())) {
        bad.push("kernel annihilated");
    }
    let lat = row_lattice(m);
    let moved = row_lattice(&(w * m));
    if lat != moved {
        bad.push("row lattice basis-invariant");
    }
    let sat = lat.saturation();
    let expect = Index::Finite(diag.iter().product());
    if subgroup_index(&lat, &sat).ok() != Some(expect.clone()) || subgroup_index(&moved, &sat).ok() != Some(expect) {
        bad.push("index in saturation");
    }
    let full = Lattice::standard(m.cols());
    let idx = subgroup_index(&lat, &full).ok();
    let want = if diag.len() == m.cols() { Index::Finite(diag.iter().product()) } else { Index::Infinite };
    if idx != Some(want) {
        bad.push("index in Z^n");
    }
    bad
}

/// Runs `cases` random matrices of size up to `max_dim` with entries in [−bound, bound].
pub fn property_battery(seed: u64, cases: usize, max_dim: usize, bound: i64) -> BatteryReport {
    let failures: Vec<String> = (0..cases)
        .into_par_iter()
        .flat_map_iter(|case| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(case as u64));
            let m = random_matrix(&mut rng, max_dim, bound);
            let w = random_unimodular(&mut rng, m.rows(), 12);
            check_matrix(&m, &w).into_iter().map(move |f| format!("case {case}: {f}"))
        })
        .collect();
    BatteryReport { cases, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_passes() {
        let r = property_battery(7, 100, 6, 20);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn broken_hermite_form_is_detected() {
        assert!(!is_hermite(&IntegerMatrix::from_i64(&[&[2, 5], &[0, 3]])));
        assert!(is_hermite(&IntegerMatrix::from_i64(&[&[2, 1], &[0, 3]])));
        assert!(smith_diagonal(&IntegerMatrix::from_i64(&[&[2, 0], &[0, 3]])).is_none());
    }
}
