//! Gaussian elimination over exact fields (Q and real number fields).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::FieldElement;

/// Minimal exact-field interface shared by rationals and number-field elements.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_s(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn recip(&self) -> Self;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Self {
        self.recip()
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(self.field())
    }
    fn one_like(&self) -> Self {
        FieldElement::one(self.field())
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Self {
        self.inv()
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T], zero: &T) -> T {
    a.iter().zip(b).fold(zero.clone(), |acc, (x, y)| acc.plus(&x.times(y)))
}

/// Reduced row echelon form of the given rows, nonzero rows only, with pivot columns.
pub fn rref<T: Scalar>(rows: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero_s()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r] = m[r].iter().map(|x| x.times(&inv)).collect();
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero_s() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = x.minus(&f.times(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    rref(rows).0.len()
}

/// One solution x of A·x = b (free variables set to zero), or None if inconsistent.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T], zero: &T) -> Option<Vec<T>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if aug.is_empty() {
        return Some(vec![zero.clone(); ncols]);
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![zero.clone(); ncols];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Basis of {x : A·x = 0} for A with `ncols` columns.
pub fn nullspace<T: Scalar>(a: &[Vec<T>], ncols: usize, zero: &T) -> Vec<Vec<T>> {
    let (red, pivots) = rref(a);
    let one = zero.one_like();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); ncols];
            v[free] = one.clone();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = zero.minus(&row[free]);
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or None if singular.
pub fn inverse<T: Scalar>(a: &[Vec<T>], zero: &T) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let one = zero.one_like();
    let aug: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn to_rational_rows(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Rank over Q of a family of rational vectors.
pub fn span_rank(vs: &[Vec<BigRational>]) -> usize {
    rank(vs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn span_rank_examples() {
        assert_eq!(span_rank(&[]), 0);
        assert_eq!(span_rank(&[q(&[1, 0]), q(&[1, 0]), q(&[2, 0])]), 1);
        assert_eq!(span_rank(&[q(&[1, 1, 0]), q(&[0, 1, 1]), q(&[1, 0, -1])]), 2);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = vec![q(&[1, 2, 3]), q(&[2, 4, 7])];
        let z = BigRational::zero();
        let ns = nullspace(&a, 3, &z);
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert!(dot(row, &ns[0], &z).is_zero());
        }
    }

    #[test]
    fn solve_and_inverse() {
        let z = BigRational::zero();
        let a = vec![q(&[2, 1]), q(&[1, 1])];
        let x = solve(&a, &q(&[3, 2]), &z).unwrap();
        assert_eq!(x, q(&[1, 1]));
        let inv = inverse(&a, &z).unwrap();
        assert_eq!(inv, vec![q(&[1, -1]), q(&[-1, 2])]);
        assert!(solve(&[q(&[1, 1]), q(&[2, 2])], &q(&[1, 3]), &z).is_none());
    }
}
