//! Hermite and Smith normal forms of integer matrices with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Replaces rows (i, j) by (x·ri + y·rj, −b'·ri + a'·rj), a determinant-one operation.
fn combine_rows(m: &mut IntegerMatrix, i: usize, j: usize, x: &BigInt, y: &BigInt, a: &BigInt, b: &BigInt) {
    for c in 0..m.cols() {
        let ri = m[(i, c)].clone();
        let rj = m[(j, c)].clone();
        m[(i, c)] = x * &ri + y * &rj;
        m[(j, c)] = a * &rj - b * &ri;
    }
}

fn add_row_multiple(m: &mut IntegerMatrix, dst: usize, src: usize, k: &BigInt) {
    for c in 0..m.cols() {
        let v = &m[(src, c)] * k;
        m[(dst, c)] += v;
    }
}

fn add_col_multiple(m: &mut IntegerMatrix, dst: usize, src: usize, k: &BigInt) {
    for r in 0..m.rows() {
        let v = &m[(r, src)] * k;
        m[(r, dst)] += v;
    }
}

fn negate_row(m: &mut IntegerMatrix, i: usize) {
    for c in 0..m.cols() {
        m[(i, c)] = -m[(i, c)].clone();
    }
}

/// Row-style Hermite normal form: returns (H, U) with U unimodular and U·M = H.
///
/// H is in echelon form with positive pivots, entries above each pivot reduced into
/// [0, pivot), and zero rows at the bottom.
pub fn hnf(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let rows = m.rows();
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut r = 0;
    for c in 0..m.cols() {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let (g, x, y) = ext_gcd(&h[(r, c)], &h[(i, c)]);
            let a = &h[(r, c)] / &g;
            let b = &h[(i, c)] / &g;
            combine_rows(&mut h, r, i, &x, &y, &a, &b);
            combine_rows(&mut u, r, i, &x, &y, &a, &b);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                add_row_multiple(&mut h, i, r, &-&q);
                add_row_multiple(&mut u, i, r, &-&q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: returns (S, U, V) with U, V unimodular and U·M·V = S.
///
/// S is diagonal with nonnegative entries forming a divisibility chain. Each step moves the
/// smallest trailing entry to the pivot and reduces its row and column by remainders, which
/// keeps intermediate entries small.
pub fn snf(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !s[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let pivot = s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = s[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    add_row_multiple(&mut s, i, t, &-&q);
                    add_row_multiple(&mut u, i, t, &-&q);
                }
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = s[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    add_col_multiple(&mut s, j, t, &-&q);
                    add_col_multiple(&mut v, j, t, &-&q);
                }
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    add_row_multiple(&mut s, t, i, &BigInt::one());
                    add_row_multiple(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    (s, u, v)
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = val;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hnf(&im(&[&[1, 0], &[0, 1]]));
        assert_eq!(h, im(&[&[1, 0], &[0, 1]]));
        assert_eq!(u, IntegerMatrix::identity(2));
        let m = im(&[&[2], &[3]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, im(&[&[1], &[0]]));
        assert_eq!(&u * &m, h);
        let (h, u) = hnf(&im(&[&[2, 0], &[0, 3]]));
        assert_eq!(h, im(&[&[2, 0], &[0, 3]]));
        assert_eq!(u, IntegerMatrix::identity(2));
    }

    #[test]
    fn snf_examples() {
        let (s, _, _) = snf(&im(&[&[2, 0], &[0, 3]]));
        assert_eq!(s, im(&[&[1, 0], &[0, 6]]));
        let (s, _, _) = snf(&IntegerMatrix::zeros(2, 3));
        assert_eq!(s, IntegerMatrix::zeros(2, 3));
        let m = im(&[&[2, 4], &[6, 8]]);
        let (s, u, v) = snf(&m);
        assert_eq!(s, im(&[&[2, 0], &[0, 4]]));
        assert_eq!(&(&u * &m) * &v, s);
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(determinant(&im(&[&[2, 4], &[6, 8]])), BigInt::from(-8));
        assert_eq!(determinant(&im(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])), BigInt::from(-2));
        assert_eq!(determinant(&im(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }
}
