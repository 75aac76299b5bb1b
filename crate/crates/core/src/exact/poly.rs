//! Dense univariate polynomials over Q, used for field reduction, inverses and root isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending order, trailing zeros trimmed.
pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn from_ints(c: &[BigInt]) -> Poly {
    let mut p: Poly = c.iter().cloned().map(BigRational::from_integer).collect();
    trim(&mut p);
    p
}

pub(crate) fn degree(p: &Poly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out: Poly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut r = a.clone();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, y) in b.iter().enumerate() {
            r[i + shift] -= &c * y;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn derivative(p: &Poly) -> Poly {
    let mut out: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Extended Euclid: returns (g, s) with s·a ≡ g (mod b), g monic gcd.
pub(crate) fn gcd_with_cofactor(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Poly, Poly) = (vec![BigRational::one()], Vec::new());
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if let Some(d) = degree(&r0) {
        let lead = r0[d].clone();
        for c in r0.iter_mut().chain(s0.iter_mut()) {
            *c /= &lead;
        }
    }
    (r0, s0)
}

/// Number of distinct real roots in the half-open interval (lo, hi], by Sturm's theorem.
pub(crate) fn sturm_count(p: &Poly, lo: &BigRational, hi: &BigRational) -> usize {
    let mut seq = vec![p.clone(), derivative(p)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = divrem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let changes = |x: &BigRational| {
        let signs: Vec<i8> = seq
            .iter()
            .map(|q| sign_of(&eval(q, x)))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(lo).saturating_sub(changes(hi))
}

pub(crate) fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Interval enclosure of p over [lo, hi] by Horner's rule in interval arithmetic.
pub(crate) fn eval_interval(p: &Poly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for c in p.iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().cloned().unwrap_or_default();
        let mx = prods.iter().max().cloned().unwrap_or_default();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        from_ints(&c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[-1, 0, 1]);
        let (qq, r) = divrem(&a, &b);
        let back = sub(&mul(&qq, &b), &sub(&Vec::new(), &r));
        assert_eq!(back, a);
        assert!(degree(&r).map_or(true, |d| d < 2));
    }

    #[test]
    fn sturm_counts_golden_ratio_roots() {
        let m = p(&[-1, 1, 1]);
        assert_eq!(sturm_count(&m, &q(1, 2), &q(1, 1)), 1);
        assert_eq!(sturm_count(&m, &q(-2, 1), &q(1, 1)), 2);
        assert_eq!(sturm_count(&m, &q(1, 1), &q(3, 1)), 0);
    }

    #[test]
    fn cofactor_inverts_modulo() {
        let m = p(&[-1, 1, 1]);
        let a = p(&[0, 1]);
        let (g, s) = gcd_with_cofactor(&a, &m);
        assert_eq!(g, p(&[1]));
        let (_, r) = divrem(&mul(&s, &a), &m);
        assert_eq!(r, p(&[1]));
    }
}
