//! Finitely generated subgroups of Q^n in canonical Hermite form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg;
use super::matrix::{IntegerMatrix, RationalMatrix};
use super::normal_form::{hnf, snf};
use super::ExactError;

/// The lattice (1/denom)·rowspan(basis), with `basis` the nonzero rows of a row HNF.
///
/// The pair (denom, basis) is normalized so that equal lattices compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    denom: BigInt,
    basis: Vec<Vec<BigInt>>,
}

/// Result of an index computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }
}

fn lcm_of_denominators<'a>(vals: impl Iterator<Item = &'a BigRational>) -> BigInt {
    vals.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational row to integers by the LCM of its denominators.
pub(crate) fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(row.iter());
    row.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
}

impl Lattice {
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, denom: BigInt::one(), basis: Vec::new() }
    }

    /// The standard lattice Z^n.
    pub fn standard(ambient_dim: usize) -> Self {
        Self::from_integer_generators(&IntegerMatrix::identity(ambient_dim).to_rows(), ambient_dim)
    }

    pub fn from_integer_generators(gens: &[Vec<BigInt>], ambient_dim: usize) -> Self {
        Self::build(gens.to_vec(), BigInt::one(), ambient_dim)
    }

    pub fn from_rational_generators(gens: &[Vec<BigRational>], ambient_dim: usize) -> Self {
        let d = lcm_of_denominators(gens.iter().flatten());
        let dq = BigRational::from_integer(d.clone());
        let ints = gens
            .iter()
            .map(|g| g.iter().map(|q| (q * &dq).to_integer()).collect())
            .collect();
        Self::build(ints, d, ambient_dim)
    }

    fn build(gens: Vec<Vec<BigInt>>, denom: BigInt, ambient_dim: usize) -> Self {
        assert!(gens.iter().all(|g| g.len() == ambient_dim), "generator dimension mismatch");
        if gens.is_empty() {
            return Self::zero(ambient_dim);
        }
        let (h, _) = hnf(&IntegerMatrix::from_rows(gens, ambient_dim));
        let mut basis: Vec<Vec<BigInt>> = h
            .to_rows()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let g = basis.iter().flatten().fold(denom.clone(), |acc, x| acc.gcd(x));
        let denom = if basis.is_empty() { BigInt::one() } else { &denom / &g };
        for x in basis.iter_mut().flatten() {
            *x = &*x / &g;
        }
        Lattice { ambient_dim, denom, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer HNF rows; the lattice is these rows divided by [`Self::denominator`].
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    pub fn rational_basis(&self) -> Vec<Vec<BigRational>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| BigRational::new(x.clone(), self.denom.clone())).collect())
            .collect()
    }

    /// Integer coordinates of `v` in the canonical basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_dim, "vector dimension mismatch");
        let dq = BigRational::from_integer(self.denom.clone());
        let mut target = Vec::with_capacity(v.len());
        for q in v {
            let t = q * &dq;
            if !t.is_integer() {
                return None;
            }
            target.push(t.to_integer());
        }
        let mut x = Vec::with_capacity(self.basis.len());
        let mut residual = target;
        for row in &self.basis {
            let p = row.iter().position(|e| !e.is_zero()).expect("nonzero basis row");
            let (q, r) = residual[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (res, b) in residual.iter_mut().zip(row) {
                *res -= &q * b;
            }
            x.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(x)
    }

    /// Canonical representative of v modulo a full-rank lattice (None if rank < ambient_dim).
    ///
    /// Congruent vectors reduce to the same output, so it can serve as a hash key.
    pub fn reduce(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        if self.rank() != self.ambient_dim {
            return None;
        }
        let dq = BigRational::from_integer(self.denom.clone());
        let mut t: Vec<BigRational> = v.iter().map(|q| q * &dq).collect();
        for (p, row) in self.basis.iter().enumerate() {
            // Full rank HNF has its i-th pivot in column i.
            let q = (&t[p] / BigRational::from_integer(row[p].clone())).floor();
            if !q.is_zero() {
                for (x, b) in t.iter_mut().zip(row) {
                    *x -= &q * BigRational::from_integer(b.clone());
                }
            }
        }
        Some(t.into_iter().map(|x| x / &dq).collect())
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, sub: &Lattice) -> bool {
        sub.rational_basis().iter().all(|b| self.contains(b))
    }

    /// Z^n ∩ Q-span of the lattice.
    pub fn saturation(&self) -> Lattice {
        let zero = BigRational::zero();
        let rows = linalg::to_rational_rows(&self.basis);
        let perp = linalg::nullspace(&rows, self.ambient_dim, &zero);
        integer_kernel(&RationalMatrix::from_rows(perp, self.ambient_dim))
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        if self.rank() == 0 || other.rank() == 0 {
            return Lattice::zero(self.ambient_dim);
        }
        let a = self.rational_basis();
        let b = other.rational_basis();
        // Integer relations x·A = y·B, read off from the left kernel of [A; −B].
        let stacked_t: Vec<Vec<BigRational>> = (0..self.ambient_dim)
            .map(|j| a.iter().map(|r| r[j].clone()).chain(b.iter().map(|r| -r[j].clone())).collect())
            .collect();
        let kernel = integer_kernel(&RationalMatrix::from_rows(stacked_t, a.len() + b.len()));
        let gens: Vec<Vec<BigRational>> = kernel
            .basis()
            .iter()
            .map(|c| {
                (0..self.ambient_dim)
                    .map(|j| {
                        a.iter()
                            .zip(c)
                            .fold(BigRational::zero(), |acc, (row, x)| acc + &row[j] * BigRational::from_integer(x.clone()))
                    })
                    .collect()
            })
            .collect();
        Lattice::from_rational_generators(&gens, self.ambient_dim)
    }

    /// Coefficient matrix of `self`'s basis in terms of `sup`'s basis.
    fn coefficients_in(&self, sup: &Lattice) -> Result<IntegerMatrix, ExactError> {
        let rows = self
            .rational_basis()
            .iter()
            .map(|b| sup.coordinates(b).ok_or(ExactError::NotASubgroup))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntegerMatrix::from_rows(rows, sup.rank()))
    }
}

/// Index [sup : sub], or INFINITE when the ranks differ.
pub fn subgroup_index(sub: &Lattice, sup: &Lattice) -> Result<Index, ExactError> {
    if sub.ambient_dim != sup.ambient_dim {
        return Err(ExactError::DimensionMismatch("lattices in different ambient spaces".into()));
    }
    let c = sub.coefficients_in(sup)?;
    if sub.rank() != sup.rank() {
        return Ok(Index::Infinite);
    }
    let (s, _, _) = snf(&c);
    Ok(Index::Finite((0..s.rows()).fold(BigInt::one(), |acc, i| acc * &s[(i, i)])))
}

/// Representatives of sup/sub as vectors of sup, in SNF-coordinate lexicographic order.
///
/// Returns `Ok(None)` when the quotient is infinite.
pub fn coset_representatives(sub: &Lattice, sup: &Lattice) -> Result<Option<Vec<Vec<BigRational>>>, ExactError> {
    if sub.ambient_dim != sup.ambient_dim {
        return Err(ExactError::DimensionMismatch("lattices in different ambient spaces".into()));
    }
    let c = sub.coefficients_in(sup)?;
    if sub.rank() != sup.rank() {
        return Ok(None);
    }
    let k = sup.rank();
    if k == 0 {
        return Ok(Some(vec![vec![BigRational::zero(); sup.ambient_dim]]));
    }
    let (s, _, v) = snf(&c);
    let zero = BigRational::zero();
    let v_inv = linalg::inverse(&v.to_rational().to_rows(), &zero).expect("unimodular transform");
    let sup_basis = sup.rational_basis();
    // Adapted basis of sup: rows of V^{-1}·B, in which sub = ⊕ d_i Z b'_i.
    let adapted: Vec<Vec<BigRational>> = v_inv
        .iter()
        .map(|row| {
            (0..sup.ambient_dim)
                .map(|j| row.iter().zip(&sup_basis).fold(BigRational::zero(), |acc, (x, b)| acc + x * &b[j]))
                .collect()
        })
        .collect();
    let moduli: Vec<BigInt> = (0..k).map(|i| s[(i, i)].clone()).collect();
    let mut reps = Vec::new();
    let mut digits = vec![BigInt::zero(); k];
    loop {
        let rep = (0..sup.ambient_dim)
            .map(|j| {
                digits
                    .iter()
                    .zip(&adapted)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + BigRational::from_integer(a.clone()) * &b[j])
            })
            .collect();
        reps.push(rep);
        // Odometer increment, last digit fastest.
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(Some(reps));
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < moduli[pos] {
                break;
            }
            digits[pos] = BigInt::zero();
        }
    }
}

/// Saturated lattice {c ∈ Z^cols : M·c = 0}.
pub fn integer_kernel(m: &RationalMatrix) -> Lattice {
    let cols = m.cols();
    let ints: Vec<Vec<BigInt>> = m.to_rows().iter().map(|r| clear_denominators(r)).collect();
    let t = IntegerMatrix::from_rows(
        (0..cols).map(|j| ints.iter().map(|r| r[j].clone()).collect()).collect(),
        m.rows(),
    );
    let (h, u) = hnf(&t);
    let gens: Vec<Vec<BigInt>> = (0..cols)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect();
    Lattice::from_integer_generators(&gens, cols)
}

/// Sign-insensitive check that an integer square matrix is unimodular.
pub fn is_unimodular(m: &IntegerMatrix) -> bool {
    m.rows() == m.cols() && super::normal_form::determinant(m).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn qv(v: &[(i64, i64)]) -> Vec<BigRational> {
        v.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect()
    }

    fn lat(rows: &[&[i64]]) -> Lattice {
        Lattice::from_integer_generators(&rows.iter().map(|r| zv(r)).collect::<Vec<_>>(), rows[0].len())
    }

    #[test]
    fn index_examples() {
        let z2 = Lattice::standard(2);
        assert_eq!(subgroup_index(&lat(&[&[2, 0], &[0, 3]]), &z2).unwrap(), Index::Finite(6.into()));
        assert_eq!(subgroup_index(&z2, &z2).unwrap(), Index::Finite(1.into()));
        assert_eq!(subgroup_index(&lat(&[&[1, 0]]), &z2).unwrap(), Index::Infinite);
        assert_eq!(subgroup_index(&z2, &lat(&[&[2, 0], &[0, 1]])), Err(ExactError::NotASubgroup));
    }

    #[test]
    fn kernel_examples() {
        let m = RationalMatrix::from_rows(vec![qv(&[(1, 1), (-1, 1)])], 2);
        assert_eq!(integer_kernel(&m).basis(), &[zv(&[1, 1])]);
        let id = IntegerMatrix::identity(3).to_rational();
        assert_eq!(integer_kernel(&id).rank(), 0);
        let m = RationalMatrix::from_rows(vec![qv(&[(1, 2), (-1, 3)])], 2);
        assert_eq!(integer_kernel(&m).basis(), &[zv(&[2, 3])]);
    }

    #[test]
    fn rational_lattices_are_canonical() {
        let a = Lattice::from_rational_generators(&[qv(&[(1, 2), (0, 1)]), qv(&[(0, 1), (1, 1)])], 2);
        let b = Lattice::from_rational_generators(&[qv(&[(1, 2), (1, 1)]), qv(&[(0, 1), (1, 1)])], 2);
        assert_eq!(a, b);
        assert!(a.contains(&qv(&[(3, 2), (-4, 1)])));
        assert!(!a.contains(&qv(&[(1, 3), (0, 1)])));
    }

    #[test]
    fn cosets_of_index_six() {
        let sub = lat(&[&[2, 0], &[0, 3]]);
        let reps = coset_representatives(&sub, &Lattice::standard(2)).unwrap().unwrap();
        assert_eq!(reps.len(), 6);
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                let diff: Vec<_> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                assert!(!sub.contains(&diff));
            }
        }
    }

    #[test]
    fn intersection_and_saturation() {
        let a = lat(&[&[2, 0], &[0, 1]]);
        let b = lat(&[&[1, 0], &[0, 3]]);
        assert_eq!(a.intersection(&b), lat(&[&[2, 0], &[0, 3]]));
        let s = lat(&[&[2, 4, 6]]).saturation();
        assert_eq!(s, lat(&[&[1, 2, 3]]));
    }
}
