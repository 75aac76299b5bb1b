//! Real algebraic number fields Q[x]/(m(x)) with a designated real root.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{self, Poly};
use super::ExactError;

/// Default cap on root-interval halvings used by sign determination.
pub const DEFAULT_BISECTION_CAP: u32 = 256;

/// Halvings applied once at construction so most sign queries start from a tight interval.
const PRESHARPEN: u32 = 64;

/// A real number field presented by a monic integer polynomial and an isolating interval.
#[derive(Clone, Debug)]
pub struct NumberField {
    min_poly: Vec<BigInt>,
    root_interval: (BigRational, BigRational),
    modulus: Poly,
    sharp: (BigRational, BigRational),
    lo_sign: i8,
    bisection_cap: u32,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly && self.root_interval == other.root_interval
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Builds a field, checking monicity and that the interval isolates exactly one root.
    pub fn new(
        min_poly: Vec<BigInt>,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Arc<Self>, ExactError> {
        Self::with_bisection_cap(min_poly, lo, hi, DEFAULT_BISECTION_CAP)
    }

    pub fn with_bisection_cap(
        min_poly: Vec<BigInt>,
        lo: BigRational,
        hi: BigRational,
        bisection_cap: u32,
    ) -> Result<Arc<Self>, ExactError> {
        let modulus = poly::from_ints(&min_poly);
        let deg = poly::degree(&modulus)
            .filter(|&d| d >= 1)
            .ok_or_else(|| ExactError::InvalidField("minimal polynomial must have degree >= 1".into()))?;
        if min_poly.len() != deg + 1 || !modulus[deg].is_one() {
            return Err(ExactError::InvalidField("minimal polynomial must be monic".into()));
        }
        if lo >= hi {
            return Err(ExactError::InvalidField("root interval must satisfy lo < hi".into()));
        }
        let at_lo = poly::eval(&modulus, &lo);
        let at_hi = poly::eval(&modulus, &hi);
        if at_lo.is_zero() || at_hi.is_zero() {
            return Err(ExactError::InvalidField("root interval endpoints must not be roots".into()));
        }
        if deg > 1 && poly::sign_of(&at_lo) == poly::sign_of(&at_hi) {
            return Err(ExactError::InvalidField("no sign change of m over the root interval".into()));
        }
        if poly::sturm_count(&modulus, &lo, &hi) != 1 {
            return Err(ExactError::InvalidField("root interval must isolate exactly one root".into()));
        }
        let (g, _) = poly::gcd_with_cofactor(&modulus, &poly::derivative(&modulus));
        if poly::degree(&g) != Some(0) {
            return Err(ExactError::InvalidField("minimal polynomial has a repeated factor".into()));
        }
        if (2..=3).contains(&deg) && has_integer_root(&min_poly) {
            return Err(ExactError::InvalidField("minimal polynomial is reducible".into()));
        }
        let lo_sign = poly::sign_of(&at_lo);
        let mut field = NumberField {
            min_poly,
            root_interval: (lo.clone(), hi.clone()),
            modulus,
            sharp: (lo, hi),
            lo_sign,
            bisection_cap,
        };
        if deg > 1 {
            for _ in 0..PRESHARPEN.min(bisection_cap) {
                field.sharp = field.halve(&field.sharp.0, &field.sharp.1);
            }
        }
        Ok(Arc::new(field))
    }

    /// The rational numbers, presented as Q[x]/(x).
    pub fn rationals() -> Arc<Self> {
        Self::new(
            vec![BigInt::zero(), BigInt::one()],
            BigRational::from_integer((-1).into()),
            BigRational::from_integer(1.into()),
        )
        .expect("x is a valid minimal polynomial")
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn root_interval(&self) -> (&BigRational, &BigRational) {
        (&self.root_interval.0, &self.root_interval.1)
    }

    pub fn bisection_cap(&self) -> u32 {
        self.bisection_cap
    }

    fn halve(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        let s = poly::sign_of(&poly::eval(&self.modulus, &mid));
        if s == 0 {
            (mid.clone(), mid)
        } else if s == self.lo_sign {
            (mid, hi.clone())
        } else {
            (lo.clone(), mid)
        }
    }

    /// Rational interval containing the root after `halvings` bisections of the input interval.
    pub fn root_enclosure(&self, halvings: u32) -> (BigRational, BigRational) {
        if self.degree() == 1 {
            let r = -BigRational::from_integer(self.min_poly[0].clone());
            return (r.clone(), r);
        }
        let (mut lo, mut hi) = if halvings >= PRESHARPEN.min(self.bisection_cap) {
            self.sharp.clone()
        } else {
            self.root_interval.clone()
        };
        let done = if halvings >= PRESHARPEN.min(self.bisection_cap) {
            PRESHARPEN.min(self.bisection_cap)
        } else {
            0
        };
        for _ in done..halvings {
            if lo == hi {
                break;
            }
            (lo, hi) = self.halve(&lo, &hi);
        }
        (lo, hi)
    }

    fn reduce(&self, p: Poly) -> Vec<BigRational> {
        let (_, mut r) = poly::divrem(&p, &self.modulus);
        r.resize(self.degree(), BigRational::zero());
        r
    }
}

fn has_integer_root(c: &[BigInt]) -> bool {
    let c0 = c[0].abs();
    if c0.is_zero() {
        return true;
    }
    let eval = |x: &BigInt| c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a);
    let bound = c0.to_u64().unwrap_or(u64::MAX).min(1 << 20);
    (1..=bound).any(|k| {
        let k = BigInt::from(k);
        (&c0 % &k).is_zero() && (eval(&k).is_zero() || eval(&-k).is_zero())
    })
}

/// An element of a [`NumberField`] in canonical power-basis form.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    /// Reduces an arbitrary coefficient list modulo the minimal polynomial.
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<BigRational>) -> Self {
        let mut p = coeffs;
        poly::trim(&mut p);
        let coeffs = field.reduce(p);
        FieldElement { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElement { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = q;
        e
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    /// The designated root x itself.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_coeffs(field, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn check_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "mixed number fields in arithmetic"
        );
    }

    fn poly(&self) -> Poly {
        let mut p = self.coeffs.clone();
        poly::trim(&mut p);
        p
    }

    pub fn checked_inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let (g, s) = poly::gcd_with_cofactor(&self.poly(), &self.field.modulus);
        if poly::degree(&g) != Some(0) {
            return Err(ExactError::InvalidField("zero divisor found: modulus is reducible".into()));
        }
        Ok(Self::from_coeffs(&self.field, s))
    }

    /// Multiplicative inverse. Panics on zero; use [`Self::checked_inv`] otherwise.
    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of a zero field element")
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.field), |acc, _| &acc * self)
    }

    /// Sign under the designated real embedding.
    pub fn sign(&self) -> Result<i8, ExactError> {
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(q) = self.as_rational() {
            return Ok(poly::sign_of(q));
        }
        let p = self.poly();
        let nf = &self.field;
        if nf.degree() == 1 {
            let (r, _) = nf.root_enclosure(0);
            return Ok(poly::sign_of(&poly::eval(&p, &r)));
        }
        let (mut lo, mut hi) = nf.root_interval.clone();
        let mut spent = 0;
        loop {
            if lo == hi {
                return Ok(poly::sign_of(&poly::eval(&p, &lo)));
            }
            let (a, b) = poly::eval_interval(&p, &lo, &hi);
            if a.is_positive() {
                return Ok(1);
            }
            if b.is_negative() {
                return Ok(-1);
            }
            if spent >= nf.bisection_cap {
                return Err(ExactError::RefinementBudgetExceeded(nf.bisection_cap));
            }
            if spent == 0 {
                (lo, hi) = nf.sharp.clone();
                spent = PRESHARPEN.min(nf.bisection_cap);
            } else {
                (lo, hi) = nf.halve(&lo, &hi);
                spent += 1;
            }
        }
    }

    /// Exact comparison of real embeddings.
    pub fn cmp_real(&self, other: &Self) -> Result<Ordering, ExactError> {
        Ok((self - other).sign()?.cmp(&0))
    }

    /// Rational interval enclosing the embedded value after `halvings` root refinements.
    pub fn enclosure(&self, halvings: u32) -> (BigRational, BigRational) {
        let (lo, hi) = self.field.root_enclosure(halvings);
        poly::eval_interval(&self.poly(), &lo, &hi)
    }

    /// Floating approximation, intended for display and export only.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(96);
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `digits` fractional digits, for export only.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!("{:.*}", digits, self.to_f64())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Polynomial notation in the generator `x`, e.g. `1/2 - 3*x`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_field(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_field(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_field(rhs);
        if self.field.degree() == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let p = poly::mul(&self.poly(), &rhs.poly());
        FieldElement { field: self.field.clone(), coeffs: self.field.reduce(p) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Sign of an element under the designated real embedding, as a free function.
pub fn field_sign(x: &FieldElement) -> Result<i8, ExactError> {
    x.sign()
}
