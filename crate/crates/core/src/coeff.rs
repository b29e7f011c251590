//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! Polynomial code is generic over a [`Field`] value that owns the
//! arithmetic, so prime-field elements can be stored as bare `u32`
//! residues while the modulus lives in the field object.
//! [`FieldScalar`] is the tagged, self-describing scalar used at API
//! boundaries where characteristics must be checked at runtime.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Historical default prime for heavy modular computations.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed characteristic: {0} vs {1}")]
    MixedCharacteristic(u64, u64),
    #[error("{0} is not a prime fitting a machine word")]
    NotPrime(u64),
}

/// A coefficient field. Elements are plain values; all arithmetic goes
/// through the field so that residues need not carry their modulus.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, CoeffError>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of `num/den`; fails when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem, CoeffError>;
    /// Whether the element prints with a leading minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;
    /// Text form without sign handling surprises: `-3/2`, `7`, `-1`.
    fn format(&self, a: &Self::Elem) -> String;
    fn to_scalar(&self, a: &Self::Elem) -> FieldScalar;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, CoeffError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a - b * c`.
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }
}

/// Arbitrary-precision rational number in lowest terms with positive
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_integer(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn inverse(&self) -> Result<Self, CoeffError> {
        if self.0.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl std::ops::Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// An element of `F_p` together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u32,
    modulus: u32,
}

impl PrimeFieldElement {
    pub fn new(value: i64, modulus: u32) -> Self {
        PrimeFieldElement {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }
}

/// Runtime-tagged scalar. Arithmetic refuses to mix characteristics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(Rational),
    Prime(PrimeFieldElement),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldScalar {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldScalar::Rational(_) => 0,
            FieldScalar::Prime(e) => e.modulus as u64,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Prime(e) => e.value == 0,
        }
    }

    pub fn inverse(&self) -> Result<FieldScalar, CoeffError> {
        match self {
            FieldScalar::Rational(r) => r.inverse().map(FieldScalar::Rational),
            FieldScalar::Prime(e) => {
                let f = PrimeField::new(e.modulus)?;
                Ok(FieldScalar::Prime(PrimeFieldElement {
                    value: f.inv(&e.value)?,
                    modulus: e.modulus,
                }))
            }
        }
    }

    pub fn arith(&self, other: &FieldScalar, op: ArithOp) -> Result<FieldScalar, CoeffError> {
        match (self, other) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => {
                let r = Rationals;
                Ok(FieldScalar::Rational(match op {
                    ArithOp::Add => r.add(a, b),
                    ArithOp::Sub => r.sub(a, b),
                    ArithOp::Mul => r.mul(a, b),
                    ArithOp::Div => r.div(a, b)?,
                }))
            }
            (FieldScalar::Prime(a), FieldScalar::Prime(b)) if a.modulus == b.modulus => {
                let f = PrimeField::new(a.modulus)?;
                let value = match op {
                    ArithOp::Add => f.add(&a.value, &b.value),
                    ArithOp::Sub => f.sub(&a.value, &b.value),
                    ArithOp::Mul => f.mul(&a.value, &b.value),
                    ArithOp::Div => f.div(&a.value, &b.value)?,
                };
                Ok(FieldScalar::Prime(PrimeFieldElement {
                    value,
                    modulus: a.modulus,
                }))
            }
            _ => Err(CoeffError::MixedCharacteristic(
                self.characteristic(),
                other.characteristic(),
            )),
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => write!(f, "{r}"),
            FieldScalar::Prime(e) => write!(f, "{}", e.value),
        }
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.0.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.0.is_one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Result<Rational, CoeffError> {
        a.inverse()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(v)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Rational, CoeffError> {
        Rational::new(num.clone(), den.clone())
    }
    fn is_negative(&self, a: &Rational) -> bool {
        a.0.is_negative()
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn to_scalar(&self, a: &Rational) -> FieldScalar {
        FieldScalar::Rational(a.clone())
    }
}

/// The prime field `F_p` with `p < 2^31`; elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, CoeffError> {
        if p >= 1 << 31 || !is_prime(p as u64) {
            return Err(CoeffError::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn element(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement::new(v, self.p)
    }

    fn reduce_big(&self, v: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u32().expect("residue fits u32")
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Result<u32, CoeffError> {
        if *a == 0 {
            return Err(CoeffError::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32, CoeffError> {
        let d = self.reduce_big(den);
        let n = self.reduce_big(num);
        self.div(&n, &d)
    }
    fn is_negative(&self, a: &u32) -> bool {
        *a > self.p / 2
    }
    fn format(&self, a: &u32) -> String {
        if self.is_negative(a) {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn to_scalar(&self, a: &u32) -> FieldScalar {
        FieldScalar::Prime(PrimeFieldElement {
            value: *a,
            modulus: self.p,
        })
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> FieldScalar {
        FieldScalar::Rational(Rational::new(n.into(), d.into()).unwrap())
    }

    fn fp(v: i64, p: u32) -> FieldScalar {
        FieldScalar::Prime(PrimeFieldElement::new(v, p))
    }

    #[test]
    fn rational_add() {
        assert_eq!(q(1, 2).arith(&q(1, 3), ArithOp::Add).unwrap(), q(5, 6));
    }

    #[test]
    fn modular_wraparound() {
        assert_eq!(
            fp(32002, 32003).arith(&fp(1, 32003), ArithOp::Add).unwrap(),
            fp(0, 32003)
        );
    }

    #[test]
    fn rational_normalized_on_construction() {
        let r = Rational::new(2.into(), 4.into()).unwrap();
        assert_eq!(r.numer(), &BigInt::from(1));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = Rational::new(0.into(), (-7).into()).unwrap();
        assert_eq!(z.denom(), &BigInt::from(1));
        let n = Rational::new(3.into(), (-6).into()).unwrap();
        assert_eq!(n.to_string(), "-1/2");
    }

    #[test]
    fn inverses() {
        assert_eq!(q(3, 7).inverse().unwrap(), q(7, 3));
        assert_eq!(fp(2, 5).inverse().unwrap(), fp(3, 5));
        assert_eq!(q(0, 1).inverse(), Err(CoeffError::DivisionByZero));
        assert_eq!(fp(0, 5).inverse(), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn division_by_zero_and_mixing() {
        assert_eq!(q(1, 2).arith(&q(0, 1), ArithOp::Div), Err(CoeffError::DivisionByZero));
        assert_eq!(
            q(1, 2).arith(&fp(1, 7), ArithOp::Add),
            Err(CoeffError::MixedCharacteristic(0, 7))
        );
        assert_eq!(
            fp(1, 5).arith(&fp(1, 7), ArithOp::Mul),
            Err(CoeffError::MixedCharacteristic(5, 7))
        );
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(32003).is_ok());
        assert_eq!(PrimeField::new(32004), Err(CoeffError::NotPrime(32004)));
    }

    #[test]
    fn prime_field_ratio_and_format() {
        let f = PrimeField::new(7).unwrap();
        let half = f.from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert_eq!(f.format(&6), "-1");
        assert_eq!(f.from_ratio(&1.into(), &14.into()), Err(CoeffError::DivisionByZero));
    }

    fn arb_q() -> impl Strategy<Value = FieldScalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    fn arb_fp() -> impl Strategy<Value = FieldScalar> {
        (0i64..32003).prop_map(|v| fp(v, 32003))
    }

    fn check_axioms(a: &FieldScalar, b: &FieldScalar, c: &FieldScalar) {
        use ArithOp::*;
        let ab = a.arith(b, Mul).unwrap();
        assert_eq!(ab, b.arith(a, Mul).unwrap());
        assert_eq!(a.arith(b, Add).unwrap(), b.arith(a, Add).unwrap());
        assert_eq!(
            ab.arith(c, Mul).unwrap(),
            a.arith(&b.arith(c, Mul).unwrap(), Mul).unwrap()
        );
        assert_eq!(
            a.arith(b, Add).unwrap().arith(c, Add).unwrap(),
            a.arith(&b.arith(c, Add).unwrap(), Add).unwrap()
        );
        assert_eq!(
            a.arith(&b.arith(c, Add).unwrap(), Mul).unwrap(),
            ab.arith(&a.arith(c, Mul).unwrap(), Add).unwrap()
        );
        if !a.is_zero() {
            let one = a.arith(&a.inverse().unwrap(), Mul).unwrap();
            assert_eq!(one, a.arith(a, Div).unwrap());
            assert!(one.arith(&one, Mul).unwrap() == one && !one.is_zero());
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_q(), b in arb_q(), c in arb_q()) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn prime_field_axioms(a in arb_fp(), b in arb_fp(), c in arb_fp()) {
            check_axioms(&a, &b, &c);
            if let FieldScalar::Prime(e) = a.arith(&b, ArithOp::Mul).unwrap() {
                prop_assert!(e.value() < 32003);
            }
        }
    }
}
