//! Exact scalar fields: arbitrary-precision rationals and prime fields `F_p`.
//!
//! A [`Scalar`] carries its field with it, so mixing a rational with a residue
//! (or residues modulo different primes) is detected. The checked operations
//! report [`Error::FieldMismatch`]; the operator impls panic instead and are
//! meant for inner loops over values already validated to share one field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// The ambient field of a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Prime(Fp::new(v.rem_euclid(p as i64) as u32, p)),
        }
    }

    /// Rational `num/den`; over `F_p` the denominator is inverted modulo p.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rational => Ok(Scalar::Rational(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::Prime(_) => self.from_i64(num).checked_div(&self.from_i64(den)),
        }
    }

    /// The characteristic (0 for the rationals).
    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// `F_2` and `F_3`, where the coefficient 3 of the partial identity degenerates.
    pub fn is_small_characteristic(self) -> bool {
        matches!(self, FieldSpec::Prime(2) | FieldSpec::Prime(3))
    }

    /// Number of elements, when finite.
    pub fn order(self) -> Option<u64> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(p as u64),
        }
    }

    /// Element with canonical rank `k` in the enumeration order `0 < 1 < … < p-1`.
    pub fn element(self, k: u64) -> Scalar {
        match self {
            FieldSpec::Rational => self.from_i64(k as i64),
            FieldSpec::Prime(p) => Scalar::Prime(Fp::new((k % p as u64) as u32, p)),
        }
    }

    /// Re-reads `s` in this field: rationals reduce modulo p (denominators
    /// must be invertible), and a value already in this field is kept.
    pub fn reduce(self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (_, x) if x.field() == self => Ok(x.clone()),
            (FieldSpec::Prime(p), Scalar::Rational(r)) => {
                let m = BigInt::from(p);
                let residue = |v: &BigInt| {
                    let r = v.mod_floor(&m).to_u32().expect("below p");
                    Scalar::Prime(Fp::new(r, p))
                };
                residue(r.numer()).checked_div(&residue(r.denom()))
            }
            (_, x) => Err(Error::FieldMismatch {
                left: self,
                right: x.field(),
            }),
        }
    }

    /// Parses the scalar grammar used in structure files: for rationals an
    /// optional minus, digits and an optional `/digits` with nonzero
    /// denominator; for prime fields a decimal residue `0 <= v < p`.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let bad = || Error::ScalarSyntax(text.to_string());
        match self {
            FieldSpec::Rational => {
                let (sign, body) = match text.strip_prefix('-') {
                    Some(rest) => (-1, rest),
                    None => (1, text),
                };
                let (num, den) = match body.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (body, None),
                };
                let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
                if !digits(num) || den.is_some_and(|d| !digits(d)) {
                    return Err(bad());
                }
                let num = BigInt::from_str(num).map_err(|_| bad())? * sign;
                let den = match den {
                    Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
                    None => BigInt::one(),
                };
                if den.is_zero() {
                    return Err(Error::ScalarSyntax(format!("{text} (zero denominator)")));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::Prime(p) => {
                if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let v: u64 = text.parse().map_err(|_| bad())?;
                if v >= p as u64 {
                    return Err(Error::ScalarSyntax(format!("{text} (not a residue mod {p})")));
                }
                Ok(Scalar::Prime(Fp::new(v as u32, p)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Canonical residue `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    fn new(value: u32, modulus: u32) -> Fp {
        debug_assert!(value < modulus);
        Fp { value, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    fn add(self, o: Fp) -> Fp {
        let s = self.value as u64 + o.value as u64;
        Fp::new((s % self.modulus as u64) as u32, self.modulus)
    }

    fn mul(self, o: Fp) -> Fp {
        let s = self.value as u64 * o.value as u64;
        Fp::new((s % self.modulus as u64) as u32, self.modulus)
    }

    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp::new(self.modulus - self.value, self.modulus)
        }
    }

    fn inverse(self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        let e = i64::from(self.value).extended_gcd(&i64::from(self.modulus));
        Some(Fp::new(e.x.rem_euclid(self.modulus as i64) as u32, self.modulus))
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Fp),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Prime(x) => FieldSpec::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime(x) => x.value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field(),
                right: other.field(),
            })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * &other.inverse()?)
    }

    /// Exact equality that refuses to compare across fields.
    pub fn checked_eq(&self, other: &Scalar) -> Result<bool> {
        self.same_field(other)?;
        Ok(self == other)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Prime(x) => x.inverse().map(Scalar::Prime).ok_or(Error::DivisionByZero),
        }
    }

    /// `self += a * b`, the contraction kernel's inner step.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        match (self, a, b) {
            (Scalar::Prime(acc), Scalar::Prime(x), Scalar::Prime(y)) => {
                *acc = acc.add(x.mul(*y));
            }
            (Scalar::Rational(acc), Scalar::Rational(x), Scalar::Rational(y)) => {
                if !x.is_zero() && !y.is_zero() {
                    *acc += x * y;
                }
            }
            (acc, a, b) => panic!(
                "field mismatch in contraction: {} += {} * {}",
                acc.field(),
                a.field(),
                b.field()
            ),
        }
    }

    /// Rational numerator/denominator or the residue, for display and I/O.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Prime(_) => None,
        }
    }

    /// Small integer value, if this is an integer that fits in an `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Prime(x) => Some(x.value as i64),
        }
    }

    /// Canonical ordering used for enumeration: residues by value,
    /// rationals numerically.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Prime(a), Scalar::Prime(b)) => a.value.cmp(&b.value),
            (a, b) => a.field().cmp(&b.field()),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime(x) => write!(f, "{}", x.value),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => Scalar::Prime(a.add(*b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => {
                Scalar::Prime(a.add(b.neg()))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => Scalar::Prime(a.mul(*b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime(a) => Scalar::Prime(a.neg()),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
