//! Exact scalars over the prime fields `F_p` and the rationals `Q`.
//!
//! Every [`Scalar`] carries its [`FieldSpec`] and is always stored in
//! canonical form: a residue in `[0, p)` for `F_p`, a reduced fraction with
//! positive denominator for `Q`. Equal scalars therefore compare equal
//! structurally, which the rest of the crate relies on for exact matrix and
//! group-ring comparisons.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const PRIME_LIMIT: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Rationals,
    Prime(u32),
}

/// The coefficient field `k`: either `Q` or `F_p` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec(Kind::Rationals)
    }

    /// `F_p`. Primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= PRIME_LIMIT || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec(Kind::Prime(p as u32)))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0, Kind::Rationals)
    }

    /// The prime modulus, or `None` for `Q`.
    pub fn modulus(&self) -> Option<u32> {
        match self.0 {
            Kind::Rationals => None,
            Kind::Prime(p) => Some(p),
        }
    }

    /// 0 for `Q`, `p` for `F_p`.
    pub fn characteristic(&self) -> u32 {
        self.modulus().unwrap_or(0)
    }

    /// Whether the characteristic divides `n` (always false in characteristic 0).
    ///
    /// This is the predicate separating the semisimple case of `k[G]` from the
    /// modular case.
    pub fn char_divides(&self, n: usize) -> bool {
        debug_assert!(n >= 1, "group orders are positive");
        match self.0 {
            Kind::Rationals => false,
            Kind::Prime(p) => n.is_multiple_of(p as usize),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        let repr = match self.0 {
            Kind::Rationals => Repr::Ratio(BigRational::from_integer(BigInt::from(v))),
            Kind::Prime(p) => Repr::Residue(v.rem_euclid(p as i64) as u32),
        };
        Scalar { spec: *self, repr }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        let repr = match self.0 {
            Kind::Rationals => Repr::Ratio(BigRational::from_integer(v.clone())),
            Kind::Prime(p) => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Repr::Residue(r.to_u32().expect("residue fits in u32"))
            }
        };
        Scalar { spec: *self, repr }
    }

    /// Residue `v mod p`; only meaningful for prime fields.
    pub(crate) fn residue(&self, v: u32) -> Scalar {
        match self.0 {
            Kind::Prime(p) => Scalar {
                spec: *self,
                repr: Repr::Residue(v % p),
            },
            Kind::Rationals => self.from_i64(v as i64),
        }
    }

    /// `num / den` interpreted in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.from_bigint(num) * &d.inv()?)
    }

    /// Parses an integer or a fraction `p/q` into this field.
    pub fn parse_scalar(&self, token: &str) -> Result<Scalar> {
        let t = token.trim();
        let parse_int = |s: &str| {
            BigInt::from_str(s.trim())
                .map_err(|_| Error::parse("field element", token, "expected an integer or p/q"))
        };
        match t.split_once('/') {
            Some((num, den)) => {
                let (num, den) = (parse_int(num)?, parse_int(den)?);
                self.from_ratio(&num, &den)
                    .map_err(|_| Error::parse("field element", token, "zero denominator"))
            }
            None => Ok(self.from_bigint(&parse_int(t)?)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Rationals => write!(f, "Q"),
            Kind::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Parses `Q` or `F<p>`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::rationals());
        }
        let digits = t
            .strip_prefix('F')
            .ok_or_else(|| Error::parse("field spec", t, "expected `Q` or `F<p>`"))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::parse("field spec", t, "expected a prime after `F`"))?;
        FieldSpec::prime(p).map_err(|_| Error::parse("field spec", t, format!("{p} is not prime")))
    }
}

impl serde::Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Residue(u32),
    Ratio(BigRational),
}

/// An exact element of a [`FieldSpec`].
///
/// The arithmetic operators on `&Scalar` panic when the two operands come
/// from different fields; the `checked_*` methods report that as
/// [`Error::FieldMismatch`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    spec: FieldSpec,
    repr: Repr,
}

impl Scalar {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Residue(v) => *v == 0,
            Repr::Ratio(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Residue(v) => *v == 1,
            Repr::Ratio(r) => r.is_one(),
        }
    }

    /// The residue in `[0, p)` for prime-field scalars.
    pub fn as_residue(&self) -> Option<u32> {
        match self.repr {
            Repr::Residue(v) => Some(v),
            Repr::Ratio(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Ratio(r) => Some(r),
            Repr::Residue(_) => None,
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.spec, other.spec))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        let repr = match (&self.repr, &other.repr, self.spec.0) {
            (Repr::Residue(a), Repr::Residue(b), Kind::Prime(p)) => {
                Repr::Residue(((*a as u64 + *b as u64) % p as u64) as u32)
            }
            (Repr::Ratio(a), Repr::Ratio(b), _) => Repr::Ratio(a + b),
            _ => unreachable!("representation does not match field spec"),
        };
        Scalar {
            spec: self.spec,
            repr,
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let repr = match (&self.repr, &other.repr, self.spec.0) {
            (Repr::Residue(a), Repr::Residue(b), Kind::Prime(p)) => {
                Repr::Residue(((*a as u64 * *b as u64) % p as u64) as u32)
            }
            (Repr::Ratio(a), Repr::Ratio(b), _) => Repr::Ratio(a * b),
            _ => unreachable!("representation does not match field spec"),
        };
        Scalar {
            spec: self.spec,
            repr,
        }
    }

    fn neg_ref(&self) -> Scalar {
        let repr = match (&self.repr, self.spec.0) {
            (Repr::Residue(0), _) => Repr::Residue(0),
            (Repr::Residue(a), Kind::Prime(p)) => Repr::Residue(p - a),
            (Repr::Ratio(a), _) => Repr::Ratio(-a),
            _ => unreachable!("representation does not match field spec"),
        };
        Scalar {
            spec: self.spec,
            repr,
        }
    }

    /// Multiplicative inverse; modular inverses come from the extended
    /// Euclidean algorithm.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match (&self.repr, self.spec.0) {
            (Repr::Residue(a), Kind::Prime(p)) => Repr::Residue(mod_inverse(*a, p)),
            (Repr::Ratio(a), _) => Repr::Ratio(a.recip()),
            _ => unreachable!("representation does not match field spec"),
        };
        Ok(Scalar {
            spec: self.spec,
            repr,
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Re-reduces the stored value. Scalars are always canonical, so this is
    /// the identity; it exists so canonical form can be tested.
    pub fn canonicalize(&self) -> Scalar {
        let repr = match (&self.repr, self.spec.0) {
            (Repr::Residue(a), Kind::Prime(p)) => Repr::Residue(a % p),
            (Repr::Ratio(a), _) => {
                Repr::Ratio(BigRational::new(a.numer().clone(), a.denom().clone()))
            }
            _ => unreachable!("representation does not match field spec"),
        };
        Scalar {
            spec: self.spec,
            repr,
        }
    }

    /// Signed integer value for `Q` scalars that are integers; residues are
    /// returned as-is.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.repr {
            Repr::Residue(v) => Some(BigInt::from(*v)),
            Repr::Ratio(r) if r.is_integer() => Some(r.to_integer()),
            Repr::Ratio(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(&self.repr, Repr::Ratio(r) if r.is_negative())
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    let (mut old_r, mut r) = (a as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(p as i64) as u32
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Residue(v) => write!(f, "{v}"),
            Repr::Ratio(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Ratio(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn q(s: &str) -> Scalar {
        FieldSpec::rationals().parse_scalar(s).unwrap()
    }

    #[test]
    fn f7_addition_wraps() {
        let k = f(7);
        assert_eq!(&k.from_i64(3) + &k.from_i64(5), k.from_i64(1));
    }

    #[test]
    fn rational_addition() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
        assert_eq!((&q("1/2") + &q("1/3")).to_string(), "5/6");
    }

    #[test]
    fn additive_inverse() {
        for k in [FieldSpec::rationals(), f(2), f(7)] {
            let x = k.from_i64(5);
            assert!((&x + &(-&x)).is_zero());
        }
    }

    #[test]
    fn inverses() {
        // brute force over F7: the unique y with 3y = 1
        let k = f(7);
        let three = k.from_i64(3);
        let brute = (0..7)
            .map(|v| k.from_i64(v))
            .find(|y| (&three * y).is_one())
            .unwrap();
        assert_eq!(brute, k.from_i64(5));
        assert_eq!(three.inv().unwrap(), brute);
        assert_eq!(q("2/3").inv().unwrap(), q("3/2"));
        for k in [FieldSpec::rationals(), f(2), f(13)] {
            assert_eq!(k.one().inv().unwrap(), k.one());
            assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn char_divides_examples() {
        assert!(!FieldSpec::rationals().char_divides(6));
        assert!(f(2).char_divides(6));
        assert!(!f(5).char_divides(6));
        assert!(!f(2).char_divides(1));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = f(3).one();
        let b = f(5).one();
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch(f(3), f(5))));
        assert!(a.checked_mul(&FieldSpec::rationals().one()).is_err());
    }

    #[test]
    fn primality_is_enforced() {
        for bad in [0, 1, 4, 9, 15, 1 << 31, 2147483649] {
            assert!(FieldSpec::prime(bad).is_err(), "{bad}");
        }
        for good in [2, 3, 5, 7, 13, 2147483647] {
            assert!(FieldSpec::prime(good).is_ok(), "{good}");
        }
    }

    #[test]
    fn large_prime_products_do_not_overflow() {
        let k = f(2147483647);
        let x = k.from_i64(2147483646);
        assert_eq!(&x * &x, k.one());
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn spec_strings() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::rationals());
        assert_eq!("F7".parse::<FieldSpec>().unwrap(), f(7));
        assert_eq!(f(11).to_string(), "F11");
        for bad in ["F4", "F", "R", "f7", "F-3"] {
            match bad.parse::<FieldSpec>() {
                Err(Error::Parse { token, .. }) => assert_eq!(token, bad),
                other => panic!("{bad}: {other:?}"),
            }
        }
    }

    #[test]
    fn scalar_literals() {
        let k = f(7);
        assert_eq!(k.parse_scalar("-1").unwrap(), k.from_i64(6));
        assert_eq!(k.parse_scalar("1/2").unwrap(), k.from_i64(4));
        assert!(k.parse_scalar("1/7").is_err());
        assert_eq!(q("4/-6"), q("-2/3"));
        assert_eq!(q("-2/3").to_string(), "-2/3");
        assert!(FieldSpec::rationals().parse_scalar("x").is_err());
    }

    #[test]
    fn exhaustive_small_field_axioms() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let k = f(p);
            let all: Vec<Scalar> = (0..p as i64).map(|v| k.from_i64(v)).collect();
            for a in &all {
                assert_eq!(a.canonicalize(), *a);
                if !a.is_zero() {
                    let ai = a.inv().unwrap();
                    assert!((a * &ai).is_one() && (&ai * a).is_one());
                }
                for b in &all {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in &all {
                        assert_eq!(&(a + b) + c, a + &(b + c));
                        assert_eq!(&(a * b) * c, a * &(b * c));
                        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                    }
                }
            }
        }
    }
}
