//! Exact scalars over Q or a prime field F_p.
//!
//! Rationals are arbitrary-precision (`BigRational`); prime-field elements are
//! stored as least nonnegative residues so that serialization is deterministic.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: exact rationals or F_p.
///
/// p = 2 is rejected by [`Field::prime`] and only available through
/// [`Field::prime_allow_char2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        Ok(Field::Prime(p))
    }

    /// Like [`Field::prime`] but permits p = 2.
    pub fn prime_allow_char2(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, Field::Rationals)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { value: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Fp { value: 1 % *p, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let p = *p;
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { value: r, p }
            }
        }
    }

    /// Parses the serialized form: "a/b" or "a" over Q, an integer over F_p
    /// (reduced to its least nonnegative residue).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.parse::<BigInt>()
                .map_err(|_| Error::Diagnostic(alloc::format!("bad scalar literal: {t:?}")))
        };
        match self {
            Field::Rationals => {
                if let Some((num, den)) = s.split_once('/') {
                    let num = parse_int(num)?;
                    let den = parse_int(den)?;
                    if den.is_zero() {
                        return Err(Error::Diagnostic("zero denominator".to_string()));
                    }
                    Ok(Scalar::Rat(BigRational::new(num, den)))
                } else {
                    Ok(Scalar::Rat(BigRational::from_integer(parse_int(s)?)))
                }
            }
            Field::Prime(p) => {
                let n = parse_int(s)?;
                let m = BigInt::from(*p);
                let mut r = n % &m;
                if r.is_negative() {
                    r += &m;
                }
                let (_, digits) = r.to_u64_digits();
                let value = digits.first().copied().unwrap_or(0);
                Ok(Scalar::Fp { value, p: *p })
            }
        }
    }

    /// The nonzero elements, for enumeration over F_p. Empty over Q.
    pub fn units(&self) -> Vec<Scalar> {
        match self {
            Field::Rationals => Vec::new(),
            Field::Prime(p) => (1..*p).map(|v| Scalar::Fp { value: v, p: *p }).collect(),
        }
    }

    /// All elements, for enumeration over F_p. Empty over Q.
    pub fn elements(&self) -> Vec<Scalar> {
        match self {
            Field::Rationals => Vec::new(),
            Field::Prime(p) => (0..*p).map(|v| Scalar::Fp { value: v, p: *p }).collect(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { value: u64, p: u64 },
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid; a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit");
    t.rem_euclid(p as i128) as u64
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { value, p } => *value == 1 % *p,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                Scalar::Fp { value: (a + b) % p, p: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                Scalar::Fp { value: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { value, p } => Scalar::Fp { value: (p - value) % p, p: *p },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Diagnostic("inverse of zero".to_string()));
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { value, p } => Scalar::Fp { value: mod_inv(*value, *p), p: *p },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Serialized form: "3/4" or "-2" over Q, the least nonnegative residue over F_p.
    pub fn to_serial(&self) -> String {
        match self {
            Scalar::Rat(r) => r.to_string(),
            Scalar::Fp { value, .. } => value.to_string(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_serial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_constructor_rejects_composites_and_char2() {
        assert_eq!(Field::prime(6), Err(Error::NotPrime(6)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(Field::prime(2), Err(Error::CharacteristicTwo));
        assert!(Field::prime(97).is_ok());
        assert!(Field::prime_allow_char2(2).is_ok());
    }

    #[test]
    fn exact_arithmetic_inverses() {
        let q = Field::Rationals;
        let a = q.parse_scalar("3/4").unwrap();
        assert!(a.add(&a.neg()).is_zero());
        assert!(a.mul(&a.inv().unwrap()).is_one());

        let f5 = Field::prime(5).unwrap();
        for v in f5.units() {
            assert!(v.mul(&v.inv().unwrap()).is_one());
            assert!(v.add(&v.neg()).is_zero());
        }
        // inverse of 2 mod 5 is 3
        let two = f5.from_i64(2);
        assert_eq!(two.inv().unwrap(), f5.from_i64(3));
    }

    #[test]
    fn parse_and_serialize_round_trip() {
        let q = Field::Rationals;
        for s in ["3/4", "-2", "0", "7"] {
            assert_eq!(q.parse_scalar(s).unwrap().to_serial(), s);
        }
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse_scalar("-1").unwrap(), f7.from_i64(6));
        assert_eq!(f7.parse_scalar("10").unwrap().to_serial(), "3");
    }
}
