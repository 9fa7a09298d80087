use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::rational::Rational;
use crate::error::{Error, Result};

/// The base field: the rationals or a prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Validated constructor for prime fields.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::Validation(format!("field modulus {p} is not prime")))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Rational::zero()),
            FieldSpec::Prime(p) => Scalar::Fp(0, *p),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Rational::from_i64(v)),
            FieldSpec::Prime(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u64, *p),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Rational::from_bigint(v)),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Fp(r.to_u64().unwrap(), *p)
            }
        }
    }

    /// Maps a rational into this field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, r: &Rational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Q(r.clone())),
            FieldSpec::Prime(_) => {
                let d = self.from_bigint(&r.denom());
                if d.is_zero() {
                    return Err(Error::Validation(format!(
                        "rational {r} has no image in {self}"
                    )));
                }
                Ok(self.from_bigint(&r.numer()).div(&d))
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a field named by a [`FieldSpec`]. Residues are kept in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp(u64, u64),
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Fp(_, p) => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u128 + *b as u128) % *p as u128) as u64, *p)
            }
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp(0, p) => Scalar::Fp(0, *p),
            Scalar::Fp(a, p) => Scalar::Fp(p - a, *p),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => Scalar::Fp(mulmod(*a, *b, *p), *p),
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    /// Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.inv()),
            Scalar::Fp(a, p) => Scalar::Fp(powmod(*a, p - 2, *p), *p),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp(..) => None,
        }
    }

    /// Integer representative: the integer value over Q (if integral), or the
    /// symmetric residue in (-p/2, p/2] over F_p.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Q(r) => r.to_integer(),
            Scalar::Fp(v, p) => {
                let v = BigInt::from(*v);
                let p = BigInt::from(*p);
                if &v * 2 > p {
                    Some(v - p)
                } else {
                    Some(v)
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.signum() < 0,
            Scalar::Fp(..) => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp(v, _) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        let a = f.from_i64(3);
        assert_eq!(a.mul(&a.inv()), f.one());
        assert_eq!(f.from_i64(-1), Scalar::Fp(6, 7));
        assert_eq!(f.from_i64(-1).to_integer().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn rational_into_prime_field() {
        let f = FieldSpec::Prime(5);
        let half: Rational = "1/2".parse().unwrap();
        assert_eq!(f.from_rational(&half).unwrap(), Scalar::Fp(3, 5));
        let fifth: Rational = "1/5".parse().unwrap();
        assert!(f.from_rational(&fifth).is_err());
    }

    #[test]
    fn primality() {
        assert!(FieldSpec::prime(4).is_err());
        assert!(is_prime(101));
        assert!(!is_prime(1));
    }
}
