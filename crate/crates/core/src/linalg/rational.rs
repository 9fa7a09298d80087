//! Exact rationals with an inline fast path.
//!
//! Values whose reduced numerator and denominator both fit below 2^31 are kept
//! inline as `i64` pairs; everything else falls back to `BigRational`. The
//! representation is canonical, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

const SMALL_LIMIT: i128 = 1 << 31;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(0, 1)
    }

    pub fn one() -> Self {
        Rational::Small(1, 1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_i128(v as i128, 1)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        match v.to_i128() {
            Some(x) => Self::from_i128(x, 1),
            None => Self::from_big(BigRational::from_integer(v.clone())),
        }
    }

    /// Builds `num/den`, reducing to canonical form. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n.abs() < SMALL_LIMIT && d < SMALL_LIMIT {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced with positive denominator.
        if let (Some(n), Some(d)) = (r.numer().to_i128(), r.denom().to_i128()) {
            if n.abs() < SMALL_LIMIT && d < SMALL_LIMIT {
                return Rational::Small(n as i64, d as i64);
            }
        }
        Rational::Big(Box::new(r))
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    /// Integer value, if the rational is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.numer())
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a + c, b)
                } else {
                    Self::from_i128(a * d + b * c, b * d)
                }
            }
            _ => Self::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Self::zero();
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => {
                if self.is_zero() || o.is_zero() {
                    return Self::zero();
                }
                Self::from_big(self.to_big() * o.to_big())
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational::Small(a, b) => Rational::Small(-a, *b),
            Rational::Big(r) => Self::from_big(-(**r).clone()),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rational::Small(a, b) => Self::from_i128(*b as i128, *a as i128),
            Rational::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(a, _) => a.signum() as i32,
            Rational::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational literal {0:?}")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| err())?;
        let d = BigInt::from_str(d).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_small_form() {
        assert_eq!(Rational::new(2, -4), Rational::Small(-1, 2));
        assert_eq!(Rational::new(0, -7), Rational::zero());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_i64(1 << 40);
        assert!(matches!(big, Rational::Big(_)));
        let back = big.div(&Rational::from_i64(1 << 40));
        assert_eq!(back, Rational::one());
        assert!(matches!(back, Rational::Small(1, 1)));
    }

    #[test]
    fn parse_and_print() {
        let r: Rational = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        let huge: Rational = "123456789012345678901234567890/3".parse().unwrap();
        assert_eq!(huge.to_string(), "41152263004115226300411522630");
    }

    #[test]
    fn ordering() {
        assert!(Rational::new(1, 3) < Rational::new(1, 2));
        assert!(Rational::from_i64(-(1 << 40)) < Rational::new(-1, 2));
    }
}
