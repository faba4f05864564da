//! Exact scalars over `ℚ` and prime fields `F_p`.

use alloc::format;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};

/// Largest admissible prime; keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The base field of every computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// `F_p`, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::InvalidInput(format!("{p} is not an admissible prime")));
        }
        Ok(Field::Prime(p))
    }

    /// `0` for `ℚ`, otherwise `p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n % BigInt::from(p);
                let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                let value: u64 = r.try_into().unwrap_or(0);
                Scalar::Fp { value, modulus: p }
            }
        }
    }

    /// Parses `"a"` or `"a/b"` (decimal integers, optional sign).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || AlgebraError::InvalidInput(format!("cannot parse scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let num = self.from_bigint(&num);
        match den {
            None => Ok(num),
            Some(d) => {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                let d = self.from_bigint(&d);
                let inv = d.inv().ok_or_else(bad)?;
                Ok(&num * &inv)
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
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

fn is_prime(n: u64) -> bool {
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

/// A field element. Rationals are kept in lowest terms with a positive
/// denominator; residues are kept in `0..p`.
///
/// Binary operations assume both operands come from the same field; containers
/// check contexts before combining entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue value for `F_p` scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { value, .. } => Some(*value),
            Scalar::Q(_) => None,
        }
    }

    /// Whether printing this coefficient needs a leading minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $q:expr, $fp:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q($q(a, b)),
                    (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q })
                        if p == q =>
                    {
                        Scalar::Fp { value: $fp(*a, *b, *p), modulus: *p }
                    }
                    _ => panic!("scalar operands from different fields"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| (a + b) % p);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| (a + p - b) % p);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a: u64, b: u64, p: u64| a * b % p);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Field::Rationals;
        let a = q.parse_scalar("2/4").unwrap();
        let b = q.parse_scalar("-3/-6").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2");
        assert_eq!(q.parse_scalar("4/-6").unwrap().to_string(), "-2/3");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(101).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a.residue(), Some(100));
        assert!((&a * &a).is_one());
        let x = f.from_i64(37);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(51));
    }

    #[test]
    fn rejects_composites() {
        assert!(Field::prime(100).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(Field::Rationals.zero().inv().is_none());
        assert!(Field::Prime(5).zero().inv().is_none());
    }
}
