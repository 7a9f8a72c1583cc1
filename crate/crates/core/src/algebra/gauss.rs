//! Gaussian rational scalars: exact complex numbers with rational real and
//! imaginary parts.
//!
//! `BigRational` keeps every fraction fully reduced with a positive
//! denominator, so equality is plain structural equality and every operation
//! is exact. There is no floating-point fallback anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// An exact Gaussian rational `re + i*im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussRat {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `num/den`, real.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// `(a/b) + i (c/d)`.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(b != 0 && d != 0, "zero denominator");
        GaussRat {
            re: BigRational::new(BigInt::from(a), BigInt::from(b)),
            im: BigRational::new(BigInt::from(c), BigInt::from(d)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Squared modulus `re^2 + im^2` (a rational).
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        let n = self.norm_sqr();
        Ok(GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    /// Parse a rational from `p`, `p/q`, or a decimal-free signed integer string.
    pub fn parse_rational(s: &str) -> Result<BigRational> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
        let d: BigInt = den
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        Ok(BigRational::new(n, d))
    }

    /// Canonical text form of a rational: `p` or `p/q` with reduced terms.
    pub fn rational_string(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            Self::rational_string(&self.re),
            Self::rational_string(&self.im)
        )
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait for &GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &GaussRat) -> GaussRat {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| GaussRat {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
binop!(Sub, sub, |a, b| GaussRat {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
binop!(Mul, mul, |a, b| GaussRat {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl Div for &GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl Default for GaussRat {
    fn default() -> Self {
        GaussRat::zero()
    }
}

/// Signed-magnitude bound check used by the genericity samplers.
pub fn rational_height_ok(r: &BigRational, bound: i64) -> bool {
    r.numer().abs() <= BigInt::from(bound) && r.denom().abs() <= BigInt::from(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = GaussRat::from_parts(1, 3, 1, 2); // 1/3 + i/2
        let b = GaussRat::from_parts(2, 3, -1, 2); // 2/3 - i/2
        let s = &a + &b;
        assert_eq!(s, GaussRat::one());
        let p = &a * &b;
        // (1/3 + i/2)(2/3 - i/2) = 2/9 + 1/4 + i(1/3 - 1/6)
        assert_eq!(p, GaussRat::from_parts(17, 36, 1, 6));
    }

    #[test]
    fn conjugation_involution() {
        let a = GaussRat::from_parts(3, 7, -2, 5);
        assert_eq!(a.conj().conj(), a);
        let b = GaussRat::from_parts(1, 2, 4, 3);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn inverse_round_trip() {
        let a = GaussRat::from_parts(3, 4, -5, 7);
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, GaussRat::one());
    }

    #[test]
    fn parse_and_print() {
        let r = GaussRat::parse_rational("-6/4").unwrap();
        assert_eq!(GaussRat::rational_string(&r), "-3/2");
        assert_eq!(GaussRat::parse_rational("5").unwrap(), BigRational::from_integer(5.into()));
        assert!(GaussRat::parse_rational("1/0").is_err());
    }
}
