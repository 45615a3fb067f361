//! Gaussian rationals: complex numbers with arbitrary-precision rational
//! real and imaginary parts.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element of Q(i). Both parts are kept in lowest terms by `rug`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        GaussRational {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(n, 0)
    }

    /// `num/den` as a real Gaussian rational. Panics when `den == 0`.
    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::new(Rational::from((num, den)), 0)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0() == Ordering::Equal && self.im.cmp0() == Ordering::Equal
    }

    pub fn is_one(&self) -> bool {
        self.re == 1 && self.im.cmp0() == Ordering::Equal
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0() == Ordering::Equal
    }

    pub fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: Rational::from(-&self.im),
        }
    }

    /// |z|², exact.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRational {
            re: Rational::from(&self.re / &n),
            im: Rational::from(-&self.im) / &n,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Approximate value as a pair of doubles.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Canonical serialization `p/q+r/si`: both parts in lowest terms, the
    /// sign carried by each numerator.
    pub fn to_canonical(&self) -> String {
        format!(
            "{}/{}+{}/{}i",
            self.re.numer(),
            self.re.denom(),
            self.im.numer(),
            self.im.denom()
        )
    }

    /// Parse the canonical `p/q+r/si` form.
    pub fn parse_canonical(s: &str) -> Result<Self, Error> {
        let bad = || Error::Syntax {
            pos: 0,
            msg: format!("not a canonical Gaussian rational: {s:?}"),
        };
        let body = s.trim().strip_suffix('i').ok_or_else(bad)?;
        // The separator is the first '+' that follows the real part's
        // denominator, i.e. the first '+' after the first '/'.
        let slash = body.find('/').ok_or_else(bad)?;
        let plus = body[slash..].find('+').ok_or_else(bad)? + slash;
        let re = parse_fraction(&body[..plus]).ok_or_else(bad)?;
        let im = parse_fraction(&body[plus + 1..]).ok_or_else(bad)?;
        Ok(GaussRational { re, im })
    }
}

fn parse_fraction(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/')?;
    let n = Integer::from_str(n.trim()).ok()?;
    let d = Integer::from_str(d.trim()).ok()?;
    if d.cmp0() != Ordering::Greater {
        return None;
    }
    Some(Rational::from((n, d)))
}

impl fmt::Display for GaussRational {
    /// Human-readable form that the expression parser accepts back, e.g.
    /// `3/4`, `-2i`, `(1/2+3i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re_zero = self.re.cmp0() == Ordering::Equal;
        let im_zero = self.im.cmp0() == Ordering::Equal;
        match (re_zero, im_zero) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im == 1 {
                    write!(f, "i")
                } else if self.im == -1 {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", self.im)
                }
            }
            (false, false) => {
                let sign = if self.im.cmp0() == Ordering::Less { '-' } else { '+' };
                let abs_im = Rational::from(self.im.abs_ref());
                if abs_im == 1 {
                    write!(f, "({}{}i)", self.re, sign)
                } else {
                    write!(f, "({}{}{}i)", self.re, sign, abs_im)
                }
            }
        }
    }
}

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical())
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GaussRational::parse_canonical(&s).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussRational {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: Rational::from(&self.re + &rhs.re),
            im: Rational::from(&self.im + &rhs.im),
        }
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: Rational::from(&self.re - &rhs.re),
            im: Rational::from(&self.im - &rhs.im),
        }
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        if self.is_real() && rhs.is_real() {
            return GaussRational::from_rational(Rational::from(&self.re * &rhs.re));
        }
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        GaussRational { re, im }
    }
}

impl<'a> Div<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    /// Panics on division by zero.
    fn div(self, rhs: &GaussRational) -> GaussRational {
        if rhs.is_real() {
            assert!(rhs.re.cmp0() != Ordering::Equal, "division by zero");
            return GaussRational {
                re: Rational::from(&self.re / &rhs.re),
                im: Rational::from(&self.im / &rhs.re),
            };
        }
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: Rational::from(-&self.re),
            im: Rational::from(-&self.im),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: GaussRational) -> GaussRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: &'a GaussRational) -> GaussRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        -&self
    }
}

impl<'a> AddAssign<&'a GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> SubAssign<&'a GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> MulAssign<&'a GaussRational> for GaussRational {
    fn mul_assign(&mut self, rhs: &GaussRational) {
        *self = &*self * rhs;
    }
}
