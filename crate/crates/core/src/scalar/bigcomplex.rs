//! Arbitrary-precision complex floats.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Special;
use rug::ops::Pow;
use rug::{Assign, Complex, Float, Integer};
use serde::{Deserialize, Serialize};

use super::GaussRational;
use crate::error::Error;

/// Smallest precision accepted for a [`BigComplex`].
pub const MIN_PRECISION: u32 = 64;
/// Working precision used when nothing else is specified.
pub const DEFAULT_PRECISION: u32 = 128;

/// A complex float with both parts carried at `precision` bits.
///
/// Binary operations on operands of different precision round to the
/// smaller of the two.
#[derive(Clone, Debug)]
pub struct BigComplex {
    value: Complex,
}

impl BigComplex {
    fn clamp(prec: u32) -> u32 {
        prec.max(MIN_PRECISION)
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_complex(Complex::new(Self::clamp(prec)))
    }

    pub fn from_complex(value: Complex) -> Self {
        let p = Self::clamp(value.prec().0.min(value.prec().1));
        if value.prec() == (p, p) {
            BigComplex { value }
        } else {
            BigComplex {
                value: Complex::with_val(p, value),
            }
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self::from_complex(Complex::with_val(Self::clamp(prec), (re, im)))
    }

    pub fn from_floats(re: Float, im: Float) -> Self {
        let p = re.prec().min(im.prec());
        Self::from_complex(Complex::with_val(Self::clamp(p), (re, im)))
    }

    pub fn from_gauss(q: &GaussRational, prec: u32) -> Self {
        let mut c = Complex::new(Self::clamp(prec));
        c.assign((&q.re, &q.im));
        BigComplex { value: c }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::from_complex(Complex::with_val(Self::clamp(prec), n))
    }

    pub fn precision(&self) -> u32 {
        self.value.prec().0
    }

    /// Round to a different precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        Self::from_complex(Complex::with_val(Self::clamp(prec), &self.value))
    }

    pub fn as_complex(&self) -> &Complex {
        &self.value
    }

    pub fn re(&self) -> &Float {
        self.value.real()
    }

    pub fn im(&self) -> &Float {
        self.value.imag()
    }

    pub fn is_zero(&self) -> bool {
        self.value.real().is_zero() && self.value.imag().is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.value.real().is_finite() && self.value.imag().is_finite()
    }

    /// Modulus, rounded to the operand's precision.
    pub fn abs(&self) -> Float {
        Float::with_val(self.precision(), self.value.abs_ref())
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn exp(&self) -> Self {
        BigComplex {
            value: Complex::with_val(self.value.prec(), self.value.exp_ref()),
        }
    }

    /// Principal logarithm, argument in `(-π, π]`. A negative zero
    /// imaginary part counts as `+0`.
    pub fn ln(&self) -> Self {
        let mut v = self.value.clone();
        if v.imag().is_zero() {
            v.mut_imag().assign(0);
        }
        BigComplex {
            value: Complex::with_val(self.value.prec(), v.ln_ref()),
        }
    }

    pub fn sqrt(&self) -> Self {
        BigComplex {
            value: Complex::with_val(self.value.prec(), self.value.sqrt_ref()),
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        BigComplex {
            value: Complex::with_val(self.value.prec(), (&self.value).pow(k)),
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            value: Complex::with_val(self.value.prec(), self.value.conj_ref()),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.value.real().to_f64(), self.value.imag().to_f64())
    }

    pub fn scale_f(&self, s: &Float) -> Self {
        let p = self.precision().min(s.prec());
        Self::from_complex(Complex::with_val(p, &self.value * s))
    }

    /// Hex-float rendering with precision annotation, e.g.
    /// `0x3p-1+-0x1p+0i@128`.
    pub fn to_hex(&self) -> String {
        format!(
            "{}+{}i@{}",
            float_to_hex(self.re()),
            float_to_hex(self.im()),
            self.precision()
        )
    }

    pub fn parse_hex(s: &str) -> Result<Self, Error> {
        let bad = || Error::Syntax {
            pos: 0,
            msg: format!("not a hex-float complex: {s:?}"),
        };
        let (body, prec) = s.rsplit_once('@').ok_or_else(bad)?;
        let prec: u32 = prec.parse().map_err(|_| bad())?;
        let body = body.strip_suffix('i').ok_or_else(bad)?;
        // The imaginary part starts after the '+' that follows the real
        // part's exponent: find the "p" then the next '+' after its sign.
        let p_idx = body.find('p').ok_or_else(bad)?;
        let rest = &body[p_idx + 2..];
        let split = rest.find('+').ok_or_else(bad)? + p_idx + 2;
        let re = float_from_hex(&body[..split], prec).ok_or_else(bad)?;
        let im = float_from_hex(&body[split + 1..], prec).ok_or_else(bad)?;
        Ok(Self::from_complex(Complex::with_val(prec, (re, im))))
    }

    /// Short decimal rendering for human consumption.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = self.re().to_string_radix(10, Some(digits));
        let im = self.im().to_string_radix(10, Some(digits));
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

/// `m·2^e` written as `0x<hex m>p<e>`; specials as `nan`, `inf`, `-inf`.
pub fn float_to_hex(x: &Float) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
    }
    match x.to_integer_exp() {
        None => "0x0p+0".into(),
        Some((mut m, mut e)) => {
            if m.cmp0() == Ordering::Equal {
                return "0x0p+0".into();
            }
            let tz = m.find_one(0).unwrap_or(0);
            m >>= tz;
            e += tz as i32;
            let neg = m.cmp0() == Ordering::Less;
            let m = m.abs();
            format!("{}0x{}p{:+}", if neg { "-" } else { "" }, m.to_string_radix(16), e)
        }
    }
}

pub fn float_from_hex(s: &str, prec: u32) -> Option<Float> {
    let s = s.trim();
    match s {
        "nan" => return Some(Float::with_val(prec, Special::Nan)),
        "inf" => return Some(Float::with_val(prec, Special::Infinity)),
        "-inf" => return Some(Float::with_val(prec, Special::NegInfinity)),
        _ => {}
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let body = body.strip_prefix("0x")?;
    let (m, e) = body.split_once('p')?;
    let m = Integer::from_str_radix(m, 16).ok()?;
    let e: i32 = e.parse().ok()?;
    let mut f = Float::with_val(prec, m);
    f <<= e;
    if neg {
        f = -f;
    }
    Some(f)
}

impl PartialEq for BigComplex {
    fn eq(&self, other: &Self) -> bool {
        self.value.real() == other.value.real() && self.value.imag() == other.value.imag()
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(20))
    }
}

#[derive(Serialize, Deserialize)]
struct HexRepr {
    re: String,
    im: String,
    prec: u32,
}

impl Serialize for BigComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HexRepr {
            re: float_to_hex(self.re()),
            im: float_to_hex(self.im()),
            prec: self.precision(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let h = HexRepr::deserialize(d)?;
        let re = float_from_hex(&h.re, h.prec)
            .ok_or_else(|| serde::de::Error::custom("bad hex float"))?;
        let im = float_from_hex(&h.im, h.prec)
            .ok_or_else(|| serde::de::Error::custom("bad hex float"))?;
        Ok(BigComplex::from_complex(Complex::with_val(h.prec, (re, im))))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<'a> $tr<&'a BigComplex> for &'a BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &BigComplex) -> BigComplex {
                let p = self.precision().min(rhs.precision());
                BigComplex { value: Complex::with_val(p, &self.value $op &rhs.value) }
            }
        }
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &'a BigComplex) -> BigComplex {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            value: Complex::with_val(self.value.prec(), -&self.value),
        }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { value: -self.value }
    }
}

impl<'a> AddAssign<&'a BigComplex> for BigComplex {
    fn add_assign(&mut self, rhs: &BigComplex) {
        *self = &*self + rhs;
    }
}

impl<'a> SubAssign<&'a BigComplex> for BigComplex {
    fn sub_assign(&mut self, rhs: &BigComplex) {
        *self = &*self - rhs;
    }
}

impl<'a> MulAssign<&'a BigComplex> for BigComplex {
    fn mul_assign(&mut self, rhs: &BigComplex) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_precision_takes_minimum() {
        let a = BigComplex::from_int(1, 256);
        let b = BigComplex::from_int(2, 128);
        assert_eq!((&a + &b).precision(), 128);
        assert_eq!((&a * &b).precision(), 128);
        assert_eq!(BigComplex::from_int(1, 10).precision(), MIN_PRECISION);
    }

    #[test]
    fn hex_round_trip() {
        let q = GaussRational::new(rug::Rational::from((1, 3)), -5);
        let z = BigComplex::from_gauss(&q, 128);
        let s = z.to_hex();
        assert!(s.ends_with("@128"));
        let back = BigComplex::parse_hex(&s).unwrap();
        assert_eq!(back, z);
        assert_eq!(back.precision(), 128);
        let zero = BigComplex::zero(64);
        assert_eq!(zero.to_hex(), "0x0p+0+0x0p+0i@64");
        assert_eq!(BigComplex::parse_hex(&zero.to_hex()).unwrap(), zero);
        let json = serde_json::to_string(&z).unwrap();
        let back: BigComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn exp_ln_inverse() {
        let z = BigComplex::from_f64(0.25, -1.5, 200);
        let w = z.exp().ln();
        let err = (&w - &z).abs();
        assert!(err < Float::with_val(64, Float::i_exp(1, -190)));
    }

    #[test]
    fn ln_of_negated_real_is_principal() {
        let m = -BigComplex::from_int(1, 128);
        assert!(m.im().is_sign_negative());
        let (re, im) = m.ln().to_f64();
        assert_eq!(re, 0.0);
        assert!((im - std::f64::consts::PI).abs() < 1e-15);
    }
}
