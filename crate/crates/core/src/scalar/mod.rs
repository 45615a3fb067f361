//! Scalar foundations: Gaussian rationals, big complex floats, dense
//! univariate polynomials and certified polynomial root isolation.

mod bigcomplex;
mod gauss;
mod poly;
mod roots;

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub use bigcomplex::{float_from_hex, float_to_hex, BigComplex, DEFAULT_PRECISION, MIN_PRECISION};
pub use gauss::GaussRational;
pub use poly::Poly;
pub use roots::{cluster_roots, poly_roots, roots_numeric, CertifiedRoot, RootCluster};

/// Coefficient field shared by polynomials, jets and operator kernels.
///
/// Constants are built "like" an existing value so that precision-carrying
/// scalars keep their working precision.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn lift(&self, q: &GaussRational) -> Self;
    fn int_like(&self, n: i64) -> Self {
        self.lift(&GaussRational::from_int(n))
    }
    /// `exp(self)` when it is representable in this field.
    fn try_exp(&self) -> Option<Self>;
    fn to_big(&self, prec: u32) -> BigComplex;
    /// Whether arithmetic in this field is exact.
    fn is_exact() -> bool;
    /// The exact value, for exact fields.
    fn as_exact(&self) -> Option<GaussRational> {
        None
    }
}

impl Scalar for GaussRational {
    fn zero_like(&self) -> Self {
        GaussRational::zero()
    }
    fn one_like(&self) -> Self {
        GaussRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussRational::is_zero(self)
    }
    fn lift(&self, q: &GaussRational) -> Self {
        q.clone()
    }
    fn int_like(&self, n: i64) -> Self {
        GaussRational::from_int(n)
    }
    fn try_exp(&self) -> Option<Self> {
        GaussRational::is_zero(self).then(GaussRational::one)
    }
    fn to_big(&self, prec: u32) -> BigComplex {
        BigComplex::from_gauss(self, prec)
    }
    fn is_exact() -> bool {
        true
    }
    fn as_exact(&self) -> Option<GaussRational> {
        Some(self.clone())
    }
}

impl Scalar for BigComplex {
    fn zero_like(&self) -> Self {
        BigComplex::zero(self.precision())
    }
    fn one_like(&self) -> Self {
        BigComplex::from_int(1, self.precision())
    }
    fn is_zero(&self) -> bool {
        BigComplex::is_zero(self)
    }
    fn lift(&self, q: &GaussRational) -> Self {
        BigComplex::from_gauss(q, self.precision())
    }
    fn int_like(&self, n: i64) -> Self {
        BigComplex::from_int(n, self.precision())
    }
    fn try_exp(&self) -> Option<Self> {
        Some(self.exp())
    }
    fn to_big(&self, prec: u32) -> BigComplex {
        self.with_precision(prec)
    }
    fn is_exact() -> bool {
        false
    }
}

/// `n!` as a Gaussian rational.
pub fn factorial(n: u32) -> GaussRational {
    GaussRational::from_rational(rug::Integer::from(rug::Integer::factorial(n)).into())
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> GaussRational {
    if k > n {
        return GaussRational::zero();
    }
    GaussRational::from_rational(rug::Integer::from(rug::Integer::binomial_u(n, k)).into())
}
