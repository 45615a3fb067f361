use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{factorial, BigComplex, GaussRational, Scalar};

/// Maclaurin jet `c_0 + c_1 t + … + c_K t^K`, valid through order `K`.
///
/// Nothing is known about coefficients past `K`; every operation keeps
/// track of how far its output is valid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct TruncatedTaylor<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedTaylor<S> {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        TruncatedTaylor { coeffs }
    }

    pub fn zeros(order: usize, like: &S) -> Self {
        TruncatedTaylor {
            coeffs: vec![like.zero_like(); order + 1],
        }
    }

    /// Jet of a polynomial given by its coefficients, padded or cut to
    /// `order`.
    pub fn from_poly_coeffs(coeffs: &[S], order: usize, like: &S) -> Self {
        let mut v: Vec<S> = coeffs.iter().take(order + 1).cloned().collect();
        v.resize(order + 1, like.zero_like());
        TruncatedTaylor { coeffs: v }
    }

    pub fn valid_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&S> {
        self.coeffs.get(k).ok_or(Error::PrecisionExhausted {
            needed: k,
            available: self.valid_order(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn like(&self) -> &S {
        &self.coeffs[0]
    }

    /// Cut down to `order`; fails when more is requested than is valid.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.valid_order() {
            return Err(Error::PrecisionExhausted {
                needed: order,
                available: self.valid_order(),
            });
        }
        Ok(TruncatedTaylor {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        TruncatedTaylor {
            coeffs: (0..n).map(|k| self.coeffs[k].clone() + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        TruncatedTaylor {
            coeffs: (0..n).map(|k| self.coeffs[k].clone() - &other.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        TruncatedTaylor {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedTaylor {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Cauchy product, valid through the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![self.like().zero_like(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                out[i + j] += &(self.coeffs[i].clone() * &other.coeffs[j]);
            }
        }
        TruncatedTaylor { coeffs: out }
    }

    /// Multiplication by `t`: the jet gains one order of validity.
    pub fn mul_t(&self) -> Self {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(self.like().zero_like());
        v.extend(self.coeffs.iter().cloned());
        TruncatedTaylor { coeffs: v }
    }

    /// `f^{(k)}(0) = k!·c_k`.
    pub fn derivative_at_zero(&self, k: usize) -> Result<S> {
        let c = self.coeff(k)?;
        Ok(c.clone() * &c.lift(&factorial(k as u32)))
    }

    /// Formal derivative; validity drops by one. Fails on an order-0 jet.
    pub fn derivative(&self) -> Result<Self> {
        if self.valid_order() == 0 {
            return Err(Error::PrecisionExhausted {
                needed: 1,
                available: 0,
            });
        }
        Ok(TruncatedTaylor {
            coeffs: (1..self.coeffs.len())
                .map(|k| self.coeffs[k].clone() * &self.coeffs[k].int_like(k as i64))
                .collect(),
        })
    }

    /// Partial sum at `t`; exact for polynomials of degree ≤ K.
    pub fn eval_partial(&self, t: &S) -> S {
        let mut acc = t.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TruncatedTaylor<T> {
        TruncatedTaylor {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl TruncatedTaylor<GaussRational> {
    pub fn to_big(&self, prec: u32) -> TruncatedTaylor<BigComplex> {
        self.map(|c| BigComplex::from_gauss(c, prec))
    }
}
