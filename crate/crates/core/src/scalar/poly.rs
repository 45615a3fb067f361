use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GaussRational, Scalar};

/// Dense univariate polynomial, lowest degree first. The zero polynomial
/// is the empty coefficient list and the leading coefficient of any other
/// polynomial is nonzero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de> + Scalar"))]
#[serde(from = "Vec<S>", into = "Vec<S>")]
pub struct Poly<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> From<Vec<S>> for Poly<S> {
    fn from(v: Vec<S>) -> Self {
        Poly::new(v)
    }
}

impl<S: Scalar> From<Poly<S>> for Vec<S> {
    fn from(p: Poly<S>) -> Vec<S> {
        p.coeffs
    }
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    /// `c·z^k`
    pub fn monomial(c: S, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![c.zero_like(); k];
        v.push(c);
        Poly { coeffs: v }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Coefficient of `z^k`, or `None` past the degree.
    pub fn coeff(&self, k: usize) -> Option<&S> {
        self.coeffs.get(k)
    }

    pub fn coeff_or_zero(&self, k: usize, like: &S) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(|| like.zero_like())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &S) -> S {
        let mut acc = z.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * &c.int_like(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.clone() + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a.clone() * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s).collect())
    }

    /// Multiplication by the independent variable.
    pub fn mul_z(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(self.coeffs[0].zero_like());
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Exact quotient by `z` when the constant term vanishes; `None`
    /// otherwise.
    pub fn div_z(&self) -> Option<Self> {
        match self.coeffs.first() {
            None => Some(Self::zero()),
            Some(c) if c.is_zero() => Some(Poly {
                coeffs: self.coeffs[1..].to_vec(),
            }),
            Some(_) => None,
        }
    }

    /// Coefficients of `p(t + a)` in powers of `t`.
    pub fn taylor_shift(&self, a: &S) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let add = c[j + 1].clone() * a;
                c[j] += &add;
            }
        }
        Poly::new(c)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<GaussRational> {
    pub fn from_ints(v: &[i64]) -> Self {
        Poly::new(v.iter().map(|&n| GaussRational::from_int(n)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Poly::constant(GaussRational::one()), |acc, _| acc.mul(self))
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![GaussRational::zero(); r.len().saturating_sub(dd)];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = &r[k] / &lead;
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &(c.clone() * b);
            }
            q[k - dd] = c;
        }
        (Poly::new(q), Poly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&(&GaussRational::one() / &l)),
            None => a,
        }
    }

    /// Product of the distinct irreducible factors: same roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&self.gcd(&self.derivative())).0
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        Ok(())
    }
}
