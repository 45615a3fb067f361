use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcspace::{ExpPoly, TruncatedTaylor};
use crate::scalar::{binomial, factorial, GaussRational, Poly, Scalar};

/// Derivatives at 0: `A_m = m!·c_m` for a Maclaurin jet `Σ c_m z^m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct DividedSeries<S: Scalar> {
    dcoeffs: Vec<S>,
}

impl<S: Scalar> DividedSeries<S> {
    pub fn new(dcoeffs: Vec<S>) -> Self {
        assert!(!dcoeffs.is_empty(), "a series needs at least one coefficient");
        DividedSeries { dcoeffs }
    }

    pub fn from_taylor(t: &TruncatedTaylor<S>) -> Self {
        DividedSeries {
            dcoeffs: (0..=t.valid_order())
                .map(|m| t.derivative_at_zero(m).expect("within order"))
                .collect(),
        }
    }

    pub fn to_taylor(&self) -> TruncatedTaylor<S> {
        TruncatedTaylor::new(
            self.dcoeffs
                .iter()
                .enumerate()
                .map(|(m, a)| a.clone() / a.lift(&factorial(m as u32)))
                .collect(),
        )
    }

    pub fn dcoeffs(&self) -> &[S] {
        &self.dcoeffs
    }

    pub fn valid_order(&self) -> usize {
        self.dcoeffs.len() - 1
    }

    /// Duhamel product, which on derivatives at 0 is the Cauchy product.
    pub fn duhamel(&self, other: &Self) -> Result<Self> {
        if self.valid_order() != other.valid_order() {
            return Err(Error::PrecisionExhausted {
                needed: self.valid_order().max(other.valid_order()),
                available: self.valid_order().min(other.valid_order()),
            });
        }
        let n = self.dcoeffs.len();
        let mut out = vec![self.dcoeffs[0].zero_like(); n];
        for a in 0..n {
            for b in 0..n - a {
                out[a + b] += &(self.dcoeffs[a].clone() * &other.dcoeffs[b]);
            }
        }
        Ok(DividedSeries { dcoeffs: out })
    }
}

/// Closed form of `z^p e^{az} ∗ z^q e^{bz}`.
///
/// Under the Laplace transform the product becomes
/// `p! q! x / ((x-a)^{p+1} (x-b)^{q+1})`; partial fractions and
/// `1/(x-c)^{j+1} ↦ z^j e^{cz}/j!` give the result.
pub fn duhamel_monomials(p: usize, a: &GaussRational, q: usize, b: &GaussRational) -> ExpPoly {
    let scale = &factorial(p as u32) * &factorial(q as u32);
    if a == b {
        let n = p + q;
        let mut c = vec![GaussRational::zero(); n + 2];
        c[n] = &scale / &factorial(n as u32);
        c[n + 1] = &(&scale * a) / &factorial(n as u32 + 1);
        return ExpPoly::term(a.clone(), Poly::new(c));
    }
    let half = |p: usize, a: &GaussRational, q: usize, b: &GaussRational| {
        let d = a - b;
        let dinv = d.inv().expect("a != b");
        // c_i: coefficients of (y + d)^{-(q+1)}
        let c: Vec<GaussRational> = (0..=p)
            .map(|i| {
                let sign = if i % 2 == 0 { GaussRational::one() } else { GaussRational::from_int(-1) };
                &(&sign * &binomial((q + i) as u32, i as u32)) * &dinv.pow((q + 1 + i) as u32)
            })
            .collect();
        let r = |i: usize| {
            let mut v = a * &c[i];
            if i > 0 {
                v += &c[i - 1];
            }
            v
        };
        let coeffs: Vec<GaussRational> = (0..=p)
            .map(|j| &(&scale * &r(p - j)) / &factorial(j as u32))
            .collect();
        ExpPoly::term(a.clone(), Poly::new(coeffs))
    };
    half(p, a, q, b).add(&half(q, b, p, a))
}

/// Duhamel product `v ∗ w(z) = w(0) v(z) + ∫_0^z v(ξ) w'(z-ξ) dξ` in closed
/// form, extended bilinearly over the monomials `z^p e^{az}`.
pub fn duhamel(v: &ExpPoly, w: &ExpPoly) -> ExpPoly {
    let mut out = ExpPoly::zero();
    for (a, pv) in v.terms() {
        for (b, pw) in w.terms() {
            for (i, ci) in pv.coeffs().iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (j, cj) in pw.coeffs().iter().enumerate() {
                    if cj.is_zero() {
                        continue;
                    }
                    out = out.add(&duhamel_monomials(i, a, j, b).scale(&(ci * cj)));
                }
            }
        }
    }
    out
}
