//! Borel transforms of exponential-polynomials and Leont'ev's
//! interpolating function `ω_f(z, x)`, evaluated by residues.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcspace::ExpPoly;
use crate::scalar::{binomial, factorial, BigComplex, GaussRational, Poly, Scalar};

/// `γ(t) = Σ_ν Σ_k a_{ν,k} k! / (t - ν)^{k+1}`, stored as the `a_{ν,k}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BorelTransform {
    pub principal_parts: BTreeMap<GaussRational, Vec<GaussRational>>,
}

impl BorelTransform {
    pub fn eval(&self, t: &BigComplex) -> BigComplex {
        let prec = t.precision();
        let mut acc = BigComplex::zero(prec);
        for (nu, a) in &self.principal_parts {
            let d = t - &BigComplex::from_gauss(nu, prec);
            for (k, ak) in a.iter().enumerate() {
                let c = BigComplex::from_gauss(&(ak * &factorial(k as u32)), prec);
                acc += &(&c / &d.powi(k as u32 + 1));
            }
        }
        acc
    }
}

/// Linear extension of `z^j e^{νz} ↦ j!(t - ν)^{-j-1}`.
pub fn borel(f: &ExpPoly) -> Result<BorelTransform> {
    if f.is_zero() {
        return Err(Error::ZeroFunction("Borel transform"));
    }
    Ok(BorelTransform {
        principal_parts: f
            .terms()
            .iter()
            .map(|(l, p)| (l.clone(), p.coeffs().to_vec()))
            .collect(),
    })
}

fn exp_of<S: Scalar>(w: S) -> Result<S> {
    w.try_exp()
        .ok_or_else(|| Error::NotExact("transcendental exponential".into()))
}

/// `Y(t, z) = ∫_0^t x(η) e^{-zη} dη` in closed form.
#[allow(non_snake_case)]
pub fn Y_kernel<S: Scalar>(x: &ExpPoly, t: &S, z: &S) -> Result<S> {
    let mut acc = t.zero_like();
    for (mu, p) in x.terms() {
        let c = t.lift(mu) - z;
        for (m, coef) in p.coeffs().iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let integral = if c.is_zero() {
                pow(t, m + 1) / t.int_like(m as i64 + 1)
            } else {
                // e^{cη} Σ_i (-1)^i m!/(m-i)! η^{m-i} / c^{i+1}, from 0 to t
                let mut s = t.zero_like();
                let mut falling = t.one_like();
                let mut cpow = c.clone();
                for i in 0..=m {
                    if i > 0 {
                        falling = falling * &t.int_like((m + 1 - i) as i64);
                        cpow = cpow * &c;
                    }
                    let term = falling.clone() * &pow(t, m - i) / &cpow;
                    if i % 2 == 0 {
                        s += &term;
                    } else {
                        s -= &term;
                    }
                }
                let at_zero = falling / &cpow;
                let at_zero = if m % 2 == 0 { at_zero } else { -at_zero };
                let e = if t.is_zero() { t.one_like() } else { exp_of(c.clone() * t)? };
                s * &e - &at_zero
            };
            acc += &(integral * &t.lift(coef));
        }
    }
    Ok(acc)
}

fn pow<S: Scalar>(t: &S, n: usize) -> S {
    (0..n).fold(t.one_like(), |a, _| a * t)
}

fn value<S: Scalar>(x: &ExpPoly, at: &S) -> Result<S> {
    x.eval_at(at)
        .ok_or_else(|| Error::NotExact("exponential at a nonzero exact point".into()))
}

/// `d^k/dt^k [e^{zt} Y(t,z)]` at `t = ν`, by the Leibniz rule.
fn g_derivative<S: Scalar>(x: &ExpPoly, derivs: &[ExpPoly], nu: &S, z: &S, k: usize) -> Result<S> {
    let mut acc = if nu.is_zero() {
        nu.zero_like()
    } else {
        pow(z, k) * &exp_of(z.clone() * nu)? * &Y_kernel(x, nu, z)?
    };
    let mz = -z.clone();
    for s in 1..=k {
        let mut inner = z.zero_like();
        for r in 0..s {
            let d = value(&derivs[s - 1 - r], nu)?;
            inner += &(nu.lift(&binomial((s - 1) as u32, r as u32)) * &pow(&mz, r) * &d);
        }
        acc += &(nu.lift(&binomial(k as u32, s as u32)) * &pow(z, k - s) * &inner);
    }
    Ok(acc)
}

/// `ω_f(z, x) = Σ_ν Σ_k a_{ν,k} d^k/dt^k[e^{zt} Y(t,z)]|_{t=ν}`.
pub fn omega<S: Scalar>(f: &ExpPoly, x: &ExpPoly, z: &S) -> Result<S> {
    let b = borel(f)?;
    let kmax = b.principal_parts.values().map(|a| a.len()).max().unwrap_or(1);
    let derivs: Vec<ExpPoly> = (0..kmax).scan(x.clone(), |d, _| {
        let cur = d.clone();
        *d = d.derivative();
        Some(cur)
    }).collect();
    let mut acc = z.zero_like();
    for (nu, a) in &b.principal_parts {
        let nu_s = z.lift(nu);
        for (k, ak) in a.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            acc += &(z.lift(ak) * &g_derivative(x, &derivs, &nu_s, z, k)?);
        }
    }
    Ok(acc)
}

/// `ω_{g0}(z, x) = P(z) e^{λz} Y(λ, z) + Σ_p w_p(z) x^{(p)}(λ)` for
/// `g0 = P e_λ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaExpansion {
    pub lambda: GaussRational,
    pub p: Poly<GaussRational>,
    /// `w_0, …, w_{m-1}` for `m = deg P`.
    pub w: Vec<Poly<GaussRational>>,
}

impl OmegaExpansion {
    pub fn exp_part<S: Scalar>(&self, x: &ExpPoly, z: &S) -> Result<S> {
        let l = z.lift(&self.lambda);
        let pz = self.p.map(|c| z.lift(c)).eval(z);
        Ok(pz * &exp_of(l.clone() * z)? * &Y_kernel(x, &l, z)?)
    }

    /// `W(z)`
    pub fn poly_part<S: Scalar>(&self, x: &ExpPoly, z: &S) -> Result<S> {
        let l = z.lift(&self.lambda);
        let mut acc = z.zero_like();
        let mut d = x.clone();
        for w in &self.w {
            acc += &(w.map(|c| z.lift(c)).eval(z) * &value(&d, &l)?);
            d = d.derivative();
        }
        Ok(acc)
    }

    pub fn eval<S: Scalar>(&self, x: &ExpPoly, z: &S) -> Result<S> {
        Ok(self.exp_part(x, z)? + &self.poly_part(x, z)?)
    }
}

pub fn omega_expansion(g0: &ExpPoly) -> Result<OmegaExpansion> {
    let (lambda, p) = g0.single_term().ok_or_else(|| Error::ExponentMismatch {
        expected: "a single exponent".into(),
        found: format!("{} exponents", g0.num_terms()),
    })?;
    if !p.coeff_or_zero(0, &GaussRational::zero()).is_one() {
        return Err(Error::InvalidG0(p.coeff_or_zero(0, &GaussRational::zero()).to_string()));
    }
    let m = p.degree().unwrap_or(0);
    let w = (0..m)
        .map(|pp| {
            let mut c = vec![GaussRational::zero(); m];
            for (k, ak) in p.coeffs().iter().enumerate().skip(pp + 1) {
                // z^{k-s} (-z)^{s-1-p} = ± z^{k-1-p}
                let mut s_sum = GaussRational::zero();
                for s in pp + 1..=k {
                    let term = &binomial(k as u32, s as u32) * &binomial((s - 1) as u32, pp as u32);
                    if (s - 1 - pp) % 2 == 0 {
                        s_sum += &term;
                    } else {
                        s_sum -= &term;
                    }
                }
                c[k - 1 - pp] += &(ak * &s_sum);
            }
            Poly::new(c)
        })
        .collect();
    Ok(OmegaExpansion {
        lambda: lambda.clone(),
        p: p.clone(),
        w,
    })
}
