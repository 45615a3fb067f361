use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::funcspace::{ExpPoly, TruncatedTaylor};
use crate::scalar::{factorial, GaussRational, Scalar};

/// Default cap on the order `n` of the functionals `φ_n`.
pub const PHI_CAP: usize = 32;

/// The function `g0` of the Pommiez operator together with lazily
/// extended caches of its Maclaurin jet and of the values `D^j(1)(0)`.
#[derive(Debug)]
pub struct OperatorContext {
    g0: ExpPoly,
    g0_jet: RwLock<TruncatedTaylor<GaussRational>>,
    orbit_of_one: RwLock<Vec<GaussRational>>,
    phi_cap: usize,
}

impl Clone for OperatorContext {
    fn clone(&self) -> Self {
        OperatorContext {
            g0: self.g0.clone(),
            g0_jet: RwLock::new(self.g0_jet.read().unwrap().clone()),
            orbit_of_one: RwLock::new(self.orbit_of_one.read().unwrap().clone()),
            phi_cap: self.phi_cap,
        }
    }
}

impl OperatorContext {
    /// Fails with `InvalidG0` unless `g0(0) = 1` exactly.
    pub fn new(g0: ExpPoly) -> Result<Self> {
        let jet = g0.taylor(8);
        if !jet.coeffs()[0].is_one() {
            return Err(Error::InvalidG0(jet.coeffs()[0].to_string()));
        }
        Ok(OperatorContext {
            g0,
            g0_jet: RwLock::new(jet),
            orbit_of_one: RwLock::new(Vec::new()),
            phi_cap: PHI_CAP,
        })
    }

    /// `g0 ≡ 1`, for which `T̃_z` is the divided difference `D_z`.
    pub fn trivial() -> Self {
        Self::new(ExpPoly::one()).expect("1 is a valid g0")
    }

    pub fn with_phi_cap(mut self, cap: usize) -> Self {
        self.phi_cap = cap;
        self
    }

    pub fn phi_cap(&self) -> usize {
        self.phi_cap
    }

    pub fn g0(&self) -> &ExpPoly {
        &self.g0
    }

    /// Maclaurin jet of `g0` through order `k`.
    pub fn g0_taylor(&self, k: usize) -> TruncatedTaylor<GaussRational> {
        {
            let jet = self.g0_jet.read().unwrap();
            if jet.valid_order() >= k {
                return jet.truncate(k).expect("order checked");
            }
        }
        let fresh = self.g0.taylor(k.max(2 * self.g0_jet.read().unwrap().valid_order()));
        let mut w = self.g0_jet.write().unwrap();
        if fresh.valid_order() > w.valid_order() {
            *w = fresh;
        }
        w.truncate(k).expect("order checked")
    }

    /// Maclaurin coefficient `g_m`.
    pub fn g0_coeff(&self, m: usize) -> GaussRational {
        self.g0_taylor(m).coeffs()[m].clone()
    }

    /// Jet of `g0` around `c` in the field of `c`.
    pub fn g0_jet_at<S: Scalar>(&self, c: &S, k: usize) -> Result<TruncatedTaylor<S>> {
        if c.is_zero() {
            return Ok(self.g0_taylor(k).map(|q| c.lift(q)));
        }
        self.g0
            .taylor_at(c, k)
            .ok_or_else(|| Error::NotExact("g0 jet at a nonzero exact point".into()))
    }

    pub fn g0_at<S: Scalar>(&self, z: &S) -> Result<S> {
        self.g0
            .eval_at(z)
            .ok_or_else(|| Error::NotExact("g0 at a nonzero exact point".into()))
    }

    /// `D^j(1)(0)` for `j = 0..=n`.
    fn orbit_of_one_at_zero(&self, n: usize) -> Vec<GaussRational> {
        {
            let d = self.orbit_of_one.read().unwrap();
            if d.len() > n {
                return d[..=n].to_vec();
            }
        }
        let mut jet = TruncatedTaylor::from_poly_coeffs(&[GaussRational::one()], n, &GaussRational::zero());
        let g = self.g0_taylor(n + 1);
        let mut vals = vec![GaussRational::one()];
        for _ in 0..n {
            jet = super::pommiez_with(&jet, g.coeffs()).expect("order stays nonnegative");
            vals.push(jet.coeffs()[0].clone());
        }
        let mut w = self.orbit_of_one.write().unwrap();
        if vals.len() > w.len() {
            *w = vals.clone();
        }
        vals
    }

    /// Coefficients `γ_0..γ_n` with `φ_n(h) = Σ γ_k h^{(k)}(0)`.
    ///
    /// Setting `z = 0` in `D^n f(z) = φ_n(T_z f)` gives `φ_n(f) = D^n f(0)`,
    /// and `D^n(t^k) = D^{n-k}(1)` for `k ≤ n`, so
    /// `γ_k = D^{n-k}(1)(0) / k!`.
    pub fn phi_n_coefficients(&self, n: usize) -> Result<Vec<GaussRational>> {
        if n > self.phi_cap {
            return Err(Error::OrderCapExceeded {
                requested: n,
                cap: self.phi_cap,
            });
        }
        let d = self.orbit_of_one_at_zero(n);
        Ok((0..=n).map(|k| &d[n - k] / &factorial(k as u32)).collect())
    }
}

/// `φ(h) = Σ γ_k h^{(k)}(0)` on a Maclaurin jet.
pub fn apply_phi<S: Scalar>(gamma: &[GaussRational], h: &TruncatedTaylor<S>) -> Result<S> {
    let mut acc = h.coeffs()[0].zero_like();
    for (k, g) in gamma.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let d = h.derivative_at_zero(k)?;
        acc += &(d.lift(g) * &d);
    }
    Ok(acc)
}
