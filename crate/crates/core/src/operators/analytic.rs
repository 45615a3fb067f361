use crate::error::{Error, Result};
use crate::funcspace::{ExpPoly, TruncatedTaylor};
use crate::scalar::Scalar;

use super::{pommiez_with, series_div_linear, OperatorContext};

/// An entire function whose jets and values can be produced at any point
/// of the scalar field `S`.
pub trait Analytic<S: Scalar>: Send + Sync {
    /// Jet of `u ↦ f(c + u)` through order `k`.
    fn jet_at(&self, c: &S, k: usize) -> Result<TruncatedTaylor<S>>;

    fn value_at(&self, z: &S) -> Result<S> {
        Ok(self.jet_at(z, 0)?.coeffs()[0].clone())
    }
}

impl<S: Scalar> Analytic<S> for ExpPoly {
    fn jet_at(&self, c: &S, k: usize) -> Result<TruncatedTaylor<S>> {
        if c.is_zero() {
            return Ok(self.taylor(k).map(|q| c.lift(q)));
        }
        self.taylor_at(c, k)
            .ok_or_else(|| Error::NotExact("exponential at a nonzero exact point".into()))
    }

    fn value_at(&self, z: &S) -> Result<S> {
        self.eval_at(z)
            .ok_or_else(|| Error::NotExact("exponential at a nonzero exact point".into()))
    }
}

/// `D f` for the Pommiez operator `D` of a context, evaluated lazily.
pub struct PommiezImage<'a, S: Scalar> {
    ctx: &'a OperatorContext,
    inner: Box<dyn Analytic<S> + 'a>,
}

impl<'a, S: Scalar> PommiezImage<'a, S> {
    pub fn new(ctx: &'a OperatorContext, inner: Box<dyn Analytic<S> + 'a>) -> Self {
        PommiezImage { ctx, inner }
    }

    /// `D^n f`.
    pub fn iterate(ctx: &'a OperatorContext, f: Box<dyn Analytic<S> + 'a>, n: usize) -> Box<dyn Analytic<S> + 'a>
    where
        S: 'a,
    {
        (0..n).fold(f, |acc, _| Box::new(PommiezImage::new(ctx, acc)))
    }
}

impl<S: Scalar> Analytic<S> for PommiezImage<'_, S> {
    fn jet_at(&self, c: &S, k: usize) -> Result<TruncatedTaylor<S>> {
        if c.is_zero() {
            let g = self.ctx.g0_taylor(k + 1);
            return pommiez_with(&self.inner.jet_at(c, k + 1)?, g.coeffs());
        }
        let f0 = self.inner.value_at(&c.zero_like())?;
        let numer = self
            .inner
            .jet_at(c, k)?
            .sub(&self.ctx.g0_jet_at(c, k)?.scale(&f0));
        // divide by t = c + u
        series_div_linear(&numer, &-c.clone())
    }

    fn value_at(&self, z: &S) -> Result<S> {
        if z.is_zero() {
            return Ok(self.jet_at(z, 0)?.coeffs()[0].clone());
        }
        let f0 = self.inner.value_at(&z.zero_like())?;
        Ok((self.inner.value_at(z)? - self.ctx.g0_at(z)? * &f0) / z)
    }
}
