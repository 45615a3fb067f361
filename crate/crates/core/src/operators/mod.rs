//! The Pommiez operator, the shifts `T_z`, `T̃_z`, `D_z`, multiplication by
//! `z`, orbits and the functionals `φ_n`.

mod analytic;
mod context;
mod orbit;

pub use analytic::{Analytic, PommiezImage};
pub use context::{apply_phi, OperatorContext, PHI_CAP};
pub use orbit::{orbit_exact, orbit_taylor};

use crate::error::{Error, Result};
use crate::funcspace::{ExpPoly, TruncatedTaylor};
use crate::scalar::{GaussRational, Scalar};

/// Formal quotient `Q` with `(t - z)·Q = numer`, valid through the order of
/// `numer`.
pub fn series_div_linear<S: Scalar>(numer: &TruncatedTaylor<S>, z: &S) -> Result<TruncatedTaylor<S>> {
    let c = numer.coeffs();
    if z.is_zero() {
        if !c[0].is_zero() {
            return Err(Error::SingularAtZero);
        }
        return Ok(div_removable(numer, z));
    }
    let mut q = Vec::with_capacity(c.len());
    let mut prev = z.zero_like();
    for n in c {
        let next = (prev - n) / z;
        q.push(next.clone());
        prev = next;
    }
    Ok(TruncatedTaylor::new(q))
}

/// Division by `t - z` when the quotient is known to be entire; at `z = 0`
/// the constant term is discarded as rounding residue and one order of
/// validity is lost.
fn div_removable<S: Scalar>(numer: &TruncatedTaylor<S>, z: &S) -> TruncatedTaylor<S> {
    if z.is_zero() {
        let c = numer.coeffs();
        if c.len() == 1 {
            return TruncatedTaylor::new(vec![z.zero_like()]);
        }
        return TruncatedTaylor::new(c[1..].to_vec());
    }
    series_div_linear(numer, z).expect("z is nonzero")
}

/// `b_m = a_{m+1} - g_{m+1}·a_0`; one order of validity is lost.
pub(crate) fn pommiez_with<S: Scalar>(f: &TruncatedTaylor<S>, g: &[GaussRational]) -> Result<TruncatedTaylor<S>> {
    let k = f.valid_order();
    if k == 0 {
        return Err(Error::PrecisionExhausted { needed: 1, available: 0 });
    }
    let a = f.coeffs();
    Ok(TruncatedTaylor::new(
        (0..k).map(|m| a[m + 1].clone() - a[0].lift(&g[m + 1]) * &a[0]).collect(),
    ))
}

/// Pommiez operator `(f(t) - g0(t) f(0)) / t` on a Maclaurin jet.
pub fn pommiez<S: Scalar>(ctx: &OperatorContext, f: &TruncatedTaylor<S>) -> Result<TruncatedTaylor<S>> {
    let g = ctx.g0_taylor(f.valid_order());
    pommiez_with(f, g.coeffs())
}

/// Closed form on the line `C[z]e_λ` when `g0 = P e_λ` and `f = S e_λ`.
pub fn pommiez_exact_on_line(ctx: &OperatorContext, f: &ExpPoly) -> Result<ExpPoly> {
    let (lam, p) = ctx
        .g0()
        .single_term()
        .ok_or_else(|| Error::PreconditionViolated("g0 is not of the form P·e_λ".into()))?;
    if f.is_zero() {
        return Ok(ExpPoly::zero());
    }
    let (mu, s) = f.single_term().ok_or_else(|| Error::ExponentMismatch {
        expected: lam.to_string(),
        found: "several exponents".into(),
    })?;
    if mu != lam {
        return Err(Error::ExponentMismatch {
            expected: lam.to_string(),
            found: mu.to_string(),
        });
    }
    let s0 = s.coeff_or_zero(0, &GaussRational::zero());
    let numer = s.sub(&p.scale(&s0));
    let q = numer.div_z().expect("numerator vanishes at 0 because P(0) = 1");
    Ok(ExpPoly::term(lam.clone(), q))
}

/// Multiplication by the independent variable.
#[allow(non_snake_case)]
pub fn mult_M(f: &ExpPoly) -> ExpPoly {
    f.mul_z()
}

/// Jet of `T_z f` around `center`, through order `k`, from the jet of `f`
/// around `center` (order ≥ k + 1) and the value `f(z)`.
#[allow(non_snake_case)]
pub fn shift_T_jet<S: Scalar>(
    ctx: &OperatorContext,
    f_jet: &TruncatedTaylor<S>,
    f_z: &S,
    z: &S,
    center: &S,
    k: usize,
) -> Result<TruncatedTaylor<S>> {
    let f_jet = f_jet.truncate(k + 1)?;
    let g0z = ctx.g0_at(z)?;
    let g = ctx.g0_jet_at(center, k + 1)?;
    // t f(t) with t = center + u
    let tf = f_jet.scale(center).add(&f_jet.mul_t().truncate(k + 1)?);
    let numer = tf.scale(&g0z).sub(&g.scale(&(z.clone() * f_z)));
    div_removable(&numer, &(z.clone() - center)).truncate(k)
}

/// Jet of `T̃_z f` around `center`, through order `k`.
#[allow(non_snake_case)]
pub fn shift_Ttilde_jet<S: Scalar>(
    ctx: &OperatorContext,
    f_jet: &TruncatedTaylor<S>,
    f_z: &S,
    z: &S,
    center: &S,
    k: usize,
) -> Result<TruncatedTaylor<S>> {
    let f_jet = f_jet.truncate(k + 1)?;
    let g0z = ctx.g0_at(z)?;
    let g = ctx.g0_jet_at(center, k + 1)?;
    let numer = f_jet.scale(&g0z).sub(&g.scale(f_z));
    div_removable(&numer, &(z.clone() - center)).truncate(k)
}

/// Jet of the divided difference `D_z f` around `center`.
pub fn pommiez_at_jet<S: Scalar>(f_jet: &TruncatedTaylor<S>, f_z: &S, z: &S, center: &S, k: usize) -> Result<TruncatedTaylor<S>> {
    let f_jet = f_jet.truncate(k + 1)?;
    let mut c = f_jet.coeffs().to_vec();
    c[0] = c[0].clone() - f_z;
    div_removable(&TruncatedTaylor::new(c), &(z.clone() - center)).truncate(k)
}

/// Maclaurin jet of `T_z f` through order `k`.
#[allow(non_snake_case)]
pub fn shift_T<S: Scalar, F: Analytic<S> + ?Sized>(ctx: &OperatorContext, f: &F, z: &S, k: usize) -> Result<TruncatedTaylor<S>> {
    let zero = z.zero_like();
    shift_T_jet(ctx, &f.jet_at(&zero, k + 1)?, &f.value_at(z)?, z, &zero, k)
}

/// Maclaurin jet of `T̃_z f` through order `k`.
#[allow(non_snake_case)]
pub fn shift_Ttilde<S: Scalar, F: Analytic<S> + ?Sized>(
    ctx: &OperatorContext,
    f: &F,
    z: &S,
    k: usize,
) -> Result<TruncatedTaylor<S>> {
    let zero = z.zero_like();
    shift_Ttilde_jet(ctx, &f.jet_at(&zero, k + 1)?, &f.value_at(z)?, z, &zero, k)
}

/// Maclaurin jet of `D_z f = (f(t) - f(z)) / (t - z)` through order `k`.
pub fn pommiez_at<S: Scalar, F: Analytic<S> + ?Sized>(f: &F, z: &S, k: usize) -> Result<TruncatedTaylor<S>> {
    let zero = z.zero_like();
    pommiez_at_jet(&f.jet_at(&zero, k + 1)?, &f.value_at(z)?, z, &zero, k)
}

/// `T_z f` on the diagonal `t = z`:
/// `z g0(z) f'(z) - z f(z) g0'(z) + f(z) g0(z)`.
#[allow(non_snake_case)]
pub fn shift_T_diagonal<S: Scalar>(ctx: &OperatorContext, f: &ExpPoly, z: &S) -> Result<S> {
    let not_exact = || Error::NotExact("diagonal value".into());
    let fz = f.eval_at(z).ok_or_else(not_exact)?;
    let dfz = f.derivative().eval_at(z).ok_or_else(not_exact)?;
    let gz = ctx.g0_at(z)?;
    let dgz = ctx.g0().derivative().eval_at(z).ok_or_else(not_exact)?;
    Ok(z.clone() * &gz * &dfz - z.clone() * &fz * &dgz + fz * &gz)
}
