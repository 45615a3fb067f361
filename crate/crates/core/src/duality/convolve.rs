use crate::error::Result;
use crate::funcspace::TruncatedTaylor;
use crate::operators::{shift_T_jet, Analytic, OperatorContext};
use crate::scalar::{factorial, GaussRational, Scalar};

use super::functional::{combine_jet, Functional};

/// Jet of `t ↦ t f(t)` around `c`.
fn t_times<S: Scalar>(f: &TruncatedTaylor<S>, c: &S) -> TruncatedTaylor<S> {
    let k = f.valid_order();
    f.scale(c).add(&f.mul_t().truncate(k).expect("mul_t raises the order"))
}

/// Coefficients `Q[i][k]` of `F(μ + u, λ + v)` for `F(t, z) = T_z f(t)`,
/// `i ≤ ti`, `k ≤ zk`.
fn bivariate_jet<S: Scalar, F: Analytic<S> + ?Sized>(
    ctx: &OperatorContext,
    f: &F,
    mu: &S,
    lambda: &S,
    ti: usize,
    zk: usize,
) -> Result<Vec<Vec<S>>> {
    let order = ti + zk + 1;
    let a = t_times(&f.jet_at(mu, order)?, mu);
    let b = t_times(&f.jet_at(lambda, order)?, lambda);
    let g_z = ctx.g0_jet_at(lambda, order)?;
    let g_t = ctx.g0_jet_at(mu, order)?;
    // N(u, v) = A(u) G(v) - C(u) B(v)
    let n = |i: usize, k: usize| -> S {
        a.coeffs()[i].clone() * &g_z.coeffs()[k] - g_t.coeffs()[i].clone() * &b.coeffs()[k]
    };
    let zero = mu.zero_like();
    let c = mu.clone() - lambda;
    let mut q = vec![vec![zero.clone(); zk + 1]; ti + 1];
    if !c.is_zero() {
        // (c + u - v) Q = N
        for i in 0..=ti {
            for k in 0..=zk {
                let mut s = n(i, k);
                if i > 0 {
                    s -= &q[i - 1][k];
                }
                if k > 0 {
                    s += &q[i][k - 1];
                }
                q[i][k] = s / &c;
            }
        }
        return Ok(q);
    }
    // (u - v) Q = N, solved one total degree at a time
    let mut full = vec![vec![zero; order + 1]; order + 1];
    for d in 1..=order {
        full[d - 1][0] = n(d, 0);
        for k in 1..d {
            full[d - 1 - k][k] = n(d - k, k) + &full[d - k][k - 1];
        }
    }
    for (i, row) in q.iter_mut().enumerate() {
        for (k, e) in row.iter_mut().enumerate() {
            *e = full[i][k].clone();
        }
    }
    Ok(q)
}

/// `φ ⊗ ψ (f) = φ_z(ψ_t(T_z f (t)))`.
pub fn convolve<S: Scalar, F: Analytic<S> + ?Sized>(
    phi: &Functional,
    psi: &Functional,
    f: &F,
    ctx: &OperatorContext,
    like: &S,
) -> Result<S> {
    let mut acc = like.zero_like();
    for (lam, cs) in phi.atoms() {
        let lam_s = like.lift(lam);
        for (mu, ds) in psi.atoms() {
            let mu_s = like.lift(mu);
            let q = bivariate_jet(ctx, f, &mu_s, &lam_s, ds.len() - 1, cs.len() - 1)?;
            for (j, d) in ds.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                for (k, c) in cs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let w: GaussRational = &(&(c * d) * &factorial(j as u32)) * &factorial(k as u32);
                    acc += &(like.lift(&w) * &q[j][k]);
                }
            }
        }
    }
    Ok(acc)
}

/// `B_l f (z) = l(T_z f)`, the commutant operator attached to `l`.
pub fn commutant_apply<S: Scalar, F: Analytic<S> + ?Sized>(l: &Functional, f: &F, z: &S, ctx: &OperatorContext) -> Result<S> {
    let mut acc = z.zero_like();
    if l.is_zero() {
        return Ok(acc);
    }
    let fz = f.value_at(z)?;
    for (mu, cs) in l.atoms() {
        let mu_s = z.lift(mu);
        let k = cs.len() - 1;
        let jet = shift_T_jet(ctx, &f.jet_at(&mu_s, k + 1)?, &fz, z, &mu_s, k)?;
        acc += &combine_jet(cs, &jet)?;
    }
    Ok(acc)
}
