use serde::Serialize;

use crate::duality::DividedSeries;
use crate::error::{Error, Result};
use crate::funcspace::ExpPoly;
use crate::operators::{orbit_exact, pommiez_exact_on_line, OperatorContext};
use crate::scalar::{GaussRational, Poly};

pub type Matrix = Vec<Vec<GaussRational>>;

fn line_of(g0: &ExpPoly) -> Result<(GaussRational, Poly<GaussRational>)> {
    let (lam, p) = g0.single_term().ok_or_else(|| Error::ExponentMismatch {
        expected: "a single exponent".into(),
        found: format!("{} exponents", g0.num_terms()),
    })?;
    Ok((lam.clone(), p.clone()))
}

/// Matrix of the Pommiez operator on `{z^k e^{λz}}_{k=0..n}`; column `k` is
/// the image of `z^k e^{λz}`.
pub fn invariant_line_matrix(g0: &ExpPoly, n: usize) -> Result<Matrix> {
    let (lam, p) = line_of(g0)?;
    let ctx = OperatorContext::new(g0.clone())?;
    let deg_p = p.degree().unwrap_or(0);
    if deg_p > n + 1 {
        return Err(Error::NotInvariant(format!(
            "the image of exp({lam}*z) has degree {}, above {n}",
            deg_p - 1
        )));
    }
    let mut m = vec![vec![GaussRational::zero(); n + 1]; n + 1];
    for k in 0..=n {
        let img = pommiez_exact_on_line(&ctx, &ExpPoly::monomial(GaussRational::one(), k, lam.clone()))?;
        if let Some((_, q)) = img.single_term() {
            for (i, c) in q.coeffs().iter().enumerate() {
                m[i][k] = c.clone();
            }
        }
    }
    Ok(m)
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![GaussRational::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &(&a[i][k] * &bk[j]);
            }
        }
    }
    out
}

pub fn mat_pow(a: &Matrix, e: usize) -> Matrix {
    let n = a.len();
    let mut id = vec![vec![GaussRational::zero(); n]; n];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = GaussRational::one();
    }
    (0..e).fold(id, |acc, _| mat_mul(&acc, a))
}

/// Rank by exact Gaussian elimination.
pub fn rank(rows: &[Vec<GaussRational>]) -> usize {
    let mut m: Vec<Vec<GaussRational>> = rows.to_vec();
    let cols = m.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in &mut m {
        r.resize(cols, GaussRational::zero());
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][c].inv().expect("pivot is nonzero");
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            for j in c..cols {
                let sub = &factor * &m[rank][j];
                m[i][j] -= &sub;
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitRank {
    pub rank: usize,
    /// Smallest `N` with the orbit inside `P_N(e_λ)`.
    pub hull_degree: usize,
}

/// Dimension of the span of the exact orbit of `f` on the line `C[z]e_λ`.
pub fn orbit_rank(g0: &ExpPoly, f: &ExpPoly) -> Result<OrbitRank> {
    let (_, p) = line_of(g0)?;
    let ctx = OperatorContext::new(g0.clone())?;
    let deg_s = f.single_term().and_then(|(_, s)| s.degree()).unwrap_or(0);
    let bound = deg_s.max(p.degree().unwrap_or(0)) + 2;
    let orbit = orbit_exact(&ctx, f, bound)?;
    let vecs: Vec<Vec<GaussRational>> = orbit
        .iter()
        .map(|h| h.single_term().map(|(_, q)| q.coeffs().to_vec()).unwrap_or_default())
        .collect();
    let hull_degree = vecs.iter().map(|v| v.len().saturating_sub(1)).max().unwrap_or(0);
    Ok(OrbitRank {
        rank: rank(&vecs),
        hull_degree,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealReport {
    pub in_ideal: bool,
    pub w_first_nonzero: Option<usize>,
    pub product_first_nonzero: Option<usize>,
}

fn first_nonzero(s: &DividedSeries<GaussRational>) -> Option<usize> {
    s.dcoeffs().iter().position(|c| !c.is_zero())
}

/// `w ∈ T_n = {h : h^{(j)}(0) = 0, j ≤ n}` implies `v ∗ w ∈ T_n`.
pub fn ideal_membership(n: usize, v: &DividedSeries<GaussRational>, w: &DividedSeries<GaussRational>) -> Result<IdealReport> {
    let avail = v.valid_order().min(w.valid_order());
    if avail < n + 1 {
        return Err(Error::PrecisionExhausted { needed: n + 1, available: avail });
    }
    let wf = first_nonzero(w);
    if wf.is_some_and(|i| i <= n) {
        return Err(Error::PreconditionViolated(format!("w is not in T_{n}")));
    }
    let prod = v.duhamel(w)?;
    let pf = first_nonzero(&prod);
    Ok(IdealReport {
        in_ideal: pf.map_or(true, |i| i > n),
        w_first_nonzero: wf,
        product_first_nonzero: pf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    #[test]
    fn shift_matrix_is_nilpotent() {
        let m = invariant_line_matrix(&ExpPoly::exp(int(2)), 3).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if j == i + 1 { int(1) } else { int(0) };
                assert_eq!(m[i][j], want);
            }
        }
        assert!(mat_pow(&m, 4).iter().flatten().all(|c| c.is_zero()));
        let m0 = invariant_line_matrix(&ExpPoly::exp(int(5)), 0).unwrap();
        assert_eq!(m0, vec![vec![int(0)]]);
    }

    #[test]
    fn general_p_line() {
        let g0 = ExpPoly::term(int(1), Poly::from_ints(&[1, 0, 0, 2]));
        assert_eq!(invariant_line_matrix(&g0, 1).unwrap_err().kind(), "NotInvariant");
        let m = invariant_line_matrix(&g0, 3).unwrap();
        // D(e_λ) = -2 z^2 e_λ
        assert_eq!(m[2][0], int(-2));
    }

    #[test]
    fn ranks() {
        let g0 = ExpPoly::exp(int(2));
        let r = orbit_rank(&g0, &ExpPoly::monomial(int(1), 3, int(2))).unwrap();
        assert_eq!(r, OrbitRank { rank: 4, hull_degree: 3 });
        assert_eq!(orbit_rank(&g0, &g0).unwrap().rank, 1);
        let f = ExpPoly::term(int(2), Poly::from_ints(&[1, 1]));
        assert_eq!(orbit_rank(&g0, &f).unwrap().rank, 2);
        assert!(orbit_rank(&g0, &ExpPoly::exp(int(1))).is_err());
    }

    #[test]
    fn ideal_examples() {
        let ds = |f: &ExpPoly| DividedSeries::from_taylor(&f.taylor(6));
        let v = ds(&ExpPoly::exp(GaussRational::from_frac(3, 2)));
        let r = ideal_membership(0, &v, &ds(&ExpPoly::z())).unwrap();
        assert!(r.in_ideal);
        let r = ideal_membership(2, &ds(&ExpPoly::exp(int(1))), &ds(&ExpPoly::monomial(int(1), 3, int(0)))).unwrap();
        assert_eq!(r.product_first_nonzero, Some(3));
        let r = ideal_membership(4, &v, &ds(&ExpPoly::zero())).unwrap();
        assert!(r.in_ideal);
        assert_eq!(r.w_first_nonzero, None);
        assert!(ideal_membership(1, &v, &ds(&ExpPoly::z())).is_err());
    }
}
