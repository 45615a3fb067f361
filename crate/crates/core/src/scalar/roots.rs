//! Aberth–Ehrlich simultaneous root finding with a posteriori inclusion
//! radii.

use rug::Float;

use super::{BigComplex, GaussRational, Poly, MIN_PRECISION};
use crate::error::{Error, Result};

/// A root approximation together with a disc radius that contains a true
/// root.
#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub value: BigComplex,
    pub radius: f64,
}

/// Roots whose inclusion discs overlap, reported as one cluster.
#[derive(Clone, Debug)]
pub struct RootCluster {
    pub center: BigComplex,
    pub radius: f64,
    pub multiplicity: usize,
}

/// All `deg(p)` roots of an exact polynomial, with multiplicity.
pub fn poly_roots(p: &Poly<GaussRational>, precision_bits: u32) -> Result<Vec<CertifiedRoot>> {
    let prec = precision_bits.max(MIN_PRECISION);
    roots_numeric(&p.map(|c| BigComplex::from_gauss(c, prec)), prec)
}

/// Roots of a polynomial with floating-point coefficients.
pub fn roots_numeric(p: &Poly<BigComplex>, precision_bits: u32) -> Result<Vec<CertifiedRoot>> {
    let prec = precision_bits.max(MIN_PRECISION);
    let deg = match p.degree() {
        None => {
            return Err(Error::PreconditionViolated(
                "root isolation of the zero polynomial".into(),
            ))
        }
        Some(0) => {
            return Err(Error::PreconditionViolated(
                "root isolation needs degree >= 1".into(),
            ))
        }
        Some(d) => d,
    };
    let coeffs: Vec<BigComplex> = p.coeffs().iter().map(|c| c.with_precision(prec)).collect();
    // Roots at the origin are split off exactly.
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut out: Vec<CertifiedRoot> = (0..zeros)
        .map(|_| CertifiedRoot {
            value: BigComplex::zero(prec),
            radius: 0.0,
        })
        .collect();
    let reduced = Poly::new(coeffs[zeros..].to_vec());
    let n = deg - zeros;
    if n == 0 {
        return Ok(out);
    }
    let lead = reduced.leading().unwrap().clone();
    let monic = reduced.map(|c| c / &lead);
    let dmonic = monic.derivative();
    let mut z = initial_points(&monic, n, prec);

    let cap = 200 + 8 * prec as usize;
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32 - 8)));
    let mut best = f64::INFINITY;
    let mut stalled = 0usize;
    for _ in 0..cap {
        let mut max_step = Float::with_val(prec, 0);
        for i in 0..n {
            let pv = monic.eval(&z[i]);
            if pv.is_zero() {
                continue;
            }
            let dv = dmonic.eval(&z[i]);
            let ratio = &pv / &dv;
            let mut s = BigComplex::zero(prec);
            for j in 0..n {
                if j != i {
                    s += &(BigComplex::from_int(1, prec) / (&z[i] - &z[j]));
                }
            }
            let denom = BigComplex::from_int(1, prec) - &ratio * &s;
            let w = if dv.is_zero() || !denom.is_finite() || denom.is_zero() {
                // Degenerate step: nudge off the critical point.
                BigComplex::from_f64(1e-3, 1e-3, prec)
            } else {
                &ratio / &denom
            };
            let scale = Float::with_val(prec, z[i].abs().max(&Float::with_val(prec, 1)));
            let rel = Float::with_val(prec, w.abs() / &scale);
            if rel > max_step {
                max_step = rel;
            }
            z[i] = &z[i] - &w;
        }
        if max_step < tiny {
            break;
        }
        let m = max_step.to_f64();
        if m < best * 0.5 {
            best = m;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= 12 && residuals_ok(&monic, &z, prec) {
                break;
            }
        }
    }
    if !residuals_ok(&monic, &z, prec) {
        return Err(Error::NonConvergence(format!(
            "root residuals above 2^-{} after iteration cap at {} bits",
            prec / 2,
            prec
        )));
    }
    let unit = 2f64.powi(-(prec as i32 - 1));
    for zi in z {
        // |p(z)| is inflated by a Horner rounding bound so the radius stays
        // valid when the computed residual underflows the working precision.
        let az = zi.abs_f64();
        let magnitude: f64 = monic
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs_f64() * az.powi(k as i32))
            .sum();
        let pv = monic.eval(&zi).abs_f64() + unit * 2.0 * (n as f64 + 1.0) * magnitude;
        let dv = dmonic.eval(&zi).abs_f64();
        let r = if dv == 0.0 { f64::INFINITY } else { n as f64 * pv / dv };
        out.push(CertifiedRoot { value: zi, radius: r });
    }
    Ok(out)
}

fn initial_points(monic: &Poly<BigComplex>, n: usize, prec: u32) -> Vec<BigComplex> {
    // Radius: geometric mean of the root moduli, |a0|^(1/n) for monic p.
    let a0 = monic.coeffs()[0].abs_f64();
    let r = if a0 > 0.0 && a0.is_finite() {
        a0.powf(1.0 / n as f64)
    } else {
        1.0
    };
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            let rr = r * (1.0 + 0.05 * k as f64 / n as f64);
            BigComplex::from_f64(rr * theta.cos(), rr * theta.sin(), prec)
        })
        .collect()
}

/// Backward-error test: `|p(z)| <= 2^(-prec/2) · Σ|a_k||z|^k`.
fn residuals_ok(p: &Poly<BigComplex>, z: &[BigComplex], prec: u32) -> bool {
    let tol = 2f64.powi(-(prec as i32) / 2);
    z.iter().all(|zi| {
        let pv = p.eval(zi).abs_f64();
        let az = zi.abs_f64();
        let bound: f64 = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs_f64() * az.powi(k as i32))
            .sum();
        pv.is_finite() && pv <= tol * bound
    })
}

/// Group roots whose inclusion discs intersect.
pub fn cluster_roots(roots: &[CertifiedRoot]) -> Vec<RootCluster> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut c = i;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (&roots[i].value - &roots[j].value).abs_f64();
            if d <= roots[i].radius + roots[j].radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(g) => groups[g].push(i),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let prec = roots[g[0]].value.precision();
            let mut sum = BigComplex::zero(prec);
            for &i in &g {
                sum += &roots[i].value;
            }
            let center = &sum / &BigComplex::from_int(g.len() as i64, prec);
            let radius = g
                .iter()
                .map(|&i| (&roots[i].value - &center).abs_f64() + roots[i].radius)
                .fold(0.0, f64::max);
            RootCluster {
                center,
                radius,
                multiplicity: g.len(),
            }
        })
        .collect()
}
