use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::funcspace::{ConvexRegion, ExpPoly};
use crate::operators::OperatorContext;
use crate::scalar::{cluster_roots, roots_numeric, BigComplex, GaussRational, Poly, Scalar, DEFAULT_PRECISION};

use super::zeros::zeros_in_disc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `g0` has infinitely many zeros.
    I,
    /// `g0 = P e_λ`.
    II,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Cyclic,
    NotCyclic,
    Undetermined,
}

#[derive(Clone, Debug)]
pub enum Witness {
    CommonZero { location: BigComplex, radius: f64 },
    Structural { lambda: GaussRational },
}

#[derive(Clone, Debug)]
pub struct CyclicityVerdict {
    pub case_tag: Case,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub warnings: Vec<String>,
}

impl CyclicityVerdict {
    pub fn to_json(&self) -> Value {
        let witness = match &self.witness {
            None => Value::Null,
            Some(Witness::CommonZero { location, radius }) => json!({
                "type": "common_zero",
                "location": location.to_decimal(20),
                "radius": format!("{radius:e}"),
            }),
            Some(Witness::Structural { lambda }) => json!({
                "type": "structural",
                "location": null,
                "radius": null,
                "reason": format!("f = R*exp({lambda}*z)"),
            }),
        };
        json!({
            "case": match self.case_tag { Case::I => "I", Case::II => "II" },
            "verdict": format!("{:?}", self.verdict),
            "witness": witness,
            "warnings": self.warnings,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub search_radius: f64,
    pub precision_bits: u32,
    /// Defaults to `2^(-precision/2)`.
    pub tolerance: Option<f64>,
    /// Region data for the check that `λ` lies in the domain.
    pub region: Option<ConvexRegion>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            search_radius: 20.0,
            precision_bits: DEFAULT_PRECISION,
            tolerance: None,
            region: None,
        }
    }
}

impl ClassifyOptions {
    pub fn tol(&self) -> f64 {
        self.tolerance
            .unwrap_or_else(|| 2f64.powi(-(self.precision_bits as i32) / 2))
    }
}

/// Bound on `|f'|` over the disc of radius `rho` around `c`.
pub(crate) fn lipschitz<C: Scalar>(f: &ExpPoly<C>, c: &BigComplex, rho: f64) -> f64 {
    let r = c.abs_f64() + rho;
    let mut total = 0.0;
    for (l, p) in f.terms() {
        let (lr, li) = l.to_f64();
        let lam = lr.hypot(li);
        let mut pr = 0.0;
        let mut dpr = 0.0;
        for (k, a) in p.coeffs().iter().enumerate() {
            let m = a.to_big(64).abs_f64();
            pr += m * r.powi(k as i32);
            if k > 0 {
                dpr += k as f64 * m * r.powi(k as i32 - 1);
            }
        }
        total += (lam * r).exp() * (lam * pr + dpr);
    }
    total
}

enum PointStatus {
    Nonzero,
    Zero,
    Unknown,
}

/// Whether `h` vanishes somewhere in the disc, decided by one evaluation.
fn status_at<C: Scalar>(h: &ExpPoly<C>, c: &BigComplex, rho: f64, tol: f64) -> PointStatus {
    let v = h.eval_big(c).abs_f64();
    if v <= tol {
        PointStatus::Zero
    } else if v > lipschitz(h, c, rho) * rho + tol {
        PointStatus::Nonzero
    } else {
        PointStatus::Unknown
    }
}

/// Zeros of `other` among the roots of `poly`: a common-zero witness, all
/// certified nonzero, or undecided.
fn check_roots<C: Scalar, D: Scalar>(poly: &Poly<C>, other: &ExpPoly<D>, prec: u32, tol: f64) -> Result<(Verdict, Option<Witness>)> {
    if poly.degree().unwrap_or(0) == 0 {
        return Ok((Verdict::Cyclic, None));
    }
    let exact: Option<Vec<GaussRational>> = poly.coeffs().iter().map(Scalar::as_exact).collect();
    let big = match exact {
        Some(c) => Poly::new(c).squarefree_part().map(|c| c.to_big(prec)),
        None => poly.map(|c| c.to_big(prec)),
    };
    let roots = roots_numeric(&big, prec)?;
    let mut undecided = false;
    for cl in cluster_roots(&roots) {
        match status_at(other, &cl.center, cl.radius, tol) {
            PointStatus::Nonzero => {}
            PointStatus::Zero => {
                return Ok((
                    Verdict::NotCyclic,
                    Some(Witness::CommonZero {
                        location: cl.center,
                        radius: cl.radius,
                    }),
                ))
            }
            PointStatus::Unknown => undecided = true,
        }
    }
    Ok((if undecided { Verdict::Undetermined } else { Verdict::Cyclic }, None))
}

/// Cyclicity of `f` for the Pommiez operator attached to `g0`.
pub fn classify<C: Scalar>(f: &ExpPoly<C>, g0: &ExpPoly, opts: &ClassifyOptions) -> Result<CyclicityVerdict> {
    OperatorContext::new(g0.clone())?;
    if f.is_zero() {
        return Err(Error::ZeroFunction("cyclicity verdict"));
    }
    let prec = opts.precision_bits;
    let tol = opts.tol();
    let mut warnings = Vec::new();

    if let Some((lam, p)) = g0.single_term() {
        match &opts.region {
            None => warnings.push("no region supplied; membership of the exponent of g0 in Q not checked".into()),
            Some(r) => {
                let last = r.polygons().last().expect("regions are nonempty");
                if !last.contains(lam) {
                    warnings.push(format!("exponent {lam} of g0 lies outside the largest supplied polygon"));
                }
            }
        }
        if let Some((mu, _)) = f.single_term() {
            if mu == lam {
                return Ok(CyclicityVerdict {
                    case_tag: Case::II,
                    verdict: Verdict::NotCyclic,
                    witness: Some(Witness::Structural { lambda: lam.clone() }),
                    warnings,
                });
            }
        }
        let (verdict, witness) = check_roots(p, f, prec, tol)?;
        return Ok(CyclicityVerdict {
            case_tag: Case::II,
            verdict,
            witness,
            warnings,
        });
    }

    if let Some((_, s)) = f.single_term() {
        let (verdict, witness) = check_roots(s, g0, prec, tol)?;
        return Ok(CyclicityVerdict {
            case_tag: Case::I,
            verdict,
            witness,
            warnings,
        });
    }

    let search = zeros_in_disc(g0, opts.search_radius, prec);
    if search.unresolved > 0 {
        warnings.push(format!("{} search rectangles left unresolved", search.unresolved));
    }
    for z in &search.zeros {
        if let PointStatus::Zero = status_at(f, &z.value, z.radius, tol) {
            return Ok(CyclicityVerdict {
                case_tag: Case::I,
                verdict: Verdict::NotCyclic,
                witness: Some(Witness::CommonZero {
                    location: z.value.clone(),
                    radius: z.radius,
                }),
                warnings,
            });
        }
    }
    warnings.push(format!(
        "no common zero in |z| <= {}; zeros of g0 beyond that radius are not examined",
        opts.search_radius
    ));
    Ok(CyclicityVerdict {
        case_tag: Case::I,
        verdict: Verdict::Undetermined,
        witness: None,
        warnings,
    })
}

#[derive(Clone, Debug)]
pub struct PfReport {
    pub product: CyclicityVerdict,
    /// `P` has no certified common zero with `g0`.
    pub no_common_zero: Verdict,
    pub consistent: bool,
}

/// For cyclic `f`: `P f` is cyclic exactly when `P` and `g0` have no common
/// zeros.
pub fn pf_cyclicity_consistency(f: &ExpPoly, g0: &ExpPoly, p: &Poly<GaussRational>, opts: &ClassifyOptions) -> Result<PfReport> {
    let base = classify(f, g0, opts)?;
    if base.verdict != Verdict::Cyclic {
        return Err(Error::PreconditionViolated(format!("f is {:?}, not Cyclic", base.verdict)));
    }
    let product = classify(&f.mul_poly(p), g0, opts)?;
    let (no_common_zero, _) = check_roots(p, g0, opts.precision_bits, opts.tol())?;
    let consistent = match (no_common_zero, product.verdict) {
        (Verdict::Undetermined, _) | (_, Verdict::Undetermined) => true,
        (a, b) => a == b,
    };
    Ok(PfReport {
        product,
        no_common_zero,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    fn opts() -> ClassifyOptions {
        ClassifyOptions::default()
    }

    #[test]
    fn spec_examples() {
        let one = ExpPoly::one();
        let v = classify(&ExpPoly::exp(int(1)), &one, &opts()).unwrap();
        assert_eq!((v.case_tag, v.verdict), (Case::II, Verdict::Cyclic));
        assert!(!v.warnings.is_empty());

        let v = classify(&ExpPoly::poly(Poly::from_ints(&[1, 1])), &one, &opts()).unwrap();
        assert_eq!(v.verdict, Verdict::NotCyclic);
        assert!(matches!(v.witness, Some(Witness::Structural { .. })));

        let g0 = ExpPoly::constant(int(2)).sub(&ExpPoly::exp(int(1)));
        let v = classify(&one, &g0, &opts()).unwrap();
        assert_eq!((v.case_tag, v.verdict), (Case::I, Verdict::Cyclic));

        let ln2 = BigComplex::from_int(2, 128).ln();
        let f = ExpPoly::poly(Poly::new(vec![-ln2, BigComplex::from_int(1, 128)]));
        let v = classify(&f, &g0, &opts()).unwrap();
        assert_eq!(v.verdict, Verdict::NotCyclic);
        match &v.witness {
            Some(Witness::CommonZero { location, .. }) => {
                assert!((location.to_f64().0 - std::f64::consts::LN_2).abs() < 1e-15)
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert_eq!(v.to_json()["witness"]["type"], "common_zero");
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(
            classify(&ExpPoly::one(), &ExpPoly::constant(int(3)), &opts()).unwrap_err().kind(),
            "InvalidG0"
        );
        assert!(classify(&ExpPoly::<GaussRational>::zero(), &ExpPoly::one(), &opts()).is_err());
    }

    #[test]
    fn both_multi_exponent() {
        // g0 = (1 + e^{2z})/2 vanishes at iπ/2; f = 1 - e^{4z}... shares it
        let half = GaussRational::from_frac(1, 2);
        let g0 = ExpPoly::constant(half.clone()).add(&ExpPoly::exp(int(2)).scale(&half));
        let f = ExpPoly::one().sub(&ExpPoly::exp(int(4)));
        let v = classify(&f, &g0, &ClassifyOptions { search_radius: 4.0, ..opts() }).unwrap();
        assert_eq!(v.verdict, Verdict::NotCyclic);
        let f2 = ExpPoly::constant(int(3)).sub(&ExpPoly::exp(int(1)));
        let v = classify(&f2, &g0, &ClassifyOptions { search_radius: 4.0, ..opts() }).unwrap();
        assert_eq!(v.verdict, Verdict::Undetermined);
    }

    #[test]
    fn product_with_polynomial() {
        let e = ExpPoly::exp(int(1));
        let r = pf_cyclicity_consistency(&e, &ExpPoly::one(), &Poly::from_ints(&[-1, 1]), &opts()).unwrap();
        assert_eq!(r.product.verdict, Verdict::Cyclic);
        assert!(r.consistent);
        let g0 = ExpPoly::poly(Poly::from_ints(&[1, -1]));
        let r = pf_cyclicity_consistency(&e, &g0, &Poly::from_ints(&[-1, 1]), &opts()).unwrap();
        assert_eq!(r.product.verdict, Verdict::NotCyclic);
        assert_eq!(r.no_common_zero, Verdict::NotCyclic);
        assert!(r.consistent);
        let r = pf_cyclicity_consistency(&e, &g0, &Poly::from_ints(&[1]), &opts()).unwrap();
        assert_eq!(r.product.verdict, Verdict::Cyclic);
    }
}
