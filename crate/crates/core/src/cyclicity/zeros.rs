//! Zeros of exponential-polynomials in a disc: argument-principle counting
//! on rectangles in `f64`, then Newton refinement at full precision.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::funcspace::ExpPoly;
use crate::scalar::{BigComplex, Scalar};

const BOUNDARY_POINTS: usize = 128;
const MAX_DEPTH: usize = 24;
/// Irrational-ish offset so grid lines avoid zeros at "nice" points.
const GRID_SHIFT: f64 = 0.013_717_421;

/// Fast `f64` evaluator of an exponential-polynomial.
pub(crate) struct F64Eval {
    terms: Vec<(Complex64, Vec<Complex64>)>,
}

impl F64Eval {
    pub(crate) fn new<C: Scalar>(f: &ExpPoly<C>) -> Self {
        let c64 = |b: BigComplex| {
            let (re, im) = b.to_f64();
            Complex64::new(re, im)
        };
        F64Eval {
            terms: f
                .terms()
                .iter()
                .map(|(l, p)| {
                    let (lr, li) = l.to_f64();
                    (
                        Complex64::new(lr, li),
                        p.coeffs().iter().map(|c| c64(c.to_big(64))).collect(),
                    )
                })
                .collect(),
        }
    }

    pub(crate) fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(l, p)| {
                let pz = p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
                pz * (l * z).exp()
            })
            .sum()
    }
}

#[derive(Clone, Copy, Debug)]
struct Rect {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

impl Rect {
    fn size(&self) -> f64 {
        (self.x1 - self.x0).max(self.y1 - self.y0)
    }

    fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    fn split(&self) -> [Rect; 4] {
        let Complex64 { re: xm, im: ym } = self.center();
        [
            Rect { x0: self.x0, y0: self.y0, x1: xm, y1: ym },
            Rect { x0: xm, y0: self.y0, x1: self.x1, y1: ym },
            Rect { x0: self.x0, y0: ym, x1: xm, y1: self.y1 },
            Rect { x0: xm, y0: ym, x1: self.x1, y1: self.y1 },
        ]
    }

    fn boundary(&self) -> Vec<Complex64> {
        let per = BOUNDARY_POINTS / 4;
        let corners = [
            Complex64::new(self.x0, self.y0),
            Complex64::new(self.x1, self.y0),
            Complex64::new(self.x1, self.y1),
            Complex64::new(self.x0, self.y1),
        ];
        let mut pts = Vec::with_capacity(BOUNDARY_POINTS);
        for s in 0..4 {
            let (a, b) = (corners[s], corners[(s + 1) % 4]);
            for j in 0..per {
                pts.push(a + (b - a) * (j as f64 / per as f64));
            }
        }
        pts
    }
}

/// Winding number of `f` around the rectangle, or `None` when the sampled
/// boundary does not determine it reliably.
fn winding(f: &F64Eval, r: &Rect) -> Option<i64> {
    let vals: Vec<Complex64> = r.boundary().into_iter().map(|z| f.eval(z)).collect();
    let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if !scale.is_finite() || vals.iter().any(|v| v.norm() <= 1e-13 * scale) {
        return None;
    }
    let mut total = 0.0;
    for i in 0..vals.len() {
        let d = (vals[(i + 1) % vals.len()] / vals[i]).arg();
        if d.abs() > std::f64::consts::FRAC_PI_2 {
            return None;
        }
        total += d;
    }
    let w = total / std::f64::consts::TAU;
    let n = w.round();
    ((w - n).abs() < 0.1).then_some(n as i64)
}

/// A refined zero with an error radius.
#[derive(Clone, Debug)]
pub struct FoundZero {
    pub value: BigComplex,
    pub radius: f64,
}

#[derive(Clone, Debug, Default)]
pub struct ZeroSearch {
    pub zeros: Vec<FoundZero>,
    /// Rectangles whose count could not be settled.
    pub unresolved: usize,
}

fn newton<C: Scalar>(f: &ExpPoly<C>, df: &ExpPoly<C>, start: Complex64, prec: u32) -> Option<FoundZero> {
    let mut z = BigComplex::from_f64(start.re, start.im, prec);
    let eps = 2f64.powi(-(prec as i32) + 8);
    for _ in 0..(60 + prec as usize) {
        let fz = f.eval_big(&z);
        let dz = df.eval_big(&z);
        if dz.is_zero() || !dz.is_finite() {
            return None;
        }
        let step = &fz / &dz;
        z = &z - &step;
        let s = step.abs_f64();
        if s <= eps * z.abs_f64().max(1.0) {
            let fz = f.eval_big(&z);
            let dz = df.eval_big(&z);
            let radius = 2.0 * (fz.abs_f64() / dz.abs_f64()) + s;
            return Some(FoundZero { value: z, radius });
        }
    }
    None
}

fn search_rect<C: Scalar>(
    f: &ExpPoly<C>,
    df: &ExpPoly<C>,
    fe: &F64Eval,
    r: Rect,
    depth: usize,
    prec: u32,
) -> ZeroSearch {
    let count = winding(fe, &r);
    let subdivide = |out: &mut ZeroSearch| {
        for s in r.split() {
            let sub = search_rect(f, df, fe, s, depth + 1, prec);
            out.zeros.extend(sub.zeros);
            out.unresolved += sub.unresolved;
        }
    };
    let mut out = ZeroSearch::default();
    match count {
        Some(0) => {}
        Some(n) if n > 0 && (n == 1 && r.size() < 0.25 || depth >= MAX_DEPTH) => {
            let inflated = r.size();
            match newton(f, df, r.center(), prec) {
                Some(z) => {
                    let (zr, zi) = z.value.to_f64();
                    if (Complex64::new(zr, zi) - r.center()).norm() <= inflated {
                        out.zeros.push(z);
                    } else {
                        out.unresolved += 1;
                    }
                }
                None => out.unresolved += 1,
            }
        }
        _ if depth >= MAX_DEPTH => out.unresolved += 1,
        _ => subdivide(&mut out),
    }
    out
}

/// Zeros of `f` in `|z| ≤ radius`.
pub fn zeros_in_disc<C: Scalar>(f: &ExpPoly<C>, radius: f64, prec: u32) -> ZeroSearch {
    let fe = F64Eval::new(f);
    let df = f.derivative();
    let cells = (2.0 * radius).ceil().max(1.0) as usize;
    let side = 2.0 * radius / cells as f64;
    let lo = -radius - GRID_SHIFT;
    let rects: Vec<Rect> = (0..cells + 1)
        .flat_map(|i| (0..cells + 1).map(move |j| (i, j)))
        .map(|(i, j)| Rect {
            x0: lo + i as f64 * side,
            y0: lo + j as f64 * side,
            x1: lo + (i + 1) as f64 * side,
            y1: lo + (j + 1) as f64 * side,
        })
        .collect();
    let parts: Vec<ZeroSearch> = rects
        .into_par_iter()
        .map(|r| search_rect(f, &df, &fe, r, 0, prec))
        .collect();
    let mut out = ZeroSearch::default();
    for p in parts {
        out.unresolved += p.unresolved;
        for z in p.zeros {
            if z.value.abs_f64() > radius + z.radius {
                continue;
            }
            let dup = out
                .zeros
                .iter()
                .any(|w| (&w.value - &z.value).abs_f64() <= 1e-8 + w.radius + z.radius);
            if !dup {
                out.zeros.push(z);
            }
        }
    }
    out
}
