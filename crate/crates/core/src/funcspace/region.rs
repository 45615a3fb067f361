use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{BigComplex, GaussRational, Scalar};

use super::ExpPoly;

fn cross(a: &GaussRational, b: &GaussRational, p: &GaussRational) -> Rational {
    // (b - a) x (p - a)
    let u = b - a;
    let v = p - a;
    Rational::from(&u.re * &v.im) - Rational::from(&u.im * &v.re)
}

/// Convex polygon with counterclockwise vertices. One vertex is a point and
/// two vertices a segment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<GaussRational>", into = "Vec<GaussRational>")]
pub struct Polygon {
    vertices: Vec<GaussRational>,
}

impl TryFrom<Vec<GaussRational>> for Polygon {
    type Error = Error;
    fn try_from(v: Vec<GaussRational>) -> Result<Self> {
        Polygon::new(v)
    }
}

impl From<Polygon> for Vec<GaussRational> {
    fn from(p: Polygon) -> Self {
        p.vertices
    }
}

impl Polygon {
    pub fn new(vertices: Vec<GaussRational>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidRegion("polygon has no vertices".into()));
        }
        if n == 2 && vertices[0] == vertices[1] {
            return Err(Error::InvalidRegion("segment endpoints coincide".into()));
        }
        if n >= 3 {
            let mut area = Rational::new();
            for i in 0..n {
                let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
                area += Rational::from(&a.re * &b.im) - Rational::from(&a.im * &b.re);
                for p in &vertices {
                    if cross(a, b, p) < 0 {
                        return Err(Error::InvalidRegion(
                            "polygon is not convex with counterclockwise vertices".into(),
                        ));
                    }
                }
            }
            if area <= 0 {
                return Err(Error::InvalidRegion("polygon has no interior".into()));
            }
        }
        Ok(Polygon { vertices })
    }

    /// Axis-aligned square `[-h, h]²`.
    pub fn square(h: Rational) -> Self {
        let m = Rational::from(-&h);
        let v = vec![
            GaussRational::new(m.clone(), m.clone()),
            GaussRational::new(h.clone(), m.clone()),
            GaussRational::new(h.clone(), h.clone()),
            GaussRational::new(m, h),
        ];
        Polygon { vertices: v }
    }

    pub fn vertices(&self) -> &[GaussRational] {
        &self.vertices
    }

    /// Closed containment, boundary included.
    pub fn contains(&self, p: &GaussRational) -> bool {
        let v = &self.vertices;
        match v.len() {
            1 => &v[0] == p,
            2 => {
                if cross(&v[0], &v[1], p) != 0 {
                    return false;
                }
                let a = p - &v[0];
                let b = p - &v[1];
                Rational::from(&a.re * &b.re) + Rational::from(&a.im * &b.im) <= 0
            }
            n => (0..n).all(|i| cross(&v[i], &v[(i + 1) % n], p) >= 0),
        }
    }

    /// Interior containment; degenerate polygons have empty interior.
    pub fn contains_strictly(&self, p: &GaussRational) -> bool {
        let v = &self.vertices;
        let n = v.len();
        n >= 3 && (0..n).all(|i| cross(&v[i], &v[(i + 1) % n], p) > 0)
    }

    /// Containment of another convex polygon, via its vertices.
    pub fn contains_polygon(&self, other: &Polygon) -> bool {
        other.vertices.iter().all(|p| self.contains(p))
    }

    pub fn contains_polygon_strictly(&self, other: &Polygon) -> bool {
        other.vertices.iter().all(|p| self.contains_strictly(p))
    }

    /// `H(z) = max_v Re(v·z)`
    pub fn support(&self, z: &BigComplex) -> Float {
        let prec = z.precision();
        let mut best: Option<Float> = None;
        for v in &self.vertices {
            let val = (&BigComplex::from_gauss(v, prec) * z).re().clone();
            best = Some(match best {
                Some(b) if b >= val => b,
                _ => val,
            });
        }
        best.expect("polygons are nonempty")
    }

    /// Exact support function at a Gaussian-rational point.
    pub fn support_exact(&self, z: &GaussRational) -> Rational {
        self.vertices
            .iter()
            .map(|v| (v * z).re)
            .max()
            .expect("polygons are nonempty")
    }
}

/// Increasing sequence `Q_1 ⊆ Q_2 ⊆ …` of convex polygons with `0 ∈ Q_1`.
/// Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Polygon>", into = "Vec<Polygon>")]
pub struct ConvexRegion {
    polygons: Vec<Polygon>,
}

impl TryFrom<Vec<Polygon>> for ConvexRegion {
    type Error = Error;
    fn try_from(v: Vec<Polygon>) -> Result<Self> {
        ConvexRegion::new(v)
    }
}

impl From<ConvexRegion> for Vec<Polygon> {
    fn from(r: ConvexRegion) -> Self {
        r.polygons
    }
}

impl ConvexRegion {
    pub fn new(polygons: Vec<Polygon>) -> Result<Self> {
        let first = polygons
            .first()
            .ok_or_else(|| Error::InvalidRegion("no polygons".into()))?;
        if !first.contains(&GaussRational::zero()) {
            return Err(Error::InvalidRegion("0 is not in Q_1".into()));
        }
        for (i, w) in polygons.windows(2).enumerate() {
            if !w[1].contains_polygon(&w[0]) {
                return Err(Error::InvalidRegion(format!("Q_{} is not contained in Q_{}", i + 1, i + 2)));
            }
        }
        Ok(ConvexRegion { polygons })
    }

    /// `Q_n = [-n, n]²` for `n = 1..=count`.
    pub fn squares(count: usize) -> Self {
        ConvexRegion {
            polygons: (1..=count).map(|n| Polygon::square(Rational::from(n))).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.polygons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    /// `Q_n`, 1-based.
    pub fn polygon(&self, n: usize) -> Result<&Polygon> {
        if n == 0 {
            return Err(Error::InvalidRegion("polygon indices start at 1".into()));
        }
        self.polygons
            .get(n - 1)
            .ok_or_else(|| Error::InvalidRegion(format!("Q_{n} requested, only {} given", self.len())))
    }

    pub fn weight(&self, n: usize, k: usize) -> Result<Weight<'_>> {
        self.polygon(n)?;
        if k == 0 {
            return Err(Error::InvalidRegion("weight index k starts at 1".into()));
        }
        Ok(Weight { region: self, n, k })
    }
}

/// `v_{n,k}(z) = H_{Q_n}(z) + |z|/k`
#[derive(Clone, Copy, Debug)]
pub struct Weight<'a> {
    pub region: &'a ConvexRegion,
    pub n: usize,
    pub k: usize,
}

impl Weight<'_> {
    pub fn eval(&self, z: &BigComplex) -> Float {
        let poly = &self.region.polygons[self.n - 1];
        poly.support(z) + z.abs() / self.k as u32
    }
}

/// Conjugate-diagram test: every exponent of `f` lies in `Q_n`.
#[allow(non_snake_case)]
pub fn membership_En<C: Scalar>(f: &ExpPoly<C>, region: &ConvexRegion, n: usize) -> Result<bool> {
    let q = region.polygon(n)?;
    Ok(f.exponents().all(|l| q.contains(l)))
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition1Point {
    pub z: BigComplex,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// Sampled check of the growth condition with `m = n + 1`, `s = k`.
#[derive(Clone, Debug, Serialize)]
pub struct Condition1Report {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub points: Vec<Condition1Point>,
    /// Largest `lhs - rhs` over the samples.
    pub max_slack: f64,
    /// Smallest admissible `C ≥ 0` on the samples.
    pub constant: f64,
}

const DISC_POINTS: usize = 64;

pub fn condition1_sample(
    region: &ConvexRegion,
    n: usize,
    k: usize,
    z_samples: &[BigComplex],
) -> Result<Condition1Report> {
    let m = n + 1;
    let inner = region.polygon(n)?;
    let outer = region.polygon(m)?;
    if !outer.contains_polygon_strictly(inner) {
        return Err(Error::StrictNestingViolated { n });
    }
    let vn = region.weight(n, k)?;
    let vm = region.weight(m, k)?;
    let mut points = Vec::with_capacity(z_samples.len());
    let mut max_slack = f64::NEG_INFINITY;
    for z in z_samples {
        let prec = z.precision();
        let mut sup = vn.eval(z);
        let mut inf = vm.eval(z);
        for j in 0..DISC_POINTS {
            let th = 2.0 * std::f64::consts::PI * j as f64 / DISC_POINTS as f64;
            let t = z + &BigComplex::from_f64(th.cos(), th.sin(), prec);
            let a = vn.eval(&t);
            if a > sup {
                sup = a;
            }
            let b = vm.eval(&t);
            if b < inf {
                inf = b;
            }
        }
        let lhs = (sup + (z.abs() + 1u32).ln()).to_f64();
        let rhs = inf.to_f64();
        let slack = lhs - rhs;
        max_slack = max_slack.max(slack);
        points.push(Condition1Point { z: z.clone(), lhs, rhs, slack });
    }
    Ok(Condition1Report {
        n,
        m,
        k,
        points,
        max_slack,
        constant: max_slack.max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussRational {
        GaussRational::new(re, im)
    }

    fn unit_square() -> Polygon {
        Polygon::square(Rational::from(1))
    }

    #[test]
    fn support_examples() {
        let sq = unit_square();
        assert_eq!(sq.support(&BigComplex::from_int(1, 128)).to_f64(), 1.0);
        assert_eq!(sq.support(&BigComplex::from_f64(1.0, 1.0, 128)).to_f64(), 2.0);
        assert_eq!(sq.support(&BigComplex::zero(128)).to_f64(), 0.0);
        assert_eq!(sq.support_exact(&g(1, 1)), 2);
    }

    #[test]
    fn polygon_validation() {
        // clockwise
        assert!(Polygon::new(vec![g(0, 0), g(0, 1), g(1, 0)]).is_err());
        // nonconvex
        assert!(Polygon::new(vec![g(0, 0), g(2, 0), g(1, 1), g(2, 2), g(0, 2)]).is_err());
        assert!(Polygon::new(vec![g(0, 0), g(1, 0), g(2, 0)]).is_err());
        assert!(Polygon::new(vec![g(-1, 0), g(1, 0)]).is_ok());
        assert!(Polygon::new(vec![]).is_err());
    }

    #[test]
    fn containment_is_closed() {
        let sq = unit_square();
        assert!(sq.contains(&g(1, 1)));
        assert!(sq.contains(&g(1, 0)));
        assert!(!sq.contains(&g(2, 0)));
        assert!(!sq.contains_strictly(&g(1, 0)));
        assert!(sq.contains_strictly(&g(0, 0)));
        let seg = Polygon::new(vec![g(-1, 0), g(1, 0)]).unwrap();
        assert!(seg.contains(&g(0, 0)));
        assert!(!seg.contains(&g(2, 0)));
        assert!(!seg.contains(&g(0, 1)));
    }

    #[test]
    fn region_validation() {
        assert!(ConvexRegion::new(vec![]).is_err());
        let off = Polygon::new(vec![g(1, 1), g(2, 1), g(2, 2)]).unwrap();
        assert!(ConvexRegion::new(vec![off]).is_err());
        assert!(ConvexRegion::new(vec![Polygon::square(Rational::from(2)), unit_square()]).is_err());
    }

    #[test]
    fn membership_examples() {
        let r = ConvexRegion::new(vec![Polygon::square(Rational::from(2))]).unwrap();
        assert!(membership_En(&ExpPoly::exp(g(1, 0)), &r, 1).unwrap());
        assert!(!membership_En(&ExpPoly::exp(g(10, 0)), &r, 1).unwrap());
        assert!(membership_En(&ExpPoly::one(), &r, 1).unwrap());
    }

    #[test]
    fn weight_is_homogeneous() {
        let r = ConvexRegion::squares(2);
        let w = r.weight(2, 3).unwrap();
        let z = BigComplex::from_f64(0.7, -1.3, 128);
        let z5 = z.scale_f(&Float::with_val(128, 5));
        let lhs = w.eval(&z5).to_f64();
        let rhs = 5.0 * w.eval(&z).to_f64();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn condition1_examples() {
        let r = ConvexRegion::squares(2);
        let circle: Vec<BigComplex> = (0..16)
            .map(|j| {
                let th = j as f64 * std::f64::consts::PI / 8.0;
                BigComplex::from_f64(10.0 * th.cos(), 10.0 * th.sin(), 128)
            })
            .collect();
        let rep = condition1_sample(&r, 1, 1, &circle).unwrap();
        assert!(rep.points.iter().all(|p| p.slack.is_finite()));
        assert!(rep.constant >= 0.0);
        let rep0 = condition1_sample(&r, 1, 1, &[BigComplex::zero(128)]).unwrap();
        let p = &rep0.points[0];
        assert!(p.lhs <= p.rhs + rep0.constant);

        let same = ConvexRegion::new(vec![unit_square(), unit_square()]).unwrap();
        assert_eq!(
            condition1_sample(&same, 1, 1, &circle).unwrap_err(),
            Error::StrictNestingViolated { n: 1 }
        );
    }
}
