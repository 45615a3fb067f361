use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{BigComplex, GaussRational, Poly, Scalar};

use super::TruncatedTaylor;

/// Exponential-polynomial `Σ_j P_j(z)·e^{λ_j z}` with Gaussian-rational
/// exponents.
///
/// Exponents are pairwise distinct and every stored polynomial is
/// nonzero, so the zero function is the empty map. Coefficients are exact
/// by default; `ExpPoly<BigComplex>` carries numerically known
/// coefficients (e.g. `z - ln 2`).
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPoly<C: Scalar = GaussRational> {
    terms: BTreeMap<GaussRational, Poly<C>>,
}

/// Where the zeros of an exponential-polynomial can be.
#[derive(Clone, Debug, PartialEq)]
pub enum ZeroStructure<C: Scalar = GaussRational> {
    /// `f = P·e_λ`: the zeros are exactly the roots of `P`.
    FinitelyMany { lambda: GaussRational, poly: Poly<C> },
    InfinitelyMany,
}

impl<C: Scalar> ExpPoly<C> {
    pub fn zero() -> Self {
        ExpPoly {
            terms: BTreeMap::new(),
        }
    }

    /// Build from `(λ, P)` pairs; repeated exponents are merged.
    pub fn from_terms(terms: impl IntoIterator<Item = (GaussRational, Poly<C>)>) -> Self {
        let mut out = Self::zero();
        for (lambda, p) in terms {
            out.add_term(lambda, p);
        }
        out
    }

    /// `P(z)·e^{λz}`
    pub fn term(lambda: GaussRational, p: Poly<C>) -> Self {
        Self::from_terms([(lambda, p)])
    }

    pub fn poly(p: Poly<C>) -> Self {
        Self::term(GaussRational::zero(), p)
    }

    fn add_term(&mut self, lambda: GaussRational, p: Poly<C>) {
        if p.is_zero() {
            return;
        }
        match self.terms.remove(&lambda) {
            Some(q) => {
                let s = q.add(&p);
                if !s.is_zero() {
                    self.terms.insert(lambda, s);
                }
            }
            None => {
                self.terms.insert(lambda, p);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<GaussRational, Poly<C>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &GaussRational> {
        self.terms.keys()
    }

    /// `Some((λ, P))` when `self = P·e_λ`.
    pub fn single_term(&self) -> Option<(&GaussRational, &Poly<C>)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Polynomial part when the only exponent is 0.
    pub fn as_poly(&self) -> Option<Poly<C>> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        match self.single_term() {
            Some((l, p)) if l.is_zero() => Some(p.clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, p) in &other.terms {
            out.add_term(l.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ExpPoly {
            terms: self.terms.iter().map(|(l, p)| (l.clone(), p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, p)| (l.clone(), p.scale(c))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (la, pa) in &self.terms {
            for (lb, pb) in &other.terms {
                out.add_term(la + lb, pa.mul(pb));
            }
        }
        out
    }

    pub fn mul_poly(&self, q: &Poly<C>) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, p)| (l.clone(), p.mul(q))))
    }

    /// Multiplication by the independent variable.
    pub fn mul_z(&self) -> Self {
        ExpPoly {
            terms: self.terms.iter().map(|(l, p)| (l.clone(), p.mul_z())).collect(),
        }
    }

    /// `(λ, P) ↦ (λ, λP + P')`
    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, p)| {
            let lam = match p.leading() {
                Some(c) => c.lift(l),
                None => unreachable!("stored polynomials are nonzero"),
            };
            (l.clone(), p.scale(&lam).add(&p.derivative()))
        }))
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    /// Numerical value at `z`.
    pub fn eval_big(&self, z: &BigComplex) -> BigComplex {
        let prec = z.precision();
        let mut acc = BigComplex::zero(prec);
        for (l, p) in &self.terms {
            let pz = p.map(|c| c.to_big(prec)).eval(z);
            let e = (&BigComplex::from_gauss(l, prec) * z).exp();
            acc += &(&pz * &e);
        }
        acc
    }

    /// Zero data read off the term structure.
    pub fn zero_structure(&self) -> Result<ZeroStructure<C>> {
        if self.is_zero() {
            return Err(Error::ZeroFunction("zero structure"));
        }
        Ok(match self.single_term() {
            Some((l, p)) => ZeroStructure::FinitelyMany {
                lambda: l.clone(),
                poly: p.clone(),
            },
            None => ZeroStructure::InfinitelyMany,
        })
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D + Copy) -> ExpPoly<D> {
        ExpPoly::from_terms(self.terms.iter().map(|(l, p)| (l.clone(), p.map(f))))
    }
}

impl ExpPoly<GaussRational> {
    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::poly(Poly::constant(c))
    }

    /// `e^{λz}`
    pub fn exp(lambda: GaussRational) -> Self {
        Self::term(lambda, Poly::constant(GaussRational::one()))
    }

    /// `c·z^k·e^{λz}`
    pub fn monomial(c: GaussRational, k: usize, lambda: GaussRational) -> Self {
        Self::term(lambda, Poly::monomial(c, k))
    }

    /// The identity function `z`.
    pub fn z() -> Self {
        Self::monomial(GaussRational::one(), 1, GaussRational::zero())
    }

    pub fn to_big(&self, prec: u32) -> ExpPoly<BigComplex> {
        self.map_coeffs(|c| BigComplex::from_gauss(c, prec))
    }

    /// Value at `z` in the field of `z`; `None` when some `e^{λz}` is not
    /// representable there (e.g. a transcendental value for an exact `z`).
    pub fn eval_at<S: Scalar>(&self, z: &S) -> Option<S> {
        let mut acc = z.zero_like();
        for (l, p) in &self.terms {
            let e = (z.lift(l) * z).try_exp()?;
            acc += &(p.map(|c| z.lift(c)).eval(z) * &e);
        }
        Some(acc)
    }

    /// Exact Maclaurin jet through order `k`.
    pub fn taylor(&self, k: usize) -> TruncatedTaylor<GaussRational> {
        let mut out = vec![GaussRational::zero(); k + 1];
        for (l, p) in &self.terms {
            // λ^j / j!
            let mut ex = Vec::with_capacity(k + 1);
            let mut cur = GaussRational::one();
            for j in 0..=k {
                if j > 0 {
                    cur = &(&cur * l) / &GaussRational::from_int(j as i64);
                }
                ex.push(cur.clone());
            }
            for (d, c) in p.coeffs().iter().enumerate().take(k + 1) {
                if c.is_zero() {
                    continue;
                }
                for m in d..=k {
                    out[m] += &(c * &ex[m - d]);
                }
            }
        }
        TruncatedTaylor::new(out)
    }

    /// Jet of `u ↦ f(a + u)` through order `k`, in the field of `a`.
    pub fn taylor_at<S: Scalar>(&self, a: &S, k: usize) -> Option<TruncatedTaylor<S>> {
        let mut out = TruncatedTaylor::zeros(k, a);
        for (l, p) in &self.terms {
            let lam = a.lift(l);
            let scale = (lam.clone() * a).try_exp()?;
            let shifted = p.map(|c| a.lift(c)).taylor_shift(a);
            let mut ex = Vec::with_capacity(k + 1);
            let mut cur = scale;
            for j in 0..=k {
                if j > 0 {
                    cur = cur * &lam / a.int_like(j as i64);
                }
                ex.push(cur.clone());
            }
            let mut v = vec![a.zero_like(); k + 1];
            for (d, c) in shifted.coeffs().iter().enumerate().take(k + 1) {
                for m in d..=k {
                    v[m] += &(c.clone() * &ex[m - d]);
                }
            }
            out = out.add(&TruncatedTaylor::new(v));
        }
        Some(out)
    }

    /// `f^{(k)}(a)` in the field of `a`, when representable.
    pub fn derivative_at<S: Scalar>(&self, k: usize, a: &S) -> Option<S> {
        self.nth_derivative(k).eval_at(a)
    }
}

/// Coefficient rendering for the expression grammar.
fn monomial_string(c: &GaussRational, k: usize) -> String {
    let zpart = match k {
        0 => String::new(),
        1 => "z".to_string(),
        _ => format!("z^{k}"),
    };
    if k == 0 {
        return c.to_string();
    }
    if c.is_one() {
        zpart
    } else if (-c).is_one() {
        format!("-{zpart}")
    } else {
        format!("{c}*{zpart}")
    }
}

fn join_signed(parts: &[String]) -> String {
    let mut s = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            s.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(p);
        }
    }
    s
}

fn exp_string(l: &GaussRational) -> String {
    if l.is_one() {
        "exp(z)".into()
    } else if (-l).is_one() {
        "exp(-z)".into()
    } else {
        format!("exp({l}*z)")
    }
}

impl fmt::Display for ExpPoly<GaussRational> {
    /// Canonical text form accepted by the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (l, p) in &self.terms {
            let monos: Vec<(usize, &GaussRational)> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if l.is_zero() {
                parts.extend(monos.iter().map(|(k, c)| monomial_string(c, *k)));
                continue;
            }
            let e = exp_string(l);
            if monos.len() == 1 {
                let (k, c) = monos[0];
                let m = if k == 0 {
                    if c.is_one() {
                        String::new()
                    } else if (-c).is_one() {
                        "-".into()
                    } else {
                        format!("{c}*")
                    }
                } else {
                    format!("{}*", monomial_string(c, k))
                };
                parts.push(format!("{m}{e}"));
            } else {
                let inner: Vec<String> = monos.iter().map(|(k, c)| monomial_string(c, *k)).collect();
                parts.push(format!("({})*{e}", join_signed(&inner)));
            }
        }
        write!(f, "{}", join_signed(&parts))
    }
}
