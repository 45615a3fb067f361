use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::funcspace::{ExpPoly, TruncatedTaylor};
use crate::operators::Analytic;
use crate::scalar::{factorial, GaussRational, Poly, Scalar};

/// Finite combination `Σ c_{λ,k} δ_λ^{(k)}` of derivative evaluations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Functional {
    atoms: BTreeMap<GaussRational, Vec<GaussRational>>,
}

#[derive(Serialize, Deserialize)]
struct AtomRepr {
    point: GaussRational,
    coeffs: Vec<GaussRational>,
}

#[derive(Serialize, Deserialize)]
struct FunctionalRepr {
    atoms: Vec<AtomRepr>,
}

impl Serialize for Functional {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        FunctionalRepr {
            atoms: self
                .atoms
                .iter()
                .map(|(p, c)| AtomRepr {
                    point: p.clone(),
                    coeffs: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Functional {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FunctionalRepr::deserialize(d)?;
        Ok(Functional::from_atoms(r.atoms.into_iter().map(|a| (a.point, a.coeffs))))
    }
}

fn strip(v: &mut Vec<GaussRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl Functional {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = (GaussRational, Vec<GaussRational>)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in atoms {
            out.add_atom(p, &c);
        }
        out
    }

    fn add_atom(&mut self, point: GaussRational, coeffs: &[GaussRational]) {
        let entry = self.atoms.entry(point.clone()).or_default();
        if entry.len() < coeffs.len() {
            entry.resize(coeffs.len(), GaussRational::zero());
        }
        for (e, c) in entry.iter_mut().zip(coeffs) {
            *e += c;
        }
        strip(entry);
        if entry.is_empty() {
            self.atoms.remove(&point);
        }
    }

    /// `δ_λ`
    pub fn delta(point: GaussRational) -> Self {
        Self::delta_deriv(point, 0)
    }

    /// `δ_λ^{(k)}: f ↦ f^{(k)}(λ)`
    pub fn delta_deriv(point: GaussRational, k: usize) -> Self {
        let mut c = vec![GaussRational::zero(); k];
        c.push(GaussRational::one());
        Self::from_atoms([(point, c)])
    }

    /// `f ↦ Σ γ_k f^{(k)}(0)`, e.g. the functionals `φ_n`.
    pub fn at_zero(gamma: &[GaussRational]) -> Self {
        Self::from_atoms([(GaussRational::zero(), gamma.to_vec())])
    }

    pub fn atoms(&self) -> &BTreeMap<GaussRational, Vec<GaussRational>> {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Highest derivative order among the atoms.
    pub fn max_order(&self) -> usize {
        self.atoms.values().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.atoms {
            out.add_atom(p.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        Self::from_atoms(
            self.atoms
                .iter()
                .map(|(p, c)| (p.clone(), c.iter().map(|x| x * s).collect())),
        )
    }

    /// `Σ c_{λ,k} f^{(k)}(λ)`.
    pub fn apply<S: Scalar, F: Analytic<S> + ?Sized>(&self, f: &F, like: &S) -> Result<S> {
        let mut acc = like.zero_like();
        for (p, c) in &self.atoms {
            let jet = f.jet_at(&like.lift(p), c.len() - 1)?;
            acc += &combine_jet(c, &jet)?;
        }
        Ok(acc)
    }

    /// Application to a Maclaurin jet; every atom must sit at 0.
    pub fn apply_jet<S: Scalar>(&self, jet: &TruncatedTaylor<S>) -> Result<S> {
        let mut acc = jet.coeffs()[0].zero_like();
        for (p, c) in &self.atoms {
            if !p.is_zero() {
                return Err(crate::Error::PreconditionViolated(format!(
                    "atom at {p} cannot be applied to a jet at 0"
                )));
            }
            acc += &combine_jet(c, jet)?;
        }
        Ok(acc)
    }
}

/// `Σ_k c_k k! jet_k`
pub(crate) fn combine_jet<S: Scalar>(c: &[GaussRational], jet: &TruncatedTaylor<S>) -> Result<S> {
    let mut acc = jet.coeffs()[0].zero_like();
    for (k, ck) in c.iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let d = jet.coeff(k)?;
        acc += &(d.lift(&(ck * &factorial(k as u32))) * d);
    }
    Ok(acc)
}

/// Shorthand for [`Functional::apply`].
pub fn apply_functional<S: Scalar, F: Analytic<S> + ?Sized>(phi: &Functional, f: &F, like: &S) -> Result<S> {
    phi.apply(f, like)
}

/// `J(φ) = φ(e^{·z}) = Σ c_{λ,k} z^k e^{λz}`.
pub fn laplace_j(phi: &Functional) -> ExpPoly {
    ExpPoly::from_terms(
        phi.atoms
            .iter()
            .map(|(p, c)| (p.clone(), Poly::new(c.clone()))),
    )
}

/// Structural inverse of [`laplace_j`].
pub fn laplace_j_inverse(h: &ExpPoly) -> Functional {
    Functional::from_atoms(h.terms().iter().map(|(l, p)| (l.clone(), p.coeffs().to_vec())))
}

/// `⟨x, h⟩ = Σ m! x_m h_m` for a polynomial `x`.
pub fn pair<S: Scalar>(x: &Poly<GaussRational>, h: &TruncatedTaylor<S>) -> Result<S> {
    combine_jet(x.coeffs(), h)
}

/// [`pair`] with an exponential-polynomial, exact.
pub fn pair_exp(x: &Poly<GaussRational>, h: &ExpPoly) -> GaussRational {
    let k = x.degree().unwrap_or(0);
    pair(x, &h.taylor(k)).expect("jet order matches the degree")
}
