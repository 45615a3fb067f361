//! Seeded randomized identity suites.
//!
//! Every trial draws its instance from its own ChaCha stream, seeded from
//! the suite seed and the trial index, so a reported failure can be
//! replayed from its `trial_seed` alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::duality::{convolve, duhamel, pair, DividedSeries, Functional};
use crate::error::{Error, Result};
use crate::funcspace::{ExpPoly, TruncatedTaylor};
use crate::leontiev::omega;
use crate::operators::{
    apply_phi, mult_M, pommiez, pommiez_at, shift_T, shift_Ttilde, Analytic, OperatorContext, PommiezImage,
};
use crate::scalar::{factorial, BigComplex, GaussRational, Poly, Scalar};

pub const SUITES: &[&str] = &[
    "eq2",
    "eq3",
    "lemma14",
    "lemma14n",
    "lemma1",
    "remark16a",
    "duhamel",
    "remark11",
    "lemma4",
    "surjectivity",
];

/// Working precision of the numeric suites, in bits.
pub const NUMERIC_PRECISION: u32 = 128;

/// Relative tolerance of the numeric suites.
pub fn numeric_tolerance() -> f64 {
    2f64.powi(-(NUMERIC_PRECISION as i32) / 2)
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub trial_seed: u64,
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
}

/// Seed of trial `trial` in a suite seeded with `seed`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (trial as u64).wrapping_add(0xD1B5_4A32_D192_ED03).rotate_left(29)
}

type Trial = fn(&mut ChaCha8Rng) -> (String, Result<Option<String>>);

pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<SuiteReport> {
    let trial: Trial = match name {
        "eq2" => eq2,
        "eq3" => eq3,
        "lemma14" => lemma14,
        "lemma14n" => lemma14_numeric,
        "lemma1" => lemma1,
        "remark16a" => remark16a,
        "duhamel" => duhamel_algebra,
        "remark11" => remark11,
        "lemma4" => lemma4,
        "surjectivity" => surjectivity,
        _ => {
            return Err(Error::PreconditionViolated(format!(
                "unknown suite {name:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    let mut report = SuiteReport {
        suite: name.to_string(),
        passed: 0,
        failed: 0,
        failures: Vec::new(),
    };
    for t in 0..trials {
        let ts = trial_seed(seed, t);
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let (instance, outcome) = trial(&mut rng);
        let detail = match outcome {
            Ok(None) => {
                report.passed += 1;
                continue;
            }
            Ok(Some(d)) => d,
            Err(e) => format!("{}: {e}", e.kind()),
        };
        report.failed += 1;
        report.failures.push(Failure {
            trial: t,
            trial_seed: ts,
            instance,
            detail,
        });
    }
    Ok(report)
}

pub fn rational(rng: &mut impl Rng) -> GaussRational {
    GaussRational::from_frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn gauss(rng: &mut impl Rng) -> GaussRational {
    if rng.gen_bool(0.5) {
        rational(rng)
    } else {
        GaussRational::new(rational(rng).re, rational(rng).re)
    }
}

pub fn poly(rng: &mut impl Rng, max_degree: usize) -> Poly<GaussRational> {
    let d = rng.gen_range(0..=max_degree);
    Poly::new((0..=d).map(|_| gauss(rng)).collect())
}

/// Polynomial with constant term 1.
pub fn poly_g0(rng: &mut impl Rng, max_degree: usize) -> Poly<GaussRational> {
    let mut c = poly(rng, max_degree).into_coeffs();
    if c.is_empty() {
        c.push(GaussRational::one());
    }
    c[0] = GaussRational::one();
    Poly::new(c)
}

/// Sum of up to `max_terms` terms `P(z) e^{λz}` with small exponents.
pub fn exppoly(rng: &mut impl Rng, max_terms: usize, max_degree: usize) -> ExpPoly {
    let n = rng.gen_range(1..=max_terms);
    ExpPoly::from_terms((0..n).map(|_| (small_exponent(rng), poly(rng, max_degree))))
}

/// `ExpPoly` with value 1 at the origin.
pub fn exppoly_g0(rng: &mut impl Rng, max_terms: usize, max_degree: usize) -> ExpPoly {
    loop {
        let e = exppoly(rng, max_terms, max_degree);
        let c = e.taylor(0).coeffs()[0].clone();
        if let Some(inv) = c.inv() {
            return e.scale(&inv);
        }
    }
}

fn small_exponent(rng: &mut impl Rng) -> GaussRational {
    let re = GaussRational::from_frac(rng.gen_range(-4..=4), rng.gen_range(1..=2));
    if rng.gen_bool(0.25) {
        re + GaussRational::new(0, GaussRational::from_frac(rng.gen_range(-2..=2), 2).re)
    } else {
        re
    }
}

/// `(f - f(0) g0) / z` on polynomials, an oracle independent of the jet kernel.
pub fn pommiez_poly(g0: &Poly<GaussRational>, f: &Poly<GaussRational>) -> Poly<GaussRational> {
    let f0 = f.coeff_or_zero(0, &GaussRational::zero());
    f.sub(&g0.scale(&f0)).div_z().expect("constant term cancels")
}

fn jets_equal<S: Scalar>(a: &TruncatedTaylor<S>, b: &TruncatedTaylor<S>) -> Option<String> {
    if a == b {
        None
    } else {
        Some(format!("jets differ: {a:?} vs {b:?}"))
    }
}

fn rel_err(a: &BigComplex, b: &BigComplex) -> f64 {
    (a.clone() - b).abs_f64() / b.abs_f64().max(1.0)
}

fn jets_close(a: &TruncatedTaylor<BigComplex>, b: &TruncatedTaylor<BigComplex>) -> Option<String> {
    let tol = numeric_tolerance();
    let worst = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| rel_err(x, y))
        .fold(0.0, f64::max);
    if a.valid_order() == b.valid_order() && worst < tol {
        None
    } else {
        Some(format!("relative error {worst:e} exceeds {tol:e}"))
    }
}

fn eq2(rng: &mut ChaCha8Rng) -> (String, Result<Option<String>>) {
    let f = ExpPoly::poly(poly(rng, 8));
    let g0 = poly_g0(rng, 8);
    let z = rational(rng);
    let inst = format!("f={f}; g0={}; z={z}", ExpPoly::poly(g0.clone()));
    let check = || -> Result<Option<String>> {
        let ctx = OperatorContext::new(ExpPoly::poly(g0.clone()))?;
        let k = 12;
        let lhs = f.taylor(k).scale(&ctx.g0_at(&z)?).sub(&shift_T(&ctx, &f, &z, k)?);
        let rhs = shift_Ttilde(&ctx, &f, &z, k)?.scale(&-z.clone());
        Ok(jets_equal(&lhs, &rhs))
    };
    (inst, check())
}

fn eq3(rng: &mut ChaCha8Rng) -> (String, Result<Option<String>>) {
    let f = ExpPoly::poly(poly(rng, 8));
    let g0 = poly_g0(rng, 8);
    let z = rational(rng);
    let alpha = if rng.gen_ratio(1, 5) { z.clone() } else { rational(rng) };
    let inst = format!("f={f}; g0={}; z={z}; alpha={alpha}", ExpPoly::poly(g0.clone()));
    let check = || -> Result<Option<String>> {
        let ctx = OperatorContext::new(ExpPoly::poly(g0.clone()))?;
        let k = 12;
        let mf = mult_M(&f);
        let shifted = mf.sub(&f.scale(&alpha));
        let lhs = mf.taylor(k).scale(&ctx.g0_at(&z)?).sub(&shift_T(&ctx, &shifted, &z, k)?);
        let rhs = shift_T(&ctx, &f, &z, k)?.scale(&-(z.clone() - &alpha));
        Ok(jets_equal(&lhs, &rhs))
    };
    (inst, check())
}

fn lemma14(rng: &mut ChaCha8Rng) -> (String, Result<Option<String>>) {
    let f = ExpPoly::poly(poly(rng, 8));
    let g0 = ExpPoly::poly(poly_g0(rng, 8));
    let z = rational(rng);
    let inst = format!("f={f}; g0={g0}; z={z}");
    let check = || -> Result<Option<String>> {
        let ctx = OperatorContext::new(g0.clone())?;
        let k = 12;
        let lhs = shift_Ttilde(&ctx, &f, &z, k)?;
        let rhs = pommiez_at(&f, &z, k)?
            .scale(&ctx.g0_at(&z)?)
            .sub(&pommiez_at(&g0, &z, k)?.scale(&f.value_at(&z)?));
        Ok(jets_equal(&lhs, &rhs))
    };
    (inst, check())
}

fn lemma14_numeric(rng: &mut ChaCha8Rng) -> (String, Result<Option<String>>) {
    let f = exppoly(rng, 3, 3);
    let g0 = exppoly_g0(rng, 3, 2);
    let zq = gauss(rng);
    let inst = format!("f={f}; g0={g0}; z={zq}");
    let check = || -> Result<Option<String>> {
        let ctx = OperatorContext::new(g0.clone())?;
        let z = BigComplex::from_gauss(&zq, NUMERIC_PRECISION);
        let k = 10;
        let lhs = shift_Ttilde(&ctx, &f, &z, k)?;
        let rhs = pommiez_at(&f, &z, k)?
            .scale(&ctx.g0_at(&z)?)
            .sub(&pommiez_at(&g0, &z, k)?.scale(&f.value_at(&z)?));
        Ok(jets_close(&lhs, &rhs))
    };
    (inst, check())
}

fn lemma1(rng: &mut ChaCha8Rng) -> (String, Result<Option<String>>) {
    let f = poly(rng, 8);
    let g0 = poly_g0(rng, 6);
    let z = rational(rng);
    let n = rng.gen_range(0..=6usize);
    let inst = format!("f={}; g0={}; z={z}; n={n}", ExpPoly::poly(f.clone()), ExpPoly::poly(g0.clone()));
    let check = || -> Result<Option<String>> {
        let ctx = OperatorContext::new(ExpPoly::poly(g0.clone()))?;
        let gamma = ctx.phi_n_coefficients(n)?;
        if gamma[n] != &GaussRational::one() / &factorial(n as u32) {
            return Ok(Some(format!("leading coefficient {} is not 1/{n}!", gamma[n])));
        }
        let want = (0..n).fold(f.clone(), |acc, _| pommiez_poly(&g0, &acc)).eval(&z);
        let got = apply_phi(&gamma, &shift_T(&ctx, &ExpPoly::poly(f.clone()), &z, n)?)?;
        Ok((got != want).then(|| format!("phi_n(T_z f) = {got}, D^n f(z) = {want}")))
    };
    (inst, check())
}

fn remark16a(rng: &mut ChaCha8Rng) -> (String, Result<Option<String>>) {
    let polynomial = rng.gen_ratio(1, 3);
    let f = loop {
        let f = if polynomial { ExpPoly::poly(poly(rng, 6)) } else { exppoly(rng, 3, 3) };
        if !f.is_zero() {
            break f;
        }
    };
    let x = poly(rng, 6);
    let zq = loop {
        let z = rational(rng);
        if !f.exponents().any(|l| *l == z) {
            break z;
        }
    };
    let inst = format!("f={f}; x={}; z={zq}", ExpPoly::poly(x.clone()));
    let check = || -> Result<Option<String>> {
        let xe = ExpPoly::poly(x.clone());
        let k = x.degree().unwrap_or(0);
        if polynomial {
            let lhs = pair(&x, &pommiez_at(&f, &zq, k)?)?;
            let rhs = omega(&f, &xe, &zq)?;
            return Ok((lhs != rhs).then(|| format!("pair {lhs} vs omega {rhs}")));
        }
        let z = BigComplex::from_gauss(&zq, NUMERIC_PRECISION);
        let lhs = pair(&x, &pommiez_at(&f, &z, k)?)?;
        let rhs = omega(&f, &xe, &z)?;
        let e = rel_err(&lhs, &rhs);
        Ok((e >= numeric_tolerance()).then(|| format!("relative error {e:e}")))
    };
    (inst, check())
}

fn divided(rng: &mut ChaCha8Rng, order: usize) -> DividedSeries<GaussRational> {
    DividedSeries::new((0..=order).map(|_| gauss(rng)).collect())
}

fn duhamel_algebra(rng: &mut ChaCha8Rng) -> (String, Result<Option<String>>) {
    const ORDER: usize = 16;
    let (u, v, w) = (divided(rng, ORDER), divided(rng, ORDER), divided(rng, ORDER));
    let (a, b) = (exppoly(rng, 2, 2), exppoly(rng, 2, 2));
    let inst = format!("u={:?}; v={:?}; w={:?}; a={a}; b={b}", u.dcoeffs(), v.dcoeffs(), w.dcoeffs());
    let check = || -> Result<Option<String>> {
        let mut unit = vec![GaussRational::zero(); ORDER + 1];
        unit[0] = GaussRational::one();
        let unit = DividedSeries::new(unit);
        if u.duhamel(&unit)? != u {
            return Ok(Some("unit law fails".into()));
        }
        if u.duhamel(&v)? != v.duhamel(&u)? {
            return Ok(Some("commutativity fails".into()));
        }
        if u.duhamel(&v)?.duhamel(&w)? != u.duhamel(&v.duhamel(&w)?)? {
            return Ok(Some("associativity fails".into()));
        }
        let closed = DividedSeries::from_taylor(&duhamel(&a, &b).taylor(ORDER));
        let series = DividedSeries::from_taylor(&a.taylor(ORDER)).duhamel(&DividedSeries::from_taylor(&b.taylor(ORDER)))?;
        Ok((closed != series).then(|| "closed form disagrees with the series product".to_string()))
    };
    (inst, check())
}

fn remark11(rng: &mut ChaCha8Rng) -> (String, Result<Option<String>>) {
    let alpha = loop {
        let a = rational(rng);
        if !a.is_zero() {
            break a;
        }
    };
    let root = Poly::new(vec![GaussRational::one(), -(&GaussRational::one() / &alpha)]);
    let g0 = root.mul(&poly_g0(rng, 4));
    let f = Poly::new(vec![-alpha.clone(), GaussRational::one()]).mul(&poly(rng, 5));
    let inst = format!("f={}; g0={}; alpha={alpha}", ExpPoly::poly(f.clone()), ExpPoly::poly(g0.clone()));
    let check = || -> Result<Option<String>> {
        let ctx = OperatorContext::new(ExpPoly::poly(g0.clone()))?;
        let depth = 10;
        let jets = crate::operators::orbit_taylor(&ctx, &ExpPoly::poly(f.clone()).taylor(depth + 12), depth)?;
        for (n, j) in jets.iter().enumerate() {
            let v = j.eval_partial(&alpha);
            if !v.is_zero() {
                return Ok(Some(format!("D^{n} f(alpha) = {v}")));
            }
        }
        Ok(None)
    };
    (inst, check())
}

fn lemma4(rng: &mut ChaCha8Rng) -> (String, Result<Option<String>>) {
    let f = ExpPoly::poly(poly(rng, 8));
    let g0 = poly_g0(rng, 5);
    let (j, k) = (rng.gen_range(0..=4usize), rng.gen_range(0..=4usize));
    let inst = format!("f={f}; g0={}; j={j}; k={k}", ExpPoly::poly(g0.clone()));
    let check = || -> Result<Option<String>> {
        let ctx = OperatorContext::new(ExpPoly::poly(g0.clone()))?;
        let pj = Functional::at_zero(&ctx.phi_n_coefficients(j)?);
        let pk = Functional::at_zero(&ctx.phi_n_coefficients(k)?);
        let zero = GaussRational::zero();
        let jk = convolve(&pj, &pk, &f, &ctx, &zero)?;
        let kj = convolve(&pk, &pj, &f, &ctx, &zero)?;
        let fp = f.as_poly().expect("polynomial");
        let orbit = (0..j + k).fold(fp, |acc, _| pommiez_poly(&g0, &acc));
        let want = orbit.coeff_or_zero(0, &zero);
        Ok((jk != want || kj != want).then(|| format!("{jk} / {kj} vs D^(j+k) f(0) = {want}")))
    };
    (inst, check())
}

fn surjectivity(rng: &mut ChaCha8Rng) -> (String, Result<Option<String>>) {
    let f = exppoly(rng, 3, 4);
    let g0 = exppoly_g0(rng, 3, 3);
    let inst = format!("f={f}; g0={g0}");
    let check = || -> Result<Option<String>> {
        let ctx = OperatorContext::new(g0.clone())?;
        let k = 10;
        let back = pommiez(&ctx, &mult_M(&f).taylor(k + 1))?;
        let image: Box<dyn Analytic<GaussRational>> = Box::new(mult_M(&f));
        let lazy = PommiezImage::new(&ctx, image).jet_at(&GaussRational::zero(), k)?;
        let want = f.taylor(k);
        Ok(jets_equal(&back, &want).or_else(|| jets_equal(&lazy, &want)))
    };
    (inst, check())
}
