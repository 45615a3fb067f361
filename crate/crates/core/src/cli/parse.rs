//! Recursive-descent parser for exponential-polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' nat)?
//! atom   := number 'i'? | 'i' | 'z' | 'exp' '(' expr ')' | 'ln' '(' expr ')' | '(' expr ')'
//! number := digits ('.' digits)? ('/' digits)?
//! ```
//!
//! The argument of `exp` must reduce to `c*z` with `c` exact. `ln` is only
//! available when parsing numerically.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::funcspace::ExpPoly;
use crate::scalar::{BigComplex, GaussRational, Poly, Scalar};

const MAX_POWER: u32 = 64;

trait Coeff: Scalar {
    fn from_gauss(q: &GaussRational, prec: u32) -> Self;
    fn ln(&self) -> Option<Self>;
}

impl Coeff for GaussRational {
    fn from_gauss(q: &GaussRational, _: u32) -> Self {
        q.clone()
    }
    fn ln(&self) -> Option<Self> {
        None
    }
}

impl Coeff for BigComplex {
    fn from_gauss(q: &GaussRational, prec: u32) -> Self {
        BigComplex::from_gauss(q, prec)
    }
    fn ln(&self) -> Option<Self> {
        Some(BigComplex::ln(self))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    prec: u32,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii letters")
    }

    fn expr<C: Coeff>(&mut self) -> Result<ExpPoly<C>> {
        let mut acc = self.term::<C>()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<C: Coeff>(&mut self) -> Result<ExpPoly<C>> {
        let mut acc = self.unary::<C>()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary<C: Coeff>(&mut self) -> Result<ExpPoly<C>> {
        if self.eat(b'-') {
            return Ok(self.unary::<C>()?.neg());
        }
        self.factor()
    }

    fn factor<C: Coeff>(&mut self) -> Result<ExpPoly<C>> {
        let base = self.atom::<C>()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let d = self.digits();
        let n: u32 = match d.parse() {
            Ok(n) if n <= MAX_POWER => n,
            Ok(_) => {
                self.pos = at;
                return self.err(format!("exponent above {MAX_POWER}"));
            }
            Err(_) => {
                self.pos = at;
                return self.err("expected a natural number after '^'");
            }
        };
        let one = ExpPoly::poly(Poly::constant(C::from_gauss(&GaussRational::one(), self.prec)));
        Ok((0..n).fold(one, |acc, _| acc.mul(&base)))
    }

    fn constant<C: Coeff>(&self, q: &GaussRational) -> ExpPoly<C> {
        ExpPoly::poly(Poly::constant(C::from_gauss(q, self.prec)))
    }

    fn number(&mut self) -> Result<GaussRational> {
        let whole = self.digits();
        let mut value = Rational::from(Integer::from_str_radix(whole, 10).expect("digits"));
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let frac = self.digits();
            if frac.is_empty() {
                return self.err("expected digits after '.'");
            }
            let num = Integer::from_str_radix(frac, 10).expect("digits");
            let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
            value += Rational::from((num, den));
        }
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let den = self.digits();
            if den.is_empty() {
                return self.err("expected a denominator after '/'");
            }
            let den = Integer::from_str_radix(den, 10).expect("digits");
            if den == 0 {
                return self.err("zero denominator");
            }
            value /= Rational::from(den);
        }
        if self.src.get(self.pos) == Some(&b'i') && !self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
            return Ok(GaussRational::new(0, value));
        }
        Ok(GaussRational::from_rational(value))
    }

    fn atom<C: Coeff>(&mut self) -> Result<ExpPoly<C>> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let q = self.number()?;
                Ok(self.constant(&q))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                match self.ident() {
                    "z" => Ok(ExpPoly::poly(Poly::monomial(
                        C::from_gauss(&GaussRational::one(), self.prec),
                        1,
                    ))),
                    "i" => Ok(self.constant(&GaussRational::i())),
                    "exp" => {
                        self.expect(b'(')?;
                        let inner_at = self.pos;
                        let inner = self.expr::<GaussRational>()?;
                        self.expect(b')')?;
                        let lambda = linear_coefficient(&inner).ok_or_else(|| {
                            let text = String::from_utf8_lossy(&self.src[inner_at..self.pos - 1]);
                            Error::NonlinearExponent(text.trim().to_string())
                        })?;
                        Ok(ExpPoly::term(
                            lambda,
                            Poly::constant(C::from_gauss(&GaussRational::one(), self.prec)),
                        ))
                    }
                    "ln" => {
                        self.expect(b'(')?;
                        let inner = self.expr::<C>()?;
                        self.expect(b')')?;
                        let arg = match inner.as_poly() {
                            Some(p) if p.degree().unwrap_or(0) == 0 => {
                                p.coeff_or_zero(0, &C::from_gauss(&GaussRational::zero(), self.prec))
                            }
                            _ => {
                                self.pos = start;
                                return self.err("ln takes a constant argument");
                            }
                        };
                        match arg.ln() {
                            Some(v) if !arg.is_zero() => Ok(ExpPoly::poly(Poly::constant(v))),
                            _ => {
                                self.pos = start;
                                self.err("ln needs a nonzero argument and numeric parsing")
                            }
                        }
                    }
                    other => {
                        self.pos = start;
                        self.err(format!("unknown identifier '{other}'"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
        }
    }
}

/// `c` when `e = c*z`.
fn linear_coefficient(e: &ExpPoly) -> Option<GaussRational> {
    let p = e.as_poly()?;
    match p.coeffs() {
        [] => Some(GaussRational::zero()),
        [c0, c1] if c0.is_zero() => Some(c1.clone()),
        _ => None,
    }
}

fn run<C: Coeff>(text: &str, prec: u32) -> Result<ExpPoly<C>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        prec,
    };
    let e = p.expr::<C>()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Exact parse.
pub fn parse_expr(text: &str) -> Result<ExpPoly> {
    run::<GaussRational>(text, 0)
}

/// Parse with floating-point coefficients, allowing `ln(..)`.
pub fn parse_expr_numeric(text: &str, prec: u32) -> Result<ExpPoly<BigComplex>> {
    run::<BigComplex>(text, prec)
}

/// A Gaussian-rational constant written in the expression grammar.
pub fn parse_scalar(text: &str) -> Result<GaussRational> {
    let e = parse_expr(text)?;
    match e.as_poly() {
        Some(p) if p.degree().unwrap_or(0) == 0 => Ok(p.coeff_or_zero(0, &GaussRational::zero())),
        _ => Err(Error::Syntax {
            pos: 0,
            msg: format!("expected a constant, got {text:?}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    #[test]
    fn spec_examples() {
        let e = parse_expr("(1+2*z)*exp(3*z) + z^2").unwrap();
        assert_eq!(e.num_terms(), 2);
        assert_eq!(e.terms()[&int(3)], Poly::from_ints(&[1, 2]));
        assert_eq!(e.terms()[&int(0)], Poly::from_ints(&[0, 0, 1]));
        assert!(parse_expr("exp(z) - exp(z)").unwrap().is_zero());
        assert_eq!(parse_expr("exp(z^2)").unwrap_err().kind(), "NonlinearExponent");
    }

    #[test]
    fn literals() {
        assert_eq!(parse_scalar("3/4").unwrap(), GaussRational::from_frac(3, 4));
        assert_eq!(parse_scalar("0.25").unwrap(), GaussRational::from_frac(1, 4));
        assert_eq!(parse_scalar("2i").unwrap(), GaussRational::new(0, 2));
        assert_eq!(parse_scalar("(1/2-i)").unwrap(), GaussRational::new(Rational::from((1, 2)), -1));
        assert_eq!(parse_expr("exp(-z)").unwrap(), ExpPoly::exp(int(-1)));
        assert_eq!(parse_expr("exp(z*2)").unwrap(), ExpPoly::exp(int(2)));
        assert_eq!(parse_expr("exp(0*z)").unwrap(), ExpPoly::one());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("1 + * z").unwrap_err() {
            Error::Syntax { pos, .. } => assert_eq!(pos, 4),
            e => panic!("{e:?}"),
        }
        assert_eq!(parse_expr("exp(1)").unwrap_err().kind(), "NonlinearExponent");
        assert_eq!(parse_expr("exp(z)*exp(z^3)").unwrap_err().kind(), "NonlinearExponent");
        assert!(parse_expr("foo").is_err());
        assert!(parse_expr("1/0").is_err());
        assert!(parse_expr("(z").is_err());
        assert!(parse_expr("z)").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("ln(2)").is_err());
    }

    #[test]
    fn numeric_mode() {
        let f = parse_expr_numeric("z - ln(2)", 128).unwrap();
        let v = f.eval_big(&BigComplex::from_int(2, 128).ln());
        assert!(v.abs_f64() < 1e-30);
    }

    fn arb_gauss() -> impl Strategy<Value = GaussRational> {
        (-9i64..10, 1i64..5, -9i64..10, 1i64..5).prop_map(|(a, b, c, d)| {
            GaussRational::new(Rational::from((a, b)), Rational::from((c, d)))
        })
    }

    fn arb_exppoly() -> impl Strategy<Value = ExpPoly> {
        prop::collection::vec((arb_gauss(), prop::collection::vec(arb_gauss(), 0..4)), 0..4)
            .prop_map(|terms| ExpPoly::from_terms(terms.into_iter().map(|(l, c)| (l, Poly::new(c)))))
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_exppoly()) {
            let text = f.to_string();
            let back = parse_expr(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(back, f);
        }
    }
}
