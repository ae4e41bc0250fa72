//! Exact rationals and univariate rational functions over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `3`, `-2/3`, `+5` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::ZeroDenominator(s.to_string()));
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Dense polynomial in one variable, coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// `a*x + b`
    pub fn linear(a: Q, b: Q) -> Self {
        Poly::new(vec![b, a])
    }

    pub fn x() -> Self {
        Poly::linear(Q::one(), Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    fn lead(&self) -> Option<&Q> {
        self.0.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::constant(Q::one()), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dl = d.lead().expect("division by zero polynomial").clone();
        let dd = d.0.len() - 1;
        let mut rem = self.0.clone();
        let mut quot = vec![Q::zero(); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &dl;
            for (i, dc) in d.0.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&(Q::one() / l)),
            None => self.clone(),
        }
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::new(vec![]);
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", fmt_q(&a))?;
            }
            match i {
                0 => {}
                1 => write!(f, "m")?,
                _ => write!(f, "m^{i}")?,
            }
        }
        Ok(())
    }
}

/// Reduced quotient of polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator("rational function".into()));
        }
        let g = Poly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let l = d.lead().cloned().unwrap_or_else(Q::one);
        let inv = Q::one() / l;
        Ok(RatFunc {
            num: n.scale(&inv),
            den: d.scale(&inv),
        })
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(Q::one()),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn constant(c: Q) -> Self {
        RatFunc::poly(Poly::constant(c))
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// The value as a constant, when the function does not depend on the variable.
    pub fn as_constant(&self) -> Option<Q> {
        (self.num.degree().unwrap_or(0) == 0 && self.is_polynomial())
            .then(|| self.num.coeffs().first().cloned().unwrap_or_else(Q::zero) / &self.den.coeffs()[0])
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    /// Evaluates at `x`; a pole of the reduced function is an error.
    pub fn eval(&self, x: &Q) -> Result<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::ZeroDenominator(format!(
                "pole of ({}) / ({}) at m = {}",
                self.num,
                self.den,
                fmt_q(x)
            )));
        }
        Ok(self.num.eval(x) / d)
    }
}

/// Parses a formula in the variable `m`, e.g. `32(m+1)(2m+3)/((m+4)(m+6))`.
///
/// Juxtaposition multiplies, `^` takes nonnegative integer powers, and
/// `binom(x, j)` expands `x(x-1)...(x-j+1)/j!` for a constant integer `j`.
/// Names in `bindings` are replaced by the given integers.
pub fn parse_formula(src: &str, bindings: &[(&str, i64)]) -> Result<RatFunc> {
    let tokens = lex_formula(src)?;
    let mut p = FormulaParser {
        src,
        tokens,
        pos: 0,
        bindings,
    };
    let r = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex_formula(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            // single-letter variables so that `km` reads as `k*m`, except
            // for the `binom` function name
            if chars[i..].starts_with(&['b', 'i', 'n', 'o', 'm']) {
                out.push(Tok::Ident("binom".into()));
                i += 5;
            } else {
                out.push(Tok::Ident(c.to_string()));
                i += 1;
            }
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in formula `{src}`")));
        }
    }
    Ok(out)
}

struct FormulaParser<'a> {
    src: &'a str,
    tokens: Vec<Tok>,
    pos: usize,
    bindings: &'a [(&'a str, i64)],
}

impl FormulaParser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in formula `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_)) | Some(Tok::Sym('('))) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.const_int()?;
        let e = u32::try_from(e).map_err(|_| self.err("negative exponent"))?;
        Ok((0..e).fold(RatFunc::constant(Q::one()), |acc, _| acc.mul(&base)))
    }

    fn const_int(&mut self) -> Result<i64> {
        let v = self.atom()?;
        v.as_constant()
            .filter(|c| c.is_integer())
            .and_then(|c| num_traits::ToPrimitive::to_i64(&c.to_integer()))
            .ok_or_else(|| self.err("expected an integer constant"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFunc::constant(Q::from_integer(n)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Ident(name)) if name == "binom" => {
                self.pos += 1;
                if !self.eat('(') {
                    return Err(self.err("expected `(` after binom"));
                }
                let x = self.expr()?;
                if !self.eat(',') {
                    return Err(self.err("expected `,` in binom"));
                }
                let save = self.pos;
                let j = self.expr()?;
                let j = j
                    .as_constant()
                    .filter(|c| c.is_integer())
                    .and_then(|c| num_traits::ToPrimitive::to_i64(&c.to_integer()))
                    .ok_or_else(|| {
                        self.pos = save;
                        self.err("binom needs a constant integer second argument")
                    })?;
                if !self.eat(')') {
                    return Err(self.err("expected `)` after binom"));
                }
                Ok(binom_ratfunc(&x, j))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "m" {
                    return Ok(RatFunc::poly(Poly::x()));
                }
                self.bindings
                    .iter()
                    .find(|(b, _)| *b == name)
                    .map(|&(_, v)| RatFunc::constant(qi(v)))
                    .ok_or_else(|| Error::Parse(format!("unknown name `{name}` in formula `{}`", self.src)))
            }
            _ => Err(self.err("expected a number, name or `(`")),
        }
    }
}

/// `x(x-1)...(x-j+1)/j!`, zero for negative `j`.
fn binom_ratfunc(x: &RatFunc, j: i64) -> RatFunc {
    if j < 0 {
        return RatFunc::constant(Q::zero());
    }
    let mut acc = RatFunc::constant(Q::one());
    for i in 0..j {
        let f = x.sub(&RatFunc::constant(qi(i)));
        acc = acc.mul(&f);
        acc = acc.mul(&RatFunc::constant(q(1, i + 1)));
    }
    acc
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-2/3").unwrap(), q(-2, 3));
        assert_eq!(fmt_q(&q(4, 2)), "2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn cancellation() {
        // (m^2 - 1) / (m - 1) = m + 1
        let num = Poly::new(vec![qi(-1), qi(0), qi(1)]);
        let den = Poly::linear(qi(1), qi(-1));
        let r = RatFunc::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numer(), &Poly::linear(qi(1), qi(1)));
        assert_eq!(r.eval(&qi(1)).unwrap(), qi(2));
    }

    #[test]
    fn formulas_parse_and_evaluate() {
        let dim_c = parse_formula("32(m+1)(2m+3)(3m+4)/((m+4)(m+6))", &[]).unwrap();
        assert_eq!(dim_c.eval(&qi(8)).unwrap(), qi(912));
        let theta = parse_formula("(6km+10k-k^2)/(8m+8)", &[("k", 1)]).unwrap();
        assert_eq!(theta.eval(&qi(1)).unwrap(), q(15, 16));
        let vk = parse_formula("binom(6m+8, k) - binom(6m+8, k-2)", &[("k", 3)]).unwrap();
        assert_eq!(vk.eval(&qi(1)).unwrap(), qi(350));
        assert_eq!(parse_formula("-m^2 + 2", &[]).unwrap().eval(&qi(3)).unwrap(), qi(-7));
        assert!(parse_formula("(m+1", &[]).is_err());
        assert!(parse_formula("x", &[]).is_err());
    }

    #[test]
    fn pole_is_reported() {
        let r = RatFunc::new(Poly::constant(qi(1)), Poly::x()).unwrap();
        assert!(r.eval(&qi(0)).is_err());
    }
}
