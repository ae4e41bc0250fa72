//! Truncated power series in `t` whose coefficients are integer combinations
//! of dominant weights multiplied by Cartan product (`V_a V_b = V_{a+b}`),
//! and a small expression language over them.
//!
//! Grammar (juxtaposition multiplies; `*` after a role name means dual):
//!
//! ```text
//! expr   := ['-'|'+'] term (('+'|'-') term)*
//! term   := power (['/'] power)*
//! power  := atom ['^' int]
//! atom   := int | 't' | role | '[' weight ']' | '(' expr ')'
//! role   := name ['^(' int ')'] ['*']
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::chars::Decomposition;
use crate::error::{Error, Result};
use crate::rootsys::Weight;

/// Reference to a named role: `name^(power)` with an optional dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleRef {
    pub name: String,
    pub power: u32,
    pub dual: bool,
}

impl fmt::Display for RoleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if self.power != 1 {
            write!(f, "^({})", self.power)?;
        }
        if self.dual {
            write!(f, "*")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i128),
    /// `t^k`
    T(u32),
    Role(RoleRef),
    Literal(Weight),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let tokens = lex(src)?;
        let mut p = Parser { src, tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Every role referenced by the expression.
    pub fn roles(&self) -> Vec<&RoleRef> {
        let mut out = Vec::new();
        self.collect_roles(&mut out);
        out
    }

    fn collect_roles<'a>(&'a self, out: &mut Vec<&'a RoleRef>) {
        match self {
            Expr::Role(r) => out.push(r),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_roles(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_roles(out);
                b.collect_roles(out);
            }
            Expr::Int(_) | Expr::T(_) | Expr::Literal(_) => {}
        }
    }

    /// Evaluates to a series truncated above `max_deg`; `resolve` supplies
    /// the weight combination of each role reference.
    pub fn eval(
        &self,
        rank: usize,
        max_deg: usize,
        resolve: &mut dyn FnMut(&RoleRef) -> Result<Vec<(Weight, i128)>>,
    ) -> Result<WeightSeries> {
        Ok(match self {
            Expr::Int(n) => WeightSeries::monomial(rank, max_deg, 0, Weight::zero(rank), *n),
            Expr::T(k) => WeightSeries::monomial(rank, max_deg, *k as usize, Weight::zero(rank), 1),
            Expr::Literal(w) => {
                if w.len() != rank {
                    return Err(Error::RankMismatch {
                        weight: w.to_string(),
                        got: w.len(),
                        expected: rank,
                    });
                }
                WeightSeries::monomial(rank, max_deg, 0, w.clone(), 1)
            }
            Expr::Role(r) => {
                let mut s = WeightSeries::zero(rank, max_deg);
                for (w, c) in resolve(r)? {
                    s.add_term(0, w, c)?;
                }
                s
            }
            Expr::Neg(a) => a.eval(rank, max_deg, resolve)?.scaled(-1)?,
            Expr::Add(a, b) => a.eval(rank, max_deg, resolve)?.add(&b.eval(rank, max_deg, resolve)?)?,
            Expr::Sub(a, b) => a
                .eval(rank, max_deg, resolve)?
                .add(&b.eval(rank, max_deg, resolve)?.scaled(-1)?)?,
            Expr::Mul(a, b) => a.eval(rank, max_deg, resolve)?.mul(&b.eval(rank, max_deg, resolve)?)?,
            Expr::Div(a, b) => {
                let d = b.eval(rank, max_deg, resolve)?;
                a.eval(rank, max_deg, resolve)?.mul(&d.inverse()?)?
            }
            Expr::Pow(a, e) => {
                let base = a.eval(rank, max_deg, resolve)?;
                let mut acc = WeightSeries::one(rank, max_deg);
                for _ in 0..*e {
                    acc = acc.mul(&base)?;
                }
                acc
            }
        })
    }
}

/// `sum_d t^d sum_w c_{d,w} V_w`, truncated above `max_deg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSeries {
    rank: usize,
    coeffs: Vec<BTreeMap<Weight, i128>>,
}

fn overflow() -> Error {
    Error::Overflow("weight series coefficient".into())
}

impl WeightSeries {
    pub fn zero(rank: usize, max_deg: usize) -> Self {
        WeightSeries {
            rank,
            coeffs: vec![BTreeMap::new(); max_deg + 1],
        }
    }

    pub fn one(rank: usize, max_deg: usize) -> Self {
        Self::monomial(rank, max_deg, 0, Weight::zero(rank), 1)
    }

    pub fn monomial(rank: usize, max_deg: usize, deg: usize, w: Weight, c: i128) -> Self {
        let mut s = Self::zero(rank, max_deg);
        if deg <= max_deg && c != 0 {
            s.coeffs[deg].insert(w, c);
        }
        s
    }

    pub fn max_deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coefficient(&self, deg: usize) -> &BTreeMap<Weight, i128> {
        &self.coeffs[deg]
    }

    fn add_term(&mut self, deg: usize, w: Weight, c: i128) -> Result<()> {
        if deg > self.max_deg() || c == 0 {
            return Ok(());
        }
        let e = self.coeffs[deg].entry(w.clone()).or_insert(0);
        *e = e.checked_add(c).ok_or_else(overflow)?;
        if *e == 0 {
            self.coeffs[deg].remove(&w);
        }
        Ok(())
    }

    pub fn add(&self, o: &WeightSeries) -> Result<WeightSeries> {
        let mut out = self.clone();
        for (d, terms) in o.coeffs.iter().enumerate() {
            for (w, &c) in terms {
                out.add_term(d, w.clone(), c)?;
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, k: i128) -> Result<WeightSeries> {
        let mut out = Self::zero(self.rank, self.max_deg());
        for (d, terms) in self.coeffs.iter().enumerate() {
            for (w, &c) in terms {
                out.add_term(d, w.clone(), c.checked_mul(k).ok_or_else(overflow)?)?;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &WeightSeries) -> Result<WeightSeries> {
        let max_deg = self.max_deg().min(o.max_deg());
        let mut out = Self::zero(self.rank, max_deg);
        for (d1, t1) in self.coeffs.iter().enumerate().take(max_deg + 1) {
            for (d2, t2) in o.coeffs.iter().enumerate().take(max_deg + 1 - d1) {
                for (w1, &c1) in t1 {
                    for (w2, &c2) in t2 {
                        out.add_term(d1 + d2, w1 + w2, c1.checked_mul(c2).ok_or_else(overflow)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be the trivial weight
    /// with coefficient 1.
    pub fn inverse(&self) -> Result<WeightSeries> {
        let one = Weight::zero(self.rank);
        let c0 = &self.coeffs[0];
        if c0.len() != 1 || c0.get(&one) != Some(&1) {
            return Err(Error::Precondition(
                "series inverse needs constant term 1".into(),
            ));
        }
        let n = self.max_deg();
        let mut inv = Self::one(self.rank, n);
        // inv_d = -sum_{j=1..d} s_j inv_{d-j}
        for d in 1..=n {
            let mut acc: BTreeMap<Weight, i128> = BTreeMap::new();
            for j in 1..=d {
                for (w1, &c1) in &self.coeffs[j] {
                    for (w2, &c2) in &inv.coeffs[d - j] {
                        let e = acc.entry(w1 + w2).or_insert(0);
                        *e = e
                            .checked_sub(c1.checked_mul(c2).ok_or_else(overflow)?)
                            .ok_or_else(overflow)?;
                    }
                }
            }
            acc.retain(|_, c| *c != 0);
            inv.coeffs[d] = acc;
        }
        Ok(inv)
    }

    /// Sums every term over the images of its weight under `perms` (which
    /// must form a group), counting each distinct image once.
    pub fn orbit_summed(&self, perms: &[Vec<usize>]) -> Result<WeightSeries> {
        let mut out = Self::zero(self.rank, self.max_deg());
        for (d, terms) in self.coeffs.iter().enumerate() {
            for (w, &c) in terms {
                for img in orbit(w, perms) {
                    out.add_term(d, img, c)?;
                }
            }
        }
        Ok(out)
    }

    /// The degree-`d` coefficient as a (possibly virtual) decomposition.
    pub fn decomposition(&self, d: usize) -> Result<Decomposition> {
        Decomposition::from_terms(self.rank, self.coeffs[d].iter().map(|(w, &c)| (w.clone(), c)))
    }
}

/// Distinct images of `w` under a permutation group given by all its elements.
pub fn orbit(w: &Weight, perms: &[Vec<usize>]) -> Vec<Weight> {
    let mut out: Vec<Weight> = perms.iter().map(|p| w.permuted(p)).collect();
    if out.is_empty() {
        out.push(w.clone());
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i128),
    Name(String),
    Weight(Weight),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
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
            out.push(Tok::Int(
                s.parse().map_err(|_| Error::Parse(format!("bad integer in `{src}`")))?,
            ));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
        } else if c == '[' {
            let start = i;
            while i < chars.len() && chars[i] != ']' {
                i += 1;
            }
            if i == chars.len() {
                return Err(Error::Parse(format!("unclosed `[` in `{src}`")));
            }
            i += 1;
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Weight(s.parse()?));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} of `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + k)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_) | Tok::Name(_) | Tok::Weight(_) | Tok::Sym('('))
        )
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.power()?;
        loop {
            if self.eat('/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.power()?));
            } else if self.starts_atom() {
                acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Sym('^')) && matches!(self.peek_at(1), Some(Tok::Int(_))) {
            self.pos += 1;
            let Some(Tok::Int(e)) = self.peek().cloned() else {
                unreachable!()
            };
            self.pos += 1;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(match base {
                Expr::T(1) => Expr::T(e),
                b => Expr::Pow(Box::new(b), e),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Weight(w)) => {
                self.pos += 1;
                Ok(Expr::Literal(w))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                if name == "t" {
                    return Ok(Expr::T(1));
                }
                let mut power = 1;
                if self.peek() == Some(&Tok::Sym('^')) && self.peek_at(1) == Some(&Tok::Sym('(')) {
                    self.pos += 2;
                    let Some(Tok::Int(k)) = self.peek().cloned() else {
                        return Err(self.err("expected a Cartan power"));
                    };
                    self.pos += 1;
                    if !self.eat(')') {
                        return Err(self.err("expected `)` after Cartan power"));
                    }
                    power = u32::try_from(k).map_err(|_| self.err("Cartan power too large"))?;
                }
                let dual = self.eat('*');
                Ok(Expr::Role(RoleRef { name, power, dual }))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn resolver(r: &RoleRef) -> Result<Vec<(Weight, i128)>> {
        let base = match r.name.as_str() {
            "V" => w("[1]"),
            "g" => w("[2]"),
            _ => {
                return Err(Error::UnknownRole {
                    role: r.name.clone(),
                    algebra: "A1".into(),
                })
            }
        };
        Ok(vec![(base.scale(r.power as i32), 1)])
    }

    #[test]
    fn geometric_series_counts_multisets() {
        // 1/((1 - tV)(1 - t^2)) over A1 at degree 4: V^4 + V^2 + 1
        let e = Expr::parse("1/((1 - t V)(1 - t^2))").unwrap();
        let s = e.eval(1, 4, &mut resolver).unwrap();
        let d4 = s.coefficient(4);
        assert_eq!(d4.len(), 3);
        assert_eq!(d4[&w("[4]")], 1);
        assert_eq!(d4[&w("[2]")], 1);
        assert_eq!(d4[&w("[0]")], 1);
    }

    #[test]
    fn numerator_corrections_cancel() {
        let e = Expr::parse("(1 - t^2 V^(2)) / (1 - t V)").unwrap();
        let s = e.eval(1, 3, &mut resolver).unwrap();
        // t^2 [2] (sum t^j [j]) cancels every term from degree 2 on
        assert_eq!(s.coefficient(1)[&w("[1]")], 1);
        assert!(s.coefficient(2).is_empty());
        assert!(s.coefficient(3).is_empty());
    }

    #[test]
    fn juxtaposition_and_literals() {
        let e = Expr::parse("2 V g + [3] - g").unwrap();
        let s = e.eval(1, 0, &mut resolver).unwrap();
        let d = s.decomposition(0).unwrap();
        assert_eq!(d.get(&w("[3]")), 3);
        assert_eq!(d.get(&w("[2]")), -1);
    }

    #[test]
    fn unknown_role_is_an_error() {
        let e = Expr::parse("V + Q").unwrap();
        assert!(matches!(e.eval(1, 0, &mut resolver), Err(Error::UnknownRole { .. })));
    }

    #[test]
    fn role_syntax() {
        let e = Expr::parse("V2^(2)* g").unwrap();
        let roles = e.roles();
        assert_eq!(roles[0].to_string(), "V2^(2)*");
        assert_eq!(roles[1].name, "g");
        assert!(Expr::parse("(V").is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let e = Expr::parse("1 - t V + t^2 g").unwrap();
        let s = e.eval(1, 5, &mut resolver).unwrap();
        let p = s.mul(&s.inverse().unwrap()).unwrap();
        assert_eq!(p, WeightSeries::one(1, 5));
    }
}
