//! Closed formulas in the series parameter: the Vogel dimension formula and
//! its lines, the magic-square dimension formulas, and the per-role
//! dimension and Casimir formulas of the series tables.

use num_traits::{One, Zero};
use serde::Deserialize;

use super::{SeriesCatalog, SeriesId};
use crate::chars::{CasimirNormalization, casimir};
use crate::error::{Error, Result};
use crate::rational::{Poly, Q, RatFunc, parse_formula, qi};
use crate::rootsys::{RootSystem, Weight};

/// `dim g = (b+c-1)(2b+c-4)(2c+b-4)/(bc)` with Vogel's `alpha = -2`.
pub fn vogel_dim_g(beta: &Q, gamma: &Q) -> Result<Q> {
    let den = beta * gamma;
    if den.is_zero() {
        return Err(Error::ZeroDenominator("Vogel dimension (beta * gamma = 0)".into()));
    }
    let one = Q::one();
    let four = qi(4);
    let two = qi(2);
    let num = (beta + gamma - &one) * (&two * beta + gamma - &four) * (&two * gamma + beta - &four);
    Ok(num / den)
}

/// The Vogel dimension along a line `beta(m), gamma(m)`, simplified as a
/// rational function of `m`.
pub fn vogel_line_dim(beta: &RatFunc, gamma: &RatFunc) -> Result<RatFunc> {
    let c = |n: i64| RatFunc::constant(qi(n));
    let f1 = beta.add(gamma).sub(&c(1));
    let f2 = c(2).mul(beta).add(gamma).sub(&c(4));
    let f3 = c(2).mul(gamma).add(beta).sub(&c(4));
    f1.mul(&f2).mul(&f3).div(&beta.mul(gamma))
}

/// `3(ab+4a+4b-4)(ab+2a+2b)/((a+4)(b+4))`
pub fn magic_dim(a: &Q, b: &Q) -> Result<Q> {
    let four = qi(4);
    let den = (a + &four) * (b + &four);
    if den.is_zero() {
        return Err(Error::ZeroDenominator("magic square dimension".into()));
    }
    let ab = a * b;
    let n1 = &ab + &four * a + &four * b - &four;
    let n2 = &ab + qi(2) * a + qi(2) * b;
    Ok(qi(3) * n1 * n2 / den)
}

/// `3(pq-20)(pq-2p-2q)/(pq)`
pub fn magic_dim_pq(p: &Q, q: &Q) -> Result<Q> {
    let pq = p * q;
    if pq.is_zero() {
        return Err(Error::ZeroDenominator("magic square dimension (pq = 0)".into()));
    }
    let n1 = &pq - qi(20);
    let n2 = &pq - qi(2) * p - qi(2) * q;
    Ok(qi(3) * n1 * n2 / pq)
}

/// `|roots| + rank`.
pub fn adjoint_dim(rs: &RootSystem) -> i128 {
    2 * rs.positive_roots().len() as i128 + rs.rank() as i128
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VogelPoint {
    pub m: String,
    pub algebra: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VogelLine {
    pub name: SeriesId,
    pub beta: String,
    pub gamma: String,
    /// Closed form the line's dimension must simplify to, when stated.
    #[serde(default)]
    pub simplifies_to: Option<String>,
    pub points: Vec<VogelPoint>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MagicPoint {
    pub a: i64,
    pub b: i64,
    pub algebra: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VogelData {
    pub format_version: u32,
    #[serde(rename = "line")]
    pub lines: Vec<VogelLine>,
    #[serde(rename = "magic")]
    pub magic: Vec<MagicPoint>,
}

impl VogelData {
    pub fn parse(src: &str) -> Result<Self> {
        let d: VogelData = toml::from_str(src).map_err(|e| Error::Parse(format!("Vogel data: {e}")))?;
        if d.format_version != super::FORMAT_VERSION {
            return Err(Error::Parse("unsupported Vogel data format".into()));
        }
        Ok(d)
    }

    pub fn line(&self, s: SeriesId) -> Result<&VogelLine> {
        self.lines
            .iter()
            .find(|l| l.name == s)
            .ok_or_else(|| Error::Precondition(format!("no Vogel line {s}")))
    }
}

impl VogelLine {
    pub fn beta_gamma(&self) -> Result<(RatFunc, RatFunc)> {
        Ok((parse_formula(&self.beta, &[])?, parse_formula(&self.gamma, &[])?))
    }

    pub fn dim_function(&self) -> Result<RatFunc> {
        let (b, g) = self.beta_gamma()?;
        vogel_line_dim(&b, &g)
    }
}

/// Substitutes `{k}` in a role template.
fn instantiate(template: &str, k: i64) -> String {
    template.replace("{k}", &k.to_string())
}

/// Dimension and Casimir formulas attached to one role.
#[derive(Clone, Debug)]
pub struct RoleFormula {
    pub role: String,
    pub dim: Option<RatFunc>,
    pub casimir: Option<RatFunc>,
    pub printed_dim: Option<RatFunc>,
    pub anchor: String,
}

/// Every role formula of a series, with `k` templates expanded.
pub fn role_formulas(cat: &SeriesCatalog, s: SeriesId) -> Result<Vec<RoleFormula>> {
    let mut out = Vec::new();
    for f in &cat.file(s)?.formulas {
        let ks: Vec<Option<i64>> = if f.k.is_empty() {
            vec![None]
        } else {
            f.k.iter().copied().map(Some).collect()
        };
        for k in ks {
            let bind: Vec<(&str, i64)> = k.map(|k| vec![("k", k)]).unwrap_or_default();
            let parse = |src: &Option<String>| src.as_ref().map(|s| parse_formula(s, &bind)).transpose();
            out.push(RoleFormula {
                role: k.map_or_else(|| f.role.clone(), |k| instantiate(&f.role, k)),
                dim: parse(&f.dim)?,
                casimir: parse(&f.casimir)?,
                printed_dim: parse(&f.printed_dim)?,
                anchor: f.anchor.clone(),
            });
        }
    }
    Ok(out)
}

fn find_formula(cat: &SeriesCatalog, s: SeriesId, role: &str) -> Result<RoleFormula> {
    role_formulas(cat, s)?
        .into_iter()
        .find(|f| f.role == role)
        .ok_or_else(|| Error::UnknownRole {
            role: role.to_string(),
            algebra: format!("{s} formulas"),
        })
}

/// Value of the tabled dimension formula of `role` at `m`.
pub fn series_dimension(cat: &SeriesCatalog, s: SeriesId, role: &str, m: &Q) -> Result<Q> {
    let f = find_formula(cat, s, role)?;
    f.dim
        .ok_or_else(|| Error::Precondition(format!("no dimension formula for {role}")))?
        .eval(m)
}

/// Value of the tabled Casimir formula of `role` at `m` (Killing normalization).
pub fn series_casimir(cat: &SeriesCatalog, s: SeriesId, role: &str, m: &Q) -> Result<Q> {
    let f = find_formula(cat, s, role)?;
    f.casimir
        .ok_or_else(|| Error::Precondition(format!("no Casimir formula for {role}")))?
        .eval(m)
}

/// Killing-normalized Casimir eigenvalues of a list of weights.
pub fn killing_casimirs(rs: &RootSystem, ws: impl IntoIterator<Item = Weight>) -> Result<Vec<Q>> {
    ws.into_iter()
        .map(|w| casimir(rs, &w, CasimirNormalization::Killing))
        .collect()
}

/// Fits `theta * den(m) = a m + b` over the points and reports whether the
/// fitted `a, b` are integers and reproduce every point.
pub fn fits_integer_linear(points: &[(Q, Q)], den: &RatFunc) -> Result<Option<(Q, Q)>> {
    let vals: Vec<(Q, Q)> = points
        .iter()
        .map(|(m, th)| Ok((m.clone(), th * den.eval(m)?)))
        .collect::<Result<_>>()?;
    let [(m0, y0), (m1, y1), ..] = vals.as_slice() else {
        return Ok(None);
    };
    if m0 == m1 {
        return Ok(None);
    }
    let a = (y1 - y0) / (m1 - m0);
    let b = y0 - &a * m0;
    let ok = a.is_integer() && b.is_integer() && vals.iter().all(|(m, y)| &(&a * m + &b) == y);
    Ok(ok.then_some((a, b)))
}

/// `m` as a rational function, for callers assembling formulas by hand.
pub fn m_var() -> RatFunc {
    RatFunc::poly(Poly::x())
}
