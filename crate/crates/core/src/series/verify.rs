//! Verification of the series tables against the engines: tabled identities,
//! dimension and Casimir formulas, generating functions, the Vogel lines and
//! the magic square.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::Instant;

use rayon::prelude::*;

use super::expr::Expr;
use super::formulas::{adjoint_dim, fits_integer_linear, magic_dim, magic_dim_pq, role_formulas, vogel_line_dim};
use super::gf::{self, base_module, direct_sym_series, expand_gf};
use super::{GfSpec, IdentitySpec, Mode, SeriesCatalog, SeriesEntry, SeriesId};
use crate::chars::{CasimirNormalization, Decomposition, Limits, casimir, decompose_character, tensor_decompositions};
use crate::diagram::neighbors;
use crate::error::{Error, Result};
use crate::plethysm::{Partition, Plethysm};
use crate::rational::{Q, RatFunc, fmt_q, parse_formula, parse_q, qi};
use crate::report::{CheckRecord, Report, Status};
use crate::rootsys::{RootSystem, Weight};

/// Size guards for a verification run.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub limits: Limits,
    /// Fixed plethysm degree cap; `None` applies the default policy.
    pub max_degree: Option<u32>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            limits: Limits::default(),
            max_degree: None,
        }
    }
}

impl Budget {
    /// Largest plethysm degree attempted on a module of dimension `dim`:
    /// 4 from dimension 56 on, 6 below.
    pub fn degree_cap(&self, dim: i128) -> u32 {
        self.max_degree.unwrap_or(if dim >= 56 { 4 } else { 6 })
    }
}

/// Left side of an identity.
#[derive(Clone, Debug)]
pub enum Lhs {
    Ext(u32, Expr),
    Sym(u32, Expr),
    Schur(Partition, Expr),
    Tensor(Expr, Expr),
    Module(Expr),
}

impl Lhs {
    /// `ext3(X)`, `sym2(X)`, `schur211(X)`, `tensor(X, Y)` or a plain module
    /// expression. Schur shapes are written as digit strings.
    pub fn parse(src: &str) -> Result<Lhs> {
        let s = src.trim();
        let Some(open) = s.find('(') else {
            return Ok(Lhs::Module(Expr::parse(s)?));
        };
        let head = &s[..open];
        let inner = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced `{src}`")))?;
        let digits = |p: &str| -> Result<u32> {
            p.parse()
                .map_err(|_| Error::Parse(format!("bad degree in `{src}`")))
        };
        if let Some(k) = head.strip_prefix("ext") {
            return Ok(Lhs::Ext(digits(k)?, Expr::parse(inner)?));
        }
        if let Some(k) = head.strip_prefix("sym") {
            return Ok(Lhs::Sym(digits(k)?, Expr::parse(inner)?));
        }
        if let Some(shape) = head.strip_prefix("schur") {
            let parts = shape
                .chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad shape in `{src}`"))))
                .collect::<Result<Vec<u32>>>()?;
            return Ok(Lhs::Schur(Partition::new(parts)?, Expr::parse(inner)?));
        }
        if head == "tensor" {
            let (a, b) = split_top_level(inner).ok_or_else(|| Error::Parse(format!("`{src}` needs two factors")))?;
            return Ok(Lhs::Tensor(Expr::parse(a)?, Expr::parse(b)?));
        }
        if head.trim().is_empty() {
            return Ok(Lhs::Module(Expr::parse(s)?));
        }
        Err(Error::Parse(format!("unknown operation `{head}` in `{src}`")))
    }

    /// Plethysm degree, or 2 for a tensor product.
    pub fn degree(&self) -> u32 {
        match self {
            Lhs::Ext(k, _) | Lhs::Sym(k, _) => *k,
            Lhs::Schur(p, _) => p.size(),
            Lhs::Tensor(..) => 2,
            Lhs::Module(_) => 1,
        }
    }
}

fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Evaluates a module expression of degree zero in the column's roles.
pub fn module(entry: &SeriesEntry, e: &Expr) -> Result<Decomposition> {
    let mut resolve = |r: &super::expr::RoleRef| entry.resolve(r, false);
    e.eval(entry.rank(), 0, &mut resolve)?.decomposition(0)
}

/// Killing-normalized Casimir labels of every term.
pub fn casimir_labels(rs: &RootSystem, d: &Decomposition) -> Result<Vec<String>> {
    d.terms()
        .keys()
        .rev()
        .map(|w| Ok(format!("{w}:{}", fmt_q(&casimir(rs, w, CasimirNormalization::Killing)?))))
        .collect()
}

/// Evaluates the left side, or `None` when the budget rules it out.
pub fn evaluate_lhs(entry: &SeriesEntry, lhs: &Lhs, budget: &Budget) -> Result<Option<Decomposition>> {
    let rs = &entry.root_system;
    let lim = budget.limits;
    let pleth = |k: u32, x: &Expr, f: &dyn Fn(&mut Plethysm) -> Result<crate::chars::FormalCharacter>| {
        let base = module(entry, x)?;
        if k > budget.degree_cap(base.dim(rs)?) {
            return Ok(None);
        }
        let mut l = lim;
        l.max_plethysm_degree = l.max_plethysm_degree.max(k as usize);
        let mut p = Plethysm::new(rs, base.character(rs, &l)?, l);
        Ok(Some(decompose_character(rs, &f(&mut p)?, &l)?))
    };
    match lhs {
        Lhs::Ext(k, x) => pleth(*k, x, &|p| p.ext(*k)),
        Lhs::Sym(k, x) => pleth(*k, x, &|p| p.sym(*k)),
        Lhs::Schur(sh, x) => pleth(sh.size(), x, &|p| p.schur(sh)),
        Lhs::Tensor(a, b) => Ok(Some(tensor_decompositions(rs, &module(entry, a)?, &module(entry, b)?, &lim)?)),
        Lhs::Module(x) => Ok(Some(module(entry, x)?)),
    }
}

fn record_id(s: SeriesId, entry: &SeriesEntry, check: &str) -> String {
    format!("{s}/{}/{check}", entry.label)
}

fn failed(id: String, anchor: &str, e: Error) -> CheckRecord {
    CheckRecord::from_error(id, anchor, e)
}

/// Checks an identity in one column. A corrected misprint yields a second
/// record, `{id}/as-printed`, which is never a failure.
pub fn verify_identity(entry: &SeriesEntry, spec: &IdentitySpec, budget: &Budget) -> Vec<CheckRecord> {
    let id = record_id(entry.series, entry, &spec.id);
    let start = Instant::now();
    let mut recs = match identity_records(entry, spec, budget, &id) {
        Ok(r) => r,
        Err(e) => vec![failed(id, &spec.anchor, e)],
    };
    let millis = start.elapsed().as_millis();
    for r in &mut recs {
        r.millis = millis;
    }
    recs
}

fn compare(entry: &SeriesEntry, mode: Mode, left: &Decomposition, rhs: &Decomposition, id: &str, anchor: &str) -> Result<CheckRecord> {
    let rs = &entry.root_system;
    let ok = match mode {
        Mode::Exact => left == rhs,
        Mode::Contains => left.contains(rhs),
    };
    let mut rec = CheckRecord::verdict(id, anchor, ok).sides(left, rhs);
    rec.dims = Some((left.dim(rs)?, rhs.dim(rs)?));
    rec.casimirs = casimir_labels(rs, rhs)?;
    if !ok {
        rec = rec.with_detail(format!("left - right = {}", left.minus(rhs)));
    }
    Ok(rec)
}

fn identity_records(entry: &SeriesEntry, spec: &IdentitySpec, budget: &Budget, id: &str) -> Result<Vec<CheckRecord>> {
    let lhs = Lhs::parse(&spec.lhs)?;
    let (rhs_src, printed_src) = match spec.column_rhs.get(&entry.label) {
        Some(r) => (r, Some(&spec.rhs)),
        None => (&spec.rhs, spec.printed.as_ref()),
    };
    let rhs = module(entry, &Expr::parse(rhs_src)?)?;
    let Some(left) = evaluate_lhs(entry, &lhs, budget)? else {
        return Ok(vec![CheckRecord::new(id, &spec.anchor, Status::SkippedBudget)
            .sides(&spec.lhs, &rhs)
            .with_detail(format!("degree {} above the budget", lhs.degree()))]);
    };
    let mut out = vec![compare(entry, spec.mode, &left, &rhs, id, &spec.anchor)?];
    if let Some(p) = printed_src {
        let printed = module(entry, &Expr::parse(p)?)?;
        let mut rec = compare(entry, spec.mode, &left, &printed, &format!("{id}/as-printed"), &spec.anchor)?;
        if rec.status == Status::Diff {
            rec.status = Status::ExpectedOpenQuestion;
            let d = rec.detail.take().unwrap_or_default();
            rec = rec.with_detail(format!("printed right side `{p}`; {d}; corrected to `{rhs_src}`"));
        }
        out.push(rec);
    }
    Ok(out)
}

/// Checks a generating function in one column, one record per degree.
pub fn verify_gf(entry: &SeriesEntry, spec: &GfSpec, budget: &Budget) -> Vec<CheckRecord> {
    let base_id = record_id(entry.series, entry, &spec.id);
    match gf_records(entry, spec, budget, &base_id) {
        Ok(r) => r,
        Err(e) => vec![failed(base_id, &spec.anchor, e)],
    }
}

fn gf_records(entry: &SeriesEntry, spec: &GfSpec, budget: &Budget, base_id: &str) -> Result<Vec<CheckRecord>> {
    let rs = &entry.root_system;
    let deg = *spec
        .degrees
        .get(&entry.label)
        .or_else(|| spec.degrees.get("default"))
        .ok_or_else(|| Error::Parse(format!("generating function {} has no degree for {}", spec.id, entry.label)))?
        as usize;
    let base = base_module(spec, entry)?;
    let cap = (budget.degree_cap(base.dim(rs)?) as usize).min(deg);
    let start = Instant::now();
    let expanded = expand_gf(spec, entry, deg)?;
    let direct = direct_sym_series(rs, &base, cap, &budget.limits)?;
    let per = start.elapsed().as_millis() / (cap as u128 + 1);
    let mut out = Vec::new();
    for k in 0..=deg {
        let id = format!("{base_id}/degree{k}");
        if k > cap {
            out.push(CheckRecord::new(id, &spec.anchor, Status::SkippedBudget).with_detail("degree above the budget"));
            continue;
        }
        let (e, d) = (&expanded[k], &direct[k]);
        // the expansion must be a genuine module, not only the right character
        let ok = e == d && !e.is_virtual();
        let mut rec = CheckRecord::verdict(id, &spec.anchor, ok).sides(e, d);
        rec.dims = Some((e.dim(rs)?, d.dim(rs)?));
        rec.millis = per;
        if !ok {
            rec = rec.with_detail(format!("series - direct = {}", e.minus(d)));
        }
        out.push(rec);
    }
    Ok(out)
}

/// Dimension and Casimir formulas against every column where the role is
/// tabled.
pub fn verify_formulas(cat: &SeriesCatalog, s: SeriesId, entry: &SeriesEntry) -> Vec<CheckRecord> {
    let formulas = match role_formulas(cat, s) {
        Ok(f) => f,
        Err(e) => return vec![failed(record_id(s, entry, "formulas"), "formulas", e)],
    };
    let mut out = Vec::new();
    for f in formulas {
        let expr = match Expr::parse(&f.role) {
            Ok(e) => e,
            Err(e) => {
                out.push(failed(record_id(s, entry, &f.role), &f.anchor, e));
                continue;
            }
        };
        let d = match module(entry, &expr) {
            Ok(d) => d,
            // roles only tabled in some columns
            Err(Error::UnknownRole { .. }) => continue,
            Err(e) => {
                out.push(failed(record_id(s, entry, &f.role), &f.anchor, e));
                continue;
            }
        };
        let rs = &entry.root_system;
        let dim_record = |df: &RatFunc, id: String| match (df.eval(&entry.m), d.dim(rs)) {
            (Ok(want), Ok(got)) => {
                let ok = want == qi(got as i64);
                let mut r = CheckRecord::verdict(id, &f.anchor, ok).sides(got, fmt_q(&want));
                r.dims = Some((got, got));
                r.with_detail(format!("{d}"))
            }
            (Err(e), _) | (_, Err(e)) => failed(id, &f.anchor, e),
        };
        if let Some(df) = &f.dim {
            out.push(dim_record(df, record_id(s, entry, &format!("dim-{}", f.role))));
        }
        if let Some(pf) = &f.printed_dim {
            out.push(as_printed(dim_record(pf, record_id(s, entry, &format!("dim-{}/as-printed", f.role)))));
        }
        if let (Some(cf), false) = (&f.casimir, d.is_empty()) {
            let id = record_id(s, entry, &format!("casimir-{}", f.role));
            let rec = (|| -> Result<CheckRecord> {
                let want = cf.eval(&entry.m)?;
                let got: Vec<Q> = d
                    .terms()
                    .keys()
                    .map(|w| casimir(rs, w, CasimirNormalization::Killing))
                    .collect::<Result<_>>()?;
                let ok = got.iter().all(|g| *g == want);
                let shown: Vec<String> = got.iter().map(fmt_q).collect();
                let mut r = CheckRecord::verdict(id.clone(), &f.anchor, ok).sides(shown.join(", "), fmt_q(&want));
                r.casimirs = casimir_labels(rs, &d)?;
                Ok(r)
            })();
            out.push(rec.unwrap_or_else(|e| failed(id, &f.anchor, e)));
        }
    }
    for (name, terms) in &entry.printed {
        let id = record_id(s, entry, &format!("role-{name}/as-printed"));
        let tabled = entry.written.get(name).map(|ts| ts.iter().map(|t| t.to_string()).collect::<Vec<_>>());
        let mut r = CheckRecord::new(id, format!("{}.highest-weights", s.as_str().replace('_', "-")), Status::ExpectedOpenQuestion)
            .sides(tabled.unwrap_or_default().join(" + "), terms.join(" + "));
        r = r.with_detail(format!("role {name} corrected from the printed weights"));
        out.push(r);
    }
    out
}

/// Relabels a mismatch against a printed claim that the data corrects.
fn as_printed(mut r: CheckRecord) -> CheckRecord {
    if r.status == Status::Diff {
        r.status = Status::ExpectedOpenQuestion;
    }
    r
}

/// For series whose Casimir eigenvalues share a stated denominator, fits
/// `theta * den(m) = a m + b` with integer `a, b` across the columns, role
/// by role.
pub fn verify_casimir_fits(cat: &SeriesCatalog, s: SeriesId) -> Vec<CheckRecord> {
    let Ok(file) = cat.file(s) else {
        return Vec::new();
    };
    let Some(den_src) = &file.casimir_denominator else {
        return Vec::new();
    };
    let anchor = format!("{}.casimir-denominator", s.as_str().replace('_', "-"));
    let den = match parse_formula(den_src, &[]) {
        Ok(d) => d,
        Err(e) => return vec![failed(format!("{s}/casimir-fit"), &anchor, e)],
    };
    let entries = cat.entries(s);
    let names: BTreeSet<&String> = entries.iter().flat_map(|e| e.roles.keys()).collect();
    let mut out = Vec::new();
    for name in names {
        let id = format!("{s}/casimir-fit/{name}");
        let rec = (|| -> Result<Option<CheckRecord>> {
            let mut pts: Vec<(Q, Q)> = Vec::new();
            let (mut split, mut composite) = (Vec::new(), Vec::new());
            for e in entries {
                let Some(ws) = e.roles.get(name) else { continue };
                let vals: BTreeSet<Q> = ws
                    .keys()
                    .map(|w| casimir(&e.root_system, w, CasimirNormalization::Killing))
                    .collect::<Result<_>>()?;
                match vals.len() {
                    0 => {}
                    1 => pts.push((e.m.clone(), vals.into_iter().next().unwrap())),
                    _ if e.composite.contains(name) => composite.push(e.label.clone()),
                    _ => split.push(e.label.clone()),
                }
            }
            if pts.len() + split.len() + composite.len() < 2 {
                return Ok(None);
            }
            let fit = if split.is_empty() && pts.len() >= 2 { fits_integer_linear(&pts, &den)? } else { None };
            let status = if !split.is_empty() || (pts.len() >= 2 && fit.is_none()) {
                Status::Diff
            } else if !composite.is_empty() {
                Status::ExpectedOpenQuestion
            } else {
                Status::Match
            };
            let shown: Vec<String> = pts.iter().map(|(m, t)| format!("m={}:{}", fmt_q(m), fmt_q(t))).collect();
            let mut r = CheckRecord::new(id.clone(), &anchor, status).sides(
                shown.join(", "),
                match &fit {
                    Some((a, b)) => format!("({}m + {})/({den_src})", fmt_q(a), fmt_q(b)),
                    None if pts.len() < 2 => "too few eigenspace columns to fit".to_string(),
                    None => format!("no integer fit over {den_src}"),
                },
            );
            if !split.is_empty() {
                r = r.with_detail(format!("several eigenvalues in columns {}", split.join(", ")));
            } else if !composite.is_empty() {
                r = r.with_detail(format!("declared composite in columns {}", composite.join(", ")));
            }
            Ok(Some(r))
        })();
        match rec {
            Ok(Some(r)) => out.push(r),
            Ok(None) => {}
            Err(e) => out.push(failed(id, &anchor, e)),
        }
    }
    out
}

/// Highest weights `lambda + mu - (simple roots along a path)` for every
/// path joining the support of `lambda` to the support of `mu`, when
/// dominant.
pub fn aad_weights(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Vec<Weight> {
    let cartan = rs.cartan();
    let mut out = BTreeSet::new();
    for i in lambda.support() {
        for j in mu.support() {
            let Some(path) = shortest_path(cartan, i, j) else { continue };
            let mut c = vec![0i32; rs.rank()];
            for n in path {
                c[n] = 1;
            }
            let tau = &(lambda + mu) - &rs.from_root_coords(&c);
            if tau.is_dominant() {
                out.insert(tau);
            }
        }
    }
    out.into_iter().collect()
}

fn shortest_path(cartan: &[Vec<i32>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    while let Some(i) = queue.pop_front() {
        if i == to {
            let mut path = vec![to];
            let mut k = to;
            while let Some(&p) = prev.get(&k) {
                path.push(p);
                k = p;
            }
            return Some(path);
        }
        for n in neighbors(cartan, i) {
            if seen.insert(n) {
                prev.insert(n, i);
                queue.push_back(n);
            }
        }
    }
    None
}

/// `g = (V V*)_Aad` for the Severi columns: each weight of `g` arises from a
/// path and occurs in `V (x) V*`.
pub fn verify_severi_aad(cat: &SeriesCatalog, budget: &Budget) -> Vec<CheckRecord> {
    let anchor = "severi.adjoint-as-syzygy";
    cat.entries(SeriesId::Severi)
        .iter()
        .map(|e| {
            let id = record_id(SeriesId::Severi, e, "g-aad");
            let rec = (|| -> Result<CheckRecord> {
                let rs = &e.root_system;
                let v = e.written["V"][0].weight.clone();
                let vd = rs.dual(&v);
                let aad = aad_weights(rs, &v, &vd);
                let g: Vec<Weight> = e.roles["g"].keys().cloned().collect();
                let prod = tensor_decompositions(rs, &Decomposition::single(v), &Decomposition::single(vd), &budget.limits)?;
                let ok = g.iter().all(|w| aad.contains(w) && prod.get(w) > 0);
                let shown: Vec<String> = aad.iter().map(|w| w.to_string()).collect();
                let gs: Vec<String> = g.iter().map(|w| w.to_string()).collect();
                Ok(CheckRecord::verdict(id.clone(), anchor, ok).sides(shown.join(" + "), gs.join(" + ")))
            })();
            rec.unwrap_or_else(|err| failed(id, anchor, err))
        })
        .collect()
}

/// Vogel dimension along each line at each tabled point, and the closed
/// forms the lines simplify to.
pub fn verify_vogel_lines(cat: &SeriesCatalog) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for line in &cat.vogel.lines {
        let anchor = "vogel.dimension-formula";
        let f = match line.dim_function() {
            Ok(f) => f,
            Err(e) => {
                out.push(failed(format!("vogel/{}", line.name), anchor, e));
                continue;
            }
        };
        if let Some(target) = &line.simplifies_to {
            let id = format!("vogel/{}/closed-form", line.name);
            out.push(match parse_formula(target, &[]) {
                Ok(t) => CheckRecord::verdict(id, anchor, t == f).sides(&f, target),
                Err(e) => failed(id, anchor, e),
            });
        }
        for p in &line.points {
            let id = format!("vogel/{}/m={}", line.name, p.m);
            let rec = (|| -> Result<CheckRecord> {
                let m = parse_q(&p.m)?;
                let got = f.eval(&m)?;
                let rs = RootSystem::from_str_type(&p.algebra)?;
                let want = adjoint_dim(&rs);
                // evaluating (beta, gamma) directly agrees wherever it is defined
                let (b, g) = line.beta_gamma()?;
                let direct = super::formulas::vogel_dim_g(&b.eval(&m)?, &g.eval(&m)?);
                let consistent = direct.map_or(true, |d| d == got);
                Ok(CheckRecord::verdict(id.clone(), anchor, got == qi(want as i64) && consistent)
                    .sides(fmt_q(&got), format!("{want} = dim {}", p.algebra)))
            })();
            out.push(rec.unwrap_or_else(|e| failed(id, anchor, e)));
        }
    }
    out
}

/// The two magic-square parametrizations agree, and match the adjoint
/// dimension of every square entry.
pub fn verify_magic(cat: &SeriesCatalog) -> Vec<CheckRecord> {
    let anchor = "magic-square.dimension-formula";
    cat.vogel
        .magic
        .iter()
        .map(|p| {
            let id = format!("magic/({},{})", p.a, p.b);
            let rec = (|| -> Result<CheckRecord> {
                let (a, b) = (qi(p.a), qi(p.b));
                let d1 = magic_dim(&a, &b)?;
                let d2 = magic_dim_pq(&(&a + qi(4)), &(&b + qi(4)))?;
                let want = adjoint_dim(&RootSystem::from_str_type(&p.algebra)?);
                Ok(CheckRecord::verdict(id.clone(), anchor, d1 == d2 && d1 == qi(want as i64))
                    .sides(format!("{} = {}", fmt_q(&d1), fmt_q(&d2)), format!("{want} = dim {}", p.algebra)))
            })();
            rec.unwrap_or_else(|e| failed(id, anchor, e))
        })
        .collect()
}

/// The exceptional line written through the subexceptional one: the
/// unsimplified formula has a pole at `m = 0` that cancels.
pub fn subexceptional_line_at_zero() -> Result<Q> {
    let m = super::formulas::m_var();
    let four = crate::rational::RatFunc::constant(qi(4));
    vogel_line_dim(&m, &m.add(&four))?.eval(&qi(0))
}

/// The closed multiplicity formula against Kronecker coefficients for all
/// `n <= n_max`.
pub fn verify_mu_lemma(n_max: u32) -> Vec<CheckRecord> {
    let anchor = "hypermatrix.multiplicity-lemma";
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let id = format!("mu-lemma/n={n}");
            let rec = (|| -> Result<CheckRecord> {
                let mut bad = Vec::new();
                let mut count = 0;
                for a in 0..=n / 2 {
                    for b in 0..=n / 2 {
                        for c in 0..=n / 2 {
                            count += 1;
                            let (x, y) = (gf::mu_symmetric(n, a, b, c)?, gf::mu_cauchy(n, a, b, c)?);
                            if x != y {
                                bad.push(format!("({a},{b},{c}): {x} vs {y}"));
                            }
                        }
                    }
                }
                let r = CheckRecord::verdict(id.clone(), anchor, bad.is_empty())
                    .sides(format!("{count} triples by closed form"), "Kronecker coefficients");
                Ok(if bad.is_empty() { r } else { r.with_detail(bad.join("; ")) })
            })();
            rec.unwrap_or_else(|e| failed(id, anchor, e))
        })
        .collect()
}

fn compare_series(
    prefix: &str,
    anchor: &str,
    rs: &RootSystem,
    left: &[Decomposition],
    right: &[Decomposition],
) -> Vec<CheckRecord> {
    left.iter()
        .zip(right)
        .enumerate()
        .map(|(k, (l, r))| {
            let id = format!("{prefix}/degree{k}");
            let ok = l == r && !l.is_virtual();
            let mut rec = CheckRecord::verdict(id.clone(), anchor, ok).sides(l, r);
            match (l.dim(rs), r.dim(rs)) {
                (Ok(a), Ok(b)) => rec.dims = Some((a, b)),
                (Err(e), _) | (_, Err(e)) => return failed(id, anchor, e),
            }
            if !ok {
                rec = rec.with_detail(format!("left - right = {}", l.minus(r)));
            }
            rec
        })
        .collect()
}

/// The symmetrized hypermatrix product and its explicit rewrite against
/// the Cauchy formula, and against the plethysm engine where affordable.
pub fn verify_hypermatrix(cat: &SeriesCatalog, max_deg: usize, budget: &Budget) -> Vec<CheckRecord> {
    let anchor = "hypermatrix.symmetrized-product";
    let run = || -> Result<Vec<CheckRecord>> {
        let rs = RootSystem::from_str_type("A1xA1xA1")?;
        let phi = gf::hypermatrix_gf(cat, max_deg)?;
        let closed = gf::hypermatrix_closed_form(cat, max_deg)?;
        let cauchy = gf::hypermatrix_cauchy(max_deg)?;
        let mut out = compare_series("hypermatrix/phi-vs-cauchy", anchor, &rs, &phi, &cauchy);
        out.extend(compare_series(
            "hypermatrix/closed-form-vs-cauchy",
            "hypermatrix.closed-form",
            &rs,
            &closed,
            &cauchy,
        ));
        let direct = direct_sym_series(&rs, &Decomposition::single(Weight::new([1, 1, 1])), max_deg, &budget.limits)?;
        out.extend(compare_series("hypermatrix/cauchy-vs-plethysm", anchor, &rs, &cauchy, &direct));
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![failed("hypermatrix".into(), anchor, e)])
}

/// The `sl2 x so_n` sum form against the Cauchy/branching oracle and the
/// plethysm engine.
pub fn verify_slso(ns: &[usize], max_deg: usize, budget: &Budget) -> Vec<CheckRecord> {
    let anchor = "orthogonal-isotropy.sl2-so-n";
    ns.par_iter()
        .flat_map_iter(|&n| {
            let run = || -> Result<Vec<CheckRecord>> {
                let s = gf::SlSo::new(n)?;
                let series = gf::slso_gf(n, max_deg)?;
                let cauchy = gf::slso_cauchy(n, max_deg)?;
                let direct = gf::slso_direct(n, max_deg, &budget.limits)?;
                let mut out = compare_series(&format!("sl2-so{n}/series-vs-cauchy"), anchor, &s.root_system, &series, &cauchy);
                out.extend(compare_series(
                    &format!("sl2-so{n}/cauchy-vs-plethysm"),
                    anchor,
                    &s.root_system,
                    &cauchy,
                    &direct,
                ));
                Ok(out)
            };
            run().unwrap_or_else(|e| vec![failed(format!("sl2-so{n}"), anchor, e)])
        })
        .collect()
}

/// The sl3 generating function against the plethysm engine.
pub fn verify_sl3(cat: &SeriesCatalog, max_deg: usize, budget: &Budget) -> Vec<CheckRecord> {
    let anchor = "severi-section.sl3-adjoint";
    let run = || -> Result<Vec<CheckRecord>> {
        let rs = RootSystem::from_str_type("A2")?;
        let series = gf::sl3_gf(cat, max_deg)?;
        let direct = gf::sl3_direct(max_deg, &budget.limits)?;
        Ok(compare_series("sl3", anchor, &rs, &series, &direct))
    };
    run().unwrap_or_else(|e| vec![failed("sl3".into(), anchor, e)])
}

/// Ratio of the highest-root to the Killing Casimir of `V` in every
/// subexceptional column: `2 h^vee` on each simple factor.
pub fn normalization_ledger(cat: &SeriesCatalog) -> Vec<CheckRecord> {
    let anchor = "subexceptional.casimir-normalization";
    cat.entries(SeriesId::Subexceptional)
        .iter()
        .map(|e| {
            let id = record_id(SeriesId::Subexceptional, e, "killing-factor");
            let rec = (|| -> Result<CheckRecord> {
                let rs = &e.root_system;
                let v = &e.written["V"][0].weight;
                let hr = casimir(rs, v, CasimirNormalization::HighestRoot)?;
                let k = casimir(rs, v, CasimirNormalization::Killing)?;
                let h: BTreeSet<u32> = rs.dual_coxeter().iter().copied().collect();
                let [h] = h.into_iter().collect::<Vec<_>>()[..] else {
                    return Err(Error::Precondition("factors with different dual Coxeter numbers".into()));
                };
                let ratio = hr / k;
                Ok(CheckRecord::verdict(id.clone(), anchor, ratio == qi(2 * h as i64))
                    .sides(format!("highest-root / Killing = {}", fmt_q(&ratio)), format!("2h = {}", 2 * h)))
            })();
            rec.unwrap_or_else(|err| failed(id, anchor, err))
        })
        .collect()
}

/// Which columns and checks a series run covers.
#[derive(Clone, Debug, Default)]
pub struct Selection {
    /// Only the column at this `m`; all columns when `None`.
    pub m: Option<Q>,
    /// Only the identity or generating function with this id.
    pub identity: Option<String>,
}

enum Job<'a> {
    Identity(&'a SeriesEntry, &'a IdentitySpec),
    Gf(&'a SeriesEntry, &'a GfSpec),
    Formulas(&'a SeriesEntry),
}

fn applies(columns: &Option<Vec<String>>, e: &SeriesEntry) -> bool {
    columns.as_ref().is_none_or(|c| c.iter().any(|l| *l == e.label))
}

/// Every check of one series table, run in parallel; record order follows
/// the table.
pub fn verify_series(cat: &SeriesCatalog, s: SeriesId, sel: &Selection, budget: &Budget) -> Result<Report> {
    let file = cat.file(s)?;
    let entries: Vec<&SeriesEntry> = cat
        .entries(s)
        .iter()
        .filter(|e| sel.m.as_ref().is_none_or(|m| *m == e.m))
        .collect();
    if entries.is_empty() {
        return Err(Error::Precondition(format!(
            "series {s} has no column at m = {}",
            sel.m.as_ref().map(fmt_q).unwrap_or_default()
        )));
    }
    let wanted = |id: &str| sel.identity.as_deref().is_none_or(|w| w == id);
    let mut jobs = Vec::new();
    for e in &entries {
        if sel.identity.is_none() {
            jobs.push(Job::Formulas(e));
        }
        for i in file.identities.iter().filter(|i| applies(&i.columns, e) && wanted(&i.id)) {
            jobs.push(Job::Identity(e, i));
        }
        for g in file.generating_functions.iter().filter(|g| applies(&g.columns, e) && wanted(&g.id)) {
            jobs.push(Job::Gf(e, g));
        }
    }
    if jobs.is_empty() {
        return Err(Error::Precondition(format!(
            "series {s} has no identity `{}`",
            sel.identity.as_deref().unwrap_or("")
        )));
    }
    let records: Vec<Vec<CheckRecord>> = jobs
        .par_iter()
        .map(|j| {
            let (e, recs) = match j {
                Job::Identity(e, i) => (e, verify_identity(e, i, budget)),
                Job::Gf(e, g) => (e, verify_gf(e, g, budget)),
                Job::Formulas(e) => (e, verify_formulas(cat, s, e)),
            };
            match &e.degenerate {
                Some(why) => recs.into_iter().map(|r| demote(r, why)).collect(),
                None => recs,
            }
        })
        .collect();
    let mut report = Report::new(s.as_str());
    report.records = records.into_iter().flatten().collect();
    if sel.identity.is_none() && sel.m.is_none() {
        report.records.extend(verify_casimir_fits(cat, s));
    }
    Ok(report)
}

fn demote(mut r: CheckRecord, why: &str) -> CheckRecord {
    if r.status != Status::Diff {
        return r;
    }
    r.status = Status::ExpectedOpenQuestion;
    let d = r.detail.take().map(|d| format!("; {d}")).unwrap_or_default();
    r.with_detail(format!("degenerate column: {why}{d}"))
}

/// Verifies one identity of one column.
pub fn verify_table(cat: &SeriesCatalog, s: SeriesId, m: &Q, id: &str, budget: &Budget) -> Result<Report> {
    verify_series(
        cat,
        s,
        &Selection {
            m: Some(m.clone()),
            identity: Some(id.to_string()),
        },
        budget,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn cat() -> SeriesCatalog {
        SeriesCatalog::builtin().unwrap()
    }

    fn all_match(r: &Report) -> bool {
        r.records.iter().all(|x| x.status == Status::Match)
    }

    #[test]
    fn lhs_forms_parse() {
        assert!(matches!(Lhs::parse("ext3(V)").unwrap(), Lhs::Ext(3, _)));
        assert!(matches!(Lhs::parse("schur211(V)").unwrap(), Lhs::Schur(ref p, _) if p.size() == 4));
        assert!(matches!(Lhs::parse("tensor(V g, V)").unwrap(), Lhs::Tensor(..)));
        assert!(matches!(Lhs::parse("V + g").unwrap(), Lhs::Module(_)));
        assert!(Lhs::parse("wedge2(V)").is_err());
        assert!(Lhs::parse("tensor(V)").is_err());
    }

    #[test]
    fn exterior_cube_of_the_sp6_module() {
        let c = cat();
        let r = verify_table(&c, SeriesId::Subexceptional, &qi(1), "ext3", &Budget::default()).unwrap();
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].status, Status::Match);
        assert_eq!(r.records[0].dims, Some((364, 364)));
    }

    #[test]
    fn f4_adjoint_square() {
        let c = cat();
        let r = verify_table(&c, SeriesId::Exceptional, &qi(1), "vogel-sym2-g", &Budget::default()).unwrap();
        assert!(all_match(&r), "{:?}", r.records);
    }

    #[test]
    fn budget_skips_large_degrees() {
        let c = cat();
        let b = Budget {
            max_degree: Some(2),
            ..Budget::default()
        };
        let r = verify_table(&c, SeriesId::Subexceptional, &q(-2, 3), "ext3", &b).unwrap();
        assert_eq!(r.records[0].status, Status::SkippedBudget);
    }

    #[test]
    fn aad_of_the_severi_modules() {
        let rs = RootSystem::from_str_type("A2").unwrap();
        let v: Weight = "[2,0]".parse().unwrap();
        assert_eq!(aad_weights(&rs, &v, &rs.dual(&v)), vec!["[1,1]".parse::<Weight>().unwrap()]);
        let r = verify_severi_aad(&cat(), &Budget::default());
        assert!(r.iter().all(|x| x.status == Status::Match), "{r:?}");
    }

    #[test]
    fn vogel_and_magic_rows() {
        let c = cat();
        let v = verify_vogel_lines(&c);
        assert!(v.iter().all(|x| x.status == Status::Match), "{v:?}");
        let m = verify_magic(&c);
        assert_eq!(m.len(), 16);
        assert!(m.iter().all(|x| x.status == Status::Match), "{m:?}");
        assert_eq!(subexceptional_line_at_zero().unwrap(), qi(9));
    }
}
