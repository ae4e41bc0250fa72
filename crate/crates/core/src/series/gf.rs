//! Generating functions for symmetric algebras: Cartan-product expansion of
//! the tabled products, the closed multiplicity formula for 2x2x2
//! hypermatrices, and the sl2 x so_n and sl3 special cases.

use super::expr::{Expr, WeightSeries};
use super::{GfSpec, SeriesCatalog, SeriesEntry, SeriesId};
use crate::chars::{Decomposition, Limits, decompose_character};
use crate::error::{Error, Result};
use crate::plethysm::{Partition, cauchy_sym, gl_to_so_two_row, so_two_row_weight, so_type, sym_power};
use crate::rootsys::{RootSystem, Weight};

/// Expands `spec` for `entry` up to `max_deg`.
///
/// Every role atom stands for the Cartan product of its members; with
/// `symmetrize` the atoms are taken as written and each resulting term is
/// summed over its distinct images under the column's symmetry group.
pub fn expand_gf(spec: &GfSpec, entry: &SeriesEntry, max_deg: usize) -> Result<Vec<Decomposition>> {
    let e = Expr::parse(&spec.expr)?;
    let mut resolve = |r: &super::expr::RoleRef| entry.resolve(r, spec.symmetrize);
    let mut s = e.eval(entry.rank(), max_deg, &mut resolve)?;
    if spec.symmetrize {
        s = s.orbit_summed(&entry.symmetry)?;
    }
    per_degree(&s)
}

fn per_degree(s: &WeightSeries) -> Result<Vec<Decomposition>> {
    (0..=s.max_deg()).map(|d| s.decomposition(d)).collect()
}

/// `S^k` of the module `base` decomposed for `k = 0..=max_deg`.
pub fn direct_sym_series(
    rs: &RootSystem,
    base: &Decomposition,
    max_deg: usize,
    limits: &Limits,
) -> Result<Vec<Decomposition>> {
    let chi = base.character(rs, limits)?;
    let mut lim = *limits;
    lim.max_plethysm_degree = lim.max_plethysm_degree.max(max_deg);
    (0..=max_deg as u32)
        .map(|k| decompose_character(rs, &sym_power(rs, &chi, k, &lim)?, &lim))
        .collect()
}

/// The module a generating function claims to describe (its `base` role).
pub fn base_module(spec: &GfSpec, entry: &SeriesEntry) -> Result<Decomposition> {
    let e = Expr::parse(&spec.base)?;
    let mut resolve = |r: &super::expr::RoleRef| entry.resolve(r, false);
    e.eval(entry.rank(), 0, &mut resolve)?.decomposition(0)
}

fn floor_half(x: i64) -> i64 {
    x.div_euclid(2)
}

fn ceil_half(x: i64) -> i64 {
    -(-x).div_euclid(2)
}

/// Multiplicity of `S_{n-a,a}A (x) S_{n-b,b}B (x) S_{n-c,c}C` in
/// `S^n(A (x) B (x) C)` for two-dimensional `A, B, C`, by the three-branch
/// closed form. Requires `c >= a, b` and `2c <= n`.
pub fn mu_closed_form(n: u32, a: u32, b: u32, c: u32) -> Result<u64> {
    if c < a || c < b || 2 * c > n {
        return Err(Error::Precondition(format!(
            "closed form needs c >= a, b and 2c <= n, got n={n}, (a,b,c)=({a},{b},{c})"
        )));
    }
    let (n, a, b, c) = (n as i64, a as i64, b as i64, c as i64);
    if c > a + b {
        return Ok(0);
    }
    let v = if n >= a + b + c {
        floor_half(a + b - c) + 1
    } else {
        floor_half(a + b - c) - ceil_half(a + b + c - n) + 1
    };
    // a negative value would mean the formula left its domain
    u64::try_from(v).map_err(|_| Error::Internal(format!("negative multiplicity at n={n}")))
}

/// `mu_closed_form` after sorting `(a, b, c)` so the largest comes last.
pub fn mu_symmetric(n: u32, a: u32, b: u32, c: u32) -> Result<u64> {
    let mut v = [a, b, c];
    v.sort_unstable();
    mu_closed_form(n, v[0], v[1], v[2])
}

/// The same multiplicity by the Cauchy formula with Kronecker coefficients.
pub fn mu_cauchy(n: u32, a: u32, b: u32, c: u32) -> Result<u64> {
    let want = |x: u32| Partition::new(vec![n - x, x]);
    let target = [want(a)?, want(b)?, want(c)?];
    Ok(cauchy_sym(n, &[2, 2, 2])?
        .into_iter()
        .find(|(ps, _)| ps.as_slice() == target)
        .map_or(0, |(_, g)| g))
}

/// `S^k(A (x) B (x) C)` over `A1xA1xA1` from the Cauchy formula.
pub fn hypermatrix_cauchy(max_deg: usize) -> Result<Vec<Decomposition>> {
    (0..=max_deg as u32)
        .map(|k| {
            let mut d = Decomposition::new(3);
            for (ps, g) in cauchy_sym(k, &[2, 2, 2])? {
                let w = Weight::new(ps.iter().map(|p| (p.part(0) - p.part(1)) as i32));
                d.add(w, g as i128);
            }
            Ok(d)
        })
        .collect()
}

fn hypermatrix_entry(cat: &SeriesCatalog) -> Result<&SeriesEntry> {
    cat.entry_by_label(SeriesId::Subexceptional, "A1xA1xA1")
}

fn gf_spec<'a>(cat: &'a SeriesCatalog, s: SeriesId, id: &str) -> Result<&'a GfSpec> {
    cat.file(s)?
        .generating_functions
        .iter()
        .find(|g| g.id == id)
        .ok_or_else(|| Error::Precondition(format!("series {s} has no generating function {id}")))
}

/// The symmetrized product for `A (x) B (x) C` expanded up to `max_deg`.
pub fn hypermatrix_gf(cat: &SeriesCatalog, max_deg: usize) -> Result<Vec<Decomposition>> {
    if max_deg > 10 {
        return Err(Error::LimitExceeded(format!("hypermatrix series to degree {max_deg}")));
    }
    let spec = gf_spec(cat, SeriesId::Subexceptional, "hypermatrix-symmetrized")?;
    expand_gf(spec, hypermatrix_entry(cat)?, max_deg)
}

/// The explicit rewrite of the symmetrized product, with literal weights.
pub fn hypermatrix_closed_form(cat: &SeriesCatalog, max_deg: usize) -> Result<Vec<Decomposition>> {
    let spec = gf_spec(cat, SeriesId::Subexceptional, "hypermatrix-closed-form")?;
    expand_gf(spec, hypermatrix_entry(cat)?, max_deg)
}

/// `sl2 x so_n` together with `V = A (x) B`.
pub struct SlSo {
    pub root_system: RootSystem,
    pub v: Weight,
    /// `S^2 A`, `Lambda^2 B` (the so_n adjoint) and the traceless `S^2 B`.
    pub s2a: Weight,
    pub l2b: Weight,
    pub s2b: Weight,
}

impl SlSo {
    pub fn new(n: usize) -> Result<Self> {
        let t = so_type(n)?;
        let rs = RootSystem::from_str_type(&format!("A1x{t}"))?;
        let embed = |a: i32, b: Weight| Weight::new(std::iter::once(a).chain(b.coords().iter().copied()));
        let zero = Weight::zero(t.rank);
        Ok(SlSo {
            v: embed(1, so_two_row_weight(1, 0, n)?),
            s2a: embed(2, zero.clone()),
            l2b: embed(0, so_two_row_weight(1, 1, n)?),
            s2b: embed(0, so_two_row_weight(2, 0, n)?),
            root_system: rs,
        })
    }
}

/// The sum form of the `sl2 x so_n` generating function.
pub fn slso_gf(n: usize, max_deg: usize) -> Result<Vec<Decomposition>> {
    if max_deg > 6 {
        return Err(Error::LimitExceeded(format!("sl2 x so_n series to degree {max_deg}")));
    }
    let s = SlSo::new(n)?;
    let src = format!(
        "1/((1 - t {v})(1 - t^4)(1 - t^3 {v})(1 - t^2 {l})) (1/(1 - t^2 {a}) + 1/(1 - t^4 {b}) - 1)",
        v = s.v,
        l = s.l2b,
        a = s.s2a,
        b = s.s2b
    );
    let e = Expr::parse(&src)?;
    let mut no_roles = |r: &super::expr::RoleRef| -> Result<Vec<(Weight, i128)>> {
        Err(Error::UnknownRole {
            role: r.name.clone(),
            algebra: s.root_system.algebra_type().to_string(),
        })
    };
    per_degree(&e.eval(s.root_system.rank(), max_deg, &mut no_roles)?)
}

/// `S^k(A (x) B)` from the Cauchy formula and the two-row branching
/// `S_{l,m}B = sum c S_[p,q]B`.
pub fn slso_cauchy(n: usize, max_deg: usize) -> Result<Vec<Decomposition>> {
    let rank = so_type(n)?.rank + 1;
    (0..=max_deg as u32)
        .map(|k| {
            let mut d = Decomposition::new(rank);
            for m in 0..=k / 2 {
                let l = k - m;
                for (wb, c) in gl_to_so_two_row(l, m, n)?.terms() {
                    let w = Weight::new(std::iter::once((l - m) as i32).chain(wb.coords().iter().copied()));
                    d.add(w, *c);
                }
            }
            Ok(d)
        })
        .collect()
}

/// `S^k(A (x) B)` from the plethysm engine.
pub fn slso_direct(n: usize, max_deg: usize, limits: &Limits) -> Result<Vec<Decomposition>> {
    let s = SlSo::new(n)?;
    direct_sym_series(&s.root_system, &Decomposition::single(s.v), max_deg, limits)
}

/// The sl3 generating function of the adjoint representation.
pub fn sl3_gf(cat: &SeriesCatalog, max_deg: usize) -> Result<Vec<Decomposition>> {
    if max_deg > 8 {
        return Err(Error::LimitExceeded(format!("sl3 series to degree {max_deg}")));
    }
    let entry = cat.entry_by_label(SeriesId::SeveriSection, "A2")?;
    expand_gf(gf_spec(cat, SeriesId::SeveriSection, "symmetric-algebra-sl3")?, entry, max_deg)
}

/// `S^k` of the sl3 adjoint representation, decomposed.
pub fn sl3_direct(max_deg: usize, limits: &Limits) -> Result<Vec<Decomposition>> {
    let rs = RootSystem::from_str_type("A2")?;
    let adj = Decomposition::single(Weight::new([1, 1]));
    direct_sym_series(&rs, &adj, max_deg, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn cat() -> SeriesCatalog {
        SeriesCatalog::builtin().unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(mu_closed_form(3, 1, 1, 1).unwrap(), 1);
        assert_eq!(mu_closed_form(6, 2, 2, 2).unwrap(), 2);
        assert_eq!(mu_closed_form(8, 0, 1, 3).unwrap(), 0);
        assert!(mu_closed_form(4, 2, 1, 1).is_err());
        assert!(mu_closed_form(5, 1, 1, 3).is_err());
    }

    #[test]
    fn closed_form_matches_cauchy_small() {
        for n in 0..=5 {
            for a in 0..=n / 2 {
                for b in 0..=n / 2 {
                    for c in 0..=n / 2 {
                        assert_eq!(mu_symmetric(n, a, b, c).unwrap(), mu_cauchy(n, a, b, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn subexceptional_degree_two() {
        let c = cat();
        let e = c.entry(SeriesId::Subexceptional, &qi(1)).unwrap();
        let spec = gf_spec(&c, SeriesId::Subexceptional, "symmetric-algebra").unwrap();
        let d = expand_gf(spec, e, 2).unwrap();
        // S^2 V = V^(2) + g
        assert_eq!(d[2], Decomposition::from_terms(3, [(w("[0,0,2]"), 1), (w("[2,0,0]"), 1)]).unwrap());
    }

    #[test]
    fn hypermatrix_low_degrees() {
        let c = cat();
        let d = hypermatrix_gf(&c, 4).unwrap();
        let rs = RootSystem::from_str_type("A1xA1xA1").unwrap();
        assert_eq!(d[1], Decomposition::single(w("[1,1,1]")));
        assert_eq!(d[2].dim(&rs).unwrap(), 36);
        assert_eq!(d[4].dim(&rs).unwrap(), 330);
        assert_eq!(d, hypermatrix_cauchy(4).unwrap());
    }

    #[test]
    fn slso_degree_one_and_two() {
        let d = slso_gf(7, 2).unwrap();
        let s = SlSo::new(7).unwrap();
        assert_eq!(d[1], Decomposition::single(s.v.clone()));
        assert_eq!(d, slso_cauchy(7, 2).unwrap());
    }

    #[test]
    fn sl3_low_degrees() {
        let c = cat();
        let d = sl3_gf(&c, 3).unwrap();
        assert_eq!(d[0], Decomposition::single(w("[0,0]")));
        assert_eq!(d[3].get(&w("[3,0]")), 1);
        assert_eq!(d[3].get(&w("[0,3]")), 1);
        assert_eq!(d, sl3_direct(3, &Limits::default()).unwrap());
    }
}
