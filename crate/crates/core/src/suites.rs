//! Named verification suites and the full run behind `verify --all`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::chars::{
    CasimirNormalization, Decomposition, FormalCharacter, Limits, casimir, decompose_character, irr_character,
    kostant_multiplicity, tensor, weyl_dimension,
};
use crate::error::{Error, Result};
use crate::extremal::verify_extremal;
use crate::induction::verify_quadric_casimir;
use crate::rational::qi;
use crate::plethysm::{Partition, Plethysm, SymGroupCharTable, lr_coefficient};
use crate::report::{CheckRecord, Report};
use crate::rootsys::{RootSystem, Weight};
use crate::series::SeriesId;
use crate::series::verify::{
    Budget, Selection, normalization_ledger, verify_hypermatrix, verify_magic, verify_mu_lemma, verify_series,
    verify_severi_aad, verify_sl3, verify_slso, verify_vogel_lines,
};
use crate::series::SeriesCatalog;

/// Series with a bundled table.
pub const TABLED_SERIES: [SeriesId; 4] = [
    SeriesId::Exceptional,
    SeriesId::Subexceptional,
    SeriesId::Severi,
    SeriesId::SeveriSection,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Series(SeriesId),
    Vogel,
    Magic,
    Mu,
    Hypermatrix,
    Slso,
    Sl3,
    SeveriAad,
    QuadricCasimir,
    Extremal,
    Normalization,
    Engine,
}

impl Suite {
    /// Every suite in the order `verify --all` runs them.
    pub fn all() -> Vec<Suite> {
        let mut v: Vec<Suite> = TABLED_SERIES.into_iter().map(Suite::Series).collect();
        v.extend([
            Suite::Vogel,
            Suite::Magic,
            Suite::Mu,
            Suite::Hypermatrix,
            Suite::Slso,
            Suite::Sl3,
            Suite::SeveriAad,
            Suite::QuadricCasimir,
            Suite::Extremal,
            Suite::Normalization,
            Suite::Engine,
        ]);
        v
    }

    pub fn name(self) -> String {
        match self {
            Suite::Series(s) => s.as_str().replace('_', "-"),
            Suite::Vogel => "vogel-dim".into(),
            Suite::Magic => "magic-square".into(),
            Suite::Mu => "mu-lemma".into(),
            Suite::Hypermatrix => "hypermatrix".into(),
            Suite::Slso => "sl2-so".into(),
            Suite::Sl3 => "sl3".into(),
            Suite::SeveriAad => "severi-aad".into(),
            Suite::QuadricCasimir => "quadric-casimir".into(),
            Suite::Extremal => "extremal".into(),
            Suite::Normalization => "normalization".into(),
            Suite::Engine => "engine".into(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Suite::all()
            .into_iter()
            .find(|x| x.name() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Parameters of the non-table suites.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub mu_n_max: u32,
    pub hypermatrix_degree: usize,
    pub slso_ns: Vec<usize>,
    pub slso_degree: usize,
    pub sl3_degree: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            mu_n_max: 8,
            hypermatrix_degree: 8,
            slso_ns: vec![5, 7, 9],
            slso_degree: 5,
            sl3_degree: 8,
        }
    }
}

pub fn run_suite(cat: &SeriesCatalog, suite: Suite, params: &SuiteParams, budget: &Budget) -> Result<Report> {
    let records = match suite {
        Suite::Series(s) => return verify_series(cat, s, &Selection::default(), budget).map(|mut r| {
            r.suite = suite.name();
            r
        }),
        Suite::Vogel => verify_vogel_lines(cat),
        Suite::Magic => verify_magic(cat),
        Suite::Mu => verify_mu_lemma(params.mu_n_max),
        Suite::Hypermatrix => verify_hypermatrix(cat, params.hypermatrix_degree, budget),
        Suite::Slso => verify_slso(&params.slso_ns, params.slso_degree, budget),
        Suite::Sl3 => verify_sl3(cat, params.sl3_degree, budget),
        Suite::SeveriAad => verify_severi_aad(cat, budget),
        Suite::QuadricCasimir => verify_quadric_casimir(),
        Suite::Extremal => verify_extremal(&budget.limits),
        Suite::Normalization => normalization_ledger(cat),
        Suite::Engine => engine_consistency(&budget.limits),
    };
    Ok(Report {
        suite: suite.name(),
        records,
    })
}

/// Every suite, in order. A suite that cannot start yields a single
/// failing record rather than aborting the run.
pub fn run_all(cat: &SeriesCatalog, params: &SuiteParams, budget: &Budget) -> Vec<Report> {
    Suite::all()
        .into_iter()
        .map(|s| {
            run_suite(cat, s, params, budget).unwrap_or_else(|e| Report {
                suite: s.name(),
                records: vec![CheckRecord::from_error(s.name(), "suite", e)],
            })
        })
        .collect()
}

const SMALL_TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

/// Dominant weights with coordinate sum at most `n`.
fn small_weights(rank: usize, n: i32) -> Vec<Weight> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|c: Vec<i32>| {
                let used: i32 = c.iter().sum();
                (0..=n - used).map(move |x| {
                    let mut d = c.clone();
                    d.push(x);
                    d
                })
            })
            .collect();
    }
    out.into_iter().map(Weight::new).collect()
}

fn timed(id: String, anchor: &str, f: impl FnOnce() -> Result<CheckRecord>) -> CheckRecord {
    let t = Instant::now();
    let mut r = f().unwrap_or_else(|e| CheckRecord::from_error(id, anchor, e));
    r.millis = t.elapsed().as_millis();
    r
}

fn freudenthal_vs_kostant(limits: &Limits) -> Vec<CheckRecord> {
    let anchor = "engine.freudenthal-kostant";
    let cases: Vec<(&str, Weight)> = SMALL_TYPES
        .iter()
        .flat_map(|t| {
            let rank = RootSystem::from_str_type(t).map(|r| r.rank()).unwrap_or(0);
            small_weights(rank, 2).into_iter().filter(|w| !w.is_zero()).map(move |w| (*t, w))
        })
        .collect();
    cases
        .par_iter()
        .map(|(t, w)| {
            let id = format!("freudenthal-kostant/{t}/{w}");
            timed(id.clone(), anchor, || {
                let rs = RootSystem::from_str_type(t)?;
                let chi = irr_character(&rs, w, limits)?;
                let mut bad = Vec::new();
                for (mu, &m) in chi.dominant() {
                    let k = kostant_multiplicity(&rs, w, mu, limits)?;
                    if k != m {
                        bad.push(format!("{mu}: {m} vs {k}"));
                    }
                }
                Ok(CheckRecord::verdict(id, anchor, bad.is_empty())
                    .sides(format!("{} dominant weights", chi.len()), format!("{} disagree", bad.len()))
                    .with_detail(bad.join("; ")))
            })
        })
        .collect()
}

/// `chi^k = sum_P f^P S_P(chi)` over partitions of `k`, with `f^P` the
/// degree of the symmetric group character.
fn plethysm_reconstitution(limits: &Limits) -> Vec<CheckRecord> {
    let anchor = "engine.schur-reconstitution";
    let cases = [("A2", "[1,0]"), ("B2", "[0,1]"), ("G2", "[1,0]"), ("A3", "[0,1,0]"), ("C3", "[1,0,0]")];
    let mut out = Vec::new();
    for (t, l) in cases {
        for k in 1..=4u32 {
            let id = format!("schur-reconstitution/{t}/{l}/k{k}");
            out.push(timed(id.clone(), anchor, || {
                let rs = RootSystem::from_str_type(t)?;
                let w: Weight = l.parse()?;
                let chi: FormalCharacter = (*irr_character(&rs, &w, limits)?).clone();
                let mut power = FormalCharacter::trivial(rs.rank());
                for _ in 0..k {
                    power = power.mul(&chi, &rs, limits)?;
                }
                let table = SymGroupCharTable::get(k);
                let mut engine = Plethysm::new(&rs, chi, *limits);
                let mut sum = FormalCharacter::zero(rs.rank());
                for p in Partition::all(k) {
                    sum.add_scaled(&engine.schur(&p)?, table.degree(&p) as i128);
                }
                Ok(CheckRecord::verdict(id, anchor, sum == power).sides(sum.mass(&rs), power.mass(&rs)))
            }));
        }
    }
    out
}

fn tensor_laws(limits: &Limits) -> Vec<CheckRecord> {
    let anchor = "engine.tensor-laws";
    let cases = [
        ("A2", "[1,0]", "[1,1]", "[0,2]"),
        ("B2", "[1,0]", "[0,1]", "[1,1]"),
        ("G2", "[1,0]", "[0,1]", "[1,0]"),
        ("A3", "[0,1,0]", "[1,0,1]", "[1,0,0]"),
        ("C3", "[0,0,1]", "[1,0,0]", "[0,1,0]"),
    ];
    let mut out = Vec::new();
    for (t, a, b, c) in cases {
        let id = format!("tensor-laws/{t}/{a}x{b}x{c}");
        out.push(timed(id.clone(), anchor, || {
            let rs = RootSystem::from_str_type(t)?;
            let (a, b, c): (Weight, Weight, Weight) = (a.parse()?, b.parse()?, c.parse()?);
            let ab = tensor(&rs, &a, &b, limits)?;
            let ba = tensor(&rs, &b, &a, limits)?;
            let bc = tensor(&rs, &b, &c, limits)?;
            let left = decompose_character(
                &rs,
                &ab.character(&rs, limits)?.mul(&*irr_character(&rs, &c, limits)?, &rs, limits)?,
                limits,
            )?;
            let right = decompose_character(
                &rs,
                &irr_character(&rs, &a, limits)?.mul(&bc.character(&rs, limits)?, &rs, limits)?,
                limits,
            )?;
            let dims = [&a, &b, &c].iter().map(|w| weyl_dimension(&rs, w)).collect::<Result<Vec<_>>>()?;
            let want = dims.iter().product::<u128>() as i128;
            let ok = ab == ba && left == right && left.dim(&rs)? == want;
            Ok(CheckRecord::verdict(id, anchor, ok).sides(&left, &right))
        }));
    }
    out
}

/// Type A tensor products against Littlewood-Richardson coefficients.
fn lr_vs_tensor(limits: &Limits) -> Vec<CheckRecord> {
    let anchor = "engine.lr-tensor";
    let mut out = Vec::new();
    for n in [3usize, 4] {
        let shapes: Vec<Partition> = (1..=3).flat_map(Partition::all).filter(|p| p.len() <= n).collect();
        for mu in &shapes {
            for nu in &shapes {
                let id = format!("lr-tensor/A{}/{mu}x{nu}", n - 1);
                out.push(timed(id.clone(), anchor, || {
                    let rs = RootSystem::from_str_type(&format!("A{}", n - 1))?;
                    let direct = tensor(&rs, &mu.to_gl_weight(n)?, &nu.to_gl_weight(n)?, limits)?;
                    let mut via_lr = Decomposition::new(n - 1);
                    for la in Partition::all(mu.size() + nu.size()) {
                        if la.len() <= n {
                            let c = lr_coefficient(mu, nu, &la);
                            if c > 0 {
                                via_lr.add(la.to_gl_weight(n)?, c as i128);
                            }
                        }
                    }
                    Ok(CheckRecord::verdict(id, anchor, direct == via_lr).sides(&via_lr, &direct))
                }));
            }
        }
    }
    out
}

/// Decompositions of `S^P V` keep the hook-content dimension, and the two
/// Casimir normalizations differ by `2 h^vee` on every component.
fn dimension_conservation(limits: &Limits) -> Vec<CheckRecord> {
    let anchor = "engine.dimension-conservation";
    let cases = [("A2", "[1,1]"), ("G2", "[1,0]"), ("B3", "[0,0,1]"), ("D4", "[1,0,0,0]"), ("F4", "[0,0,0,1]")];
    let mut out = Vec::new();
    for (t, l) in cases {
        for k in 2..=4u32 {
            for p in Partition::all(k) {
                let id = format!("dimension-conservation/{t}/{l}/{p}");
                out.push(timed(id.clone(), anchor, || {
                    let rs = RootSystem::from_str_type(t)?;
                    let w: Weight = l.parse()?;
                    let n = weyl_dimension(&rs, &w)? as i128;
                    let chi = irr_character(&rs, &w, limits)?;
                    let mut engine = Plethysm::new(&rs, (*chi).clone(), *limits);
                    let d = decompose_character(&rs, &engine.schur(&p)?, limits)?;
                    let want = hook_content_dim(&p, n);
                    let two_h = qi(2 * rs.dual_coxeter()[0] as i64);
                    let mut scale_ok = true;
                    for c in d.terms().keys() {
                        let hr = casimir(&rs, c, CasimirNormalization::HighestRoot)?;
                        scale_ok &= hr == casimir(&rs, c, CasimirNormalization::Killing)? * &two_h;
                    }
                    let got = d.dim(&rs)?;
                    let mut r = CheckRecord::verdict(id, anchor, got == want && scale_ok).sides(got, want);
                    r.dims = Some((got, want));
                    Ok(r)
                }));
            }
        }
    }
    out
}

/// `dim S_P(C^n) = prod (n + content) / hook`.
fn hook_content_dim(p: &Partition, n: i128) -> i128 {
    let conj = p.conjugate();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..p.len() {
        for j in 0..p.part(i) as usize {
            num *= n + j as i128 - i as i128;
            den *= (p.part(i) as i128 - j as i128) + (conj.part(j) as i128 - i as i128) - 1;
        }
    }
    num / den
}

/// Self-consistency of the character engines.
pub fn engine_consistency(limits: &Limits) -> Vec<CheckRecord> {
    let mut out = freudenthal_vs_kostant(limits);
    out.extend(plethysm_reconstitution(limits));
    out.extend(tensor_laws(limits));
    out.extend(lr_vs_tensor(limits));
    out.extend(dimension_conservation(limits));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::all() {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("severi_section".parse::<Suite>().unwrap(), Suite::Series(SeriesId::SeveriSection));
        assert!("nonsense".parse::<Suite>().is_err());
    }

    #[test]
    fn hook_content_dimensions() {
        let p = |v: Vec<u32>| Partition::new(v).unwrap();
        assert_eq!(hook_content_dim(&p(vec![2]), 3), 6);
        assert_eq!(hook_content_dim(&p(vec![1, 1]), 3), 3);
        assert_eq!(hook_content_dim(&p(vec![2, 1]), 3), 8);
        assert_eq!(hook_content_dim(&p(vec![1, 1, 1, 1]), 3), 0);
    }

    #[test]
    fn small_weight_enumeration() {
        assert_eq!(small_weights(2, 2).len(), 6);
        assert!(small_weights(3, 1).contains(&Weight::new([0, 1, 0])));
    }

    #[test]
    fn engine_suite_is_clean() {
        let recs = engine_consistency(&Limits::default());
        let bad: Vec<_> = recs.iter().filter(|r| r.is_failure()).map(|r| (&r.id, &r.left, &r.right)).take(3).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(recs.len() > 100);
    }
}
