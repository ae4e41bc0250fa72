//! Series of representations indexed by a rational parameter `m`: tabled
//! highest weights, dimension and Casimir formulas, generating functions,
//! and verification of the tabled identities against the engines.
//!
//! Tables live in versioned TOML files under `data/`, compiled in and
//! overridable from a directory at run time.

pub mod expr;
pub mod formulas;
pub mod gf;
pub mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rational::{Q, fmt_q, parse_q};
use crate::rootsys::{RootSystem, Weight};
use expr::{RoleRef, orbit};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesId {
    Exceptional,
    Subexceptional,
    Severi,
    SeveriSection,
    Scorza,
    Osp,
    Sl,
}

impl SeriesId {
    pub const ALL: [SeriesId; 7] = [
        SeriesId::Exceptional,
        SeriesId::Subexceptional,
        SeriesId::Severi,
        SeriesId::SeveriSection,
        SeriesId::Scorza,
        SeriesId::Osp,
        SeriesId::Sl,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SeriesId::Exceptional => "exceptional",
            SeriesId::Subexceptional => "subexceptional",
            SeriesId::Severi => "severi",
            SeriesId::SeveriSection => "severi_section",
            SeriesId::Scorza => "scorza",
            SeriesId::Osp => "osp",
            SeriesId::Sl => "sl",
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeriesId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        SeriesId::ALL
            .into_iter()
            .find(|id| id.as_str() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown series `{s}`")))
    }
}

/// Whether an identity asserts equality or only containment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Exact,
    Contains,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnSpec {
    pub label: String,
    pub m: String,
    pub algebra: String,
    #[serde(default)]
    pub roles: BTreeMap<String, Vec<String>>,
    /// Roles that are zero in this column.
    #[serde(default)]
    pub absent: Vec<String>,
    /// Why the column sits outside the generic pattern, when it does.
    /// Mismatches in such a column are reported as open questions.
    #[serde(default)]
    pub degenerate: Option<String>,
    /// Roles as originally printed, for those `roles` corrects.
    #[serde(default)]
    pub printed: BTreeMap<String, Vec<String>>,
    /// Roles spanning several Casimir eigenspaces in this column.
    #[serde(default)]
    pub composite: Vec<String>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaSpec {
    /// Role expression; `{k}` is replaced by each value of `k`.
    pub role: String,
    #[serde(default)]
    pub k: Vec<i64>,
    #[serde(default)]
    pub dim: Option<String>,
    #[serde(default)]
    pub casimir: Option<String>,
    /// Dimension formula as originally printed, when `dim` corrects it.
    #[serde(default)]
    pub printed_dim: Option<String>,
    pub anchor: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentitySpec {
    pub id: String,
    pub anchor: String,
    pub lhs: String,
    pub rhs: String,
    /// Right side as originally printed, when `rhs` corrects a misprint.
    #[serde(default)]
    pub printed: Option<String>,
    /// Right sides replacing `rhs` in particular columns, where generic
    /// terms coincide or vanish.
    #[serde(default)]
    pub column_rhs: BTreeMap<String, String>,
    #[serde(default)]
    pub mode: Mode,
    /// Column labels the identity applies to; all columns when absent.
    #[serde(default)]
    pub columns: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GfSpec {
    pub id: String,
    pub anchor: String,
    /// Expression in `t` and role names.
    pub expr: String,
    /// Role whose symmetric powers the series claims to describe.
    #[serde(default = "default_base")]
    pub base: String,
    /// Expand role atoms by representatives and sum over the diagram
    /// symmetry group afterwards.
    #[serde(default)]
    pub symmetrize: bool,
    /// Truncation degree per column label, with `default` as fallback.
    pub degrees: BTreeMap<String, u32>,
    #[serde(default)]
    pub columns: Option<Vec<String>>,
}

fn default_base() -> String {
    "V".into()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub format_version: u32,
    pub series: SeriesId,
    /// How node indices are numbered in this file.
    pub numbering: String,
    /// Role whose marking defines the symmetry group of each column.
    #[serde(default)]
    pub marking_role: Option<String>,
    /// Common denominator of every Casimir eigenvalue, as a formula in `m`.
    #[serde(default)]
    pub casimir_denominator: Option<String>,
    #[serde(rename = "column")]
    pub columns: Vec<ColumnSpec>,
    #[serde(default, rename = "formula")]
    pub formulas: Vec<FormulaSpec>,
    #[serde(default, rename = "identity")]
    pub identities: Vec<IdentitySpec>,
    #[serde(default, rename = "generating_function")]
    pub generating_functions: Vec<GfSpec>,
}

impl SeriesFile {
    pub fn parse(src: &str) -> Result<Self> {
        let f: SeriesFile = toml::from_str(src).map_err(|e| Error::Parse(format!("series data: {e}")))?;
        if f.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "series data format {} is not supported (expected {FORMAT_VERSION})",
                f.format_version
            )));
        }
        Ok(f)
    }
}

/// One signed, tagged weight in a role as written in a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleTerm {
    pub weight: Weight,
    pub coeff: i128,
    /// Tensored with the two-dimensional irreducible representation of the
    /// symmetric group permuting the factors.
    pub rho: bool,
}

impl fmt::Display for RoleTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coeff {
            1 => {}
            -1 => f.write_str("-")?,
            c => write!(f, "{c}*")?,
        }
        write!(f, "{}", self.weight)?;
        if self.rho {
            f.write_str(" rho")?;
        }
        Ok(())
    }
}

impl FromStr for RoleTerm {
    type Err = Error;
    /// `[0,0,1]`, `-[4]`, `2*[1,0]`, `[1,1,1] rho`.
    fn from_str(s: &str) -> Result<Self> {
        let mut rest = s.trim();
        let mut coeff: i128 = 1;
        if let Some(r) = rest.strip_prefix('-') {
            coeff = -1;
            rest = r.trim_start();
        }
        if let Some((n, r)) = rest.split_once('*') {
            let n: i128 = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad role term `{s}`")))?;
            coeff *= n;
            rest = r.trim_start();
        }
        let (w, tag) = match rest.find(']') {
            Some(i) => (&rest[..=i], rest[i + 1..].trim()),
            None => return Err(Error::Parse(format!("bad role term `{s}`"))),
        };
        let rho = match tag {
            "" => false,
            "rho" => true,
            other => return Err(Error::Parse(format!("unknown tag `{other}` in `{s}`"))),
        };
        Ok(RoleTerm {
            weight: w.parse()?,
            coeff,
            rho,
        })
    }
}

/// A column of a series table: one algebra at one value of `m`, with the
/// highest weights of its named roles.
#[derive(Clone, Debug)]
pub struct SeriesEntry {
    pub series: SeriesId,
    pub label: String,
    pub m: Q,
    pub root_system: Arc<RootSystem>,
    /// Diagram automorphisms fixing the marking (all group elements).
    pub symmetry: Vec<Vec<usize>>,
    /// Terms as written, before orbit expansion.
    pub written: BTreeMap<String, Vec<RoleTerm>>,
    /// Roles expanded over symmetry orbits, as weight multiplicities.
    pub roles: BTreeMap<String, BTreeMap<Weight, i128>>,
    pub absent: Vec<String>,
    pub degenerate: Option<String>,
    pub printed: BTreeMap<String, Vec<String>>,
    pub composite: Vec<String>,
}

impl SeriesEntry {
    fn build(series: SeriesId, spec: &ColumnSpec, marking_role: Option<&str>) -> Result<Self> {
        let rs = Arc::new(RootSystem::from_str_type(&spec.algebra)?);
        let m = parse_q(&spec.m)?;
        let mut written = BTreeMap::new();
        for (name, terms) in &spec.roles {
            let parsed: Vec<RoleTerm> = terms.iter().map(|t| t.parse()).collect::<Result<_>>()?;
            for t in &parsed {
                rs.check(&t.weight)?;
            }
            written.insert(name.clone(), parsed);
        }
        let symmetry = match marking_role {
            Some(r) => {
                let terms: &Vec<RoleTerm> = written.get(r).ok_or_else(|| Error::UnknownRole {
                    role: r.to_string(),
                    algebra: spec.algebra.clone(),
                })?;
                let [t] = terms.as_slice() else {
                    return Err(Error::Precondition(format!(
                        "marking role {r} of column {} must be a single weight",
                        spec.label
                    )));
                };
                rs.diagram_automorphisms()
                    .into_iter()
                    .filter(|p| t.weight.permuted(p) == t.weight)
                    .collect()
            }
            None => vec![(0..rs.rank()).collect()],
        };
        let mut roles = BTreeMap::new();
        for (name, terms) in &written {
            let mut expanded: BTreeMap<Weight, i128> = BTreeMap::new();
            for t in terms {
                let c = t.coeff * if t.rho { 2 } else { 1 };
                for img in orbit(&t.weight, &symmetry) {
                    match expanded.get(&img) {
                        // a mirror listed explicitly next to its partner
                        Some(&old) if old == c => {}
                        Some(_) => {
                            return Err(Error::Parse(format!(
                                "role {name} of column {} lists {img} with conflicting coefficients",
                                spec.label
                            )))
                        }
                        None => {
                            expanded.insert(img, c);
                        }
                    }
                }
            }
            roles.insert(name.clone(), expanded);
        }
        Ok(SeriesEntry {
            series,
            label: spec.label.clone(),
            m,
            root_system: rs,
            symmetry,
            written,
            roles,
            absent: spec.absent.clone(),
            degenerate: spec.degenerate.clone(),
            composite: spec.composite.clone(),
            printed: spec.printed.clone(),
        })
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn m_str(&self) -> String {
        fmt_q(&self.m)
    }

    pub fn has_role(&self, name: &str) -> bool {
        self.roles.contains_key(name)
    }

    fn base_terms(&self, name: &str, representative: bool) -> Result<Vec<(Weight, i128)>> {
        if representative {
            if let Some(terms) = self.written.get(name) {
                return Ok(terms
                    .iter()
                    .map(|t| (t.weight.clone(), t.coeff * if t.rho { 2 } else { 1 }))
                    .collect());
            }
        } else if let Some(r) = self.roles.get(name) {
            return Ok(r.iter().map(|(w, &c)| (w.clone(), c)).collect());
        }
        if self.absent.iter().any(|a| a == name) {
            return Ok(Vec::new());
        }
        Err(Error::UnknownRole {
            role: name.to_string(),
            algebra: format!("{} ({} column {})", self.root_system.algebra_type(), self.series, self.label),
        })
    }

    /// Weight combination of `name^(k)` (Cartan power over multisets of
    /// role members), optionally dualized. With `representative` the role is
    /// taken as written, without orbit expansion.
    pub fn resolve(&self, r: &RoleRef, representative: bool) -> Result<Vec<(Weight, i128)>> {
        let base = self.base_terms(&r.name, representative)?;
        // unit entries: |c| copies of (w, sign c)
        let units: Vec<(Weight, i128)> = base
            .iter()
            .flat_map(|(w, c)| std::iter::repeat_n((w.clone(), c.signum()), c.unsigned_abs() as usize))
            .collect();
        let mut acc: BTreeMap<Weight, i128> = BTreeMap::new();
        let k = r.power as usize;
        let mut idx = vec![0usize; k];
        if k == 0 {
            acc.insert(Weight::zero(self.rank()), 1);
        } else if !units.is_empty() {
            // nondecreasing index sequences = multisets of size k
            loop {
                let mut w = Weight::zero(self.rank());
                let mut s = 1i128;
                for &i in &idx {
                    w = &w + &units[i].0;
                    s *= units[i].1;
                }
                *acc.entry(w).or_insert(0) += s;
                let mut j = k;
                while j > 0 && idx[j - 1] == units.len() - 1 {
                    j -= 1;
                }
                if j == 0 {
                    break;
                }
                idx[j - 1] += 1;
                let v = idx[j - 1];
                for x in &mut idx[j..] {
                    *x = v;
                }
            }
        }
        let rs = &self.root_system;
        Ok(acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(w, c)| if r.dual { (rs.dual(&w), c) } else { (w, c) })
            .collect())
    }
}

/// All series tables: the parsed files plus their resolved columns.
#[derive(Clone, Debug)]
pub struct SeriesCatalog {
    pub files: BTreeMap<SeriesId, SeriesFile>,
    pub entries: BTreeMap<SeriesId, Vec<SeriesEntry>>,
    pub vogel: formulas::VogelData,
}

const BUILTIN: [(&str, &str); 4] = [
    ("exceptional.toml", include_str!("../../data/exceptional.toml")),
    ("subexceptional.toml", include_str!("../../data/subexceptional.toml")),
    ("severi.toml", include_str!("../../data/severi.toml")),
    ("severi_section.toml", include_str!("../../data/severi_section.toml")),
];
const BUILTIN_VOGEL: &str = include_str!("../../data/vogel_lines.toml");

impl SeriesCatalog {
    /// The tables compiled into the library.
    pub fn builtin() -> Result<Self> {
        let files = BUILTIN.iter().map(|(_, s)| s.to_string()).collect();
        Self::from_sources(files, BUILTIN_VOGEL)
    }

    /// Tables read from `dir`, falling back to the compiled-in copy for
    /// every file the directory does not provide.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str, fallback: &str| -> Result<String> {
            let p = dir.join(name);
            if p.exists() {
                std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
            } else {
                Ok(fallback.to_string())
            }
        };
        let files = BUILTIN
            .iter()
            .map(|(name, s)| read(name, s))
            .collect::<Result<Vec<_>>>()?;
        let vogel = read("vogel_lines.toml", BUILTIN_VOGEL)?;
        Self::from_sources(files, &vogel)
    }

    fn from_sources(files: Vec<String>, vogel: &str) -> Result<Self> {
        let mut out = SeriesCatalog {
            files: BTreeMap::new(),
            entries: BTreeMap::new(),
            vogel: formulas::VogelData::parse(vogel)?,
        };
        for src in files {
            let f = SeriesFile::parse(&src)?;
            let entries = f
                .columns
                .iter()
                .map(|c| SeriesEntry::build(f.series, c, f.marking_role.as_deref()))
                .collect::<Result<Vec<_>>>()?;
            out.entries.insert(f.series, entries);
            out.files.insert(f.series, f);
        }
        Ok(out)
    }

    pub fn file(&self, s: SeriesId) -> Result<&SeriesFile> {
        self.files
            .get(&s)
            .ok_or_else(|| Error::Precondition(format!("no table for series {s}")))
    }

    pub fn entries(&self, s: SeriesId) -> &[SeriesEntry] {
        self.entries.get(&s).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The column of `s` at parameter `m`.
    pub fn entry(&self, s: SeriesId, m: &Q) -> Result<&SeriesEntry> {
        self.entries(s)
            .iter()
            .find(|e| &e.m == m)
            .ok_or_else(|| Error::Precondition(format!("series {s} has no column at m = {}", fmt_q(m))))
    }

    pub fn entry_by_label(&self, s: SeriesId, label: &str) -> Result<&SeriesEntry> {
        self.entries(s)
            .iter()
            .find(|e| e.label == label)
            .ok_or_else(|| Error::Precondition(format!("series {s} has no column {label}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn role_terms_parse() {
        let t: RoleTerm = "-[4]".parse().unwrap();
        assert_eq!((t.weight, t.coeff, t.rho), (w("[4]"), -1, false));
        let t: RoleTerm = "[1,1,1] rho".parse().unwrap();
        assert!(t.rho);
        let t: RoleTerm = "2*[1,0|0,1]".parse().unwrap();
        assert_eq!((t.weight.len(), t.coeff), (4, 2));
        assert!("[1,0] tau".parse::<RoleTerm>().is_err());
    }

    #[test]
    fn builtin_tables_load() {
        let c = SeriesCatalog::builtin().unwrap();
        let sub = c.entries(SeriesId::Subexceptional);
        assert_eq!(sub.len(), 6);
        let a13 = c.entry(SeriesId::Subexceptional, &qi(0)).unwrap();
        // the symmetric group permuting the three factors
        assert_eq!(a13.symmetry.len(), 6);
        assert_eq!(a13.roles["g"].len(), 3);
        assert_eq!(a13.roles["C"][&w("[1,1,1]")], 2);
        let a5 = c.entry(SeriesId::Subexceptional, &qi(2)).unwrap();
        assert_eq!(a5.symmetry.len(), 2);
        let d6 = c.entry(SeriesId::Subexceptional, &qi(4)).unwrap();
        assert_eq!(d6.symmetry.len(), 1);
        let g2 = c.entry(SeriesId::Subexceptional, &q(-2, 3)).unwrap();
        assert_eq!(g2.label, "A1");
    }

    #[test]
    fn cartan_powers_count_multisets() {
        let c = SeriesCatalog::builtin().unwrap();
        let a13 = c.entry(SeriesId::Subexceptional, &qi(0)).unwrap();
        let r = RoleRef {
            name: "g".into(),
            power: 2,
            dual: false,
        };
        let v = a13.resolve(&r, false).unwrap();
        // S^2 of three generators: 3 squares and 3 mixed products
        assert_eq!(v.len(), 6);
        assert!(v.iter().all(|(_, c)| *c == 1));
        let rep = a13.resolve(&RoleRef { power: 1, ..r }, true).unwrap();
        assert_eq!(rep, vec![(w("[2,0,0]"), 1)]);
    }

    #[test]
    fn absent_and_unknown_roles() {
        let c = SeriesCatalog::builtin().unwrap();
        let a1 = c.entry_by_label(SeriesId::Subexceptional, "A1").unwrap();
        let r = |n: &str| RoleRef {
            name: n.into(),
            power: 1,
            dual: false,
        };
        assert!(a1.resolve(&r("V3"), false).unwrap().is_empty());
        assert!(matches!(a1.resolve(&r("Zzz"), false), Err(Error::UnknownRole { .. })));
    }
}
