//! The acceptance gate. Every criterion prints one PASS/FAIL line; the
//! ledger criterion prints its records and never fails.

use std::collections::BTreeMap;
use std::io::Write;

use lieseries::rational::{Q, q, qi};
use lieseries::series::SeriesCatalog;
use lieseries::series::formulas::{magic_dim, magic_dim_pq, vogel_dim_g};
use lieseries::series::verify::Budget;
use lieseries::suites::{SuiteParams, run_all};
use lieseries::{CheckRecord, Status};

struct Outcome {
    pass: bool,
    detail: String,
}

/// Records keyed by suite name, from one default-budget run.
fn run() -> BTreeMap<String, Vec<CheckRecord>> {
    let cat = SeriesCatalog::builtin().unwrap();
    run_all(&cat, &SuiteParams::default(), &Budget::default())
        .into_iter()
        .map(|r| (r.suite, r.records))
        .collect()
}

fn suite<'a>(all: &'a BTreeMap<String, Vec<CheckRecord>>, name: &str) -> &'a [CheckRecord] {
    all.get(name).map(Vec::as_slice).unwrap_or_else(|| panic!("suite {name} did not run"))
}

/// Passes when at least `min` records satisfy `want` and every one of them
/// matched, and no record in the scanned slices is a diff.
fn gate<'a>(
    scanned: impl IntoIterator<Item = &'a [CheckRecord]>,
    min: usize,
    want: impl Fn(&CheckRecord) -> bool,
) -> Outcome {
    let mut required = 0;
    let mut bad = Vec::new();
    let mut diffs = 0;
    for recs in scanned {
        for r in recs {
            if r.status == Status::Diff {
                diffs += 1;
                bad.push(format!("{} diff", r.id));
            } else if want(r) {
                required += 1;
                if r.status != Status::Match {
                    bad.push(format!("{} {}", r.id, r.status));
                }
            }
        }
    }
    let pass = required >= min && bad.is_empty();
    let mut detail = format!("{required} required records, {diffs} diffs");
    if required < min {
        detail.push_str(&format!(", expected at least {min}"));
    }
    if !bad.is_empty() {
        detail.push_str(&format!("; {}", bad.join(", ")));
    }
    Outcome { pass, detail }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Outcome {
        pass: a.pass && b.pass,
        detail: format!("{}; {}", a.detail, b.detail),
    }
}

fn fact(pass: bool, what: &str) -> Outcome {
    Outcome {
        pass,
        detail: what.to_string(),
    }
}

/// Column label of a series record id such as `subexceptional/C3/ext2`.
fn column(r: &CheckRecord) -> &str {
    r.id.split('/').nth(1).unwrap_or("")
}

fn degree_suffix(r: &CheckRecord, prefix: &str) -> Option<u32> {
    r.id.rsplit('/').next()?.strip_prefix(prefix)?.parse().ok()
}

fn vogel_dimension(all: &BTreeMap<String, Vec<CheckRecord>>) -> Outcome {
    // Exceptional line with alpha = -2: beta = m + 4, gamma = 2m + 4.
    let ms = [q(-2, 3), qi(0), qi(1), qi(2), qi(4), qi(8)];
    let dims: Vec<Q> = ms
        .iter()
        .map(|m| vogel_dim_g(&(m + qi(4)), &(qi(2) * m + qi(4))).unwrap())
        .collect();
    let expected: Vec<Q> = [14, 28, 52, 78, 133, 248].into_iter().map(qi).collect();
    let direct = fact(dims == expected, "exceptional line gives 14, 28, 52, 78, 133, 248");
    let recs = suite(all, "vogel-dim");
    let rows = gate([recs], 34, |_| true);
    let closed = ["vogel/sl/closed-form", "vogel/osp/closed-form"]
        .iter()
        .all(|id| recs.iter().any(|r| r.id == *id && r.status == Status::Match));
    both(both(direct, rows), fact(closed, "sl and osp lines simplify to m^2-1 and m(m-1)/2"))
}

fn magic_square(all: &BTreeMap<String, Vec<CheckRecord>>) -> Outcome {
    let div = [1, 2, 4, 8];
    let agree = div.iter().all(|&a| {
        div.iter().all(|&b| {
            magic_dim(&qi(a), &qi(b)).unwrap() == magic_dim_pq(&qi(a + 4), &qi(b + 4)).unwrap()
        })
    });
    let known = [((1, 1), 3), ((2, 2), 16), ((4, 4), 66), ((8, 8), 248), ((4, 8), 133)]
        .iter()
        .all(|&((a, b), d)| magic_dim(&qi(a), &qi(b)).unwrap() == qi(d));
    let table = gate([suite(all, "magic-square")], 16, |_| true);
    both(
        both(fact(agree, "both forms agree on all 16 points"), fact(known, "diagonal and (4,8) dimensions")),
        table,
    )
}

fn vogel_decompositions(all: &BTreeMap<String, Vec<CheckRecord>>) -> Outcome {
    let sub = gate([suite(all, "subexceptional")], 10, |r| {
        matches!(column(r), "C3" | "A5")
            && ["vogel-ext2-g", "vogel-sym2-g", "vogel-ext3-g", "vogel-sym3-g", "vogel-schur21-g"]
                .iter()
                .any(|s| r.id.ends_with(s))
    });
    let exc = gate([suite(all, "exceptional")], 4, |r| {
        matches!(column(r), "F4" | "E6") && (r.id.ends_with("vogel-ext2-g") || r.id.ends_with("vogel-sym2-g"))
    });
    both(sub, exc)
}

fn subexceptional(all: &BTreeMap<String, Vec<CheckRecord>>) -> Outcome {
    let recs = suite(all, "subexceptional");
    let small = |c: &str| matches!(c, "A1" | "A1xA1xA1" | "C3" | "A5");
    // Seven roles in six columns; Q and L are absent from the A1 column.
    let dims = gate([recs], 7 * 6 - 2, |r| r.anchor.starts_with("subexceptional.dim-"));
    let casimirs = gate([recs], 4 * 6, |r| {
        r.anchor == "subexceptional.casimir-Vk" || r.anchor == "subexceptional.casimir-cartan-power-V"
    });
    let exterior = gate([recs], 4 * 4 + 2 * 2, |r| {
        r.anchor == "subexceptional.primitive-exterior"
            && degree_suffix(r, "ext").is_some_and(|k| k <= if small(column(r)) { 5 } else { 3 })
    });
    let schur = gate([recs], 8, |r| {
        matches!(column(r), "C3" | "A5")
            && ["schur21", "schur31", "schur22", "schur211"].iter().any(|s| r.id.ends_with(&format!("/{s}")))
    });
    let tensors = gate([recs], 2 * 17, |r| {
        matches!(column(r), "C3" | "A5") && r.anchor == "subexceptional.tensor-list" && !r.id.ends_with("/as-printed")
    });
    let spot = gate([recs], 3, |r| {
        column(r) == "D6" && r.anchor == "subexceptional.tensor-list" && !r.id.ends_with("/as-printed")
    });
    let covariants = gate([recs], 2 * 6 + 2 * 5, |r| {
        r.anchor == "subexceptional.covariant-algebra"
            && degree_suffix(r, "degree").is_some_and(|k| k <= if small(column(r)) { 5 } else { 4 })
    });
    let cubics = gate([recs], 7, |r| r.anchor == "subexceptional.binary-cubics");
    [casimirs, exterior, schur, tensors, spot, covariants, cubics].into_iter().fold(dims, both)
}

fn hypermatrices(all: &BTreeMap<String, Vec<CheckRecord>>) -> Outcome {
    let mu = gate([suite(all, "mu-lemma")], 9, |_| true);
    let phi = gate([suite(all, "hypermatrix")], 9, |r| r.id.starts_with("hypermatrix/phi-vs-cauchy/"));
    both(mu, phi)
}

fn sl2_so(all: &BTreeMap<String, Vec<CheckRecord>>) -> Outcome {
    gate([suite(all, "sl2-so")], 3 * 6, |_| true)
}

fn severi(all: &BTreeMap<String, Vec<CheckRecord>>) -> Outcome {
    let recs = suite(all, "severi");
    let ext = gate([recs], 4 * 5, |r| r.anchor == "severi.exterior-powers" && r.id.contains("/ext"));
    let gf = gate([recs], 4 * 6, |r| r.anchor == "severi.covariant-algebra");
    let formulas = gate([recs], 4 * 3 + 8, |r| {
        matches!(r.anchor.as_str(), "severi.dim-V" | "severi.dim-g" | "severi.casimir-denominator")
            || r.anchor == "severi.dim-J" && !r.id.ends_with("/as-printed")
    });
    let j_vanishes = recs
        .iter()
        .any(|r| r.id == "severi/E6/dim-J" && r.status == Status::Match && r.left == "0");
    let aad = gate([suite(all, "severi-aad")], 4, |_| true);
    let schur = gate([recs], 3 * 4, |r| {
        matches!(column(r), "A2" | "A2xA2" | "A5")
            && ["schur21", "schur31", "schur22", "schur211"].iter().any(|s| r.id.ends_with(&format!("/{s}")))
    });
    [gf, formulas, fact(j_vanishes, "dim J = 0 at m = 8"), aad, schur].into_iter().fold(ext, both)
}

fn severi_section(all: &BTreeMap<String, Vec<CheckRecord>>) -> Outcome {
    let recs = suite(all, "severi-section");
    let ext2 = gate([recs], 4, |r| r.anchor == "severi-section.lambda2-V");
    let gf = gate([recs], 7 * 3, |r| r.anchor == "severi-section.covariant-algebra");
    // The in-table sl3 expansion stops at the default degree budget; the
    // standalone sl3 suite carries it to degree eight.
    let sl3 = gate([suite(all, "sl3")], 9, |r| degree_suffix(r, "degree").is_some_and(|k| k <= 8));
    [gf, sl3].into_iter().fold(ext2, both)
}

fn extremal(all: &BTreeMap<String, Vec<CheckRecord>>) -> Outcome {
    let recs = suite(all, "extremal");
    let dichotomy = gate([recs], 40, |r| r.anchor == "extremal.minuscule-dichotomy");
    let e67 = ["dichotomy/E6/", "dichotomy/E7/"]
        .iter()
        .all(|p| recs.iter().any(|r| r.id.starts_with(p) && r.status == Status::Match));
    let components = gate([recs], 100, |r| {
        r.anchor == "extremal.minuscule-components" || r.anchor == "extremal.chain-components"
    });
    let adjoint = gate([recs], 15, |r| r.anchor == "extremal.adjoint-theta");
    let v2 = gate([recs], 27, |r| r.anchor == "extremal.v2-irreducible");
    [fact(e67, "E6 and E7 minuscule cases present"), components, adjoint, v2]
        .into_iter()
        .fold(dichotomy, both)
}

fn engine(all: &BTreeMap<String, Vec<CheckRecord>>) -> Outcome {
    let recs = suite(all, "engine");
    let mut out = gate([recs], 100, |_| true);
    for anchor in [
        "engine.freudenthal-kostant",
        "engine.schur-reconstitution",
        "engine.tensor-laws",
        "engine.lr-tensor",
        "engine.dimension-conservation",
    ] {
        out = both(out, fact(recs.iter().any(|r| r.anchor == anchor), anchor));
    }
    out
}

/// Writes past the test harness capture so the verdicts land in the log of
/// a plain `cargo test` run.
fn say(line: &str) {
    writeln!(std::io::stderr().lock(), "{line}").unwrap();
}

fn print_ledger(all: &BTreeMap<String, Vec<CheckRecord>>) {
    for name in ["quadric-casimir", "normalization"] {
        for r in suite(all, name) {
            say(&format!("  ledger {} {} | {} | {} {}", r.status, r.id, r.left, r.right, r.detail.as_deref().unwrap_or("")));
        }
    }
}

#[test]
fn acceptance_criteria() {
    let all = run();
    let criteria: [(&str, fn(&BTreeMap<String, Vec<CheckRecord>>) -> Outcome); 10] = [
        ("vogel dimension formula on every line", vogel_dimension),
        ("magic-square dimension formulas", magic_square),
        ("vogel decompositions of C3, A5, F4, E6", vogel_decompositions),
        ("subexceptional series tables", subexceptional),
        ("multiplicity lemma and hypermatrix products", hypermatrices),
        ("sl2 x so(n) generating functions", sl2_so),
        ("severi series tables", severi),
        ("severi-section tables and sl3", severi_section),
        ("extremal components and dichotomy", extremal),
        ("engine self-consistency", engine),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check(&all);
        say(&format!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail));
        if !o.pass {
            failed.push(i + 1);
        }
    }
    say("INFO 11 open-question ledger (not pass/fail)");
    print_ledger(&all);
    assert!(!suite(&all, "normalization").is_empty());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
