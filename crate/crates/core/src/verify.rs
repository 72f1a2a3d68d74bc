//! Cross-route reconciliation: every count is computed at least two
//! independent ways (enumeration, closed form, series coefficient, reference
//! data) and the results are compared exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::count_table::CountTable;
use crate::error::Result;
use crate::formulas::{b_closed, count_dist_closed, dist_rank_count, dist_rank_count_lagrange, dist_total, fuss3};
use crate::invseq::{count_table, enumerate_avoiding, remark_dedup, InversionSequence, PatternWord, StatFilter};
use crate::lattice::{eta, eta_inv, simple_h_counts, visit_labeled_f, weighted_h_counts, PathClass};
use crate::oeis::{compare, default_cache_dir, Client, OffsetPolicy};
use crate::series::{
    builtin_minpolys, rank_gf_coeffs, solve_e, specialize, Bounds, Subst, Support, TruncatedSeries, Var,
};

/// Counts of (102,000)-avoiders of length `n` (rows 1..=16) with `m`
/// distinct entries (columns 1..=8).
pub const REFERENCE_COUNTS: [[u64; 8]; 16] = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0],
    [0, 4, 1, 0, 0, 0, 0, 0],
    [0, 4, 9, 1, 0, 0, 0, 0],
    [0, 0, 23, 16, 1, 0, 0, 0],
    [0, 0, 19, 76, 25, 1, 0, 0],
    [0, 0, 0, 146, 190, 36, 1, 0],
    [0, 0, 0, 101, 630, 400, 49, 1],
    [0, 0, 0, 0, 972, 2010, 749, 64],
    [0, 0, 0, 0, 576, 5160, 5285, 1288],
    [0, 0, 0, 0, 0, 6658, 19943, 12124],
    [0, 0, 0, 0, 0, 3445, 41895, 62650],
    [0, 0, 0, 0, 0, 0, 46475, 189784],
    [0, 0, 0, 0, 0, 0, 21323, 337876],
    [0, 0, 0, 0, 0, 0, 0, 328786],
    [0, 0, 0, 0, 0, 0, 0, 135439],
];

/// Column totals over all lengths, `m = 1..=8`.
pub const REFERENCE_TOTALS: [u64; 8] = [2, 9, 52, 340, 2394, 17710, 135720, 1068012];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity being checked, in words.
    pub identity: String,
    pub status: Status,
    pub lhs_summary: String,
    pub rhs_summary: String,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn status(&self) -> Status {
        if self.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// `{"status": .., "checks": [..]}`. Timing is dropped unless asked for,
    /// so equal configurations give byte-identical output.
    pub fn to_json(&self, with_elapsed: bool) -> serde_json::Value {
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = serde_json::to_value(c).expect("plain data");
                if !with_elapsed {
                    v.as_object_mut().expect("struct").remove("elapsed_ms");
                }
                v
            })
            .collect();
        serde_json::json!({ "status": self.status(), "checks": checks })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Longest sequence length compared against the reference grid (<= 16).
    pub table_n_max: usize,
    /// Longest sequence length enumerated by brute force.
    pub brute_n_max: usize,
    pub eta_n_max: usize,
    pub weighted_n_max: usize,
    /// Longest simple H-path semilength enumerated.
    pub simple_n_max: usize,
    pub class_b_n_max: usize,
    pub remark_m_max: usize,
    pub minpoly_bounds: Bounds,
    pub fuss_m_max: i64,
    pub rank_m_max: i64,
    pub offline: bool,
    pub cache_dir: PathBuf,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            table_n_max: 16,
            brute_n_max: 11,
            eta_n_max: 5,
            weighted_n_max: 7,
            simple_n_max: 9,
            class_b_n_max: 8,
            remark_m_max: 6,
            minpoly_bounds: Bounds::new(14, 8, 8),
            fuss_m_max: 12,
            rank_m_max: 20,
            offline: true,
            cache_dir: default_cache_dir(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Table1,
    Bijections,
    Minpoly,
    ClosedForms,
    Oeis,
}

impl Group {
    pub const ALL: [Group; 5] = [
        Group::Table1,
        Group::Bijections,
        Group::Minpoly,
        Group::ClosedForms,
        Group::Oeis,
    ];
}

struct Outcome {
    pass: bool,
    lhs: String,
    rhs: String,
}

impl Outcome {
    fn error(e: impl std::fmt::Display) -> Self {
        Self {
            pass: false,
            lhs: format!("error: {e}"),
            rhs: String::new(),
        }
    }
}

type Runner = Box<dyn Fn(&Shared) -> Outcome + Send + Sync>;

struct Spec {
    group: Group,
    name: &'static str,
    identity: String,
    run: Runner,
}

fn spec(
    group: Group,
    name: &'static str,
    identity: impl Into<String>,
    run: impl Fn(&Shared) -> Outcome + Send + Sync + 'static,
) -> Spec {
    Spec {
        group,
        name,
        identity: identity.into(),
        run: Box::new(run),
    }
}

// Expensive inputs shared by several checks, computed before the parallel
// section so no check blocks on another.
#[derive(Default)]
struct Shared {
    e_table: Option<Result<TruncatedSeries>>,
    e_brute: Option<Result<TruncatedSeries>>,
    avoiders: Option<CountTable>,
}

impl Shared {
    fn e_table(&self) -> std::result::Result<&TruncatedSeries, Outcome> {
        match self.e_table.as_ref().expect("prepared") {
            Ok(e) => Ok(e),
            Err(err) => Err(Outcome::error(err)),
        }
    }

    fn e_brute(&self) -> std::result::Result<&TruncatedSeries, Outcome> {
        match self.e_brute.as_ref().expect("prepared") {
            Ok(e) => Ok(e),
            Err(err) => Err(Outcome::error(err)),
        }
    }
}

// Compares two maps key by key; missing keys count as zero.
fn compare_maps<K: Ord + Debug + Clone>(
    lhs_label: &str,
    lhs: &BTreeMap<K, BigInt>,
    rhs_label: &str,
    rhs: &BTreeMap<K, BigInt>,
) -> Outcome {
    let keys: BTreeSet<&K> = lhs.keys().chain(rhs.keys()).collect();
    let zero = BigInt::zero();
    let mismatch = keys
        .into_iter()
        .find(|k| lhs.get(*k).unwrap_or(&zero) != rhs.get(*k).unwrap_or(&zero));
    let total = |m: &BTreeMap<K, BigInt>| m.values().sum::<BigInt>();
    let nonzero = |m: &BTreeMap<K, BigInt>| m.values().filter(|v| !v.is_zero()).count();
    match mismatch {
        None => Outcome {
            pass: true,
            lhs: format!("{lhs_label}: {} nonzero cells, total {}", nonzero(lhs), total(lhs)),
            rhs: format!("{rhs_label}: {} nonzero cells, total {}", nonzero(rhs), total(rhs)),
        },
        Some(k) => Outcome {
            pass: false,
            lhs: format!("{lhs_label}: {:?} = {}", k, lhs.get(k).unwrap_or(&zero)),
            rhs: format!("{rhs_label}: {:?} = {}", k, rhs.get(k).unwrap_or(&zero)),
        },
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn p102_000() -> Vec<PatternWord> {
    vec![PatternWord::p102(), PatternWord::p000()]
}

fn table_fixture(n_max: usize) -> BTreeMap<(u32, u32), BigInt> {
    let mut out = BTreeMap::new();
    for (i, row) in REFERENCE_COUNTS.iter().enumerate().take(n_max.min(16)) {
        for (j, &v) in row.iter().enumerate() {
            out.insert((i as u32 + 1, j as u32 + 1), big(v));
        }
    }
    out
}

fn try_map<K: Ord>(
    items: impl IntoIterator<Item = Result<(K, BigInt)>>,
) -> std::result::Result<BTreeMap<K, BigInt>, Outcome> {
    items
        .into_iter()
        .collect::<Result<BTreeMap<_, _>>>()
        .map_err(Outcome::error)
}

fn table1_specs(cfg: &VerifyConfig) -> Vec<Spec> {
    let n_max = cfg.table_n_max.min(16);
    let brute = cfg.brute_n_max.min(n_max);
    let g = Group::Table1;
    vec![
        spec(
            g,
            "table1.closed-form",
            format!("closed-form count by length and dist equals the reference grid, n <= {n_max}"),
            move |_| {
                let closed =
                    match try_map((1..=n_max as i64).flat_map(|n| {
                        (1..=8i64).map(move |m| count_dist_closed(n, m).map(|v| ((n as u32, m as u32), v)))
                    })) {
                        Ok(v) => v,
                        Err(o) => return o,
                    };
                compare_maps("closed form", &closed, "reference", &table_fixture(n_max))
            },
        ),
        spec(
            g,
            "table1.series",
            format!("sum over t of [x^n y^m z^t] E equals the reference grid, n <= {n_max}"),
            move |sh| {
                let e = match sh.e_table() {
                    Ok(e) => e,
                    Err(o) => return o,
                };
                let mut series = BTreeMap::new();
                for n in 1..=n_max as u32 {
                    for m in 1..=8u32 {
                        series.insert((n, m), (0..=m).map(|t| e.coeff(n, m, t)).sum::<BigInt>());
                    }
                }
                compare_maps("series", &series, "reference", &table_fixture(n_max))
            },
        ),
        spec(
            g,
            "table1.enumeration",
            format!("enumerated counts by length and dist equal the reference grid, n <= {brute}"),
            move |sh| {
                let table = sh.avoiders.as_ref().expect("prepared");
                let mut counted = BTreeMap::new();
                for n in 1..=brute as u32 {
                    for m in 1..=8u32 {
                        counted.insert((n, m), BigInt::zero());
                    }
                }
                for (k, v) in table.iter() {
                    let (n, m) = (k.n.unwrap(), k.m.unwrap());
                    if (1..=brute as u32).contains(&n) && (1..=8).contains(&m) {
                        *counted.get_mut(&(n, m)).unwrap() += v;
                    }
                }
                compare_maps("enumeration", &counted, "reference", &table_fixture(brute))
            },
        ),
        spec(
            g,
            "table1.totals",
            "[y^m] E(1,y,1) and the closed-form total per dist equal the reference totals, m <= 8",
            |sh| {
                let e = match sh.e_table() {
                    Ok(e) => e,
                    Err(o) => return o,
                };
                let support = Support::length_dist_rank();
                let gy = match specialize(e, &[Subst::One(Var::X), Subst::One(Var::Z)], &support) {
                    Ok(s) => s,
                    Err(err) => return Outcome::error(err),
                };
                if gy.bounds().y < 8 {
                    return Outcome::error(format!("E(1,y,1) only known to y^{}", gy.bounds().y));
                }
                let reference: BTreeMap<u32, BigInt> =
                    (1..=8).map(|m| (m, big(REFERENCE_TOTALS[m as usize - 1]))).collect();
                let from_series: BTreeMap<u32, BigInt> = (1..=8).map(|m| (m, gy.coeff(0, m, 0))).collect();
                let closed = match try_map((1..=8u32).map(|m| dist_total(m as i64).map(|v| (m, v)))) {
                    Ok(v) => v,
                    Err(o) => return o,
                };
                let a = compare_maps("series", &from_series, "reference", &reference);
                if !a.pass {
                    return a;
                }
                compare_maps("closed form", &closed, "reference", &reference)
            },
        ),
        spec(
            g,
            "enumeration.dist-rank",
            format!(
                "enumerated counts by (length, dist, rank) equal [x^n y^m z^t] E, n <= {}",
                cfg.brute_n_max
            ),
            {
                let nb = cfg.brute_n_max as u32;
                move |sh| {
                    let e = match sh.e_brute() {
                        Ok(e) => e,
                        Err(o) => return o,
                    };
                    let table = sh.avoiders.as_ref().expect("prepared");
                    let mut counted = BTreeMap::new();
                    for (k, v) in table.iter() {
                        let Some(t) = k.t else {
                            return Outcome::error(format!("rank undefined at {k:?}"));
                        };
                        counted.insert((k.n.unwrap(), k.m.unwrap(), t), v.clone());
                    }
                    let series: BTreeMap<(u32, u32, u32), BigInt> = e
                        .terms()
                        .filter(|(x, _)| x[0] <= nb)
                        .map(|(x, c)| ((x[0], x[1], x[2]), c.clone()))
                        .collect();
                    compare_maps("enumeration", &counted, "series", &series)
                }
            },
        ),
    ]
}

// Drops cells whose rank is undefined.
fn by_length_dist_rank(table: &CountTable) -> BTreeMap<(u32, u32, u32), BigInt> {
    table
        .iter()
        .filter_map(|(k, v)| Some(((k.n?, k.m?, k.t?), v.clone())))
        .collect()
}

fn bijection_specs(cfg: &VerifyConfig) -> Vec<Spec> {
    let g = Group::Bijections;
    let eta_n = cfg.eta_n_max;
    let wh_n = cfg.weighted_n_max;
    let h_n = cfg.simple_n_max;
    let b_n = cfg.class_b_n_max;
    let r_m = cfg.remark_m_max;
    vec![
        spec(g, "eta.round-trip", format!("eta_inv(eta(Q)) = Q for every labeled F-path of semilength <= {eta_n}"), move |_| {
            let mut seen = 0usize;
            let mut bad: Option<String> = None;
            for n in 0..=eta_n {
                visit_labeled_f(n, &mut |p| {
                    seen += 1;
                    if bad.is_some() {
                        return;
                    }
                    match eta_inv(&eta(p)) {
                        Ok(q) if q == *p => {}
                        Ok(q) => bad = Some(format!("{p:?} came back as {q:?}")),
                        Err(e) => bad = Some(format!("{p:?}: {e}")),
                    }
                });
            }
            match bad {
                None => Outcome { pass: true, lhs: format!("{seen} paths round-tripped"), rhs: format!("{seen} paths") },
                Some(msg) => Outcome { pass: false, lhs: msg, rhs: "identity".into() },
            }
        }),
        spec(g, "eta.image", format!("eta maps labeled F-paths of semilength n and height t injectively onto weighted H-walks of the same n and t, n <= {eta_n}"), move |_| {
            let mut images: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
            let mut seen = BTreeSet::new();
            let mut bad: Option<String> = None;
            for n in 0..=eta_n {
                visit_labeled_f(n, &mut |p| {
                    let r = eta(p);
                    if bad.is_none() {
                        if let Err(e) = r.validate() {
                            bad = Some(format!("eta({p:?}) invalid: {e}"));
                        } else if (r.semilength(), r.height()) != (p.semilength(), p.height()) {
                            bad = Some(format!("eta({p:?}) changes semilength or height"));
                        } else if !seen.insert(r.clone()) {
                            bad = Some(format!("eta({p:?}) repeats an image"));
                        }
                    }
                    *images.entry((n as u32, r.height() as u32)).or_default() += 1;
                });
            }
            if let Some(msg) = bad {
                return Outcome { pass: false, lhs: msg, rhs: "valid distinct images".into() };
            }
            let mut walks = BTreeMap::new();
            for n in 0..=eta_n {
                for (k, v) in weighted_h_counts(n).iter() {
                    walks.insert((n as u32, k.t.unwrap()), v.clone());
                }
            }
            compare_maps("eta images", &images, "weighted H-walks", &walks)
        }),
        spec(g, "weighted-walks.vs-102", format!("|WH(n,t)| = |IS(n+1,t)(102)| for n <= {wh_n}"), move |_| {
            let mut walks = BTreeMap::new();
            for n in 0..=wh_n {
                for (k, v) in weighted_h_counts(n).iter() {
                    walks.insert((n as u32, k.t.unwrap()), v.clone());
                }
            }
            let seqs = count_table(wh_n + 1, &[PatternWord::p102()]);
            let mut by_rank: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
            for ((n, _, t), v) in by_length_dist_rank(&seqs) {
                if n >= 1 {
                    *by_rank.entry((n - 1, t)).or_default() += v;
                }
            }
            compare_maps("weighted H-walks (n,t)", &walks, "102-avoiders (n+1,t)", &by_rank)
        }),
        spec(g, "simple-paths.vs-102-000", format!("|H(n,t,m)| = |IS(n+1,t,m+1)(102,000)| for n <= {h_n}"), move |_| {
            let mut paths = BTreeMap::new();
            for n in 0..=h_n {
                for (k, v) in simple_h_counts(n, None).iter() {
                    paths.insert((n as u32, k.m.unwrap(), k.t.unwrap()), v.clone());
                }
            }
            let seqs = count_table(h_n + 1, &p102_000());
            let shifted: BTreeMap<(u32, u32, u32), BigInt> = by_length_dist_rank(&seqs)
                .into_iter()
                .filter(|((n, m, _), _)| *n >= 1 && *m >= 1)
                .map(|((n, m, t), v)| ((n - 1, m - 1, t), v))
                .collect();
            compare_maps("simple H-paths (n,ud,t)", &paths, "avoiders (n+1,m+1,t)", &shifted)
        }),
        spec(g, "class-b.vs-closed", format!("|B(n,m)| = b(n,m) for 1 <= n <= {b_n}"), move |_| {
            let mut paths = BTreeMap::new();
            let mut closed = BTreeMap::new();
            for n in 1..=b_n {
                for (k, v) in simple_h_counts(n, Some(PathClass::B)).iter() {
                    *paths.entry((n as u32, k.m.unwrap())).or_default() += v;
                }
                for m in 0..=n {
                    match b_closed(n as i64, m as i64) {
                        Ok(v) => {
                            closed.insert((n as u32, m as u32), v);
                        }
                        Err(e) => return Outcome::error(e),
                    }
                }
            }
            compare_maps("class B paths (n,ud)", &paths, "closed form", &closed)
        }),
        spec(g, "remark.bijection", format!("deleting the first copy of a doubled maximum maps rank-0 avoiders with dist m bijectively onto avoiders with dist m and a unique maximum, m <= {r_m}"), move |_| {
            let pats = p102_000();
            let mut domain_total = 0usize;
            let mut codomain_total = 0usize;
            for m in 0..=r_m {
                let mut image: BTreeSet<InversionSequence> = BTreeSet::new();
                let mut codomain: BTreeSet<InversionSequence> = BTreeSet::new();
                let mut domain = 0usize;
                for n in m..=2 * m {
                    for e in enumerate_avoiding(n, &pats, StatFilter { dist: Some(m), rank: Some(0) }) {
                        domain += 1;
                        let out = match remark_dedup(&e) {
                            Ok(out) => out,
                            Err(err) => return Outcome::error(format!("{e}: {err}")),
                        };
                        if out.dist() != m || !image.insert(out.clone()) {
                            return Outcome { pass: false, lhs: format!("{e} -> {out}"), rhs: "distinct image with same dist".into() };
                        }
                    }
                    for e in enumerate_avoiding(n, &pats, StatFilter { dist: Some(m), rank: None }) {
                        let max = e.max_value();
                        if e.entries().iter().filter(|&&v| v as i64 == max).count() <= 1 {
                            codomain.insert(e);
                        }
                    }
                }
                if image != codomain {
                    let witness = image.symmetric_difference(&codomain).next().map(|e| e.to_string()).unwrap_or_default();
                    return Outcome {
                        pass: false,
                        lhs: format!("m={m}: image of {domain} sequences has {} elements", image.len()),
                        rhs: format!("unique-maximum set has {} elements; first difference {witness}", codomain.len()),
                    };
                }
                domain_total += domain;
                codomain_total += codomain.len();
            }
            Outcome {
                pass: true,
                lhs: format!("{domain_total} rank-0 sequences, injective"),
                rhs: format!("{codomain_total} unique-maximum sequences"),
            }
        }),
    ]
}

fn minpoly_specs(cfg: &VerifyConfig) -> Vec<Spec> {
    let bounds = cfg.minpoly_bounds;
    builtin_minpolys()
        .iter()
        .map(|mp| {
            spec(
                Group::Minpoly,
                mp.name,
                format!("quartic relation for {} vanishes under truncation {bounds}", mp.target),
                move |sh| {
                    let e = match sh.e_table() {
                        Ok(e) => e.truncate(bounds),
                        Err(o) => return o,
                    };
                    let run = || -> Result<TruncatedSeries> {
                        let s = specialize(&e, mp.substs, &Support::length_dist_rank())?;
                        Ok(mp.build(s.bounds())?.residual(&s))
                    };
                    match run() {
                        Ok(r) if r.is_zero() => Outcome {
                            pass: true,
                            lhs: format!("residual within {}", r.bounds()),
                            rhs: "0".into(),
                        },
                        Ok(r) => Outcome {
                            pass: false,
                            lhs: format!("residual has {} nonzero terms: {r}", r.nnz()),
                            rhs: "0".into(),
                        },
                        Err(err) => Outcome::error(err),
                    }
                },
            )
        })
        .collect()
}

fn closed_form_specs(cfg: &VerifyConfig) -> Vec<Spec> {
    let g = Group::ClosedForms;
    let fm = cfg.fuss_m_max;
    let rm = cfg.rank_m_max;
    let side =
        |lhs: Result<BTreeMap<i64, BigInt>>, rhs: Result<BTreeMap<i64, BigInt>>, l: &str, r: &str| match (lhs, rhs) {
            (Ok(a), Ok(b)) => compare_maps(l, &a, r, &b),
            (Err(e), _) | (_, Err(e)) => Outcome::error(e),
        };
    vec![
        spec(
            g,
            "closed.b-column-sums",
            format!("sum over n of b(n,m) equals C(4m,m)/(3m+1), m <= {fm}"),
            move |_| {
                let lhs = (0..=fm)
                    .map(|m| {
                        (m..=2 * m)
                            .map(|n| b_closed(n, m))
                            .sum::<Result<BigInt>>()
                            .map(|s| (m, s))
                    })
                    .collect();
                let rhs = (0..=fm).map(|m| fuss3(m).map(|v| (m, v))).collect();
                side(lhs, rhs, "sum_n b(n,m)", "fuss3(m)")
            },
        ),
        spec(
            g,
            "closed.rank-row-sums",
            format!("sum over t of the (dist, rank) count equals the dist total, m <= {rm}"),
            move |_| {
                let lhs = (0..=rm)
                    .map(|m| {
                        (0..=m)
                            .map(|t| dist_rank_count(m, t))
                            .sum::<Result<BigInt>>()
                            .map(|s| (m, s))
                    })
                    .collect();
                let rhs = (0..=rm).map(|m| dist_total(m).map(|v| (m, v))).collect();
                side(lhs, rhs, "sum_t count(m,t)", "dist_total(m)")
            },
        ),
        spec(
            g,
            "closed.rank-zero",
            format!("the rank-0 count equals C(4m,m)/(3m+1), m <= {rm}"),
            move |_| {
                let lhs = (0..=rm).map(|m| dist_rank_count(m, 0).map(|v| (m, v))).collect();
                let rhs = (0..=rm).map(|m| fuss3(m).map(|v| (m, v))).collect();
                side(lhs, rhs, "count(m,0)", "fuss3(m)")
            },
        ),
        spec(
            g,
            "closed.rank-two-forms",
            format!("both binomial forms of the (dist, rank) count agree, m <= {rm}"),
            move |_| {
                let pairs = || (0..=rm).flat_map(|m| (0..=m).map(move |t| (m, t)));
                let lhs: Result<BTreeMap<(i64, i64), BigInt>> = pairs()
                    .map(|(m, t)| dist_rank_count(m, t).map(|v| ((m, t), v)))
                    .collect();
                let rhs: Result<BTreeMap<(i64, i64), BigInt>> = pairs()
                    .map(|(m, t)| dist_rank_count_lagrange(m, t).map(|v| ((m, t), v)))
                    .collect();
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) => compare_maps("(3t+1)/(3m+1) form", &a, "(3t+1)/(4m-t+1) form", &b),
                    (Err(e), _) | (_, Err(e)) => Outcome::error(e),
                }
            },
        ),
        spec(
            g,
            "closed.rank-series",
            "the (dist, rank) count equals [y^m z^t] b/(1 - y b^3 z) and [y^(m-t)] b^(3t+1), m <= 12",
            |_| {
                let table = match rank_gf_coeffs(12, 12) {
                    Ok(t) => t,
                    Err(e) => return Outcome::error(e),
                };
                let lhs: BTreeMap<(u32, u32), BigInt> = table
                    .iter()
                    .map(|(k, v)| ((k.m.unwrap(), k.t.unwrap()), v.clone()))
                    .collect();
                let rhs = match try_map(
                    (0..=12u32)
                        .flat_map(|m| (0..=m).map(move |t| dist_rank_count(m as i64, t as i64).map(|v| ((m, t), v)))),
                ) {
                    Ok(v) => v,
                    Err(o) => return o,
                };
                compare_maps("series", &lhs, "closed form", &rhs)
            },
        ),
        spec(
            g,
            "closed.rank-vs-E",
            "[y^m z^t] E(1,y,z) equals the (dist, rank) closed form, m <= 8",
            |sh| {
                let e = match sh.e_table() {
                    Ok(e) => e,
                    Err(o) => return o,
                };
                let gyz = match specialize(e, &[Subst::One(Var::X)], &Support::length_dist_rank()) {
                    Ok(s) => s,
                    Err(err) => return Outcome::error(err),
                };
                let mm = gyz.bounds().y.min(gyz.bounds().z);
                let lhs: BTreeMap<(u32, u32), BigInt> = (0..=mm)
                    .flat_map(|m| (0..=m).map(move |t| (m, t)))
                    .map(|(m, t)| ((m, t), gyz.coeff(0, m, t)))
                    .collect();
                let rhs = match try_map(
                    (0..=mm)
                        .flat_map(|m| (0..=m).map(move |t| dist_rank_count(m as i64, t as i64).map(|v| ((m, t), v)))),
                ) {
                    Ok(v) => v,
                    Err(o) => return o,
                };
                compare_maps("series", &lhs, "closed form", &rhs)
            },
        ),
    ]
}

// One produced term per b-file entry, aligned at the first index.
fn oeis_specs(cfg: &VerifyConfig) -> Vec<Spec> {
    let g = Group::Oeis;
    let make = |id: &'static str, what: &'static str, order: &'static str, term: fn(i64) -> Result<BigInt>| {
        let offline = cfg.offline;
        let cache = cfg.cache_dir.clone();
        spec(
            g,
            id,
            format!("{what} matches the {id} b-file term by term"),
            move |_| {
                let client = Client::new(cache.clone());
                let seq = match client.fetch(id, offline) {
                    Ok(s) => s,
                    Err(e) => return Outcome::error(e),
                };
                let Some(first) = seq.first_index() else {
                    return Outcome::error("empty b-file");
                };
                let produced: Result<Vec<BigInt>> = (0..seq.entries.len() as i64).map(term).collect();
                let produced = match produced {
                    Ok(p) => p,
                    Err(e) => return Outcome::error(e),
                };
                let policy = OffsetPolicy {
                    first_index: first,
                    order: format!("{order}; term k at index {first} + k"),
                };
                let c = compare(&seq, &produced, policy);
                let pass = c.pass && c.matched_prefix >= 10;
                Outcome {
                    pass,
                    lhs: format!("{what}: {} terms, matched prefix {}", c.produced, c.matched_prefix),
                    rhs: match &c.first_mismatch {
                        None => format!("{id} ({} entries), alignment: {}", seq.entries.len(), c.policy.order),
                        Some((i, exp, got)) => format!(
                            "{id} at index {i}: expected {}, produced {got}; alignment: {}",
                            exp.as_deref().unwrap_or("<missing>"),
                            c.policy.order
                        ),
                    },
                }
            },
        )
    };
    vec![
        make("A002293", "fuss3(m), m = 0, 1, ...", "m = 0, 1, 2, ...", fuss3),
        make(
            "A069271",
            "dist_total(m), m = 0, 1, ...",
            "m = 0, 1, 2, ...",
            dist_total,
        ),
        make(
            "A355174",
            "dist_rank_count(m, t) read by rows",
            "rows m = 0, 1, ..., t = 0..m within a row",
            |k| {
                let (m, t) = triangle_position(k);
                dist_rank_count(m, t)
            },
        ),
    ]
}

/// Position `(m, t)` of the `k`-th entry of a triangle read by rows.
pub fn triangle_position(k: i64) -> (i64, i64) {
    let mut m = 0;
    while (m + 1) * (m + 2) / 2 <= k {
        m += 1;
    }
    (m, k - m * (m + 1) / 2)
}

fn registry(cfg: &VerifyConfig) -> Vec<Spec> {
    let mut all = table1_specs(cfg);
    all.extend(bijection_specs(cfg));
    all.extend(minpoly_specs(cfg));
    all.extend(closed_form_specs(cfg));
    all.extend(oeis_specs(cfg));
    all
}

fn prepare(cfg: &VerifyConfig, groups: &[Group]) -> Shared {
    let mut sh = Shared::default();
    let needs_e = groups
        .iter()
        .any(|g| matches!(g, Group::Table1 | Group::Minpoly | Group::ClosedForms));
    if needs_e {
        let b = cfg.minpoly_bounds;
        let nx = (cfg.table_n_max.min(16) as u32).max(b.x).max(16);
        sh.e_table = Some(solve_e(Bounds::new(nx, b.y.max(8), b.z.max(8))));
    }
    if groups.contains(&Group::Table1) {
        let n = cfg.brute_n_max as u32;
        sh.e_brute = Some(solve_e(Bounds::new(n, n, n)));
        sh.avoiders = Some(count_table(cfg.brute_n_max, &p102_000()));
    }
    sh
}

/// Runs the checks of the chosen groups in parallel; the report keeps the
/// fixed registry order.
pub fn run_groups(cfg: &VerifyConfig, groups: &[Group]) -> VerificationReport {
    let specs: Vec<Spec> = registry(cfg)
        .into_iter()
        .filter(|s| groups.contains(&s.group))
        .collect();
    let shared = prepare(cfg, groups);
    let checks = specs
        .par_iter()
        .map(|s| {
            let start = Instant::now();
            let out = (s.run)(&shared);
            Check {
                name: s.name.to_string(),
                identity: s.identity.clone(),
                status: if out.pass { Status::Pass } else { Status::Fail },
                lhs_summary: out.lhs,
                rhs_summary: out.rhs,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect();
    VerificationReport { checks }
}

/// Reference grid against closed form, series and (up to `brute_cap`)
/// enumeration.
pub fn verify_table1(n_max: usize, brute_cap: usize) -> VerificationReport {
    let cfg = VerifyConfig {
        table_n_max: n_max.min(16),
        brute_n_max: brute_cap.min(n_max),
        ..VerifyConfig::default()
    };
    run_groups(&cfg, &[Group::Table1])
}

pub fn verify_bijections(n_max: usize) -> VerificationReport {
    let cfg = VerifyConfig {
        simple_n_max: n_max,
        ..VerifyConfig::default()
    };
    run_groups(&cfg, &[Group::Bijections])
}

pub fn verify_minpolys(bounds: Bounds) -> VerificationReport {
    let cfg = VerifyConfig {
        minpoly_bounds: bounds,
        ..VerifyConfig::default()
    };
    run_groups(&cfg, &[Group::Minpoly])
}

pub fn verify_closed_forms() -> VerificationReport {
    run_groups(&VerifyConfig::default(), &[Group::ClosedForms])
}

pub fn verify_oeis(offline: bool) -> VerificationReport {
    let cfg = VerifyConfig {
        offline,
        ..VerifyConfig::default()
    };
    run_groups(&cfg, &[Group::Oeis])
}

pub fn verify_all(cfg: &VerifyConfig) -> VerificationReport {
    run_groups(cfg, &Group::ALL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_positions() {
        let got: Vec<_> = (0..7).map(triangle_position).collect();
        assert_eq!(got, [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 0)]);
    }

    #[test]
    fn reference_grid_consistency() {
        // row 5 sums to |IS_5(102,000)| = 40
        assert_eq!(REFERENCE_COUNTS[4].iter().sum::<u64>(), 40);
        assert_eq!(REFERENCE_COUNTS[8][6], 749);
        assert_eq!(REFERENCE_COUNTS[15][7], 135439);
        for m in 0..4 {
            let col: u64 = REFERENCE_COUNTS.iter().map(|r| r[m]).sum();
            assert_eq!(col, REFERENCE_TOTALS[m]);
        }
    }

    #[test]
    fn small_table_run_passes() {
        let r = verify_table1(9, 7);
        assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.checks.len(), 5);
    }

    #[test]
    fn report_json_is_deterministic() {
        let cfg = VerifyConfig {
            rank_m_max: 10,
            fuss_m_max: 6,
            ..VerifyConfig::default()
        };
        let a = run_groups(&cfg, &[Group::ClosedForms]);
        let b = run_groups(&cfg, &[Group::ClosedForms]);
        assert_eq!(a.to_json(false).to_string(), b.to_json(false).to_string());
        assert!(a.passed());
        assert_eq!(a.to_json(false)["status"], "pass");
    }

    #[test]
    fn failures_propagate() {
        let mut r = VerificationReport::default();
        assert!(r.passed());
        r.checks.push(Check {
            name: "x".into(),
            identity: "1 = 2".into(),
            status: Status::Fail,
            lhs_summary: "1".into(),
            rhs_summary: "2".into(),
            elapsed_ms: 0.0,
        });
        assert_eq!(r.status(), Status::Fail);
        assert_eq!(r.failures().count(), 1);
    }
}
