//! The `invseq-lab` command line.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::json;

use crate::count_table::CountTable;
use crate::error::Error;
use crate::formulas;
use crate::invseq::{count_table, enumerate_avoiding, PatternWord, StatFilter};
use crate::lattice::{
    enumerate_paths, eta_inv_steps, eta_steps, AnyPath, FStep, PathClass, PathFilter, PathKind, WStep,
};
use crate::oeis::{default_cache_dir, Client};
use crate::series::{derive_chain, solve_b, solve_e, specialize, Bounds, Subst, Support, TruncatedSeries, Var};
use crate::verify::{run_groups, Group, VerificationReport, VerifyConfig};

pub const MAX_SEQUENCE_LENGTH: usize = 14;
pub const MAX_SEMILENGTH: usize = 12;
pub const MAX_SERIES_X: u32 = 24;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "invseq-lab",
    version,
    about = "Exact counts, lattice paths and generating functions for (102,000)-avoiding inversion sequences"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Allow sizes above the safety caps.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupBy {
    Dist,
    Rank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    LabeledF,
    WeightedH,
    SimpleH,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    A,
    D,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    B,
    A,
    D0,
    E,
    #[value(name = "g")]
    SmallG,
    G0,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    B,
    Dist,
    Fuss3,
    DistRank,
    DistTotal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Table1,
    Bijections,
    Minpoly,
    ClosedForms,
    Oeis,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count avoiders of length n, optionally split by dist and/or rank.
    Count {
        #[arg(long, default_value = "102,000")]
        patterns: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, value_delimiter = ',')]
        group_by: Vec<GroupBy>,
    },
    /// List avoiders of length n in lexicographic order.
    Enumerate {
        #[arg(long, default_value = "102,000")]
        patterns: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dist: Option<usize>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// List lattice paths of a given semilength.
    Paths {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        semilength: usize,
        #[arg(long, allow_negative_numbers = true)]
        height: Option<i64>,
        #[arg(long)]
        ud: Option<usize>,
        #[arg(long, value_enum, ignore_case = true)]
        class: Option<ClassArg>,
    },
    /// Apply eta or its inverse to a JSON path read from stdin.
    Eta {
        #[arg(long, value_enum)]
        direction: Direction,
    },
    /// Print a truncated generating function.
    Series {
        #[arg(long, value_enum, ignore_case = true)]
        emit: Emit,
        #[arg(long, default_value_t = 8)]
        max_x: u32,
        #[arg(long, default_value_t = 4)]
        max_y: u32,
        #[arg(long, default_value_t = 4)]
        max_z: u32,
        /// A single coefficient `n,m,t`.
        #[arg(long, value_parser = parse_triple)]
        coeff: Option<[u32; 3]>,
    },
    /// Evaluate a closed form.
    Formula {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        args: Vec<i64>,
    },
    /// Run the cross-checks and print a report.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Use bundled b-files instead of the network.
        #[arg(long)]
        offline: bool,
        /// Largest brute-force size (grid length, or simple-path semilength).
        #[arg(long)]
        max_n: Option<usize>,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include per-check timings in JSON output.
        #[arg(long)]
        timings: bool,
    },
    /// Fetch an OEIS b-file and print its first terms.
    Oeis {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        #[arg(long)]
        offline: bool,
    },
}

fn parse_triple(s: &str) -> std::result::Result<[u32; 3], String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    parts.try_into().map_err(|_| "expected n,m,t".to_string())
}

enum Failure {
    Usage(String),
    Runtime(String),
    // the reader went away, e.g. `| head`
    ClosedOutput,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EmptyWord
            | Error::NotReduced(_)
            | Error::BadPattern(_)
            | Error::NotInversionSequence { .. }
            | Error::BadSequenceId(_)
            | Error::UnsupportedFilter(_)
            | Error::InvalidStep(_)
            | Error::InvalidPath(_)
            | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::ClosedOutput;
        }
        Failure::Runtime(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn cap(force: bool, what: &str, value: usize, limit: usize) -> std::result::Result<(), Failure> {
    if value > limit && !force {
        return Err(Failure::Usage(format!(
            "{what} {value} exceeds the safety cap {limit}; pass --force to run anyway"
        )));
    }
    Ok(())
}

/// Parses `argv` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            let _ = writeln!(stderr, "error: --threads must be positive");
            return EXIT_USAGE;
        }
        // a global pool can only be installed once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match dispatch(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAIL
        }
        Err(Failure::ClosedOutput) => EXIT_OK,
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Count { patterns, n, group_by } => {
            let patterns = PatternWord::parse_list(patterns)?;
            cap(cli.force, "length", *n, MAX_SEQUENCE_LENGTH)?;
            cmd_count(&patterns, *n, group_by, json, out)
        }
        Command::Enumerate {
            patterns,
            n,
            dist,
            rank,
            limit,
        } => {
            let patterns = PatternWord::parse_list(patterns)?;
            cap(cli.force, "length", *n, MAX_SEQUENCE_LENGTH)?;
            let filter = StatFilter {
                dist: *dist,
                rank: *rank,
            };
            let seqs = enumerate_avoiding(*n, &patterns, filter).take(limit.unwrap_or(usize::MAX));
            if json {
                let all: Vec<_> = seqs.map(|e| e.entries().to_vec()).collect();
                writeln!(out, "{}", serde_json::to_string(&all).expect("plain data"))?;
            } else {
                for e in seqs {
                    writeln!(out, "{e}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Paths {
            kind,
            semilength,
            height,
            ud,
            class,
        } => {
            cap(cli.force, "semilength", *semilength, MAX_SEMILENGTH)?;
            let kind = match kind {
                KindArg::LabeledF => PathKind::LabeledF,
                KindArg::WeightedH => PathKind::WeightedH,
                KindArg::SimpleH => PathKind::SimpleH,
            };
            let class = class.map(|c| match c {
                ClassArg::A => PathClass::A,
                ClassArg::D => PathClass::D,
                ClassArg::B => PathClass::B,
            });
            let paths = enumerate_paths(
                kind,
                *semilength,
                PathFilter {
                    height: *height,
                    ud: *ud,
                    class,
                },
            )?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&paths).expect("plain data"))?;
            } else {
                for p in &paths {
                    writeln!(out, "{}", path_line(p))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Eta { direction } => {
            let mut text = String::new();
            stdin.read_to_string(&mut text)?;
            cmd_eta(*direction, &text, out)
        }
        Command::Series {
            emit,
            max_x,
            max_y,
            max_z,
            coeff,
        } => {
            cap(cli.force, "series x-bound", *max_x as usize, MAX_SERIES_X as usize)?;
            cap(cli.force, "series y-bound", *max_y as usize, MAX_SERIES_X as usize)?;
            cap(cli.force, "series z-bound", *max_z as usize, MAX_SERIES_X as usize)?;
            let s = emit_series(*emit, Bounds::new(*max_x, *max_y, *max_z))?;
            match coeff {
                Some([n, m, t]) => {
                    let (n, m, t) = (*n, *m, *t);
                    if !s.bounds().contains([n, m, t]) {
                        return Err(Failure::Usage(format!(
                            "coefficient ({n},{m},{t}) lies outside {}",
                            s.bounds()
                        )));
                    }
                    let v = s.coeff(n, m, t);
                    if json {
                        writeln!(out, "{}", json!({ "n": n, "m": m, "t": t, "coeff": v.to_string() }))?;
                    } else {
                        writeln!(out, "{v}")?;
                    }
                }
                None if json => writeln!(out, "{}", s.to_json())?,
                None => writeln!(out, "{s}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Formula { which, args } => {
            let v = cmd_formula(*which, args)?;
            if json {
                writeln!(out, "{}", json!({ "value": v.to_string() }))?;
            } else {
                writeln!(out, "{v}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            target,
            offline,
            max_n,
            out: path,
            timings,
        } => {
            let mut cfg = VerifyConfig {
                offline: *offline,
                cache_dir: default_cache_dir(),
                ..VerifyConfig::default()
            };
            let groups: Vec<Group> = match target {
                Target::Table1 => vec![Group::Table1],
                Target::Bijections => vec![Group::Bijections],
                Target::Minpoly => vec![Group::Minpoly],
                Target::ClosedForms => vec![Group::ClosedForms],
                Target::Oeis => vec![Group::Oeis],
                Target::All => Group::ALL.to_vec(),
            };
            if let Some(n) = max_n {
                if *target == Target::Bijections {
                    cap(cli.force, "semilength", *n, MAX_SEMILENGTH)?;
                    cfg.simple_n_max = *n;
                } else {
                    if *n > 16 {
                        return Err(Failure::Usage("--max-n is at most 16 for the reference grid".into()));
                    }
                    cfg.table_n_max = *n;
                    cfg.brute_n_max = cfg.brute_n_max.min(*n);
                }
            }
            let report = run_groups(&cfg, &groups);
            let doc = report.to_json(*timings);
            if let Some(p) = path {
                std::fs::write(
                    p,
                    format!("{}\n", serde_json::to_string_pretty(&doc).expect("plain data")),
                )?;
            }
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("plain data"))?;
            } else {
                write_report_table(&report, out)?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Oeis { id, terms, offline } => {
            let client = Client::new(default_cache_dir());
            let seq = client.fetch(id, *offline)?;
            let head = seq.entries.iter().take(*terms);
            if json {
                let rows: Vec<_> = head
                    .map(|(i, v)| json!({ "index": i, "value": v.to_string() }))
                    .collect();
                writeln!(out, "{}", serde_json::to_string(&rows).expect("plain data"))?;
            } else {
                for (i, v) in head {
                    writeln!(out, "{i} {v}")?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn cmd_count(patterns: &[PatternWord], n: usize, group_by: &[GroupBy], json: bool, out: &mut dyn Write) -> Outcome {
    let by_dist = group_by.contains(&GroupBy::Dist);
    let by_rank = group_by.contains(&GroupBy::Rank);
    let full = count_table(n, patterns);
    let mut only_n = CountTable::new();
    for (k, v) in full.iter().filter(|(k, _)| k.n == Some(n as u32)) {
        only_n.add(*k, v);
    }
    let table = only_n.marginalize(true, by_dist, by_rank);
    if json {
        writeln!(out, "{}", table.to_json())?;
        return Ok(EXIT_OK);
    }
    if !by_dist && !by_rank {
        writeln!(out, "n={n}: {}", table.total())?;
        return Ok(EXIT_OK);
    }
    for (k, v) in table.iter() {
        let mut cols = Vec::new();
        if by_dist {
            cols.push(format!("m={}", k.m.expect("kept")));
        }
        if by_rank {
            cols.push(match k.t {
                Some(t) => format!("t={t}"),
                None => "t=-".to_string(),
            });
        }
        writeln!(out, "{}: {v}", cols.join(" "))?;
    }
    Ok(EXIT_OK)
}

#[derive(Deserialize)]
struct StepsDoc<S> {
    steps: Vec<S>,
}

fn cmd_eta(direction: Direction, text: &str, out: &mut dyn Write) -> Outcome {
    let bad = |e: serde_json::Error| Failure::Usage(format!("bad path JSON: {e}"));
    let doc = match direction {
        Direction::Forward => {
            let d: StepsDoc<FStep> = serde_json::from_str(text).map_err(bad)?;
            json!({ "steps": eta_steps(&d.steps) })
        }
        Direction::Inverse => {
            let d: StepsDoc<WStep> = serde_json::from_str(text).map_err(bad)?;
            json!({ "steps": eta_inv_steps(&d.steps)? })
        }
    };
    writeln!(out, "{doc}")?;
    Ok(EXIT_OK)
}

fn emit_series(emit: Emit, bounds: Bounds) -> std::result::Result<TruncatedSeries, Error> {
    let support = Support::length_dist_rank();
    let xy = Bounds::new(bounds.x, bounds.y, 0);
    Ok(match emit {
        Emit::B => solve_b(xy)?,
        Emit::A => derive_chain(&solve_b(Bounds::new(bounds.x + 1, bounds.y, 0))?)?.a,
        Emit::D0 => derive_chain(&solve_b(Bounds::new(bounds.x + 1, bounds.y, 0))?)?.d0,
        Emit::E => solve_e(bounds)?,
        Emit::SmallG => {
            let e = solve_e(Bounds::new(2 * bounds.y, bounds.y, bounds.y))?;
            specialize(&e, &[Subst::One(Var::X), Subst::One(Var::Z)], &support)?
        }
        Emit::G0 => {
            let e = solve_e(Bounds::new(2 * bounds.y, bounds.y, 0))?;
            specialize(&e, &[Subst::One(Var::X), Subst::Zero(Var::Z)], &support)?
        }
        Emit::F => {
            let e = solve_e(Bounds::new(bounds.x, bounds.x, bounds.x))?;
            specialize(&e, &[Subst::One(Var::Z), Subst::One(Var::Y)], &support)?
        }
    })
}

fn cmd_formula(which: Which, args: &[i64]) -> std::result::Result<BigInt, Failure> {
    let want = match which {
        Which::Fuss3 | Which::DistTotal => 1,
        _ => 2,
    };
    if args.len() != want {
        return Err(Failure::Usage(format!(
            "--which {which:?} takes {want} argument(s), got {}",
            args.len()
        )));
    }
    let v = match which {
        Which::B => formulas::b_closed(args[0], args[1]),
        Which::Dist => formulas::count_dist_closed(args[0], args[1]),
        Which::Fuss3 => formulas::fuss3(args[0]),
        Which::DistRank => formulas::dist_rank_count(args[0], args[1]),
        Which::DistTotal => formulas::dist_total(args[0]),
    };
    Ok(v?)
}

fn step_text(dx: u32, dy: i64) -> String {
    format!("({dx},{dy})")
}

/// Compact one-line rendering: long steps as `(a;b1,..,bk)`, weighted
/// souths as `w(0,b)`.
pub fn path_line(p: &AnyPath) -> String {
    let stats = p.stats();
    let steps: Vec<String> = match p {
        AnyPath::Labeled(q) => q
            .steps
            .iter()
            .map(|s| {
                if s.is_long() {
                    let label: Vec<String> = s.label.iter().map(|b| b.to_string()).collect();
                    format!("({};{})", s.dx, label.join(","))
                } else {
                    step_text(s.dx, s.dy)
                }
            })
            .collect(),
        AnyPath::Weighted(r) => r.steps.iter().map(wstep_text).collect(),
        AnyPath::Simple(h) => h.steps().iter().map(wstep_text).collect(),
    };
    let ud = stats.ud.map(|u| format!(" ud={u}")).unwrap_or_default();
    format!("height={}{ud}  {}", stats.height, steps.join(" "))
}

fn wstep_text(s: &WStep) -> String {
    if s.weight == 1 {
        step_text(s.dx, s.dy)
    } else {
        format!("{}{}", s.weight, step_text(s.dx, s.dy))
    }
}

fn write_report_table(report: &VerificationReport, out: &mut dyn Write) -> std::io::Result<()> {
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &report.checks {
        let tag = if c.status == crate::verify::Status::Pass {
            "PASS"
        } else {
            "FAIL"
        };
        writeln!(out, "{tag}  {:width$}  {} | {}", c.name, c.lhs_summary, c.rhs_summary)?;
    }
    let failed = report.failures().count();
    writeln!(out, "{} checks, {} failed", report.checks.len(), failed)
}
