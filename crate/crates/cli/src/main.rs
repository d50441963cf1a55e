//! `trusslab`: JSON in, JSON out.
//!
//! Exit codes: 0 success or valid, 1 a violation report was emitted,
//! 2 usage or input error. `TRUSSLAB_LIMITS` (e.g. `search=8,enumerate=5`)
//! overrides the size caps.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use trusslab::classify::{census, isomorphism};
use trusslab::heap::{abelian_groups, validate_heap};
use trusslab::json::{HeapDoc, TrussDoc};
use trusslab::operators::{check_operator, search_operators, search_operators_naive, EndoMap, OperatorKind};
use trusslab::structures::{derive_truss, split_from_operator_unchecked, validate_structure, SplitStructure};
use trusslab::truss::validate_truss;
use trusslab::zfamilies::{verify_window, zrb_constant_product, ztruss};
use trusslab::{FiniteTruss, Limits};

mod demo;

#[derive(Parser)]
#[command(name = "trusslab", version, about = "Finite heaps, trusses and Rota-Baxter type operators")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the heap and truss axioms of a table document.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Classify all truss products on a heap.
    Census {
        /// Every abelian group of this order.
        #[arg(long, conflicts_with = "heap", required_unless_present = "heap")]
        size: Option<usize>,
        #[arg(long)]
        heap: Option<PathBuf>,
    },
    /// Search all operators of a kind.
    Ops {
        /// rb0:z, rbw:a, rb1, der:z, mder, rey, nij, avgl, avgr, avg, avgh
        /// (rb0 and der default to the absorber 0).
        #[arg(long)]
        kind: String,
        #[arg(long = "in")]
        input: PathBuf,
        /// Filter all n^n maps instead of heap morphisms.
        #[arg(long)]
        naive: bool,
    },
    /// Check one map against an operator kind.
    Check {
        #[arg(long)]
        kind: String,
        /// Comma-separated images, e.g. 1,0.
        #[arg(long)]
        map: String,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build the truss or split structure an operator induces.
    Derive {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        map: String,
        #[arg(long = "in")]
        input: PathBuf,
        /// Emit the split structure instead of the derived truss.
        #[arg(long)]
        split: bool,
    },
    /// Check the axioms of a split structure document.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Expected kind: dendriform, tridendriform, ns, di, tri.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Find an isomorphism between two trusses.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Window-check an integer truss family.
    Zverify {
        /// projL, projR, f40a, f40b, f41a, f41b, f42
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
        #[arg(long, default_value_t = 25)]
        window: i64,
    },
    /// Window-check R(m) = 2m - a on the constant product m.n = a.
    Zrb {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value_t = 20)]
        window: i64,
    },
    /// Replay the headline computations and summarize.
    Demo,
}

/// A finished command: JSON to print and whether it reports a violation.
struct Outcome {
    value: Value,
    violation: bool,
}

impl Outcome {
    fn ok(value: impl Serialize) -> Result<Self> {
        Ok(Self { value: serde_json::to_value(value)?, violation: false })
    }

    fn verdict(value: impl Serialize, valid: bool) -> Result<Self> {
        Ok(Self { value: serde_json::to_value(value)?, violation: !valid })
    }
}

fn limits() -> Result<Limits> {
    let mut limits = Limits::default();
    let Ok(spec) = std::env::var("TRUSSLAB_LIMITS") else {
        return Ok(limits);
    };
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item.split_once('=').ok_or_else(|| anyhow!("TRUSSLAB_LIMITS: expected key=value, got {item:?}"))?;
        let value: usize = value.parse().with_context(|| format!("TRUSSLAB_LIMITS: bad value in {item:?}"))?;
        match key {
            "construct" => limits.construct = value,
            "search" => limits.search = value,
            "naive" => limits.naive = value,
            "enumerate" => limits.enumerate = value,
            "canonical" => limits.canonical = value,
            _ => bail!("TRUSSLAB_LIMITS: unknown cap {key:?}"),
        }
    }
    Ok(limits)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_truss_doc(path: &Path) -> Result<TrussDoc> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_truss(path: &Path) -> Result<FiniteTruss> {
    read_truss_doc(path)?.to_truss().with_context(|| format!("{} is not a truss", path.display()))
}

fn parse_kind(s: &str) -> Result<OperatorKind> {
    let s = match s {
        "rb0" => "rb0:0",
        "der" => "der:0",
        other => other,
    };
    Ok(s.parse()?)
}

fn parse_map(s: &str, n: usize) -> Result<EndoMap> {
    let image = s
        .split(',')
        .map(|v| v.trim().parse::<usize>().with_context(|| format!("bad map entry {v:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(EndoMap::new(image, n)?)
}

fn verify(input: &Path) -> Result<Outcome> {
    let text = read(input)?;
    let raw: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", input.display()))?;
    if raw.get("mul").is_none() {
        let doc: HeapDoc = serde_json::from_value(raw)?;
        return match doc.to_heap() {
            Ok(h) => {
                let report = validate_heap(&h.ternary());
                Outcome::verdict(json!({ "structure": "heap", "valid": report.is_valid(), "report": report }), report.is_valid())
            }
            Err(e) => Outcome::verdict(json!({ "structure": "heap", "valid": false, "error": e.to_string() }), false),
        };
    }
    let doc: TrussDoc = serde_json::from_value(raw)?;
    let heap = match doc.to_heap() {
        Ok(h) => h,
        Err(e) => return Outcome::verdict(json!({ "structure": "truss", "valid": false, "error": e.to_string() }), false),
    };
    let report = validate_truss(&heap, &doc.mul);
    let mut laws: Vec<&str> = report.violations.iter().map(|v| v.law.as_str()).collect();
    laws.sort_unstable();
    laws.dedup();
    Outcome::verdict(
        json!({
            "structure": "truss",
            "valid": report.is_valid(),
            "violated_laws": laws,
            "violations": report.violations,
        }),
        report.is_valid(),
    )
}

fn run(command: Command) -> Result<Outcome> {
    let limits = limits()?;
    match command {
        Command::Verify { input } => verify(&input),
        Command::Census { size, heap } => match (size, heap) {
            (_, Some(path)) => {
                let doc: HeapDoc = serde_json::from_str(&read(&path)?)?;
                Outcome::ok(census(&doc.to_heap()?, &limits)?)
            }
            (Some(n), None) => {
                let reports = abelian_groups(n)?
                    .into_iter()
                    .map(|(_, h)| census(&h, &limits))
                    .collect::<trusslab::Result<Vec<_>>>()?;
                Outcome::ok(reports)
            }
            (None, None) => bail!("census needs --size or --heap"),
        },
        Command::Ops { kind, input, naive } => {
            let t = read_truss(&input)?;
            let kind = parse_kind(&kind)?;
            let ops = if naive { search_operators_naive(&t, kind, &limits)? } else { search_operators(&t, kind, &limits)? };
            Outcome::ok(json!({ "kind": kind, "count": ops.len(), "operators": ops }))
        }
        Command::Check { kind, map, input } => {
            let t = read_truss(&input)?;
            let report = check_operator(&t, &parse_map(&map, t.size())?, parse_kind(&kind)?)?;
            let holds = report.holds;
            Outcome::verdict(report, holds)
        }
        Command::Derive { kind, map, input, split } => {
            let t = read_truss(&input)?;
            let f = parse_map(&map, t.size())?;
            let kind = parse_kind(&kind)?;
            if split {
                let s = split_from_operator_unchecked(&t, &f, kind)?;
                let report = validate_structure(&s);
                if report.is_valid() {
                    Outcome::ok(s)
                } else {
                    Outcome::verdict(json!({ "structure": s, "valid": false, "report": report }), false)
                }
            } else {
                Outcome::ok(TrussDoc::from_truss(&derive_truss(&t, &f, kind)?))
            }
        }
        Command::Validate { input, kind } => {
            let s: SplitStructure =
                serde_json::from_str(&read(&input)?).with_context(|| format!("parsing {}", input.display()))?;
            if let Some(expected) = kind {
                let expected: trusslab::SplitKind = expected.parse()?;
                if expected != s.kind() {
                    bail!("document is a {} structure, not {expected}", s.kind());
                }
            }
            let report = validate_structure(&s);
            let valid = report.is_valid();
            Outcome::verdict(json!({ "kind": s.kind(), "side": s.side(), "valid": valid, "report": report }), valid)
        }
        Command::Iso { a, b } => {
            let (a, b) = (read_truss(&a)?, read_truss(&b)?);
            match isomorphism(&a, &b) {
                Some(map) => Outcome::ok(json!({ "isomorphic": true, "bijection": map })),
                None => Outcome::ok(json!({ "isomorphic": false, "bijection": "none" })),
            }
        }
        Command::Zverify { family, params, window } => {
            let params = params
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<i64>().with_context(|| format!("bad parameter {p:?}")))
                .collect::<Result<Vec<_>>>()?;
            let report = verify_window(&ztruss(&family, &params)?, window)?;
            let valid = report.is_valid();
            Outcome::verdict(report, valid)
        }
        Command::Zrb { a, window } => {
            let report = zrb_constant_product(a, window)?;
            let valid = report.is_valid();
            Outcome::verdict(report, valid)
        }
        Command::Demo => {
            let summary = demo::run(&limits);
            let all = summary.iter().all(|c| c.pass);
            Outcome::verdict(json!({ "all_pass": all, "checks": summary }), all)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let text = if cli.pretty { serde_json::to_string_pretty(&outcome.value) } else { serde_json::to_string(&outcome.value) };
            println!("{}", text.expect("serializable"));
            if outcome.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
