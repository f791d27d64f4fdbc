//! `cyclo`: build cyclotomic graphs and circulants, search perfect ideal
//! codes, classify 2p-valent first-kind Frobenius circulants, and run the
//! acceptance suite. Output is deterministic: identical inputs produce
//! byte-identical JSON.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclotomic::acceptance::{self, DEFAULT_SEED};
use cyclotomic::codes::{
    ideal_code_report, mannheim_weights_all, predicted_code_ideals, shell_series, AssociateClass,
};
use cyclotomic::context::{Ctx, CyclotomicContext};
use cyclotomic::cycint::CycInt;
use cyclotomic::error::Error;
use cyclotomic::frobenius::{classify_2p, frobenius_to_cyclotomic};
use cyclotomic::graph::{
    bfs_distances, build_circulant, build_cyclotomic_graph_with_limit, check_complete_rotation,
    cyclic_connection_set, verify_valency_theorem, CayleyGraph, GraphDump, GraphKind,
};
use cyclotomic::ideal::IdealLattice;
use cyclotomic::quotient::{intermediate_ideals, QuotientRing};
use num_bigint::BigInt;
use serde::Serialize;
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "cyclo", version, about = "Cyclotomic graphs, perfect ideal codes, and Frobenius circulants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a cyclotomic graph or a circulant and print its invariants.
    Graph(GraphArgs),
    /// Search all intermediate ideals for perfect t-codes.
    Codes(CodesArgs),
    /// Classify 2p-valent first-kind Frobenius circulants and bridge them.
    Frobenius(FrobeniusArgs),
    /// Run the acceptance suite.
    Accept(AcceptArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Full,
    Second,
}

impl From<KindArg> for GraphKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Full => GraphKind::FullCyclotomic,
            KindArg::Second => GraphKind::SecondKind,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct IdealInput {
    /// Cyclotomic index m (>= 2).
    #[arg(long)]
    m: Option<u64>,
    /// Ideal generator as comma-separated integer coordinates. For m = 3
    /// these are rho coordinates (x,y for x + y*rho) unless --power-basis
    /// is given; for every other m they are power-basis coefficients.
    #[arg(long, allow_hyphen_values = true)]
    gen: Option<String>,
    /// Force rho-coordinate interpretation of --gen (m = 3 only).
    #[arg(long)]
    rho: bool,
    /// Interpret --gen as raw power-basis coefficients.
    #[arg(long, conflicts_with = "rho")]
    power_basis: bool,
}

impl IdealInput {
    fn parse(&self) -> Result<(Ctx, CycInt), Error> {
        let m = self
            .m
            .ok_or_else(|| Error::InvalidParameter("--m is required".into()))?;
        let gen = self
            .gen
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("--gen is required".into()))?;
        let ctx = CyclotomicContext::new(m)?;
        let coords: Vec<BigInt> = gen
            .split(',')
            .map(|p| BigInt::from_str(p.trim()))
            .collect::<Result<_, _>>()
            .map_err(|e| Error::InvalidParameter(format!("bad --gen entry: {e}")))?;
        if self.rho && m != 3 {
            return Err(Error::InvalidParameter("--rho requires --m 3".into()));
        }
        let use_rho = m == 3 && !self.power_basis;
        let alpha = if use_rho {
            if coords.len() != 2 {
                return Err(Error::InvalidParameter(
                    "rho coordinates take exactly two entries".into(),
                ));
            }
            CycInt::from_rho_coords(&ctx, coords[0].clone(), coords[1].clone())?
        } else {
            CycInt::from_coeffs(&ctx, coords)?
        };
        Ok((ctx, alpha))
    }
}

fn env_u64(name: &str, default: u64) -> u64 {
    std::env::var(name)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    ideal: IdealInput,
    /// Circulant order (use with --s or --s-cyclic instead of --m/--gen).
    #[arg(long, conflicts_with = "m")]
    n: Option<u64>,
    /// Circulant connection set, comma-separated residues.
    #[arg(long)]
    s: Option<String>,
    /// Circulant connection set as the subgroup generated by this residue.
    #[arg(long, conflicts_with = "s")]
    s_cyclic: Option<u64>,
    #[arg(long, value_enum, default_value = "full")]
    kind: KindArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Output path (defaults to standard output).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Vertex bound (env CYCLO_MAX_VERTICES).
    #[arg(long)]
    max_vertices: Option<usize>,
}

#[derive(Serialize)]
struct GraphInfo {
    schema: u32,
    order: usize,
    valency: usize,
    diameter: usize,
    shells: Vec<usize>,
    rotation: Option<cyclotomic::graph::RotationReport>,
    valency_report: Option<cyclotomic::graph::ValencyReport>,
    graph: GraphDump,
}

fn cmd_graph(args: &GraphArgs) -> Result<String, Error> {
    let max_vertices = args
        .max_vertices
        .unwrap_or_else(|| env_u64("CYCLO_MAX_VERTICES", 1_000_000) as usize);
    let (graph, quotient): (CayleyGraph, Option<Arc<QuotientRing>>) = if let Some(n) = args.n {
        let s: Vec<u64> = if let Some(a) = args.s_cyclic {
            cyclic_connection_set(n, a)
        } else {
            let raw = args
                .s
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("--s or --s-cyclic required with --n".into()))?;
            raw.split(',')
                .map(|p| {
                    p.trim()
                        .parse()
                        .map_err(|e| Error::InvalidParameter(format!("bad --s entry: {e}")))
                })
                .collect::<Result<_, _>>()?
        };
        (build_circulant(n, &s)?, None)
    } else {
        let (_, alpha) = args.ideal.parse()?;
        let q = QuotientRing::new(IdealLattice::principal(&alpha)?)?;
        let g = build_cyclotomic_graph_with_limit(&q, args.kind.into(), max_vertices)?;
        (g, Some(q))
    };

    let dist = bfs_distances(&graph, 0);
    let diameter = dist.iter().copied().max().unwrap_or(0);
    let shells = shell_series(&graph, diameter)?;
    let (rotation, valency_report) = match &quotient {
        Some(q) if graph.kind == GraphKind::FullCyclotomic => (
            Some(check_complete_rotation(q, &graph)?),
            Some(verify_valency_theorem(q)?),
        ),
        _ => (None, None),
    };

    match args.format {
        FormatArg::Dot => Ok(graph.to_dot()),
        FormatArg::Json => {
            let info = GraphInfo {
                schema: SCHEMA,
                order: graph.n_vertices,
                valency: graph.valency(),
                diameter,
                shells,
                rotation,
                valency_report,
                graph: GraphDump::from(&graph),
            };
            Ok(serde_json::to_string_pretty(&info).expect("serializable") + "\n")
        }
        FormatArg::Text => {
            let mut out = String::new();
            out.push_str(&format!("order    {}\n", graph.n_vertices));
            out.push_str(&format!("valency  {}\n", graph.valency()));
            out.push_str(&format!("diameter {diameter}\n"));
            out.push_str(&format!("shells   {shells:?}\n"));
            if let Some(r) = &rotation {
                out.push_str(&format!(
                    "rotation holds={} cycle_len={}\n",
                    r.holds, r.cycle_len
                ));
            }
            if let Some(v) = &valency_report {
                out.push_str(&format!(
                    "valency-clause {:?} predicted={} actual={} matches={}\n",
                    v.clause, v.predicted, v.actual, v.matches
                ));
            }
            Ok(out)
        }
    }
}

#[derive(Args)]
struct CodesArgs {
    #[command(flatten)]
    ideal: IdealInput,
    /// Code radius t >= 1.
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum, default_value = "full")]
    kind: KindArg,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Intermediate-ideal enumeration bound (env CYCLO_ENUM_BOUND).
    #[arg(long)]
    enum_bound: Option<u64>,
}

#[derive(Serialize)]
struct CodeCandidate {
    ideal_hnf: Vec<Vec<String>>,
    norm: String,
    member_count: usize,
    is_perfect: bool,
    ball_size: usize,
    min_weight: Option<usize>,
    conditions_hold: bool,
    associate_class: Option<AssociateClass>,
}

#[derive(Serialize)]
struct CodesReportJson {
    schema: u32,
    m: u64,
    alpha: String,
    norm_alpha: String,
    t: usize,
    kind: GraphKind,
    order: usize,
    valency: usize,
    candidates: Vec<CodeCandidate>,
    perfect_count: usize,
    /// Exhaustive search versus the associate-class prediction; absent when
    /// the classification does not apply (m outside {3,4}, second-kind
    /// graph, or t outside the theorem range).
    agreement: Option<bool>,
}

fn hnf_strings(d: &IdealLattice) -> Vec<Vec<String>> {
    d.hnf()
        .iter()
        .map(|row| row.iter().map(|e| e.to_string()).collect())
        .collect()
}

fn cmd_codes(args: &CodesArgs) -> Result<String, Error> {
    if args.t == 0 {
        return Err(Error::InvalidParameter("--t must be at least 1".into()));
    }
    let bound = args
        .enum_bound
        .unwrap_or_else(|| env_u64("CYCLO_ENUM_BOUND", 1_000_000));
    let (ctx, alpha) = args.ideal.parse()?;
    let q = QuotientRing::new(IdealLattice::principal(&alpha)?)?;
    let kind: GraphKind = args.kind.into();
    let g = cyclotomic::graph::build_cyclotomic_graph(&q, kind)?;
    let mannheim = mannheim_weights_all(&q)?;

    let predicted = if matches!(ctx.m(), 3 | 4) {
        predicted_code_ideals(&ctx, args.t)?
    } else {
        Vec::new()
    };
    let class_of = |d: &IdealLattice| -> Option<AssociateClass> {
        predicted
            .iter()
            .find(|(_, p)| p == d)
            .map(|(class, _)| *class)
    };

    let mut candidates = Vec::new();
    let mut perfect_count = 0usize;
    for d in intermediate_ideals(&q, bound)?.ideals {
        let report = ideal_code_report(&q, &g, &mannheim, &d, args.t)?;
        if report.is_perfect {
            perfect_count += 1;
        }
        candidates.push(CodeCandidate {
            ideal_hnf: hnf_strings(&d),
            norm: d.norm().to_string(),
            member_count: report.member_count,
            is_perfect: report.is_perfect,
            ball_size: report.ball_size_at_zero,
            min_weight: report.min_nonzero_weight,
            conditions_hold: report.conditions_hold,
            associate_class: class_of(&d),
        });
    }

    let agreement = if kind == GraphKind::FullCyclotomic && matches!(ctx.m(), 3 | 4) {
        let check = match ctx.m() {
            4 => cyclotomic::codes::gaussian_theorem_check(&alpha, args.t),
            _ => cyclotomic::codes::ej_theorem_check(&alpha, args.t),
        };
        match check {
            Ok(report) => Some(report.agreement),
            Err(Error::InvalidParameter(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let report = CodesReportJson {
        schema: SCHEMA,
        m: ctx.m(),
        alpha: alpha.to_string(),
        norm_alpha: alpha.field_norm().to_string(),
        t: args.t,
        kind,
        order: g.n_vertices,
        valency: g.valency(),
        candidates,
        perfect_count,
        agreement,
    };
    match args.format {
        FormatArg::Json => Ok(serde_json::to_string_pretty(&report).expect("serializable") + "\n"),
        FormatArg::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "graph order {} valency {}, t = {}\n",
                report.order, report.valency, report.t
            ));
            for c in &report.candidates {
                out.push_str(&format!(
                    "ideal norm {:>6} members {:>6} perfect {} ball {} min-weight {:?} class {:?}\n",
                    c.norm, c.member_count, c.is_perfect, c.ball_size, c.min_weight, c.associate_class
                ));
            }
            out.push_str(&format!(
                "perfect codes: {} (agreement: {:?})\n",
                report.perfect_count, report.agreement
            ));
            Ok(out)
        }
        FormatArg::Dot => Err(Error::InvalidParameter(
            "codes reports have no DOT form".into(),
        )),
    }
}

#[derive(Args)]
struct FrobeniusArgs {
    /// Odd prime p: the circulants have valency 2p.
    #[arg(long)]
    p: u64,
    /// Single modulus n.
    #[arg(long)]
    n: Option<u64>,
    /// Inclusive range lo:hi of moduli.
    #[arg(long, conflicts_with = "n")]
    n_range: Option<String>,
    /// Verify the cyclotomic bridge for each candidate up to this order.
    #[arg(long, default_value_t = 2000)]
    bridge_max: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Serialize)]
struct FrobeniusCandidateJson {
    a: u64,
    s: Vec<u64>,
    checks: cyclotomic::frobenius::CandidateChecks,
    canonical_a: u64,
    bridged: bool,
    ideal_hnf: Option<Vec<Vec<String>>>,
    valency: Option<usize>,
}

#[derive(Serialize)]
struct FrobeniusPerN {
    n: u64,
    candidates: Vec<FrobeniusCandidateJson>,
}

#[derive(Serialize)]
struct FrobeniusJson {
    schema: u32,
    p: u64,
    results: Vec<FrobeniusPerN>,
}

fn cmd_frobenius(args: &FrobeniusArgs) -> Result<String, Error> {
    let (lo, hi) = if let Some(n) = args.n {
        (n, n)
    } else if let Some(range) = &args.n_range {
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 2 {
            return Err(Error::InvalidParameter("--n-range takes lo:hi".into()));
        }
        let lo = parts[0]
            .parse()
            .map_err(|e| Error::InvalidParameter(format!("bad range: {e}")))?;
        let hi = parts[1]
            .parse()
            .map_err(|e| Error::InvalidParameter(format!("bad range: {e}")))?;
        (lo, hi)
    } else {
        return Err(Error::InvalidParameter("--n or --n-range required".into()));
    };
    if lo > hi {
        return Err(Error::InvalidParameter("empty --n-range".into()));
    }
    let ctx = CyclotomicContext::new(args.p)?;
    let mut results = Vec::new();
    for n in lo..=hi {
        if n < 2 * args.p + 1 {
            continue;
        }
        let mut candidates = Vec::new();
        for cand in classify_2p(n, args.p)? {
            let (bridged, ideal_hnf, valency) = if n <= args.bridge_max {
                let bridge = frobenius_to_cyclotomic(&ctx, cand.n, cand.a)?;
                (
                    bridge.iso.verified,
                    Some(hnf_strings(&bridge.ideal)),
                    Some(bridge.cyclotomic.valency()),
                )
            } else {
                (false, None, None)
            };
            candidates.push(FrobeniusCandidateJson {
                a: cand.a,
                s: cand.s,
                checks: cand.checks,
                canonical_a: cand.canonical_a,
                bridged,
                ideal_hnf,
                valency,
            });
        }
        results.push(FrobeniusPerN { n, candidates });
    }
    let report = FrobeniusJson {
        schema: SCHEMA,
        p: args.p,
        results,
    };
    match args.format {
        FormatArg::Json => Ok(serde_json::to_string_pretty(&report).expect("serializable") + "\n"),
        FormatArg::Text => {
            let mut out = String::new();
            for per_n in &report.results {
                if per_n.candidates.is_empty() {
                    continue;
                }
                out.push_str(&format!("n = {}\n", per_n.n));
                for c in &per_n.candidates {
                    out.push_str(&format!(
                        "  a = {:>6} (canonical {:>6}) S = {:?} bridged = {}\n",
                        c.a, c.canonical_a, c.s, c.bridged
                    ));
                }
            }
            if out.is_empty() {
                out.push_str("no candidates\n");
            }
            Ok(out)
        }
        FormatArg::Dot => Err(Error::InvalidParameter(
            "frobenius reports have no DOT form".into(),
        )),
    }
}

#[derive(Args)]
struct AcceptArgs {
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Run a single criterion (1..=8).
    #[arg(long)]
    only: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Serialize)]
struct AcceptJson {
    schema: u32,
    seed: u64,
    criteria: Vec<acceptance::CriterionResult>,
    all_passed: bool,
}

fn cmd_accept(args: &AcceptArgs) -> Result<(String, bool), Error> {
    let results = match args.only {
        Some(id) => vec![acceptance::run(id, args.seed)],
        None => acceptance::run_all(args.seed),
    };
    let all_passed = results.iter().all(|r| r.passed);
    let out = match args.format {
        FormatArg::Json => {
            let summary = AcceptJson {
                schema: SCHEMA,
                seed: args.seed,
                criteria: results,
                all_passed,
            };
            serde_json::to_string_pretty(&summary).expect("serializable") + "\n"
        }
        _ => {
            let mut out = String::new();
            for r in &results {
                out.push_str(&r.line());
                out.push('\n');
            }
            out.push_str(&format!(
                "suite: {}\n",
                if all_passed { "PASS" } else { "FAIL" }
            ));
            out
        }
    };
    Ok((out, all_passed))
}

fn write_output(text: &str, out: &Option<std::path::PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Result<(String, Option<std::path::PathBuf>, bool), Error> = match &cli.command {
        Command::Graph(args) => cmd_graph(args).map(|s| (s, args.out.clone(), true)),
        Command::Codes(args) => cmd_codes(args).map(|s| (s, args.out.clone(), true)),
        Command::Frobenius(args) => cmd_frobenius(args).map(|s| (s, args.out.clone(), true)),
        Command::Accept(args) => cmd_accept(args).map(|(s, ok)| (s, None, ok)),
    };
    match outcome {
        Ok((text, out, ok)) => {
            if let Err(e) = write_output(&text, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
