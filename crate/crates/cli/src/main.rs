//! `gaindex`: compute GA1, build extremal graphs, tabulate lower bounds and
//! run exhaustive checks from the command line.
//!
//! Exit status: 0 on success, 1 when a verification finds violations, 2 on
//! usage or input errors.

mod input;

use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gaindex::bounds::{all_bounds, best_lower_bound, BoundResult};
use gaindex::families::{
    construct_complete, construct_complete_bipartite, construct_counterexample, construct_gdd, construct_h_delta,
    construct_star, construct_two_hub, ga1_closed_form_gdd, ga1_closed_form_hdelta, ga1_closed_form_kdd,
};
use gaindex::harness::enumerate::{EnumSpec, MAX_ENUM_VERTICES};
use gaindex::harness::search::{min_degree_two_spotchecks, search_counterexamples, search_minimal};
use gaindex::harness::verify::{verify_graphs, verify_up_to, Target, VerificationReport};
use gaindex::index::{classic_bounds, edge_weight, ga1, ClassicBounds};
use gaindex::report::{round_sig10, Sig10};
use gaindex::{write_graph6, Graph};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{read_graphs, Format, Sourced};

#[derive(Parser)]
#[command(name = "gaindex", version, about = "Geometric-arithmetic index GA1: values, extremal graphs, bounds and exhaustive checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone, Serialize)]
struct Common {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Absolute tolerance for bound and equality comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Worker threads for enumeration (default: available cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Graph format for input and output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Graph6)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// GA1, classic bounds and the best degree bound for each input graph.
    Compute {
        /// Input files; standard input when absent or `-`.
        files: Vec<PathBuf>,
    },
    /// Build a graph from a named family.
    Construct {
        #[arg(value_enum)]
        family: Family,
        /// Family parameters, e.g. `2 3` for delta and Delta.
        params: Vec<usize>,
        /// Write the graph here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Every lower bound for a degree profile.
    Bounds {
        /// `delta Delta` (alternative to the flags).
        params: Vec<usize>,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long = "Delta")]
        max_degree: Option<usize>,
    },
    /// Check a claim on all small graphs or on graphs read from input.
    Verify(VerifyArgs),
    /// Search for graphs below both extremal families, or for minimal graphs.
    Search(SearchArgs),
    /// Perturbation checks for minimum degree two and large Delta.
    Spotcheck {
        /// Range of Delta, `a..b` or a single value, within 28..64.
        #[arg(long = "Delta", default_value = "28..64")]
        max_degree: String,
    },
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    /// One of CLASSIC_2_1, T2_7, P2_5_edges, T2_11, C2_13, C2_17, P2_8_minimal.
    theorem: String,
    /// Enumerate graphs on 2..=N vertices.
    #[arg(long, default_value_t = 7)]
    n_max: usize,
    /// Only graphs with this minimum degree.
    #[arg(long)]
    delta: Option<usize>,
    /// Only graphs with this maximum degree.
    #[arg(long = "Delta")]
    max_degree: Option<usize>,
    /// Enumerate connected graphs only (the default).
    #[arg(long, overrides_with = "include_disconnected")]
    connected_only: bool,
    /// Also enumerate disconnected graphs; classic equality checks are skipped for them.
    #[arg(long)]
    include_disconnected: bool,
    /// Enumerate one graph per isomorphism class.
    #[arg(long)]
    dedup: bool,
    /// Check graphs from these files (`-` for standard input) instead of enumerating.
    #[arg(long)]
    input: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SearchKind {
    #[value(name = "counterexample-2-2", alias = "counterexample")]
    Counterexample,
    Minimal,
}

#[derive(Args, Serialize)]
struct SearchArgs {
    #[arg(value_enum)]
    kind: SearchKind,
    /// Minimum degree, or a range `a..b` for counterexample searches.
    #[arg(long)]
    delta: String,
    /// Maximum degree, or a range `a..b` for counterexample searches.
    #[arg(long = "Delta")]
    max_degree: String,
    /// Largest vertex count for exhaustive search.
    #[arg(long)]
    n_max: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum Family {
    /// Edge-minimal family: `delta Delta`.
    Gdd,
    /// Complete bipartite `K(delta, Delta)`: `delta Delta`.
    Kdd,
    /// Two adjacent hubs over `Delta - 1` degree-two vertices, odd `Delta`.
    Hdelta,
    /// Star `K(1, Delta)`.
    Star,
    /// Complete graph on `n` vertices.
    Complete,
    /// Two hubs over a `(delta - 2)`-regular ring: `delta Delta`.
    TwoHub,
    /// The 57-vertex graph below both family values for `(4, 56)`.
    Counterexample,
}

/// Usage or input problem (exit 2) vs failed verification (exit 1).
enum Failure {
    Usage(String),
    Failed,
    /// Standard output was closed early; not an error.
    Pipe,
}

macro_rules! outln {
    ($($t:tt)*) => {
        writeln!(io::stdout().lock(), $($t)*)?
    };
}

macro_rules! out {
    ($($t:tt)*) => {
        write!(io::stdout().lock(), $($t)*)?
    };
}

impl From<gaindex::Error> for Failure {
    fn from(e: gaindex::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::Pipe
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) | Err(Failure::Pipe) => ExitCode::SUCCESS,
        Err(Failure::Failed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let common = cli.common;
    if !(common.tolerance.is_finite() && common.tolerance > 0.0) {
        return Err(Failure::Usage(format!("--tolerance must be positive, got {}", common.tolerance)));
    }
    if let Some(jobs) = common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start {jobs} worker threads: {e}")))?;
    }
    match cli.command {
        Command::Compute { files } => compute(&common, &files),
        Command::Construct { family, params, output } => construct(&common, family, &params, output),
        Command::Bounds { params, delta, max_degree } => bounds(&common, &params, delta, max_degree),
        Command::Verify(args) => verify(&common, &args),
        Command::Search(args) => search(&common, &args),
        Command::Spotcheck { max_degree } => spotcheck(&common, &max_degree),
    }
}

fn emit_json(command: &str, config: Value, result: Value) -> CmdResult {
    let doc = json!({ "command": command, "config": config, "result": result });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Usage(e.to_string()))?;
    outln!("{text}");
    Ok(())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn common_config(common: &Common) -> Value {
    to_value(common)
}

#[derive(Serialize)]
struct GraphReport {
    source: String,
    line: usize,
    n: usize,
    m: usize,
    min_degree: usize,
    max_degree: usize,
    ga1: Option<f64>,
    classic: Option<ClassicBounds>,
    best_bound: Option<BoundResult>,
}

fn graph_report(s: &Sourced) -> GraphReport {
    let g = &s.graph;
    let (lo, hi) = (g.min_degree(), g.max_degree());
    let degrees_ok = g.m() > 0 && lo > 0;
    GraphReport {
        source: s.source.clone(),
        line: s.line,
        n: g.n(),
        m: g.m(),
        min_degree: lo,
        max_degree: hi,
        ga1: ga1(g).ok().map(round_sig10),
        classic: if degrees_ok { classic_bounds(g.m(), lo, hi).ok() } else { None },
        best_bound: if degrees_ok { best_lower_bound(lo, hi).ok() } else { None },
    }
}

fn compute(common: &Common, files: &[PathBuf]) -> CmdResult {
    let graphs = read_graphs(files, common.format).map_err(Failure::Usage)?;
    let reports: Vec<GraphReport> = graphs.iter().map(graph_report).collect();
    if common.json {
        return emit_json("compute", json!({ "common": common_config(common), "files": files }), to_value(&reports));
    }
    let mut out = io::stdout().lock();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        writeln!(out, "{}:{}", r.source, r.line)?;
        writeln!(out, "  n = {}, m = {}, delta = {}, Delta = {}", r.n, r.m, r.min_degree, r.max_degree)?;
        match r.ga1 {
            Some(v) => writeln!(out, "  GA1 = {}", Sig10(v))?,
            None => writeln!(out, "  GA1 undefined (no edges)")?,
        }
        match &r.classic {
            Some(c) => writeln!(out, "  classic bounds: {} <= GA1 <= {}", Sig10(c.lower), Sig10(c.upper))?,
            None => writeln!(out, "  classic bounds: n/a (isolated vertices or no edges)")?,
        }
        match &r.best_bound {
            Some(b) => writeln!(
                out,
                "  best degree bound: {} ({}{})",
                Sig10(b.value.unwrap_or(f64::NAN)),
                b.theorem_id,
                b.equality_family.as_ref().map(|f| format!(", equality: {f}")).unwrap_or_default()
            )?,
            None => writeln!(out, "  best degree bound: n/a")?,
        }
    }
    Ok(())
}

fn params_exact<const K: usize>(family: Family, params: &[usize], names: [&str; K]) -> Result<[usize; K], Failure> {
    params.try_into().map_err(|_| {
        Failure::Usage(format!(
            "{} takes {K} parameter(s): {}; got {}",
            family.to_possible_value().expect("no skipped variants").get_name(),
            names.join(" "),
            params.len()
        ))
    })
}

fn build_family(family: Family, params: &[usize]) -> Result<(Graph, Option<f64>), Failure> {
    Ok(match family {
        Family::Gdd => {
            let [d, big] = params_exact(family, params, ["delta", "Delta"])?;
            (construct_gdd(d, big)?, Some(ga1_closed_form_gdd(d, big)?))
        }
        Family::Kdd => {
            let [d, big] = params_exact(family, params, ["delta", "Delta"])?;
            (construct_complete_bipartite(d, big)?, Some(ga1_closed_form_kdd(d, big)?))
        }
        Family::Hdelta => {
            let [big] = params_exact(family, params, ["Delta"])?;
            (construct_h_delta(big)?, Some(ga1_closed_form_hdelta(big)?))
        }
        Family::Star => {
            let [big] = params_exact(family, params, ["Delta"])?;
            (construct_star(big)?, Some(ga1_closed_form_kdd(1, big)?))
        }
        Family::Complete => {
            let [n] = params_exact(family, params, ["n"])?;
            if n < 2 {
                return Err(Failure::Usage("complete graph needs n >= 2".into()));
            }
            (construct_complete(n), Some((n * (n - 1) / 2) as f64))
        }
        Family::TwoHub => {
            let [d, big] = params_exact(family, params, ["delta", "Delta"])?;
            (construct_two_hub(d, big)?, None)
        }
        Family::Counterexample => {
            params_exact(family, params, [])?;
            (construct_counterexample(), None)
        }
    })
}

fn encode(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => write_graph6(g) + "\n",
        Format::Edgelist => g.to_edge_list(),
    }
}

fn construct(common: &Common, family: Family, params: &[usize], output: Option<PathBuf>) -> CmdResult {
    let (g, closed) = build_family(family, params)?;
    let value = ga1(&g)?;
    let text = encode(&g, common.format);
    if let Some(path) = &output {
        fs::write(path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if common.json {
        let mut result = json!({
            "n": g.n(),
            "m": g.m(),
            "min_degree": g.min_degree(),
            "max_degree": g.max_degree(),
            "ga1": round_sig10(value),
            "closed_form": closed.map(round_sig10),
        });
        if output.is_none() {
            result["graph"] = Value::String(text.trim_end().to_string());
        }
        let config = json!({ "common": common_config(common), "family": family, "params": params, "output": output });
        return emit_json("construct", config, result);
    }
    let summary = format!(
        "n = {}, m = {}, delta = {}, Delta = {}\nGA1 (computed)    = {}\nGA1 (closed form) = {}\n",
        g.n(),
        g.m(),
        g.min_degree(),
        g.max_degree(),
        Sig10(value),
        closed.map(|c| Sig10(c).to_string()).unwrap_or_else(|| "-".into()),
    );
    if output.is_some() {
        out!("{summary}");
    } else {
        out!("{text}");
        eprint!("{summary}");
    }
    Ok(())
}

fn profile_args(params: &[usize], delta: Option<usize>, max_degree: Option<usize>) -> Result<(usize, usize), Failure> {
    match (params, delta, max_degree) {
        ([d, big], None, None) => Ok((*d, *big)),
        ([], Some(d), Some(big)) => Ok((d, big)),
        _ => Err(Failure::Usage("give the profile as `delta Delta` or with --delta and --Delta".into())),
    }
}

fn bounds(common: &Common, params: &[usize], delta: Option<usize>, max_degree: Option<usize>) -> CmdResult {
    let (d, big) = profile_args(params, delta, max_degree)?;
    let table = all_bounds(d, big)?;
    let best = best_lower_bound(d, big)?;
    let per_edge = edge_weight(d, big)?;
    if common.json {
        let result = json!({
            "bounds": table,
            "best": best,
            "classic_per_edge": round_sig10(per_edge),
        });
        return emit_json("bounds", json!({ "common": common_config(common), "delta": d, "Delta": big }), result);
    }
    let mut out = io::stdout().lock();
    writeln!(out, "delta = {d}, Delta = {big}")?;
    for b in &table {
        writeln!(out, "  {b}")?;
    }
    writeln!(out, "classic: GA1 >= m * {}", Sig10(per_edge))?;
    writeln!(out, "best: {} {}", best.theorem_id, Sig10(best.value.expect("best bound is applicable")))?;
    Ok(())
}

fn verify(common: &Common, args: &VerifyArgs) -> CmdResult {
    let target: Target = args.theorem.parse()?;
    let report = if args.input.is_empty() {
        if !(2..=MAX_ENUM_VERTICES).contains(&args.n_max) {
            return Err(Failure::Usage(format!("--n-max must be in 2..={MAX_ENUM_VERTICES}, got {}", args.n_max)));
        }
        let template = EnumSpec {
            n: 2,
            require_connected: !args.include_disconnected,
            min_degree: args.delta,
            max_degree: args.max_degree,
            degree_floor: None,
            degree_cap: None,
            max_edges: None,
            dedup_isomorphic: args.dedup,
        };
        template.validate()?;
        verify_up_to(target, &template, args.n_max, common.tolerance)?
    } else {
        let graphs: Vec<Graph> =
            read_graphs(&args.input, common.format).map_err(Failure::Usage)?.into_iter().map(|s| s.graph).collect();
        verify_graphs(target, &graphs, common.tolerance)?
    };
    print_report(common, "verify", to_value(args), &report)
}

fn print_report(common: &Common, command: &str, args: Value, report: &VerificationReport) -> CmdResult {
    if common.json {
        emit_json(command, json!({ "common": common_config(common), "args": args }), to_value(report))?;
    } else {
        outln!("{report}");
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

fn parse_range(text: &str, what: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("{what}: expected a number or a range `a..b`, got `{text}`"));
    match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok(a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?)
        }
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            Ok(v..=v)
        }
    }
}

fn parse_single(text: &str, what: &str) -> Result<usize, Failure> {
    text.trim().parse().map_err(|_| Failure::Usage(format!("{what}: expected a number, got `{text}`")))
}

fn search(common: &Common, args: &SearchArgs) -> CmdResult {
    match args.kind {
        SearchKind::Counterexample => {
            let deltas = parse_range(&args.delta, "--delta")?;
            let bigs = parse_range(&args.max_degree, "--Delta")?;
            let n_max = args.n_max.unwrap_or(7);
            let found = search_counterexamples(deltas, bigs, n_max)?;
            if common.json {
                let config = json!({ "common": common_config(common), "args": args, "n_exhaustive": n_max });
                return emit_json("search", config, json!({ "witnesses": found }));
            }
            outln!("{} witness(es) below min(gdd, kdd)", found.len());
            for w in &found {
                outln!(
                    "  {} [{}] n = {}, m = {}, profile ({}, {}): GA1 = {}, min family value = {}, margin = {}",
                    w.graph6,
                    w.source,
                    w.n,
                    w.m,
                    w.delta,
                    w.max_degree,
                    Sig10(w.lhs),
                    Sig10(w.rhs),
                    Sig10(w.margin)
                );
            }
            Ok(())
        }
        SearchKind::Minimal => {
            let d = parse_single(&args.delta, "--delta")?;
            let big = parse_single(&args.max_degree, "--Delta")?;
            let n_max = match args.n_max {
                Some(n) => n,
                None => {
                    let hi = gaindex::families::minimal_graph_ranges(d, big)?.n_hi;
                    hi.min(MAX_ENUM_VERTICES).max(big + 1)
                }
            };
            let r = search_minimal(d, big, n_max)?;
            if common.json {
                let config = json!({ "common": common_config(common), "args": args, "n_max": n_max });
                return emit_json("search", config, to_value(&r));
            }
            outln!("profile ({d}, {big}), n <= {n_max}");
            outln!("minimum GA1: {}", Sig10(r.min_value));
            outln!(
                "ranges: {} <= m <= {}, {} <= n <= {}{}",
                r.ranges.m_lo,
                r.ranges.m_hi,
                r.ranges.n_lo,
                r.ranges.n_hi,
                if r.complete { "" } else { " (search does not reach the top of the vertex range)" }
            );
            outln!("witnesses within ranges: {}", r.within_ranges);
            for w in &r.witnesses {
                outln!("  {w}");
            }
            Ok(())
        }
    }
}

fn spotcheck(common: &Common, range: &str) -> CmdResult {
    let bigs = parse_range(range, "--Delta")?;
    let report = min_degree_two_spotchecks(bigs.clone(), common.tolerance)?;
    let args = json!({ "Delta": [bigs.start(), bigs.end()] });
    print_report(common, "spotcheck", args, &report)
}
