use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use forestry::bound::{
    diamond_gadgets, min_ratio_check_separated, p_bound, pendant_diamond_gadgets, q_bound,
    ring_family_with_cap, star_split_check, two_bundle_gadgets, Gadget, RatioReport,
    DEFAULT_DIRECT_CAP,
};
use forestry::count::{count_forests, count_forests_sequential, count_trees_sequential, MemoCache};
use forestry::graph::{parse_graph, to_edge_list, MultiGraph};
use forestry::harness::{
    catalog, catalog_entry, sweep_theorem, SweepError, SweepOptions, SweepSummary, Theorem,
    Verdict,
};
use forestry::lift::{lift_constant_with_cap, ConstantKind};

#[derive(Parser, Debug)]
#[command(name = "forestry", version, about = "Exact spanning forest counts and bound checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Edge-list or graph6 file; stdin when absent or "-".
    input: Option<PathBuf>,
    /// Use a named catalog graph instead of reading input.
    #[arg(long, conflicts_with = "input")]
    catalog: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of spanning forests.
    Count(GraphInput),
    /// Number of spanning trees.
    Trees(GraphInput),
    /// Forest count against p(G) or q(G).
    Bound {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Sweep every generated graph up to a size against a bound.
    Verify {
        /// 1 checks p(G) on degrees {2,3}; 2 checks q(G) on degrees {2,3,4}.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long)]
        max_n: Option<usize>,
        /// JSONL file receiving one record per graph.
        #[arg(long)]
        store: Option<PathBuf>,
        /// Skip graphs already recorded in the store.
        #[arg(long, requires = "store")]
        resume: bool,
    },
    /// Ring family built from a seed graph and one of its edges.
    Family {
        #[command(flatten)]
        seed: GraphInput,
        /// The chained edge, as u,v.
        #[arg(long, value_parser = parse_pair)]
        edge: (usize, usize),
        /// Ring sizes.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        m: Vec<usize>,
        /// Largest ring also built and counted directly.
        #[arg(long, default_value_t = DEFAULT_DIRECT_CAP)]
        direct_cap: usize,
    },
    /// Lift constants for m = 1..=max-m.
    Constants {
        #[arg(long, value_enum, default_value_t = Kind::Forests)]
        kind: Kind,
        #[arg(long, default_value_t = 5)]
        max_m: usize,
    },
    /// Extension-count ratios of two gadgets over all partitions of their slots.
    Ratio {
        /// Built-in gadget pair; excludes the file options.
        #[arg(long, value_enum, conflicts_with_all = ["gadget_a", "gadget_b"])]
        preset: Option<Preset>,
        #[arg(long, requires_all = ["gadget_b", "attach"])]
        gadget_a: Option<PathBuf>,
        #[arg(long)]
        gadget_b: Option<PathBuf>,
        /// Slot vertices of gadget A (and of B unless --attach-b is given).
        #[arg(long, value_delimiter = ',')]
        attach: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        attach_b: Vec<usize>,
        /// Slot pairs i:j that must lie in different blocks.
        #[arg(long, value_delimiter = ',', value_parser = parse_slot_pair)]
        separate: Vec<(usize, usize)>,
    },
    /// Named graphs, checked against their stored values.
    Catalog {
        #[arg(long)]
        name: Option<String>,
        /// Print the edge list of --name.
        #[arg(long, requires = "name")]
        emit_edgelist: bool,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Family {
    P,
    Q,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Kind {
    Forests,
    Trees,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Preset {
    TwoBundle,
    PendantDiamond,
    Diamond,
    StarSplit,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected u,v")?;
    Ok((
        a.trim().parse().map_err(|e| format!("{e}"))?,
        b.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

fn parse_slot_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected i:j")?;
    Ok((
        a.trim().parse().map_err(|e| format!("{e}"))?,
        b.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

/// Failure classes mapped to exit codes.
enum Failure {
    /// Exit 1.
    Violation(String),
    /// Exit 2.
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_graph(input: &GraphInput) -> Result<MultiGraph, Failure> {
    if let Some(name) = &input.catalog {
        return catalog_entry(name).map(|e| e.graph).map_err(usage);
    }
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(usage)?;
            s
        }
    };
    parse_graph(&text).map_err(usage)
}

/// Writes to stdout; a closed pipe is not an error.
fn put(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn emit(out: Output, text: String, value: Value) {
    match out {
        Output::Text => put(&format!("{text}\n")),
        Output::Json => put(&format!("{value}\n")),
    }
}

fn cmd_count(out: Output, input: &GraphInput, trees: bool) -> Outcome {
    let g = read_graph(input)?;
    let cache = MemoCache::from_env();
    // sequential so that cache_hits does not depend on the pool size
    let forests = count_forests_sequential(&g, &cache);
    let tau = count_trees_sequential(&g, &cache);
    let text = if trees { tau.to_string() } else { forests.to_string() };
    emit(
        out,
        text,
        json!({
            "v": 1,
            "n": g.vertex_count(),
            "m": g.edge_count(),
            "forests": forests.to_string(),
            "trees": tau.to_string(),
            "cache_hits": cache.stats().hits,
        }),
    );
    Ok(())
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::GE => "GE",
        Verdict::EQ => "EQ",
        Verdict::LT => "LT",
    }
}

fn cmd_bound(out: Output, family: Family, input: &GraphInput) -> Outcome {
    let g = read_graph(input)?;
    let bound = match family {
        Family::P => p_bound(&g),
        Family::Q => q_bound(&g),
    }
    .map_err(usage)?;
    let f = count_forests(&g, &MemoCache::from_env());
    let verdict = Verdict::from(bound.compare(&f));
    emit(
        out,
        format!("{f} {bound} {}", verdict_word(verdict)),
        json!({
            "v": 1,
            "forests": f.to_string(),
            "bound": bound.to_string(),
            "bound_value": bound.value(),
            "verdict": verdict_word(verdict),
        }),
    );
    Ok(())
}

fn summary_text(s: &SweepSummary) -> String {
    let mut lines = vec![format!(
        "{}, n <= {}: {} graphs",
        match s.theorem {
            Theorem::One => "p(G), degrees 2-3",
            Theorem::Two => "q(G), degrees 2-4",
        },
        s.max_n,
        s.total
    )];
    for (n, c) in &s.per_n {
        lines.push(format!("  n={n}: {c}"));
    }
    let label = |f: &forestry::harness::Finding| {
        let name = if f.aliases.is_empty() {
            f.key.clone()
        } else {
            f.aliases.join(" = ")
        };
        format!(
            "{name} (n={}, F={}, bound {})",
            f.n,
            f.forests,
            f.bound
        )
    };
    for f in &s.exceptions {
        lines.push(format!("exception: {}", label(f)));
    }
    for f in &s.equalities {
        lines.push(format!("equality: {}", label(f)));
    }
    for f in &s.violations {
        lines.push(format!("VIOLATION: {}", label(f)));
    }
    if let Some(m) = &s.per_vertex {
        lines.push(format!(
            "min F^(1/n) at n={}: {:.10} (bound {:.10})",
            m.n, m.root.value, m.bound_root
        ));
    }
    if s.resumed > 0 {
        lines.push(format!("resumed: {}", s.resumed));
    }
    lines.join("\n")
}

fn cmd_verify(out: Output, theorem: u8, max_n: Option<usize>, store: Option<PathBuf>, resume: bool) -> Outcome {
    let theorem = if theorem == 1 { Theorem::One } else { Theorem::Two };
    let options = SweepOptions {
        max_n: max_n.unwrap_or_else(|| theorem.default_max_n()),
        store,
        resume,
    };
    let (summary, failed) = match sweep_theorem(theorem, &options) {
        Ok(s) => (s, None),
        Err(SweepError::ViolationFound { key, summary }) => (*summary, Some(key)),
        Err(e) => return Err(usage(e)),
    };
    let value = serde_json::to_value(&summary).expect("serializable");
    let mut value = json!({ "v": 1, "summary": value });
    value["ok"] = json!(failed.is_none());
    emit(out, summary_text(&summary), value);
    match failed {
        Some(key) => Err(Failure::Violation(format!("violation at {key}"))),
        None => Ok(()),
    }
}

fn cmd_family(out: Output, seed: &GraphInput, edge: (usize, usize), ms: &[usize], direct_cap: usize) -> Outcome {
    let g = read_graph(seed)?;
    let series = ring_family_with_cap(&g, edge.0, edge.1, ms, direct_cap).map_err(usage)?;
    let mut lines = vec![format!(
        "r={} A={} B={} limit={:.10}",
        series.order, series.a, series.b, series.limit.value
    )];
    for row in &series.rows {
        let direct = row
            .direct
            .as_ref()
            .map(|d| format!(" direct={d}"))
            .unwrap_or_default();
        let digits = row.forests.to_string();
        let shown = if digits.len() > 60 {
            format!("<{} digits>", digits.len())
        } else {
            digits
        };
        lines.push(format!("m={} F={shown}{direct} root={:.10}", row.m, row.root.value));
    }
    let mut value = serde_json::to_value(&series).expect("serializable");
    value["v"] = json!(1);
    emit(out, lines.join("\n"), value);
    if !series.direct_counts_agree() {
        return Err(Failure::Violation("closed form disagrees with direct count".into()));
    }
    Ok(())
}

fn cmd_constants(out: Output, kind: Kind, max_m: usize) -> Outcome {
    let k = match kind {
        Kind::Forests => ConstantKind::Forests,
        Kind::Trees => ConstantKind::Trees,
    };
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for m in 1..=max_m {
        let c = lift_constant_with_cap(m, k, max_m.max(1)).map_err(usage)?;
        let edges = to_edge_list(&c.witness).replace('\n', "; ");
        lines.push(format!("{m} {} [{}]", c.value, edges.trim_end_matches("; ")));
        rows.push(json!({
            "m": m,
            "value": c.value.to_string(),
            "degrees": c.degrees,
            "witness": c.witness.edge_list(),
            "witness_n": c.witness.vertex_count(),
        }));
    }
    emit(out, lines.join("\n"), json!({ "v": 1, "constants": rows }));
    Ok(())
}

fn report_value(r: &RatioReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "partition": row.partition,
                "numerator": row.numerator.to_string(),
                "denominator": row.denominator.to_string(),
                "ratio": row.ratio.as_ref().map(|q| q.to_string()),
            })
        })
        .collect();
    json!({
        "v": 1,
        "rows": rows,
        "min": r.min.as_ref().map(|q| q.to_string()),
        "argmin": r.argmin,
        "unbounded": r.unbounded,
    })
}

fn report_text(r: &RatioReport) -> String {
    let mut lines: Vec<String> = r
        .rows
        .iter()
        .map(|row| {
            let ratio = row
                .ratio
                .as_ref()
                .map(|q| q.to_string())
                .unwrap_or_else(|| "inf".into());
            format!("{:?} {}/{} = {ratio}", row.partition, row.numerator, row.denominator)
        })
        .collect();
    match &r.min {
        Some(m) => lines.push(format!("min {m}")),
        None => lines.push("min none".into()),
    }
    lines.join("\n")
}

fn read_gadget(path: &PathBuf, slots: &[usize]) -> Result<Gadget, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let g = parse_graph(&text).map_err(usage)?;
    Gadget::new(g, slots.to_vec()).map_err(usage)
}

#[allow(clippy::too_many_arguments)]
fn cmd_ratio(
    out: Output,
    preset: Option<Preset>,
    a: Option<PathBuf>,
    b: Option<PathBuf>,
    attach: &[usize],
    attach_b: &[usize],
    separate: &[(usize, usize)],
) -> Outcome {
    let (ga, gb, sep) = match (preset, a, b) {
        (Some(Preset::StarSplit), _, _) => {
            let report = star_split_check();
            let text: Vec<String> = report
                .rows
                .iter()
                .map(|r| {
                    let c: Vec<String> = r.counts.iter().map(|c| c.to_string()).collect();
                    format!("{:?} {}", r.partition, c.join(" "))
                })
                .collect();
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "partition": r.partition,
                        "counts": r.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "matches": r.matches,
                        "dominates": r.dominates,
                    })
                })
                .collect();
            emit(out, text.join("\n"), json!({ "v": 1, "rows": rows }));
            if report.all_match() && report.all_dominate() {
                return Ok(());
            }
            return Err(Failure::Violation("star split table mismatch".into()));
        }
        (Some(Preset::TwoBundle), _, _) => {
            let (x, y) = two_bundle_gadgets();
            (x, y, Vec::new())
        }
        (Some(Preset::PendantDiamond), _, _) => {
            let (x, y) = pendant_diamond_gadgets();
            (x, y, Vec::new())
        }
        (Some(Preset::Diamond), _, _) => diamond_gadgets(),
        (None, Some(a), Some(b)) => {
            let slots_b = if attach_b.is_empty() { attach } else { attach_b };
            (read_gadget(&a, attach)?, read_gadget(&b, slots_b)?, separate.to_vec())
        }
        _ => return Err(usage("give --preset or both --gadget-a and --gadget-b")),
    };
    let report = min_ratio_check_separated(&ga, &gb, &sep).map_err(usage)?;
    emit(out, report_text(&report), report_value(&report));
    Ok(())
}

fn cmd_catalog(out: Output, name: Option<String>, emit_edges: bool) -> Outcome {
    if let Some(name) = name {
        let e = catalog_entry(&name).map_err(usage)?;
        e.verify(&MemoCache::default())
            .map_err(|err| Failure::Violation(err.to_string()))?;
        if emit_edges {
            put(&to_edge_list(&e.graph));
            return Ok(());
        }
        emit(
            out,
            format!("{} n={} m={} F={}", e.name, e.graph.vertex_count(), e.graph.edge_count(), e.forests),
            json!({
                "v": 1,
                "name": e.name,
                "n": e.graph.vertex_count(),
                "m": e.graph.edge_count(),
                "forests": e.forests.to_string(),
                "degrees": [e.degrees.0, e.degrees.1, e.degrees.2],
            }),
        );
        return Ok(());
    }
    let entries = catalog().map_err(|err| Failure::Violation(err.to_string()))?;
    let text: Vec<String> = entries
        .iter()
        .map(|e| format!("{} n={} m={} F={}", e.name, e.graph.vertex_count(), e.graph.edge_count(), e.forests))
        .collect();
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| json!({ "name": e.name, "n": e.graph.vertex_count(), "forests": e.forests.to_string() }))
        .collect();
    emit(out, text.join("\n"), json!({ "v": 1, "entries": rows }));
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(usage)?;
    }
    let out = cli.output;
    match cli.command {
        Command::Count(input) => cmd_count(out, &input, false),
        Command::Trees(input) => cmd_count(out, &input, true),
        Command::Bound { family, graph } => cmd_bound(out, family, &graph),
        Command::Verify { theorem, max_n, store, resume } => cmd_verify(out, theorem, max_n, store, resume),
        Command::Family { seed, edge, m, direct_cap } => cmd_family(out, &seed, edge, &m, direct_cap),
        Command::Constants { kind, max_m } => cmd_constants(out, kind, max_m),
        Command::Ratio { preset, gadget_a, gadget_b, attach, attach_b, separate } => {
            cmd_ratio(out, preset, gadget_a, gadget_b, &attach, &attach_b, &separate)
        }
        Command::Catalog { name, emit_edgelist } => cmd_catalog(out, name, emit_edgelist),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
