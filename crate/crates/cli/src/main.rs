use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use genturan::blowup::{b_parameter_with, verify_certificate};
use genturan::codec::{parse_any, to_graph6};
use genturan::counting::{automorphism_count, count_cliques, count_copies, find_disjoint_cliques, list_cliques};
use genturan::cover::{cover_decomposition, matching_number, verify_cover, SetFamily};
use genturan::formulas::{
    alpha_coefficients, construction_spec, ex_closed_value, lemma_hgt_value, x_exponent, ProblemParams, TailSupplier,
};
use genturan::oracle::{self, brute_force_ex, default_tail, search_tail_t, verify_theorem1, verify_universal_vertices};
use genturan::{bits, make_turan, partial_blowup, Error, Host, Hypergraph};

/// Generalized Turán numbers for vertex-disjoint clique packings.
///
/// Graph arguments (`-g`, `--pattern`) take graph6 text or hypergraph JSON
/// `{"n":..,"p":..,"edges":[[..],..]}`; prefix with `@` to read a file.
#[derive(Parser, Serialize)]
#[command(name = "genturan", version)]
struct Cli {
    /// Output format; graph6 and csv apply only to some commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for exhaustive searches.
    #[arg(long, global = true, env = "GENTURAN_WORKERS")]
    workers: Option<usize>,
    /// Lift the enumeration size guards.
    #[arg(long, global = true)]
    allow_large: bool,
    /// Report wall time in the meta section.
    #[arg(long, global = true)]
    timing: bool,
    /// Write the output to a file instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Graph6,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Raw,
    Dedup,
    Auto,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "name")]
enum Command {
    /// Build a graph or hypergraph.
    #[command(subcommand)]
    Construct(Construct),
    /// Count cliques, copies or automorphisms.
    #[command(subcommand)]
    Count(Count),
    /// Test a host for vertex-disjoint cliques.
    #[command(subcommand)]
    Check(Check),
    /// The exponent x(s, r, t).
    Exponent(Srt),
    /// Closed-form value of ex(n, K_s, tK_r) and its construction.
    Ex(ExArgs),
    /// Deletion classes of a pattern and their coefficients.
    Alpha(AlphaArgs),
    /// The blowup exponent b(H) with its certificate.
    Bparam(BparamArgs),
    /// A/B cover of a set family without t pairwise disjoint members.
    Cover(CoverArgs),
    /// Exhaustive ex(n, H, tK_r^p).
    Oracle(OracleArgs),
    /// Compare oracle and formulas over a range.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "what")]
enum Construct {
    /// The Turán graph T(m, k).
    Turan {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// K_{t(r-x)-1}^p + tail on n vertices.
    Extremal(ExArgs),
    /// Partial blowup of a graph: every vertex of U becomes m copies.
    Blowup {
        #[arg(short, long)]
        graph: String,
        /// Comma-separated vertices.
        #[arg(long, value_delimiter = ',')]
        u: Vec<usize>,
        #[arg(long)]
        m: usize,
    },
    /// The complete p-graph on n vertices.
    Clique {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
    /// A K_{x+1}^p-free host on m vertices with the most K_x^p.
    Tail {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        x: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "what")]
enum Count {
    /// Copies of K_q^p.
    Cliques {
        #[arg(short, long)]
        graph: String,
        #[arg(long)]
        q: usize,
        /// Also list the vertex sets.
        #[arg(long)]
        list: bool,
    },
    /// Copies of a pattern in a host.
    Copies {
        #[arg(short, long)]
        graph: String,
        #[arg(long)]
        pattern: String,
    },
    /// Automorphisms of a pattern.
    Aut {
        #[arg(short, long)]
        graph: String,
    },
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "what")]
enum Check {
    /// Whether the host avoids t vertex-disjoint K_r^p.
    Free {
        #[arg(short, long)]
        graph: String,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Args, Serialize)]
struct Srt {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: usize,
}

#[derive(Args, Serialize)]
struct ExArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 2)]
    p: usize,
}

#[derive(Args, Serialize)]
struct AlphaArgs {
    #[arg(short, long)]
    graph: String,
    #[arg(long)]
    t: usize,
}

#[derive(Args, Serialize)]
struct BparamArgs {
    #[arg(short, long)]
    graph: String,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    r: usize,
    /// Blowup multiplicity; defaults to t.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args, Serialize)]
struct CoverArgs {
    /// Family as JSON {"n":..,"r":..,"members":[[..],..]}, or @file.
    #[arg(short, long)]
    family: String,
    #[arg(long)]
    t: usize,
}

#[derive(Args, Serialize)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    /// The pattern H.
    #[arg(short, long)]
    graph: String,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    /// Only count hosts with this many universal vertices.
    #[arg(long, default_value_t = 0)]
    universal: usize,
    #[arg(long, default_value_t = oracle::DEFAULT_WITNESS_CAP)]
    witness_cap: usize,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "what")]
enum Verify {
    /// Oracle against the closed form for K_s over n in [from, to].
    Theorem1 {
        #[command(flatten)]
        #[serde(flatten)]
        srt: Srt,
        #[arg(long, default_value_t = 3)]
        from: usize,
        #[arg(long, default_value_t = 7)]
        to: usize,
    },
    /// Whether some extremal host has t - 1 universal vertices.
    Universal {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        graph: String,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: usize,
    },
}

struct CliError {
    kind: &'static str,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { kind: e.kind(), message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { kind: "usage", message: message.into() }
}

type Res<T> = Result<T, CliError>;

/// What a command produced, before formatting.
struct Output {
    data: Value,
    /// Graphs for `--format graph6`.
    graphs: Vec<Hypergraph>,
    /// Table for `--format csv`.
    csv: Option<String>,
}

impl Output {
    fn data(data: Value) -> Self {
        Output { data, graphs: Vec::new(), csv: None }
    }

    fn graph(data: Value, h: Hypergraph) -> Self {
        Output { data, graphs: vec![h], csv: None }
    }
}

fn read_input(arg: &str) -> Res<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError { kind: "io", message: format!("{path}: {e}") }),
        None => Ok(arg.to_string()),
    }
}

fn read_graph(arg: &str) -> Res<Hypergraph> {
    Ok(parse_any(&read_input(arg)?)?)
}

fn sets(masks: &[u64]) -> Vec<Vec<usize>> {
    masks.iter().map(|&m| bits::to_vec(m)).collect()
}

fn graph_json(h: &Hypergraph) -> Value {
    let mut v = json!({ "n": h.order(), "p": h.uniformity(), "edges": h.edge_lists() });
    if h.uniformity() == 2 {
        if let Ok(g6) = h.to_graph().and_then(|g| to_graph6(&g)) {
            v["graph6"] = json!(g6);
        }
    }
    v
}

fn construct(cmd: &Construct) -> Res<Output> {
    let h = match cmd {
        Construct::Turan { m, k } => Hypergraph::from_graph(&make_turan(*m, *k))?,
        Construct::Extremal(a) => {
            let params = ProblemParams::new(a.n, a.s, a.r, a.t, a.p)?;
            let supplier: TailSupplier = &default_tail;
            let spec = construction_spec(&params, Some(supplier))?;
            let h = spec.realize()?;
            let data = json!({
                "apex": spec.apex,
                "x": spec.x,
                "tail_order": spec.tail_order(),
                "graph": graph_json(&h),
            });
            return Ok(Output::graph(data, h));
        }
        Construct::Blowup { graph, u, m } => {
            let h = read_graph(graph)?;
            if let Some(&v) = u.iter().find(|&&v| v >= h.order()) {
                return Err(usage(format!("vertex {v} out of range for n = {}", h.order())));
            }
            partial_blowup(&h, bits::from_slice(u), *m)?
        }
        Construct::Clique { n, p } => Hypergraph::complete(*n, *p)?,
        Construct::Tail { m, x, p } => {
            let (h, cliques) = search_tail_t(*m, *x, *p)?;
            return Ok(Output::graph(json!({ "cliques": cliques, "graph": graph_json(&h) }), h));
        }
    };
    Ok(Output::graph(json!({ "graph": graph_json(&h) }), h))
}

fn count(cmd: &Count) -> Res<Output> {
    let data = match cmd {
        Count::Cliques { graph, q, list } => {
            let h = read_graph(graph)?;
            if *list {
                let family = list_cliques(&h, *q);
                json!({ "count": family.len(), "cliques": family.lists() })
            } else {
                json!({ "count": count_cliques(&h, *q) })
            }
        }
        Count::Copies { graph, pattern } => {
            let host = read_graph(graph)?;
            let pattern = read_graph(pattern)?;
            json!({ "copies": count_copies(&pattern, &host)? })
        }
        Count::Aut { graph } => json!({ "automorphisms": automorphism_count(&read_graph(graph)?)? }),
    };
    Ok(Output::data(data))
}

fn check(cmd: &Check) -> Res<Output> {
    let Check::Free { graph, t, r } = cmd;
    let h = read_graph(graph)?;
    if *r < h.uniformity() {
        return Err(usage(format!("r = {r} below the uniformity {}", h.uniformity())));
    }
    let witness = find_disjoint_cliques(&h, *t, *r);
    Ok(Output::data(json!({ "free": witness.is_none(), "witness": witness.map(|w| sets(&w)) })))
}

fn ex(a: &ExArgs) -> Res<Output> {
    let params = ProblemParams::new(a.n, a.s, a.r, a.t, a.p)?;
    let mut data = json!({ "value": ex_closed_value(&params)? });
    if let Ok(spec) = construction_spec(&params, None) {
        data["apex"] = json!(spec.apex);
        data["x"] = json!(spec.x);
        data["tail_order"] = json!(spec.tail_order());
    }
    if let Ok(v) = lemma_hgt_value(a.s, a.r, a.t) {
        data["single_clique_value"] = json!(v);
    }
    Ok(Output::data(data))
}

fn alpha(a: &AlphaArgs) -> Res<Output> {
    let table = alpha_coefficients(&read_graph(&a.graph)?, a.t)?;
    let mut csv = String::from("graph,removed,deletions,alpha\n");
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|e| {
            let g = graph_json(&e.graph);
            let label = g.get("graph6").cloned().unwrap_or_else(|| json!(e.graph.edge_lists()));
            csv.push_str(&format!("{},{},{},{}\n", label.to_string().trim_matches('"'), e.removed, e.deletions, e.alpha));
            json!({ "graph": g, "removed": e.removed, "deletions": e.deletions, "alpha": e.alpha })
        })
        .collect();
    Ok(Output { data: json!({ "t": table.t, "entries": entries }), graphs: Vec::new(), csv: Some(csv) })
}

fn bparam(a: &BparamArgs) -> Res<Output> {
    let h = read_graph(&a.graph)?;
    let res = b_parameter_with(&h, a.t, a.r, a.m.unwrap_or(a.t))?;
    let verified = verify_certificate(&h, a.t, a.r, &res)?;
    let certificate = res.certificate.as_ref().map(|c| {
        let blocked: Vec<Value> =
            c.blocked.iter().map(|b| json!({ "set": bits::to_vec(b.set), "packing": sets(&b.packing) })).collect();
        json!({ "u": bits::to_vec(c.u), "multiplicity": c.multiplicity, "blocked": blocked })
    });
    Ok(Output::data(json!({ "b": res.b, "saturated": res.saturated, "verified": verified, "certificate": certificate })))
}

fn cover(a: &CoverArgs) -> Res<Output> {
    let family = SetFamily::from_json(&read_input(&a.family)?)?;
    let pair = cover_decomposition(&family, a.t)?;
    Ok(Output::data(json!({
        "a": bits::to_vec(pair.a),
        "b": bits::to_vec(pair.b),
        "matching_number": matching_number(&family, a.t),
        "valid": verify_cover(&family, a.t, &pair),
    })))
}

fn oracle_config(cli: &Cli, mode: ModeArg, universal: usize, witness_cap: usize) -> oracle::OracleConfig {
    let mode = match mode {
        ModeArg::Raw => oracle::Mode::Raw,
        ModeArg::Dedup => oracle::Mode::Dedup,
        ModeArg::Auto => oracle::Mode::Auto,
    };
    oracle::OracleConfig { mode, universal, witness_cap, workers: cli.workers, allow_large: cli.allow_large }
}

fn oracle_json(res: &oracle::OracleResult) -> Value {
    json!({
        "value": res.value,
        "witnesses": res.witnesses.iter().map(graph_json).collect::<Vec<_>>(),
        "stats": { "scanned": res.stats.scanned, "pruned": res.stats.pruned, "admissible": res.stats.admissible },
    })
}

fn run_oracle(cli: &Cli, a: &OracleArgs) -> Res<Output> {
    let pattern = read_graph(&a.graph)?;
    let res = brute_force_ex(a.n, &pattern, a.t, a.r, &oracle_config(cli, a.mode, a.universal, a.witness_cap))?;
    Ok(Output { data: oracle_json(&res), graphs: res.witnesses, csv: None })
}

fn verify(cli: &Cli, cmd: &Verify) -> Res<Output> {
    let cfg = oracle_config(cli, ModeArg::Auto, 0, oracle::DEFAULT_WITNESS_CAP);
    match cmd {
        Verify::Theorem1 { srt, from, to } => {
            let report = verify_theorem1(*from..=*to, srt.s, srt.r, srt.t, &cfg)?;
            let mut csv = String::from("n,oracle,formula,equal\n");
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|row| {
                    csv.push_str(&format!("{},{},{},{}\n", row.n, row.oracle, row.formula, row.equal()));
                    json!({
                        "n": row.n,
                        "oracle": row.oracle,
                        "formula": row.formula,
                        "equal": row.equal(),
                        "witness": row.witness.as_ref().map(graph_json),
                    })
                })
                .collect();
            let data = json!({ "rows": rows, "lower_bound_holds": report.lower_bound_holds, "onset": report.onset });
            Ok(Output { data, graphs: Vec::new(), csv: Some(csv) })
        }
        Verify::Universal { n, graph, t, r } => {
            let report = verify_universal_vertices(*n, &read_graph(graph)?, *t, *r, &cfg)?;
            Ok(Output::data(json!({
                "holds": report.holds(),
                "unconstrained": oracle_json(&report.unconstrained),
                "constrained": oracle_json(&report.constrained),
            })))
        }
    }
}

fn command_name(cmd: &Command) -> String {
    let sub = match cmd {
        Command::Construct(c) => match c {
            Construct::Turan { .. } => "turan",
            Construct::Extremal(_) => "extremal",
            Construct::Blowup { .. } => "blowup",
            Construct::Clique { .. } => "clique",
            Construct::Tail { .. } => "tail",
        },
        Command::Count(c) => match c {
            Count::Cliques { .. } => "cliques",
            Count::Copies { .. } => "copies",
            Count::Aut { .. } => "aut",
        },
        Command::Check(Check::Free { .. }) => "free",
        Command::Verify(Verify::Theorem1 { .. }) => "theorem1",
        Command::Verify(Verify::Universal { .. }) => "universal",
        _ => "",
    };
    let top = match cmd {
        Command::Construct(_) => "construct",
        Command::Count(_) => "count",
        Command::Check(_) => "check",
        Command::Exponent(_) => "exponent",
        Command::Ex(_) => "ex",
        Command::Alpha(_) => "alpha",
        Command::Bparam(_) => "bparam",
        Command::Cover(_) => "cover",
        Command::Oracle(_) => "oracle",
        Command::Verify(_) => "verify",
    };
    if sub.is_empty() {
        top.to_string()
    } else {
        format!("{top} {sub}")
    }
}

fn render(cli: &Cli, out: Output, elapsed: std::time::Duration) -> Res<String> {
    match cli.format {
        Format::Json => {
            let mut meta = json!({ "version": env!("CARGO_PKG_VERSION"), "workers": cli.workers });
            if cli.timing {
                meta["elapsed_ms"] = json!(elapsed.as_secs_f64() * 1000.0);
            }
            let report = json!({
                "command": command_name(&cli.command),
                "config": serde_json::to_value(cli).expect("arguments serialize"),
                "data": out.data,
                "meta": meta,
            });
            Ok(serde_json::to_string_pretty(&report).expect("values serialize") + "\n")
        }
        Format::Graph6 => {
            if out.graphs.is_empty() {
                return Err(usage("this command has no graph output; use --format json"));
            }
            let mut text = String::new();
            for h in &out.graphs {
                text.push_str(&to_graph6(&h.to_graph()?)?);
                text.push('\n');
            }
            Ok(text)
        }
        Format::Csv => out.csv.ok_or_else(|| usage("this command has no table output; use --format json")),
    }
}

fn run(cli: &Cli) -> Res<String> {
    let start = Instant::now();
    let out = match &cli.command {
        Command::Construct(c) => construct(c)?,
        Command::Count(c) => count(c)?,
        Command::Check(c) => check(c)?,
        Command::Exponent(a) => Output::data(json!({ "x": x_exponent(a.s, a.r, a.t)? })),
        Command::Ex(a) => ex(a)?,
        Command::Alpha(a) => alpha(a)?,
        Command::Bparam(a) => bparam(a)?,
        Command::Cover(a) => cover(a)?,
        Command::Oracle(a) => run_oracle(cli, a)?,
        Command::Verify(v) => verify(cli, v)?,
    };
    let text = render(cli, out, start.elapsed())?;
    match &cli.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError { kind: "io", message: format!("{}: {e}", path.display()) })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn fail(err: CliError) -> ExitCode {
    let doc = json!({ "error": { "kind": err.kind, "message": err.message } });
    println!("{doc}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(usage(e.render().to_string().trim())),
    };
    match run(&cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}
