//! The `k2ham` command-line surface: one thin subcommand per library
//! capability, graph6 in and out, so results compose with the usual
//! generator pipelines.
//!
//! Graph arguments accept a catalog name (`petersen`, `gp(11,2)`, …),
//! literal graph6/sparse6 text, or `-` to read one line from standard
//! input — the latter makes `k2ham build … | k2ham check - --pred …`
//! work. All vertex labels on the command line are 0-indexed, matching
//! the graph6 labeling that the commands print.
//!
//! Exit codes: 0 success, 1 failed `--expect` or unprovable claim,
//! 2 usage or I/O, 3 unparsable graph or stream line, 4 precondition
//! violation in a construction or check, 5 undecided under `--strict`
//! or a budget.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::cells::{
    build_gamma, check_k1_cell, check_k2_cell, check_suitable, Cell, CellVerdict, GammaVariant,
};
use crate::certificate::certify;
use crate::constructions::{
    dot_product, find_extendable_5_cycles, fragment_from_cubic_vertex, glue, DotSpec,
};
use crate::formats::encode_graph6;
use crate::graph::{Graph, GraphError};
use crate::named;
use crate::pipeline::{
    decode_line, evaluate, run_filter, FilterSpec, OutputMode, PredicateKind, PipelineError,
    Verdict,
};
use crate::planar::{
    dodecahedron_embedding, faces, grinberg_sum, grinbergian_obstruction, j18_embedding,
    j18_plus_ad_embedding, k4_embedding, FaceSet,
};

const EXIT_OK: i32 = 0;
const EXIT_EXPECT: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_PARSE: i32 = 3;
const EXIT_PRECONDITION: i32 = 4;
const EXIT_UNDECIDED: i32 = 5;

/// A failure to be reported on stderr with a specific exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl std::fmt::Display) -> Failure {
        Failure { code, message: message.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_USAGE, message)
}

fn parse_failure(message: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_PARSE, message)
}

fn precondition(message: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_PRECONDITION, message)
}

#[derive(Parser)]
#[command(
    name = "k2ham",
    version,
    about = "Hamiltonicity-under-deletion toolkit: filters, checks, constructions, certificates"
)]
struct Cli {
    /// Worker threads (default: the K2HAM_JOBS variable, then all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Filter a graph6/sparse6 stream (one graph per line) by a predicate.
    Filter(FilterArgs),
    /// Evaluate one predicate on one graph.
    Check(CheckArgs),
    /// Verify the cell properties of a labeled graph.
    Cell(CellArgs),
    /// Assemble composite graphs; the result is printed as graph6.
    #[command(subcommand)]
    Build(BuildCmd),
    /// List the extendable 5-cycles of a cubic graph.
    Extendable {
        /// Catalog name, graph6/sparse6, or '-' for standard input.
        graph: String,
    },
    /// Grinberg face arithmetic for an embedded planar graph.
    Grinberg(GrinbergArgs),
    /// Print a catalog graph as graph6.
    Named {
        /// Catalog name, e.g. petersen or gp(11,2).
        name: Option<String>,
        /// List the catalog instead.
        #[arg(long)]
        list: bool,
    },
    /// Emit a replayable JSON certificate for a positive verdict.
    Certify(CertifyArgs),
}

#[derive(Args)]
struct FilterArgs {
    /// hamiltonian | k1 | k2 | hypo | k2hypo | snark | girth>=G | cell-suitable
    #[arg(long, value_name = "KIND")]
    pred: String,
    /// Keep the graphs where the predicate is false.
    #[arg(long)]
    negate: bool,
    /// Print only the number of survivors.
    #[arg(long, conflicts_with = "certificates")]
    count: bool,
    /// Emit one JSON certificate per survivor instead of echoing it.
    #[arg(long)]
    certificates: bool,
    /// Abort on the first malformed line; exit 5 if anything was undecided.
    #[arg(long)]
    strict: bool,
    /// Per-search node budget; searches that exceed it count as undecided.
    #[arg(long, value_name = "NODES")]
    budget: Option<u64>,
    /// Input file (default: standard input).
    input: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Catalog name, graph6/sparse6, or '-' for standard input.
    graph: String,
    /// hamiltonian | k1 | k2 | hypo | k2hypo | snark | girth>=G | cell-suitable
    #[arg(long, value_name = "KIND")]
    pred: String,
    /// Per-search node budget.
    #[arg(long, value_name = "NODES")]
    budget: Option<u64>,
    /// Exit 1 unless the verdict matches.
    #[arg(long, value_name = "BOOL")]
    expect: Option<bool>,
}

#[derive(Args)]
struct CellArgs {
    /// Catalog name, graph6/sparse6, or '-' for standard input.
    graph: String,
    /// Outer labels a,b,c,d (0-indexed). Defaults to the shipped labeling
    /// when the graph is j18.
    #[arg(long, value_delimiter = ',', value_name = "A,B,C,D")]
    outer: Option<Vec<usize>>,
    /// suitable | k1 | k2 (k2 reports the K₁ scan as well).
    #[arg(long, default_value = "suitable")]
    level: String,
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Chain an odd number of cells cyclically (bᵢ ~ aᵢ₊₁, cᵢ ~ dᵢ₊₁).
    Gamma {
        /// Comma-separated cells; each is j18 or GRAPH/a,b,c,d.
        #[arg(long, value_delimiter = ',', value_name = "CELL,...")]
        cells: Vec<String>,
        /// k1 | k2 — which cell property to demand of every input.
        #[arg(long, default_value = "k2")]
        variant: String,
        /// Skip re-verifying the cell properties (they are expensive).
        #[arg(long)]
        skip_verify: bool,
    },
    /// Glue two 3-fragments GRAPH/v (the fragment a cubic vertex v cuts off).
    Glue {
        /// Left fragment, e.g. petersen/0; keeps its labels.
        left: String,
        /// Right fragment, packed after the left one.
        right: String,
    },
    /// Dot product G·H: delete ab, cd from G and adjacent cubic x, y from H.
    Dot {
        g: String,
        h: String,
        #[arg(long, value_delimiter = ',', value_name = "A,B")]
        ab: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_name = "C,D")]
        cd: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_name = "X,Y")]
        xy: Vec<usize>,
    },
}

#[derive(Args)]
struct GrinbergArgs {
    /// Embedding fixture (dodecahedron, j18, j18+ad, k4) or a
    /// rotation-system file.
    embedding: String,
    /// A hamiltonian cycle as comma-separated vertices; σ is evaluated
    /// for it. Without it, the face profile and the one-exceptional-face
    /// obstruction verdict are printed.
    #[arg(long, value_delimiter = ',', value_name = "V0,V1,...")]
    cycle: Option<Vec<usize>>,
}

#[derive(Args)]
struct CertifyArgs {
    /// Catalog name, graph6/sparse6, or '-' for standard input.
    graph: String,
    /// hamiltonian | k1 | k2 | hypo | k2hypo (the witnessable predicates).
    #[arg(long, value_name = "KIND")]
    pred: String,
    /// Output file (default: standard output).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// Parse arguments and run; the returned code is the process exit status.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version, 2 for usage errors.
            let _ = e.print();
            return e.exit_code();
        }
    };
    let jobs = cli.jobs.or_else(jobs_from_env).unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, std::num::NonZeroUsize::get)
    });
    if jobs == 0 {
        eprintln!("k2ham: --jobs must be at least 1");
        return EXIT_USAGE;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("k2ham: worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(cli.command, jobs)) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("k2ham: {}", failure.message);
            failure.code
        }
    }
}

fn jobs_from_env() -> Option<usize> {
    std::env::var("K2HAM_JOBS").ok()?.trim().parse().ok()
}

fn dispatch(command: Cmd, jobs: usize) -> CmdResult {
    match command {
        Cmd::Filter(args) => cmd_filter(args, jobs),
        Cmd::Check(args) => cmd_check(args),
        Cmd::Cell(args) => cmd_cell(args),
        Cmd::Build(args) => cmd_build(args),
        Cmd::Extendable { graph } => cmd_extendable(&graph),
        Cmd::Grinberg(args) => cmd_grinberg(args),
        Cmd::Named { name, list } => cmd_named(name.as_deref(), list),
        Cmd::Certify(args) => cmd_certify(args),
    }
}

/// Resolve a graph argument: `-` reads one line from standard input,
/// otherwise a catalog name is tried first and graph6/sparse6 second.
fn parse_graph(arg: &str) -> Result<Graph, Failure> {
    if arg == "-" {
        let mut line = String::new();
        io::stdin()
            .lock()
            .read_line(&mut line)
            .map_err(|e| usage(format!("reading standard input: {e}")))?;
        let line = line.trim_end();
        if line.is_empty() {
            return Err(parse_failure("standard input is empty"));
        }
        return decode_line(line).map_err(|e| parse_failure(format!("standard input: {e}")));
    }
    match named::from_name(arg) {
        Ok(g) => Ok(g),
        Err(GraphError::Parameter(msg)) if msg.starts_with("unknown graph name") => {
            decode_line(arg).map_err(|e| {
                parse_failure(format!("{arg:?} is neither a catalog name nor graph6/sparse6 ({e})"))
            })
        }
        Err(e) => Err(parse_failure(e)),
    }
}

fn parse_pred(pred: &str) -> Result<PredicateKind, Failure> {
    pred.parse().map_err(|e: PipelineError| usage(e))
}

// ---------------------------------------------------------------------------
// filter
// ---------------------------------------------------------------------------

fn cmd_filter(args: FilterArgs, jobs: usize) -> CmdResult {
    let kind = parse_pred(&args.pred)?;
    let mode = if args.count {
        OutputMode::Count
    } else if args.certificates {
        OutputMode::Certificates
    } else {
        OutputMode::Graphs
    };
    let spec = FilterSpec { kind, negate: args.negate, jobs, mode };
    let stdout = io::stdout();
    let stderr = io::stderr();
    let summary = match &args.input {
        Some(path) => {
            let file = File::open(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            run_filter(BufReader::new(file), &spec, args.strict, args.budget, stdout.lock(), stderr.lock())
        }
        None => {
            run_filter(io::stdin().lock(), &spec, args.strict, args.budget, stdout.lock(), stderr.lock())
        }
    };
    let summary = summary.map_err(|e| match e {
        PipelineError::Malformed { .. } => Failure::new(EXIT_PARSE, e),
        _ => usage(e),
    })?;
    if args.strict && summary.undecided > 0 {
        return Err(Failure::new(
            EXIT_UNDECIDED,
            format!("{} graph(s) undecided under the node budget", summary.undecided),
        ));
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

fn cmd_check(args: CheckArgs) -> CmdResult {
    let kind = parse_pred(&args.pred)?;
    let g = parse_graph(&args.graph)?;
    let verdict = evaluate(&g, kind, args.budget);
    let shown = if args.graph == "-" { "stdin" } else { &args.graph };
    let text = match verdict {
        Verdict::True => "true",
        Verdict::False => "false",
        Verdict::Undecided => "undecided",
    };
    println!("{kind}({shown}) = {text}");
    match (verdict, args.expect) {
        (Verdict::Undecided, _) => Err(Failure::new(
            EXIT_UNDECIDED,
            "the node budget ran out before a verdict; raise or drop --budget",
        )),
        (Verdict::True, Some(false)) | (Verdict::False, Some(true)) => {
            Err(Failure::new(EXIT_EXPECT, format!("expected {}", args.expect.unwrap())))
        }
        _ => Ok(EXIT_OK),
    }
}

// ---------------------------------------------------------------------------
// cell
// ---------------------------------------------------------------------------

fn cmd_cell(args: CellArgs) -> CmdResult {
    let g = parse_graph(&args.graph)?;
    let outer: [usize; 4] = match &args.outer {
        Some(values) => {
            let [a, b, c, d] = values[..] else {
                return Err(usage("--outer needs exactly four labels a,b,c,d"));
            };
            [a, b, c, d]
        }
        None if args.graph == "j18" => {
            let (a, b, c, d) = named::j18_outer();
            [a, b, c, d]
        }
        None => return Err(usage("--outer a,b,c,d is required for this graph")),
    };
    let cell =
        Cell::new(g, outer[0], outer[1], outer[2], outer[3]).map_err(precondition)?;
    let (verdict, marks) = match args.level.as_str() {
        "suitable" => {
            let v = check_suitable(&cell);
            let marks = suitability_mark(&v).to_string();
            (v, marks)
        }
        "k1" => {
            let v = check_k1_cell(&cell);
            let marks = format!("{} k1 {}", suitability_mark(&v), mark(v.k1));
            (v, marks)
        }
        "k2" => {
            // The K₁ scan rides along: a K₂ verdict alone would leave the
            // single-deletion repairs unreported.
            let k1 = check_k1_cell(&cell);
            let mut v = check_k2_cell(&cell);
            let marks = format!(
                "{} k1 {} k2 {}",
                suitability_mark(&v),
                mark(k1.k1),
                mark(v.k2)
            );
            for outcome in k1.properties.into_iter().filter(|o| o.name == "K1") {
                v.properties.push(outcome);
            }
            (v, marks)
        }
        other => return Err(usage(format!("unknown --level {other:?} (suitable, k1, k2)"))),
    };
    for outcome in &verdict.properties {
        match &outcome.failure {
            None => println!("  {} ✓", outcome.name),
            Some(reason) => println!("  {} ✗ {reason}", outcome.name),
        }
    }
    println!("{marks}");
    Ok(EXIT_OK)
}

fn suitability_mark(v: &CellVerdict) -> String {
    format!("suitable {}", mark(Some(v.suitable)))
}

fn mark(flag: Option<bool>) -> &'static str {
    match flag {
        Some(true) => "✓",
        Some(false) => "✗",
        None => "—",
    }
}

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

fn cmd_build(args: BuildCmd) -> CmdResult {
    let graph = match args {
        BuildCmd::Gamma { cells, variant, skip_verify } => {
            if cells.is_empty() {
                return Err(usage("--cells needs at least one cell"));
            }
            let variant = match variant.as_str() {
                "k1" => GammaVariant::K1,
                "k2" => GammaVariant::K2,
                other => return Err(usage(format!("unknown --variant {other:?} (k1, k2)"))),
            };
            let cells: Vec<Cell> =
                cells.iter().map(|t| parse_cell_token(t)).collect::<Result<_, _>>()?;
            let gamma = build_gamma(&cells, variant, !skip_verify).map_err(precondition)?;
            eprintln!("gamma: {} cells, order {}", gamma.vertex_maps.len(), gamma.graph.n());
            gamma.graph
        }
        BuildCmd::Glue { left, right } => {
            let f1 = parse_fragment_token(&left)?;
            let f2 = parse_fragment_token(&right)?;
            let glued = glue(&f1, &f2).map_err(precondition)?;
            if glued.both_trivial {
                eprintln!("note: both fragments are trivial; the result is just a reinsertion");
            }
            glued.graph
        }
        BuildCmd::Dot { g, h, ab, cd, xy } => {
            let [pair_ab, pair_cd, pair_xy] = [&ab, &cd, &xy].map(|v| match v[..] {
                [u, w] => Ok((u, w)),
                _ => Err(usage("--ab, --cd and --xy each take exactly two labels")),
            });
            let (ab, cd, xy) = (pair_ab?, pair_cd?, pair_xy?);
            let g = parse_graph(&g)?;
            let h = parse_graph(&h)?;
            let spec =
                DotSpec::new(&g, &h, ab, cd, xy.0, xy.1).map_err(precondition)?;
            let product = dot_product(&g, &h, &spec).map_err(precondition)?;
            let (pa, pb, pc, pd) = spec.primed();
            eprintln!("dot: order {}, primed labels ({pa}, {pb}, {pc}, {pd})", product.n());
            product
        }
    };
    println!("{}", encode_graph6(&graph));
    Ok(EXIT_OK)
}

/// A cell on the command line: `j18` (shipped labeling) or `GRAPH/a,b,c,d`.
fn parse_cell_token(token: &str) -> Result<Cell, Failure> {
    let (graph_part, outer) = match token.split_once('/') {
        None if token == "j18" => {
            let (a, b, c, d) = named::j18_outer();
            (token, [a, b, c, d])
        }
        None => {
            return Err(usage(format!(
                "cell {token:?} needs outer labels: GRAPH/a,b,c,d"
            )))
        }
        Some((graph_part, labels)) => {
            let values: Vec<usize> = labels
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| usage(format!("bad outer labels in {token:?}")))?;
            let [a, b, c, d] = values[..] else {
                return Err(usage(format!(
                    "cell {token:?} needs exactly four outer labels"
                )));
            };
            (graph_part, [a, b, c, d])
        }
    };
    let g = parse_graph(graph_part)?;
    Cell::new(g, outer[0], outer[1], outer[2], outer[3]).map_err(precondition)
}

/// A fragment on the command line: `GRAPH/v`, the fragment the cubic
/// vertex `v` cuts off.
fn parse_fragment_token(token: &str) -> Result<crate::constructions::Fragment, Failure> {
    let Some((graph_part, vertex)) = token.split_once('/') else {
        return Err(usage(format!("fragment {token:?} must look like GRAPH/v")));
    };
    let v: usize = vertex
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad vertex in fragment {token:?}")))?;
    let g = parse_graph(graph_part)?;
    fragment_from_cubic_vertex(&g, v).map_err(precondition)
}

// ---------------------------------------------------------------------------
// extendable
// ---------------------------------------------------------------------------

fn cmd_extendable(graph: &str) -> CmdResult {
    let g = parse_graph(graph)?;
    let found = find_extendable_5_cycles(&g);
    for entry in &found {
        let [v0, v1, v2, v3, v4] = entry.cycle;
        println!("{v0} {v1} {v2} {v3} {v4}");
    }
    eprintln!("{} extendable 5-cycle(s)", found.len());
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// grinberg
// ---------------------------------------------------------------------------

fn cmd_grinberg(args: GrinbergArgs) -> CmdResult {
    let (_, embedding) = match args.embedding.as_str() {
        "dodecahedron" => dodecahedron_embedding(),
        "j18" => j18_embedding(),
        "j18+ad" => j18_plus_ad_embedding(),
        "k4" => k4_embedding(),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("{path}: {e}")))?;
            crate::formats::decode_embedding(&text).map_err(parse_failure)?
        }
    };
    let fs = faces(&embedding).map_err(precondition)?;
    match args.cycle {
        None => {
            print_face_profile(&fs);
            let obstructed = grinbergian_obstruction(&fs);
            println!("grinbergian obstruction: {obstructed}");
            Ok(EXIT_OK)
        }
        Some(cycle) => {
            if cycle.len() < 3 {
                return Err(usage("--cycle needs at least three vertices"));
            }
            let witness = crate::engine::CycleWitness::from_traversal(&cycle);
            let grinberg = grinberg_sum(&fs, &witness, None).map_err(precondition)?;
            println!("sigma = {}", grinberg.sigma);
            Ok(EXIT_OK)
        }
    }
}

fn print_face_profile(fs: &FaceSet) {
    let profile = fs.size_profile();
    let shown: Vec<String> = profile.iter().map(|s| s.to_string()).collect();
    println!("{} faces, sizes [{}]", fs.len(), shown.join(", "));
}

// ---------------------------------------------------------------------------
// named
// ---------------------------------------------------------------------------

fn cmd_named(name: Option<&str>, list: bool) -> CmdResult {
    if list {
        for line in [
            "petersen              the Petersen graph",
            "gp(n,k)               generalized Petersen graph",
            "flower(k)             flower snark J_k (odd k >= 3)",
            "cube(d)               d-dimensional hypercube",
            "coxeter               the Coxeter graph",
            "j18                   the 18-vertex cell (dodecahedron minus two adjacent vertices)",
            "triangle_replaced_k4  K4 with each vertex replaced by a triangle",
            "wheel19               19-vertex wheel",
            "dodecahedron          the dodecahedron, GP(10,2)",
            "k(n)                  complete graph",
            "cycle(n)              cycle graph",
            "prism                 triangular prism C3 x K2",
        ] {
            println!("{line}");
        }
        return Ok(EXIT_OK);
    }
    let Some(name) = name else {
        return Err(usage("give a catalog name or --list"));
    };
    let g = named::from_name(name).map_err(parse_failure)?;
    println!("{}", encode_graph6(&g));
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

fn cmd_certify(args: CertifyArgs) -> CmdResult {
    let kind = parse_pred(&args.pred)?;
    let Some(claim) = kind.claim() else {
        return Err(usage(format!("{kind} has no certificate form (no cycle witnesses)")));
    };
    let g = parse_graph(&args.graph)?;
    let certificate = certify(&g, claim).map_err(|e| Failure::new(EXIT_EXPECT, e))?;
    match &args.out {
        Some(path) => {
            let mut file = File::create(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            writeln!(file, "{}", certificate.to_json_pretty())
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => println!("{}", certificate.to_json_pretty()),
    }
    Ok(EXIT_OK)
}
