//! Command-line surface: graph I/O, invariant computation, reference-table
//! reproduction, class enumeration, identity verification, and randomized
//! exploration.
//!
//! Exit codes: 0 on success, 1 on computational failure (a verifier or
//! invariant check fails, or a size guard rejects the instance), 2 on usage
//! errors. All output is deterministic for a fixed argument vector: tables
//! are post-sorted and every randomized path is seeded.

use std::collections::BTreeSet;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::equivalence::{enumerate_switching_iso_classes, is_sign_symmetric};
use crate::gallery;
use crate::graph::{BalanceCertificate, Family, SignedGraph, SwitchingVector};
use crate::linalg::{
    char_poly, eigenvalues_symmetric, ExactMatrix, ExactRational, DEFAULT_TOL,
};
use crate::measures::{
    check_frustration_bounds_with_limit, explore_problem_4_5, frustration_index_with_limit,
    random_switching, unbalance_level, ExploreReport, FRUSTRATION_MAX_N,
};
use crate::token::{token_graph, token_graph_with_cap, DEFAULT_VERTEX_CAP};
use crate::verify::{
    verification_sweep, verify_complement, verify_cycle_lift, verify_edge_counts,
    verify_intertwining, verify_spectrum_containment, verify_token_complement,
    verify_token_switch, VerificationReport,
};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Entry point for the `tokensign` binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.output.render(cli.format));
            if outcome.all_checks_passed {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

#[derive(Parser)]
#[command(
    name = "tokensign",
    version,
    about = "Signed graphs, their k-token graphs, and exact unbalance measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Order, size, sign split, and balance status.
    Info(InputOnly),
    /// Balance test with a certificate: a balancing switching set or a
    /// negative cycle.
    Balance(InputOnly),
    /// Switch the graph at a vertex set and print the result.
    Switch(SwitchArgs),
    /// Negate every edge sign and print the result.
    Negate(InputOnly),
    /// Signed complement of a balanced graph.
    Complement(InputOnly),
    /// Build the k-token graph and print it.
    Token(TokenArgs),
    /// Exact characteristic polynomial and floating eigenvalues.
    Spectrum(SpectrumArgs),
    /// Frustration index with an edge-deletion witness.
    Frustration(FrustrationArgs),
    /// Unbalance level: the two exact partial levels and their maximum.
    Unbalance(InputOnly),
    /// Frustration sandwich between a graph and its k-token graph.
    Bounds(BoundsArgs),
    /// Enumerate all switching-isomorphism classes over the underlying graph.
    Classes(InputOnly),
    /// Test switching isomorphism with the negation (sign symmetry).
    Signsym(InputOnly),
    /// Recompute a built-in reference table from scratch.
    Table(TableArgs),
    /// Check one structural identity on an instance, or sweep all of them
    /// on random instances.
    Verify(VerifyArgs),
    /// Randomized exploration of the token monotonicity statements.
    ExploreP45(ExploreArgs),
}

#[derive(Args)]
struct InputOnly {
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct SwitchArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Vertices to switch at, comma-separated (e.g. --set 1,3,4).
    #[arg(long, value_delimiter = ',', required = true, value_name = "V,...")]
    set: Vec<usize>,
}

#[derive(Args)]
struct TokenArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of tokens.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Refuse to build token graphs with more vertices than this.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    max_vertices: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Adjacency,
    Laplacian,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Which matrix to analyze.
    #[arg(long, value_enum, default_value_t = MatrixKind::Adjacency)]
    matrix: MatrixKind,
    /// Eigenvalue convergence tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct FrustrationArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Refuse graphs with more vertices than this (exponential search).
    #[arg(long, default_value_t = FRUSTRATION_MAX_N)]
    max_vertices: usize,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of tokens.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Refuse token graphs with more vertices than this.
    #[arg(long, default_value_t = crate::measures::BOUNDS_MAX_TOKEN_VERTICES)]
    max_vertices: usize,
}

#[derive(Args)]
struct TableArgs {
    /// Which table to recompute.
    #[arg(value_enum)]
    which: TableKind,
    /// Largest n to include (cycles and completes tables).
    #[arg(long, default_value_t = 15)]
    n_max: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// Unbalance levels of one-negative-edge and all-negative cycles.
    Cycles,
    /// Unbalance levels of K_n^-, the negated K_n^-, and all-negative K_n.
    Completes,
    /// The six switching-isomorphism classes of the Petersen graph.
    Petersen,
    /// Unbalance levels of the gallery instances and their 2-token graphs.
    Tokens,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    which: VerifyCommand,
}

#[derive(Args)]
struct VerifyInstanceArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of tokens.
    #[arg(long, default_value_t = 2)]
    k: usize,
}

#[derive(Args)]
struct VerifyTokenSwitchArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of tokens.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Vertices to switch at, comma-separated; a seeded random switching is
    /// used when omitted.
    #[arg(long, value_delimiter = ',', value_name = "V,...")]
    set: Option<Vec<usize>>,
    /// Seed for the random switching when --set is omitted.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyIntertwineArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Smaller token count.
    #[arg(long, default_value_t = 1)]
    k1: usize,
    /// Larger token count.
    #[arg(long, default_value_t = 2)]
    k2: usize,
}

#[derive(Args)]
struct VerifySweepArgs {
    /// Seed for the instance stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random instances.
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Token-graph edge counts split by sign.
    EdgeCounts(VerifyInstanceArgs),
    /// Base cycles lift to token cycles of the same length and sign.
    CycleLift(VerifyInstanceArgs),
    /// Switching first and lifting commute.
    TokenSwitch(VerifyTokenSwitchArgs),
    /// The signed binomial matrix intertwines the two Laplacians.
    Intertwine(VerifyIntertwineArgs),
    /// The base Laplacian polynomial divides the token one.
    Containment(VerifyInstanceArgs),
    /// Complement identities for balanced graphs.
    Complement(InputOnly),
    /// Token Laplacians of a balanced graph and its signed complement.
    TokenComplement(VerifyInstanceArgs),
    /// Run every check on seeded random instances.
    All(VerifySweepArgs),
}

#[derive(Args)]
struct ExploreArgs {
    /// Number of random trials.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Largest base-graph order to draw.
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Number of tokens.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Seed for the instance stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct InputArgs {
    /// Read the graph from an edge-list file; "-" reads standard input.
    /// Format: a "n m" header, then one "u v s" line per edge with s one of
    /// +1, -1, +, -.
    #[arg(long, value_name = "PATH", conflicts_with = "family")]
    file: Option<String>,
    /// Construct a named family member: Cn_minus | all_neg_Cn | Kn_minus |
    /// all_neg_Kn | neg_Kn_plus | petersen.
    #[arg(long, value_name = "NAME", requires = "n")]
    family: Option<String>,
    /// Vertex count for --family.
    #[arg(long, value_name = "INT")]
    n: Option<usize>,
    /// Replace the signature: bit j of the mask (LSB first, over the sorted
    /// edge list) makes edge j negative. Accepts decimal, 0b…, or 0x….
    #[arg(long, value_name = "BITS", value_parser = parse_mask)]
    mask: Option<u64>,
}

enum CliError {
    Usage(String),
    Failed(String),
}

fn fail<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Failed(e.to_string())
}

fn parse_mask(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let parsed = if let Some(b) = t.strip_prefix("0b").or_else(|| t.strip_prefix("0B")) {
        u64::from_str_radix(b, 2)
    } else if let Some(h) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        u64::from_str_radix(h, 16)
    } else {
        t.parse()
    };
    parsed.map_err(|e| format!("{e}"))
}

impl InputArgs {
    fn resolve(&self) -> Result<SignedGraph, CliError> {
        let g = match (&self.file, &self.family) {
            (Some(path), None) => {
                let text = if path == "-" {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| CliError::Failed(format!("reading standard input: {e}")))?;
                    buf
                } else {
                    std::fs::read_to_string(path)
                        .map_err(|e| CliError::Usage(format!("--file {path}: {e}")))?
                };
                SignedGraph::parse(&text)
                    .map_err(|e| CliError::Failed(format!("--file {path}: {e}")))?
            }
            (None, Some(name)) => {
                let family = Family::parse(name)
                    .map_err(|e| CliError::Usage(format!("--family: {e}")))?;
                let n = self
                    .n
                    .ok_or_else(|| CliError::Usage("--family requires --n".to_string()))?;
                SignedGraph::family(family, n)
                    .map_err(|e| CliError::Usage(format!("--family {name}: {e}")))?
            }
            _ => {
                return Err(CliError::Usage(
                    "exactly one of --file or --family is required".to_string(),
                ))
            }
        };
        match self.mask {
            None => Ok(g),
            Some(mask) => {
                let m = g.m();
                if m < 64 && mask >> m != 0 {
                    return Err(CliError::Usage(format!(
                        "--mask {mask:#b} has bits beyond the {m} edges of the graph"
                    )));
                }
                Ok(g.with_sign_mask(mask))
            }
        }
    }
}

/// Result of one dispatched command: what to print, and whether every check
/// the command ran came out true (drives the 0-vs-1 exit code).
struct Outcome {
    output: Output,
    all_checks_passed: bool,
}

impl Outcome {
    fn ok(output: Output) -> Self {
        Outcome {
            output,
            all_checks_passed: true,
        }
    }
}

/// Renderable command output with a JSON mirror.
enum Output {
    /// Ordered key/value pairs.
    Record {
        fields: Vec<(&'static str, String)>,
        json: Value,
    },
    /// A column-aligned table.
    Table {
        headers: Vec<&'static str>,
        rows: Vec<Vec<String>>,
        json: Value,
    },
    /// A graph in the edge-list interchange format.
    Graph { graph: SignedGraph },
}

impl Output {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => {
                let value = match self {
                    Output::Record { json, .. } | Output::Table { json, .. } => json.clone(),
                    Output::Graph { graph } => graph_json(graph),
                };
                let mut s = serde_json::to_string_pretty(&value).expect("serializable output");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        match self {
            Output::Record { fields, .. } => {
                let mut out = String::new();
                for (key, value) in fields {
                    if value.contains('\n') {
                        out.push_str(&format!("{key} =\n"));
                        for line in value.lines() {
                            out.push_str(&format!("  {line}\n"));
                        }
                    } else {
                        out.push_str(&format!("{key} = {value}\n"));
                    }
                }
                out
            }
            Output::Table { headers, rows, .. } => {
                let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
                for row in rows {
                    for (j, cell) in row.iter().enumerate() {
                        widths[j] = widths[j].max(cell.chars().count());
                    }
                }
                let mut out = String::new();
                let emit = |cells: Vec<&str>, out: &mut String| {
                    let mut line = String::new();
                    for (j, cell) in cells.iter().enumerate() {
                        if j > 0 {
                            line.push_str("  ");
                        }
                        line.push_str(cell);
                        let pad = widths[j].saturating_sub(cell.chars().count());
                        if j + 1 < cells.len() {
                            line.push_str(&" ".repeat(pad));
                        }
                    }
                    out.push_str(line.trim_end());
                    out.push('\n');
                };
                emit(headers.to_vec(), &mut out);
                for row in rows {
                    emit(row.iter().map(String::as_str).collect(), &mut out);
                }
                out
            }
            Output::Graph { graph } => graph.to_edge_list(&[]),
        }
    }

    fn render_csv(&self) -> String {
        match self {
            Output::Record { fields, .. } => fields
                .iter()
                .map(|(k, v)| format!("{k},{}\n", csv_cell(v)))
                .collect(),
            Output::Table { headers, rows, .. } => {
                let mut out = String::new();
                out.push_str(&headers.join(","));
                out.push('\n');
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Output::Graph { graph } => {
                let mut out = String::from("u,v,sign\n");
                for e in graph.edges() {
                    out.push_str(&format!("{},{},{}\n", e.u, e.v, e.sign.token()));
                }
                out
            }
        }
    }
}

/// Quote a CSV cell only when needed (commas, quotes, or newlines).
fn csv_cell(v: &str) -> String {
    if v.contains(',') || v.contains('"') || v.contains('\n') {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn graph_json(g: &SignedGraph) -> Value {
    json!({
        "n": g.n(),
        "m": g.m(),
        "m_plus": g.m_pos(),
        "m_minus": g.m_neg(),
        "edges": g
            .edges()
            .iter()
            .map(|e| json!([e.u, e.v, e.sign.token()]))
            .collect::<Vec<Value>>(),
    })
}

/// `p/q ≈ d` with a 4-significant-digit decimal, or plain `0`.
fn ell_str(r: &ExactRational) -> String {
    if r.is_zero() {
        "0".to_string()
    } else {
        format!("{r} ≈ {}", sig4(r))
    }
}

/// Format to 4 significant digits (e.g. 0.4087, 0.0004247, 1.000).
fn sig4(r: &ExactRational) -> String {
    let f = r.to_f64();
    if f == 0.0 {
        return "0".to_string();
    }
    let magnitude = f.abs().log10().floor() as i32;
    let decimals = (3 - magnitude).max(0) as u32;
    r.decimal(decimals)
}

fn switch_set_string(s: &SwitchingVector) -> String {
    // Either side of the switching cut gives the same switched graph; report
    // the vertices assigned −1 (the set one "switches at").
    let minus: Vec<String> = (1..=s.len())
        .filter(|&v| s.get(v) == crate::graph::Sign::Minus)
        .map(|v| v.to_string())
        .collect();
    format!("{{{}}}", minus.join(","))
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Info(args) => cmd_info(&args.input),
        Command::Balance(args) => cmd_balance(&args.input),
        Command::Switch(args) => cmd_switch(args),
        Command::Negate(args) => Ok(Outcome::ok(Output::Graph {
            graph: args.input.resolve()?.negate(),
        })),
        Command::Complement(args) => Ok(Outcome::ok(Output::Graph {
            graph: args.input.resolve()?.signed_complement().map_err(fail)?,
        })),
        Command::Token(args) => cmd_token(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Frustration(args) => cmd_frustration(args),
        Command::Unbalance(args) => cmd_unbalance(&args.input),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Classes(args) => cmd_classes(&args.input),
        Command::Signsym(args) => cmd_signsym(&args.input),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(&args.which),
        Command::ExploreP45(args) => cmd_explore(args),
    }
}

fn cmd_info(input: &InputArgs) -> Result<Outcome, CliError> {
    let g = input.resolve()?;
    let balanced = g.is_balanced();
    let fields = vec![
        ("n", g.n().to_string()),
        ("m", g.m().to_string()),
        ("m_plus", g.m_pos().to_string()),
        ("m_minus", g.m_neg().to_string()),
        ("balanced", balanced.to_string()),
    ];
    let json = json!({
        "n": g.n(),
        "m": g.m(),
        "m_plus": g.m_pos(),
        "m_minus": g.m_neg(),
        "balanced": balanced,
    });
    Ok(Outcome::ok(Output::Record { fields, json }))
}

fn cmd_balance(input: &InputArgs) -> Result<Outcome, CliError> {
    let g = input.resolve()?;
    match g.balance_check() {
        BalanceCertificate::Balanced(s) => {
            let set = switch_set_string(&s);
            let fields = vec![
                ("balanced", "true".to_string()),
                ("switch_set", set.clone()),
            ];
            let json = json!({ "balanced": true, "switch_set": switch_set_vec(&s) });
            Ok(Outcome::ok(Output::Record { fields, json }))
        }
        BalanceCertificate::Unbalanced(w) => {
            let cycle: Vec<String> = w.vertices.iter().map(|v| v.to_string()).collect();
            let fields = vec![
                ("balanced", "false".to_string()),
                ("negative_cycle", cycle.join(" ")),
            ];
            let json = json!({ "balanced": false, "negative_cycle": w.vertices });
            Ok(Outcome::ok(Output::Record { fields, json }))
        }
    }
}

fn switch_set_vec(s: &SwitchingVector) -> Vec<usize> {
    (1..=s.len())
        .filter(|&v| s.get(v) == crate::graph::Sign::Minus)
        .collect()
}

fn cmd_switch(args: &SwitchArgs) -> Result<Outcome, CliError> {
    let g = args.input.resolve()?;
    let set: BTreeSet<usize> = args.set.iter().copied().collect();
    if let Some(&v) = set.iter().find(|&&v| v == 0 || v > g.n()) {
        return Err(CliError::Usage(format!(
            "--set: vertex {v} out of range 1..={}",
            g.n()
        )));
    }
    // Switching at U and at its complement produce the same graph, so the
    // orientation of the ±1 assignment is immaterial.
    let s = SwitchingVector::from_plus_set(&set, g.n()).negated();
    Ok(Outcome::ok(Output::Graph {
        graph: g.switch(&s).map_err(fail)?,
    }))
}

fn cmd_token(args: &TokenArgs) -> Result<Outcome, CliError> {
    let g = args.input.resolve()?;
    let tg = token_graph_with_cap(&g, args.k, args.max_vertices).map_err(fail)?;
    Ok(Outcome::ok(Output::Graph {
        graph: tg.graph().clone(),
    }))
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<Outcome, CliError> {
    let g = args.input.resolve()?;
    let matrix = match args.matrix {
        MatrixKind::Adjacency => ExactMatrix::adjacency(&g),
        MatrixKind::Laplacian => ExactMatrix::laplacian(&g),
    };
    let poly = char_poly(&matrix);
    let spectrum = eigenvalues_symmetric(&matrix, args.tol).map_err(fail)?;
    let eigen_text: Vec<String> = spectrum
        .eigenvalues
        .iter()
        .map(|x| format!("{x:.6}"))
        .collect();
    let kind = match args.matrix {
        MatrixKind::Adjacency => "adjacency",
        MatrixKind::Laplacian => "laplacian",
    };
    let fields = vec![
        ("matrix", kind.to_string()),
        ("char_poly", poly.to_string()),
        ("eigenvalues", eigen_text.join(", ")),
    ];
    let json = json!({
        "matrix": kind,
        "char_poly": poly.to_string(),
        "char_poly_coeffs": poly
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<String>>(),
        "eigenvalues": spectrum.eigenvalues,
        "tol": spectrum.tol,
    });
    Ok(Outcome::ok(Output::Record { fields, json }))
}

fn cmd_frustration(args: &FrustrationArgs) -> Result<Outcome, CliError> {
    let g = args.input.resolve()?;
    let result = frustration_index_with_limit(&g, args.max_vertices).map_err(fail)?;
    let removed: Vec<String> = result
        .removed_edges
        .iter()
        .map(|(u, v)| format!("{{{u},{v}}}"))
        .collect();
    let fields = vec![
        ("frustration_index", result.index.to_string()),
        ("switch_set", switch_set_string(&result.witness)),
        ("delete_edges", removed.join(" ")),
    ];
    let json = json!({
        "frustration_index": result.index,
        "switch_set": switch_set_vec(&result.witness),
        "delete_edges": result.removed_edges,
    });
    Ok(Outcome::ok(Output::Record { fields, json }))
}

fn cmd_unbalance(input: &InputArgs) -> Result<Outcome, CliError> {
    let g = input.resolve()?;
    let result = unbalance_level(&g);
    let n = g.n();
    let fields = vec![
        ("ell_m_at_n_minus_1", ell_str(&result.ell_n_minus_1)),
        ("ell_m_at_n", ell_str(&result.ell_n)),
        ("ell", ell_str(&result.ell)),
    ];
    let json = json!({
        "n": n,
        "ell_m_at_n_minus_1": result.ell_n_minus_1,
        "ell_m_at_n": result.ell_n,
        "ell": result.ell,
    });
    Ok(Outcome::ok(Output::Record { fields, json }))
}

fn cmd_bounds(args: &BoundsArgs) -> Result<Outcome, CliError> {
    let g = args.input.resolve()?;
    let report =
        check_frustration_bounds_with_limit(&g, args.k, args.max_vertices).map_err(fail)?;
    let fields = vec![
        ("n", report.n.to_string()),
        ("k", report.k.to_string()),
        ("base_frustration", report.base_frustration.to_string()),
        ("token_frustration", report.token_frustration.to_string()),
        ("upper_bound", report.upper_bound.to_string()),
        ("lower_holds", report.lower_holds.to_string()),
        ("upper_holds", report.upper_holds.to_string()),
    ];
    let both = report.both_hold();
    let json = serde_json::to_value(&report).expect("serializable report");
    Ok(Outcome {
        output: Output::Record { fields, json },
        all_checks_passed: both,
    })
}

fn cmd_classes(input: &InputArgs) -> Result<Outcome, CliError> {
    let g = input.resolve()?;
    let classes = enumerate_switching_iso_classes(&g).map_err(fail)?;
    let rows: Vec<Vec<String>> = classes
        .iter()
        .map(|c| {
            vec![
                c.label.clone(),
                c.class_size.to_string(),
                c.frustration.to_string(),
                ell_str(&c.unbalance),
                c.representative.to_edge_list(&[]).replace('\n', "; "),
            ]
        })
        .collect();
    let json = json!({
        "underlying_n": g.n(),
        "underlying_m": g.m(),
        "classes": serde_json::to_value(&classes).expect("serializable classes"),
    });
    Ok(Outcome::ok(Output::Table {
        headers: vec![
            "label",
            "switching_classes",
            "frustration",
            "unbalance",
            "representative",
        ],
        rows,
        json,
    }))
}

fn cmd_signsym(input: &InputArgs) -> Result<Outcome, CliError> {
    let g = input.resolve()?;
    match is_sign_symmetric(&g).map_err(fail)? {
        Some(cert) => {
            let perm: Vec<String> = cert.permutation.iter().map(|v| v.to_string()).collect();
            let fields = vec![
                ("sign_symmetric", "true".to_string()),
                ("permutation", perm.join(" ")),
                ("switch_set", switch_set_string(&cert.switching)),
            ];
            let json = json!({
                "sign_symmetric": true,
                "permutation": cert.permutation,
                "switch_set": switch_set_vec(&cert.switching),
            });
            Ok(Outcome::ok(Output::Record { fields, json }))
        }
        None => {
            let fields = vec![("sign_symmetric", "false".to_string())];
            let json = json!({ "sign_symmetric": false });
            Ok(Outcome::ok(Output::Record { fields, json }))
        }
    }
}

fn cmd_table(args: &TableArgs) -> Result<Outcome, CliError> {
    match args.which {
        TableKind::Cycles => table_cycles(args.n_max),
        TableKind::Completes => table_completes(args.n_max),
        TableKind::Petersen => table_petersen(),
        TableKind::Tokens => table_tokens(),
    }
}

fn table_cycles(n_max: usize) -> Result<Outcome, CliError> {
    if n_max < 3 {
        return Err(CliError::Usage("--n-max must be at least 3".to_string()));
    }
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for n in 3..=n_max {
        let one_neg = unbalance_level(&SignedGraph::family(Family::CnMinus, n).map_err(fail)?).ell;
        let all_neg = unbalance_level(&SignedGraph::family(Family::AllNegCn, n).map_err(fail)?).ell;
        json_rows.push(json!({
            "n": n,
            "one_negative_cycle": one_neg,
            "all_negative_cycle": all_neg,
        }));
        rows.push(vec![n.to_string(), ell_str(&one_neg), ell_str(&all_neg)]);
    }
    Ok(Outcome::ok(Output::Table {
        headers: vec!["n", "ell(one_negative_cycle)", "ell(all_negative_cycle)"],
        rows,
        json: json!({ "table": "cycles", "rows": json_rows }),
    }))
}

fn table_completes(n_max: usize) -> Result<Outcome, CliError> {
    if n_max < 2 {
        return Err(CliError::Usage("--n-max must be at least 2".to_string()));
    }
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for n in 2..=n_max {
        let one_neg = unbalance_level(&SignedGraph::family(Family::KnMinus, n).map_err(fail)?).ell;
        let one_pos = unbalance_level(&SignedGraph::family(Family::NegKnPlus, n).map_err(fail)?).ell;
        let all_neg = unbalance_level(&SignedGraph::family(Family::AllNegKn, n).map_err(fail)?).ell;
        json_rows.push(json!({
            "n": n,
            "one_negative_complete": one_neg,
            "one_positive_all_negative_complete": one_pos,
            "all_negative_complete": all_neg,
        }));
        rows.push(vec![
            n.to_string(),
            ell_str(&one_neg),
            ell_str(&one_pos),
            ell_str(&all_neg),
        ]);
    }
    Ok(Outcome::ok(Output::Table {
        headers: vec![
            "n",
            "ell(one_negative_complete)",
            "ell(one_positive_all_negative_complete)",
            "ell(all_negative_complete)",
        ],
        rows,
        json: json!({ "table": "completes", "rows": json_rows }),
    }))
}

fn table_petersen() -> Result<Outcome, CliError> {
    let g = SignedGraph::family(Family::Petersen, 10).map_err(fail)?;
    let classes = enumerate_switching_iso_classes(&g).map_err(fail)?;
    let total: usize = classes.iter().map(|c| c.class_size).sum();
    let rows: Vec<Vec<String>> = classes
        .iter()
        .map(|c| {
            vec![
                c.label.clone(),
                c.class_size.to_string(),
                c.frustration.to_string(),
                ell_str(&c.unbalance),
            ]
        })
        .collect();
    let json = json!({
        "table": "petersen",
        "switching_classes_total": total,
        "classes": serde_json::to_value(&classes).expect("serializable classes"),
    });
    Ok(Outcome::ok(Output::Table {
        headers: vec!["label", "switching_classes", "frustration", "unbalance"],
        rows,
        json,
    }))
}

fn table_tokens() -> Result<Outcome, CliError> {
    let mut instances: Vec<(String, SignedGraph)> = gallery::all()
        .into_iter()
        .map(|(name, g)| (name.to_string(), g))
        .collect();
    instances.push((
        "one-negative-c5".to_string(),
        SignedGraph::family(Family::CnMinus, 5).map_err(fail)?,
    ));
    instances.push((
        "all-negative-k5".to_string(),
        SignedGraph::family(Family::AllNegKn, 5).map_err(fail)?,
    ));
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for (name, g) in &instances {
        let base = unbalance_level(g).ell;
        let token = unbalance_level(token_graph(g, 2).map_err(fail)?.graph()).ell;
        json_rows.push(json!({
            "graph": name,
            "ell": base,
            "ell_two_tokens": token,
        }));
        rows.push(vec![name.clone(), ell_str(&base), ell_str(&token)]);
    }
    Ok(Outcome::ok(Output::Table {
        headers: vec!["graph", "ell", "ell(two-token graph)"],
        rows,
        json: json!({ "table": "tokens", "rows": json_rows }),
    }))
}

fn report_outcome(reports: Vec<VerificationReport>) -> Outcome {
    let all_passed = reports.iter().all(|r| r.passed);
    let mut rows: Vec<Vec<String>> = Vec::new();
    for r in &reports {
        rows.push(vec![
            if r.passed { "PASS" } else { "FAIL" }.to_string(),
            r.claim_id.to_string(),
            r.instance.clone(),
        ]);
    }
    // Failures carry their full certificate so the verdict can be re-checked.
    for r in reports.iter().filter(|r| !r.passed) {
        rows.push(vec![
            "".to_string(),
            format!("{} certificate", r.claim_id),
            r.certificate.to_string(),
        ]);
    }
    let json = json!({
        "passed": all_passed,
        "checks": reports.len(),
        "failures": reports.iter().filter(|r| !r.passed).count(),
        "reports": serde_json::to_value(&reports).expect("serializable reports"),
    });
    Outcome {
        output: Output::Table {
            headers: vec!["result", "claim", "instance"],
            rows,
            json,
        },
        all_checks_passed: all_passed,
    }
}

fn cmd_verify(which: &VerifyCommand) -> Result<Outcome, CliError> {
    let reports = match which {
        VerifyCommand::EdgeCounts(a) => {
            vec![verify_edge_counts(&a.input.resolve()?, a.k).map_err(fail)?]
        }
        VerifyCommand::CycleLift(a) => {
            vec![verify_cycle_lift(&a.input.resolve()?, a.k).map_err(fail)?]
        }
        VerifyCommand::TokenSwitch(a) => {
            let g = a.input.resolve()?;
            let s = match &a.set {
                Some(vertices) => {
                    let set: BTreeSet<usize> = vertices.iter().copied().collect();
                    if let Some(&v) = set.iter().find(|&&v| v == 0 || v > g.n()) {
                        return Err(CliError::Usage(format!(
                            "--set: vertex {v} out of range 1..={}",
                            g.n()
                        )));
                    }
                    SwitchingVector::from_plus_set(&set, g.n()).negated()
                }
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
                    random_switching(&mut rng, g.n())
                }
            };
            vec![verify_token_switch(&g, &s, a.k).map_err(fail)?]
        }
        VerifyCommand::Intertwine(a) => {
            vec![verify_intertwining(&a.input.resolve()?, a.k1, a.k2).map_err(fail)?]
        }
        VerifyCommand::Containment(a) => {
            vec![verify_spectrum_containment(&a.input.resolve()?, a.k).map_err(fail)?]
        }
        VerifyCommand::Complement(a) => vec![verify_complement(&a.input.resolve()?).map_err(fail)?],
        VerifyCommand::TokenComplement(a) => {
            vec![verify_token_complement(&a.input.resolve()?, a.k).map_err(fail)?]
        }
        VerifyCommand::All(a) => verification_sweep(a.seed, a.trials).map_err(fail)?,
    };
    Ok(report_outcome(reports))
}

fn explore_statement_rows(report: &ExploreReport) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for (name, stats) in [
        ("statement1", &report.statement1),
        ("statement2", &report.statement2),
        ("statement3", &report.statement3),
    ] {
        rows.push(vec![
            name.to_string(),
            stats.claim.clone(),
            stats.evaluated.to_string(),
            stats.held.to_string(),
            stats.violated.to_string(),
            stats.skipped.to_string(),
        ]);
    }
    rows
}

fn cmd_explore(args: &ExploreArgs) -> Result<Outcome, CliError> {
    let report = explore_problem_4_5(args.trials, args.n_max, args.k, args.seed);
    let mut rows = explore_statement_rows(&report);
    if let Some(max) = &report.max_ell_observed {
        rows.push(vec![
            "max_ell_observed".to_string(),
            format!("{} on a {} graph", ell_str(&max.value), max.role),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ]);
    }
    for (i, stats) in [&report.statement1, &report.statement2, &report.statement3]
        .into_iter()
        .enumerate()
    {
        for ce in &stats.counterexamples {
            rows.push(vec![
                format!("counterexample_s{}", i + 1),
                ce.detail.clone(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
    }
    let json = serde_json::to_value(&report).expect("serializable report");
    Ok(Outcome {
        output: Output::Table {
            headers: vec!["statement", "claim", "evaluated", "held", "violated", "skipped"],
            rows,
            json,
        },
        all_checks_passed: report.total_violations() == 0,
    })
}
