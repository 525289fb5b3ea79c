//! Command-line driver: parameter search, construction, audits and building explorers.
//!
//! Every command prints one canonical JSON report (sorted keys) on stdout. Exit
//! status is 0 when every audit passes, 1 on an audit failure and 2 on usage or
//! parameter errors.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::building::{self, Ball, NeighborAlphabet, DEFAULT_RANK3_RADIUS};
use crate::error::{Error, Result};
use crate::expansion::{
    chebyshev_identity_audit, induced_average_degree, kahale_edge_audit, kahale_vertex_audit, kahale_walk_bound_audit,
    moore_audit, neighbor_profile,
};
use crate::ff::Field;
use crate::ffpoly::{classify_graph_type, inert_test, search_parameters, GraphType, Polynomial};
use crate::graph::{Graph, Subset};
use crate::morgenstern::{build_instance_with_caps, element_to_json, Instance, InstanceDescriptor};
use crate::spectral::{
    adjacency_spectrum_with_limit, audit_from_report, verify_af_zero, zero_eigenfunction, Method, RamanujanAudit,
    DENSE_LIMIT_ENV,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_AUDIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest building ball the tree explorer materializes.
pub const MAX_BALL_VERTICES: u64 = 200_000;

#[derive(Debug, Parser)]
#[command(name = "ramanujan-audit", version, about = "Construct Morgenstern Ramanujan graphs and audit their expansion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List admissible h̃ of degree m over F_q with the requested classification.
    Search(SearchArgs),
    /// Build X and Y and write the instance summary.
    Construct(ConstructArgs),
    /// Run expansion and spectral audits on an instance.
    Audit(AuditArgs),
    /// Explore a ball of the Bruhat–Tits building and audit an embedding.
    Tree(TreeArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long = "type", value_enum, default_value_t = TypeArg::Pgl)]
    pub graph_type: TypeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TypeArg {
    Pgl,
    Psl,
}

impl From<TypeArg> for GraphType {
    fn from(t: TypeArg) -> GraphType {
        match t {
            TypeArg::Pgl => GraphType::PglBipartite,
            TypeArg::Psl => GraphType::PslNonbipartite,
        }
    }
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance descriptor (`.toml` or `.json`) with keys q, m, htilde_coeffs, epsilon.
    #[arg(long, conflicts_with_all = ["q", "m", "htilde", "epsilon"])]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Monic irreducible h̃, e.g. "s+1" or "1,1" (lowest coefficient first); searched when omitted.
    #[arg(long)]
    pub htilde: Option<String>,
    /// Non-square ε in F_q; the least non-square when omitted.
    #[arg(long)]
    pub epsilon: Option<i64>,
    /// Closure cap for X; defaults to twice the expected order.
    #[arg(long)]
    pub x_cap: Option<usize>,
    /// Closure cap for Y; defaults to twice the expected order.
    #[arg(long)]
    pub y_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Graphviz export of X.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Edge list export of X.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Run every audit (the default when no audit is selected).
    #[arg(long)]
    pub all: bool,
    /// Neighbor histogram of Y.
    #[arg(long)]
    pub vertex: bool,
    /// Induced degree of Y and the finite-l edge bound.
    #[arg(long)]
    pub edge: bool,
    /// Ramanujan certificate for X and for the Y Cayley graph.
    #[arg(long)]
    pub spectrum: bool,
    /// Integer eigenfunction with eigenvalue 0 supported on Y.
    #[arg(long)]
    pub eigenfunction: bool,
    /// Finite-l walk and vertex expansion bounds for Y.
    #[arg(long)]
    pub kahale: bool,
    /// Moore bound and non-backtracking operator identities.
    #[arg(long)]
    pub moore: bool,
    /// Absolute tolerance on eigenvalue bounds.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest graph solved with the dense eigensolver.
    #[arg(long, env = DENSE_LIMIT_ENV, default_value_t = crate::spectral::DEFAULT_DENSE_LIMIT)]
    pub dense_limit: usize,
    /// Longest path length for the Moore audit.
    #[arg(long, default_value_t = 12)]
    pub moore_l: usize,
    /// Operators A_1..A_l for the identity audit.
    #[arg(long, default_value_t = 7)]
    pub chebyshev_l: usize,
    /// CSV export of the M_l series.
    #[arg(long)]
    pub walks_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbedArg {
    None,
    Ramified,
    Unramified,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub radius: usize,
    #[arg(long, value_enum, default_value_t = EmbedArg::Ramified)]
    pub embed: EmbedArg,
    /// Allow rank ≥ 3 balls beyond the default radius cap.
    #[arg(long)]
    pub allow_large: bool,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Labeled Graphviz export of the ball; embedded vertices are filled.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// JSON export of the ball.
    #[arg(long)]
    pub ball_out: Option<PathBuf>,
}

/// Outcome of a command: the report and whether every audit passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub pass: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_AUDIT_FAILURE
        }
    }
}

pub fn to_canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Parses and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", to_canonical_json(&outcome.report));
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let (outcome, out) = match &cli.command {
        Command::Search(a) => (cmd_search(a)?, &a.output.out),
        Command::Construct(a) => (cmd_construct(a)?, &a.output.out),
        Command::Audit(a) => (cmd_audit(a)?, &a.output.out),
        Command::Tree(a) => (cmd_tree(a)?, &a.output.out),
    };
    if let Some(path) = out {
        write_file(path, &to_canonical_json(&outcome.report))?;
    }
    Ok(outcome)
}

pub fn cmd_search(a: &SearchArgs) -> Result<Outcome> {
    let want: GraphType = a.graph_type.into();
    let found = search_parameters(a.q, a.m, want)?;
    let candidates: Vec<Value> = found
        .iter()
        .map(|h| {
            Ok(json!({
                "htilde_coeffs": h.coeffs().iter().map(element_to_json).collect::<Vec<_>>(),
                "htilde": h.display_with("s"),
                "inert": inert_test(h)?,
                "graph_type": classify_graph_type(h)?,
            }))
        })
        .collect::<Result<_>>()?;
    let report = json!({
        "command": "search",
        "q": a.q,
        "m": a.m,
        "type": want,
        "count": candidates.len(),
        "candidates": candidates,
    });
    Ok(Outcome { report, pass: true })
}

/// Builds the descriptor from flags or a config file; validates before any group work.
pub fn descriptor_from_args(a: &InstanceArgs) -> Result<InstanceDescriptor> {
    if let Some(path) = &a.config {
        return InstanceDescriptor::load(path);
    }
    if a.q % 2 == 0 {
        return Err(Error::EvenCharacteristic(a.q));
    }
    let field = Field::with_order(a.q)?;
    let htilde_coeffs = match &a.htilde {
        None => None,
        Some(text) => {
            let poly = if text.contains(',') && !text.contains('[') {
                let ints = text
                    .split(',')
                    .map(|c| c.trim().parse::<i64>().map_err(|e| Error::Parse(format!("coefficient '{c}': {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                Polynomial::from_ints(&field, &ints)
            } else {
                Polynomial::parse(&field, text)?
            };
            Some(poly.coeffs().iter().map(element_to_json).collect())
        }
    };
    Ok(InstanceDescriptor { q: a.q, m: a.m, htilde_coeffs, epsilon: a.epsilon.map(Value::from) })
}

pub fn load_instance(a: &InstanceArgs) -> Result<Instance> {
    let params = descriptor_from_args(a)?.resolve()?;
    let x_cap = a.x_cap.unwrap_or(2 * params.expected_x_order() as usize);
    let y_cap = a.y_cap.unwrap_or(2 * params.expected_y_order() as usize);
    build_instance_with_caps(&params, x_cap, y_cap).map_err(|e| match e {
        Error::CapExceeded { cap } => Error::InvalidParameter(format!(
            "group closure exceeded cap {cap}; raise --x-cap/--y-cap or choose a smaller q^m"
        )),
        other => other,
    })
}

pub fn cmd_construct(a: &ConstructArgs) -> Result<Outcome> {
    let inst = load_instance(&a.instance)?;
    let summary = inst.summary();
    let y_ids = Subset::new(inst.x.n(), &inst.y_in_x)?;
    let report = json!({
        "command": "construct",
        "descriptor": summary.descriptor,
        "instance": summary,
        "x": inst.x.summary(),
        "y_graph": inst.y.summary(),
        "y_size": inst.y_in_x.len(),
        "y_independent_in_x": induced_average_degree(&inst.x, &y_ids)?.edges == 0,
    });
    if let Some(path) = &a.dot {
        write_file(path, &inst.x.to_dot(None))?;
    }
    if let Some(path) = &a.csv {
        write_file(path, &inst.x.to_csv())?;
    }
    Ok(Outcome { report, pass: true })
}

fn bound(name: &str, lhs: impl Into<Value>, rhs: impl Into<Value>, pass: bool) -> Value {
    json!({ "name": name, "lhs": lhs.into(), "rhs": rhs.into(), "pass": pass })
}

fn certify(g: &Graph, tol: f64, limit: usize) -> Result<(crate::spectral::SpectrumReport, RamanujanAudit)> {
    let method = if g.n() <= limit { Method::Dense } else { Method::Iterative };
    let report = adjacency_spectrum_with_limit(g, method, tol.max(1e-12), limit)?;
    let audit = audit_from_report(&report, tol);
    Ok((report, audit))
}

/// Audit selection and numeric settings, independent of how the instance was loaded.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditOptions {
    pub all: bool,
    pub vertex: bool,
    pub edge: bool,
    pub spectrum: bool,
    pub eigenfunction: bool,
    pub kahale: bool,
    pub moore: bool,
    pub tol: f64,
    pub dense_limit: usize,
    pub moore_l: usize,
    pub chebyshev_l: usize,
    pub walks_csv: Option<PathBuf>,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            all: true,
            vertex: false,
            edge: false,
            spectrum: false,
            eigenfunction: false,
            kahale: false,
            moore: false,
            tol: 1e-9,
            dense_limit: crate::spectral::DEFAULT_DENSE_LIMIT,
            moore_l: 12,
            chebyshev_l: 7,
            walks_csv: None,
        }
    }
}

impl AuditArgs {
    pub fn options(&self) -> AuditOptions {
        AuditOptions {
            all: self.all,
            vertex: self.vertex,
            edge: self.edge,
            spectrum: self.spectrum,
            eigenfunction: self.eigenfunction,
            kahale: self.kahale,
            moore: self.moore,
            tol: self.tol,
            dense_limit: self.dense_limit,
            moore_l: self.moore_l,
            chebyshev_l: self.chebyshev_l,
            walks_csv: self.walks_csv.clone(),
        }
    }
}

pub fn cmd_audit(a: &AuditArgs) -> Result<Outcome> {
    let inst = load_instance(&a.instance)?;
    audit_instance(&inst, &a.options())
}

pub fn audit_instance(inst: &Instance, a: &AuditOptions) -> Result<Outcome> {
    let none = !(a.vertex || a.edge || a.spectrum || a.eigenfunction || a.kahale || a.moore);
    let all = a.all || none;
    let x = &inst.x;
    let y = Subset::new(x.n(), &inst.y_in_x)?;
    let d = x.regular_degree().ok_or(Error::NotRegular)?;
    let mut audits = BTreeMap::new();
    let mut certificate: Option<RamanujanAudit> = None;

    if all || a.vertex {
        let profile = neighbor_profile(x, &y)?;
        let independent = induced_average_degree(x, &y)?.edges == 0;
        let only_two = profile.histogram.keys().all(|&k| k == 2);
        let half = 2 * profile.boundary_size() == d * y.len();
        let pass = independent && only_two && !profile.has_unique_neighbor && !profile.has_odd_neighbor && half;
        audits.insert(
            "vertex",
            json!({
                "subset_size": y.len(),
                "boundary_size": profile.boundary_size(),
                "histogram": profile.histogram,
                "has_unique_neighbor": profile.has_unique_neighbor,
                "has_odd_neighbor": profile.has_odd_neighbor,
                "independent": independent,
                "bounds": [
                    bound("every neighbor has exactly 2 Y-neighbors", only_two, true, only_two),
                    bound("|N(Y)| = d/2 |Y|", profile.boundary_size(), d * y.len() / 2, half),
                ],
                "pass": pass,
            }),
        );
    }

    if all || a.spectrum || a.kahale || a.edge {
        let (xr, xa) = certify(x, a.tol, a.dense_limit)?;
        if all || a.spectrum {
            let (yr, ya) = certify(&inst.y, a.tol, a.dense_limit)?;
            audits.insert(
                "spectrum",
                json!({
                    "x": { "n": xr.n, "method": xr.method, "trivial": xr.trivial, "max_nontrivial_abs": xr.max_nontrivial_abs,
                           "bound": xr.ramanujan_bound, "margin": xr.ramanujan_margin, "max_residual": xr.max_residual, "pass": xa.pass },
                    "y_graph": { "n": yr.n, "method": yr.method, "trivial": yr.trivial, "max_nontrivial_abs": yr.max_nontrivial_abs,
                           "bound": yr.ramanujan_bound, "margin": yr.ramanujan_margin, "max_residual": yr.max_residual, "pass": ya.pass },
                    "tolerance": a.tol,
                    "pass": xa.pass && ya.pass,
                }),
            );
        }
        certificate = Some(xa);
    }

    if all || a.edge {
        let cert = certificate.as_ref().expect("certified above");
        let induced = induced_average_degree(x, &y)?;
        let report = kahale_edge_audit(x, &y, 1, cert)?;
        audits.insert(
            "edge",
            json!({
                "subset_size": y.len(),
                "induced_edges": induced.edges,
                "induced_average_degree": induced.value,
                "finite_l": report,
                "bounds": [bound("induced average degree ≤ (l+3)^{1/l} √(d-1) + 1", induced.value, report.bound, report.pass)],
                "pass": report.pass,
            }),
        );
    }

    if all || a.eigenfunction {
        let f = zero_eigenfunction(x, &inst.y_in_x, &inst.y)?;
        let (zero, witness) = verify_af_zero(x, &f);
        let support = f.support().len();
        let ratio = f.sup_norm() as f64 / (f.norm2_squared() as f64).sqrt();
        let floor = (x.n() as f64).powf(-0.25) / 2.0;
        audits.insert(
            "eigenfunction",
            json!({
                "support": support,
                "sum": f.sum(),
                "sup_norm": f.sup_norm(),
                "norm2_squared": f.norm2_squared(),
                "sup_over_l2": ratio,
                "af_zero": zero,
                "witness": witness,
                "bounds": [
                    bound("Af = 0", zero, true, zero),
                    bound("‖f‖∞/‖f‖₂ ≥ n^{-1/4}/2", ratio, floor, ratio >= floor),
                ],
                "pass": zero && ratio >= floor,
            }),
        );
    }

    if all || a.kahale {
        let cert = certificate.as_ref().expect("certified above");
        let n = x.n() as f64;
        let s = y.len() as f64;
        let q = d as f64 - 1.0;
        let walk_ls: Vec<usize> = (1..=64).take_while(|&l| s * q.powf(l as f64 / 2.0) <= n).collect();
        let walks = walk_ls.iter().map(|&l| kahale_walk_bound_audit(x, &y, l, cert)).collect::<Result<Vec<_>>>()?;
        let vertex_l = (1..=64).take_while(|&l| s * q.powi(l as i32) <= n).last();
        let vertex = vertex_l.map(|l| kahale_vertex_audit(x, &y, l, cert)).transpose()?;
        let pass = walks.iter().all(|w| w.pass) && vertex.as_ref().is_none_or(|v| v.pass && v.extremal);
        audits.insert(
            "kahale",
            json!({
                "walk_bound": walks,
                "vertex": vertex,
                "pass": pass,
            }),
        );
    }

    if all || a.moore {
        let moore = moore_audit(x, a.moore_l)?;
        let cheb = chebyshev_identity_audit(x, a.chebyshev_l, 1e-8, 200)?;
        if let Some(path) = &a.walks_csv {
            let mut csv = String::from("l,observed,bound\n");
            for row in &moore.rows {
                let _ = writeln!(csv, "{},{},{}", row.l, row.observed, row.bound);
            }
            write_file(path, &csv)?;
        }
        let pass = moore.pass && cheb.pass;
        audits.insert("moore", json!({ "moore": moore, "chebyshev": cheb, "pass": pass }));
    }

    let pass = audits.values().all(|v| v["pass"] == Value::Bool(true));
    let report = json!({
        "command": "audit",
        "descriptor": inst.params.descriptor(),
        "audits": audits,
        "pass": pass,
    });
    Ok(Outcome { report, pass })
}

fn estimated_ball(n: usize, q: u64, radius: usize) -> u64 {
    // Vertices at distance r grow at most like |N|·(|N| − 1)^{r−1}.
    let nbrs = NeighborAlphabet::new(n, q).map(|a| a.len() as u64).unwrap_or(q + 1);
    let mut total = 1u64;
    let mut shell = 1u64;
    for r in 0..radius {
        shell = shell.saturating_mul(if r == 0 { nbrs } else { nbrs.saturating_sub(1).max(1) });
        total = total.saturating_add(shell);
    }
    total
}

fn ball_dot(ball: &Ball, highlight: &HashSet<usize>) -> Result<String> {
    let mut out = String::from("graph building {\n  node [shape=box];\n");
    for (i, v) in ball.vertices().iter().enumerate() {
        let fill = if highlight.contains(&i) { ", style=filled, fillcolor=lightblue" } else { "" };
        let _ = writeln!(out, "  {i} [label=\"{}\"{fill}];", v.label("t"));
    }
    for u in 0..ball.len() {
        for &w in ball.adjacency(u) {
            if u < w {
                let _ = writeln!(out, "  {u} -- {w};");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn cmd_tree(a: &TreeArgs) -> Result<Outcome> {
    if a.n < 2 || a.n > building::MAX_RANK {
        return Err(Error::InvalidParameter(format!("n must lie in 2..={}", building::MAX_RANK)));
    }
    if a.n >= 3 && a.radius > DEFAULT_RANK3_RADIUS && !a.allow_large {
        return Err(Error::InvalidParameter(format!(
            "rank {} balls are capped at radius {DEFAULT_RANK3_RADIUS}; pass --allow-large to override",
            a.n
        )));
    }
    if a.embed == EmbedArg::Unramified && a.n != 2 {
        return Err(Error::InvalidParameter("the unramified embedding audit is defined for n = 2".into()));
    }
    let target_q = if a.embed == EmbedArg::Unramified { a.q.checked_mul(a.q).ok_or(Error::FieldTooLarge)? } else { a.q };
    Field::with_order(a.q)?;
    let estimate = estimated_ball(a.n, target_q, a.radius);
    if estimate > MAX_BALL_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "ball of radius {} may hold {estimate} vertices (limit {MAX_BALL_VERTICES})",
            a.radius
        )));
    }
    let (ball, highlight, audit, audit_pass) = match a.embed {
        EmbedArg::None => {
            let alphabet = NeighborAlphabet::new(a.n, a.q)?;
            (Ball::new(&alphabet, a.radius)?, HashSet::new(), Value::Null, true)
        }
        EmbedArg::Ramified => {
            let alphabet = NeighborAlphabet::new(a.n, a.q)?;
            let (ball, z) = building::ramified_image(&alphabet, a.radius)?;
            let audit = building::ramified_audit(a.n, a.q, a.radius)?;
            let pass = audit.pass;
            (ball, z, to_value(&audit), pass)
        }
        EmbedArg::Unramified => {
            let (_, big, image) = building::unramified_image(a.q, a.radius)?;
            let z = image.into_iter().flatten().collect();
            let audit = building::unramified_audit(a.q, a.radius)?;
            let pass = audit.pass;
            (big, z, to_value(&audit), pass)
        }
    };
    let sphere = ball.sphere_sizes();
    let alphabet_len = NeighborAlphabet::new(a.n, target_q)?.len();
    let symmetric = (0..ball.len()).all(|u| ball.adjacency(u).iter().all(|&w| ball.adjacency(w).contains(&u)));
    let colors_ok =
        (0..ball.len()).all(|u| ball.adjacency(u).iter().all(|&w| ball.vertex(u).color() != ball.vertex(w).color()));
    let expected_size = (a.n == 2).then(|| building::tree_ball_size(target_q, a.radius as u32));
    let size_ok = expected_size.is_none_or(|e| e == ball.len() as u64);
    let pass = symmetric && colors_ok && size_ok && audit_pass;
    if let Some(path) = &a.dot {
        write_file(path, &ball_dot(&ball, &highlight)?)?;
    }
    if let Some(path) = &a.ball_out {
        write_file(path, &to_canonical_json(&ball.to_json("t")))?;
    }
    let mut highlighted: Vec<usize> = highlight.into_iter().collect();
    highlighted.sort_unstable();
    let report = json!({
        "command": "tree",
        "n": a.n,
        "q": a.q,
        "field_order": target_q,
        "radius": a.radius,
        "embed": a.embed,
        "neighbor_alphabet_size": alphabet_len,
        "ball_size": ball.len(),
        "expected_ball_size": expected_size,
        "sphere_sizes": sphere,
        "adjacency_symmetric": symmetric,
        "colors_proper": colors_ok,
        "embedded_vertices": highlighted,
        "audit": audit,
        "pass": pass,
    });
    Ok(Outcome { report, pass })
}
