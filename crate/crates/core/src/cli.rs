//! Command-line front end.
//!
//! [`run`] parses argv, performs one computation and returns the rendered
//! report with an exit code: 0 on success, 1 when a verified property fails,
//! 2 on malformed input.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::char_poly::{coefficients, coefficients_from_eigenvalues, eigenvalue_product, mdet_via_subgraphs};
use crate::checks::{run_suite, Suite, SuiteReport};
use crate::error::{Error, Result};
use crate::graph::{AnyGainGraph, BALANCE_TOL};
use crate::io::{generate, parse, serialize, Family};
use crate::linalg::{moore_determinant, EigenOptions};
use crate::scalar::{DualNumber, DualScalar, Element, Ring};
use crate::spectra::{
    adjacency_matrix, check_interlacing, cycle_angle, cycle_spectrum_closed_form, path_spectrum_closed_form,
    radius_report, spectrum, spectrum_with_vectors, ChainReport, InterlacingReport, MatrixKind, RadiusReport, Spectrum,
    VectorEntry, INTERLACING_TOL,
};
use crate::transcendental::DualAngle;
use crate::with_gain_graph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Tolerance for unit checks on loaded gains.
pub const LOAD_TOL: f64 = 1e-9;
/// Agreement tolerance between the two routes of `charpoly` and `mdet`.
pub const AGREEMENT_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "dualgain", version, about = "Spectra of dual unit gain graphs")]
pub struct Cli {
    /// Override the command's default tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Matrix {
    Adjacency,
    Laplacian,
}

impl From<Matrix> for MatrixKind {
    fn from(m: Matrix) -> Self {
        match m {
            Matrix::Adjacency => MatrixKind::Adjacency,
            Matrix::Laplacian => MatrixKind::Laplacian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Real,
    Complex,
    Quaternion,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Self {
        match r {
            RingArg::Real => Ring::Real,
            RingArg::Complex => Ring::Complex,
            RingArg::Quaternion => Ring::Quaternion,
        }
    }
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Gain-graph file.
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    #[arg(long, value_enum, default_value_t = Matrix::Adjacency)]
    pub matrix: Matrix,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dual eigenvalues, sorted descending.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        matrix: MatrixArg,
        /// Include eigenvectors.
        #[arg(long)]
        vectors: bool,
    },
    /// Potential function, or a cycle whose gain is not 1.
    Balance {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Spectral radius against the underlying graph.
    Radius {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Interlacing chains for the subgraph induced on a vertex subset.
    Interlace {
        #[command(flatten)]
        input: GraphInput,
        /// Kept vertices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
    /// Characteristic polynomial coefficients from basic subgraphs.
    Charpoly {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Moore determinant of the adjacency matrix, by two routes.
    Mdet {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Closed-form spectrum of a cycle with the given cycle gain.
    Cycle {
        #[arg(long)]
        n: usize,
        /// Gain of the walk around the cycle, e.g. `(0.6+0.8i) + (-0.8+0.6i)eps`.
        #[arg(long, allow_hyphen_values = true)]
        gain: String,
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Closed-form spectrum of a path.
    Path {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Randomized property suite.
    Check {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Writes a graph from a named family.
    Generate {
        #[command(subcommand)]
        family: FamilyArg,
    },
    /// Rewrites a graph file canonically, optionally in another ring.
    Convert {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        ring: Option<RingArg>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyArg {
    Path {
        #[arg(long)]
        n: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        gain: String,
    },
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RingArg::Real)]
        ring: RingArg,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = RingArg::Complex)]
        ring: RingArg,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub ring: Ring,
    pub balanced: bool,
    pub antibalanced: bool,
    /// Potential `θ` per vertex when balanced.
    pub theta: Option<Vec<VectorEntry>>,
    /// Closed walk whose gain is not 1 when unbalanced.
    pub witness_cycle: Option<Vec<usize>>,
    pub witness_gain: Option<VectorEntry>,
    pub max_mismatch: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharPolyReport {
    /// `c_1..c_n` from basic subgraphs.
    pub coefficients: Vec<DualNumber>,
    /// `(−1)^i e_i(λ)` from the eigensolver.
    pub from_eigenvalues: Vec<DualNumber>,
    pub max_std_diff: f64,
    pub max_dual_diff: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MdetReport {
    /// Permutation expansion of `A(Φ)`.
    pub moore: DualNumber,
    /// Basic-subgraph expansion.
    pub subgraphs: DualNumber,
    pub eigenvalue_product: DualNumber,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub n: usize,
    /// `θ` with cycle gain `e^{iθ}` (after reduction to complex form).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<DualAngle>,
    pub spectrum: Spectrum,
}

/// Every report the CLI can print.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Spectrum(Spectrum),
    Balance(BalanceReport),
    Radius(RadiusReport),
    Interlace(InterlacingReport),
    CharPoly(CharPolyReport),
    Mdet(MdetReport),
    ClosedForm(ClosedFormReport),
    Check(SuiteReport),
}

impl Report {
    /// Whether the report records a failed property.
    pub fn is_violation(&self) -> bool {
        match self {
            Report::Interlace(r) => !r.holds,
            Report::Radius(r) => !(r.bound_holds && r.consistent),
            Report::CharPoly(r) => !r.agree,
            Report::Mdet(r) => !r.agree,
            Report::Check(r) => r.failed > 0,
            _ => false,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = match self {
            Report::Spectrum(r) => serde_json::to_string_pretty(r),
            Report::Balance(r) => serde_json::to_string_pretty(r),
            Report::Radius(r) => serde_json::to_string_pretty(r),
            Report::Interlace(r) => serde_json::to_string_pretty(r),
            Report::CharPoly(r) => serde_json::to_string_pretty(r),
            Report::Mdet(r) => serde_json::to_string_pretty(r),
            Report::ClosedForm(r) => serde_json::to_string_pretty(r),
            Report::Check(r) => serde_json::to_string_pretty(r),
        }
        .expect("reports are plain data");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Spectrum(r) => spectrum_table(&mut s, r),
            Report::Balance(r) => balance_table(&mut s, r),
            Report::Radius(r) => radius_table(&mut s, r),
            Report::Interlace(r) => interlace_table(&mut s, r),
            Report::CharPoly(r) => {
                let _ = writeln!(
                    s,
                    "{:<4} {:>42} {:>42}",
                    "i", "c_i (subgraphs)", "(-1)^i e_i (eigenvalues)"
                );
                for (i, (a, b)) in r.coefficients.iter().zip(&r.from_eigenvalues).enumerate() {
                    let _ = writeln!(s, "{:<4} {:>42} {:>42}", i + 1, dual(*a), dual(*b));
                }
                let _ = writeln!(
                    s,
                    "max diff: std {:e}, dual {:e} ({})",
                    r.max_std_diff,
                    r.max_dual_diff,
                    agree_word(r.agree)
                );
            }
            Report::Mdet(r) => {
                let _ = writeln!(s, "moore determinant   {}", dual(r.moore));
                let _ = writeln!(s, "basic subgraphs     {}", dual(r.subgraphs));
                let _ = writeln!(s, "eigenvalue product  {}", dual(r.eigenvalue_product));
                let _ = writeln!(s, "{}", agree_word(r.agree));
            }
            Report::ClosedForm(r) => {
                if let Some(a) = r.angle {
                    let _ = writeln!(s, "theta = {}", dual(DualNumber::new(a.std, a.dual)));
                }
                spectrum_table(&mut s, &r.spectrum);
            }
            Report::Check(r) => {
                let _ = writeln!(
                    s,
                    "{}: {} trials (seed {}), {} passed, {} failed",
                    r.suite, r.trials, r.seed, r.passed, r.failed
                );
                if let Some(cx) = &r.first_counterexample {
                    let _ = writeln!(s, "first counterexample (trial {}): {}", cx.trial, cx.detail);
                    if let Some(g) = &cx.graph {
                        s.push_str(g);
                    }
                }
            }
        }
        s
    }
}

fn agree_word(ok: bool) -> &'static str {
    if ok {
        "agree"
    } else {
        "DISAGREE"
    }
}

/// Fixed-precision rendering; `+ 0.0` folds negative zero.
fn dual(d: DualNumber) -> String {
    format!("{:+.10} {:+.10}eps", d.std + 0.0, d.dual + 0.0)
}

fn spectrum_table(s: &mut String, r: &Spectrum) {
    let _ = writeln!(s, "{} spectrum", r.kind);
    for (i, v) in r.values.iter().enumerate() {
        let _ = writeln!(s, "lambda_{:<3} {}", i + 1, dual(*v));
        if let Some(vecs) = &r.vectors {
            for (k, e) in vecs[i].iter().enumerate() {
                let _ = writeln!(s, "    x[{k}] = {}", entry(e));
            }
        }
    }
}

fn entry(e: &VectorEntry) -> String {
    let comps = |c: &[f64]| {
        c.iter()
            .map(|x| format!("{:+.10}", x + 0.0))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("[{}] + [{}]eps", comps(&e.std), comps(&e.dual))
}

fn balance_table(s: &mut String, r: &BalanceReport) {
    let _ = writeln!(
        s,
        "{}{}",
        if r.balanced { "balanced" } else { "unbalanced" },
        if r.antibalanced { ", antibalanced" } else { "" }
    );
    if let Some(theta) = &r.theta {
        for (v, t) in theta.iter().enumerate() {
            let _ = writeln!(s, "theta[{v}] = {}", entry(t));
        }
    }
    if let (Some(c), Some(g)) = (&r.witness_cycle, &r.witness_gain) {
        let walk: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "witness cycle {} has gain {}", walk.join(" -> "), entry(g));
    }
}

fn radius_table(s: &mut String, r: &RadiusReport) {
    let (graph, bound) = match r.kind {
        MatrixKind::Adjacency => ("rho_A(G)", "Delta"),
        MatrixKind::Laplacian => ("rho_Q(G)", "2 Delta"),
    };
    let _ = writeln!(s, "{} spectral radius", r.kind);
    let _ = writeln!(s, "{:<12} {}", "rho(Phi)", dual(r.rho_gain));
    let _ = writeln!(s, "{:<12} {:+.10}", graph, r.rho_graph);
    let _ = writeln!(s, "{:<12} {:+.10}", bound, r.delta_bound);
    let _ = writeln!(s, "bound holds: {}", r.bound_holds);
    let _ = writeln!(s, "equality: {}", r.equality);
    let _ = writeln!(
        s,
        "connected: {}, balanced: {}, antibalanced: {}",
        r.connected, r.balanced, r.antibalanced
    );
    match r.predicted_equality {
        Some(p) => {
            let _ = writeln!(s, "predicted equality: {p}, consistent: {}", r.consistent);
        }
        None => {
            let _ = writeln!(s, "predicted equality: n/a (disconnected)");
        }
    }
}

fn chain_table(s: &mut String, name: &str, c: &ChainReport) {
    let _ = writeln!(s, "{name}: {}", if c.holds { "holds" } else { "VIOLATED" });
    let (n, k) = (c.lambda.len(), c.mu.len());
    let rel = |ok: bool| if ok { ">=" } else { "< " };
    for i in 0..k {
        let _ = writeln!(
            s,
            "  lambda_{:<3} {}  {}  mu_{:<3} {}  {}  lambda_{:<3} {}",
            i + 1,
            dual(c.lambda[i]),
            rel(c.upper[i]),
            i + 1,
            dual(c.mu[i]),
            rel(c.lower[i]),
            n - k + i + 1,
            dual(c.lambda[n - k + i]),
        );
    }
    if let Some(v) = c.first_violation() {
        let _ = writeln!(s, "  first violation: {v}");
    }
}

fn interlace_table(s: &mut String, r: &InterlacingReport) {
    let kept: Vec<String> = r.subset.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(s, "subset {{{}}}", kept.join(", "));
    chain_table(s, "adjacency", &r.adjacency);
    chain_table(s, "laplacian (induced subgraph)", &r.laplacian);
    chain_table(s, "laplacian (principal submatrix)", &r.laplacian_principal);
}

fn components<T: Element>(x: crate::scalar::Dual<T>) -> VectorEntry {
    VectorEntry {
        std: x.std.components(),
        dual: x.dual.components(),
    }
}

fn load(path: &PathBuf, tol: f64) -> Result<AnyGainGraph> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::BadParameter(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, tol)
}

fn balance(g: &AnyGainGraph, tol: f64) -> Result<BalanceReport> {
    let ring = g.ring();
    with_gain_graph!(g, |g| {
        let cert = g.balance_certificate(tol);
        let witness_gain = match &cert.witness_cycle {
            Some(c) => Some(components(g.gain_of_walk(c)?)),
            None => None,
        };
        Ok(BalanceReport {
            ring,
            balanced: cert.balanced,
            antibalanced: g.is_antibalanced(tol),
            theta: cert.theta.map(|t| t.into_iter().map(components).collect()),
            witness_cycle: cert.witness_cycle,
            witness_gain,
            max_mismatch: cert.max_mismatch,
        })
    })
}

fn charpoly(g: &AnyGainGraph) -> Result<CharPolyReport> {
    with_gain_graph!(g, |g| {
        let cs = coefficients(g)?;
        let ev = coefficients_from_eigenvalues(&spectrum(g, MatrixKind::Adjacency, &EigenOptions::default())?.values);
        let (mut ds, mut dd) = (0.0f64, 0.0f64);
        for (a, b) in cs.iter().zip(&ev) {
            let (s, d) = a.part_diffs(*b);
            ds = ds.max(s);
            dd = dd.max(d);
        }
        Ok(CharPolyReport {
            coefficients: cs,
            from_eigenvalues: ev,
            max_std_diff: ds,
            max_dual_diff: dd,
            agree: ds <= AGREEMENT_TOL && dd <= AGREEMENT_TOL,
        })
    })
}

fn mdet(g: &AnyGainGraph) -> Result<MdetReport> {
    with_gain_graph!(g, |g| {
        let moore = moore_determinant(&adjacency_matrix(g), crate::DEFAULT_TOL)?.real_part();
        let subgraphs = mdet_via_subgraphs(g)?;
        let product = eigenvalue_product(&spectrum(g, MatrixKind::Adjacency, &EigenOptions::default())?.values);
        let close = |a: DualNumber, b: DualNumber| {
            let (s, d) = a.part_diffs(b);
            s <= AGREEMENT_TOL && d <= AGREEMENT_TOL
        };
        Ok(MdetReport {
            moore,
            subgraphs,
            eigenvalue_product: product,
            agree: close(moore, subgraphs) && close(moore, product) && close(subgraphs, product),
        })
    })
}

fn cycle_report(n: usize, gain: &str, kind: MatrixKind, tol: f64) -> Result<ClosedFormReport> {
    let q: DualScalar = gain.parse()?;
    if !q.is_unit(tol) {
        return Err(Error::NotUnit);
    }
    let (angle, spectrum) = match q {
        DualScalar::Real(q) => (cycle_angle(q, tol)?, cycle_spectrum_closed_form(n, q, kind, tol)?),
        DualScalar::Complex(q) => (cycle_angle(q, tol)?, cycle_spectrum_closed_form(n, q, kind, tol)?),
        DualScalar::Quaternion(q) => (cycle_angle(q, tol)?, cycle_spectrum_closed_form(n, q, kind, tol)?),
    };
    Ok(ClosedFormReport {
        n,
        angle: Some(angle),
        spectrum,
    })
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[allow(clippy::large_enum_variant)]
enum Output {
    Report(Report),
    Graph(AnyGainGraph),
}

fn execute(cli: &Cli) -> Result<Output> {
    let opts = EigenOptions::default();
    let load_tol = cli.tol.unwrap_or(LOAD_TOL);
    Ok(match &cli.command {
        Command::Spectrum { input, matrix, vectors } => {
            let g = load(&input.file, load_tol)?;
            let kind = matrix.matrix.into();
            Output::Report(Report::Spectrum(with_gain_graph!(&g, |g| if *vectors {
                spectrum_with_vectors(g, kind, &opts)?
            } else {
                spectrum(g, kind, &opts)?
            })))
        }
        Command::Balance { input } => {
            let g = load(&input.file, load_tol)?;
            Output::Report(Report::Balance(balance(&g, cli.tol.unwrap_or(BALANCE_TOL))?))
        }
        Command::Radius { input, matrix } => {
            let g = load(&input.file, load_tol)?;
            let kind = matrix.matrix.into();
            Output::Report(Report::Radius(with_gain_graph!(&g, |g| radius_report(g, kind, &opts)?)))
        }
        Command::Interlace { input, subset } => {
            let g = load(&input.file, load_tol)?;
            let tol = cli.tol.unwrap_or(INTERLACING_TOL);
            Output::Report(Report::Interlace(with_gain_graph!(&g, |g| check_interlacing(
                g, subset, tol, &opts
            )?)))
        }
        Command::Charpoly { input } => Output::Report(Report::CharPoly(charpoly(&load(&input.file, load_tol)?)?)),
        Command::Mdet { input } => Output::Report(Report::Mdet(mdet(&load(&input.file, load_tol)?)?)),
        Command::Cycle { n, gain, matrix } => Output::Report(Report::ClosedForm(cycle_report(
            *n,
            gain,
            matrix.matrix.into(),
            load_tol,
        )?)),
        Command::Path { n, matrix } => Output::Report(Report::ClosedForm(ClosedFormReport {
            n: *n,
            angle: None,
            spectrum: path_spectrum_closed_form(*n, matrix.matrix.into())?,
        })),
        Command::Check { suite, trials, seed } => Output::Report(Report::Check(run_suite(*suite, *trials, *seed)?)),
        Command::Generate { family } => {
            let family = match family {
                FamilyArg::Path { n } => Family::Path { n: *n },
                FamilyArg::Cycle { n, gain } => Family::Cycle {
                    n: *n,
                    gain: gain.parse()?,
                },
                FamilyArg::Complete { n, ring } => Family::Complete {
                    n: *n,
                    ring: (*ring).into(),
                },
                FamilyArg::Random { n, p, seed, ring } => Family::Random {
                    n: *n,
                    p: *p,
                    seed: *seed,
                    ring: (*ring).into(),
                },
            };
            Output::Graph(generate(&family, load_tol)?)
        }
        Command::Convert { input, ring } => {
            let g = load(&input.file, load_tol)?;
            match ring {
                None => Output::Graph(g),
                Some(r) => {
                    let ring: Ring = (*r).into();
                    let gains = g
                        .tagged_gains()
                        .iter()
                        .map(|x| x.cast(ring))
                        .collect::<Result<Vec<_>>>()?;
                    Output::Graph(AnyGainGraph::from_tagged(ring, g.graph().clone(), &gains, load_tol)?)
                }
            }
        }
    })
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let fail = |msg: String| Outcome {
        code: EXIT_INPUT,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    };
    let (text, code) = match execute(&cli) {
        Err(e) => return fail(e.to_string()),
        Ok(Output::Graph(g)) => (serialize(&g), EXIT_OK),
        Ok(Output::Report(r)) => {
            let code = if r.is_violation() { EXIT_VIOLATION } else { EXIT_OK };
            let text = match cli.format {
                Format::Table => r.to_table(),
                Format::Json => r.to_json(),
            };
            (text, code)
        }
    };
    match &cli.out {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => fail(format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}
