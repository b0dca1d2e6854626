//! `qudit`: command-line front end for the qudit toolkit.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 on numerical failure,
//! a teleportation fidelity miss, or a failed selftest.

mod input;

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qudit::acceptance::{run_all, Constants};
use qudit::chsh::{chsh_scan, chsh_value, scan_grid, ChshSettings, Direction, ScanRow};
use qudit::generators::full_basis;
use qudit::json::{DensityJson, KetJson, MatrixJson, Real17};
use qudit::linalg::kron_all;
use qudit::multipartite::{ppt_test, schmidt};
use qudit::ops::{expectation, variance};
use qudit::quantifiers::{quantify, LogBase, Metric};
use qudit::states::catalog::hopf;
use qudit::states::{dm_from_bloch, dm_from_qubit_bloch, BlochCoeffs, DimSpec, NamedState, State};
use qudit::teleport::{run_enumerate, run_sample, FIDELITY_TOL};
use qudit::{QuditError, Result};

#[derive(Parser)]
#[command(
    name = "qudit",
    version,
    about = "Matrix mechanics for small multi-qudit systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the identity-plus-GGM basis (or its tensor products) as JSON.
    Gen(GenArgs),
    /// Build a state and print it as density-operator JSON.
    State(StateArgs),
    /// Evaluate a quantifier on a state.
    Quantify(QuantifyArgs),
    /// Schmidt rank and PPT test of a bipartite state.
    Separability(SeparabilityArgs),
    /// CHSH expectation value of a two-qubit state.
    Chsh(ChshArgs),
    /// CHSH value, PPT minimum eigenvalue and concurrence along the Werner family.
    ChshScan(ScanArgs),
    /// Simulate single-qubit teleportation.
    Teleport(TeleportArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Single-site dimension.
    #[arg(long, conflicts_with = "dims")]
    dim: Option<usize>,
    /// Comma-separated subsystem dimensions, e.g. 2,3.
    #[arg(long)]
    dims: Option<DimSpec>,
}

#[derive(Args)]
struct StateArgs {
    /// Catalog name, e.g. bell-phi-plus, ghz3, werner:0.5, qutrit:1.
    #[arg(long, conflicts_with_all = ["theta", "bloch", "x"])]
    name: Option<String>,
    /// Polar angle of the qubit `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    #[arg(long, requires = "phi", allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, requires = "theta", allow_hyphen_values = true)]
    phi: Option<f64>,
    /// Werner parameter.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["theta", "bloch"])]
    x: Option<f64>,
    /// JSON array: a 3-vector `(⟨σx⟩,⟨σy⟩,⟨σz⟩)` for one qubit, otherwise
    /// all `Π d²` coefficients in flat generator order.
    #[arg(long, allow_hyphen_values = true)]
    bloch: Option<String>,
    /// Subsystem dimensions for --bloch.
    #[arg(long, default_value = "2")]
    dims: DimSpec,
    /// Print pure states as ket JSON instead of density-operator JSON.
    #[arg(long)]
    ket: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Purity,
    Entropy,
    EntEntropy,
    Concurrence,
    Coherence,
    Expectation,
    Variance,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    #[value(name = "2")]
    Two,
    E,
}

#[derive(Args)]
struct QuantifyArgs {
    #[arg(long, value_enum)]
    metric: MetricArg,
    /// State JSON, catalog name, or `-` for JSON on stdin.
    #[arg(long, allow_hyphen_values = true)]
    state: String,
    /// Order of the p-norm for coherence.
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Logarithm base for entropy.
    #[arg(long, value_enum, default_value = "2")]
    base: BaseArg,
    /// Subsystem kept for the entanglement entropy (0-based).
    #[arg(long, default_value_t = 0)]
    subsystem: usize,
    /// Observable for expectation and variance: x, y, z or matrix JSON.
    #[arg(long)]
    observable: Option<String>,
}

#[derive(Args)]
struct SeparabilityArgs {
    #[arg(long, allow_hyphen_values = true)]
    state: String,
}

#[derive(Args)]
struct ChshArgs {
    #[arg(long, allow_hyphen_values = true)]
    state: String,
    /// `optimal` or JSON `{"r":[..],"q":[..],"s":[..],"t":[..]}`.
    #[arg(long, default_value = "optimal")]
    settings: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    to: f64,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    /// Output format.
    #[arg(long = "out", alias = "format", value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    #[arg(long, default_value = "optimal")]
    settings: String,
}

#[derive(Args)]
struct TeleportArgs {
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long, allow_hyphen_values = true)]
    phi: f64,
    /// Enumerate all four branches.
    #[arg(long, conflicts_with_all = ["seed", "shots"])]
    enumerate: bool,
    #[arg(long, requires = "shots")]
    seed: Option<u64>,
    #[arg(long, requires = "seed")]
    shots: Option<u64>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Corrupt the Tsirelson reference value to exercise the failure path.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

/// Outcome of a subcommand that ran to completion but did not meet its goal.
struct Failed(String);

enum CliError {
    Qudit(QuditError),
    Failed(Failed),
    Io(io::Error),
}

impl From<QuditError> for CliError {
    fn from(e: QuditError) -> Self {
        CliError::Qudit(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = std::result::Result<(), CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Gen(a) => gen(a),
        Command::State(a) => state(a),
        Command::Quantify(a) => quantify_cmd(a),
        Command::Separability(a) => separability(a),
        Command::Chsh(a) => chsh(a),
        Command::ChshScan(a) => chsh_scan_cmd(a),
        Command::Teleport(a) => teleport(a),
        Command::Selftest(a) => selftest(a),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Qudit(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
        Err(CliError::Failed(Failed(msg))) => {
            eprintln!("failure: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print_json<T: Serialize>(v: &T) -> CliResult {
    let s = serde_json::to_string_pretty(v).map_err(|e| QuditError::Parse(e.to_string()))?;
    writeln!(io::stdout().lock(), "{s}")?;
    Ok(())
}

fn r(x: f64) -> Real17 {
    Real17(x)
}

fn gen(a: GenArgs) -> CliResult {
    #[derive(Serialize)]
    struct Entry<'a> {
        label: String,
        index: Vec<usize>,
        matrix: MatrixJson<'a>,
    }
    let dims = match (a.dim, a.dims) {
        (Some(d), None) => DimSpec::single(d)?,
        (None, Some(d)) => d,
        _ => return Err(QuditError::Parse("give --dim or --dims".into()).into()),
    };
    let bases: Vec<_> = dims
        .dims()
        .iter()
        .map(|&d| full_basis(d))
        .collect::<Result<_>>()?;
    let sizes: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let total: usize = sizes.iter().product();
    let mut mats = Vec::with_capacity(total);
    let mut meta = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut idx = vec![0; sizes.len()];
        for s in (0..sizes.len()).rev() {
            idx[s] = rem % sizes[s];
            rem /= sizes[s];
        }
        let label = idx
            .iter()
            .zip(&bases)
            .map(|(&j, b)| b.labels()[j].to_string())
            .collect::<Vec<_>>()
            .join("⊗");
        mats.push(kron_all(
            idx.iter().zip(&bases).map(|(&j, b)| &b.flat()[j]),
        )?);
        meta.push((label, idx));
    }
    let entries: Vec<Entry> = meta
        .into_iter()
        .zip(&mats)
        .map(|((label, index), m)| Entry {
            label,
            index,
            matrix: MatrixJson(m),
        })
        .collect();
    print_json(&entries)
}

fn state(a: StateArgs) -> CliResult {
    let s = if let Some(name) = &a.name {
        name.parse::<NamedState>()?.build()?
    } else if let (Some(theta), Some(phi)) = (a.theta, a.phi) {
        NamedState::Hopf { theta, phi }.build()?
    } else if let Some(x) = a.x {
        NamedState::Werner { x }.build()?
    } else if let Some(b) = &a.bloch {
        let v = input::read_f64_array(b, "--bloch")?;
        if a.dims.dims() == [2] && v.len() == 3 {
            State::Mixed(dm_from_qubit_bloch([v[0], v[1], v[2]])?)
        } else {
            State::Mixed(dm_from_bloch(&BlochCoeffs::from_values(
                a.dims.clone(),
                v,
            )?)?)
        }
    } else {
        return Err(
            QuditError::Parse("give one of --name, --theta/--phi, --x, --bloch".into()).into(),
        );
    };
    match (&s, a.ket) {
        (State::Pure(k), true) => print_json(&KetJson(k)),
        _ => print_json(&DensityJson(&s.to_density())),
    }
}

fn quantify_cmd(a: QuantifyArgs) -> CliResult {
    #[derive(Serialize)]
    struct Out {
        metric: &'static str,
        value: Real17,
        details: Details,
    }
    #[derive(Serialize)]
    struct Details {
        dims: Vec<usize>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        eigenvalues: Vec<Real17>,
        #[serde(skip_serializing_if = "Option::is_none")]
        p: Option<Real17>,
        #[serde(skip_serializing_if = "Option::is_none")]
        base: Option<&'static str>,
        #[serde(skip_serializing_if = "Option::is_none")]
        subsystem: Option<usize>,
    }
    let rho = input::read_state(&a.state)?.to_density();
    let mut details = Details {
        dims: rho.dims().dims().to_vec(),
        eigenvalues: Vec::new(),
        p: None,
        base: None,
        subsystem: None,
    };
    let metric = match a.metric {
        MetricArg::Expectation | MetricArg::Variance => {
            let obs_arg = a
                .observable
                .as_deref()
                .ok_or_else(|| QuditError::Parse("--observable is required".into()))?;
            let obs = input::read_observable(obs_arg)?;
            let (name, value) = match a.metric {
                MetricArg::Expectation => ("expectation", expectation(&rho, &obs)?),
                _ => ("variance", variance(&rho, &obs)?),
            };
            return print_json(&Out {
                metric: name,
                value: r(value),
                details,
            });
        }
        MetricArg::Purity => Metric::Purity,
        MetricArg::Entropy => {
            details.base = Some(match a.base {
                BaseArg::Two => "2",
                BaseArg::E => "e",
            });
            Metric::Entropy {
                base: match a.base {
                    BaseArg::Two => LogBase::Two,
                    BaseArg::E => LogBase::E,
                },
            }
        }
        MetricArg::EntEntropy => {
            details.subsystem = Some(a.subsystem);
            Metric::EntanglementEntropy {
                subsystem: a.subsystem,
            }
        }
        MetricArg::Concurrence => Metric::Concurrence,
        MetricArg::Coherence => {
            details.p = Some(r(a.p));
            Metric::Coherence { p: a.p }
        }
    };
    let q = quantify(&rho, metric)?;
    details.eigenvalues = q.eigenvalues.iter().map(|&x| r(x)).collect();
    print_json(&Out {
        metric: q.name,
        value: r(q.value),
        details,
    })
}

fn separability(a: SeparabilityArgs) -> CliResult {
    #[derive(Serialize)]
    struct Out {
        schmidt_rank: Option<usize>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        schmidt_coefficients: Vec<Real17>,
        ppt_min_eig: Real17,
        verdict: &'static str,
    }
    let s = input::read_state(&a.state)?;
    if s.dims().len() != 2 {
        return Err(QuditError::Dimension(format!(
            "separability needs a bipartite state, got dims {}",
            s.dims()
        ))
        .into());
    }
    let (rank, coeffs) = match s.as_ket() {
        Some(k) => {
            let sd = schmidt(k, k.dims())?;
            (
                Some(sd.rank),
                sd.coefficients.iter().map(|&c| r(c)).collect(),
            )
        }
        None => (None, Vec::new()),
    };
    let ppt = ppt_test(&s.to_density())?;
    print_json(&Out {
        schmidt_rank: rank,
        schmidt_coefficients: coeffs,
        ppt_min_eig: r(ppt.min_eig),
        verdict: ppt.verdict.as_str(),
    })
}

fn parse_settings(arg: &str) -> Result<ChshSettings> {
    #[derive(serde::Deserialize)]
    struct In {
        r: Direction,
        q: Direction,
        s: Direction,
        t: Direction,
    }
    if arg.trim() == "optimal" {
        return Ok(ChshSettings::optimal());
    }
    let v: In =
        serde_json::from_str(arg).map_err(|e| QuditError::Parse(format!("--settings: {e}")))?;
    ChshSettings::new(v.r, v.q, v.s, v.t)
}

fn settings_json(s: &ChshSettings) -> [(&'static str, [Real17; 3]); 4] {
    let d = |v: Direction| [r(v[0]), r(v[1]), r(v[2])];
    [("r", d(s.r)), ("q", d(s.q)), ("s", d(s.s)), ("t", d(s.t))]
}

fn chsh(a: ChshArgs) -> CliResult {
    #[derive(Serialize)]
    struct Out {
        value: Real17,
        classical_bound: Real17,
        tsirelson_bound: Real17,
        violates_classical: bool,
        settings: std::collections::BTreeMap<&'static str, [Real17; 3]>,
    }
    let settings = parse_settings(&a.settings)?;
    let rho = input::read_state(&a.state)?.to_density();
    let v = chsh_value(&rho, &settings)?;
    print_json(&Out {
        value: r(v),
        classical_bound: r(2.0),
        tsirelson_bound: r(2.0 * std::f64::consts::SQRT_2),
        violates_classical: v.abs() > 2.0 + 1e-12,
        settings: settings_json(&settings).into_iter().collect(),
    })
}

fn write_scan(rows: &[ScanRow], format: Format, sink: &mut dyn Write) -> CliResult {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(["x", "chsh", "ppt_min_eig", "concurrence"])
                .map_err(csv_err)?;
            for row in rows {
                let c = row.concurrence.map(|c| c.to_string()).unwrap_or_default();
                w.write_record([
                    row.x.to_string(),
                    row.chsh.to_string(),
                    row.ppt_min_eig.to_string(),
                    c,
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                x: Real17,
                chsh: Real17,
                ppt_min_eig: Real17,
                concurrence: Option<Real17>,
            }
            let out: Vec<Row> = rows
                .iter()
                .map(|row| Row {
                    x: r(row.x),
                    chsh: r(row.chsh),
                    ppt_min_eig: r(row.ppt_min_eig),
                    concurrence: row.concurrence.map(r),
                })
                .collect();
            let s =
                serde_json::to_string_pretty(&out).map_err(|e| QuditError::Parse(e.to_string()))?;
            writeln!(sink, "{s}")?;
        }
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::other(format!("{other:?}")),
    })
}

fn chsh_scan_cmd(a: ScanArgs) -> CliResult {
    let settings = parse_settings(&a.settings)?;
    let rows = chsh_scan(&scan_grid(a.from, a.to, a.step)?, &settings)?;
    match &a.output {
        Some(path) => write_scan(&rows, a.format, &mut File::create(path)?),
        None => write_scan(&rows, a.format, &mut io::stdout().lock()),
    }
}

fn teleport(a: TeleportArgs) -> CliResult {
    if !a.theta.is_finite() || !a.phi.is_finite() {
        return Err(QuditError::Domain("non-finite teleport angle".into()).into());
    }
    let psi = hopf(a.theta, a.phi);
    let floor = 1.0 - FIDELITY_TOL;
    if a.enumerate || a.seed.is_none() {
        #[derive(Serialize)]
        struct Branch<'a> {
            branch: String,
            probability: Real17,
            bob_state_pre_correction: KetJson<'a>,
            correction: &'static str,
            bob_state_final: KetJson<'a>,
            fidelity: Real17,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            mode: &'static str,
            input: KetJson<'a>,
            branches: Vec<Branch<'a>>,
        }
        let out = run_enumerate(&psi)?;
        let worst = out.iter().map(|o| o.fidelity).fold(f64::INFINITY, f64::min);
        print_json(&Out {
            mode: "enumerate",
            input: KetJson(&psi),
            branches: out
                .iter()
                .map(|o| Branch {
                    branch: format!("{}{}", o.branch.0, o.branch.1),
                    probability: r(o.probability),
                    bob_state_pre_correction: KetJson(&o.bob_state_pre_correction),
                    correction: o.correction,
                    bob_state_final: KetJson(&o.bob_state_final),
                    fidelity: r(o.fidelity),
                })
                .collect(),
        })?;
        if worst < floor {
            return Err(CliError::Failed(Failed(format!(
                "fidelity {worst} below {floor}"
            ))));
        }
        return Ok(());
    }
    #[derive(Serialize)]
    struct Out<'a> {
        mode: &'static str,
        input: KetJson<'a>,
        seed: u64,
        shots: u64,
        counts: std::collections::BTreeMap<&'static str, u64>,
        frequencies: std::collections::BTreeMap<&'static str, Real17>,
        min_fidelity: Option<Real17>,
    }
    let (seed, shots) = (a.seed.unwrap_or_default(), a.shots.unwrap_or_default());
    let t = run_sample(&psi, seed, shots)?;
    const NAMES: [&str; 4] = ["00", "01", "10", "11"];
    let n = shots.max(1) as f64;
    let min_fidelity = (shots > 0).then_some(t.min_fidelity);
    print_json(&Out {
        mode: "sample",
        input: KetJson(&psi),
        seed,
        shots,
        counts: NAMES.iter().copied().zip(t.counts).collect(),
        frequencies: NAMES
            .iter()
            .copied()
            .zip(t.counts.iter().map(|&c| r(c as f64 / n)))
            .collect(),
        min_fidelity: min_fidelity.map(r),
    })?;
    match min_fidelity {
        Some(f) if f < floor => Err(CliError::Failed(Failed(format!(
            "fidelity {f} below {floor}"
        )))),
        _ => Ok(()),
    }
}

fn selftest(a: SelftestArgs) -> CliResult {
    let mut constants = Constants::default();
    if a.inject_fault {
        constants.tsirelson = 3.0;
    }
    let reports = run_all(&constants);
    let mut out = io::stdout().lock();
    for rep in &reports {
        writeln!(out, "{rep}")?;
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    writeln!(
        out,
        "{} of {} criteria passed",
        reports.len() - failed,
        reports.len()
    )?;
    if failed > 0 {
        return Err(CliError::Failed(Failed(format!(
            "{failed} criteria failed"
        ))));
    }
    Ok(())
}
