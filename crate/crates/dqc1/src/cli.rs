//! Command-line front end.
//!
//! Every subcommand first reads and validates all inputs; `--dry-run` stops
//! there. Exit codes: 0 success, 1 computation error, 2 usage or input error.

use std::f64::consts::{FRAC_PI_4, PI};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dqc1_core::braid::{braid_unitary, embed_in_qubits, BraidWord, DEFAULT_ROOT_ORDER};
use dqc1_core::discord::{
    is_classical_on, is_concordant, product_basis, Bipartition, DiscordOptions, Side,
};
use dqc1_core::dqc1::{
    b_side_expectation, build_state, exact_trace_expectations, implied_trace_from_shots,
    separable_decomposition, Basis, Dqc1Config, Dqc1State,
};
use dqc1_core::linalg::haar_random_unitary;
use dqc1_core::qswe::{QsweInstance, QsweValue, SignVariant, Weights};
use dqc1_core::{Complex64, ComplexMatrix, DensityMatrix};
use rayon::ThreadPool;
use thiserror::Error;

use crate::catalan::catalan_counts;
use crate::formats::{self, format_float, FormatError};
use crate::parallel;

/// Largest register accepted from `--haar`.
pub const MAX_HAAR_QUBITS: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "dqc1",
    version,
    about = "One-clean-qubit (DQC1) workbench: trace estimation, discord, GF(2) weight enumerators and braid unitaries"
)]
pub struct Cli {
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for every random choice (shots, Haar unitaries).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Validate inputs and stop before computing.
    #[arg(long, global = true)]
    pub dry_run: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate tr(U)/2^n from simulated clean-qubit X and Y measurements.
    TraceEst {
        #[command(flatten)]
        source: UnitarySource,
        #[command(flatten)]
        circuit: CircuitArgs,
        /// Shots per basis.
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
    },
    /// Quantum discord of a state read from a .dmat file.
    Discord {
        #[command(flatten)]
        split: SplitArgs,
        /// Polar grid intervals over [0, pi].
        #[arg(long, default_value_t = 32)]
        theta_steps: usize,
        /// Azimuth samples over [0, 2pi).
        #[arg(long, default_value_t = 64)]
        phi_steps: usize,
    },
    /// Scan I - J over clean-qubit measurements cos(phi) X + sin(phi) Y.
    DiscordScan {
        #[command(flatten)]
        source: UnitarySource,
        #[command(flatten)]
        circuit: CircuitArgs,
        /// Number of azimuths in [0, 2pi).
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// CSV output with columns phi,I_minus_J.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether a state is classical on one side of a bipartition.
    ClassicalTest {
        #[command(flatten)]
        split: SplitArgs,
        /// Write the witness basis (columns) as .cmat.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether a multi-qubit state is diagonal in a product basis.
    ConcordantTest {
        /// State in .dmat format; every subsystem must be a qubit.
        #[arg(long)]
        state: PathBuf,
        /// Write the product witness basis (columns) as .cmat.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quadratically signed weight enumerators.
    #[command(subcommand)]
    Qswe(QsweCommand),
    /// Braid-group representations.
    #[command(subcommand)]
    Braid(BraidCommand),
    /// Expectation of an observable on the controlled register.
    BsideExpect {
        #[command(flatten)]
        source: UnitarySource,
        #[command(flatten)]
        circuit: CircuitArgs,
        /// Hermitian observable in .cmat format.
        #[arg(long)]
        observable: PathBuf,
    },
    /// Explicit separable ensemble of the circuit output.
    SeparableDecomp {
        #[command(flatten)]
        source: UnitarySource,
        #[command(flatten)]
        circuit: CircuitArgs,
        /// CSV output, one row per ensemble member.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Catalan number C_n and the coupling count (n+1)! C_n^2.
    Catalan {
        /// Index n; C_n counts the coupling schemes of n + 1 spins.
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum QsweCommand {
    /// Evaluate S(A, B, x, y); integer x and y give an exact result.
    Eval {
        /// m x n matrix A in .gf2 format.
        #[arg(long)]
        a: PathBuf,
        /// n x n matrix B in .gf2 format.
        #[arg(long)]
        b: PathBuf,
        /// Weight of set bits; integer mode when both weights parse as i64.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Weight of clear bits.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Sign of S(A, lower(A), k, l) or S([A; A^T], lower(A), k, l).
    Sign {
        /// Square matrix with unit diagonal in .gf2 format.
        #[arg(long)]
        a: PathBuf,
        /// bqp evaluates S(A, lower(A)); dqc1 stacks A over its transpose.
        #[arg(long, value_enum, default_value_t = VariantArg::Dqc1)]
        variant: VariantArg,
        /// Weight of set bits, positive.
        #[arg(long, default_value_t = 4)]
        k: i64,
        /// Weight of clear bits, positive.
        #[arg(long, default_value_t = 3)]
        l: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum BraidCommand {
    /// Unitary of a braid word on the path space, optionally padded to qubits.
    Unitary {
        /// Word such as "4:+1,-2" (strands, then signed generators).
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Root-of-unity order.
        #[arg(long, default_value_t = DEFAULT_ROOT_ORDER)]
        k: usize,
        /// Pad with identity to a power-of-two dimension.
        #[arg(long)]
        embed: bool,
        /// Write the matrix as .cmat.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Bqp,
    Dqc1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    A,
    B,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::A => Side::A,
            SideArg::B => Side::B,
        }
    }
}

/// Where the controlled unitary comes from.
#[derive(Debug, Args)]
#[group(skip)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["unitary", "braid", "haar"])))]
pub struct UnitarySource {
    /// Unitary in .cmat format (power-of-two dimension).
    #[arg(long)]
    pub unitary: Option<PathBuf>,
    /// Braid word such as "4:+1", embedded into qubits.
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,
    /// Haar-random unitary on this many qubits, drawn from --seed.
    #[arg(long)]
    pub haar: Option<usize>,
    /// Root-of-unity order for --braid [default: 5].
    #[arg(long)]
    pub k: Option<usize>,
}

/// Clean-qubit preparation; the defaults give the standard circuit.
#[derive(Debug, Args)]
pub struct CircuitArgs {
    /// Polarization of the clean qubit, in [0, 1].
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Preparation angle theta.
    #[arg(long, default_value_t = FRAC_PI_4, allow_hyphen_values = true)]
    pub theta: f64,
    /// Preparation phase delta.
    #[arg(long, default_value_t = PI, allow_hyphen_values = true)]
    pub delta: f64,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    /// State in .dmat format.
    #[arg(long)]
    pub state: PathBuf,
    /// Number of leading subsystems forming side A.
    #[arg(long, default_value_t = 1)]
    pub split_at: usize,
    /// Side that is measured (discord) or tested (classicality).
    #[arg(long, value_enum, default_value_t = SideArg::A)]
    pub side: SideArg,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Compute(#[from] dqc1_core::Error),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Format(_) => 2,
            Self::Compute(_) | Self::Output(_) => 1,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

type CliResult<T> = Result<T, CliError>;

/// Output sink collecting `key: value` lines.
struct Report<'w, W: Write> {
    out: &'w mut W,
}

impl<W: Write> Report<'_, W> {
    fn line(&mut self, key: &str, value: impl std::fmt::Display) -> CliResult<()> {
        writeln!(self.out, "{key}: {value}")?;
        Ok(())
    }

    fn float(&mut self, key: &str, v: f64) -> CliResult<()> {
        self.line(key, format_float(v))
    }

    fn complex(&mut self, key: &str, z: Complex64) -> CliResult<()> {
        self.float(&format!("{key}_re"), z.re)?;
        self.float(&format!("{key}_im"), z.im)
    }
}

/// Unitary together with how it was obtained.
struct LoadedUnitary {
    matrix: ComplexMatrix,
    /// `(path trace, padding)` for braid sources.
    braid: Option<(Complex64, usize)>,
}

fn load_unitary(src: &UnitarySource, seed: u64) -> CliResult<LoadedUnitary> {
    if src.k.is_some() && src.braid.is_none() {
        return Err(usage("--k only applies to --braid"));
    }
    if let Some(path) = &src.unitary {
        return Ok(LoadedUnitary {
            matrix: formats::read_cmat(path)?,
            braid: None,
        });
    }
    if let Some(word) = &src.braid {
        let word: BraidWord = word.parse().map_err(usage)?;
        let path = braid_unitary(&word, src.k.unwrap_or(DEFAULT_ROOT_ORDER)).map_err(usage)?;
        let e = embed_in_qubits(&path).map_err(usage)?;
        return Ok(LoadedUnitary {
            matrix: e.unitary,
            braid: Some((e.path_trace, e.padding_dim)),
        });
    }
    let qubits = src.haar.expect("clap requires one unitary source");
    if qubits == 0 || qubits > MAX_HAAR_QUBITS {
        return Err(usage(format!(
            "--haar takes 1..={MAX_HAAR_QUBITS} qubits, got {qubits}"
        )));
    }
    Ok(LoadedUnitary {
        matrix: haar_random_unitary(1 << qubits, seed)?,
        braid: None,
    })
}

fn load_circuit(
    src: &UnitarySource,
    circuit: &CircuitArgs,
    seed: u64,
) -> CliResult<(Dqc1State, LoadedUnitary)> {
    let u = load_unitary(src, seed)?;
    let cfg = Dqc1Config::new(
        circuit.alpha,
        circuit.theta,
        circuit.delta,
        u.matrix.clone(),
    )
    .map_err(usage)?;
    Ok((build_state(cfg), u))
}

fn load_split(args: &SplitArgs) -> CliResult<(DensityMatrix, Bipartition)> {
    let rho = formats::read_dmat(&args.state)?;
    let dims = rho.dims();
    if args.split_at == 0 || args.split_at >= dims.len() {
        return Err(usage(format!(
            "--split-at must be in 1..{} for a state with {} subsystems",
            dims.len(),
            dims.len()
        )));
    }
    let d_a = dims[..args.split_at].iter().product();
    let d_b = dims[args.split_at..].iter().product();
    let split = Bipartition::new(d_a, d_b, args.side.into()).map_err(usage)?;
    Ok((rho, split))
}

fn write_output(path: &Path, contents: &str) -> CliResult<()> {
    formats::write_file(path, contents).map_err(CliError::Format)
}

fn describe_unitary<W: Write>(r: &mut Report<'_, W>, u: &LoadedUnitary) -> CliResult<()> {
    r.line("register_qubits", u.matrix.rows().trailing_zeros())?;
    if let Some((trace, padding)) = u.braid {
        r.complex("path_trace", trace)?;
        r.line("padding_dim", padding)?;
    }
    Ok(())
}

/// Parses `x` and `y`: both integers give exact weights, otherwise reals.
fn parse_weights(x: &str, y: &str) -> CliResult<Weights> {
    if let (Ok(x), Ok(y)) = (x.parse::<i64>(), y.parse::<i64>()) {
        return Ok(Weights::Integer { x, y });
    }
    let parse = |name: &str, v: &str| {
        v.parse::<f64>()
            .ok()
            .filter(|f| f.is_finite())
            .ok_or_else(|| usage(format!("--{name} {v:?} is not a finite number")))
    };
    Ok(Weights::Real {
        x: parse("x", x)?,
        y: parse("y", y)?,
    })
}

fn make_pool(threads: Option<usize>) -> CliResult<ThreadPool> {
    if threads == Some(0) {
        return Err(usage("--threads must be at least 1"));
    }
    parallel::pool(threads).map_err(usage)
}

/// Runs one parsed command line, writing its report to `out`.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> CliResult<()> {
    let pool = make_pool(cli.threads)?;
    let mut r = Report { out };
    let seed = cli.seed;
    match &cli.command {
        Command::TraceEst {
            source,
            circuit,
            shots,
        } => {
            let (state, u) = load_circuit(source, circuit, seed)?;
            if *shots == 0 {
                return Err(usage("--shots must be at least 1"));
            }
            if state.config().trace_prefactor().norm() < 1e-14 {
                return Err(usage(
                    "alpha sin(2 theta) vanishes, so the clean qubit carries no trace information",
                ));
            }
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            describe_unitary(&mut r, &u)?;
            let exact = exact_trace_expectations(&state)?;
            let x = parallel::sample_shots(&pool, &state, Basis::X, *shots, seed)?;
            let y = parallel::sample_shots(&pool, &state, Basis::Y, *shots, seed.wrapping_add(1))?;
            let est = implied_trace_from_shots(&state, &x, &y)?;
            r.complex("direct_trace", u.matrix.trace() / u.matrix.rows() as f64)?;
            r.float("exact_x", exact.x)?;
            r.float("exact_y", exact.y)?;
            r.complex("exact_trace", exact.implied_trace)?;
            r.line("shots", shots)?;
            r.line("seed", seed)?;
            r.float("mean_x", x.mean)?;
            r.float("stderr_x", x.stderr)?;
            r.float("mean_y", y.mean)?;
            r.float("stderr_y", y.stderr)?;
            r.complex("estimate", est.value)?;
            r.float("estimate_stderr", est.stderr)
        }
        Command::Discord {
            split,
            theta_steps,
            phi_steps,
        } => {
            let (rho, split) = load_split(split)?;
            let measured = match split.measured {
                Side::A => split.d_a,
                Side::B => split.d_b,
            };
            if measured != 2 {
                return Err(usage(format!(
                    "the measured side must be a qubit, found dimension {measured}"
                )));
            }
            if *theta_steps < 2 || *phi_steps < 3 {
                return Err(usage(
                    "--theta-steps must be at least 2 and --phi-steps at least 3",
                ));
            }
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            let opts = DiscordOptions {
                theta_steps: *theta_steps,
                phi_steps: *phi_steps,
                ..DiscordOptions::default()
            };
            let rep = parallel::discord(&pool, &rho, split, &opts)?;
            r.float("mutual_information", rep.mutual_information)?;
            r.float("classical_correlations", rep.classical_correlations)?;
            r.float("discord", rep.discord)?;
            r.float("optimal_theta", rep.optimal_angles.0)?;
            r.float("optimal_phi", rep.optimal_angles.1)?;
            r.line("converged", rep.converged)
        }
        Command::DiscordScan {
            source,
            circuit,
            grid,
            out,
        } => {
            let (state, u) = load_circuit(source, circuit, seed)?;
            if *grid < 16 {
                return Err(usage(format!("--grid must be at least 16, got {grid}")));
            }
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            let rep = parallel::discord_scan_xy(&pool, &state, *grid)?;
            describe_unitary(&mut r, &u)?;
            r.float("mutual_information", rep.mutual_information)?;
            r.float("discord", rep.discord)?;
            r.float("optimal_phi", rep.optimal_angles.1)?;
            if let Some(g) = rep.sphere_grid_discord {
                r.float("sphere_grid_discord", g)?;
            }
            if let Some(path) = out {
                let rows: Vec<Vec<f64>> = rep.scan_curve.iter().map(|&(p, d)| vec![p, d]).collect();
                write_output(path, &formats::write_csv(&["phi", "I_minus_J"], &rows))?;
                r.line("csv", path.display())?;
            }
            Ok(())
        }
        Command::ClassicalTest { split, out } => {
            let (rho, split) = load_split(split)?;
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            let witness = is_classical_on(&rho, split, split.measured)?;
            r.line("classical", witness.is_some())?;
            if let (Some(w), Some(path)) = (&witness, out) {
                write_output(path, &formats::write_cmat(w))?;
                r.line("witness", path.display())?;
            }
            Ok(())
        }
        Command::ConcordantTest { state, out } => {
            let rho = formats::read_dmat(state)?;
            if let Some(d) = rho.dims().iter().find(|&&d| d != 2) {
                return Err(usage(format!(
                    "concordance needs qubit subsystems, found dimension {d}"
                )));
            }
            if rho.dims().len() > dqc1_core::discord::CONCORDANCE_MAX_QUBITS {
                return Err(usage(format!(
                    "concordance is limited to {} qubits",
                    dqc1_core::discord::CONCORDANCE_MAX_QUBITS
                )));
            }
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            let locals = is_concordant(&rho)?;
            r.line("concordant", locals.is_some())?;
            if let (Some(l), Some(path)) = (&locals, out) {
                write_output(path, &formats::write_cmat(&product_basis(l)))?;
                r.line("witness", path.display())?;
            }
            Ok(())
        }
        Command::Qswe(QsweCommand::Eval { a, b, x, y }) => {
            let (a, b) = (formats::read_gf2(a)?, formats::read_gf2(b)?);
            let inst = QsweInstance::new(a, b, parse_weights(x, y)?).map_err(usage)?;
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            let res = parallel::qswe_eval(&pool, &inst)?;
            match &res.value {
                QsweValue::Integer(v) => r.line("value", v)?,
                QsweValue::Real {
                    value,
                    rounding_bound,
                } => {
                    r.float("value", *value)?;
                    r.float("rounding_bound", *rounding_bound)?;
                }
            }
            r.line("nullity", res.nullity)?;
            r.line("terms_enumerated", res.terms_enumerated)
        }
        Command::Qswe(QsweCommand::Sign { a, variant, k, l }) => {
            let a = formats::read_gf2(a)?;
            let variant = match variant {
                VariantArg::Bqp => SignVariant::Bqp,
                VariantArg::Dqc1 => SignVariant::Dqc1,
            };
            // Validation only; enumeration happens below.
            dqc1_core::qswe::sign_instance(variant, &a).map_err(usage)?;
            if *k <= 0 || *l <= 0 {
                return Err(usage(format!(
                    "--k and --l must be positive, got {k} and {l}"
                )));
            }
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            let outcome = parallel::sign_problem(&pool, variant, &a, *k, *l)?;
            r.line("sign", outcome.sign)?;
            r.line("value", &outcome.value)?;
            r.line("promise_satisfied", outcome.promise_satisfied)?;
            r.line("nullity", outcome.nullity)
        }
        Command::Braid(BraidCommand::Unitary {
            word,
            k,
            embed,
            out,
        }) => {
            let word: BraidWord = word.parse().map_err(usage)?;
            let basis = dqc1_core::braid::PathBasis::new(word.strands(), *k).map_err(usage)?;
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            let u = braid_unitary(&word, *k)?;
            r.line("word", &word)?;
            r.line("root_order", k)?;
            r.line("path_dim", basis.dim())?;
            r.complex("path_trace", u.trace())?;
            let matrix = if *embed {
                let e = embed_in_qubits(&u)?;
                r.line("qubits", e.qubits)?;
                r.line("padding_dim", e.padding_dim)?;
                r.complex("embedded_trace", e.embedded_trace)?;
                e.unitary
            } else {
                u
            };
            r.float("unitarity_residual", matrix.unitarity_residual())?;
            if let Some(path) = out {
                write_output(path, &formats::write_cmat(&matrix))?;
                r.line("matrix", path.display())?;
            }
            Ok(())
        }
        Command::BsideExpect {
            source,
            circuit,
            observable,
        } => {
            let (state, u) = load_circuit(source, circuit, seed)?;
            let m = formats::read_cmat(observable)?;
            if m.rows() != state.register_dim() {
                return Err(usage(format!(
                    "observable dimension {} does not match the register dimension {}",
                    m.rows(),
                    state.register_dim()
                )));
            }
            if !m.is_hermitian(dqc1_core::STATE_TOL) {
                return Err(usage("observable is not Hermitian"));
            }
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            describe_unitary(&mut r, &u)?;
            r.float("expectation", b_side_expectation(&state, &m)?)?;
            r.float("normalized_trace", m.trace().re / m.rows() as f64)
        }
        Command::SeparableDecomp {
            source,
            circuit,
            out,
        } => {
            let (state, u) = load_circuit(source, circuit, seed)?;
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            let ens = separable_decomposition(&state)?;
            describe_unitary(&mut r, &u)?;
            for (key, v) in [
                ("a", ens.a),
                ("b", ens.b),
                ("c", ens.c),
                ("d", ens.d),
                ("psi", ens.psi),
            ] {
                r.float(key, v)?;
            }
            r.line("members", ens.members.len())?;
            r.float("constraint_residual", ens.constraint_residual(&state))?;
            let residual = (&ens.reconstruct() - state.dense().matrix()).frobenius_norm();
            r.float("reconstruction_residual", residual)?;
            if let Some(path) = out {
                let rows: Vec<Vec<f64>> = ens
                    .members
                    .iter()
                    .map(|m| {
                        let [s0, s1] = m.clean_state;
                        vec![m.weight, m.eigen_index as f64, s0.re, s0.im, s1.re, s1.im]
                    })
                    .collect();
                let header = [
                    "weight",
                    "eigen_index",
                    "clean0_re",
                    "clean0_im",
                    "clean1_re",
                    "clean1_im",
                ];
                write_output(path, &formats::write_csv(&header, &rows))?;
                r.line("csv", path.display())?;
            }
            Ok(())
        }
        Command::Catalan { n } => {
            if cli.dry_run {
                return r.line("dry_run", "ok");
            }
            let (c, couplings) = catalan_counts(*n);
            r.line("n", n)?;
            r.line("catalan", c)?;
            r.line("coupling_interactions", couplings)
        }
    }
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
