mod commands;
mod table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use table::{check_row, write_csv, write_json, Report};

#[derive(Parser, Debug)]
#[command(
    name = "gup1d",
    version,
    about = "Bound states, scattering and Stark splittings under the λ-deformed momentum, checked against numerical oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Levels of the linear potential V = Fx with a wall at x = 0.
    Linear(LinearArgs),
    /// The single bound state of −Vδ(x).
    DeltaWell(DeltaArgs),
    /// Transmission through +Vδ(x) over an energy sweep.
    Barrier(BarrierArgs),
    /// Odd levels of the 1D Coulomb well −κ/|x|.
    Coulomb(CoulombArgs),
    /// Degenerate Stark splitting of Coulomb level n.
    Stark(StarkArgs),
    /// Run the built-in check suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Physics {
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// Deformation parameter λ (momentum units).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Slope F of the linear potential.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub slope: f64,
    /// Strength V of the delta well or barrier.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub strength: f64,
    /// Coulomb coupling κ.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub kappa: f64,
    /// Stark coupling eℰ.
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub field: f64,
}

impl Physics {
    pub fn params(&self) -> gup1d::PhysicalParams {
        gup1d::PhysicalParams {
            mass: self.mass,
            hbar: self.hbar,
            lambda: self.lambda,
            slope: self.slope,
            strength: self.strength,
            kappa: self.kappa,
            field: self.field,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps [default: number of processors].
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Levels {
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StencilArg {
    ThreePoint,
    FivePoint,
}

impl From<StencilArg> for gup1d::oracle::Stencil {
    fn from(s: StencilArg) -> Self {
        match s {
            StencilArg::ThreePoint => Self::ThreePoint,
            StencilArg::FivePoint => Self::FivePoint,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct GridOpts {
    /// Grid nodes, walls included.
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Half-width of the box (the full width for the linear potential).
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, value_enum)]
    pub stencil: Option<StencilArg>,
}

#[derive(Args, Debug)]
pub struct LinearArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// Levels [default: 1..=5].
    #[command(flatten)]
    pub levels: Levels,
    /// Grid [default: 3000 points on [0, 30], five-point].
    #[command(flatten)]
    pub grid: GridOpts,
    /// Emit K analytic wavefunction samples per level instead of the energy table.
    #[arg(long, value_name = "K")]
    pub psi_points: Option<usize>,
    /// Absolute bound on |E_analytic − E_oracle| [default: 1e-4].
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct DeltaArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// Grid [default: 4000 points on [−25, 25], three-point].
    #[command(flatten)]
    pub grid: GridOpts,
    /// Relative bound on the oracle energy error [default: 1e-3].
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct BarrierArgs {
    #[command(flatten)]
    pub physics: Physics,
    #[arg(long, default_value_t = 0.5)]
    pub e_min: f64,
    #[arg(long, default_value_t = 0.5)]
    pub e_max: f64,
    /// Number of evenly spaced energies in [e-min, e-max].
    #[arg(long, default_value_t = 1)]
    pub e_steps: usize,
    /// Width of the Gaussian that stands in for δ(x) in the transfer oracle.
    #[arg(long, default_value_t = 1e-3)]
    pub reg_width: f64,
    /// Absolute bound on |T_analytic − T_transfer| [default: 1e-3].
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct CoulombArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// Levels [default: 1..=3].
    #[command(flatten)]
    pub levels: Levels,
    /// Grid [default: 16000 points on [−60n, 60n] in units of ħ²/κm, five-point].
    #[command(flatten)]
    pub grid: GridOpts,
    /// Softening a in −κ/√(x² + a²).
    #[arg(long, default_value_t = gup1d::compare::COULOMB_SOFTENING)]
    pub softening: f64,
    /// Relative bound on the oracle energy error [default: 1e-3].
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    ClosedForm,
    Quadrature,
}

#[derive(Args, Debug)]
pub struct StarkArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// Levels [default: 1..=1].
    #[command(flatten)]
    pub levels: Levels,
    /// How the reported matrix elements are computed.
    #[arg(long, value_enum, default_value_t = MethodArg::ClosedForm)]
    pub method: MethodArg,
    /// Also report the splitting with unit-normalized states.
    #[arg(long)]
    pub normalized: bool,
    /// Relative bound on |h12 closed form − h12 quadrature| [default: 1e-9].
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    FlipLambdaSign,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only checks whose group equals, or whose name contains, this string
    /// (`airy` selects the special-function group).
    #[arg(long)]
    pub filter: Option<String>,
    /// Multiplier applied to every upper-bound tolerance [default: 1].
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Force sequential execution.
    #[arg(long)]
    pub sequential: bool,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
    #[command(flatten)]
    pub output: Output,
}

/// Why a run ended without a table.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
}

impl From<gup1d::Error> for Failure {
    fn from(e: gup1d::Error) -> Self {
        match e {
            gup1d::Error::InvalidParameter { .. }
            | gup1d::Error::InvalidGrid(_)
            | gup1d::Error::EigenRange { .. } => Failure::Usage(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn emit(report: &Report, output: &Output) -> io::Result<()> {
    let sink: Box<dyn Write> = match &output.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match output.format {
        Format::Json => write_json(report, sink),
        Format::Csv => {
            let rows = if report.command == "verify" {
                report.checks.iter().map(check_row).collect()
            } else {
                report.rows.clone()
            };
            write_csv(&rows, sink).map_err(io::Error::other)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (result, output) = match &cli.command {
        Command::Linear(a) => (commands::linear(a), &a.output),
        Command::DeltaWell(a) => (commands::delta_well(a), &a.output),
        Command::Barrier(a) => (commands::barrier(a), &a.output),
        Command::Coulomb(a) => (commands::coulomb(a), &a.output),
        Command::Stark(a) => (commands::stark(a), &a.output),
        Command::Verify(a) => (commands::verify(a), &a.output),
    };
    let report = match result {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&report, output) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    let failed = report.failures();
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("{} check(s) failed: {}", failed.len(), failed.join(", "));
        ExitCode::from(1)
    }
}
