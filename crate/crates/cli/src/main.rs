use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use skindepth_core::{Axis, DielectricModel, Geometry};

mod commands;
mod grid;
mod table;

use grid::GridSpec;
use table::Table;

const EXIT_USAGE: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_PARTIAL: u8 = 3;

/// Nonlocal optical response of metals, surface impedances and Casimir forces.
#[derive(Parser)]
#[command(name = "skindepth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Longitudinal and transverse permittivities on an (Ω, K) grid
    Eps(Common),
    /// Surface impedances Z_s, Z_p on an (Ω, Q) grid
    Impedance(Common),
    /// Local and nonlocal absorptance at fixed incidence angle
    Absorptance(Common),
    /// Casimir pressure or force over a separation grid
    Force(Common),
    /// Nonlocal correction to the Casimir force over a separation grid
    Correction(Common),
    /// List the built-in material presets
    Presets(Output),
}

#[derive(Args, Clone)]
struct Output {
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Preset name or path to a key=value material file
    #[arg(long, default_value = "gold")]
    material: String,

    #[arg(long, value_enum, default_value_t = ModelArg::Boltzmann)]
    model: ModelArg,

    /// Fermi wave number ck_F/ω_p for the lindhard model
    #[arg(long)]
    kf: Option<f64>,

    #[arg(long, value_enum, default_value_t = AxisArg::Imag)]
    axis: AxisArg,

    /// Dimensionless frequencies Ω
    #[arg(long, default_value = "1e-5:1e-1:41:log")]
    omega_grid: GridSpec,

    /// Dimensionless tangential wave numbers Q
    #[arg(long, default_value = "1e-2:1e-1:2:log")]
    q_grid: GridSpec,

    /// Dimensionless total wave numbers K (eps only)
    #[arg(long, default_value = "1e-2:1:3:log")]
    k_grid: GridSpec,

    /// Separations in nm
    #[arg(long, default_value = "100:300:5:lin")]
    a_grid: GridSpec,

    /// Incidence angle in degrees
    #[arg(long, default_value_t = 0.0)]
    theta: f64,

    #[arg(long, value_enum, default_value_t = GeometryArg::Pp)]
    geometry: GeometryArg,

    /// Sphere radius in nm
    #[arg(long, default_value_t = 1e5)]
    radius_nm: f64,

    /// Relative quadrature tolerance
    #[arg(long)]
    tol: Option<f64>,

    #[arg(long = "override", value_enum, default_value_t = OverrideArg::None)]
    override_: OverrideArg,

    /// Worker threads; 0 uses every core
    #[arg(long, env = "SKINDEPTH_WORKERS", default_value_t = 0)]
    workers: usize,

    #[command(flatten)]
    output: Output,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum ModelArg {
    Local,
    Boltzmann,
    Lindhard,
}

impl ModelArg {
    fn resolve(self, kf: Option<f64>) -> Result<DielectricModel> {
        Ok(match self {
            ModelArg::Local => DielectricModel::Local,
            ModelArg::Boltzmann => DielectricModel::Boltzmann,
            ModelArg::Lindhard => match kf {
                Some(k) if k > 0.0 && k.is_finite() => DielectricModel::Lindhard { k_fermi: k },
                Some(k) => bail!("--kf {k} must be positive"),
                None => bail!("--model lindhard needs --kf"),
            },
        })
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum AxisArg {
    Real,
    Imag,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Axis {
        match a {
            AxisArg::Real => Axis::Real,
            AxisArg::Imag => Axis::Imaginary,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum GeometryArg {
    Pp,
    Sp,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum OverrideArg {
    None,
    PerfectConductor,
    LocalF,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

fn geometry(c: &Common) -> Result<Geometry> {
    match c.geometry {
        GeometryArg::Pp => Ok(Geometry::PlatePlate),
        GeometryArg::Sp if c.radius_nm > 0.0 && c.radius_nm.is_finite() => {
            Ok(Geometry::SpherePlate { radius_nm: c.radius_nm })
        }
        GeometryArg::Sp => bail!("--radius-nm {} must be positive", c.radius_nm),
    }
}

fn emit(table: &Table, out: &Output) -> Result<()> {
    match &out.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("--out: cannot create {}", path.display()))?;
            write(table, out.format, BufWriter::new(file))
        }
        None => write(table, out.format, io::stdout().lock()),
    }
}

fn write<W: io::Write>(table: &Table, format: Format, w: W) -> Result<()> {
    match format {
        Format::Csv => table.write_csv(w)?,
        Format::Json => table.write_json(w)?,
    }
    Ok(())
}

fn run_grid(c: &Common, f: impl FnOnce(&commands::RunContext) -> Result<Table> + Send) -> Result<Table> {
    let ctx = commands::RunContext::from_common(c)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.workers)
        .build()
        .context("--workers: cannot start worker pool")?;
    pool.install(|| f(&ctx))
}

fn run(cli: Cli) -> Result<(Table, Output)> {
    let table = match &cli.command {
        Command::Presets(out) => return Ok((commands::presets()?, out.clone())),
        Command::Eps(c) => run_grid(c, |ctx| commands::eps(ctx, &c.omega_grid.points(), &c.k_grid.points()))?,
        Command::Impedance(c) => {
            run_grid(c, |ctx| commands::impedance(ctx, &c.omega_grid.points(), &c.q_grid.points()))?
        }
        Command::Absorptance(c) => run_grid(c, |ctx| commands::absorptance(ctx, c.theta, &c.omega_grid.points()))?,
        Command::Force(c) => {
            let g = geometry(c)?;
            run_grid(c, |ctx| commands::force(ctx, g, &c.a_grid.points()))?
        }
        Command::Correction(c) => {
            let g = geometry(c)?;
            run_grid(c, |ctx| commands::correction(ctx, g, &c.a_grid.points()))?
        }
    };
    let out = match cli.command {
        Command::Eps(c) | Command::Impedance(c) | Command::Absorptance(c) | Command::Force(c) | Command::Correction(c) => {
            c.output
        }
        Command::Presets(out) => out,
    };
    Ok((table, out))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let unsupported = err
        .chain()
        .filter_map(|e| e.downcast_ref::<skindepth_core::Error>())
        .any(|e| e.is_unsupported());
    if unsupported {
        EXIT_UNSUPPORTED
    } else {
        EXIT_USAGE
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = run(cli).and_then(|(table, out)| emit(&table, &out).map(|_| table.unconverged));
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(n) => {
            eprintln!("warning: {n} row(s) did not converge and are flagged");
            ExitCode::from(EXIT_PARTIAL)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
