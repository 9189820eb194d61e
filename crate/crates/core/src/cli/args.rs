use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::{Command, EngineChoice, OutputFormat, RunSpec, OUTPUT_DIR_ENV};
use crate::ensemble::{ThermalParams, DEFAULT_FIELD_TESLA, DEFAULT_TEMPERATURE_KELVIN, PROTON_MAGNETIC_MOMENT};
use crate::protocols::Engine;

/// Leggett-Garg correlator simulator.
///
/// Qubit 0 is the most significant bit of every basis index. Angles are in
/// radians unless --degrees is given.
#[derive(Debug, Parser)]
#[command(name = "lgi", version)]
pub struct Cli {
    /// Directory that relative output paths are resolved against.
    #[arg(long, global = true, env = OUTPUT_DIR_ENV, default_value = ".")]
    output_dir: PathBuf,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// K(θ) for one engine over a θ grid.
    Sweep {
        #[arg(long, value_enum, default_value_t = EngineArg::Separate)]
        engine: EngineArg,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Replace exact correlators by finite-shot estimates.
        #[arg(long)]
        shots: Option<u64>,
        /// Seed for --shots.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Separate-run and single-run three-ancilla engines side by side.
    Compare {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Back-action of the ancilla interaction on |0>, |1> and I/2.
    Invasiveness {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Blindfolded coin-flipping record.
    Coin {
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Thermal polarization of a spin ensemble.
    Ensemble {
        /// Magnetic moment in J/T (default: proton).
        #[arg(long, default_value_t = PROTON_MAGNETIC_MOMENT)]
        moment: f64,
        /// Field in tesla.
        #[arg(long, default_value_t = DEFAULT_FIELD_TESLA)]
        field: f64,
        /// Temperature in kelvin.
        #[arg(long, default_value_t = DEFAULT_TEMPERATURE_KELVIN)]
        temperature: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta_min: f64,
    #[arg(long, default_value_t = std::f64::consts::TAU, allow_negative_numbers = true)]
    theta_max: f64,
    #[arg(long, default_value_t = 1000)]
    points: usize,
    /// Read --theta-min/--theta-max in degrees.
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file; its extension is replaced by .csv / .svg.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Separate,
    Simultaneous,
    Inrm,
    Classical,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Svg,
    Both,
}

impl From<EngineArg> for EngineChoice {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Separate => EngineChoice::Quantum(Engine::Separate),
            EngineArg::Simultaneous => EngineChoice::Quantum(Engine::Simultaneous),
            EngineArg::Inrm => EngineChoice::Quantum(Engine::Inrm),
            EngineArg::Classical => EngineChoice::Classical,
        }
    }
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Svg => OutputFormat::Svg,
            FormatArg::Both => OutputFormat::Both,
        }
    }
}

impl Cli {
    /// Resolves parsed flags into a [`RunSpec`]. Fails only on invalid
    /// physical parameters for `ensemble`.
    pub fn into_run_spec(self) -> crate::Result<RunSpec> {
        let dir = self.output_dir;
        let resolve = |spec: &mut RunSpec, output: Option<PathBuf>| {
            let file = output.unwrap_or_else(|| spec.output_path.clone());
            spec.output_path = dir.join(file);
        };
        let apply_grid = |spec: &mut RunSpec, g: GridArgs| {
            let scale = if g.degrees { std::f64::consts::PI / 180.0 } else { 1.0 };
            spec.theta_min = g.theta_min * scale;
            spec.theta_max = g.theta_max * scale;
            spec.points = g.points;
        };
        let spec = match self.command {
            Sub::Sweep {
                engine,
                grid,
                out,
                shots,
                seed,
            } => {
                let mut spec = RunSpec::new(Command::Sweep);
                apply_grid(&mut spec, grid);
                spec.engine = engine.into();
                spec.format = out.format.into();
                spec.shots = shots;
                spec.seed = seed;
                resolve(&mut spec, out.output);
                spec
            }
            Sub::Compare { grid, out } => {
                let mut spec = RunSpec::new(Command::Compare);
                apply_grid(&mut spec, grid);
                spec.format = out.format.into();
                resolve(&mut spec, out.output);
                spec
            }
            Sub::Invasiveness { grid, out } => {
                let mut spec = RunSpec::new(Command::Invasiveness);
                apply_grid(&mut spec, grid);
                spec.format = out.format.into();
                resolve(&mut spec, out.output);
                spec
            }
            Sub::Coin { steps, output } => {
                let mut spec = RunSpec::new(Command::Coin);
                spec.steps = steps;
                resolve(&mut spec, output);
                spec
            }
            Sub::Ensemble {
                moment,
                field,
                temperature,
                output,
            } => {
                let mut spec = RunSpec::new(Command::Ensemble);
                spec.thermal = ThermalParams::new(moment, field, temperature)?;
                resolve(&mut spec, output);
                spec
            }
        };
        Ok(spec)
    }
}
