//! The `lgi` command-line front end.
//!
//! Every command writes deterministic CSV (and optionally SVG) files. Sweep
//! and compare rows use the header `theta,c12,c23,c13,k,engine`.

mod args;
pub mod format;
pub mod svg;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use args::Cli;

use crate::ensemble::{ensemble_report, ThermalParams};
use crate::macrorealist::{coin_demo, enumerate_k, TelegraphModel};
use crate::protocols::{grid_inclusive, invasiveness_demo, k_statistic, CorrelatorSet, Engine, ProtocolConfig};
use crate::sampling::sample_correlators;
use format::{fmt_g17, record};
use svg::{line_chart, Series};

pub const SWEEP_HEADER: &str = "theta,c12,c23,c13,k,engine";
pub const INVASIVENESS_HEADER: &str =
    "theta,input,free_x,free_y,free_z,coupled_x,coupled_y,coupled_z,dx,dy,dz";
pub const COIN_HEADER: &str =
    "step,face_before,operation,face_after,observer_heads,observer_tails";
pub const ENSEMBLE_HEADER: &str = "quantity,value";

/// Environment variable naming the directory relative output paths resolve against.
pub const OUTPUT_DIR_ENV: &str = "LGI_OUTPUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Sweep,
    Invasiveness,
    Coin,
    Ensemble,
    Compare,
}

impl Command {
    fn default_stem(self) -> &'static str {
        match self {
            Command::Sweep => "sweep",
            Command::Invasiveness => "invasiveness",
            Command::Coin => "coin",
            Command::Ensemble => "ensemble",
            Command::Compare => "compare",
        }
    }
}

/// Sweep engine; `Classical` is the non-invasive telegraph model with flip
/// probability sin²θ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineChoice {
    Quantum(Engine),
    Classical,
}

impl EngineChoice {
    pub fn name(self) -> &'static str {
        match self {
            EngineChoice::Quantum(e) => e.name(),
            EngineChoice::Classical => "classical",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
    Both,
}

impl OutputFormat {
    fn csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    fn svg(self) -> bool {
        matches!(self, OutputFormat::Svg | OutputFormat::Both)
    }
}

/// A fully resolved command invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    /// Radians.
    pub theta_min: f64,
    /// Radians.
    pub theta_max: f64,
    pub points: usize,
    pub engine: EngineChoice,
    /// Output path; the extension is replaced per format.
    pub output_path: PathBuf,
    pub format: OutputFormat,
    /// Seed for shot sampling.
    pub seed: Option<u64>,
    /// Enables shot sampling with this many runs per correlator.
    pub shots: Option<u64>,
    pub steps: usize,
    pub thermal: ThermalParams,
}

impl RunSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            theta_min: 0.0,
            theta_max: std::f64::consts::TAU,
            points: 1000,
            engine: EngineChoice::Quantum(Engine::Separate),
            output_path: PathBuf::from(command.default_stem()),
            format: OutputFormat::Csv,
            seed: None,
            shots: None,
            steps: 10,
            thermal: ThermalParams::default(),
        }
    }

    fn grid(&self) -> Result<Vec<f64>, CliError> {
        if self.theta_min.partial_cmp(&self.theta_max) != Some(std::cmp::Ordering::Less) {
            return Err(CliError::Usage(format!(
                "theta-min ({}) must be less than theta-max ({})",
                self.theta_min, self.theta_max
            )));
        }
        if self.points < 2 {
            return Err(CliError::Usage("--points must be at least 2".into()));
        }
        Ok(grid_inclusive(self.theta_min, self.theta_max, self.points)?)
    }

    fn path_with(&self, ext: &str) -> PathBuf {
        self.output_path.with_extension(ext)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// 2 for invalid flags, 3 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Files written by a run plus a human-readable summary.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub lines: Vec<String>,
}

pub fn run(spec: &RunSpec) -> Result<RunSummary, CliError> {
    match spec.command {
        Command::Sweep => run_sweep(spec),
        Command::Compare => run_compare(spec),
        Command::Invasiveness => run_invasiveness(spec),
        Command::Coin => run_coin(spec),
        Command::Ensemble => run_ensemble(spec),
    }
}

fn correlators_for(theta: f64, engine: EngineChoice) -> Result<CorrelatorSet, CliError> {
    Ok(match engine {
        EngineChoice::Quantum(e) => k_statistic(&ProtocolConfig::new(theta), e)?,
        EngineChoice::Classical => enumerate_k(&TelegraphModel::from_rotation_angle(theta))?,
    })
}

fn sweep_rows(
    spec: &RunSpec,
    grid: &[f64],
    engines: &[EngineChoice],
) -> Result<Vec<(f64, CorrelatorSet, EngineChoice)>, CliError> {
    let mut rng = spec
        .shots
        .map(|_| ChaCha8Rng::seed_from_u64(spec.seed.unwrap_or(0)));
    let mut rows = Vec::with_capacity(grid.len() * engines.len());
    for &theta in grid {
        for &engine in engines {
            let mut c = correlators_for(theta, engine)?;
            if let (Some(shots), Some(rng)) = (spec.shots, rng.as_mut()) {
                c = sample_correlators(&c, shots, rng)?;
            }
            rows.push((theta, c, engine));
        }
    }
    Ok(rows)
}

fn sweep_csv(rows: &[(f64, CorrelatorSet, EngineChoice)]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for (theta, c, engine) in rows {
        out.push_str(&record([
            fmt_g17(*theta),
            fmt_g17(c.c12()),
            fmt_g17(c.c23()),
            fmt_g17(c.c13()),
            fmt_g17(c.k()),
            engine.name().to_owned(),
        ]));
    }
    out
}

fn sweep_svg(rows: &[(f64, CorrelatorSet, EngineChoice)], engines: &[EngineChoice]) -> String {
    let series: Vec<Series<'_>> = engines
        .iter()
        .map(|e| Series {
            name: e.name(),
            points: rows
                .iter()
                .filter(|r| r.2 == *e)
                .map(|(t, c, _)| (*t, c.k()))
                .collect(),
        })
        .collect();
    line_chart(
        "K(theta)",
        "theta (rad)",
        "K = C12 + C23 - C13",
        &series,
        Some((1.0, "K = 1")),
    )
}

fn max_k_line(rows: &[(f64, CorrelatorSet, EngineChoice)], engine: EngineChoice) -> Option<String> {
    rows.iter()
        .filter(|r| r.2 == engine)
        .max_by(|a, b| a.1.k().total_cmp(&b.1.k()))
        .map(|(t, c, _)| format!("{}: max K = {} at theta = {}", engine.name(), fmt_g17(c.k()), fmt_g17(*t)))
}

fn write_sweep_outputs(
    spec: &RunSpec,
    rows: &[(f64, CorrelatorSet, EngineChoice)],
    engines: &[EngineChoice],
) -> Result<RunSummary, CliError> {
    let mut summary = RunSummary::default();
    if spec.format.csv() {
        summary.files.push(write_file(&spec.path_with("csv"), &sweep_csv(rows))?);
    }
    if spec.format.svg() {
        summary.files.push(write_file(&spec.path_with("svg"), &sweep_svg(rows, engines))?);
    }
    summary.lines = engines.iter().filter_map(|e| max_k_line(rows, *e)).collect();
    Ok(summary)
}

fn run_sweep(spec: &RunSpec) -> Result<RunSummary, CliError> {
    let grid = spec.grid()?;
    let engines = [spec.engine];
    let rows = sweep_rows(spec, &grid, &engines)?;
    write_sweep_outputs(spec, &rows, &engines)
}

fn run_compare(spec: &RunSpec) -> Result<RunSummary, CliError> {
    let grid = spec.grid()?;
    let engines = [
        EngineChoice::Quantum(Engine::Separate),
        EngineChoice::Quantum(Engine::Simultaneous),
    ];
    let rows = sweep_rows(spec, &grid, &engines)?;
    write_sweep_outputs(spec, &rows, &engines)
}

fn run_invasiveness(spec: &RunSpec) -> Result<RunSummary, CliError> {
    let grid = spec.grid()?;
    let mut csv = format!("{INVASIVENESS_HEADER}\n");
    let mut dy: [Vec<(f64, f64)>; 3] = Default::default();
    let mut max_shift = 0.0f64;
    for &theta in &grid {
        let demo = invasiveness_demo(theta)?;
        for (i, r) in demo.reports().into_iter().enumerate() {
            let mut fields = vec![fmt_g17(theta), r.input_label.clone()];
            fields.extend(r.bloch_before.iter().map(|&v| fmt_g17(v)));
            fields.extend(r.bloch_after.iter().map(|&v| fmt_g17(v)));
            fields.extend(r.displacement.iter().map(|&v| fmt_g17(v)));
            csv.push_str(&record(fields));
            dy[i].push((theta, r.displacement[1]));
            if i == 0 {
                let norm = r.displacement.iter().map(|v| v * v).sum::<f64>().sqrt();
                max_shift = max_shift.max(norm);
            }
        }
    }
    let mut summary = RunSummary::default();
    if spec.format.csv() {
        summary.files.push(write_file(&spec.path_with("csv"), &csv)?);
    }
    if spec.format.svg() {
        let names = ["|0>", "|1>", "I/2"];
        let series: Vec<Series<'_>> = names
            .iter()
            .zip(dy)
            .map(|(name, points)| Series { name, points })
            .collect();
        let svg = line_chart(
            "Back-action on the system Bloch vector",
            "theta (rad)",
            "y displacement",
            &series,
            Some((0.0, "0")),
        );
        summary.files.push(write_file(&spec.path_with("svg"), &svg)?);
    }
    summary
        .lines
        .push(format!("largest |0> displacement = {}", fmt_g17(max_shift)));
    Ok(summary)
}

fn run_coin(spec: &RunSpec) -> Result<RunSummary, CliError> {
    if spec.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let mut csv = format!("{COIN_HEADER}\n");
    for (i, step) in coin_demo(spec.steps)?.iter().enumerate() {
        csv.push_str(&record([
            (i + 1).to_string(),
            step.before.face.value().to_string(),
            step.operation.to_owned(),
            step.after.face.value().to_string(),
            fmt_g17(step.after.observer_distribution[0]),
            fmt_g17(step.after.observer_distribution[1]),
        ]));
    }
    Ok(RunSummary {
        files: vec![write_file(&spec.path_with("csv"), &csv)?],
        lines: vec![format!("{} flips; observer distribution stays (0.5, 0.5)", spec.steps)],
    })
}

fn run_ensemble(spec: &RunSpec) -> Result<RunSummary, CliError> {
    let r = ensemble_report(&spec.thermal)?;
    let mut csv = format!("{ENSEMBLE_HEADER}\n");
    let rows = [
        ("magnetic_moment_j_per_t", fmt_g17(r.params.magnetic_moment())),
        ("field_t", fmt_g17(r.params.field())),
        ("temperature_k", fmt_g17(r.params.temperature())),
        ("energy_ratio", fmt_g17(r.params.energy_ratio())),
        ("alpha", fmt_g17(r.alpha)),
        ("epsilon", fmt_g17(r.epsilon)),
        ("quoted_epsilon_bound", fmt_g17(r.quoted_bound)),
        ("quoted_bound_reproduced", r.quoted_bound_reproduced.to_string()),
        ("sigma_z_signal", fmt_g17(r.sigma_z_signal)),
        ("identity_component_signal", fmt_g17(r.identity_signal)),
    ];
    for (k, v) in &rows {
        csv.push_str(&record([*k, v.as_str()]));
    }
    let mut lines = vec![
        format!(
            "mu = {} J/T, B = {} T, T = {} K",
            fmt_g17(r.params.magnetic_moment()),
            fmt_g17(r.params.field()),
            fmt_g17(r.params.temperature())
        ),
        format!("epsilon = (1 - alpha)/(1 + alpha) = {:.6e}", r.epsilon),
        format!("identity component signal = {}", fmt_g17(r.identity_signal)),
    ];
    if r.quoted_bound_reproduced {
        lines.push(format!("epsilon is below the quoted bound {:e}", r.quoted_bound));
    } else {
        lines.push(format!(
            "note: epsilon = {:.3e} is NOT below the quoted bound {:e} at these parameters",
            r.epsilon, r.quoted_bound
        ));
    }
    Ok(RunSummary {
        files: vec![write_file(&spec.path_with("csv"), &csv)?],
        lines,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<PathBuf, CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io_err)?;
    }
    fs::write(path, contents).map_err(io_err)?;
    Ok(path.to_path_buf())
}
