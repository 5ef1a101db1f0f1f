//! The `ruledkit` command-line tool: surface analysis, Mannheim offsets with
//! closed-form adjudication, and OBJ export.

pub mod config;
pub mod error;
pub mod json;
pub mod mesh;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ruledkit::offset::DEFAULT_REPORT_TOL;
use ruledkit::surface::{dual_frame_residuals, DEFAULT_CLASSIFY_TOL};
use ruledkit::{
    classify, consistency_report, construct_offset, dual_apparatus, mannheim_parallelism_residual,
    offset_angle_profile,
};

pub use config::SurfaceConfig;
pub use error::{CliError, EXIT_DEGENERACY, EXIT_VALIDATION};

#[derive(Debug, Parser)]
#[command(name = "ruledkit", version, about = "Timelike ruled surfaces in Minkowski 3-space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame, invariants and dual apparatus of a surface.
    Analyze(AnalyzeArgs),
    /// Mannheim offset for the angle law θ = −s + c, θ* = ∫Δ + c*.
    Offset(OffsetArgs),
    /// Triangulated mesh of the surface or of its Mannheim offset.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Surface definition (JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Sample count; overrides the config and RULEDKIT_SAMPLES.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub output: PathBuf,
    /// Tolerance for the developable and cone flags.
    #[arg(long, default_value_t = DEFAULT_CLASSIFY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct OffsetArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Offset angle constant c.
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    /// Offset distance constant c*.
    #[arg(long, allow_hyphen_values = true)]
    pub cstar: f64,
    #[arg(long)]
    pub output: PathBuf,
    /// Also write the closed-form consistency report here.
    #[arg(long)]
    pub verify: Option<PathBuf>,
    /// Verdict tolerance of the consistency report.
    #[arg(long, default_value_t = DEFAULT_REPORT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeshFormat {
    Obj,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = MeshFormat::Obj)]
    pub format: MeshFormat,
    #[arg(long, allow_hyphen_values = true)]
    pub v_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub v_max: f64,
    #[arg(long)]
    pub v_samples: usize,
    #[arg(long)]
    pub output: PathBuf,
    /// Export the Mannheim offset instead of the surface itself.
    #[arg(long)]
    pub offset: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub cstar: Option<f64>,
}

fn read_config(path: &Path) -> Result<SurfaceConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    SurfaceConfig::from_json(&text)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn load(args: &InputArgs) -> Result<(SurfaceConfig, ruledkit::RuledSurfaceModel), CliError> {
    let cfg = read_config(&args.input)?;
    let n = cfg.resolve_samples(args.samples)?;
    let model = cfg.build(n)?;
    Ok((cfg, model))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(a) => analyze(&a),
        Command::Offset(a) => offset(&a),
        Command::Export(a) => export(&a),
    }
}

fn analyze(a: &AnalyzeArgs) -> Result<(), CliError> {
    let (cfg, m) = load(&a.input)?;
    let app = dual_apparatus(&m)?;
    let class = classify(&m, a.tol);
    let dual = dual_frame_residuals(&m, &app);
    write_file(&a.output, &report::analysis(&cfg.name, &m, &app, class, a.tol, &dual).render())
}

fn offset(a: &OffsetArgs) -> Result<(), CliError> {
    let (cfg, m) = load(&a.input)?;
    let spec = offset_angle_profile(&m, a.c, a.cstar)?;
    let off = construct_offset(&m, &spec)?;
    let residuals = off.mannheim_residuals(&m)?;
    let parallelism = mannheim_parallelism_residual(&m, &spec)?;
    let verification = match &a.verify {
        Some(path) => Some((path, consistency_report(&m, &spec, &off, a.tol)?)),
        None => None,
    };
    write_file(&a.output, &report::offset(&cfg.name, &spec, &off, &residuals, &parallelism).render())?;
    if let Some((path, r)) = verification {
        write_file(path, &report::consistency(&cfg.name, &r).render())?;
    }
    Ok(())
}

fn export(a: &ExportArgs) -> Result<(), CliError> {
    if !(a.v_min < a.v_max) || a.v_samples < 2 {
        // Checked again by the writer; failing early skips the build.
        return Err(CliError::Arguments(format!(
            "need v-min < v-max and v-samples >= 2, got [{}, {}] with {} samples",
            a.v_min, a.v_max, a.v_samples
        )));
    }
    let (cfg, m) = load(&a.input)?;
    let text = match (a.offset, a.c, a.cstar) {
        (false, _, _) => mesh::obj(&m, &cfg.name, a.v_min, a.v_max, a.v_samples)?,
        (true, Some(c), Some(cstar)) => {
            let spec = offset_angle_profile(&m, c, cstar)?;
            let off = construct_offset(&m, &spec)?;
            mesh::obj(&off.recovered, &format!("{} offset", cfg.name), a.v_min, a.v_max, a.v_samples)?
        }
        (true, _, _) => return Err(CliError::Arguments("--offset needs --c and --cstar".into())),
    };
    write_file(&a.output, &text)
}
