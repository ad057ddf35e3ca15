//! Command-line front end (`dppbk`).
//!
//! Exit status: 0 when every check passes, 1 when at least one check fails,
//! 2 for usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cs::{compute_cs, verify_prop1_probabilities};
use crate::dpp::{OrthonormalFrame, ProjectionDpp, ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::fuzz::{fuzz, FuzzConfig, RNG_NAME};
use crate::pointset::PointSet;
use crate::report::CheckReport;
use crate::suites::{run_exhaustive, Selection, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "dppbk", version, about = "Projection DPPs, CS decomposition and BK-inequality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw exact samples from the DPP of a frame; one sorted 1-based set per line.
    Sample {
        frame: PathBuf,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// CS decomposition against the coordinate subspace of --points, with the
    /// angle/probability report.
    Cs {
        frame: PathBuf,
        #[arg(long, value_parser = parse_points)]
        points: Points,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Run verification suites on a frame file or on seeded random frames.
    Verify {
        /// Frame JSON; omit together with --random.
        frame: Option<PathBuf>,
        #[arg(long, conflicts_with = "frame")]
        random: bool,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Largest ground set for random frames and for exhaustive sweeps.
        #[arg(long, default_value_t = 7)]
        max_points: usize,
        /// Override every report's tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, value_parser = parse_points)]
        points: Option<Points>,
        #[arg(long, value_parser = parse_points)]
        points_b: Option<Points>,
        #[arg(long)]
        x0: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Write a seeded Gaussian random frame as JSON.
    RandomFrame {
        #[arg(long)]
        n_points: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Settings shared by the verification commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub max_points: usize,
    pub output_format: OutputFormat,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return Err(Error::InvalidArgument(format!("tolerance must be positive, got {t}")));
            }
        }
        if !(2..=ENUMERATION_CAP).contains(&self.max_points) {
            return Err(Error::InvalidArgument(format!(
                "max-points must lie in 2..={ENUMERATION_CAP}, got {}",
                self.max_points
            )));
        }
        Ok(())
    }
}

/// Comma-separated 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Points(Vec<usize>);

fn parse_points(s: &str) -> std::result::Result<Points, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(0) => Err("points are 1-based".to_string()),
            Ok(v) => Ok(v),
            Err(e) => Err(format!("bad point {t:?}: {e}")),
        })
        .collect::<std::result::Result<_, _>>()
        .map(Points)
}

fn to_zero_based(points: &[usize], n: usize) -> Result<Vec<usize>> {
    points
        .iter()
        .map(|&x| {
            if x == 0 || x > n {
                Err(Error::PointOutOfRange { point: x, n_points: n })
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

fn load_frame(path: &Path) -> Result<OrthonormalFrame> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    OrthonormalFrame::from_json(&text)
}

struct Emitter<'a, W: Write> {
    out: &'a mut W,
    format: OutputFormat,
    tolerance: Option<f64>,
    checks: usize,
    failures: usize,
}

impl<'a, W: Write> Emitter<'a, W> {
    fn new(out: &'a mut W, format: OutputFormat, tolerance: Option<f64>) -> std::io::Result<Self> {
        if format == OutputFormat::Table {
            writeln!(out, "{}", CheckReport::table_header())?;
        }
        Ok(Emitter {
            out,
            format,
            tolerance,
            checks: 0,
            failures: 0,
        })
    }

    fn emit(&mut self, mut report: CheckReport) -> std::io::Result<()> {
        if let Some(t) = self.tolerance {
            report.tolerance = t;
            report.pass = report.slack >= -t;
        }
        self.checks += 1;
        self.failures += usize::from(!report.pass);
        match self.format {
            OutputFormat::Json => writeln!(self.out, "{}", report.to_json()),
            OutputFormat::Table => writeln!(self.out, "{}", report.table_row()),
        }
    }

    fn summary<S: Serialize>(&mut self, extra: &S) -> std::io::Result<()> {
        #[derive(Serialize)]
        struct Summary<'s, S: Serialize> {
            checks: usize,
            failures: usize,
            #[serde(flatten)]
            extra: &'s S,
        }
        let line = serde_json::json!({
            "summary": Summary { checks: self.checks, failures: self.failures, extra }
        });
        match self.format {
            OutputFormat::Json => writeln!(self.out, "{line}"),
            OutputFormat::Table => writeln!(self.out, "# {}", line["summary"]),
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(if e.use_stderr() { &mut *err as &mut dyn Write } else { &mut *out }, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

fn dispatch(command: Command, out: &mut impl Write) -> Result<i32> {
    match command {
        Command::Sample { frame, count, seed } => {
            let dpp = ProjectionDpp::new(load_frame(&frame)?);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                writeln!(out, "{}", dpp.sample(&mut rng)).map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
        Command::Cs { frame, points, format } => {
            let frame = load_frame(&frame)?;
            let j = PointSet::from_one_based(&points.0, frame.n_points())?;
            let cs = compute_cs(frame.columns(), j)?;
            writeln!(out, "{}", cs.to_json()).map_err(io_err)?;
            let mut emitter = Emitter::new(out, format, None).map_err(io_err)?;
            for r in verify_prop1_probabilities(&frame, j)? {
                emitter.emit(r).map_err(io_err)?;
            }
            Ok(if emitter.failures == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Verify {
            frame,
            random,
            suite,
            seed,
            trials,
            max_points,
            tolerance,
            points,
            points_b,
            x0,
            format,
        } => {
            let cfg = RunConfig {
                seed,
                tolerance,
                max_points,
                output_format: format,
            };
            cfg.validate()?;
            let suites = Suite::parse_selection(&suite)?;
            match (frame, random) {
                (None, true) => verify_random(&cfg, &suites, trials, out),
                (Some(path), false) => {
                    let frame = load_frame(&path)?;
                    let n = frame.n_points();
                    let sel = Selection {
                        points: points.map(|p| to_zero_based(&p.0, n)).transpose()?,
                        points_b: points_b.map(|p| to_zero_based(&p.0, n)).transpose()?,
                        x0: x0.map(|x| to_zero_based(&[x], n).map(|v| v[0])).transpose()?,
                    };
                    verify_frame(&cfg, &suites, frame, &sel, out)
                }
                _ => Err(Error::InvalidArgument("give either a frame file or --random".into())),
            }
        }
        Command::RandomFrame { n_points, rank, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let frame = OrthonormalFrame::random(&mut rng, n_points, rank)?;
            writeln!(out, "{}", frame.to_json()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
    }
}

fn verify_random(cfg: &RunConfig, suites: &[Suite], trials: usize, out: &mut impl Write) -> Result<i32> {
    let summary = fuzz(&FuzzConfig {
        suites: suites.to_vec(),
        ..FuzzConfig::new(cfg.seed, trials, cfg.max_points)
    })?;
    let mut emitter = Emitter::new(out, cfg.output_format, cfg.tolerance).map_err(io_err)?;
    for r in &summary.reports {
        emitter.emit(r.clone()).map_err(io_err)?;
    }
    let failed = emitter.failures > 0 || !summary.errors.is_empty();
    emitter
        .summary(&serde_json::json!({
            "seed": summary.seed,
            "rng": RNG_NAME,
            "trials": summary.trials,
            "skipped": summary.skipped,
            "invalid_instances": summary.invalid_instances,
            "errors": summary.errors,
        }))
        .map_err(io_err)?;
    Ok(if failed { EXIT_CHECK_FAILED } else { EXIT_OK })
}

fn verify_frame(
    cfg: &RunConfig,
    suites: &[Suite],
    frame: OrthonormalFrame,
    sel: &Selection,
    out: &mut impl Write,
) -> Result<i32> {
    let n = frame.n_points();
    let pinned = sel.points.is_some() || sel.points_b.is_some() || sel.x0.is_some();
    if n > ENUMERATION_CAP {
        return Err(Error::EnumerationTooLarge(n));
    }
    if !pinned && n > cfg.max_points {
        return Err(Error::InvalidArgument(format!(
            "exhaustive sweep over N={n} exceeds --max-points {}; pass --points or raise the cap",
            cfg.max_points
        )));
    }
    let dpp = ProjectionDpp::new(frame);
    let mut emitter = Emitter::new(out, cfg.output_format, cfg.tolerance).map_err(io_err)?;
    let mut skipped = 0;
    for &suite in suites {
        let result = run_exhaustive(&dpp, suite, sel)?;
        skipped += result.skipped;
        for r in result.reports {
            emitter.emit(r).map_err(io_err)?;
        }
    }
    emitter
        .summary(&serde_json::json!({ "skipped": skipped }))
        .map_err(io_err)?;
    Ok(if emitter.failures == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}
