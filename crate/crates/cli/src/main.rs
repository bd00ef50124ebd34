use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sharp_atan::bounds::{envelope_max, EvaluationSample};
use sharp_atan::certification::{
    certify_range_with, find_max_relative_error_with, verify_series, BoundPair, SCAN_POINTS,
};
use sharp_atan::{BoundKind, Grid, Oracle, SeriesTarget, ShaferCoefficients, Side};

mod bench;
mod plot;
mod sweep;

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "sharp-atan",
    version,
    about = "Sharp Shafer-type bounds for arctan: evaluation, sweeps and certification"
)]
struct Cli {
    /// Decimal digits carried by the high-precision reference.
    #[arg(long, global = true, default_value_t = sharp_atan::oracle::DEFAULT_DIGITS)]
    oracle_digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print both bounds, arctan, differences, relative errors and envelopes at x.
    #[command(allow_negative_numbers = true)]
    Eval { x: f64 },

    /// Write one CSV row per grid point (x, f, g, h, r_f, r_h, env_max, env_min).
    #[command(allow_negative_numbers = true)]
    Sweep {
        lo: f64,
        hi: f64,
        n: usize,
        #[arg(long, value_enum, default_value_t = GridArg::Uniform)]
        grid: GridArg,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG figure. Without a path it goes next to --out.
        #[arg(long, num_args = 0..=1, value_name = "PATH")]
        plot: Option<Option<PathBuf>>,
    },

    /// Check f <= arctan <= h and the envelope sandwich on a grid against
    /// the high-precision reference. Exit status 1 on any violation.
    #[command(allow_negative_numbers = true)]
    Certify {
        lo: f64,
        hi: f64,
        n: usize,
        /// Log for positive ranges, mixed otherwise.
        #[arg(long, value_enum)]
        grid: Option<GridArg>,
        /// Scale one coefficient: WHICH:COMPONENT:EPS multiplies component
        /// 1-3 of the lower or upper triple by (1 + EPS).
        #[arg(long, value_parser = parse_perturbation, allow_hyphen_values = true)]
        perturb: Vec<Perturbation>,
        /// Also write the report as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Locate the largest relative error of one bound.
    Maxerr {
        #[arg(value_enum)]
        kind: SideArg,
        #[arg(long, default_value_t = SCAN_POINTS)]
        scan_points: usize,
    },

    /// Measure expansion coefficients numerically and compare with the
    /// closed forms. Exit status 1 if any coefficient is off.
    SeriesCheck {
        #[arg(value_enum)]
        target: TargetArg,
    },

    /// Time the bounds, the midpoint kernel and the platform arctan.
    Bench {
        #[arg(default_value_t = 10_000_000)]
        n: usize,
        #[arg(default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Log,
    Uniform,
    Mixed,
}

impl From<GridArg> for Grid {
    fn from(g: GridArg) -> Self {
        match g {
            GridArg::Log => Grid::LogUniform,
            GridArg::Uniform => Grid::Uniform,
            GridArg::Mixed => Grid::Mixed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Lower,
    Upper,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Lower => Side::Lower,
            SideArg::Upper => Side::Upper,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Lower,
    Upper,
    Arctan,
}

impl From<TargetArg> for SeriesTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Lower => SeriesTarget::Bound(BoundKind::SharpLower),
            TargetArg::Upper => SeriesTarget::Bound(BoundKind::SharpUpper),
            TargetArg::Arctan => SeriesTarget::Reference,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Perturbation {
    side: Side,
    component: usize,
    epsilon: f64,
}

fn parse_perturbation(s: &str) -> Result<Perturbation, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [which, component, epsilon] = parts[..] else {
        return Err(format!("expected WHICH:COMPONENT:EPS, got `{s}`"));
    };
    let side = match which {
        "lower" => Side::Lower,
        "upper" => Side::Upper,
        other => return Err(format!("WHICH must be `lower` or `upper`, got `{other}`")),
    };
    let component: usize = component
        .parse()
        .ok()
        .filter(|c| (1..=3).contains(c))
        .ok_or_else(|| format!("COMPONENT must be 1, 2 or 3, got `{component}`"))?;
    let epsilon: f64 = epsilon
        .parse()
        .ok()
        .filter(|e: &f64| e.is_finite() && *e > -1.0)
        .ok_or_else(|| format!("EPS must be a finite number above -1, got `{epsilon}`"))?;
    Ok(Perturbation {
        side,
        component,
        epsilon,
    })
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] sharp_atan::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{0}")]
    Usage(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(CliError::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

/// `Ok(false)` means the command ran but a check failed.
fn run(cli: Cli) -> Result<bool, CliError> {
    let oracle = || {
        if cli.oracle_digits == sharp_atan::oracle::DEFAULT_DIGITS {
            Oracle::shared().clone()
        } else {
            Oracle::new(cli.oracle_digits)
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let to_stdout = |e: io::Error| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    };

    match cli.command {
        Command::Eval { x } => {
            if x.is_nan() {
                return Err(CliError::Usage("x must not be NaN".into()));
            }
            let s = EvaluationSample::platform(x);
            write_eval(&mut out, &s).map_err(to_stdout)?;
            Ok(true)
        }
        Command::Sweep {
            lo,
            hi,
            n,
            grid,
            out: path,
            plot,
        } => {
            let grid = Grid::from(grid);
            let rows = sweep::sweep(&oracle(), lo, hi, n, grid)?;
            match &path {
                Some(p) => {
                    let file = File::create(p).map_err(io_err(p))?;
                    sweep::write_csv(BufWriter::new(file), &rows).map_err(|source| {
                        CliError::Csv {
                            path: p.clone(),
                            source,
                        }
                    })?;
                }
                None => sweep::write_csv(&mut out, &rows).map_err(|source| CliError::Csv {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?,
            }
            if let Some(plot_path) = plot {
                let plot_path = match (plot_path, &path) {
                    (Some(p), _) => p,
                    (None, Some(csv)) => csv.with_extension("svg"),
                    (None, None) => {
                        return Err(CliError::Usage("--plot without a path needs --out".into()))
                    }
                };
                let svg = plot::render(&rows, grid == Grid::LogUniform);
                std::fs::write(&plot_path, svg).map_err(io_err(&plot_path))?;
            }
            Ok(true)
        }
        Command::Certify {
            lo,
            hi,
            n,
            grid,
            perturb,
            out: path,
        } => {
            let pair = perturbed_pair(&perturb)?;
            let grid = grid.map(Grid::from).unwrap_or_else(|| Grid::auto(lo));
            let report = certify_range_with(&oracle(), lo, hi, n, grid, &pair)?;
            if !perturb.is_empty() {
                let [a1, a2, a3] = pair.lower.as_array();
                let [b1, b2, b3] = pair.upper.as_array();
                writeln!(out, "lower_triple: ({a1:?}, {a2:?}, {a3:?})").map_err(to_stdout)?;
                writeln!(out, "upper_triple: ({b1:?}, {b2:?}, {b3:?})").map_err(to_stdout)?;
            }
            writeln!(out, "{report}").map_err(to_stdout)?;
            if let Some(p) = &path {
                let file = File::create(p).map_err(io_err(p))?;
                report
                    .write_csv(BufWriter::new(file))
                    .map_err(|source| CliError::Csv {
                        path: p.clone(),
                        source,
                    })?;
            }
            Ok(report.passed)
        }
        Command::Maxerr { kind, scan_points } => {
            let side = Side::from(kind);
            let m = find_max_relative_error_with(&oracle(), side, scan_points);
            let env = envelope_max(m.x_star);
            writeln!(out, "side: {}", side_name(side)).map_err(to_stdout)?;
            writeln!(out, "x_star: {:?}", m.x_star).map_err(to_stdout)?;
            writeln!(out, "r_star: {:?}", m.r_star).map_err(to_stdout)?;
            writeln!(out, "envelope_max: {:?}", env).map_err(to_stdout)?;
            Ok(true)
        }
        Command::SeriesCheck { target } => {
            let check = verify_series(&oracle(), SeriesTarget::from(target))?;
            writeln!(out, "target: {}", check.target).map_err(to_stdout)?;
            writeln!(
                out,
                "{:<8} {:>24} {:>24} {:>12}",
                "term", "expected", "measured", "rel_gap"
            )
            .map_err(to_stdout)?;
            for row in &check.rows {
                writeln!(
                    out,
                    "{:<8} {:>24.16e} {:>24.16e} {:>12.3e}",
                    row.label, row.expected, row.measured, row.relative_gap
                )
                .map_err(to_stdout)?;
            }
            writeln!(
                out,
                "status: {}",
                if check.passed { "PASS" } else { "FAIL" }
            )
            .map_err(to_stdout)?;
            Ok(check.passed)
        }
        Command::Bench { n, seed } => {
            if n == 0 {
                return Err(CliError::Usage("n must be at least 1".into()));
            }
            let rows = bench::run(n, seed);
            bench::print(&mut out, n, seed, &rows).map_err(to_stdout)?;
            Ok(true)
        }
    }
}

fn perturbed_pair(perturb: &[Perturbation]) -> Result<BoundPair, CliError> {
    let mut pair = BoundPair::default();
    for p in perturb {
        let slot: &mut ShaferCoefficients = match p.side {
            Side::Lower => &mut pair.lower,
            Side::Upper => &mut pair.upper,
        };
        *slot = slot.with_scaled_component(p.component, 1.0 + p.epsilon)?;
    }
    Ok(pair)
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Lower => "lower",
        Side::Upper => "upper",
    }
}

fn write_eval(out: &mut impl Write, s: &EvaluationSample) -> io::Result<()> {
    let fields = [
        ("x", s.x),
        ("f", s.f_val),
        ("g", s.g_val),
        ("h", s.h_val),
        ("delta_f", s.delta_f),
        ("delta_h", s.delta_h),
        ("r_f", s.r_f),
        ("r_h", s.r_h),
        ("env_max", s.env_max),
        ("env_min", s.env_min),
    ];
    for (name, value) in fields {
        writeln!(out, "{name}: {value:?}")?;
    }
    Ok(())
}
