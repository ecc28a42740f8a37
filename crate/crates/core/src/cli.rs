//! Command-line front end. Exit codes: 0 success with a definite class,
//! 2 degenerate or unrecognized, 3 no singularity, 64 bad input, 70 solver
//! failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::catalog;
use crate::conslaw::{analyze_point, first_singularity, lips_birth_frames, ConsLawProblem, FirstSingularitySearch};
use crate::export::{curves_to_csv, curves_to_svg, to_json};
use crate::germ::{classify, PlaneMapGerm, SingularityClass};
use crate::locus::{critical_value_image, find_special_points, ruling_polymap, sample_singular_set, BoxDomain};
use crate::map::{PlaneMap, PolyMap};
use crate::parse::{parse_curve, parse_map, parse_reals};
use crate::tolerance::ToleranceConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_NO_SINGULARITY: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_SOFTWARE: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "planesing", version, about = "Singularities of plane-to-plane maps and characteristic surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a map germ at a point.
    Classify(CommonArgs),
    /// Trace the singular set and its image over a box.
    Trace(CommonArgs),
    /// Locate and classify the first singularity of a conservation law.
    Conslaw(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Built-in map or problem name (`ruling` takes `--curve`).
    #[arg(long)]
    builtin: Option<String>,
    /// Inline map such as "(u, v^3+u^2*v)".
    #[arg(long, allow_hyphen_values = true)]
    map: Option<String>,
    /// JSON file: a pair of PolySpecs, or a conservation-law problem.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Curve "x(t), y(t)" for the tangential ruling map.
    #[arg(long, allow_hyphen_values = true)]
    curve: Option<String>,
    /// Base point "u1,u2" (a single value t0 for ruling maps).
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
    /// Time for a forced-point conservation-law analysis.
    #[arg(long, allow_hyphen_values = true)]
    time: Option<f64>,
    /// Frame times "t1,t2,..." for the lips-birth sequence.
    #[arg(long, allow_hyphen_values = true)]
    frames: Option<String>,
    /// Box "lo1,lo2,hi1,hi2".
    #[arg(long = "box", allow_hyphen_values = true)]
    domain: Option<String>,
    /// Grid nodes "n1,n2".
    #[arg(long)]
    grid: Option<String>,
    #[arg(long = "tol-zero")]
    tol_zero: Option<f64>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Output formats, a subset of json,csv,svg.
    #[arg(long, default_value = "json,csv")]
    format: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Classify,
    Trace,
    Conslaw,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    Builtin(String),
    Ruling(String),
    Map(String),
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Formats {
    pub json: bool,
    pub csv: bool,
    pub svg: bool,
}

/// A validated command line.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: InputSource,
    pub at: Option<Vec<f64>>,
    pub time: Option<f64>,
    pub frames: Vec<f64>,
    pub domain: BoxDomain,
    pub tolerances: ToleranceConfig,
    pub output_dir: PathBuf,
    pub formats: Formats,
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        Self::usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

const DEFAULT_GRID: usize = 64;

fn parse_formats(src: &str) -> CliResult<Formats> {
    let mut f = Formats::default();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part {
            "json" => f.json = true,
            "csv" => f.csv = true,
            "svg" => f.svg = true,
            other => return Err(CliError::usage(format!("unknown format '{other}'"))),
        }
    }
    Ok(f)
}

fn build_config(command: CommandKind, a: CommonArgs) -> CliResult<RunConfig> {
    let input = match (a.builtin, a.map, a.input) {
        (Some(b), None, None) if b == "ruling" => {
            let curve = a.curve.clone().ok_or_else(|| CliError::usage("--builtin ruling needs --curve"))?;
            InputSource::Ruling(curve)
        }
        (Some(b), None, None) => InputSource::Builtin(b),
        (None, Some(m), None) => InputSource::Map(m),
        (None, None, Some(p)) => InputSource::File(p),
        (None, None, None) if a.curve.is_some() => InputSource::Ruling(a.curve.clone().unwrap_or_default()),
        _ => return Err(CliError::usage("give exactly one of --builtin, --map, --input")),
    };
    let at = a.at.as_deref().map(parse_reals).transpose()?;
    let frames = a.frames.as_deref().map(parse_reals).transpose()?.unwrap_or_default();
    let (lo, hi) = match a.domain.as_deref() {
        Some(s) => match parse_reals(s)?.as_slice() {
            &[a0, a1, b0, b1] => ([a0, a1], [b0, b1]),
            _ => return Err(CliError::usage("--box needs lo1,lo2,hi1,hi2")),
        },
        None => ([-1.0, -1.0], [1.0, 1.0]),
    };
    let grid = match a.grid.as_deref() {
        Some(s) => {
            let g = parse_reals(s)?;
            match g.as_slice() {
                &[n1, n2] if n1.fract() == 0.0 && n2.fract() == 0.0 && n1 >= 0.0 && n2 >= 0.0 => {
                    [n1 as usize, n2 as usize]
                }
                _ => return Err(CliError::usage("--grid needs two integers n1,n2")),
            }
        }
        None => [DEFAULT_GRID, DEFAULT_GRID],
    };
    let domain = BoxDomain::new(lo, hi, grid)?;
    let mut tolerances = ToleranceConfig::default();
    if let Some(z) = a.tol_zero {
        tolerances.zero_rel = z;
    }
    tolerances.validate()?;
    Ok(RunConfig {
        command,
        input,
        at,
        time: a.time,
        frames,
        domain,
        tolerances,
        output_dir: a.out,
        formats: parse_formats(&a.format)?,
    })
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (kind, args) = match cli.command {
        Command::Classify(a) => (CommandKind::Classify, a),
        Command::Trace(a) => (CommandKind::Trace, a),
        Command::Conslaw(a) => (CommandKind::Conslaw, a),
    };
    let result = build_config(kind, args).and_then(|config| match config.command {
        CommandKind::Classify => run_classify(&config),
        CommandKind::Trace => run_trace(&config),
        CommandKind::Conslaw => run_conslaw(&config),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("planesing: {}", e.message);
            e.code
        }
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<()> {
    fs::create_dir_all(dir)
        .and_then(|_| fs::write(dir.join(name), contents))
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", dir.join(name).display())))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> CliResult<()> {
    write_file(dir, name, &to_json(value))
}

fn load_map(config: &RunConfig) -> CliResult<PolyMap> {
    match &config.input {
        InputSource::Builtin(name) => {
            catalog::normal_form(name).ok_or_else(|| CliError::usage(format!("unknown builtin map '{name}'")))
        }
        InputSource::Ruling(curve) => Ok(ruling_polymap(&parse_curve(curve)?)?),
        InputSource::Map(src) => Ok(PolyMap::new(parse_map(src)?)?),
        InputSource::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
        }
    }
}

fn base_point(config: &RunConfig) -> CliResult<[f64; 2]> {
    match (&config.input, config.at.as_deref()) {
        (_, None) => Ok([0.0, 0.0]),
        (InputSource::Ruling(_), Some(&[t0])) => Ok([t0, 0.0]),
        (_, Some(&[a, b])) => Ok([a, b]),
        _ => Err(CliError::usage("--at needs u1,u2 (or t0 for ruling maps)")),
    }
}

fn class_exit(class: SingularityClass) -> i32 {
    if class.is_definite() {
        EXIT_OK
    } else {
        EXIT_DEGENERATE
    }
}

pub fn run_classify(config: &RunConfig) -> CliResult<i32> {
    let map = load_map(config)?;
    let at = base_point(config)?;
    if let InputSource::Ruling(curve) = &config.input {
        // Surface the regularity check.
        crate::locus::ruling_map(&parse_curve(curve)?, at[0])?;
    }
    let germ: PlaneMapGerm = map.germ_at(at);
    let report = classify(&germ, &config.tolerances);
    write_json(&config.output_dir, "report.json", &report)?;
    println!("{}", report.class);
    Ok(class_exit(report.class))
}

#[derive(Serialize)]
struct TraceSummary<'a> {
    domain: &'a BoxDomain,
    curves: usize,
    special_points: &'a [crate::locus::SpecialPoint],
}

pub fn run_trace(config: &RunConfig) -> CliResult<i32> {
    let map = load_map(config)?;
    let tol = &config.tolerances;
    let curves = sample_singular_set(&map, &config.domain, tol);
    let images = critical_value_image(&map, &curves);
    let points = find_special_points(&map, &config.domain, tol);
    let dir = &config.output_dir;
    if config.formats.csv {
        write_file(dir, "singular_set.csv", &curves_to_csv(&curves, None))?;
        write_file(dir, "critical_values.csv", &curves_to_csv(&curves, Some(&images)))?;
    }
    write_json(
        dir,
        "special_points.json",
        &TraceSummary { domain: &config.domain, curves: curves.len(), special_points: &points },
    )?;
    if config.formats.json {
        write_json(dir, "singular_set.json", &curves)?;
    }
    if config.formats.svg {
        let locs: Vec<[f64; 2]> = points.iter().map(|p| p.location).collect();
        let vals: Vec<[f64; 2]> = locs.iter().map(|&u| map.eval(u)).collect();
        write_file(dir, "singular_set.svg", &curves_to_svg(&curves, &locs, "singular set"))?;
        write_file(dir, "critical_values.svg", &curves_to_svg(&images, &vals, "critical values"))?;
    }
    println!("{} curve(s), {} special point(s)", curves.len(), points.len());
    for p in &points {
        println!("  {:?} at ({}, {}): {}", p.kind, p.location[0], p.location[1], p.report.class);
    }
    let all_definite = points.iter().all(|p| p.report.class.is_definite());
    Ok(if all_definite { EXIT_OK } else { EXIT_DEGENERATE })
}

fn load_problem(config: &RunConfig) -> CliResult<ConsLawProblem> {
    match &config.input {
        InputSource::Builtin(name) => {
            catalog::problem(name).ok_or_else(|| CliError::usage(format!("unknown builtin problem '{name}'")))
        }
        InputSource::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
        }
        _ => Err(CliError::usage("conslaw needs --builtin or --input")),
    }
}

pub fn run_conslaw(config: &RunConfig) -> CliResult<i32> {
    let prob = load_problem(config)?;
    let tol = &config.tolerances;
    let dir = &config.output_dir;

    if let (Some(at), Some(t)) = (config.at.as_deref(), config.time) {
        let &[a, b] = at else {
            return Err(CliError::usage("--at needs u1,u2"));
        };
        let analysis = analyze_point(&prob, [a, b], t, tol);
        write_json(dir, "point_analysis.json", &analysis)?;
        println!("{}", analysis.report.class);
        return Ok(class_exit(analysis.report.class));
    }
    if config.at.is_some() || config.time.is_some() {
        return Err(CliError::usage("forced-point mode needs both --at and --time"));
    }

    let search = first_singularity(&prob, &config.domain, tol);
    write_json(dir, "first_singularity.json", &search)?;
    let code = match &search {
        FirstSingularitySearch::Found(fs) => {
            println!(
                "first singularity at ({}, {}), t* = {}, Ξ₃ = {}: {}",
                fs.u_star[0], fs.u_star[1], fs.t_star, fs.xi.xi3, fs.report.class
            );
            if fs.report.class == SingularityClass::Lips {
                EXIT_OK
            } else {
                EXIT_DEGENERATE
            }
        }
        FirstSingularitySearch::NoSingularity => {
            println!("no singularity: trace C ≥ 0 throughout the box");
            EXIT_NO_SINGULARITY
        }
        FirstSingularitySearch::BoundaryMinimum { best_grid_point, best_grid_time } => {
            println!("minimal time {best_grid_time} reached on the boundary at {best_grid_point:?}");
            EXIT_DEGENERATE
        }
        FirstSingularitySearch::SolverFailed { best_grid_point, best_grid_time } => {
            eprintln!(
                "planesing: Newton failed from every seed; best grid point {best_grid_point:?}, t = {best_grid_time}"
            );
            EXIT_SOFTWARE
        }
    };

    if !config.frames.is_empty() {
        let frames = lips_birth_frames(&prob, &config.frames, &config.domain, tol);
        if config.formats.json {
            write_json(dir, "frames.json", &frames)?;
        }
        for (k, f) in frames.iter().enumerate() {
            if config.formats.csv {
                write_file(dir, &format!("frame_{k}.csv"), &curves_to_csv(&f.curves, Some(&f.images)))?;
            }
            if config.formats.svg {
                let locs: Vec<[f64; 2]> = f.special_points.iter().map(|p| p.location).collect();
                write_file(dir, &format!("frame_{k}.svg"), &curves_to_svg(&f.curves, &locs, &format!("t = {}", f.t)))?;
            }
        }
    }
    Ok(code)
}
