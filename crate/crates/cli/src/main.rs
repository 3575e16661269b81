use std::process::ExitCode;

use arcbool::boolean::{boolean, Method};
use arcbool::generate::{random_polygon, StarParams};
use arcbool::{Op, Tolerances};
use arcbool_cli::bench::{self, BenchConfig};
use arcbool_cli::format::{self, PolygonFile};
use arcbool_cli::{build_polygon, env_tolerances, read_file, render, write_file, CliError};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "arcbool", version, about = "Boolean operations on circular-arc polygons")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Intersect,
    Union,
    Difference,
}

impl From<OpArg> for Op {
    fn from(o: OpArg) -> Op {
        match o {
            OpArg::Intersect => Op::Intersection,
            OpArg::Union => Op::Union,
            OpArg::Difference => Op::Difference,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Intersect, unite or subtract two polygon files.
    Op {
        #[arg(value_enum)]
        op: OpArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        out: String,
        /// Point tolerance; overrides file headers and ARCBOOL_EPS.
        #[arg(long)]
        eps: Option<f64>,
        /// Reverse clockwise inputs instead of rejecting them.
        #[arg(long)]
        normalize: bool,
        #[arg(long, default_value = "re2l", value_parser = parse_method)]
        method: Method,
    },
    /// Write a seeded random polygon.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Fraction of edges that are arcs.
        #[arg(long, default_value_t = arcbool::generate::DEFAULT_ARC_FRACTION)]
        arcs: f64,
        #[arg(long)]
        out: String,
    },
    /// Draw polygon files as one SVG.
    Render {
        #[arg(required = true)]
        files: Vec<String>,
        #[arg(long)]
        out: String,
    },
    /// Time the methods on random pairs.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "5,10,20,30,40,50")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_value = "re2l,naive,standard", value_parser = parse_method)]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = arcbool::generate::DEFAULT_ARC_FRACTION)]
        arcs: f64,
        #[arg(long, value_enum, default_value = "intersect")]
        op: OpArg,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        /// Table destination; standard output when omitted.
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

/// Defaults, then file headers, then the environment, then `--eps`.
fn tolerances(files: &[&PolygonFile], eps: Option<f64>) -> Result<Tolerances, CliError> {
    let mut t = Tolerances::default();
    for f in files {
        t = f.tol.apply(t);
    }
    if std::env::var_os(arcbool_cli::EPS_ENV).is_some() {
        t.eps_pt = env_tolerances()?.eps_pt;
    }
    if let Some(e) = eps {
        t.eps_pt = e;
    }
    Ok(Tolerances::new(t.eps_pt, t.eps_rel, t.eps_param)?)
}

fn single(f: &PolygonFile, path: &str) -> Result<Vec<(arcbool::Point, arcbool::Tag)>, CliError> {
    match f.point_lists().as_slice() {
        [one] => Ok(one.clone()),
        other => Err(CliError::Usage(format!("{path}: expected one polygon, found {}", other.len()))),
    }
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Op { op, a, b, out, eps, normalize, method } => {
            let (fa, fb) = (read_file(&a)?, read_file(&b)?);
            let tol = tolerances(&[&fa, &fb], eps)?;
            let pa = build_polygon(&single(&fa, &a)?, &tol, normalize)?;
            let pb = build_polygon(&single(&fb, &b)?, &tol, normalize)?;
            let r = boolean(&pa, &pb, op.into(), method)?;
            write_file(&out, &format::write(&PolygonFile::from_result(&r)))
        }
        Cmd::Gen { n, seed, arcs, out } => {
            if !(0.0..=1.0).contains(&arcs) {
                return Err(CliError::Usage(format!("--arcs {arcs} is outside [0, 1]")));
            }
            let sp = StarParams { arc_fraction: arcs, ..StarParams::default() };
            let p = random_polygon(seed, n, &sp, &env_tolerances()?)?;
            write_file(&out, &format::write(&PolygonFile::from_polygons([&p])))
        }
        Cmd::Render { files, out } => {
            let parsed = files.iter().map(|f| read_file(f)).collect::<Result<Vec<_>, _>>()?;
            let tol = tolerances(&parsed.iter().collect::<Vec<_>>(), None)?;
            write_file(&out, &render::render(&parsed, &tol)?)
        }
        Cmd::Bench { sizes, trials, methods, seed, arcs, op, repeat, out } => {
            if trials == 0 || repeat == 0 || methods.is_empty() {
                return Err(CliError::Usage("--trials, --repeat and --methods must be non-empty".into()));
            }
            let cfg = BenchConfig { sizes, trials, methods, seed, arc_fraction: arcs, op: op.into(), repeat, tol: env_tolerances()? };
            let table = bench::to_table(&bench::run(&cfg)?);
            match out {
                Some(path) => write_file(&path, &table),
                None => {
                    print!("{table}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    // Bad arguments are input errors here; 2 is reserved for unsupported
    // geometry.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
