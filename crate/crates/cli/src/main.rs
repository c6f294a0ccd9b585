//! `conedr`: command-line front end for the planar cone projection toolkit.
//!
//! Exit codes: 0 on success, 1 on usage or parse errors, 2 when an
//! internal consistency check fails.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conedr::harness::{
    self, parse_axis, read_trace_csv, render_svg, run_example, sweep, trace, trace_to_json,
    write_sweep_csv, write_trace_csv, Grid,
};
use conedr::{certify, ConePair, Error, OperatorParams, PlanarCone, Vec2};

#[derive(Parser, Debug)]
#[command(
    name = "conedr",
    version,
    about = "Projection methods on planar convex cones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reproduce one of the six non-finite-convergence examples.
    Example(ExampleArgs),
    /// Print the finite-convergence certificate of a cone pair as JSON.
    Certify(CertifyArgs),
    /// Dump a trajectory as CSV or JSON.
    Trace(TraceArgs),
    /// Sweep a (lambda, mu, kappa) grid and write one CSV row per point.
    Sweep(SweepArgs),
    /// Render a trace CSV over its cones as SVG.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct Cones {
    /// First cone, e.g. `sector:0,0.75pi`.
    #[arg(long = "cone-a", value_parser = parse_cone)]
    cone_a: PlanarCone,
    /// Second cone, e.g. `halfplane:0.5pi`.
    #[arg(long = "cone-b", value_parser = parse_cone)]
    cone_b: PlanarCone,
}

impl Cones {
    fn pair(&self) -> ConePair {
        ConePair::new(self.cone_a, self.cone_b)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ExampleArgs {
    /// Example number, 1 to 6.
    #[arg(long)]
    id: u8,
    /// Override lambda (requires --mu and --kappa).
    #[arg(long, requires_all = ["mu", "kappa"])]
    lambda: Option<f64>,
    #[arg(long, requires_all = ["lambda", "kappa"])]
    mu: Option<f64>,
    #[arg(long, requires_all = ["lambda", "mu"])]
    kappa: Option<f64>,
    /// Starting point `x,y`; defaults to the example's own start.
    #[arg(long, value_parser = parse_start)]
    start: Option<Vec2>,
    #[arg(long = "max-iters", default_value_t = 50)]
    max_iters: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    cones: Cones,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[command(flatten)]
    cones: Cones,
    #[arg(long, default_value_t = 2.0)]
    lambda: f64,
    #[arg(long, default_value_t = 2.0)]
    mu: f64,
    #[arg(long, default_value_t = 0.5)]
    kappa: f64,
    #[arg(long, value_parser = parse_start, default_value = "1,1")]
    start: Vec2,
    #[arg(long = "max-iters", default_value_t = 100)]
    max_iters: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    cones: Cones,
    /// Lambda axis: comma list `0.5,1,2` or range `lo:hi:n`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    kappa: String,
    #[arg(long, value_parser = parse_start, default_value = "1,1")]
    start: Vec2,
    /// Step budget per grid point; defaults to max(1000, 2 x certified bound).
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// Trace CSV as written by `conedr trace --format csv`.
    #[arg(long)]
    trace: PathBuf,
    #[command(flatten)]
    cones: Cones,
    #[arg(long)]
    out: PathBuf,
}

fn parse_cone(text: &str) -> Result<PlanarCone, Error> {
    text.parse()
}

fn parse_start(text: &str) -> Result<Vec2, Error> {
    harness::parse_point(text)
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_example_cmd(args: &ExampleArgs) -> Result<(), Error> {
    let params = match (args.lambda, args.mu, args.kappa) {
        (Some(l), Some(m), Some(k)) => Some(OperatorParams::new(l, m, k)?),
        _ => None,
    };
    let report = run_example(args.id, args.max_iters, params, args.start)?;
    let mut out = output(args.out.as_ref())?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "iter,x,y,expected_x,expected_y,deviation")?;
            for (n, (x, e)) in report.iterates.iter().zip(&report.expected).enumerate() {
                writeln!(
                    out,
                    "{n},{:?},{:?},{:?},{:?},{:?}",
                    x.x,
                    x.y,
                    e.x,
                    e.y,
                    x.dist(*e)
                )?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Example(args) => run_example_cmd(&args),
        Command::Certify(args) => {
            let cert = certify(&args.cones.pair())?;
            let mut out = output(args.out.as_ref())?;
            writeln!(out, "{}", cert.to_json_string())?;
            out.flush()?;
            Ok(())
        }
        Command::Trace(args) => {
            let params = OperatorParams::new(args.lambda, args.mu, args.kappa)?;
            let rows = trace(&args.cones.pair(), &params, args.start, args.max_iters);
            let mut out = output(args.out.as_ref())?;
            match args.format {
                Format::Csv => write_trace_csv(&rows, &mut out)?,
                Format::Json => writeln!(out, "{}", trace_to_json(&rows))?,
            }
            out.flush()?;
            Ok(())
        }
        Command::Sweep(args) => {
            let grid = Grid {
                lambdas: parse_axis(&args.lambda)?,
                mus: parse_axis(&args.mu)?,
                kappas: parse_axis(&args.kappa)?,
            };
            let rows = sweep(&args.cones.pair(), &grid, args.start, args.budget)?;
            let out = output(args.out.as_ref())?;
            write_sweep_csv(&rows, out)
        }
        Command::Render(args) => {
            let rows = read_trace_csv(BufReader::new(File::open(&args.trace)?))?;
            let svg = render_svg(&rows, &args.cones.cone_a, &args.cones.cone_b)?;
            std::fs::write(&args.out, svg)?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 1 } else { 2 })
        }
    }
}
