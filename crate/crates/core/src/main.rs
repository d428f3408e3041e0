//! Command-line driver: coefficient tables, truncated areas, cardioid
//! sweeps, pixel-counting areas, near-parabolic reports, long-iterate
//! evaluation, and the double Mandelbrot set.
//!
//! Exit codes: 0 on success, 2 on invalid arguments or domain errors,
//! 3 when a resource budget refusal occurs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use gronwall::area_oracle::{classification_grid, write_pgm, RegionSpec};
use gronwall::bottcher::{self, compute_coefficients_with, Engine};
use gronwall::experiments::{
    cache_dir_from_env, format_float, lavaurs_approx, load_or_compute, parabolic_discrepancy,
    render_double_mandelbrot, sweep_cardioid, write_sweep_csv, ParabolicConfig, SweepConfig,
    DEFAULT_COEFFICIENT_BUDGET,
};
use gronwall::gronwall::truncated_area;
use gronwall::{Error, Result};

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got `{s}`"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("bad real part: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

#[derive(Parser)]
#[command(name = "gronwall", version, about = "Area of quadratic Julia sets via Laurent coefficients of the inverse Böttcher map")]
struct Cli {
    /// Worker threads for grid and sweep parallelism (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct EngineOpt {
    /// Use the FFT doubling engine instead of the reference recursion.
    #[arg(long)]
    fast: bool,
}

impl EngineOpt {
    fn engine(&self) -> Engine {
        if self.fast {
            Engine::Fast
        } else {
            Engine::Naive
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute (or load) the coefficient table for one parameter.
    Coeffs {
        /// Parameter of z² + c as RE,IM.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        c: Complex64,
        /// Truncation order N ≥ 1.
        #[arg(long)]
        n: usize,
        /// Also write the table as a binary cache file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineOpt,
    },
    /// Evaluate the truncated area formula A(λ, r, N).
    Area {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        c: Complex64,
        /// Evaluation radius, ≥ 1.
        #[arg(long)]
        r: f64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        engine: EngineOpt,
    },
    /// Sweep the truncated area along the main cardioid, CSV output.
    Sweep {
        #[arg(long)]
        t0: f64,
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        steps: usize,
        /// Truncation levels, comma-separated, ascending.
        #[arg(long, value_delimiter = ',', default_values_t = gronwall::experiments::DEFAULT_LEVELS)]
        levels: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long)]
        out: PathBuf,
        /// Lift the coefficient budget (an estimate of the naive-path cost
        /// is printed first).
        #[arg(long)]
        allow_large: bool,
        #[command(flatten)]
        engine: EngineOpt,
    },
    /// Pixel-counting interval area of a planar region.
    PixelArea {
        #[arg(long, value_enum)]
        region: RegionKind,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        /// Green level for --region green.
        #[arg(long)]
        g: Option<f64>,
        /// Iterate count for --region iter.
        #[arg(long)]
        p: Option<u32>,
        /// Escape radius for --region iter.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        resolution: u32,
        #[arg(long)]
        max_iter: u32,
        /// Dump the classification grid as a PGM file.
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
    /// Near-parabolic discrepancy report (JSON).
    Parabolic {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        gamma: f64,
        /// Escape radius for the iterate sublevel area.
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        out: PathBuf,
        /// Grid ceiling for the refined area estimates.
        #[arg(long, default_value_t = 2048)]
        resolution: u32,
        #[arg(long, default_value_t = 2000)]
        max_iter: u32,
        #[command(flatten)]
        engine: EngineOpt,
    },
    /// Long-iterate (Lavaurs) approximation f_λ^{∘m}(z), λ = e^{2iπ/(m+τ)}.
    Lavaurs {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        tau: f64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Render the double Mandelbrot set as a PGM image.
    DoubleMandelbrot {
        #[arg(long)]
        resolution: u32,
        #[arg(long)]
        max_iter: u32,
        #[arg(long)]
        pgm: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionKind {
    Julia,
    Green,
    Iter,
}

fn region_from_args(
    kind: RegionKind,
    lambda: Complex64,
    g: Option<f64>,
    p: Option<u32>,
    radius: Option<f64>,
) -> Result<RegionSpec> {
    match kind {
        RegionKind::Julia => Ok(RegionSpec::FilledJulia { lambda }),
        RegionKind::Green => {
            let g = g.ok_or_else(|| Error::InvalidArgument("--region green needs --g".into()))?;
            Ok(RegionSpec::GreenSublevel { lambda, g })
        }
        RegionKind::Iter => {
            let p = p.ok_or_else(|| Error::InvalidArgument("--region iter needs --p".into()))?;
            let radius = radius
                .ok_or_else(|| Error::InvalidArgument("--region iter needs --radius".into()))?;
            Ok(RegionSpec::IterateSublevel { lambda, p, r_escape: radius })
        }
    }
}

/// Measured quadratic extrapolation of the naive-path cost for one row.
fn print_large_run_estimate(max_level: usize, rows: usize) {
    let probe = 8192.min(max_level);
    let start = Instant::now();
    let _ = compute_coefficients_with(Complex64::new(-0.75, 0.0), probe, Engine::Naive);
    let dt = start.elapsed().as_secs_f64();
    let per_row = dt * (max_level as f64 / probe as f64).powi(2);
    eprintln!(
        "large sweep: naive coefficient work ≈ {:.1} s per row × {rows} rows \
         (single-core estimate; rows run in parallel, --fast reduces this to seconds)",
        per_row
    );
}

fn run(command: Command) -> Result<()> {
    let cache = cache_dir_from_env();
    match command {
        Command::Coeffs { c, n, out, engine } => {
            let table = load_or_compute(c, n, engine.engine(), cache.as_deref())?;
            if let Some(path) = &out {
                bottcher::write_table(&table, path)?;
            }
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            writeln!(w, "# c = {},{}", format_float(c.re), format_float(c.im))?;
            writeln!(w, "# n = {}", table.order())?;
            writeln!(w, "# residual = {}", format_float(table.residual_metric()))?;
            writeln!(w, "k,re,im")?;
            for k in 1..=table.order() {
                let b = table.coefficient(k);
                writeln!(w, "{k},{},{}", format_float(b.re), format_float(b.im))?;
            }
            w.flush()?;
            Ok(())
        }
        Command::Area { c, r, n, engine } => {
            let table = load_or_compute(c, n, engine.engine(), cache.as_deref())?;
            let area = truncated_area(&table, r, n)?;
            println!("A = {}", format_float(area.value));
            Ok(())
        }
        Command::Sweep { t0, t1, steps, levels, r, out, allow_large, engine } => {
            let budget = if allow_large { usize::MAX } else { DEFAULT_COEFFICIENT_BUDGET };
            let max_level = levels.iter().copied().max().unwrap_or(0);
            if allow_large && max_level > DEFAULT_COEFFICIENT_BUDGET && !engine.fast {
                print_large_run_estimate(max_level, steps);
            }
            let cfg = SweepConfig {
                t_start: t0,
                t_end: t1,
                steps,
                levels,
                r,
                budget,
                engine: engine.engine(),
                cache_dir: cache,
            };
            let records = sweep_cardioid(&cfg)?;
            let mut w = BufWriter::new(File::create(&out)?);
            write_sweep_csv(&records, &mut w)?;
            w.flush()?;
            println!("wrote {} rows to {}", records.len(), out.display());
            Ok(())
        }
        Command::PixelArea { region, lambda, g, p, radius, resolution, max_iter, pgm } => {
            let target = region_from_args(region, lambda, g, p, radius)?;
            let grid = classification_grid(&target, resolution, max_iter)?;
            if let Some(path) = &pgm {
                let mut w = BufWriter::new(File::create(path)?);
                write_pgm(&grid, &mut w)?;
                w.flush()?;
            }
            let est = grid.area_estimate();
            println!("value = {}", format_float(est.value));
            println!("lower = {}", format_float(est.lower));
            println!("upper = {}", format_float(est.upper));
            println!("undecided = {}", format_float(est.undecided_area));
            println!("resolution = {}", est.resolution);
            Ok(())
        }
        Command::Parabolic { m, tau, gamma, radius, out, resolution, max_iter, engine } => {
            let mut cfg = ParabolicConfig::new(m, tau, gamma, radius);
            cfg.engine = engine.engine();
            cfg.cache_dir = cache;
            cfg.max_resolution = resolution;
            cfg.grid_max_iter = max_iter;
            let report = parabolic_discrepancy(&cfg)?;
            let mut w = BufWriter::new(File::create(&out)?);
            serde_json::to_writer_pretty(&mut w, &report)
                .map_err(|e| Error::InvalidArgument(format!("report serialization failed: {e}")))?;
            w.write_all(b"\n")?;
            w.flush()?;
            println!("N = {}{}", report.n, if report.n_capped { " (capped)" } else { "" });
            println!("A_1N = {}", format_float(report.a_unit_n));
            println!("measured_gap = {}", format_float(report.measured_gap));
            println!("report written to {}", out.display());
            Ok(())
        }
        Command::Lavaurs { m, tau, z } => {
            let image = lavaurs_approx(m, tau, z)?;
            println!("{} {}", format_float(image.re), format_float(image.im));
            Ok(())
        }
        Command::DoubleMandelbrot { resolution, max_iter, pgm } => {
            let grid = render_double_mandelbrot(resolution, max_iter)?;
            let mut w = BufWriter::new(File::create(&pgm)?);
            grid.write_pgm(&mut w)?;
            w.flush()?;
            println!("wrote {}x{} PGM to {}", grid.width, grid.height, pgm.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: could not configure {threads} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
