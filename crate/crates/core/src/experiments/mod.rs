//! Experiment drivers: persistence, sweeps, near-parabolic reports, and
//! the double Mandelbrot set. This is the layer the CLI wraps.

mod cache;
mod double_mandelbrot;
mod parabolic;
mod sweep;

pub use cache::{cache_dir_from_env, cache_file_name, load_or_compute, CACHE_DIR_ENV};
pub use double_mandelbrot::{render_double_mandelbrot, LambdaGrid, LAMBDA_IM_RANGE, LAMBDA_RE_RANGE};
pub use parabolic::{lavaurs_approx, parabolic_discrepancy, DiscrepancyReport, ParabolicConfig};
pub use sweep::{
    sweep_cardioid, write_sweep_csv, SweepConfig, SweepRecord, DEFAULT_COEFFICIENT_BUDGET,
    DEFAULT_LEVELS,
};

/// Fixed float formatting for all text outputs: 17 significant digits,
/// `.` decimal separator, byte-stable across runs.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}
