//! Truncated-area sweeps along the main cardioid.

use std::io::{self, Write};
use std::path::PathBuf;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bottcher::Engine;
use crate::error::{Error, Result};
use crate::gronwall::truncated_area;
use crate::params::cardioid_point;

use super::{cache::load_or_compute, format_float};

/// Largest truncation level accepted without an explicit opt-in.
pub const DEFAULT_COEFFICIENT_BUDGET: usize = 50_000;
/// Desk-scale truncation levels.
pub const DEFAULT_LEVELS: [usize; 4] = [1, 20, 200, 2000];

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
    /// Truncation levels, sorted ascending.
    pub levels: Vec<usize>,
    /// Evaluation radius, `≥ 1`.
    pub r: f64,
    /// Refusal threshold for the largest level.
    pub budget: usize,
    pub engine: Engine,
    pub cache_dir: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            t_start: 0.0,
            t_end: 0.5,
            steps: 65,
            levels: DEFAULT_LEVELS.to_vec(),
            r: 1.0,
            budget: DEFAULT_COEFFICIENT_BUDGET,
            engine: Engine::Naive,
            cache_dir: None,
        }
    }
}

/// One row of a sweep: the rotation number, both parameter coordinates,
/// and `A(λ, r, N)` per truncation level.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub t: f64,
    pub lambda: Complex64,
    pub c: Complex64,
    /// `(level, value)` pairs in the order of `SweepConfig::levels`.
    pub values: Vec<(usize, f64)>,
}

/// Computes one record per equispaced `t`, sharing a single coefficient
/// table at the largest level per row (cache-backed when configured).
/// Rows are computed in parallel and returned in input order.
pub fn sweep_cardioid(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    if !(cfg.t_start >= 0.0 && cfg.t_start < cfg.t_end && cfg.t_end <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "sweep range must satisfy 0 ≤ t0 < t1 ≤ 1, got [{}, {}]",
            cfg.t_start, cfg.t_end
        )));
    }
    if cfg.steps < 2 {
        return Err(Error::InvalidArgument("a sweep needs at least 2 steps".into()));
    }
    if cfg.levels.is_empty() || cfg.levels.windows(2).any(|w| w[0] >= w[1]) || cfg.levels[0] == 0 {
        return Err(Error::InvalidArgument(
            "levels must be positive towers sorted strictly ascending".into(),
        ));
    }
    if !cfg.r.is_finite() || cfg.r < 1.0 {
        return Err(Error::Domain(format!("sweep radius must be ≥ 1, got {}", cfg.r)));
    }
    let max_level = *cfg.levels.last().expect("levels nonempty");
    if max_level > cfg.budget {
        return Err(Error::BudgetExceeded(format!(
            "level {max_level} exceeds the coefficient budget {}; rerun with the large-level opt-in",
            cfg.budget
        )));
    }

    let span = cfg.t_end - cfg.t_start;
    let denom = (cfg.steps - 1) as f64;
    (0..cfg.steps)
        .into_par_iter()
        .map(|i| {
            let t = cfg.t_start + span * (i as f64) / denom;
            let point = cardioid_point(t);
            let table = load_or_compute(point.c, max_level, cfg.engine, cfg.cache_dir.as_deref())?;
            let mut values = Vec::with_capacity(cfg.levels.len());
            for &level in &cfg.levels {
                values.push((level, truncated_area(&table, cfg.r, level)?.value));
            }
            Ok(SweepRecord {
                t,
                lambda: point.lambda,
                c: point.c,
                values,
            })
        })
        .collect()
}

/// CSV schema: `t,re_lambda,im_lambda,re_c,im_c,A_N<L1>,A_N<L2>,...`,
/// one row per `t`, 17-significant-digit floats, LF line endings.
pub fn write_sweep_csv<W: Write>(records: &[SweepRecord], mut w: W) -> io::Result<()> {
    let Some(first) = records.first() else {
        return Ok(());
    };
    let mut header = String::from("t,re_lambda,im_lambda,re_c,im_c");
    for (level, _) in &first.values {
        header.push_str(&format!(",A_N{level}"));
    }
    w.write_all(header.as_bytes())?;
    w.write_all(b"\n")?;
    for rec in records {
        let mut line = format!(
            "{},{},{},{},{}",
            format_float(rec.t),
            format_float(rec.lambda.re),
            format_float(rec.lambda.im),
            format_float(rec.c.re),
            format_float(rec.c.im),
        );
        for &(_, v) in &rec.values {
            line.push(',');
            line.push_str(&format_float(v));
        }
        w.write_all(line.as_bytes())?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
