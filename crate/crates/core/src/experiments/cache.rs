//! Coefficient cache directory handling.
//!
//! Cache files live in the directory named by `GRONWALL_CACHE_DIR` and are
//! keyed by the parameter: `c_<re>_<im>.coeff`, using shortest round-trip
//! float formatting. A stored table with more coefficients than requested
//! is reused by prefix truncation; a shorter one is recomputed and
//! replaced. Writes are single-writer with atomic rename, so concurrent
//! readers are safe.

use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::bottcher::{self, compute_coefficients_with, CoefficientTable, Engine};
use crate::error::Result;

pub const CACHE_DIR_ENV: &str = "GRONWALL_CACHE_DIR";

/// The cache directory from the environment, if configured.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)
}

/// File name for the table of a given parameter; `{}` formatting of f64 is
/// the shortest representation that round-trips.
pub fn cache_file_name(c: Complex64) -> String {
    format!("c_{}_{}.coeff", c.re, c.im)
}

fn same_bits(a: Complex64, b: Complex64) -> bool {
    a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()
}

/// Returns a table of order `n` for `c`, reading from `dir` when a stored
/// table covers the request and writing back after computing otherwise.
/// With `dir = None` the table is always computed.
pub fn load_or_compute(
    c: Complex64,
    n: usize,
    engine: Engine,
    dir: Option<&Path>,
) -> Result<CoefficientTable> {
    let Some(dir) = dir else {
        return compute_coefficients_with(c, n, engine);
    };
    let path = dir.join(cache_file_name(c));
    if path.exists() {
        if let Ok((stored_c, stored_n)) = bottcher::stored_header(&path) {
            if same_bits(stored_c, c) && stored_n as usize >= n {
                if let Ok(table) = bottcher::read_table(&path, Some(n)) {
                    return Ok(table);
                }
            }
        }
        // Wrong parameter, too short, or unreadable: recompute and replace.
    }
    let table = compute_coefficients_with(c, n, engine)?;
    bottcher::write_table(&table, &path)?;
    Ok(table)
}
