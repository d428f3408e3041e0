//! Grid-based (pixel counting) interval estimates of planar areas.
//!
//! The box `[−6,6]²` is split into `resolution²` cells and each cell
//! center is classified as outside, inside, or undecided:
//!
//! - **Outside** verdicts are rigorous at the sampled center: a certified
//!   escape (filled Julia set), a certified Green lower bound above the
//!   level (Green sublevel), or the exact iterate predicate failing.
//! - **Undecided** cells carry the boundary uncertainty. For Green
//!   sublevel sets these are cells whose certified Green enclosure
//!   straddles the level. For filled Julia sets and iterate sublevel sets
//!   (where the per-cell test is binary) they are the inside cells
//!   touching an outside cell, the discretized boundary band.
//! - Everything else counts as inside.
//!
//! `value` counts inside plus undecided cells; `lower = value −
//! undecided_area` and `upper = value`. The interval is honest bookkeeping
//! for the stated classification rules (cell centers, no supersampling),
//! not a formal enclosure of the true area.
//!
//! The box is justified by the escape radius: `K_λ ⊂ D₆` whenever
//! `|λ| ≤ 5`, and Green sublevels are accepted only up to level `log 11`.

use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::{self, green_enclosure, ESCAPE_RADIUS, MULTIPLIER_BOUND, OVERFLOW_GUARD};
use crate::error::{Error, Result};

/// Half-width of the sampling box.
pub const BOX_HALF_WIDTH: f64 = 6.0;

const OUTSIDE: u8 = 0;
const UNDECIDED: u8 = 128;
const INSIDE: u8 = 255;

/// A planar region whose area the grid oracle can estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionSpec {
    /// The filled Julia set `K_λ`.
    FilledJulia { lambda: Complex64 },
    /// The Green sublevel set `V_λ(g) = {z : G_λ(z) ≤ g}`, `0 < g ≤ log 11`.
    GreenSublevel { lambda: Complex64, g: f64 },
    /// The iterate sublevel set `{z : |f_λ^{∘p}(z)| ≤ R}`, `R > 6`.
    IterateSublevel { lambda: Complex64, p: u32, r_escape: f64 },
}

impl RegionSpec {
    pub fn lambda(&self) -> Complex64 {
        match *self {
            RegionSpec::FilledJulia { lambda }
            | RegionSpec::GreenSublevel { lambda, .. }
            | RegionSpec::IterateSublevel { lambda, .. } => lambda,
        }
    }

    fn validate(&self) -> Result<()> {
        let lambda = self.lambda();
        if lambda.norm() > MULTIPLIER_BOUND {
            return Err(Error::Domain(format!(
                "grid oracle requires |λ| ≤ {MULTIPLIER_BOUND}, got |λ| = {}",
                lambda.norm()
            )));
        }
        match *self {
            RegionSpec::FilledJulia { .. } => Ok(()),
            RegionSpec::GreenSublevel { g, .. } => {
                if !g.is_finite() || g <= 0.0 {
                    return Err(Error::Domain(format!("sublevel g must be positive, got {g}")));
                }
                if g > (11.0f64).ln() {
                    return Err(Error::Domain(format!(
                        "sublevel g = {g} may exceed the sampling box; the oracle accepts g ≤ log 11"
                    )));
                }
                Ok(())
            }
            RegionSpec::IterateSublevel { r_escape, .. } => {
                if !r_escape.is_finite() || r_escape <= 6.0 {
                    return Err(Error::Domain(format!(
                        "iterate sublevel radius must exceed 6, got {r_escape}"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// An interval-valued area measurement.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AreaEstimate {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    #[serde(skip)]
    pub resolution: u32,
    #[serde(skip)]
    pub undecided_area: f64,
}

/// Classification of every cell, row-major with the top row at `Im = +6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGrid {
    pub resolution: u32,
    /// `resolution²` bytes: 0 = outside, 128 = undecided, 255 = inside.
    pub cells: Vec<u8>,
}

impl ClassGrid {
    /// Aggregates the cell classes into an interval area estimate.
    pub fn area_estimate(&self) -> AreaEstimate {
        let mut inside = 0u64;
        let mut undecided = 0u64;
        for &c in &self.cells {
            match c {
                INSIDE => inside += 1,
                UNDECIDED => undecided += 1,
                _ => {}
            }
        }
        let cell = (2.0 * BOX_HALF_WIDTH / self.resolution as f64).powi(2);
        let undecided_area = undecided as f64 * cell;
        let value = (inside + undecided) as f64 * cell;
        AreaEstimate {
            value,
            lower: value - undecided_area,
            upper: value,
            resolution: self.resolution,
            undecided_area,
        }
    }
}

fn cell_center(resolution: u32, row: u32, col: u32) -> Complex64 {
    let h = 2.0 * BOX_HALF_WIDTH / resolution as f64;
    Complex64::new(
        -BOX_HALF_WIDTH + (col as f64 + 0.5) * h,
        BOX_HALF_WIDTH - (row as f64 + 0.5) * h,
    )
}

/// Escape test at a cell center (binary classification).
fn escapes(lambda: Complex64, z: Complex64, max_iter: u32) -> bool {
    let mut z = z;
    for _ in 0..=max_iter {
        if z.norm_sqr() > ESCAPE_RADIUS * ESCAPE_RADIUS {
            return true;
        }
        if z.norm_sqr() > OVERFLOW_GUARD * OVERFLOW_GUARD {
            return true;
        }
        z = lambda * z + z * z;
    }
    false
}

/// Marks inside cells that touch an outside cell (8-neighborhood, the
/// outside of the grid counts as outside) as undecided.
fn mark_boundary_band(resolution: u32, cells: &mut [u8]) {
    let n = resolution as usize;
    let index = |r: usize, c: usize| r * n + c;
    let mut band: Vec<(usize, usize)> = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if cells[index(r, c)] != INSIDE {
                continue;
            }
            let mut touches_outside = r == 0 || c == 0 || r == n - 1 || c == n - 1;
            if !touches_outside {
                'scan: for dr in -1i64..=1 {
                    for dc in -1i64..=1 {
                        if dr == 0 && dc == 0 {
                            continue;
                        }
                        let rr = (r as i64 + dr) as usize;
                        let cc = (c as i64 + dc) as usize;
                        if cells[index(rr, cc)] == OUTSIDE {
                            touches_outside = true;
                            break 'scan;
                        }
                    }
                }
            }
            if touches_outside {
                band.push((r, c));
            }
        }
    }
    for (r, c) in band {
        cells[index(r, c)] = UNDECIDED;
    }
}

/// Classifies every cell of the box. Deterministic for fixed inputs and
/// independent of the worker count: cells are classified independently and
/// assembled in row order.
pub fn classification_grid(
    region: &RegionSpec,
    resolution: u32,
    max_iter: u32,
) -> Result<ClassGrid> {
    region.validate()?;
    if resolution < 16 {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must be ≥ 16, got {resolution}"
        )));
    }
    let n = resolution as usize;
    let rows: Vec<Vec<u8>> = (0..resolution)
        .into_par_iter()
        .map(|row| {
            let mut out = vec![OUTSIDE; n];
            for col in 0..resolution {
                let z = cell_center(resolution, row, col);
                out[col as usize] = match *region {
                    RegionSpec::FilledJulia { lambda } => {
                        if escapes(lambda, z, max_iter) {
                            OUTSIDE
                        } else {
                            INSIDE
                        }
                    }
                    RegionSpec::GreenSublevel { lambda, g } => {
                        // max_iter here is the iteration budget for the
                        // enclosure; the orbit continues past the escape
                        // radius to tighten it.
                        let e = green_enclosure(lambda, z, max_iter)
                            .expect("multiplier validated above");
                        if e.upper <= g {
                            INSIDE
                        } else if e.lower > g {
                            OUTSIDE
                        } else {
                            UNDECIDED
                        }
                    }
                    RegionSpec::IterateSublevel { lambda, p, r_escape } => {
                        let member = dynamics::iter_sublevel_member(lambda, z, p, r_escape)
                            .expect("radius validated above");
                        if member {
                            INSIDE
                        } else {
                            OUTSIDE
                        }
                    }
                };
            }
            out
        })
        .collect();

    let mut cells = Vec::with_capacity(n * n);
    for row in rows {
        cells.extend_from_slice(&row);
    }
    match region {
        RegionSpec::FilledJulia { .. } | RegionSpec::IterateSublevel { .. } => {
            mark_boundary_band(resolution, &mut cells);
        }
        RegionSpec::GreenSublevel { .. } => {}
    }
    Ok(ClassGrid { resolution, cells })
}

/// Interval area estimate of `region` on a `resolution²` grid.
pub fn grid_area(region: &RegionSpec, resolution: u32, max_iter: u32) -> Result<AreaEstimate> {
    Ok(classification_grid(region, resolution, max_iter)?.area_estimate())
}

/// Doubles the resolution from 256 until `upper − lower ≤ tol` or the next
/// doubling would exceed `max_resolution`. Best effort: the caller
/// inspects the returned interval width.
pub fn refine_until(
    region: &RegionSpec,
    tol: f64,
    max_resolution: u32,
    max_iter: u32,
) -> Result<AreaEstimate> {
    let mut resolution = 256u32.min(max_resolution.max(16));
    loop {
        let est = grid_area(region, resolution, max_iter)?;
        if est.upper - est.lower <= tol || resolution.saturating_mul(2) > max_resolution {
            return Ok(est);
        }
        resolution *= 2;
    }
}

/// Writes the grid as a binary PGM (P5, maxval 255), top row `Im = +6`.
pub fn write_pgm<W: Write>(grid: &ClassGrid, mut w: W) -> io::Result<()> {
    write!(w, "P5\n{} {}\n255\n", grid.resolution, grid.resolution)?;
    w.write_all(&grid.cells)
}
