//! Connectedness-locus rendering in the multiplier plane.
//!
//! A parameter `λ` belongs to the double Mandelbrot set exactly when the
//! orbit of the critical point `−λ/2` stays bounded. Escape beyond radius
//! 6 within the iteration budget is a rigorous "outside" verdict; the rest
//! is inside-so-far.

use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::{ESCAPE_RADIUS, OVERFLOW_GUARD};
use crate::error::{Error, Result};
use crate::params::critical_point;

/// Real range of the rendered window.
pub const LAMBDA_RE_RANGE: (f64, f64) = (-2.5, 3.5);
/// Imaginary range of the rendered window.
pub const LAMBDA_IM_RANGE: (f64, f64) = (-2.0, 2.0);

/// A binary classification grid over the multiplier window: 0 = critical
/// orbit escaped (outside), 255 = inside so far. Row-major, top row at
/// `Im λ = +2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaGrid {
    pub width: u32,
    pub height: u32,
    pub cells: Vec<u8>,
}

impl LambdaGrid {
    /// Writes the grid as a binary PGM (P5, maxval 255).
    pub fn write_pgm<W: Write>(&self, mut w: W) -> io::Result<()> {
        write!(w, "P5\n{} {}\n255\n", self.width, self.height)?;
        w.write_all(&self.cells)
    }

    /// The classification at a multiplier value (nearest cell).
    pub fn class_at(&self, lambda: Complex64) -> u8 {
        let (re0, re1) = LAMBDA_RE_RANGE;
        let (im0, im1) = LAMBDA_IM_RANGE;
        let col = ((lambda.re - re0) / (re1 - re0) * self.width as f64)
            .clamp(0.0, self.width as f64 - 1.0) as usize;
        let row = ((im1 - lambda.im) / (im1 - im0) * self.height as f64)
            .clamp(0.0, self.height as f64 - 1.0) as usize;
        self.cells[row * self.width as usize + col]
    }
}

fn critical_orbit_escapes(lambda: Complex64, max_iter: u32) -> bool {
    let mut z = critical_point(lambda);
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

/// Renders the window `[−2.5, 3.5] × [−2, 2]` with `resolution` columns
/// and square pixels. Deterministic and independent of the worker count.
pub fn render_double_mandelbrot(resolution: u32, max_iter: u32) -> Result<LambdaGrid> {
    if resolution < 64 {
        return Err(Error::InvalidArgument(format!(
            "rendering needs resolution ≥ 64, got {resolution}"
        )));
    }
    let (re0, re1) = LAMBDA_RE_RANGE;
    let (im0, im1) = LAMBDA_IM_RANGE;
    let width = resolution;
    let height = ((resolution as f64) * (im1 - im0) / (re1 - re0)).round() as u32;
    let h = (re1 - re0) / width as f64;

    let rows: Vec<Vec<u8>> = (0..height)
        .into_par_iter()
        .map(|row| {
            let im = im1 - (row as f64 + 0.5) * h;
            let mut out = vec![0u8; width as usize];
            for col in 0..width {
                let lambda = Complex64::new(re0 + (col as f64 + 0.5) * h, im);
                out[col as usize] = if critical_orbit_escapes(lambda, max_iter) { 0 } else { 255 };
            }
            out
        })
        .collect();

    let mut cells = Vec::with_capacity(width as usize * height as usize);
    for row in rows {
        cells.extend_from_slice(&row);
    }
    Ok(LambdaGrid { width, height, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_classification_reference_points() {
        let grid = render_double_mandelbrot(192, 200).unwrap();
        // z² has a connected Julia set.
        assert_eq!(grid.class_at(Complex64::new(0.0, 0.0)), 255);
        // The unit disk is the left big disk of the set.
        assert_eq!(grid.class_at(Complex64::new(0.5, 0.0)), 255);
        assert_eq!(grid.class_at(Complex64::new(0.0, 0.6)), 255);
        // The right big disk is the 2−λ mirror of the unit disk.
        assert_eq!(grid.class_at(Complex64::new(2.0, 0.0)), 255);
        // Far corners of the window escape.
        assert_eq!(grid.class_at(Complex64::new(-2.4, 1.9)), 0);
        assert_eq!(grid.class_at(Complex64::new(3.4, -1.9)), 0);
    }

    #[test]
    fn conjugate_of_segment_parameter_escapes_fast() {
        // λ = −4 corresponds to c = −6, well outside the locus.
        let mut z = critical_point(Complex64::new(-4.0, 0.0));
        let lambda = Complex64::new(-4.0, 0.0);
        let mut steps = 0;
        while z.norm() <= ESCAPE_RADIUS && steps <= 5 {
            z = lambda * z + z * z;
            steps += 1;
        }
        assert!(steps <= 5, "critical orbit did not escape within 5 steps");
    }

    #[test]
    fn grid_dimensions_follow_the_window_aspect() {
        let grid = render_double_mandelbrot(96, 30).unwrap();
        assert_eq!(grid.width, 96);
        assert_eq!(grid.height, 64);
        assert_eq!(grid.cells.len(), 96 * 64);
        assert!(render_double_mandelbrot(32, 10).is_err());
    }

    #[test]
    fn pgm_header_is_wellformed() {
        let grid = render_double_mandelbrot(64, 20).unwrap();
        let mut buf = Vec::new();
        grid.write_pgm(&mut buf).unwrap();
        let header = format!("P5\n{} {}\n255\n", grid.width, grid.height);
        assert!(buf.starts_with(header.as_bytes()));
        assert_eq!(buf.len(), header.len() + grid.cells.len());
    }
}
