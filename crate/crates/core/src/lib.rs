//! Areas of quadratic Julia sets through the Gronwall coefficient formula.
//!
//! For a quadratic polynomial with connected Julia set, the inverse of its
//! Böttcher map has a Laurent expansion `ψ(w) = w + Σ b_k / w^k`, and the
//! area of the Green sublevel set `{G ≤ log r}` equals
//! `π (r² − Σ k |b_k|² r^{−2k})`. This crate computes the coefficients
//! `b_k`, evaluates truncations of the area series, bounds the truncation
//! error against iterate sublevel sets, and cross-checks everything with an
//! independent pixel-counting oracle. A CLI (`gronwall`) drives parameter
//! sweeps along the main cardioid and near-parabolic discrepancy
//! experiments.
//!
//! Module map:
//! - [`params`]: conversions between the `λz + z²` and `z² + c` families.
//! - [`bottcher`]: the coefficient recursion, series evaluation, residual
//!   validation, and the binary cache format.
//! - [`gronwall`]: truncated area values and the truncation bounds.
//! - [`dynamics`]: orbits and certified Green function enclosures.
//! - [`area_oracle`]: deterministic grid (pixel counting) area intervals.
//! - [`experiments`]: cardioid sweeps, near-parabolic discrepancy reports,
//!   long-iterate (Lavaurs) approximations, and the double Mandelbrot set.

pub mod area_oracle;
pub mod bottcher;
pub mod dynamics;
mod error;
pub mod experiments;
pub mod gronwall;
pub mod params;

pub use error::{Error, Result};

pub use area_oracle::{AreaEstimate, ClassGrid, RegionSpec};
pub use bottcher::CoefficientTable;
pub use dynamics::GreenValue;
pub use gronwall::TruncatedArea;
pub use params::ParameterPoint;
