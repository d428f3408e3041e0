//! The truncated area formula and its two-sided truncation bounds.
//!
//! For `r ≥ 1` and a coefficient table of `z² + c`, the truncated sum
//!
//! ```text
//! A(λ, r, N) = π (r² − Σ_{k=1}^{N} k |b_k|² r^{−2k})
//! ```
//!
//! approximates the area of the Green sublevel set `V_λ(log r)`; at
//! `r = 1` it approximates the area of the filled Julia set from above.
//! The checks in this module relate a truncation at radius 1 to sublevel
//! areas at radius `r > 1`:
//!
//! - a lower bound `A(λ,1,N) ≥ π(1−r^{2N+2}) + r^{2N}·A(λ,r,∞)`,
//! - the same bound with `A(λ,r,∞)` replaced by the area of an iterate
//!   sublevel set `{z : |f_λ^{∘p}(z)| ≤ R}` with `p` chosen by
//!   [`iterations_for_level`],
//! - an upper bound `A(λ,1,N) ≤ Area(V_λ(log r)) + π r^{−2(N+1)}`.
//!
//! The upper bound's tail exponent is the one the inequality
//! `Σ_{k>N} k|b_k|² r^{−2k} ≤ r^{−2(N+1)} Σ_k k|b_k|²` actually yields
//! under `Σ k|b_k|² ≤ 1`; a decaying tail forces the negative exponent.
//!
//! The checks are exact statements over the reals; the boolean versions
//! allow a small magnitude-scaled slack so that floating-point rounding
//! and interval-valued area estimates cannot produce spurious failures.

use std::f64::consts::PI;

use crate::bottcher::CoefficientTable;
use crate::error::{Error, Result};
use crate::params::ParameterPoint;

/// A truncated area value together with the inputs that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedArea {
    pub parameter: ParameterPoint,
    pub r: f64,
    pub n: usize,
    /// `π (r² − Σ_{k≤N} k |b_k|² r^{−2k})`, in square plane units.
    pub value: f64,
}

/// Magnitude-scaled slack for the inequality checks.
fn slack(terms: &[f64]) -> f64 {
    let mut scale = 1.0f64;
    for t in terms {
        let a = t.abs();
        if a.is_finite() && a > scale {
            scale = a;
        }
    }
    1e-9 * scale
}

/// Evaluates `A(λ, r, N)` from a coefficient table.
///
/// The sum runs k-descending (Horner in `r^{−2}`), adding the smallest
/// terms first.
pub fn truncated_area(table: &CoefficientTable, r: f64, n: usize) -> Result<TruncatedArea> {
    if n == 0 {
        return Err(Error::InvalidArgument("truncation level must be ≥ 1".into()));
    }
    if n > table.order() {
        return Err(Error::InsufficientCoefficients {
            requested: n,
            available: table.order(),
        });
    }
    if !r.is_finite() || r < 1.0 {
        return Err(Error::Domain(format!("area radius must be ≥ 1, got {r}")));
    }
    let x = 1.0 / (r * r);
    let mut s = 0.0f64;
    for k in (1..=n).rev() {
        s = (s + k as f64 * table.coefficient(k).norm_sqr()) * x;
    }
    Ok(TruncatedArea {
        parameter: ParameterPoint::from_c(table.c()),
        r,
        n,
        value: PI * (r * r - s),
    })
}

/// Number of iterations `p = ⌈(log log(11R/6) − log g)/log 2⌉` after which
/// `|f_λ^{∘p}(z)| ≤ R` certifies `G_λ(z) ≤ g` (for `|λ| ≤ 5`).
pub fn iterations_for_level(r_escape: f64, g: f64) -> Result<u32> {
    if !r_escape.is_finite() || r_escape <= 6.0 {
        return Err(Error::Domain(format!(
            "escape radius must exceed 6, got {r_escape}"
        )));
    }
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::Domain(format!("level must be positive, got {g}")));
    }
    let p = (((11.0 * r_escape / 6.0).ln().ln() - g.ln()) / std::f64::consts::LN_2).ceil();
    if p < 0.0 {
        return Err(Error::Domain(format!(
            "level g = {g} is too large for escape radius {r_escape}"
        )));
    }
    Ok(p as u32)
}

/// The lower bound `π(1−r^{2N+2}) + r^{2N}·a_r_inf`, where `a_r_inf`
/// estimates `Area(V_λ(log r))`.
///
/// When the literal evaluation overflows to an indeterminate form, the
/// algebraically equal `π + r^{2N}(a_r_inf − π r²)` is used instead.
fn lower_bound_value(a_r_inf: f64, r: f64, n: usize) -> f64 {
    let r2n = r.powi(2 * n as i32);
    let literal = PI * (1.0 - r2n * r * r) + r2n * a_r_inf;
    if literal.is_finite() {
        literal
    } else {
        PI + r2n * (a_r_inf - PI * r * r)
    }
}

/// Checks `A(λ,1,N) ≥ π(1−r^{2N+2}) + r^{2N}·a_r_inf − slack`.
///
/// `a_r_inf` is an estimate of `A(λ,r,∞) = Area(V_λ(log r))`, either from
/// a high-order truncation (with its tail bound folded into the caller's
/// slack) or from the grid oracle. Valid for `r > 1`, `N ≥ 1`, and
/// `λ` with `G_λ(critical point) ≤ log r`.
pub fn partial_sum_lower_bound_holds(a_unit_n: f64, a_r_inf: f64, r: f64, n: usize) -> bool {
    let r2n = r.powi(2 * n as i32);
    let bound = lower_bound_value(a_r_inf, r, n);
    let eps = slack(&[a_unit_n, PI * (1.0 - r2n * r * r), r2n * a_r_inf]);
    a_unit_n >= bound - eps
}

/// The iterate-sublevel form of the lower bound:
/// `π(1−r^{2N+2}) + r^{2N}·iter_area` with
/// `iter_area = Area({z : |f_λ^{∘p}(z)| ≤ R})` and
/// `p = iterations_for_level(R, log r)`.
///
/// Callers assert `a_unit_n ≥ bound − slack`. Requires `1 < r < 11R/6`
/// for the escape radius `R` behind `iter_area`, and `|λ| < 5`; only the
/// locally checkable parts are validated here.
pub fn iterate_sublevel_lower_bound(
    a_unit_n: f64,
    iter_area: f64,
    r: f64,
    n: usize,
) -> Result<f64> {
    if !r.is_finite() || r <= 1.0 {
        return Err(Error::Domain(format!("radius must exceed 1, got {r}")));
    }
    if n == 0 {
        return Err(Error::Domain("truncation level must be ≥ 1".into()));
    }
    if !a_unit_n.is_finite() || !iter_area.is_finite() || iter_area < 0.0 {
        return Err(Error::Domain(
            "area arguments must be finite and nonnegative".into(),
        ));
    }
    Ok(lower_bound_value(iter_area, r, n))
}

/// Checks `A(λ,1,N) ≤ sublevel_area + π r^{−2(N+1)} + slack`, where
/// `sublevel_area` estimates `Area(V_λ(log r))` and `r > 1`.
pub fn partial_sum_upper_bound_holds(a_unit_n: f64, sublevel_area: f64, r: f64, n: usize) -> bool {
    let tail = PI * r.powi(-2 * (n as i32 + 1));
    let bound = sublevel_area + tail;
    let eps = slack(&[a_unit_n, bound]);
    a_unit_n <= bound + eps
}
