//! Near-parabolic discrepancy experiments.
//!
//! The rotation number is always represented as `α = 1/(m + τ)` with
//! integer `m`, which pins the fractional part `{1/α} = τ` exactly. For
//! small `α` the truncated area at level `N = ⌊e^{γ(m+τ)}⌋` stays close
//! to the area of the parabolic set `K_1` even though the actual filled
//! Julia set `K_λ` is markedly smaller; that gap is what the report
//! measures.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::Serialize;

use crate::area_oracle::{grid_area, refine_until, AreaEstimate, RegionSpec};
use crate::bottcher::Engine;
use crate::dynamics;
use crate::error::{Error, Result};
use crate::gronwall::truncated_area;

use super::cache::load_or_compute;
use super::sweep::DEFAULT_COEFFICIENT_BUDGET;

#[derive(Debug, Clone)]
pub struct ParabolicConfig {
    pub m: u32,
    pub tau: f64,
    pub gamma: f64,
    /// Escape radius `R > 6` for the iterate sublevel area.
    pub r_escape: f64,
    pub budget: usize,
    pub engine: Engine,
    pub cache_dir: Option<PathBuf>,
    /// Grid ceiling for the refined filled-Julia areas.
    pub max_resolution: u32,
    /// Iteration budget for the grids; near-parabolic boundaries escape
    /// slowly, so this is much larger than for hyperbolic parameters.
    pub grid_max_iter: u32,
}

impl ParabolicConfig {
    pub fn new(m: u32, tau: f64, gamma: f64, r_escape: f64) -> ParabolicConfig {
        ParabolicConfig {
            m,
            tau,
            gamma,
            r_escape,
            budget: DEFAULT_COEFFICIENT_BUDGET,
            engine: Engine::Naive,
            cache_dir: None,
            max_resolution: 2048,
            grid_max_iter: 2000,
        }
    }
}

/// Report of one near-parabolic experiment. Serializes to the JSON schema
/// of the `parabolic` subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyReport {
    pub alpha: f64,
    pub m: u32,
    pub tau: f64,
    pub gamma: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "N_requested")]
    pub n_requested: usize,
    #[serde(rename = "N_capped")]
    pub n_capped: bool,
    #[serde(rename = "A_1N")]
    pub a_unit_n: f64,
    #[serde(rename = "area_K_lambda")]
    pub area_k_lambda: AreaEstimate,
    #[serde(rename = "area_K_1")]
    pub area_k_1: AreaEstimate,
    pub iter_area: AreaEstimate,
    /// `A(λ,1,N) − area_k_lambda.value`; recorded even when negative.
    pub measured_gap: f64,
}

/// Runs the experiment: `α = 1/(m+τ)`, `λ = e^{2iπα}`,
/// `N = ⌊e^{γ(m+τ)}⌋` capped at the budget (flagged in the report),
/// truncated area at radius 1, grid areas of `K_λ` and `K_1`, and the
/// iterate sublevel area with `p = m`.
pub fn parabolic_discrepancy(cfg: &ParabolicConfig) -> Result<DiscrepancyReport> {
    if cfg.m < 4 {
        return Err(Error::InvalidArgument(format!("m must be ≥ 4, got {}", cfg.m)));
    }
    if !(0.0..=1.0).contains(&cfg.tau) {
        return Err(Error::InvalidArgument(format!("tau must lie in [0,1], got {}", cfg.tau)));
    }
    if !cfg.gamma.is_finite() || cfg.gamma <= 0.0 {
        return Err(Error::InvalidArgument(format!("gamma must be positive, got {}", cfg.gamma)));
    }
    if !cfg.r_escape.is_finite() || cfg.r_escape <= 6.0 {
        return Err(Error::Domain(format!(
            "escape radius must exceed 6, got {}",
            cfg.r_escape
        )));
    }

    let denom = cfg.m as f64 + cfg.tau;
    let alpha = 1.0 / denom;
    let lambda = Complex64::cis(2.0 * std::f64::consts::PI * alpha);
    let c = crate::params::lambda_to_c(lambda);

    // ⌊e^{γ(m+τ)}⌋, with a one-part-in-10¹² nudge so that levels that are
    // exact integers in the reals (e.g. e^{8 log 2} = 256) are not pushed
    // down a step by float rounding.
    let n_requested_f = ((cfg.gamma * denom).exp() * (1.0 + 1e-12)).floor();
    let n_requested = if n_requested_f >= usize::MAX as f64 {
        usize::MAX
    } else {
        (n_requested_f as usize).max(1)
    };
    let n_capped = n_requested > cfg.budget;
    let n = n_requested.min(cfg.budget);

    let table = load_or_compute(c, n, cfg.engine, cfg.cache_dir.as_deref())?;
    let a_unit_n = truncated_area(&table, 1.0, n)?.value;

    let area_k_lambda = refine_until(
        &RegionSpec::FilledJulia { lambda },
        0.02,
        cfg.max_resolution,
        cfg.grid_max_iter,
    )?;
    let area_k_1 = refine_until(
        &RegionSpec::FilledJulia { lambda: Complex64::new(1.0, 0.0) },
        0.02,
        cfg.max_resolution,
        cfg.grid_max_iter,
    )?;
    let iter_area = grid_area(
        &RegionSpec::IterateSublevel { lambda, p: cfg.m, r_escape: cfg.r_escape },
        cfg.max_resolution,
        cfg.grid_max_iter,
    )?;

    Ok(DiscrepancyReport {
        alpha,
        m: cfg.m,
        tau: cfg.tau,
        gamma: cfg.gamma,
        n,
        n_requested,
        n_capped,
        a_unit_n,
        area_k_lambda,
        area_k_1,
        iter_area,
        measured_gap: a_unit_n - area_k_lambda.value,
    })
}

/// Finite-time approximation of the Lavaurs map: `f_λ^{∘m}(z)` with
/// `λ = e^{2iπ/(m+τ)}`, so the iterate count equals `⌊1/α⌋`.
///
/// Errors out if the orbit passes the overflow guard, meaning the input
/// was not in the convergence domain (the interior of `K_1`).
pub fn lavaurs_approx(m: u32, tau: f64, z: Complex64) -> Result<Complex64> {
    if m < 1 {
        return Err(Error::InvalidArgument("m must be ≥ 1".into()));
    }
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidArgument(format!("tau must lie in [0,1], got {tau}")));
    }
    let lambda = Complex64::cis(2.0 * std::f64::consts::PI / (m as f64 + tau));
    let out = dynamics::iterate(lambda, z, m);
    if !out.re.is_finite() || !out.im.is_finite() {
        return Err(Error::Escaped(format!(
            "orbit of {z} left the overflow guard before {m} steps"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{in_filled_julia, MembershipVerdict};

    #[test]
    fn lavaurs_fixes_the_origin() {
        let z = lavaurs_approx(12, 0.3, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(z, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn lavaurs_long_iterates_stabilize() {
        let a = lavaurs_approx(32, 0.0, Complex64::new(-0.5, 0.0)).unwrap();
        let b = lavaurs_approx(64, 0.0, Complex64::new(-0.5, 0.0)).unwrap();
        assert!((a - b).norm() < 0.05, "|{a} - {b}| too large");
    }

    #[test]
    fn lavaurs_image_of_real_interior_point_stays_interior() {
        // The long-iterate images of −0.5 at phase 0 stabilize near
        // −0.447 + 0.050i, a point of the attracting basin: no escape
        // under z + z². (Checked against forward iteration directly.)
        let image = lavaurs_approx(32, 0.0, Complex64::new(-0.5, 0.0)).unwrap();
        assert!((image - Complex64::new(-0.467124, -0.020237)).norm() < 1e-3);
        let verdict = in_filled_julia(Complex64::new(1.0, 0.0), image, 1000).unwrap();
        assert_eq!(verdict, MembershipVerdict::InsideSoFar);
    }

    #[test]
    fn lavaurs_can_map_interior_points_into_the_escaping_set() {
        // −0.95 + 0.3i lies in the interior of the parabolic filled Julia
        // set (no escape in 3000 steps of z + z²), yet its long-iterate
        // images stabilize near 0.63 + 0.95i, which escapes in a few
        // steps: the limiting map sends parts of the interior into the
        // basin of infinity.
        let one = Complex64::new(1.0, 0.0);
        let z0 = Complex64::new(-0.95, 0.3);
        assert_eq!(
            in_filled_julia(one, z0, 3000).unwrap(),
            MembershipVerdict::InsideSoFar
        );
        let a = lavaurs_approx(1024, 0.0, z0).unwrap();
        let b = lavaurs_approx(2048, 0.0, z0).unwrap();
        assert!((a - b).norm() < 0.02, "images not stable: {a} vs {b}");
        assert!(matches!(
            in_filled_julia(one, b, 100).unwrap(),
            MembershipVerdict::Escaped(_)
        ));
    }

    #[test]
    fn lavaurs_rejects_bad_arguments() {
        assert!(lavaurs_approx(0, 0.0, Complex64::new(0.0, 0.0)).is_err());
        assert!(lavaurs_approx(4, 1.5, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn report_caps_the_level_and_flags_it() {
        let mut cfg = ParabolicConfig::new(8, 0.0, (2.0f64).ln(), 12.0);
        cfg.budget = 64;
        cfg.max_resolution = 256;
        cfg.grid_max_iter = 400;
        let report = parabolic_discrepancy(&cfg).unwrap();
        assert_eq!(report.n_requested, 256); // e^{8 log 2} = 256
        assert_eq!(report.n, 64);
        assert!(report.n_capped);
        assert!((report.alpha - 0.125).abs() < 1e-15);
    }

    #[test]
    fn report_json_has_the_documented_keys() {
        let mut cfg = ParabolicConfig::new(8, 0.0, 0.25, 12.0);
        cfg.max_resolution = 256;
        cfg.grid_max_iter = 400;
        let report = parabolic_discrepancy(&cfg).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        for key in [
            "alpha",
            "m",
            "tau",
            "gamma",
            "N",
            "A_1N",
            "area_K_lambda",
            "area_K_1",
            "iter_area",
            "measured_gap",
        ] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
        for sub in ["area_K_lambda", "area_K_1", "iter_area"] {
            let est = json.get(sub).unwrap();
            for key in ["value", "lower", "upper"] {
                assert!(est.get(key).is_some(), "missing {sub}.{key}");
            }
        }
        let gap = report.a_unit_n - report.area_k_lambda.value;
        assert_eq!(report.measured_gap, gap);
    }
}
