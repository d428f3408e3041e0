//! Laurent coefficients of the inverse Böttcher map of `z² + c`.
//!
//! The inverse Böttcher map `ψ(w) = w + Σ_{k≥1} b_k w^{−k}` conjugates
//! `w ↦ w²` to `z ↦ z² + c` near infinity, i.e. `ψ(w²) = ψ(w)² + c`.
//! Matching powers of `w` (with `b_{−1} := 1`, `b_0 := 0`) gives, for
//! `n = 0, 1, 2, …`:
//!
//! ```text
//! b_{n+1} = ½ · [ (b_{n/2} if n even else 0)
//!                 − Σ_{i=0}^{n} b_i b_{n−i}
//!                 − (c if n == 0 else 0) ]
//! ```
//!
//! Every even-index coefficient vanishes identically (the convolution of
//! two odd-index-supported sequences at odd total order is empty), so the
//! reference loop only touches odd indices; this is also why half of the
//! terms of the area series drop out.
//!
//! The affine conjugacy `z ↦ z + λ/2` between `λz + z²` and `z² + c` only
//! shifts the constant Laurent term, so the `b_k` with `k ≥ 1` computed
//! here serve both families.

mod cache;
mod fast;

pub use cache::{read_table, stored_header, write_table, CACHE_MAGIC, CACHE_VERSION};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Radius used for the self-check stored in [`CoefficientTable::residual_metric`].
pub const RESIDUAL_CHECK_RADIUS: f64 = 2.0;
/// Sample count used for the stored self-check.
pub const RESIDUAL_CHECK_SAMPLES: usize = 16;

/// Which implementation computes the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Reference `O(N²)` convolution, bit-deterministic.
    Naive,
    /// FFT-backed Newton iteration on the series square root,
    /// `O(N log N)`; agrees with the reference path to ~1e−12 per
    /// coefficient for bounded parameters, but not bit-for-bit.
    Fast,
}

/// Coefficients `b_1..b_N` of the inverse Böttcher map for one `c`.
///
/// Immutable after construction; shareable across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    c: Complex64,
    /// `b[k-1]` is `b_k`. Stored densely, even indices are exact zeros.
    b: Vec<Complex64>,
    /// Max functional-equation residual on `|w| = 2` over
    /// [`RESIDUAL_CHECK_SAMPLES`] points, recorded at construction.
    residual: f64,
}

impl CoefficientTable {
    fn finish(c: Complex64, b: Vec<Complex64>) -> CoefficientTable {
        let mut table = CoefficientTable {
            c,
            b,
            residual: 0.0,
        };
        table.residual =
            residual(&table, RESIDUAL_CHECK_RADIUS, RESIDUAL_CHECK_SAMPLES).unwrap_or(f64::INFINITY);
        table
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// `b_k`, 1-indexed, `1 ≤ k ≤ N`.
    pub fn coefficient(&self, k: usize) -> Complex64 {
        self.b[k - 1]
    }

    /// `b_1..b_N` as a slice (`[0]` is `b_1`).
    pub fn coefficients(&self) -> &[Complex64] {
        &self.b
    }

    /// Validation metric recorded at construction: the functional-equation
    /// residual at radius 2 over 16 samples.
    pub fn residual_metric(&self) -> f64 {
        self.residual
    }

    /// Prefix truncation to order `n ≤ N`.
    pub fn truncated(&self, n: usize) -> Result<CoefficientTable> {
        if n == 0 {
            return Err(Error::InvalidArgument("truncation order must be ≥ 1".into()));
        }
        if n > self.b.len() {
            return Err(Error::InsufficientCoefficients {
                requested: n,
                available: self.b.len(),
            });
        }
        Ok(CoefficientTable::finish(self.c, self.b[..n].to_vec()))
    }

    pub(crate) fn from_raw(c: Complex64, b: Vec<Complex64>) -> CoefficientTable {
        CoefficientTable::finish(c, b)
    }
}

/// Computes `b_1..b_n` with the reference recursion.
///
/// Deterministic: the same `(c, n)` always yields bit-identical output.
pub fn compute_coefficients(c: Complex64, n: usize) -> Result<CoefficientTable> {
    compute_coefficients_with(c, n, Engine::Naive)
}

/// Computes `b_1..b_n` with the selected engine.
pub fn compute_coefficients_with(c: Complex64, n: usize, engine: Engine) -> Result<CoefficientTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("coefficient order must be ≥ 1".into()));
    }
    if !c.re.is_finite() || !c.im.is_finite() {
        return Err(Error::InvalidArgument(format!("c must be finite, got {c}")));
    }
    let b = match engine {
        Engine::Naive => naive_coefficients(c, n),
        Engine::Fast => fast::coefficients(c, n),
    };
    Ok(CoefficientTable::finish(c, b))
}

/// Reference path. `work[k]` holds `b_k` with `work[0] = b_0 = 0`; only odd
/// indices are ever nonzero, and the symmetric convolution is folded as
/// `2·Σ_{i<n/2} b_i b_{n−i} (+ middle term)`, cutting the work ~4×.
fn naive_coefficients(c: Complex64, n: usize) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut work = vec![zero; n + 1];
    // b_1 = −c/2 (order n = 0 of the matching).
    work[1] = -c / 2.0;
    for m in 2..=n {
        if m % 2 == 0 {
            continue; // even-index coefficients vanish structurally
        }
        // m = n'+1 with n' = m−1 even.
        let np = m - 1;
        let half = np / 2;
        let mut conv = zero;
        let mut i = 1;
        while i < half {
            conv += work[i] * work[np - i];
            i += 2;
        }
        conv *= 2.0;
        if half % 2 == 1 {
            conv += work[half] * work[half];
        }
        let lhs = if half % 2 == 1 { work[half] } else { zero };
        work[m] = 0.5 * (lhs - conv);
    }
    work.remove(0);
    work
}

/// Evaluates the truncated series `w + Σ_{k=1}^{N} b_k w^{−k}`.
///
/// The sum runs k-descending (smallest magnitudes first) via Horner in
/// `1/w`, which bounds the floating-point error accumulation.
pub fn evaluate_psi(table: &CoefficientTable, w: Complex64) -> Result<Complex64> {
    if w.norm() <= 1.0 {
        return Err(Error::Domain(format!(
            "series evaluation requires |w| > 1, got |w| = {}",
            w.norm()
        )));
    }
    let invw = Complex64::new(1.0, 0.0) / w;
    let mut s = Complex64::new(0.0, 0.0);
    for k in (0..table.b.len()).rev() {
        s = (s + table.b[k]) * invw;
    }
    Ok(w + s)
}

/// Max of `|ψ(w²) − ψ(w)² − c|` over `samples` equispaced points on
/// `|w| = r`.
///
/// Requires `r ≥ 2`: below radius 2 the truncation tail of the squared
/// series is not uniformly controlled, so the metric would conflate
/// truncation error with genuine recursion defects.
pub fn residual(table: &CoefficientTable, r: f64, samples: usize) -> Result<f64> {
    if !r.is_finite() || r < 2.0 {
        return Err(Error::Domain(format!("residual radius must be ≥ 2, got {r}")));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("residual needs at least one sample".into()));
    }
    let mut worst = 0.0f64;
    for j in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * (j as f64) / (samples as f64);
        let w = Complex64::from_polar(r, theta);
        let psi_w = evaluate_psi(table, w)?;
        let psi_w2 = evaluate_psi(table, w * w)?;
        let defect = (psi_w2 - psi_w * psi_w - table.c).norm();
        if !defect.is_finite() {
            return Ok(f64::INFINITY);
        }
        if defect > worst {
            worst = defect;
        }
    }
    Ok(worst)
}
