//! Orbits and certified Green function enclosures for `f_λ(z) = λz + z²`.
//!
//! All certification rests on one two-sided estimate: for `|λ| ≤ 5` and
//! every `ξ`,
//!
//! ```text
//! log|ξ| − log 6  ≤  G_λ(ξ)  ≤  max{ log 11, log|ξ| + log(11/6) }
//! ```
//!
//! combined with the functional equation `G_λ(f_λ(z)) = 2 G_λ(z)`. Escape
//! beyond radius 6 therefore proves positivity of the Green function
//! (non-membership in the filled Julia set), while staying inside radius 6
//! for `n` iterations proves `G_λ(z) ≤ log(11)/2ⁿ`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Escape radius beyond which the Green function is provably positive.
pub const ESCAPE_RADIUS: f64 = 6.0;
/// The certification above requires `|λ| ≤ 5`.
pub const MULTIPLIER_BOUND: f64 = 5.0;
/// Orbits beyond this magnitude stop early; squaring stays finite in f64.
pub const OVERFLOW_GUARD: f64 = 1e150;

#[inline]
fn step(lambda: Complex64, z: Complex64) -> Complex64 {
    lambda * z + z * z
}

fn check_multiplier(lambda: Complex64) -> Result<()> {
    if lambda.norm() > MULTIPLIER_BOUND {
        return Err(Error::Domain(format!(
            "certified evaluation requires |λ| ≤ {MULTIPLIER_BOUND}, got |λ| = {}",
            lambda.norm()
        )));
    }
    Ok(())
}

/// `f_λ^{∘n}(z)`, with an `(∞, ∞)` marker once the orbit passes the
/// overflow guard.
pub fn iterate(lambda: Complex64, z: Complex64, n: u32) -> Complex64 {
    let mut z = z;
    for _ in 0..n {
        if z.norm_sqr() > OVERFLOW_GUARD * OVERFLOW_GUARD {
            return Complex64::new(f64::INFINITY, f64::INFINITY);
        }
        z = step(lambda, z);
    }
    z
}

/// A certified estimate of `G_λ(z)`.
///
/// The true value lies in `[estimate − error_bound, estimate + error_bound]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenValue {
    pub estimate: f64,
    pub error_bound: f64,
    pub escaped: bool,
    /// Iterations performed: the escape index, or `max_iter`.
    pub iterations: u32,
}

/// Evaluates the Green function at `z`, stopping at the first iterate
/// beyond radius 6 or after `max_iter` steps.
///
/// On escape at step `n` the estimate is `log|z_n| / 2ⁿ` with error bound
/// `log(6)/2ⁿ`; without escape the estimate is `0` with error bound
/// `log(11)/2^max_iter` (an upper bound on `G`, which is nonnegative).
pub fn green(lambda: Complex64, z: Complex64, max_iter: u32) -> Result<GreenValue> {
    check_multiplier(lambda)?;
    let mut z = z;
    let mut n = 0u32;
    loop {
        let norm = z.norm();
        if norm > ESCAPE_RADIUS {
            let scale = (-(n as f64)).exp2();
            return Ok(GreenValue {
                estimate: norm.ln() * scale,
                error_bound: ESCAPE_RADIUS.ln() * scale,
                escaped: true,
                iterations: n,
            });
        }
        if n == max_iter {
            return Ok(GreenValue {
                estimate: 0.0,
                error_bound: (11.0f64).ln() * (-(n as f64)).exp2(),
                escaped: false,
                iterations: n,
            });
        }
        z = step(lambda, z);
        n += 1;
    }
}

/// A rigorous enclosure `lower ≤ G_λ(z) ≤ upper`, tightened by iterating
/// past the escape radius until `max_iter` steps or the overflow guard.
///
/// This is the work-horse behind the grid oracle's three-way cell
/// classification; [`green`] keeps the contract of stopping at first
/// escape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenEnclosure {
    pub lower: f64,
    pub upper: f64,
    pub escaped: bool,
    pub iterations: u32,
}

pub fn green_enclosure(lambda: Complex64, z: Complex64, max_iter: u32) -> Result<GreenEnclosure> {
    check_multiplier(lambda)?;
    let mut z = z;
    let mut n = 0u32;
    let mut escaped = false;
    loop {
        let norm = z.norm();
        if norm > ESCAPE_RADIUS {
            escaped = true;
        }
        if n == max_iter || norm > OVERFLOW_GUARD {
            let scale = (-(n as f64)).exp2();
            if escaped {
                // |z_n| > 6, both sides of the two-sided estimate apply.
                return Ok(GreenEnclosure {
                    lower: (norm.ln() - ESCAPE_RADIUS.ln()) * scale,
                    upper: (norm.ln() + (11.0f64 / 6.0).ln()) * scale,
                    escaped,
                    iterations: n,
                });
            }
            return Ok(GreenEnclosure {
                lower: 0.0,
                upper: (11.0f64).ln() * scale,
                escaped,
                iterations: n,
            });
        }
        z = step(lambda, z);
        n += 1;
    }
}

/// Verdict of the escape-time membership test for the filled Julia set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipVerdict {
    /// No escape within the iteration budget; membership is inconclusive.
    InsideSoFar,
    /// `|f_λ^{∘n}(z)| > 6` at the recorded step: rigorously outside `K_λ`.
    Escaped(u32),
}

/// Escape-time membership oracle for `K_λ`. Escape verdicts are rigorous;
/// `InsideSoFar` never is.
pub fn in_filled_julia(
    lambda: Complex64,
    z: Complex64,
    max_iter: u32,
) -> Result<MembershipVerdict> {
    check_multiplier(lambda)?;
    let mut z = z;
    for n in 0..=max_iter {
        if z.norm() > ESCAPE_RADIUS {
            return Ok(MembershipVerdict::Escaped(n));
        }
        if n == max_iter {
            break;
        }
        z = step(lambda, z);
    }
    Ok(MembershipVerdict::InsideSoFar)
}

/// The exact finite predicate `|f_λ^{∘p}(z)| ≤ R`, for `R > 6`.
///
/// If the orbit passes the overflow guard before `p` steps the predicate
/// is false (the orbit magnitude is increasing far beyond `R` by then).
pub fn iter_sublevel_member(lambda: Complex64, z: Complex64, p: u32, r_escape: f64) -> Result<bool> {
    if !r_escape.is_finite() || r_escape <= 6.0 {
        return Err(Error::Domain(format!(
            "iterate sublevel radius must exceed 6, got {r_escape}"
        )));
    }
    let zp = iterate(lambda, z, p);
    if !zp.re.is_finite() || !zp.im.is_finite() {
        return Ok(false);
    }
    Ok(zp.norm() <= r_escape)
}
