//! Parameter-space arithmetic for the two quadratic normal forms.
//!
//! The family `f_λ(z) = λz + z²` is affinely conjugate to `Q_c(z) = z² + c`
//! via `z ↦ z + λ/2`, with `c = (λ/2)(1 − λ/2)`. All coefficient work in
//! this crate happens in the `c` form; the `λ` form is converted on input.

use num_complex::Complex64;

/// A quadratic parameter carried in both coordinates, with the rotation
/// number when the point comes from the unit circle `λ = e^{2iπt}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterPoint {
    /// Rotation number in `[0, 1)`, when known.
    pub t: Option<f64>,
    /// Unreduced representative `α` with `λ = e^{2iπα}`, when known.
    pub alpha: Option<f64>,
    /// Multiplier of the fixed point at the origin of `λz + z²`.
    pub lambda: Complex64,
    /// Parameter of the conjugate map `z² + c`.
    pub c: Complex64,
}

impl ParameterPoint {
    /// Builds a point from the multiplier coordinate.
    pub fn from_lambda(lambda: Complex64) -> Self {
        ParameterPoint {
            t: None,
            alpha: None,
            lambda,
            c: lambda_to_c(lambda),
        }
    }

    /// Builds a point from the `z² + c` coordinate, choosing the root
    /// `λ = 1 − √(1 − 4c)` of `λ² − 2λ + 4c = 0` (the principal branch,
    /// which maps `c = 0` to `λ = 0`).
    pub fn from_c(c: Complex64) -> Self {
        let lambda = Complex64::new(1.0, 0.0) - (Complex64::new(1.0, 0.0) - 4.0 * c).sqrt();
        ParameterPoint {
            t: None,
            alpha: None,
            lambda,
            c,
        }
    }
}

/// `c = (λ/2)(1 − λ/2)`, the conjugacy between the two families.
pub fn lambda_to_c(lambda: Complex64) -> Complex64 {
    let half = lambda / 2.0;
    half * (Complex64::new(1.0, 0.0) - half)
}

/// The point of the cardioid `λ = e^{2iπt}` with rotation number `t`.
///
/// `t` is reduced mod 1 for the stored rotation number; `alpha` keeps the
/// caller's value unreduced.
pub fn cardioid_point(t: f64) -> ParameterPoint {
    let lambda = Complex64::cis(2.0 * std::f64::consts::PI * t);
    ParameterPoint {
        t: Some(t.rem_euclid(1.0)),
        alpha: Some(t),
        lambda,
        c: lambda_to_c(lambda),
    }
}

/// The unique finite critical point `−λ/2` of `z ↦ λz + z²`.
pub fn critical_point(lambda: Complex64) -> Complex64 {
    -lambda / 2.0
}
