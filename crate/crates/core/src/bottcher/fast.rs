//! `O(N log N)` coefficient computation.
//!
//! With `U(x) = ψ(x⁻¹)·x = 1 + Σ b_k x^{k+1}` the functional equation
//! `ψ(w²) = ψ(w)² + c` becomes `U(x)² = U(x²) − c x²`. Only even powers of
//! `x` appear, so substituting `y = x²` leaves a power series `Û` with
//! `Û(y)² = Û(y²) − c y` and `b_{2j−1} = Û_j` (even-index `b` vanish).
//! `Û` is recovered as a series square root by Newton doubling; each
//! doubling costs a few truncated products, done with FFTs.

use num_complex::Complex64;
use rustfft::FftPlanner;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Products smaller than this are cheaper by schoolbook than by FFT.
const SCHOOLBOOK_LIMIT: usize = 4096;

struct SeriesCtx {
    planner: FftPlanner<f64>,
}

impl SeriesCtx {
    fn new() -> SeriesCtx {
        SeriesCtx {
            planner: FftPlanner::new(),
        }
    }

    /// `a · b mod y^out_len`.
    fn mul(&mut self, a: &[Complex64], b: &[Complex64], out_len: usize) -> Vec<Complex64> {
        let la = a.len().min(out_len);
        let lb = b.len().min(out_len);
        if la == 0 || lb == 0 {
            return vec![ZERO; out_len];
        }
        if la * lb <= SCHOOLBOOK_LIMIT {
            let mut out = vec![ZERO; out_len];
            for (i, &ai) in a[..la].iter().enumerate() {
                if ai == ZERO {
                    continue;
                }
                for (j, &bj) in b[..lb].iter().enumerate() {
                    if i + j >= out_len {
                        break;
                    }
                    out[i + j] += ai * bj;
                }
            }
            return out;
        }

        let size = (la + lb - 1).next_power_of_two();
        let mut fa = vec![ZERO; size];
        fa[..la].copy_from_slice(&a[..la]);
        let mut fb = vec![ZERO; size];
        fb[..lb].copy_from_slice(&b[..lb]);

        let fwd = self.planner.plan_fft_forward(size);
        fwd.process(&mut fa);
        fwd.process(&mut fb);
        for (x, y) in fa.iter_mut().zip(fb.iter()) {
            *x *= y;
        }
        let inv = self.planner.plan_fft_inverse(size);
        inv.process(&mut fa);

        let scale = 1.0 / size as f64;
        let mut out = vec![ZERO; out_len];
        for (k, slot) in out.iter_mut().enumerate().take((la + lb - 1).min(out_len)) {
            *slot = fa[k] * scale;
        }
        out
    }

    /// `a⁻¹ mod y^out_len` by Newton iteration; needs `a[0] ≠ 0`.
    fn inv(&mut self, a: &[Complex64], out_len: usize) -> Vec<Complex64> {
        let mut r = vec![ONE / a[0]];
        let mut prec = 1usize;
        while prec < out_len {
            let next = (2 * prec).min(out_len);
            // r ← r·(2 − a·r) mod y^next
            let mut t = self.mul(a, &r, next);
            for x in t.iter_mut() {
                *x = -*x;
            }
            t[0] += 2.0;
            r = self.mul(&r, &t, next);
            prec = next;
        }
        r
    }
}

/// Computes `b_1..b_n`, dense with even-index zeros.
pub(crate) fn coefficients(c: Complex64, n: usize) -> Vec<Complex64> {
    let m = n.div_ceil(2); // b_{2j−1} for j = 1..m covers every nonzero index ≤ n
    let mut ctx = SeriesCtx::new();

    // Û exact to degree 1: Û = 1 − (c/2)·y + O(y²).
    let mut u = vec![ONE, -c / 2.0];
    let mut exact = 1usize;
    while exact < m {
        let nd = (2 * exact + 1).min(m);
        // v = Û(y²) − c·y to degree nd (needs Û only to degree nd/2 ≤ exact).
        let mut v = vec![ZERO; nd + 1];
        for t in 0..=(nd / 2) {
            v[2 * t] = u[t];
        }
        v[1] = -c;
        // One Newton step: Û ← (Û + v/Û)/2, exact to degree nd.
        let iu = ctx.inv(&u, nd + 1);
        let q = ctx.mul(&v, &iu, nd + 1);
        let mut next = vec![ZERO; nd + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            let prev = if i < u.len() { u[i] } else { ZERO };
            *slot = 0.5 * (prev + q[i]);
        }
        u = next;
        exact = nd;
    }

    let mut b = vec![ZERO; n];
    for (j, &coef) in u.iter().enumerate().take(m + 1).skip(1) {
        let k = 2 * j - 1;
        if k <= n {
            b[k - 1] = coef;
        }
    }
    b
}
