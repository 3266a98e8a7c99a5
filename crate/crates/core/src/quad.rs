//! Adaptive Simpson quadrature and compensated summation.

use std::f64::consts::PI;

/// Kahan–Babuška (Neumaier) compensated sum.
#[derive(Clone, Copy, Default, Debug)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

const MAX_DEPTH: u32 = 48;

/// Adaptive Simpson on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    refine(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // a minimum depth guards against symmetric integrands fooling the
    // first error estimate
    if depth + 6 <= MAX_DEPTH && (depth == 0 || delta.abs() <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Integrates over `[a, b]` split at the given interior breakpoints, which
/// is where integrands with kinks should be cut.
pub fn integrate_pieces<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> f64 {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| *x > a && *x < b)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut knots = Vec::with_capacity(cuts.len() + 2);
    knots.push(a);
    knots.extend(cuts);
    knots.push(b);
    let pieces = (knots.len() - 1) as f64;
    knots
        .windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], tol / pieces))
        .collect::<KahanSum>()
        .value()
}

/// Integral over the whole line of a function decaying at least like
/// `1/t²`, via `t = tan θ`.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: &F, tol: f64) -> f64 {
    let g = |theta: f64| {
        let c = theta.cos();
        if c <= 0.0 {
            return 0.0;
        }
        f(theta.tan()) / (c * c)
    };
    let h = PI / 2.0;
    integrate_pieces(&g, -h, h, &[0.0], tol)
}

pub fn normal_density(x: f64, sigma: f64) -> f64 {
    (-(x * x) / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * PI).sqrt())
}

/// Half-width of the truncated range used for expectations under
/// `Normal(0, σ²)`; the omitted tail mass is below `1e-15`.
pub const NORMAL_CUTOFF: f64 = 8.0;

/// `E[f(X)]` for `X ~ Normal(0, σ²)` by adaptive Simpson on `[-8σ, 8σ]`.
pub fn normal_expectation<F: Fn(f64) -> f64>(
    f: &F,
    sigma: f64,
    breakpoints: &[f64],
    tol: f64,
) -> f64 {
    if sigma == 0.0 {
        return f(0.0);
    }
    let span = NORMAL_CUTOFF * sigma;
    let mut cuts = breakpoints.to_vec();
    cuts.push(0.0);
    integrate_pieces(
        &|x| normal_density(x, sigma) * f(x),
        -span,
        span,
        &cuts,
        tol,
    )
}
