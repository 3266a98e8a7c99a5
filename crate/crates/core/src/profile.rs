//! Separable test vectors `ξ = 1 ⊗ h` on `Ω × ℝ`.
//!
//! For a skew product whose ℝ-displacement under `g⁻¹` is the random
//! variable `D`, the matrix coefficient of two such vectors is
//! `⟨π(g)ξ, η⟩ = E[K_{ξ,η}(D)]` with the cross-correlation kernel
//! `K_{ξ,η}(s) = ∫ h_ξ(t + s) h_η(t) dt`. Every coefficient in the crate
//! reduces to an expectation of one of these kernels.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use statrs::function::erf::erf;

use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, integrate_pieces, integrate_real_line};

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInterval(lo, hi));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.lo && t <= self.hi
    }

    /// `λ((self + shift) ∩ other)`.
    pub fn overlap_shifted(&self, shift: f64, other: &Interval) -> f64 {
        ((self.hi + shift).min(other.hi) - (self.lo + shift).max(other.lo)).max(0.0)
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub enum ProfileKind {
    /// `𝟙_{[-n,n]} / √(2n)`, unit norm by construction.
    Window(usize),
    /// `1 / (1 + t²)`.
    Cauchy,
    /// `e^{-t²}`.
    Gaussian,
    /// `𝟙_I`.
    Indicator(Interval),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Normalization {
    Raw,
    Unit,
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ProfileVector {
    pub kind: ProfileKind,
    pub normalization: Normalization,
}

#[derive(Clone, Copy, PartialEq, Debug)]
enum Shape {
    Box { lo: f64, hi: f64, amp: f64 },
    Gauss,
    Cauchy,
}

fn cauchy_norm_sq() -> f64 {
    static CELL: OnceLock<f64> = OnceLock::new();
    *CELL.get_or_init(|| integrate_real_line(&|t| (1.0 + t * t).powi(-2), 1e-13))
}

fn gaussian_norm_sq() -> f64 {
    static CELL: OnceLock<f64> = OnceLock::new();
    *CELL.get_or_init(|| integrate_pieces(&|t: f64| (-2.0 * t * t).exp(), -8.0, 8.0, &[0.0], 1e-14))
}

impl ProfileVector {
    pub fn window(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("window size n must be >= 1".into()));
        }
        Ok(Self {
            kind: ProfileKind::Window(n),
            normalization: Normalization::Unit,
        })
    }

    pub fn cauchy() -> Self {
        Self {
            kind: ProfileKind::Cauchy,
            normalization: Normalization::Raw,
        }
    }

    pub fn gaussian() -> Self {
        Self {
            kind: ProfileKind::Gaussian,
            normalization: Normalization::Raw,
        }
    }

    pub fn indicator(interval: Interval) -> Self {
        Self {
            kind: ProfileKind::Indicator(interval),
            normalization: Normalization::Raw,
        }
    }

    pub fn unit(mut self) -> Self {
        self.normalization = Normalization::Unit;
        self
    }

    /// `‖h‖²` before normalization.
    pub fn raw_norm_sq(&self) -> f64 {
        match self.kind {
            ProfileKind::Window(_) => 1.0,
            ProfileKind::Cauchy => cauchy_norm_sq(),
            ProfileKind::Gaussian => gaussian_norm_sq(),
            ProfileKind::Indicator(i) => i.len(),
        }
    }

    /// Factor applied to the raw profile.
    pub fn scale(&self) -> f64 {
        match self.normalization {
            Normalization::Raw => 1.0,
            Normalization::Unit => 1.0 / self.raw_norm_sq().sqrt(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.raw_norm_sq().sqrt() * self.scale()
    }

    /// Support interval for indicator-type profiles.
    pub fn indicator_set(&self) -> Option<Interval> {
        match self.kind {
            ProfileKind::Window(n) => Some(Interval {
                lo: -(n as f64),
                hi: n as f64,
            }),
            ProfileKind::Indicator(i) => Some(i),
            _ => None,
        }
    }

    fn shape(&self) -> Shape {
        match self.kind {
            ProfileKind::Window(n) => Shape::Box {
                lo: -(n as f64),
                hi: n as f64,
                amp: 1.0 / (2.0 * n as f64).sqrt(),
            },
            ProfileKind::Indicator(i) => Shape::Box {
                lo: i.lo,
                hi: i.hi,
                amp: 1.0,
            },
            ProfileKind::Cauchy => Shape::Cauchy,
            ProfileKind::Gaussian => Shape::Gauss,
        }
    }

    /// Value of the (normalized) profile at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        self.scale() * shape_eval(self.shape(), t)
    }

    pub fn is_cauchy(&self) -> bool {
        matches!(self.kind, ProfileKind::Cauchy)
    }

    /// Draws `t` from a density `q` proportional to `|h|` and returns
    /// `(t, h(t) / q(t))`; the weight is constant for every profile.
    pub fn sample_weighted<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let scale = self.scale();
        match self.shape() {
            Shape::Box { lo, hi, amp } => {
                let t = lo + (hi - lo) * rng.random::<f64>();
                (t, scale * amp * (hi - lo))
            }
            Shape::Gauss => {
                let z: f64 = StandardNormal.sample(rng);
                (z / 2f64.sqrt(), scale * PI.sqrt())
            }
            Shape::Cauchy => {
                let u: f64 = rng.random();
                ((PI * (u - 0.5)).tan(), scale * PI)
            }
        }
    }
}

fn shape_eval(shape: Shape, t: f64) -> f64 {
    match shape {
        Shape::Box { lo, hi, amp } => {
            if t >= lo && t <= hi {
                amp
            } else {
                0.0
            }
        }
        Shape::Gauss => (-t * t).exp(),
        Shape::Cauchy => 1.0 / (1.0 + t * t),
    }
}

const SQRT_PI_2: f64 = 0.886_226_925_452_758; // √π / 2

/// `K_{ξ,η}(s) = ∫ h_ξ(t + s) h_η(t) dt`, closed form where one exists.
pub fn cross_kernel(xi: &ProfileVector, eta: &ProfileVector, s: f64) -> f64 {
    if let (ProfileKind::Window(n), ProfileKind::Window(m)) = (xi.kind, eta.kind) {
        // 1/√(2n)·1/√(2m) without the rounding of two separate roots
        let (a, b) = (n as f64, m as f64);
        let overlap = ((b.min(a - s) - (-b).max(-a - s)).max(0.0)) / (4.0 * a * b).sqrt();
        return overlap;
    }
    let raw = match (xi.shape(), eta.shape()) {
        (
            Shape::Box {
                lo: a,
                hi: b,
                amp: alpha,
            },
            Shape::Box {
                lo: c,
                hi: d,
                amp: beta,
            },
        ) => alpha * beta * ((b - s).min(d) - (a - s).max(c)).max(0.0),
        (Shape::Box { lo: a, hi: b, amp }, Shape::Gauss) => {
            amp * SQRT_PI_2 * (erf(b - s) - erf(a - s))
        }
        (Shape::Gauss, Shape::Box { lo: c, hi: d, amp }) => {
            amp * SQRT_PI_2 * (erf(d + s) - erf(c + s))
        }
        (Shape::Box { lo: a, hi: b, amp }, Shape::Cauchy) => {
            amp * ((b - s).atan() - (a - s).atan())
        }
        (Shape::Cauchy, Shape::Box { lo: c, hi: d, amp }) => {
            amp * ((d + s).atan() - (c + s).atan())
        }
        (Shape::Gauss, Shape::Gauss) => (PI / 2.0).sqrt() * (-s * s / 2.0).exp(),
        (Shape::Cauchy, Shape::Cauchy) => 2.0 * PI / (4.0 + s * s),
        (x, y) => cross_kernel_quadrature_raw(x, y, s),
    };
    xi.scale() * eta.scale() * raw
}

/// The same kernel by direct quadrature of the defining integral.
pub fn cross_kernel_quadrature(xi: &ProfileVector, eta: &ProfileVector, s: f64) -> f64 {
    xi.scale() * eta.scale() * cross_kernel_quadrature_raw(xi.shape(), eta.shape(), s)
}

fn cross_kernel_quadrature_raw(x: Shape, y: Shape, s: f64) -> f64 {
    let f = |t: f64| shape_eval(x, t + s) * shape_eval(y, t);
    let tol = 1e-12;
    match (x, y) {
        (Shape::Box { lo, hi, .. }, Shape::Box { lo: c, hi: d, .. }) => {
            integrate_pieces(&f, lo - s, hi - s, &[c, d], tol)
        }
        (Shape::Box { lo, hi, .. }, _) => adaptive_simpson(&f, lo - s, hi - s, tol),
        (_, Shape::Box { lo, hi, .. }) => adaptive_simpson(&f, lo, hi, tol),
        _ => integrate_real_line(&f, tol),
    }
}

/// Points where `s ↦ K(s)` fails to be smooth.
pub fn kernel_breakpoints(xi: &ProfileVector, eta: &ProfileVector) -> Vec<f64> {
    match (xi.shape(), eta.shape()) {
        (Shape::Box { lo: a, hi: b, .. }, Shape::Box { lo: c, hi: d, .. }) => {
            vec![a - d, b - d, a - c, b - c]
        }
        _ => Vec::new(),
    }
}

impl fmt::Display for ProfileVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ProfileKind::Window(n) => write!(f, "window:{n}")?,
            ProfileKind::Cauchy => f.write_str("cauchy")?,
            ProfileKind::Gaussian => f.write_str("gaussian")?,
            ProfileKind::Indicator(i) => write!(f, "indicator:{}:{}", i.lo, i.hi)?,
        }
        if self.normalization == Normalization::Unit && !matches!(self.kind, ProfileKind::Window(_))
        {
            f.write_str("@unit")?;
        }
        Ok(())
    }
}

impl FromStr for ProfileVector {
    type Err = Error;

    /// `window:N`, `cauchy`, `gaussian` or `indicator:LO:HI`, optionally
    /// followed by `@unit`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unrecognized profile {s:?}"));
        let (body, unit) = match s.trim().split_once('@') {
            Some((b, "unit")) => (b, true),
            Some((b, "raw")) => (b, false),
            Some(_) => return Err(bad()),
            None => (s.trim(), false),
        };
        let parts: Vec<&str> = body.split(':').collect();
        let profile = match parts.as_slice() {
            ["window", n] => ProfileVector::window(n.parse().map_err(|_| bad())?)?,
            ["cauchy"] => ProfileVector::cauchy(),
            ["gaussian"] => ProfileVector::gaussian(),
            ["indicator", lo, hi] => ProfileVector::indicator(Interval::new(
                lo.parse().map_err(|_| bad())?,
                hi.parse().map_err(|_| bad())?,
            )?),
            _ => return Err(bad()),
        };
        Ok(if unit { profile.unit() } else { profile })
    }
}
