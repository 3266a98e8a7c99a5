//! Koopman matrix coefficients of the two skew products, estimated exactly
//! (path-sum law, closed forms, quadrature) or by Monte Carlo through the
//! dynamics itself, plus the decay and almost-invariance sweeps built on
//! them.

use std::fmt;
use std::io::Write;
use std::path::Path;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::gaussian::{gaussian_skew_coefficient, gram_matrix, smoothed_overlap, CocycleLaw};
use crate::group::{shell_sample, shell_size, GroupWord};
use crate::mc::{self, block_rng};
use crate::orientation::{skew_step, Orientation, OrientationMeasure, SkewPoint};
use crate::pathsum::PathSumLaw;
use crate::profile::{cross_kernel, kernel_breakpoints, Interval, ProfileVector};
use crate::quad::{normal_expectation, KahanSum};

#[derive(Clone, Copy, PartialEq, Debug)]
pub enum System {
    /// `Ω(T) × ℝ` with the Bernoulli orientation measure.
    Orientation(OrientationMeasure),
    /// `Ω̂ × ℝ` with the Gaussian measure of the tree embedding of `F_rank`.
    Gaussian { rank: usize },
}

impl System {
    pub fn orientation(p: f64, rank: usize) -> Result<Self> {
        Ok(System::Orientation(OrientationMeasure::new(p, rank)?))
    }

    pub fn gaussian(rank: usize) -> Result<Self> {
        GroupWord::identity(rank)?;
        Ok(System::Gaussian { rank })
    }

    pub fn rank(&self) -> usize {
        match self {
            System::Orientation(m) => m.rank(),
            System::Gaussian { rank } => *rank,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            System::Orientation(_) => "orientation",
            System::Gaussian { .. } => "gaussian",
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Orientation(m) => write!(f, "orientation(p={})", m.p()),
            System::Gaussian { .. } => f.write_str("gaussian"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Exact,
    Quadrature,
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte-carlo",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Estimator {
    Exact,
    MonteCarlo {
        samples: usize,
        seed: u64,
        workers: usize,
    },
}

impl Estimator {
    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        Estimator::MonteCarlo {
            samples,
            seed,
            workers: 1,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CoefficientEstimate {
    pub value: f64,
    pub stderr: f64,
    pub method: Method,
    pub samples: usize,
    pub seed: Option<u64>,
}

impl CoefficientEstimate {
    fn exact(value: f64, method: Method) -> Self {
        Self {
            value,
            stderr: 0.0,
            method,
            samples: 0,
            seed: None,
        }
    }

    /// `|self - other| ≤ k·(combined stderr)`, with a floor for exact pairs.
    pub fn agrees_with(&self, other: &CoefficientEstimate, k: f64) -> bool {
        let se = (self.stderr.powi(2) + other.stderr.powi(2)).sqrt();
        (self.value - other.value).abs() <= k * se + 1e-12
    }
}

fn check_rank(system: &System, g: &GroupWord) -> Result<()> {
    if g.rank() != system.rank() {
        return Err(Error::RankMismatch(g.rank(), system.rank()));
    }
    Ok(())
}

fn check_supported(system: &System, xi: &ProfileVector, eta: &ProfileVector) -> Result<()> {
    if let System::Orientation(_) = system {
        if xi.is_cauchy() || eta.is_cauchy() {
            return Err(Error::Unsupported(
                xi.to_string(),
                eta.to_string(),
                system.name().into(),
            ));
        }
    }
    Ok(())
}

/// Draws the ℝ-displacement `D` of `β_{g⁻¹}`, starting the dynamics at
/// `(ω, t)` for a fresh `ω`, and returns the image of `t`.
struct Displacer {
    g_inv: GroupWord,
    kind: DisplacerKind,
}

enum DisplacerKind {
    Orientation(OrientationMeasure),
    Gaussian(Option<crate::gaussian::GaussianSystem>),
}

impl Displacer {
    fn new(system: &System, g: &GroupWord) -> Result<Self> {
        let kind = match system {
            System::Orientation(m) => DisplacerKind::Orientation(*m),
            System::Gaussian { .. } => DisplacerKind::Gaussian(if g.is_identity() {
                None
            } else {
                Some(gram_matrix(std::slice::from_ref(g))?)
            }),
        };
        Ok(Self {
            g_inv: g.inverse(),
            kind,
        })
    }

    fn image<R: Rng + RngCore>(&self, t: f64, rng: &mut R) -> f64 {
        match &self.kind {
            DisplacerKind::Orientation(m) => {
                let omega = Orientation::new(rng.next_u64(), *m);
                skew_step(&self.g_inv, &SkewPoint::new(omega, t))
                    .expect("ranks checked")
                    .t
            }
            // β_{g⁻¹}(ω, t) = (π̂(g⁻¹)ω, t + ⟨ω, c(g)⟩)
            DisplacerKind::Gaussian(None) => t,
            DisplacerKind::Gaussian(Some(sys)) => t + sys.sample_with(rng)[0],
        }
    }
}

/// `φ_{ξ,η}(g) = ⟨π(g)ξ, η⟩` for the Koopman representation of `system`.
pub fn coefficient(
    system: &System,
    g: &GroupWord,
    xi: &ProfileVector,
    eta: &ProfileVector,
    estimator: Estimator,
) -> Result<CoefficientEstimate> {
    check_rank(system, g)?;
    check_supported(system, xi, eta)?;
    match estimator {
        Estimator::Exact => exact_coefficient(system, g, xi, eta),
        Estimator::MonteCarlo {
            samples,
            seed,
            workers,
        } => {
            if samples == 0 {
                return Err(Error::InvalidParameter("samples must be > 0".into()));
            }
            let displacer = Displacer::new(system, g)?;
            let summary = mc::run(samples, seed, workers, |rng| {
                let (t, weight) = eta.sample_weighted(rng);
                weight * xi.eval(displacer.image(t, rng))
            });
            Ok(CoefficientEstimate {
                value: summary.mean,
                stderr: summary.stderr,
                method: Method::MonteCarlo,
                samples,
                seed: Some(seed),
            })
        }
    }
}

fn exact_coefficient(
    system: &System,
    g: &GroupWord,
    xi: &ProfileVector,
    eta: &ProfileVector,
) -> Result<CoefficientEstimate> {
    match system {
        System::Orientation(m) => {
            let law = PathSumLaw::new(g.len(), m.p())?;
            let v = law.expect(|s| cross_kernel(xi, eta, s as f64));
            Ok(CoefficientEstimate::exact(v, Method::Exact))
        }
        System::Gaussian { .. } => {
            if xi == eta {
                let v = gaussian_skew_coefficient(g, xi)?;
                let method = if xi.is_cauchy() {
                    Method::Quadrature
                } else {
                    Method::Exact
                };
                return Ok(CoefficientEstimate::exact(v, method));
            }
            if let (Some(i), Some(j)) = (xi.indicator_set(), eta.indicator_set()) {
                // K(s) = λ((I - s) ∩ J) and the law of D is symmetric
                let sigma = CocycleLaw::of(g).sigma;
                let amp = box_amplitude(xi) * box_amplitude(eta);
                let v = amp * smoothed_overlap(sigma, &i, &j)?;
                return Ok(CoefficientEstimate::exact(v, Method::Exact));
            }
            let sigma = CocycleLaw::of(g).sigma;
            let v = normal_expectation(
                &|x| cross_kernel(xi, eta, x),
                sigma,
                &kernel_breakpoints(xi, eta),
                1e-12,
            );
            Ok(CoefficientEstimate::exact(v, Method::Quadrature))
        }
    }
}

fn box_amplitude(p: &ProfileVector) -> f64 {
    let set = p.indicator_set().expect("indicator-type profile");
    p.eval(0.5 * (set.lo() + set.hi()))
}

fn indicator_of(profile: &ProfileVector) -> Result<Interval> {
    profile
        .indicator_set()
        .ok_or_else(|| Error::NotIndicator(profile.to_string()))
}

/// `μ(gA Δ A) = 2(μ(A) - ⟨π(g)χ_A, χ_A⟩)` for `A = Ω × I`.
pub fn symmetric_difference(system: &System, g: &GroupWord, a: &ProfileVector) -> Result<f64> {
    check_rank(system, g)?;
    let set = indicator_of(a)?;
    let overlap = match system {
        System::Orientation(m) => {
            let law = PathSumLaw::new(g.len(), m.p())?;
            law.expect(|s| set.overlap_shifted(-(s as f64), &set))
        }
        System::Gaussian { .. } => smoothed_overlap(CocycleLaw::of(g).sigma, &set, &set)?,
    };
    Ok((2.0 * (set.len() - overlap)).max(0.0))
}

/// Direct Monte Carlo of `(μ⊗λ)(β_g A Δ A)`: `t` uniform on a window that
/// contains both sets, membership in `β_g A` decided by running `β_{g⁻¹}`.
pub fn symmetric_difference_mc(
    system: &System,
    g: &GroupWord,
    a: &ProfileVector,
    samples: usize,
    seed: u64,
    workers: usize,
) -> Result<CoefficientEstimate> {
    check_rank(system, g)?;
    let set = indicator_of(a)?;
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be > 0".into()));
    }
    let reach = match system {
        System::Orientation(_) => g.len() as f64,
        // Gaussian tail beyond 10σ is below 1e-22
        System::Gaussian { .. } => 10.0 * CocycleLaw::of(g).sigma,
    };
    let (lo, hi) = (set.lo() - reach, set.hi() + reach);
    let displacer = Displacer::new(system, g)?;
    let summary = mc::run(samples, seed, workers, |rng| {
        let t = lo + (hi - lo) * rng.random::<f64>();
        let moved = displacer.image(t, rng);
        if set.contains(t) != set.contains(moved) {
            hi - lo
        } else {
            0.0
        }
    });
    Ok(CoefficientEstimate {
        value: summary.mean,
        stderr: summary.stderr,
        method: Method::MonteCarlo,
        samples,
        seed: Some(seed),
    })
}

#[derive(Clone, PartialEq, Debug)]
pub struct DecayRow {
    pub radius: usize,
    pub exhaustive: bool,
    pub entries: Vec<(GroupWord, CoefficientEstimate)>,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

impl DecayRow {
    pub fn count(&self) -> usize {
        self.entries.len()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct DecayCurve {
    pub system: String,
    pub profile: ProfileVector,
    pub seed: u64,
    pub rows: Vec<DecayRow>,
}

fn word_seed(seed: u64, radius: usize, index: usize) -> u64 {
    let mut rng = block_rng(seed, ((radius as u64) << 32) | index as u64);
    rng.next_u64()
}

/// Evaluates `⟨π(g)ξ, ξ⟩` over every word of length `L = 1..=max_radius`,
/// or over `per_shell_cap` uniformly sampled words when a shell is larger.
pub fn decay_sweep(
    system: &System,
    profile: &ProfileVector,
    max_radius: usize,
    per_shell_cap: usize,
    estimator: Estimator,
    seed: u64,
) -> Result<DecayCurve> {
    if max_radius == 0 {
        return Err(Error::InvalidParameter("max_radius must be >= 1".into()));
    }
    if per_shell_cap == 0 {
        return Err(Error::InvalidParameter("per_shell_cap must be >= 1".into()));
    }
    check_supported(system, profile, profile)?;
    let mut rows = Vec::with_capacity(max_radius);
    for radius in 1..=max_radius {
        let mut rng = block_rng(seed, u64::MAX - radius as u64);
        let words = shell_sample(system.rank(), radius, per_shell_cap, &mut rng)?;
        let mut entries = Vec::with_capacity(words.len());
        for (idx, g) in words.into_iter().enumerate() {
            let est = match estimator {
                Estimator::Exact => Estimator::Exact,
                Estimator::MonteCarlo {
                    samples, workers, ..
                } => Estimator::MonteCarlo {
                    samples,
                    seed: word_seed(seed, radius, idx),
                    workers,
                },
            };
            let c = coefficient(system, &g, profile, profile, est)?;
            entries.push((g, c));
        }
        let values: Vec<f64> = entries.iter().map(|(_, c)| c.value).collect();
        let mean = values.iter().copied().collect::<KahanSum>().value() / values.len() as f64;
        rows.push(DecayRow {
            radius,
            exhaustive: shell_size(system.rank(), radius) <= per_shell_cap as u128,
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean,
            entries,
        });
    }
    Ok(DecayCurve {
        system: system.to_string(),
        profile: *profile,
        seed,
        rows,
    })
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SweepRow {
    pub n: usize,
    pub sup_defect: f64,
    /// Certified upper bound on `sup_defect`.
    pub bound: f64,
}

#[derive(Clone, PartialEq, Debug)]
pub struct SweepTable {
    pub system: String,
    pub ball_radius: usize,
    pub rows: Vec<SweepRow>,
}

/// `sup_{g ∈ B(R)} (1 - ⟨π(g)ξ_n, ξ_n⟩)` for each window size `n`.
///
/// Both systems' window coefficients depend on `g` only through `|g|`, so
/// the ball is scanned shell by shell with at most `per_shell_cap` words.
pub fn almost_invariant_sweep(
    system: &System,
    ball_radius: usize,
    window_sizes: &[usize],
    per_shell_cap: usize,
    seed: u64,
) -> Result<SweepTable> {
    let mut shells = Vec::new();
    for radius in 0..=ball_radius {
        let mut rng = block_rng(seed, u64::MAX - radius as u64);
        shells.extend(shell_sample(
            system.rank(),
            radius,
            per_shell_cap.max(1),
            &mut rng,
        )?);
    }
    let mut rows = Vec::with_capacity(window_sizes.len());
    for &n in window_sizes {
        let window = ProfileVector::window(n)?;
        let mut sup: f64 = 0.0;
        for g in &shells {
            let c = coefficient(system, g, &window, &window, Estimator::Exact)?;
            sup = sup.max(1.0 - c.value);
        }
        let r = ball_radius as f64;
        let bound = match system {
            // |S| ≤ |g| pointwise
            System::Orientation(_) => r / (2.0 * n as f64),
            // E|X| / 2n with X ~ Normal(0, R)
            System::Gaussian { .. } => r.sqrt() / (n as f64 * (2.0 * std::f64::consts::PI).sqrt()),
        };
        rows.push(SweepRow {
            n,
            sup_defect: sup.max(0.0),
            bound,
        });
    }
    Ok(SweepTable {
        system: system.to_string(),
        ball_radius,
        rows,
    })
}

pub const DECAY_HEADER: &str = "system,profile,radius,word,method,value,stderr,samples,seed";
pub const SWEEP_HEADER: &str = "system,ball_radius,n,sup_defect,bound";

/// Seventeen significant digits, fixed exponent notation.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_decay_csv<W: Write>(curve: &DecayCurve, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{DECAY_HEADER}")?;
    for row in &curve.rows {
        for (g, c) in &row.entries {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                curve.system,
                curve.profile,
                row.radius,
                g,
                c.method,
                format_real(c.value),
                format_real(c.stderr),
                c.samples,
                c.seed.unwrap_or(curve.seed)
            )?;
        }
    }
    out.flush()
}

pub fn write_sweep_csv<W: Write>(table: &SweepTable, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for row in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            table.system,
            table.ball_radius,
            row.n,
            format_real(row.sup_defect),
            format_real(row.bound)
        )?;
    }
    out.flush()
}

pub enum CsvResult<'a> {
    Decay(&'a DecayCurve),
    Sweep(&'a SweepTable),
}

pub fn emit_csv(result: CsvResult<'_>, path: &Path) -> std::io::Result<()> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    match result {
        CsvResult::Decay(c) => write_decay_csv(c, file),
        CsvResult::Sweep(t) => write_sweep_csv(t, file),
    }
}
