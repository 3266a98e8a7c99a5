//! Finite marginals of the Gaussian skew product built from the tree
//! embedding of `F_k`.
//!
//! The embedding cocycle satisfies `‖c(g) - c(h)‖² = |h⁻¹g|`, so by
//! polarization `⟨c(g), c(h)⟩` is the Gromov product
//! `(|g| + |h| - |h⁻¹g|) / 2`, which on a tree is the length of the common
//! prefix. The Gaussian functor turns each `c(g)` into a centered normal
//! variable with this covariance, and the ℝ-displacement of the skew
//! product under `g` is one such variable with variance `|g|`.

use std::collections::HashSet;
use std::f64::consts::PI;

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use statrs::function::erf::{erf, erfc};

use crate::error::{Error, Result};
use crate::group::GroupWord;
use crate::profile::{Interval, ProfileKind, ProfileVector};
use crate::quad::{integrate_real_line, normal_expectation};

/// Jitter ladder tried in order until factorization succeeds.
const JITTERS: [f64; 8] = [0.0, 1e-16, 1e-15, 1e-14, 1e-13, 1e-12, 1e-11, 1e-9];

pub fn gromov_product(g: &GroupWord, h: &GroupWord) -> Result<f64> {
    let d = g.distance(h)?;
    Ok((g.len() + h.len()) as f64 / 2.0 - d as f64 / 2.0)
}

#[derive(Clone, Debug)]
pub struct GaussianSystem {
    words: Vec<GroupWord>,
    gram: DMatrix<f64>,
    chol: DMatrix<f64>,
    jitter: f64,
}

impl GaussianSystem {
    pub fn words(&self) -> &[GroupWord] {
        &self.words
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn chol(&self) -> &DMatrix<f64> {
        &self.chol
    }

    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.gram.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest entrywise deviation of `chol·cholᵀ` from the Gram matrix.
    /// Rows of zero-length words are exact zeros; the jitter only touches
    /// the remaining block.
    pub fn reconstruction_error(&self) -> f64 {
        let recon = &self.chol * self.chol.transpose();
        let mut target = self.gram.clone();
        for (i, w) in self.words.iter().enumerate() {
            if !w.is_identity() {
                target[(i, i)] += self.jitter;
            }
        }
        (recon - target).abs().max()
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> DVector<f64> {
        let z = DVector::from_fn(self.dim(), |_, _| StandardNormal.sample(rng));
        &self.chol * z
    }

    pub fn sample(&self, seed: u64) -> DVector<f64> {
        self.sample_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }
}

pub fn gram_matrix(words: &[GroupWord]) -> Result<GaussianSystem> {
    if words.is_empty() {
        return Err(Error::EmptyWordList);
    }
    let mut seen = HashSet::new();
    for w in words {
        if !seen.insert(w) {
            return Err(Error::DuplicateWord(w.to_string()));
        }
        if w.rank() != words[0].rank() {
            return Err(Error::RankMismatch(words[0].rank(), w.rank()));
        }
    }
    let n = words.len();
    let mut gram = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = gromov_product(&words[i], &words[j])?;
            gram[(i, j)] = v;
            gram[(j, i)] = v;
        }
    }
    // zero-variance words (the identity) get an exactly zero factor row
    let active: Vec<usize> = (0..n).filter(|&i| !words[i].is_identity()).collect();
    let sub = DMatrix::from_fn(active.len(), active.len(), |a, b| {
        gram[(active[a], active[b])]
    });
    let mut chol = DMatrix::zeros(n, n);
    let mut used = None;
    if active.is_empty() {
        used = Some(0.0);
    } else {
        for &jitter in &JITTERS {
            let mut m = sub.clone();
            for d in 0..m.nrows() {
                m[(d, d)] += jitter;
            }
            if let Some(c) = Cholesky::new(m) {
                let l = c.l();
                for (a, &i) in active.iter().enumerate() {
                    for (b, &j) in active.iter().enumerate() {
                        chol[(i, j)] = l[(a, b)];
                    }
                }
                used = Some(jitter);
                break;
            }
        }
    }
    let jitter = used.ok_or(Error::FactorizationFailed(JITTERS[JITTERS.len() - 1]))?;
    Ok(GaussianSystem {
        words: words.to_vec(),
        gram,
        chol,
        jitter,
    })
}

pub fn sample_cocycle_vector(sys: &GaussianSystem, seed: u64) -> DVector<f64> {
    sys.sample(seed)
}

/// Law of the ℝ-displacement `⟨ω, c(g)⟩ ~ Normal(0, |g|)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CocycleLaw {
    pub sigma: f64,
}

impl CocycleLaw {
    pub fn of(g: &GroupWord) -> Self {
        Self {
            sigma: (g.len() as f64).sqrt(),
        }
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be >= 0, got {sigma}"
        )));
    }
    Ok(())
}

/// `E[max(2n - |X|, 0)] / 2n` for `X ~ Normal(0, σ²)`, in closed form:
/// `(2n·erf(2n/(σ√2)) - σ√(2/π)(1 - e^{-2n²/σ²})) / 2n`.
pub fn gaussian_window_coefficient(sigma: f64, n: usize) -> Result<f64> {
    check_sigma(sigma)?;
    if n == 0 {
        return Err(Error::InvalidParameter("window size n must be >= 1".into()));
    }
    if sigma == 0.0 {
        return Ok(1.0);
    }
    let width = 2.0 * n as f64;
    let nf = n as f64;
    let mass = erf(width / (sigma * 2f64.sqrt()));
    let partial_mean = sigma * (2.0 / PI).sqrt() * (-(2.0 * nf * nf) / (sigma * sigma)).exp_m1();
    Ok((width * mass + partial_mean) / width)
}

/// The defining integral of [`gaussian_window_coefficient`] by quadrature.
pub fn gaussian_window_coefficient_quadrature(sigma: f64, n: usize) -> Result<f64> {
    check_sigma(sigma)?;
    if n == 0 {
        return Err(Error::InvalidParameter("window size n must be >= 1".into()));
    }
    let width = 2.0 * n as f64;
    Ok(normal_expectation(
        &|x: f64| (width - x.abs()).max(0.0) / width,
        sigma,
        &[-width, width],
        1e-12,
    ))
}

/// Autocorrelation of `h(t) = 1/(1+t²)`, in closed form `2π/(4+x²)`.
pub fn cauchy_kernel(x: f64) -> f64 {
    2.0 * PI / (4.0 + x * x)
}

/// `∫ h(t) h(t+x) dt` by quadrature; the check on [`cauchy_kernel`].
pub fn cauchy_kernel_quadrature(x: f64) -> f64 {
    integrate_real_line(
        &|t| 1.0 / ((1.0 + t * t) * (1.0 + (t + x) * (t + x))),
        1e-13,
    )
}

/// `E[K(X)]`, `X ~ Normal(0, σ²)`: the raw coefficient of `1 ⊗ 1/(1+t²)`.
pub fn cauchy_coefficient(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(normal_expectation(&cauchy_kernel, sigma, &[], 1e-13))
}

fn ramp_expectation(m: f64, sigma: f64) -> f64 {
    // E[max(m + X, 0)] = mΦ(m/σ) + σφ(m/σ)
    if sigma == 0.0 {
        return m.max(0.0);
    }
    let z = m / sigma;
    let cdf = 0.5 * erfc(-z / 2f64.sqrt());
    let pdf = (-(z * z) / 2.0).exp() / (2.0 * PI).sqrt();
    m * cdf + sigma * pdf
}

/// `E[λ((I + X) ∩ J)]` for `X ~ Normal(0, σ²)`.
pub fn smoothed_overlap(sigma: f64, i: &Interval, j: &Interval) -> Result<f64> {
    check_sigma(sigma)?;
    let (a, b, c, d) = (i.lo(), i.hi(), j.lo(), j.hi());
    let v = ramp_expectation(b - c, sigma)
        - ramp_expectation(b - d, sigma)
        - ramp_expectation(a - c, sigma)
        + ramp_expectation(a - d, sigma);
    Ok(v.max(0.0))
}

pub fn smoothed_overlap_quadrature(sigma: f64, i: &Interval, j: &Interval) -> Result<f64> {
    check_sigma(sigma)?;
    let (a, b, c, d) = (i.lo(), i.hi(), j.lo(), j.hi());
    Ok(normal_expectation(
        &|x| i.overlap_shifted(x, j),
        sigma,
        &[c - b, c - a, d - b, d - a],
        1e-12,
    ))
}

/// `(μ⊗λ)(β_g(Ω̂×I) ∩ (Ω̂×J))`.
pub fn interval_overlap_measure(g: &GroupWord, i: &Interval, j: &Interval) -> Result<f64> {
    smoothed_overlap(CocycleLaw::of(g).sigma, i, j)
}

/// `⟨π(g)ξ, ξ⟩` in the Gaussian skew product. Depends on `g` only through
/// `|g|`, since `‖c(g⁻¹)‖² = |g|`.
pub fn gaussian_skew_coefficient(g: &GroupWord, profile: &ProfileVector) -> Result<f64> {
    let sigma = CocycleLaw::of(g).sigma;
    let scale_sq = profile.scale().powi(2);
    match profile.kind {
        ProfileKind::Window(n) => gaussian_window_coefficient(sigma, n),
        ProfileKind::Cauchy => Ok(scale_sq * cauchy_coefficient(sigma)?),
        ProfileKind::Gaussian => Ok(scale_sq * (PI / 2.0).sqrt() / (1.0 + sigma * sigma).sqrt()),
        ProfileKind::Indicator(i) => Ok(scale_sq * smoothed_overlap(sigma, &i, &i)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ball;

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s, 2).unwrap()
    }

    #[test]
    fn gram_examples() {
        let sys = gram_matrix(&[w("")]).unwrap();
        assert_eq!(sys.gram()[(0, 0)], 0.0);
        assert_eq!(sys.sample(3)[0], 0.0);
        assert_eq!(gromov_product(&w("ab"), &w("aB")).unwrap(), 1.0);
        assert!(matches!(
            gram_matrix(&[w("a"), w("a")]),
            Err(Error::DuplicateWord(_))
        ));
        assert_eq!(gram_matrix(&[]).unwrap_err(), Error::EmptyWordList);
    }

    #[test]
    fn gromov_product_is_common_prefix_length() {
        let words = ball(3, 2).unwrap();
        for g in &words {
            for h in &words {
                assert_eq!(gromov_product(g, h).unwrap(), g.common_prefix_len(h) as f64);
            }
        }
    }

    #[test]
    fn gram_diagonal_is_word_length_and_factor_reconstructs() {
        let words = ball(3, 2).unwrap();
        let sys = gram_matrix(&words).unwrap();
        for (i, g) in words.iter().enumerate() {
            assert_eq!(sys.gram()[(i, i)], g.len() as f64);
        }
        assert!(sys.jitter() <= 1e-9);
        assert!(sys.reconstruction_error() <= 1e-10);
        assert!(sys.min_eigenvalue() >= -1e-8);
    }

    #[test]
    fn window_closed_form_matches_quadrature() {
        for sigma in [0.0, 0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 20.0] {
            for n in [1usize, 2, 5, 10, 100] {
                let a = gaussian_window_coefficient(sigma, n).unwrap();
                let b = gaussian_window_coefficient_quadrature(sigma, n).unwrap();
                assert!((a - b).abs() < 1e-9, "σ={sigma} n={n}: {a} vs {b}");
                assert!((0.0..=1.0).contains(&a));
            }
        }
        // 1 - 1/(n√(2π)) asymptotics at σ = 1
        let v = gaussian_window_coefficient_quadrature(1.0, 100).unwrap();
        assert!((v - (1.0 - 1.0 / (100.0 * (2.0 * PI).sqrt()))).abs() < 1e-6);
    }

    #[test]
    fn cauchy_kernel_identity() {
        assert!((cauchy_kernel_quadrature(0.0) - PI / 2.0).abs() < 1e-10);
        for x in [0.0, 1.0, 5.0, 20.0] {
            let k = cauchy_kernel_quadrature(x);
            assert!((k * (4.0 + x * x) - 2.0 * PI).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn cauchy_coefficient_decreases() {
        assert!((cauchy_coefficient(0.0).unwrap() - PI / 2.0).abs() < 1e-15);
        let vals: Vec<f64> = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 10.0, 100.0]
            .iter()
            .map(|&s| cauchy_coefficient(s).unwrap())
            .collect();
        assert!(vals.windows(2).all(|p| p[1] < p[0]));
        // ≈ π²/(σ√(2π)) for large σ
        assert!((vals.last().unwrap() - PI * PI / (100.0 * (2.0 * PI).sqrt())).abs() < 1e-3);
    }

    #[test]
    fn overlap_closed_form_matches_quadrature() {
        let unit = Interval::new(0.0, 1.0).unwrap();
        let other = Interval::new(-0.5, 2.5).unwrap();
        for sigma in [0.0, 0.3, 1.0, 2.0, 5.0] {
            for (i, j) in [(unit, unit), (unit, other), (other, unit)] {
                let a = smoothed_overlap(sigma, &i, &j).unwrap();
                let b = smoothed_overlap_quadrature(sigma, &i, &j).unwrap();
                assert!((a - b).abs() < 1e-9, "σ={sigma}: {a} vs {b}");
            }
        }
        assert_eq!(interval_overlap_measure(&w(""), &unit, &unit).unwrap(), 1.0);
    }

    #[test]
    fn overlap_decays_with_length() {
        let unit = Interval::new(0.0, 1.0).unwrap();
        let vals: Vec<f64> = [1usize, 4, 9, 16, 25]
            .iter()
            .map(|&l| {
                let g = GroupWord::from_letters(2, &vec![2; l]).unwrap();
                interval_overlap_measure(&g, &unit, &unit).unwrap()
            })
            .collect();
        assert!(vals.windows(2).all(|p| p[1] < p[0]));
        assert!(vals[4] < 0.1);
    }

    #[test]
    fn skew_coefficient_depends_only_on_length() {
        let p = ProfileVector::cauchy();
        let a = gaussian_skew_coefficient(&w("abAB"), &p).unwrap();
        let b = gaussian_skew_coefficient(&w("aaaa"), &p).unwrap();
        assert_eq!(a, b);
        let win = ProfileVector::window(1).unwrap();
        assert_eq!(gaussian_skew_coefficient(&w(""), &win).unwrap(), 1.0);
        assert_eq!(
            gaussian_skew_coefficient(&w("b"), &win).unwrap(),
            gaussian_window_coefficient(1.0, 1).unwrap()
        );
    }
}
