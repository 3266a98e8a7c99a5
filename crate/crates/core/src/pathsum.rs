//! Exact law of the path sum `S_L = Σ ω(e)` over the `L` edges of an
//! outward geodesic, and the orientation-system coefficients it yields.
//!
//! Along a geodesic leaving the root every edge is crossed in its reference
//! direction, so each edge contributes `-1` with probability `p` and `+1`
//! otherwise. `S_L = L - 2J` with `J ~ Binomial(L, p)`, and `E[S_L] = L(1-2p)`.
//! The skew-product displacement `c(g, ω)` has exactly this law with
//! `L = |g|`, which is what makes the coefficients below exact.

use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};
use crate::group::GroupWord;
use crate::quad::KahanSum;

#[derive(Clone, PartialEq, Debug)]
pub struct PathSumLaw {
    len: usize,
    p: f64,
    /// `pmf[j] = P(S = L - 2j)`.
    pmf: Vec<f64>,
}

impl PathSumLaw {
    pub fn new(len: usize, p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidProbability(p));
        }
        let (lp, lq) = (p.ln(), (1.0 - p).ln());
        let pmf = (0..=len)
            .map(|j| {
                (ln_binomial(len as u64, j as u64) + j as f64 * lp + (len - j) as f64 * lq).exp()
            })
            .collect();
        Ok(Self { len, p, pmf })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `(value, probability)` pairs, from `L` down to `-L` in steps of 2.
    pub fn support(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.pmf
            .iter()
            .enumerate()
            .map(|(j, &pr)| (self.len as i64 - 2 * j as i64, pr))
    }

    pub fn prob(&self, value: i64) -> f64 {
        let l = self.len as i64;
        if value.abs() > l || (l - value) % 2 != 0 {
            return 0.0;
        }
        self.pmf[((l - value) / 2) as usize]
    }

    pub fn total_mass(&self) -> f64 {
        self.pmf.iter().copied().collect::<KahanSum>().value()
    }

    pub fn mean(&self) -> f64 {
        self.expect(|s| s as f64)
    }

    pub fn expect<F: Fn(i64) -> f64>(&self, f: F) -> f64 {
        self.support()
            .map(|(s, pr)| pr * f(s))
            .collect::<KahanSum>()
            .value()
    }
}

pub fn path_sum_law(len: usize, p: f64) -> Result<PathSumLaw> {
    PathSumLaw::new(len, p)
}

/// `⟨π(g)ξ_n, ξ_n⟩` for `ξ_n = 1 ⊗ 𝟙_{[-n,n]}/√(2n)`, i.e.
/// `E[max(2n - |S|, 0)] / 2n`.
pub fn exact_window_coefficient(g: &GroupWord, n: usize, p: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("window size n must be >= 1".into()));
    }
    let law = PathSumLaw::new(g.len(), p)?;
    let width = 2.0 * n as f64;
    Ok(law.expect(|s| (width - s.abs() as f64).max(0.0) / width))
}

/// `E[exp(-S²/2)]`: the unit-normalized coefficient of `1 ⊗ e^{-t²}`.
pub fn exact_gaussian_bound(g: &GroupWord, p: f64) -> Result<f64> {
    let law = PathSumLaw::new(g.len(), p)?;
    Ok(law.expect(|s| (-(s * s) as f64 / 2.0).exp()))
}
