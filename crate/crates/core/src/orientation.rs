//! Random orientations of the Cayley tree, the integer cocycle they carry,
//! and the skew-product action on `Ω(T) × ℝ`.
//!
//! An orientation value `+1` means the edge points away from the root and
//! `-1` toward it. Under [`OrientationMeasure`] every edge independently
//! points toward the root with probability `p`. Values are produced lazily
//! from a keyed hash of the canonical edge, so an [`Orientation`] is a
//! sample of the full product measure that costs nothing until queried.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::GroupWord;
use crate::tree::{act_unchecked, geodesic, CanonicalEdge};

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct OrientationMeasure {
    p: f64,
    rank: usize,
}

impl OrientationMeasure {
    pub fn new(p: f64, rank: usize) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidProbability(p));
        }
        GroupWord::identity(rank)?;
        Ok(Self { p, rank })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The path sum is a drifted walk, hence transient, iff `p != 1/2`.
    pub fn is_transient(&self) -> bool {
        self.p != 0.5
    }

    pub fn basepoint(&self) -> GroupWord {
        GroupWord::identity(self.rank).expect("rank validated")
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn edge_hash(seed: u64, edge: &CanonicalEdge) -> u64 {
    let mut h = splitmix64(seed ^ 0x5851_f42d_4c95_7f2d);
    for &l in edge.parent().letters() {
        h = splitmix64(h ^ (l as u8 as u64));
    }
    // length tag keeps parent letters and step from aliasing
    h = splitmix64(h ^ ((edge.parent().len() as u64) << 8));
    splitmix64(h ^ (edge.step() as u8 as u64) ^ 0xa5a5_0000)
}

/// A point `ω ∈ Ω(T)`.
///
/// Internally `ω = shift · ω₀` where `ω₀` is the hashed sample for `seed`,
/// with optional explicit values (`overrides`) taking precedence.
#[derive(Clone, PartialEq, Debug)]
pub struct Orientation {
    seed: u64,
    measure: OrientationMeasure,
    shift: GroupWord,
    shift_inv: GroupWord,
    overrides: BTreeMap<CanonicalEdge, i8>,
}

impl Orientation {
    pub fn new(seed: u64, measure: OrientationMeasure) -> Self {
        let e = measure.basepoint();
        Self {
            seed,
            measure,
            shift: e.clone(),
            shift_inv: e,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_override(mut self, edge: CanonicalEdge, value: i8) -> Self {
        self.overrides.insert(edge, value.signum());
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn measure(&self) -> &OrientationMeasure {
        &self.measure
    }

    fn base_value(&self, edge: &CanonicalEdge) -> i8 {
        let u = (edge_hash(self.seed, edge) >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        if u < self.measure.p {
            -1
        } else {
            1
        }
    }

    pub fn value(&self, edge: &CanonicalEdge) -> i8 {
        if let Some(&v) = self.overrides.get(edge) {
            return v;
        }
        if self.shift.is_identity() {
            return self.base_value(edge);
        }
        let (src, flip) = act_unchecked(&self.shift_inv, edge);
        flip * self.base_value(&src)
    }

    /// `(g·ω)(e) = flip(g⁻¹, e) · ω(g⁻¹·e)`.
    pub fn pushforward(&self, g: &GroupWord) -> Orientation {
        if g.is_identity() {
            return self.clone();
        }
        let shift = g.mul_unchecked(&self.shift);
        let overrides = self
            .overrides
            .iter()
            .map(|(edge, &v)| {
                let (img, flip) = act_unchecked(g, edge);
                (img, flip * v)
            })
            .collect();
        Orientation {
            seed: self.seed,
            measure: self.measure,
            shift_inv: shift.inverse(),
            shift,
            overrides,
        }
    }

    /// Compares values edge by edge.
    pub fn agrees_on<'a>(
        &self,
        other: &Orientation,
        edges: impl IntoIterator<Item = &'a CanonicalEdge>,
    ) -> bool {
        edges.into_iter().all(|e| self.value(e) == other.value(e))
    }
}

pub fn orientation_value(omega: &Orientation, edge: &CanonicalEdge) -> i8 {
    omega.value(edge)
}

pub fn pushforward(g: &GroupWord, omega: &Orientation) -> Orientation {
    omega.pushforward(g)
}

/// `c(x,y)(ω)`: coherent minus incoherent edges along `[x, y]`.
pub fn path_cocycle(omega: &Orientation, x: &GroupWord, y: &GroupWord) -> Result<i64> {
    if x.rank() != omega.measure.rank {
        return Err(Error::RankMismatch(x.rank(), omega.measure.rank));
    }
    let path = geodesic(x, y)?;
    Ok(path
        .steps
        .iter()
        .map(|(edge, travel)| (*travel * omega.value(edge)) as i64)
        .sum())
}

/// `c(g, ω) = c(e, g·e)(ω)`.
pub fn group_cocycle(omega: &Orientation, g: &GroupWord) -> Result<i64> {
    path_cocycle(omega, &omega.measure.basepoint(), g)
}

#[derive(Clone, PartialEq, Debug)]
pub struct SkewPoint {
    pub orientation: Orientation,
    pub t: f64,
}

impl SkewPoint {
    pub fn new(orientation: Orientation, t: f64) -> Self {
        Self { orientation, t }
    }
}

/// `β_g(ω, t) = (g·ω, t + c(g⁻¹, ω))`.
pub fn skew_step(g: &GroupWord, pt: &SkewPoint) -> Result<SkewPoint> {
    let shift = group_cocycle(&pt.orientation, &g.inverse())?;
    Ok(SkewPoint {
        orientation: pt.orientation.pushforward(g),
        t: pt.t + shift as f64,
    })
}
