//! Geometry of the Cayley tree of `F_k` rooted at the identity.
//!
//! Vertices are group elements; `x` and `x·s` are adjacent for every letter
//! `s`. The group acts on the left. Every geometric edge has a canonical
//! form `(parent, step)` where `parent` is the endpoint nearer the root, and
//! its reference direction points away from the root.

use crate::error::{Error, Result};
use crate::group::{GroupWord, Letter};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalEdge {
    parent: GroupWord,
    step: Letter,
}

impl CanonicalEdge {
    /// Fails unless `parent·step` is one letter longer than `parent`.
    pub fn new(parent: GroupWord, step: Letter) -> Result<Self> {
        let idx = step.unsigned_abs() as usize;
        if idx == 0 || idx > parent.rank() {
            return Err(Error::LetterBeyondRank {
                index: idx,
                rank: parent.rank(),
            });
        }
        if parent.last() == Some(-step) {
            return Err(Error::InvalidParameter(format!(
                "edge ({parent}, {step}) points toward the root"
            )));
        }
        Ok(Self { parent, step })
    }

    /// Canonical form of the geometric edge joining `u` and `v`, together
    /// with `+1` if `u → v` is the reference direction and `-1` otherwise.
    pub fn between(u: &GroupWord, v: &GroupWord) -> Result<(Self, i8)> {
        let hop = u.inverse().multiply(v)?;
        if hop.len() != 1 {
            return Err(Error::InvalidParameter(format!(
                "{u} and {v} are not adjacent"
            )));
        }
        if v.len() == u.len() + 1 {
            Ok((
                Self {
                    parent: u.clone(),
                    step: hop.letters()[0],
                },
                1,
            ))
        } else {
            Ok((
                Self {
                    parent: v.clone(),
                    step: -hop.letters()[0],
                },
                -1,
            ))
        }
    }

    /// The edge from `child`'s parent to `child`; `None` at the root.
    pub fn to_vertex(child: &GroupWord) -> Option<Self> {
        let step = child.last()?;
        Some(Self {
            parent: child.prefix(child.len() - 1),
            step,
        })
    }

    pub fn parent(&self) -> &GroupWord {
        &self.parent
    }

    pub fn step(&self) -> Letter {
        self.step
    }

    pub fn child(&self) -> GroupWord {
        self.parent.times_letter(self.step)
    }

    pub fn rank(&self) -> usize {
        self.parent.rank()
    }
}

/// Ordered edges of the unique geodesic from `from` to `to`. Each step has
/// travel `+1` when crossed in its reference direction, `-1` otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeodesicPath {
    pub from: GroupWord,
    pub to: GroupWord,
    pub steps: Vec<(CanonicalEdge, i8)>,
}

impl GeodesicPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertices visited, starting at `from` and ending at `to`.
    pub fn vertices(&self) -> Vec<GroupWord> {
        let mut out = vec![self.from.clone()];
        for (edge, travel) in &self.steps {
            out.push(if *travel > 0 {
                edge.child()
            } else {
                edge.parent.clone()
            });
        }
        out
    }

    pub fn reversed(&self) -> GeodesicPath {
        GeodesicPath {
            from: self.to.clone(),
            to: self.from.clone(),
            steps: self
                .steps
                .iter()
                .rev()
                .map(|(e, t)| (e.clone(), -t))
                .collect(),
        }
    }
}

pub fn geodesic(x: &GroupWord, y: &GroupWord) -> Result<GeodesicPath> {
    x.distance(y)?;
    let common = x.common_prefix_len(y);
    let mut steps = Vec::with_capacity(x.len() + y.len() - 2 * common);
    for depth in (common..x.len()).rev() {
        steps.push((
            CanonicalEdge {
                parent: x.prefix(depth),
                step: x.letters()[depth],
            },
            -1,
        ));
    }
    for depth in common..y.len() {
        steps.push((
            CanonicalEdge {
                parent: y.prefix(depth),
                step: y.letters()[depth],
            },
            1,
        ));
    }
    Ok(GeodesicPath {
        from: x.clone(),
        to: y.clone(),
        steps,
    })
}

/// The branch point of three vertices: the deepest of the three pairwise
/// common prefixes.
pub fn median(x: &GroupWord, y: &GroupWord, z: &GroupWord) -> Result<GroupWord> {
    x.distance(y)?;
    y.distance(z)?;
    let xy = x.common_prefix_len(y);
    let yz = y.common_prefix_len(z);
    let xz = x.common_prefix_len(z);
    Ok(if xy >= yz && xy >= xz {
        x.prefix(xy)
    } else if yz >= xz {
        y.prefix(yz)
    } else {
        x.prefix(xz)
    })
}

/// Image of an edge under left multiplication by `g`. The flip is `-1`
/// exactly when `g` carries the reference direction of `edge` toward the
/// root.
pub fn act_on_edge(g: &GroupWord, edge: &CanonicalEdge) -> Result<(CanonicalEdge, i8)> {
    if g.rank() != edge.rank() {
        return Err(Error::RankMismatch(g.rank(), edge.rank()));
    }
    Ok(act_unchecked(g, edge))
}

pub(crate) fn act_unchecked(g: &GroupWord, edge: &CanonicalEdge) -> (CanonicalEdge, i8) {
    if g.is_identity() {
        return (edge.clone(), 1);
    }
    let near = g.mul_unchecked(&edge.parent);
    if near.last() == Some(-edge.step) {
        // g·parent·step is nearer the root than g·parent
        let far = near.prefix(near.len() - 1);
        (
            CanonicalEdge {
                parent: far,
                step: -edge.step,
            },
            -1,
        )
    } else {
        (
            CanonicalEdge {
                parent: near,
                step: edge.step,
            },
            1,
        )
    }
}
