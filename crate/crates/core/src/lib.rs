//! Numerical laboratory for measure-preserving skew products of free groups
//! acting on their Cayley trees.
//!
//! Two dynamical systems are built on top of the tree geometry of `F_k`:
//!
//! * the Bernoulli orientation system `Ω(T) × ℝ`, whose ℝ-displacement is an
//!   integer cocycle counting coherent minus incoherent edges, and
//! * the Gaussian system `Ω̂ × ℝ`, whose displacement is the Gaussian image
//!   of the tree-embedding cocycle.
//!
//! Their Koopman matrix coefficients are computed exactly where a closed
//! form exists and by Monte Carlo through the dynamics otherwise, which lets
//! the crate check decay at infinity and almost-invariance numerically. The
//! [`hs`] module carries the finite-dimensional trace identities for the
//! adjoint action on Hilbert–Schmidt operators.

pub mod cli;
pub mod config;
pub mod error;
pub mod gaussian;
pub mod group;
pub mod hs;
pub mod lab;
pub mod mc;
pub mod orientation;
pub mod pathsum;
pub mod profile;
pub mod quad;
pub mod selftest;
pub mod tree;

pub use error::{Error, Result};
pub use gaussian::{CocycleLaw, GaussianSystem};
pub use group::GroupWord;
pub use hs::{FiniteUnitary, HSOperator};
pub use lab::{CoefficientEstimate, DecayCurve, Estimator, Method, System};
pub use orientation::{Orientation, OrientationMeasure, SkewPoint};
pub use pathsum::PathSumLaw;
pub use profile::{Interval, ProfileVector};
pub use tree::{CanonicalEdge, GeodesicPath};
