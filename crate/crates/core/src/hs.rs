//! Finite-dimensional Hilbert–Schmidt operators under unitary conjugation.
//!
//! Inner products are linear in the first slot: `⟨x, y⟩ = Σ xᵢ ȳᵢ`. The
//! rank-one operator `Ψ(ξ ⊗ ξ')` sends `η` to `⟨η, ξ⟩ ξ'`, i.e. it is the
//! matrix `ξ' ξ*`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type CVector = DVector<Complex64>;

const UNITARY_TOL: f64 = 1e-10;
const UNIT_VECTOR_TOL: f64 = 1e-12;

pub fn inner(x: &CVector, y: &CVector) -> Complex64 {
    x.iter().zip(y.iter()).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &CVector) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn random_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    DVector::from_fn(dim, |_, _| {
        Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    })
}

pub fn random_real_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    let v = CVector::from_fn(dim, |_, _| Complex64::new(StandardNormal.sample(rng), 0.0));
    let n = norm(&v);
    v / Complex64::new(n, 0.0)
}

pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    let v = random_vector(dim, rng);
    let n = norm(&v);
    v.map(|z| z / n)
}

#[derive(Clone, PartialEq, Debug)]
pub struct HSOperator {
    entries: DMatrix<Complex64>,
}

impl HSOperator {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch(entries.nrows(), entries.ncols()));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidParameter("non-finite entry".into()));
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn adjoint(&self) -> HSOperator {
        HSOperator {
            entries: self.entries.adjoint(),
        }
    }

    pub fn hs_norm_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hs_norm(&self) -> f64 {
        self.hs_norm_sq().sqrt()
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.entries * v
    }

    pub fn compose(&self, other: &HSOperator) -> Result<HSOperator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(HSOperator {
            entries: &self.entries * &other.entries,
        })
    }

    pub fn sub(&self, other: &HSOperator) -> Result<HSOperator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(HSOperator {
            entries: &self.entries - &other.entries,
        })
    }

    pub fn max_abs_diff(&self, other: &HSOperator) -> f64 {
        (&self.entries - &other.entries)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct FiniteUnitary {
    entries: DMatrix<Complex64>,
}

impl FiniteUnitary {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch(entries.nrows(), entries.ncols()));
        }
        let dim = entries.nrows();
        let dev = (entries.adjoint() * &entries - DMatrix::<Complex64>::identity(dim, dim))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if dev.is_nan() || dev > UNITARY_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: DMatrix::identity(dim, dim),
        }
    }

    /// Gram–Schmidt (via QR) of a complex Gaussian matrix, with the phases
    /// of `R`'s diagonal pushed into `Q` so the law is Haar.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let g = DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
        });
        let qr = g.qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..dim {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
        Self { entries: q }
    }

    /// Haar-distributed real orthogonal matrix (QR of a real Gaussian
    /// matrix with the signs of `R`'s diagonal pushed into `Q`).
    pub fn random_orthogonal<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let g = DMatrix::<f64>::from_fn(dim, dim, |_, _| StandardNormal.sample(rng));
        let qr = g.qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..dim {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        Self {
            entries: q.map(|x| Complex64::new(x, 0.0)),
        }
    }

    /// Real rotation by `theta` in the plane of the first two basis vectors.
    pub fn rotation(dim: usize, theta: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionMismatch(dim, 2));
        }
        let mut m = DMatrix::identity(dim, dim);
        let (s, c) = theta.sin_cos();
        m[(0, 0)] = Complex64::new(c, 0.0);
        m[(0, 1)] = Complex64::new(-s, 0.0);
        m[(1, 0)] = Complex64::new(s, 0.0);
        m[(1, 1)] = Complex64::new(c, 0.0);
        Ok(Self { entries: m })
    }

    pub fn diagonal_phases(phases: &[f64]) -> Self {
        let d = DVector::from_iterator(
            phases.len(),
            phases.iter().map(|&p| Complex64::from_polar(1.0, p)),
        );
        Self {
            entries: DMatrix::from_diagonal(&d),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.entries * v
    }
}

/// `Tr(T) = Σₙ ⟨T eₙ, eₙ⟩`.
pub fn trace(t: &HSOperator) -> Complex64 {
    t.entries.diagonal().iter().sum()
}

/// `Ψ(ξ ⊗ ξ')`: `η ↦ ⟨η, ξ⟩ ξ'`.
pub fn rank_one(xi: &CVector, xi_prime: &CVector) -> Result<HSOperator> {
    if xi.len() != xi_prime.len() {
        return Err(Error::DimensionMismatch(xi.len(), xi_prime.len()));
    }
    Ok(HSOperator {
        entries: xi_prime * xi.adjoint(),
    })
}

/// `α_U(T) = U T U*`.
pub fn adjoint_act(u: &FiniteUnitary, t: &HSOperator) -> Result<HSOperator> {
    if u.dim() != t.dim() {
        return Err(Error::DimensionMismatch(u.dim(), t.dim()));
    }
    Ok(HSOperator {
        entries: &u.entries * &t.entries * u.entries.adjoint(),
    })
}

fn check_unit(xi: &CVector) -> Result<()> {
    let n = norm(xi);
    if (n - 1.0).abs() > UNIT_VECTOR_TOL {
        return Err(Error::NotUnitVector(n));
    }
    Ok(())
}

/// `‖α_U(P) - P‖²_HS` for the projection `P = Ψ(ξ ⊗ ξ)` onto a unit `ξ`.
pub fn projection_defect(u: &FiniteUnitary, xi: &CVector) -> Result<f64> {
    projection_defect_signed(u, xi, 1.0)
}

/// [`projection_defect`] with the sign of `P` in the difference made
/// explicit; the self-test uses `-1` to check it notices a broken identity.
#[doc(hidden)]
pub fn projection_defect_signed(u: &FiniteUnitary, xi: &CVector, sign: f64) -> Result<f64> {
    check_unit(xi)?;
    if u.dim() != xi.len() {
        return Err(Error::DimensionMismatch(u.dim(), xi.len()));
    }
    let p = rank_one(xi, xi)?;
    let moved = adjoint_act(u, &p)?;
    Ok(HSOperator {
        entries: moved.entries - p.entries * Complex64::new(sign, 0.0),
    }
    .hs_norm_sq())
}

/// Right-hand side of the defect identity: `2(1 - |⟨Uξ, ξ⟩|²)`.
///
/// `Tr(UPU*·P) = |⟨Uξ, ξ⟩|²`, so this is exact for every unitary. When the
/// coefficient is real (real orthogonal `U` and real `ξ`, as for Koopman
/// operators on real functions) it coincides with `2(1 - Re(⟨Uξ, ξ⟩²))`;
/// for genuinely complex coefficients that second form is wrong.
pub fn projection_defect_formula(u: &FiniteUnitary, xi: &CVector) -> Result<f64> {
    check_unit(xi)?;
    if u.dim() != xi.len() {
        return Err(Error::DimensionMismatch(u.dim(), xi.len()));
    }
    let c = inner(&u.apply(xi), xi);
    Ok(2.0 * (1.0 - c.norm_sqr()))
}

/// `Tr(T₁* α_U(T₂))`.
pub fn hs_coefficient(t1: &HSOperator, t2: &HSOperator, u: &FiniteUnitary) -> Result<Complex64> {
    if t1.dim() != t2.dim() {
        return Err(Error::DimensionMismatch(t1.dim(), t2.dim()));
    }
    let moved = adjoint_act(u, t2)?;
    Ok(trace(&t1.adjoint().compose(&moved)?))
}

/// `|⟨Uη₂, η₁⟩|·‖ξ₁‖·‖ξ₂‖`, the bound on `hs_coefficient` for
/// `Tᵢ = Ψ(ξᵢ ⊗ ηᵢ)`.
pub fn rank_one_bound(
    xi1: &CVector,
    eta1: &CVector,
    xi2: &CVector,
    eta2: &CVector,
    u: &FiniteUnitary,
) -> f64 {
    inner(&u.apply(eta2), eta1).norm() * norm(xi1) * norm(xi2)
}
