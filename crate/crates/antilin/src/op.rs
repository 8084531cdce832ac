//! Anti-linear and linear operators, composition, the Wigner adjoint, and the
//! canonical Hermitian form (ϑ₁, ϑ₂) = Tr ϑ₂ϑ₁.

use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

// Required for float math in no_std builds; std-enabled dev builds see inherent methods instead.
#[allow(unused_imports)]
use num_traits::Float;

use crate::cmat::{inner, CMat, Complex64};
use crate::error::{Error, Result};
use crate::sampling::{rng_from_seed, unit_vector};

/// Value of the canonical Hermitian form; complex in general, real on the
/// Hermitian and skew-Hermitian subspaces.
pub type CanonicalValue = Complex64;

fn check_matrix(mat: &CMat) -> Result<()> {
    if !mat.is_square() {
        return Err(Error::NotSquare {
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    if mat.rows() == 0 {
        return Err(Error::ZeroDimension);
    }
    if !mat.all_finite() {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn check_same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::NonPositiveTolerance { tol });
    }
    Ok(())
}

/// Anti-linear operator on ℂᵈ, stored as the matrix `M` of φ ↦ M·conj(φ).
#[derive(Clone, Debug, PartialEq)]
pub struct AntiLinearOp {
    mat: CMat,
}

/// Ordinary (complex-linear) operator on ℂᵈ.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOp {
    mat: CMat,
}

impl AntiLinearOp {
    /// Wraps a square, finite matrix as an anti-linear operator.
    pub fn new(mat: CMat) -> Result<Self> {
        check_matrix(&mat)?;
        Ok(Self { mat })
    }

    /// The zero operator.
    pub fn zero(dim: usize) -> Self {
        Self {
            mat: CMat::zeros(dim, dim),
        }
    }

    /// Component-wise conjugation φ ↦ conj(φ) in the standard basis; the
    /// simplest conjugation.
    pub fn standard_conjugation(dim: usize) -> Self {
        Self {
            mat: CMat::identity(dim),
        }
    }

    /// Rank-one operator (|φ'⟩⟨φ''|)_a : φ ↦ φ'·⟨φ, φ''⟩, with matrix
    /// M_jk = φ'_j·φ''_k.
    pub fn rank_one(phi1: &[Complex64], phi2: &[Complex64]) -> Result<Self> {
        if phi1.len() != phi2.len() {
            return Err(Error::DimMismatch {
                expected: phi1.len(),
                found: phi2.len(),
            });
        }
        if phi1.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let d = phi1.len();
        let mat = CMat::from_fn(d, d, |j, k| phi1[j] * phi2[k]);
        Self::new(mat)
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    /// Applies the operator: φ ↦ M·conj(φ).
    pub fn apply(&self, phi: &[Complex64]) -> Result<Vec<Complex64>> {
        check_same_dim(self.dim(), phi.len())?;
        let conj: Vec<Complex64> = phi.iter().map(|z| z.conj()).collect();
        Ok(self.mat.matvec(&conj))
    }

    /// Wigner adjoint ϑ†, defined by ⟨φ₁, ϑ†φ₂⟩ = ⟨φ₂, ϑφ₁⟩; in matrix form
    /// the plain transpose. The map ϑ ↦ ϑ† is complex-linear.
    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.transpose(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            mat: self.mat.scale(c),
        }
    }

    /// Composition ϑ₂ ∘ ϑ₁ (`self` applied after `first`): a linear operator
    /// with matrix M₂·conj(M₁).
    pub fn compose(&self, first: &AntiLinearOp) -> Result<LinearOp> {
        check_same_dim(self.dim(), first.dim())?;
        Ok(LinearOp {
            mat: &self.mat * &first.mat.conj(),
        })
    }

    /// Composition ϑ ∘ A with a linear operator applied first: anti-linear
    /// with matrix M·conj(A).
    pub fn compose_linear(&self, first: &LinearOp) -> Result<AntiLinearOp> {
        check_same_dim(self.dim(), first.dim())?;
        Ok(AntiLinearOp {
            mat: &self.mat * &first.mat.conj(),
        })
    }

    /// Hermitian part (ϑ + ϑ†)/2, i.e. the symmetric part of `M`.
    pub fn hermitian_part(&self) -> Self {
        let t = self.mat.transpose();
        Self {
            mat: (&self.mat + &t).scale(Complex64::new(0.5, 0.0)),
        }
    }

    /// Skew part (ϑ − ϑ†)/2, i.e. the antisymmetric part of `M`.
    pub fn skew_part(&self) -> Self {
        let t = self.mat.transpose();
        Self {
            mat: (&self.mat - &t).scale(Complex64::new(0.5, 0.0)),
        }
    }

    /// ‖M − Mᵀ‖_F: zero iff ϑ is Hermitian (ϑ = ϑ†).
    pub fn hermiticity_residual(&self) -> f64 {
        self.mat.symmetry_residual()
    }

    /// ‖M + Mᵀ‖_F: zero iff ϑ is skew (ϑ = −ϑ†).
    pub fn skewness_residual(&self) -> f64 {
        self.mat.antisymmetry_residual()
    }

    /// ‖MM† − 𝟙‖_F: zero iff ϑ is anti-unitary.
    pub fn antiunitarity_residual(&self) -> f64 {
        self.mat.unitarity_residual()
    }

    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        check_tol(tol)?;
        Ok(self.hermiticity_residual() <= tol)
    }

    pub fn is_skew(&self, tol: f64) -> Result<bool> {
        check_tol(tol)?;
        Ok(self.skewness_residual() <= tol)
    }

    /// Anti-unitary: ⟨ϑφ₁, ϑφ₂⟩ = ⟨φ₂, φ₁⟩, i.e. `M` unitary.
    pub fn is_antiunitary(&self, tol: f64) -> Result<bool> {
        check_tol(tol)?;
        Ok(self.antiunitarity_residual() <= tol)
    }

    /// Conjugation: anti-unitary with ϑ² = 𝟙, i.e. `M` symmetric unitary.
    pub fn is_conjugation(&self, tol: f64) -> Result<bool> {
        check_tol(tol)?;
        Ok(self.antiunitarity_residual() <= tol && self.hermiticity_residual() <= tol)
    }

    /// Skew conjugation: anti-unitary with ϑ² = −𝟙, i.e. `M` antisymmetric
    /// unitary. Exists only in even dimension.
    pub fn is_skew_conjugation(&self, tol: f64) -> Result<bool> {
        check_tol(tol)?;
        Ok(self.antiunitarity_residual() <= tol && self.skewness_residual() <= tol)
    }
}

impl LinearOp {
    pub fn new(mat: CMat) -> Result<Self> {
        check_matrix(&mat)?;
        Ok(Self { mat })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMat::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    pub fn apply(&self, phi: &[Complex64]) -> Result<Vec<Complex64>> {
        check_same_dim(self.dim(), phi.len())?;
        Ok(self.mat.matvec(phi))
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// Composition A ∘ ϑ with the anti-linear factor applied first:
    /// anti-linear with matrix A·M.
    pub fn compose_anti(&self, first: &AntiLinearOp) -> Result<AntiLinearOp> {
        check_same_dim(self.dim(), first.dim())?;
        Ok(AntiLinearOp {
            mat: &self.mat * &first.mat,
        })
    }
}

impl Add for &AntiLinearOp {
    type Output = AntiLinearOp;
    fn add(self, rhs: &AntiLinearOp) -> AntiLinearOp {
        AntiLinearOp {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Sub for &AntiLinearOp {
    type Output = AntiLinearOp;
    fn sub(self, rhs: &AntiLinearOp) -> AntiLinearOp {
        AntiLinearOp {
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl Neg for &AntiLinearOp {
    type Output = AntiLinearOp;
    fn neg(self) -> AntiLinearOp {
        AntiLinearOp {
            mat: -&self.mat,
        }
    }
}

/// Canonical Hermitian form (ϑ₁, ϑ₂) = Tr ϑ₂ϑ₁ = Tr(M₂·conj(M₁)).
///
/// Hermitian under swap, real and positive-definite on Hermitian operators,
/// real and negative-definite on skew operators; the two subspaces are
/// orthogonal, giving signature (d(d+1)/2, d(d−1)/2).
pub fn canonical_form(theta1: &AntiLinearOp, theta2: &AntiLinearOp) -> Result<CanonicalValue> {
    check_same_dim(theta1.dim(), theta2.dim())?;
    Ok(canonical_form_mats(theta1.matrix(), theta2.matrix()))
}

/// Canonical form on raw matrices: Σ_jk (M₂)_jk·conj((M₁)_kj), the trace of
/// M₂·conj(M₁) computed without forming the product.
pub(crate) fn canonical_form_mats(m1: &CMat, m2: &CMat) -> CanonicalValue {
    let d = m1.rows();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..d {
        for k in 0..d {
            acc += m2[(j, k)] * m1[(k, j)].conj();
        }
    }
    acc
}

/// Samples of ⟨φ, ϑφ⟩ over random unit vectors, with the phase-covariance
/// defect of the sampled numerical range.
#[derive(Clone, Debug)]
pub struct NumericalRangeEstimate {
    /// Values ⟨φᵢ, ϑφᵢ⟩ for each sampled unit vector φᵢ.
    pub samples: Vec<Complex64>,
    /// max |⟨φᵢ, ϑφᵢ⟩|, a lower estimate of the numerical radius.
    pub radius_estimate: f64,
    /// Largest observed |⟨e^{iα}φ, ϑ e^{iα}φ⟩ − e^{−2iα}⟨φ, ϑφ⟩| over a grid
    /// of phases α; zero in exact arithmetic, so the sampled range is a union
    /// of circles centred at the origin.
    pub phase_covariance_residual: f64,
}

/// Estimates the numerical range {⟨φ, ϑφ⟩ : ‖φ‖ = 1} by seeded sampling.
pub fn numerical_range_samples(
    op: &AntiLinearOp,
    n_samples: usize,
    seed: u64,
) -> Result<NumericalRangeEstimate> {
    if n_samples == 0 {
        return Err(Error::InvalidConfig {
            reason: "numerical range sampling needs at least one sample",
        });
    }
    let d = op.dim();
    let mut rng = rng_from_seed(seed);
    let mut samples = Vec::with_capacity(n_samples);
    let mut radius = 0.0f64;
    let mut phase_residual = 0.0f64;
    for idx in 0..n_samples {
        let phi = unit_vector(d, &mut rng);
        let value = inner(&phi, &op.apply(&phi)?);
        radius = radius.max(value.norm());
        if idx < 8 {
            for k in 0..16 {
                let alpha = core::f64::consts::PI * k as f64 / 8.0;
                let rot = Complex64::new(alpha.cos(), alpha.sin());
                let psi: Vec<Complex64> = phi.iter().map(|z| rot * z).collect();
                let rotated = inner(&psi, &op.apply(&psi)?);
                let expected = value * (rot * rot).conj();
                phase_residual = phase_residual.max((rotated - expected).norm());
            }
        }
        samples.push(value);
    }
    Ok(NumericalRangeEstimate {
        samples,
        radius_estimate: radius,
        phase_covariance_residual: phase_residual,
    })
}
