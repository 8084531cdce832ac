//! Explicit maximal orthogonal sets of conjugations and skew conjugations:
//! the d = 2 quadruple, tensor-product composition, the power-of-two
//! recursion saturating d(d±1)/2, and a diagonal Fourier baseline.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

// Required for float math in no_std builds; std-enabled dev builds see inherent methods instead.
#[allow(unused_imports)]
use num_traits::Float;

use crate::basis::{gram_of_mats, GramMatrix, Parity};
use crate::cmat::{CMat, Complex64};
use crate::error::{Error, Result};
use crate::op::AntiLinearOp;
use crate::DEFAULT_TOL;

/// Structural kind of an orthogonal operator set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    /// Conjugations: symmetric unitary matrices, ϑ² = 𝟙, (ϑ, ϑ) = d.
    Conjugation,
    /// Skew conjugations: antisymmetric unitary matrices, ϑ² = −𝟙,
    /// (ϑ, ϑ) = −d; even dimension only.
    Skew,
}

impl SetKind {
    /// Maximal number of mutually orthogonal operators of this kind at
    /// dimension `d`: the subspace dimension d(d±1)/2.
    pub fn bound(self, d: usize) -> usize {
        self.parity().space_dim(d)
    }

    pub fn parity(self) -> Parity {
        match self {
            SetKind::Conjugation => Parity::Plus,
            SetKind::Skew => Parity::Minus,
        }
    }

    /// Sign of (ϑ, ϑ) = ±d for operators of this kind.
    pub fn sign(self) -> f64 {
        self.parity().sign()
    }

    pub fn label(self) -> &'static str {
        match self {
            SetKind::Conjugation => "conjugation",
            SetKind::Skew => "skew",
        }
    }

    /// Sign character in the bound formula d(d±1)/2.
    pub fn bound_sign(self) -> char {
        match self {
            SetKind::Conjugation => '+',
            SetKind::Skew => '-',
        }
    }
}

/// A validated set of mutually orthogonal (skew) conjugations.
///
/// Invariants, enforced at construction against a tolerance: every member has
/// the structure of its kind (symmetric/antisymmetric and unitary), the Gram
/// matrix of the canonical form is ±d on the diagonal and ≤ tol off the
/// diagonal, and the size does not exceed the bound d(d±1)/2.
#[derive(Clone, Debug)]
pub struct OrthoSet {
    dim: usize,
    kind: SetKind,
    ops: Vec<AntiLinearOp>,
    meta: String,
}

impl OrthoSet {
    /// Validates and wraps a set at [`DEFAULT_TOL`].
    pub fn new(
        dim: usize,
        kind: SetKind,
        ops: Vec<AntiLinearOp>,
        meta: String,
    ) -> Result<Self> {
        Self::with_tol(dim, kind, ops, meta, DEFAULT_TOL)
    }

    /// Validates and wraps a set at an explicit tolerance.
    pub fn with_tol(
        dim: usize,
        kind: SetKind,
        ops: Vec<AntiLinearOp>,
        meta: String,
        tol: f64,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::NonPositiveTolerance { tol });
        }
        let bound = kind.bound(dim);
        if ops.len() > bound {
            return Err(Error::BoundExceeded {
                dim,
                requested: ops.len(),
                bound,
                sign: kind.bound_sign(),
            });
        }
        if kind == SetKind::Skew && dim % 2 == 1 && !ops.is_empty() {
            return Err(Error::SkewOddDimension { dim });
        }
        for op in &ops {
            if op.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: op.dim(),
                });
            }
            let structure = match kind {
                SetKind::Conjugation => op.hermiticity_residual(),
                SetKind::Skew => op.skewness_residual(),
            };
            if structure > tol || op.antiunitarity_residual() > tol {
                return Err(Error::VerificationFailed {
                    context: "operator lacks the structure of the declared kind",
                });
            }
        }
        if !ops.is_empty() {
            let mats: Vec<CMat> = ops.iter().map(|o| o.matrix().clone()).collect();
            let g = gram_of_mats(&mats);
            let target = kind.sign() * dim as f64;
            if g.max_offdiag() > tol || g.max_diag_deviation(target) > tol {
                return Err(Error::VerificationFailed {
                    context: "set is not orthogonal under the canonical form",
                });
            }
        }
        Ok(Self {
            dim,
            kind,
            ops,
            meta,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn ops(&self) -> &[AntiLinearOp] {
        &self.ops
    }

    pub fn meta(&self) -> &str {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn gram(&self) -> Result<GramMatrix> {
        crate::basis::gram(&self.ops)
    }

    /// Same set with a different provenance label; no revalidation.
    pub fn with_meta(mut self, meta: String) -> Self {
        self.meta = meta;
        self
    }
}

fn op_from_real(rows: &[&[f64]]) -> AntiLinearOp {
    AntiLinearOp::new(CMat::from_real(rows)).expect("static matrix is square and finite")
}

/// The maximal orthogonal quadruple at d = 2: three mutually orthogonal
/// conjugations τ₁, τ₂, τ₃ and one skew conjugation τ₀ orthogonal to all of
/// them.
///
/// Matrices: τ₀ = [[0, −1], [1, 0]], τ₁ = diag(−1, 1), τ₂ = i·𝟙,
/// τ₃ = [[0, 1], [1, 0]].
pub fn tau_set() -> (OrthoSet, OrthoSet) {
    let tau1 = op_from_real(&[&[-1.0, 0.0], &[0.0, 1.0]]);
    let tau2 = AntiLinearOp::new(CMat::identity(2).scale(Complex64::new(0.0, 1.0)))
        .expect("i times identity is finite");
    let tau3 = op_from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
    let tau0 = op_from_real(&[&[0.0, -1.0], &[1.0, 0.0]]);
    let conj = OrthoSet::with_tol(
        2,
        SetKind::Conjugation,
        alloc::vec![tau1, tau2, tau3],
        String::from("tau2"),
        1e-14,
    )
    .expect("tau conjugations are exactly orthogonal");
    let skew = OrthoSet::with_tol(
        2,
        SetKind::Skew,
        alloc::vec![tau0],
        String::from("tau2"),
        1e-14,
    )
    .expect("tau0 is an exact skew conjugation");
    (conj, skew)
}

/// The skew conjugation τ₀ at d = 2 (matrix [[0, −1], [1, 0]]).
pub fn tau0() -> AntiLinearOp {
    op_from_real(&[&[0.0, -1.0], &[1.0, 0.0]])
}

/// Tensor product of anti-linear operators: matrix kron(M_a, M_b), acting on
/// ℂ^{d_a·d_b} with the first factor on the slow index.
///
/// The canonical form is multiplicative: (a⊗b, a'⊗b') = (a, a')·(b, b').
pub fn tensor(a: &AntiLinearOp, b: &AntiLinearOp) -> AntiLinearOp {
    AntiLinearOp::new(a.matrix().kron(b.matrix()))
        .expect("kron of finite square matrices is finite and square")
}

/// Combines maximal orthogonal data at dimensions d₁ and d₂ into maximal
/// orthogonal data at d₁·d₂:
///
/// * conjugations: {c₁⊗c₂} ∪ {s₁⊗s₂},
/// * skew conjugations: {c₁⊗s₂} ∪ {s₁⊗c₂}.
pub fn combine_sets(
    conj1: &OrthoSet,
    skew1: &OrthoSet,
    conj2: &OrthoSet,
    skew2: &OrthoSet,
) -> Result<(OrthoSet, OrthoSet)> {
    for (set, kind) in [
        (conj1, SetKind::Conjugation),
        (skew1, SetKind::Skew),
        (conj2, SetKind::Conjugation),
        (skew2, SetKind::Skew),
    ] {
        if set.kind() != kind {
            return Err(Error::KindMismatch {
                context: "combine_sets expects (conj, skew, conj, skew)",
            });
        }
    }
    if conj1.dim() != skew1.dim() || conj2.dim() != skew2.dim() {
        return Err(Error::DimMismatch {
            expected: conj1.dim(),
            found: skew1.dim(),
        });
    }
    let (d1, d2) = (conj1.dim(), conj2.dim());
    let d = d1 * d2;
    let meta = format!("tensor({d1},{d2})");

    let mut conj_ops = Vec::new();
    for c1 in conj1.ops() {
        for c2 in conj2.ops() {
            conj_ops.push(tensor(c1, c2));
        }
    }
    for s1 in skew1.ops() {
        for s2 in skew2.ops() {
            conj_ops.push(tensor(s1, s2));
        }
    }
    let mut skew_ops = Vec::new();
    for c1 in conj1.ops() {
        for s2 in skew2.ops() {
            skew_ops.push(tensor(c1, s2));
        }
    }
    for s1 in skew1.ops() {
        for c2 in conj2.ops() {
            skew_ops.push(tensor(s1, c2));
        }
    }

    let conj = OrthoSet::new(d, SetKind::Conjugation, conj_ops, meta.clone())?;
    let skew = OrthoSet::new(d, SetKind::Skew, skew_ops, meta)?;
    Ok((conj, skew))
}

/// Maximal orthogonal sets at d = 2ⁿ by the tensor recursion: starting from
/// ({𝟙-conjugation}, ∅) at d = 1, repeatedly combine with the τ quadruple.
///
/// The sizes saturate the bounds d(d+1)/2 and d(d−1)/2; the recursion
/// n(2d) = 3n(d) + m(d), m(2d) = 3m(d) + n(d) reproduces exactly these
/// numbers (3, 1), (10, 6), (36, 28), (136, 120), ...
pub fn max_sets(d: usize) -> Result<(OrthoSet, OrthoSet)> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if !d.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { dim: d });
    }
    let one = AntiLinearOp::standard_conjugation(1);
    let mut conj = OrthoSet::with_tol(
        1,
        SetKind::Conjugation,
        alloc::vec![one],
        String::from("power2(1)"),
        1e-14,
    )
    .expect("the 1x1 identity is an exact conjugation");
    let mut skew = OrthoSet::with_tol(
        1,
        SetKind::Skew,
        Vec::new(),
        String::from("power2(1)"),
        1e-14,
    )
    .expect("the empty skew set at d=1 is valid");

    let (tau_conj, tau_skew) = tau_set();
    let mut dim = 1;
    while dim < d {
        let (c, s) = combine_sets(&conj, &skew, &tau_conj, &tau_skew)?;
        dim *= 2;
        conj = c.with_meta(format!("power2({dim})"));
        skew = s.with_meta(format!("power2({dim})"));
    }
    Ok((conj, skew))
}

/// Diagonal Fourier family at any d: conjugations M_k = diag(ω^{jk}) with
/// ω = e^{2πi/d}, k = 0..d−1. Mutually orthogonal, of size d — maximal among
/// diagonal conjugations but far below d(d+1)/2 for d > 2.
pub fn fourier_set(d: usize) -> Result<OrthoSet> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut ops = Vec::with_capacity(d);
    for k in 0..d {
        let mat = CMat::from_fn(d, d, |r, c| {
            if r != c {
                return Complex64::new(0.0, 0.0);
            }
            let angle = core::f64::consts::TAU * (r * k % d) as f64 / d as f64;
            Complex64::new(angle.cos(), angle.sin())
        });
        ops.push(AntiLinearOp::new(mat).expect("diagonal phase matrix is finite"));
    }
    OrthoSet::with_tol(
        d,
        SetKind::Conjugation,
        ops,
        format!("fourier({d})"),
        1e-12,
    )
}
