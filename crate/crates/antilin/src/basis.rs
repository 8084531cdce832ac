//! Orthonormal bases of the Hermitian (+) and skew-Hermitian (−) operator
//! subspaces, Gram matrices, and the counting identities d(d±1)/2.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cmat::{CMat, Complex64};
use crate::error::{Error, Result};
use crate::op::{canonical_form_mats, AntiLinearOp};

/// Which eigenspace of the adjoint involution ϑ ↦ ϑ† a basis spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Hermitian operators, ϑ† = ϑ; dimension d(d+1)/2.
    Plus,
    /// Skew operators, ϑ† = −ϑ; dimension d(d−1)/2.
    Minus,
}

impl Parity {
    /// Real/complex dimension of the subspace at Hilbert-space dimension `d`.
    pub fn space_dim(self, d: usize) -> usize {
        match self {
            Parity::Plus => d * (d + 1) / 2,
            Parity::Minus => d * (d - 1) / 2,
        }
    }

    /// Sign of the canonical form on the subspace: (ϑ, ϑ) = ±‖ϑ‖².
    pub fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }
}

/// Dimensions (plus, minus) of the two operator subspaces; they sum to d².
pub fn space_dims(d: usize) -> (usize, usize) {
    (Parity::Plus.space_dim(d), Parity::Minus.space_dim(d))
}

/// Signature of the canonical Hermitian form:
/// d(d+1)/2 − d(d−1)/2 = d.
pub fn signature(d: usize) -> usize {
    d
}

/// An ordered orthonormal family of anti-linear operators of fixed parity.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    dim: usize,
    parity: Parity,
    ops: Vec<AntiLinearOp>,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn ops(&self) -> &[AntiLinearOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

fn unit(d: usize, j: usize) -> Vec<Complex64> {
    let mut e = alloc::vec![Complex64::new(0.0, 0.0); d];
    e[j] = Complex64::new(1.0, 0.0);
    e
}

/// Orthonormal basis of the Hermitian subspace: the d diagonal rank-one
/// operators (|e_j⟩⟨e_j|)_a, then (1/√2)((|e_j⟩⟨e_k|)_a + (|e_k⟩⟨e_j|)_a) for
/// k < j in lexicographic (j, k) order.
pub fn basis_plus(d: usize) -> Result<OperatorBasis> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut ops = Vec::with_capacity(d * (d + 1) / 2);
    for j in 0..d {
        let e = unit(d, j);
        ops.push(AntiLinearOp::rank_one(&e, &e)?);
    }
    let w = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    for j in 1..d {
        for k in 0..j {
            let (ej, ek) = (unit(d, j), unit(d, k));
            let jk = AntiLinearOp::rank_one(&ej, &ek)?;
            let kj = AntiLinearOp::rank_one(&ek, &ej)?;
            ops.push((&jk + &kj).scale(w));
        }
    }
    Ok(OperatorBasis {
        dim: d,
        parity: Parity::Plus,
        ops,
    })
}

/// Orthonormal basis of the skew subspace:
/// (1/√2)((|e_j⟩⟨e_k|)_a − (|e_k⟩⟨e_j|)_a) for k < j in lexicographic (j, k)
/// order; empty for d = 1.
pub fn basis_minus(d: usize) -> Result<OperatorBasis> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut ops = Vec::with_capacity(d * (d - 1) / 2);
    let w = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    for j in 1..d {
        for k in 0..j {
            let (ej, ek) = (unit(d, j), unit(d, k));
            let jk = AntiLinearOp::rank_one(&ej, &ek)?;
            let kj = AntiLinearOp::rank_one(&ek, &ej)?;
            ops.push((&jk - &kj).scale(w));
        }
    }
    Ok(OperatorBasis {
        dim: d,
        parity: Parity::Minus,
        ops,
    })
}

/// Gram matrix G_ab = (ϑ_a, ϑ_b) of a family under the canonical form;
/// Hermitian by construction.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    entries: CMat,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    /// Largest |G_ab| over a ≠ b.
    pub fn max_offdiag(&self) -> f64 {
        let k = self.size();
        let mut m = 0.0f64;
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    m = m.max(self.entries[(a, b)].norm());
                }
            }
        }
        m
    }

    /// Largest deviation of the diagonal from `target` (real).
    pub fn max_diag_deviation(&self, target: f64) -> f64 {
        let k = self.size();
        let mut m = 0.0f64;
        for a in 0..k {
            let g = self.entries[(a, a)];
            m = m.max((g - Complex64::new(target, 0.0)).norm());
        }
        m
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let k = self.size();
        let mut m = 0.0f64;
        for a in 0..k {
            for b in 0..k {
                m = m.max((self.entries[(a, b)] - self.entries[(b, a)].conj()).norm());
            }
        }
        m
    }

    /// Formats entry (a, b) as `re±imi` with 17 significant digits.
    pub fn format_entry(&self, a: usize, b: usize) -> String {
        let z = self.entries[(a, b)];
        format!("{:.16e}{:+.16e}i", z.re, z.im)
    }
}

/// Gram matrix of an arbitrary family of anti-linear operators.
pub fn gram(ops: &[AntiLinearOp]) -> Result<GramMatrix> {
    if ops.is_empty() {
        return Err(Error::EmptySet);
    }
    let d = ops[0].dim();
    for op in ops {
        if op.dim() != d {
            return Err(Error::DimMismatch {
                expected: d,
                found: op.dim(),
            });
        }
    }
    let k = ops.len();
    let entries = CMat::from_fn(k, k, |a, b| {
        canonical_form_mats(ops[a].matrix(), ops[b].matrix())
    });
    Ok(GramMatrix { entries })
}

pub(crate) fn gram_of_mats(mats: &[CMat]) -> GramMatrix {
    let k = mats.len();
    let entries = CMat::from_fn(k, k, |a, b| canonical_form_mats(&mats[a], &mats[b]));
    GramMatrix { entries }
}
