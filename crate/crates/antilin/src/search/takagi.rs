//! Takagi factorization A = U·diag(σ)·Uᵀ of a complex symmetric matrix.

use alloc::vec::Vec;

use crate::cmat::{inner, vec_norm, CMat, Complex64};
use crate::eigh::eigh;
use crate::error::{Error, Result};

/// Result of a Takagi factorization: `a = u * diag(sigma) * uᵀ` with `u`
/// unitary and `sigma` the singular values in descending order.
#[derive(Clone, Debug)]
pub struct TakagiFactorization {
    pub u: CMat,
    pub sigma: Vec<f64>,
}

impl TakagiFactorization {
    /// Rebuilds u·diag(σ)·uᵀ.
    pub fn reconstruct(&self) -> CMat {
        let d = self.u.rows();
        let mut scaled = self.u.clone();
        for j in 0..d {
            for i in 0..d {
                scaled[(i, j)] *= Complex64::new(self.sigma[j], 0.0);
            }
        }
        &scaled * &self.u.transpose()
    }
}

/// Takagi factorization via the real symmetric embedding.
///
/// For A = X + iY symmetric, S = [[X, Y], [Y, −X]] is real symmetric of size
/// 2d, and its spectrum is ±σ-paired: an eigenvector w = (u; v) at λ gives a
/// con-eigenvector φ = u + iv with A·conj(φ) = λ·φ, and (−v; u) is an
/// eigenvector at −λ. Eigenvectors at λ > 0 (after mapping λ < 0 candidates
/// through φ ↦ iφ) yield the columns of U; a Gram–Schmidt pass discards the
/// i-duplicates that appear at σ = 0.
///
/// Requires ‖A − Aᵀ‖_F ≤ tol; the symmetric part is factored.
pub fn takagi(a: &CMat, tol: f64) -> Result<TakagiFactorization> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::NonPositiveTolerance { tol });
    }
    if !a.all_finite() {
        return Err(Error::NonFinite);
    }
    let residual = a.symmetry_residual();
    if residual > tol {
        return Err(Error::NotSymmetric { residual });
    }
    let d = a.rows();
    if d == 0 {
        return Err(Error::ZeroDimension);
    }

    let sym = CMat::from_fn(d, d, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let embed = CMat::from_fn(2 * d, 2 * d, |i, j| {
        let x = |p: usize, q: usize| Complex64::new(sym[(p, q)].re, 0.0);
        let y = |p: usize, q: usize| Complex64::new(sym[(p, q)].im, 0.0);
        match (i < d, j < d) {
            (true, true) => x(i, j),
            (true, false) => y(i, j - d),
            (false, true) => y(i - d, j),
            (false, false) => -x(i - d, j - d),
        }
    });

    let (lambda, q) = eigh(&embed);

    // Candidates ordered by σ = |λ| descending.
    let mut order: Vec<usize> = (0..2 * d).collect();
    order.sort_by(|&i, &j| {
        lambda[j]
            .abs()
            .partial_cmp(&lambda[i].abs())
            .unwrap()
            .then(i.cmp(&j))
    });

    let mut accepted: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    let mut sigma: Vec<f64> = Vec::with_capacity(d);
    for &col in &order {
        if accepted.len() == d {
            break;
        }
        let mut phi: Vec<Complex64> = (0..d)
            .map(|r| Complex64::new(q[(r, col)].re, q[(r + d, col)].re))
            .collect();
        if lambda[col] < 0.0 {
            for z in &mut phi {
                *z *= Complex64::new(0.0, 1.0);
            }
        }
        for prev in &accepted {
            let c = inner(prev, &phi);
            for t in 0..d {
                let p = prev[t];
                phi[t] -= c * p;
            }
        }
        let n = vec_norm(&phi);
        if n < 0.5 {
            continue;
        }
        for z in &mut phi {
            *z /= n;
        }
        sigma.push(lambda[col].abs());
        accepted.push(phi);
    }
    if accepted.len() < d {
        return Err(Error::VerificationFailed {
            context: "Takagi embedding produced fewer than d independent con-eigenvectors",
        });
    }

    let u = CMat::from_fn(d, d, |i, j| accepted[j][i]);
    Ok(TakagiFactorization { u, sigma })
}
