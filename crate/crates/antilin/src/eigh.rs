//! Complex Hermitian eigensolver (cyclic Jacobi) and the unitary exponential
//! `exp(i H)` built from it.

use alloc::vec::Vec;

// Required for float math in no_std builds; std-enabled dev builds see inherent methods instead.
#[allow(unused_imports)]
use num_traits::Float;

use crate::cmat::{CMat, Complex64};

const MAX_SWEEPS: usize = 60;

/// Eigendecomposition of a Hermitian matrix: `h = q * diag(lambda) * q†`.
///
/// Returns eigenvalues in ascending order with matching eigenvector columns.
/// The strictly upper part of `h` is trusted; tiny Hermiticity violations in
/// the input are symmetrized away.
pub(crate) fn eigh(h: &CMat) -> (Vec<f64>, CMat) {
    assert!(h.is_square(), "eigh needs a square matrix");
    let n = h.rows();
    let mut a = CMat::from_fn(n, n, |i, j| {
        0.5 * (h[(i, j)] + h[(j, i)].conj())
    });
    let mut q = CMat::identity(n);

    let scale = a.fro_norm().max(1.0);
    let stop = 1e-15 * scale;

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for r in (p + 1)..n {
                off += a[(p, r)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                rotate(&mut a, &mut q, p, r);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let lam_raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| lam_raw[i].partial_cmp(&lam_raw[j]).unwrap());
    let lambda: Vec<f64> = order.iter().map(|&i| lam_raw[i]).collect();
    let vecs = CMat::from_fn(n, n, |i, j| q[(i, order[j])]);
    (lambda, vecs)
}

/// One Jacobi rotation zeroing `a[(p, r)]`, accumulated into `q`.
fn rotate(a: &mut CMat, q: &mut CMat, p: usize, r: usize) {
    let apr = a[(p, r)];
    let mag = apr.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apr / mag;
    let alpha = a[(p, p)].re;
    let beta = a[(r, r)].re;

    let tau = (beta - alpha) / (2.0 * mag);
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let mut t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    if !t.is_finite() {
        t = 0.0;
    }
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // 2x2 transform G = [[c*phase, s*phase], [-s, c]] applied as a <- G† a G.
    let gp = phase * c;
    let gq = phase * s;

    let n = a.rows();
    for m in 0..n {
        if m == p || m == r {
            continue;
        }
        let amp = a[(m, p)];
        let amr = a[(m, r)];
        let new_p = gp * amp - s * amr;
        let new_r = gq * amp + c * amr;
        a[(m, p)] = new_p;
        a[(m, r)] = new_r;
        a[(p, m)] = new_p.conj();
        a[(r, m)] = new_r.conj();
    }
    a[(p, p)] = Complex64::new(alpha - t * mag, 0.0);
    a[(r, r)] = Complex64::new(beta + t * mag, 0.0);
    a[(p, r)] = Complex64::new(0.0, 0.0);
    a[(r, p)] = Complex64::new(0.0, 0.0);

    for m in 0..n {
        let qmp = q[(m, p)];
        let qmr = q[(m, r)];
        q[(m, p)] = gp * qmp - s * qmr;
        q[(m, r)] = gq * qmp + c * qmr;
    }
}

/// Unitary `q·diag(e^{iλ})·q†` from an eigendecomposition of a Hermitian
/// matrix: the matrix exponential exp(i·h), exactly unitary by construction.
pub(crate) fn unitary_exp_from(lambda: &[f64], q: &CMat) -> CMat {
    let n = q.rows();
    let mut scaled = q.clone();
    for j in 0..n {
        let ph = Complex64::new(lambda[j].cos(), lambda[j].sin());
        for i in 0..n {
            scaled[(i, j)] *= ph;
        }
    }
    &scaled * &q.dagger()
}

#[cfg(test)]
pub(crate) fn exp_i_hermitian(h: &CMat) -> CMat {
    let (lambda, q) = eigh(h);
    unitary_exp_from(&lambda, &q)
}

/// Eigenvalues and eigenvectors restricted to checks used in tests.
#[cfg(test)]
pub(crate) fn reconstruct(lambda: &[f64], q: &CMat) -> CMat {
    let n = q.rows();
    let mut scaled = q.clone();
    for j in 0..n {
        for i in 0..n {
            scaled[(i, j)] *= Complex64::new(lambda[j], 0.0);
        }
    }
    &scaled * &q.dagger()
}
