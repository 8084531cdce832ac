//! Seeded sampling: Gaussian vectors, unit vectors, Haar-like unitaries.
//!
//! All randomness flows through `ChaCha12Rng` seeded from explicit `u64`
//! seeds, so every draw is reproducible across platforms and across
//! sequential/parallel schedules.

use alloc::vec::Vec;

// Required for float math in no_std builds; std-enabled dev builds see inherent methods instead.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::cmat::{inner, vec_norm, CMat, Complex64};

/// SplitMix64 step, used to derive independent per-restart seeds.
pub(crate) fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for restart `index` split off a master seed.
pub(crate) fn restart_seed(master: u64, index: u32) -> u64 {
    splitmix64(master ^ splitmix64(0x5851_F42D_4C95_7F2D ^ u64::from(index)))
}

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Standard normal sample via Box-Muller.
pub(crate) fn standard_normal(rng: &mut ChaCha12Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
}

pub(crate) fn complex_normal(rng: &mut ChaCha12Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

pub(crate) fn gaussian_vector(dim: usize, rng: &mut ChaCha12Rng) -> Vec<Complex64> {
    (0..dim).map(|_| complex_normal(rng)).collect()
}

/// Random unit vector, uniform on the sphere by rotation invariance.
pub(crate) fn unit_vector(dim: usize, rng: &mut ChaCha12Rng) -> Vec<Complex64> {
    loop {
        let mut v = gaussian_vector(dim, rng);
        let n = vec_norm(&v);
        if n > 1e-6 {
            for z in &mut v {
                *z /= n;
            }
            return v;
        }
    }
}

pub(crate) fn gaussian_matrix(dim: usize, rng: &mut ChaCha12Rng) -> CMat {
    CMat::from_fn(dim, dim, |_, _| complex_normal(rng))
}

/// Haar-like random unitary: QR of a complex Gaussian matrix.
///
/// Modified Gram-Schmidt with a second orthogonalization pass; the R factor
/// then has a positive diagonal, which fixes the phase ambiguity.
pub(crate) fn haar_unitary(dim: usize, rng: &mut ChaCha12Rng) -> CMat {
    loop {
        let g = gaussian_matrix(dim, rng);
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

fn orthonormalize_columns(m: &CMat) -> Option<CMat> {
    let d = m.rows();
    let mut cols: Vec<Vec<Complex64>> = (0..d).map(|j| m.col(j)).collect();
    for j in 0..d {
        for _pass in 0..2 {
            for i in 0..j {
                let c = inner(&cols[i], &cols[j]);
                for t in 0..d {
                    let prev = cols[i][t];
                    cols[j][t] -= c * prev;
                }
            }
        }
        let n = vec_norm(&cols[j]);
        if n < 1e-8 {
            return None;
        }
        for t in 0..d {
            cols[j][t] /= n;
        }
    }
    Some(CMat::from_fn(d, d, |i, j| cols[j][i]))
}
