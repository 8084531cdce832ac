//! Gradient machinery for the orthogonality loss over products V·S·Vᵀ with
//! V = exp(iH): analytic gradients via the divided-difference (Daleckii–Krein)
//! formula, and Armijo backtracking descent.

use alloc::vec;
use alloc::vec::Vec;

// Required for float math in no_std builds; std-enabled dev builds see inherent methods instead.
#[allow(unused_imports)]
use num_traits::Float;

use crate::cmat::{CMat, Complex64};
use crate::eigh::eigh;
use crate::op::canonical_form_mats;

/// Number of real parameters per operator: a Hermitian d×d matrix.
pub(crate) fn params_per_op(d: usize) -> usize {
    d * d
}

/// Hermitian H from the parameter layout: d diagonal entries, then
/// (re, im) for each off-diagonal pair (j, k), j < k.
pub(crate) fn hermitian_from_params(p: &[f64], d: usize) -> CMat {
    let mut h = CMat::zeros(d, d);
    for j in 0..d {
        h[(j, j)] = Complex64::new(p[j], 0.0);
    }
    let mut idx = d;
    for j in 0..d {
        for k in (j + 1)..d {
            let z = Complex64::new(p[idx], p[idx + 1]);
            idx += 2;
            h[(j, k)] = z;
            h[(k, j)] = z.conj();
        }
    }
    h
}

/// Per-operator spectral data reused by the loss and its gradient.
pub(crate) struct OpCache {
    lambda: Vec<f64>,
    q: CMat,
    v: CMat,
    pub(crate) m: CMat,
}

fn build_cache(p: &[f64], d: usize, skel: &CMat) -> OpCache {
    let h = hermitian_from_params(p, d);
    let (lambda, q) = eigh(&h);
    let v = crate::eigh::unitary_exp_from(&lambda, &q);
    let m = &(&v * skel) * &v.transpose();
    OpCache { lambda, q, v, m }
}

/// Orthogonality loss of a full set: Σ_{a<b} |Tr(M_b·conj(M_a))|² / d².
pub(crate) fn loss_of_mats(mats: &[CMat], d: usize) -> f64 {
    let dd = (d * d) as f64;
    let mut acc = 0.0;
    for a in 0..mats.len() {
        for b in (a + 1)..mats.len() {
            acc += canonical_form_mats(&mats[a], &mats[b]).norm_sqr() / dd;
        }
    }
    acc
}

/// Optimization problem: `n_var` variable operators (all of one structural
/// kind, given by the skeleton S = 𝟙 or S = J) against optional fixed
/// operators. The loss counts every pair that touches a variable operator.
pub(crate) struct Problem {
    pub(crate) d: usize,
    pub(crate) skel: CMat,
    pub(crate) fixed: Vec<CMat>,
    pub(crate) n_var: usize,
}

impl Problem {
    pub(crate) fn total_params(&self) -> usize {
        self.n_var * params_per_op(self.d)
    }

    pub(crate) fn build(&self, params: &[f64]) -> Vec<OpCache> {
        let plen = params_per_op(self.d);
        (0..self.n_var)
            .map(|c| build_cache(&params[c * plen..(c + 1) * plen], self.d, &self.skel))
            .collect()
    }

    pub(crate) fn var_mats(&self, params: &[f64]) -> Vec<CMat> {
        self.build(params).into_iter().map(|c| c.m).collect()
    }

    /// Loss and the pair table t[c][e] = Tr(M_e·conj(M_c)) over
    /// all = variables then fixed.
    fn loss_from(&self, caches: &[OpCache]) -> (f64, Vec<Vec<Complex64>>) {
        let nv = self.n_var;
        let n = nv + self.fixed.len();
        let mat = |i: usize| -> &CMat {
            if i < nv {
                &caches[i].m
            } else {
                &self.fixed[i - nv]
            }
        };
        let mut table = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        let dd = (self.d * self.d) as f64;
        let mut loss = 0.0;
        for a in 0..n {
            for b in (a + 1)..n {
                if a >= nv && b >= nv {
                    continue;
                }
                let t = canonical_form_mats(mat(a), mat(b));
                table[a][b] = t;
                table[b][a] = t.conj();
                loss += t.norm_sqr() / dd;
            }
        }
        (loss, table)
    }

    pub(crate) fn eval(&self, params: &[f64]) -> (f64, Vec<OpCache>) {
        let caches = self.build(params);
        let (loss, _) = self.loss_from(&caches);
        (loss, caches)
    }

    /// Analytic gradient at a previously evaluated point.
    pub(crate) fn grad(&self, caches: &[OpCache]) -> Vec<f64> {
        let d = self.d;
        let nv = self.n_var;
        let n = nv + self.fixed.len();
        let (_, table) = self.loss_from(caches);
        let mat = |i: usize| -> &CMat {
            if i < nv {
                &caches[i].m
            } else {
                &self.fixed[i - nv]
            }
        };
        let plen = params_per_op(d);
        let mut grad = vec![0.0; self.total_params()];
        let scale = 2.0 / (d * d) as f64;

        for c in 0..nv {
            // dL = (2/d²)·Re Tr(W·dM_c) with W = Σ_{e≠c} t_ce·conj(M_e).
            let mut w = CMat::zeros(d, d);
            for e in 0..n {
                if e == c {
                    continue;
                }
                let t = table[c][e];
                let me = mat(e);
                for i in 0..d {
                    for j in 0..d {
                        w[(i, j)] += t * me[(i, j)].conj();
                    }
                }
            }
            let cache = &caches[c];

            // Tr(W·dM) = Tr(P·dV), P = S·Vᵀ·W + Sᵀ·Vᵀ·Wᵀ.
            let vt = cache.v.transpose();
            let p1 = &(&self.skel * &vt) * &w;
            let p2 = &(&self.skel.transpose() * &vt) * &w.transpose();
            let p = &p1 + &p2;

            // Tr(P·dV) = Tr(G·dH) with G = Q·Rᵀ·Q†, R_jk = A_kj·Φ_jk,
            // A = Q†·P·Q, Φ the divided differences of e^{ix}.
            let a = &(&cache.q.dagger() * &p) * &cache.q;
            let mut r = CMat::zeros(d, d);
            for j in 0..d {
                for k in 0..d {
                    r[(j, k)] = a[(k, j)] * phi(cache.lambda[j], cache.lambda[k]);
                }
            }
            let g = &(&cache.q * &r.transpose()) * &cache.q.dagger();

            let gslice = &mut grad[c * plen..(c + 1) * plen];
            for j in 0..d {
                gslice[j] = scale * g[(j, j)].re;
            }
            let mut idx = d;
            for j in 0..d {
                for k in (j + 1)..d {
                    let su = g[(k, j)] + g[(j, k)];
                    let di = g[(k, j)] - g[(j, k)];
                    gslice[idx] = scale * su.re;
                    gslice[idx + 1] = -scale * di.im;
                    idx += 2;
                }
            }
        }
        grad
    }
}

/// Divided difference (e^{iλj} − e^{iλk})/(λj − λk), continued as i·e^{iλ}
/// on the diagonal.
fn phi(lj: f64, lk: f64) -> Complex64 {
    let mu = 0.5 * (lj + lk);
    let half = 0.5 * (lj - lk);
    Complex64::new(0.0, sinc(half)) * Complex64::new(mu.cos(), mu.sin())
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

pub(crate) struct DescentOpts {
    pub(crate) max_iters: u32,
    pub(crate) init_step: f64,
    pub(crate) stop_loss: f64,
}

pub(crate) struct DescentOutcome {
    pub(crate) loss: f64,
    pub(crate) iters: u32,
}

/// Gradient descent with Armijo backtracking; mutates `params` in place.
pub(crate) fn descend(prob: &Problem, params: &mut [f64], opts: &DescentOpts) -> DescentOutcome {
    let (mut loss, mut caches) = prob.eval(params);
    let mut grad = prob.grad(&caches);
    let mut step = opts.init_step;
    let mut iters = 0;
    while iters < opts.max_iters && loss > opts.stop_loss {
        iters += 1;
        let gnorm2: f64 = grad.iter().map(|g| g * g).sum();
        if gnorm2 <= 1e-32 {
            break;
        }
        let mut accepted = false;
        while step > 1e-18 {
            let trial: Vec<f64> = params
                .iter()
                .zip(&grad)
                .map(|(p, g)| p - step * g)
                .collect();
            let (trial_loss, trial_caches) = prob.eval(&trial);
            if trial_loss <= loss - 1e-4 * step * gnorm2 {
                params.copy_from_slice(&trial);
                loss = trial_loss;
                caches = trial_caches;
                grad = prob.grad(&caches);
                step = (step * 2.0).min(100.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    DescentOutcome { loss, iters }
}
