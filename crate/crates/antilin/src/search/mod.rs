//! Seeded numerical search for mutually orthogonal (skew) conjugations in
//! arbitrary dimension, with verification certificates and Takagi
//! factorization.
//!
//! Operators are parameterized as M = V·S·Vᵀ with V = exp(iH) over Hermitian
//! parameter matrices H and a structural skeleton S (𝟙 for conjugations, the
//! standard symplectic J for skew conjugations), so every iterate is exactly
//! of the requested kind and only orthogonality is optimized. The loss is
//!
//! L = Σ_{a<b} |(ϑ_a, ϑ_b)|² / d²,
//!
//! minimized by gradient descent with analytic gradients and Armijo
//! backtracking, over deterministically seeded restarts.

mod optim;
mod takagi;

pub use takagi::{takagi, TakagiFactorization};

use alloc::string::String;
use alloc::vec::Vec;

use crate::basis::gram_of_mats;
use crate::cmat::{CMat, Complex64};
use crate::construct::{OrthoSet, SetKind};
use crate::error::{Error, Result};
use crate::op::AntiLinearOp;
use crate::sampling::{haar_unitary, restart_seed, rng_from_seed, standard_normal};

use optim::{descend, loss_of_mats, params_per_op, DescentOpts, Problem};

/// Tolerance at which achieved sets are certified and wrapped as [`OrthoSet`].
pub const ACHIEVED_TOL: f64 = 1e-6;

/// Wall-clock source injected by callers; the core crate never reads a clock.
pub trait Stopwatch {
    /// Seconds elapsed since an arbitrary fixed origin.
    fn elapsed_s(&self) -> f64;
}

/// Stopwatch that always reads zero: no time limits, zero wall times.
pub struct NullStopwatch;

impl Stopwatch for NullStopwatch {
    fn elapsed_s(&self) -> f64 {
        0.0
    }
}

/// Restart strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Optimize all `target_k` operators simultaneously.
    Joint,
    /// Grow the set one operator at a time, optimizing only the newest
    /// against the already accepted ones (up to 3 draws per slot).
    Greedy,
}

/// Configuration of a search run. `new` applies defaults and validates; after
/// editing fields call [`SearchConfig::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub dim: usize,
    pub kind: SetKind,
    /// Number of mutually orthogonal operators to look for.
    pub target_k: usize,
    pub restarts: u32,
    /// Iteration budget per descent (per restart, or per greedy slot).
    pub max_iters: u32,
    /// Initial Armijo step; adapted during descent.
    pub step_size: f64,
    /// Loss at or below which a restart counts as a success.
    pub tol_loss: f64,
    /// Master seed; restart r uses the derived seed split(seed, r).
    pub seed: u64,
    pub strategy: Strategy,
}

impl SearchConfig {
    pub fn new(dim: usize, kind: SetKind, target_k: usize, seed: u64) -> Result<Self> {
        let cfg = Self {
            dim,
            kind,
            target_k,
            restarts: 8,
            max_iters: 2000,
            step_size: 0.1,
            tol_loss: 1e-12,
            seed,
            strategy: Strategy::Joint,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every field, including the hard bound target_k ≤ d(d±1)/2 and
    /// the even-dimension requirement for skew sets.
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.target_k == 0 {
            return Err(Error::TooFewOperators {
                found: self.target_k,
            });
        }
        if self.kind == SetKind::Skew && self.dim % 2 == 1 {
            return Err(Error::SkewOddDimension { dim: self.dim });
        }
        let bound = self.kind.bound(self.dim);
        if self.target_k > bound {
            return Err(Error::BoundExceeded {
                dim: self.dim,
                requested: self.target_k,
                bound,
                sign: self.kind.bound_sign(),
            });
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig {
                reason: "restarts must be at least 1",
            });
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig {
                reason: "max_iters must be at least 1",
            });
        }
        if !(self.step_size > 0.0) || !self.step_size.is_finite() {
            return Err(Error::InvalidConfig {
                reason: "step_size must be positive and finite",
            });
        }
        if !(self.tol_loss > 0.0) || !self.tol_loss.is_finite() {
            return Err(Error::InvalidConfig {
                reason: "tol_loss must be positive and finite",
            });
        }
        Ok(())
    }
}

/// Outcome of a single restart; deterministic in (config, restart_index).
#[derive(Clone, Debug)]
pub struct RestartOutcome {
    pub restart_index: u32,
    pub loss: f64,
    pub iterations: u32,
    pub mats: Vec<CMat>,
}

/// Result of a search run.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub config: SearchConfig,
    /// Smallest loss over the restarts that ran (∞ if none ran).
    pub best_loss: f64,
    /// Restart index attaining `best_loss` (smallest index on ties).
    pub best_restart: Option<u32>,
    /// The found set, when `best_loss` ≤ `tol_loss` and the set certifies at
    /// [`ACHIEVED_TOL`].
    pub achieved: Option<OrthoSet>,
    pub per_restart_losses: Vec<f64>,
    pub iterations_used: u64,
    /// Wall time as read from the caller's stopwatch; excluded from any
    /// serialized form so that reports are reproducible byte for byte.
    pub wall_time_s: f64,
    /// True when a time budget cut the run short.
    pub budget_exhausted: bool,
}

impl SearchReport {
    pub fn succeeded(&self) -> bool {
        self.achieved.is_some()
    }
}

/// Time budget for long-running sweeps.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_seconds: Option<f64>,
}

/// Structural skeleton S of a kind: 𝟙 (conjugations) or block-diagonal J
/// (skew conjugations).
fn skeleton(kind: SetKind, d: usize) -> CMat {
    match kind {
        SetKind::Conjugation => CMat::identity(d),
        SetKind::Skew => {
            let mut j = CMat::zeros(d, d);
            for b in 0..d / 2 {
                j[(2 * b, 2 * b + 1)] = Complex64::new(1.0, 0.0);
                j[(2 * b + 1, 2 * b)] = Complex64::new(-1.0, 0.0);
            }
            j
        }
    }
}

/// Random operator of the given kind: V·S·Vᵀ for a Haar-like unitary V from
/// the QR of a complex Gaussian matrix. Skew kind requires even dimension.
pub fn random_structured_unitary(dim: usize, kind: SetKind, seed: u64) -> Result<AntiLinearOp> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if kind == SetKind::Skew && dim % 2 == 1 {
        return Err(Error::SkewOddDimension { dim });
    }
    let mut rng = rng_from_seed(seed);
    let v = haar_unitary(dim, &mut rng);
    let m = &(&v * &skeleton(kind, dim)) * &v.transpose();
    AntiLinearOp::new(m)
}

/// Orthogonality loss Σ_{a<b} |(ϑ_a, ϑ_b)|²/d² of a family; zero for a
/// single operator (no pairs).
pub fn orthogonality_loss(ops: &[AntiLinearOp]) -> Result<f64> {
    if ops.is_empty() {
        return Err(Error::TooFewOperators { found: 0 });
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
    let mats: Vec<CMat> = ops.iter().map(|o| o.matrix().clone()).collect();
    Ok(loss_of_mats(&mats, d))
}

/// Verification certificate for a claimed orthogonal set.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub dim: usize,
    pub kind: SetKind,
    pub size: usize,
    pub tol: f64,
    /// Largest symmetry (conjugation) or antisymmetry (skew) defect.
    pub max_structure_residual: f64,
    pub max_unitarity_residual: f64,
    pub max_offdiag_gram: f64,
    /// Largest deviation of Gram diagonal entries from ±d.
    pub max_diag_deviation: f64,
    pub passed: bool,
}

/// Verifies raw matrices as a set of mutually orthogonal (skew) conjugations.
///
/// Structural problems (empty input, non-square or mismatched matrices,
/// non-finite entries, bad tolerance) are errors; numerical failure is
/// reported as a certificate with `passed = false`.
pub fn verify_matrices(kind: SetKind, mats: &[CMat], tol: f64) -> Result<Certificate> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::NonPositiveTolerance { tol });
    }
    if mats.is_empty() {
        return Err(Error::EmptySet);
    }
    let d = mats[0].rows();
    for m in mats {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() != d {
            return Err(Error::DimMismatch {
                expected: d,
                found: m.rows(),
            });
        }
        if !m.all_finite() {
            return Err(Error::NonFinite);
        }
    }
    if d == 0 {
        return Err(Error::ZeroDimension);
    }

    let mut structure = 0.0f64;
    let mut unitarity = 0.0f64;
    for m in mats {
        let s = match kind {
            SetKind::Conjugation => m.symmetry_residual(),
            SetKind::Skew => m.antisymmetry_residual(),
        };
        structure = structure.max(s);
        unitarity = unitarity.max(m.unitarity_residual());
    }
    let g = gram_of_mats(mats);
    let offdiag = g.max_offdiag();
    let diag = g.max_diag_deviation(kind.sign() * d as f64);
    let within_bound = mats.len() <= kind.bound(d);
    let passed = within_bound
        && structure <= tol
        && unitarity <= tol
        && offdiag <= tol
        && diag <= tol;
    Ok(Certificate {
        dim: d,
        kind,
        size: mats.len(),
        tol,
        max_structure_residual: structure,
        max_unitarity_residual: unitarity,
        max_offdiag_gram: offdiag,
        max_diag_deviation: diag,
        passed,
    })
}

/// Verifies an already-validated set at a (possibly stricter) tolerance.
pub fn verify_set(set: &OrthoSet, tol: f64) -> Result<Certificate> {
    let mats: Vec<CMat> = set.ops().iter().map(|o| o.matrix().clone()).collect();
    verify_matrices(set.kind(), &mats, tol)
}

fn descent_stop(tol_loss: f64, d: usize) -> f64 {
    // Descend past the success threshold so that the achieved set certifies
    // at ACHIEVED_TOL: loss ≤ 1e-14/d² forces every |G_ab| ≤ 0.1·ACHIEVED_TOL.
    (tol_loss * 1e-3).min(1e-14 / (d * d) as f64)
}

fn draw_params(n: usize, rng: &mut rand_chacha::ChaCha12Rng) -> Vec<f64> {
    (0..n).map(|_| standard_normal(rng)).collect()
}

/// Runs restart `restart_index` of a search. Deterministic in the config and
/// index; does not validate the config, so callers can probe infeasible
/// targets (e.g. beyond the d(d±1)/2 bound) and observe the loss plateau.
pub fn run_restart(cfg: &SearchConfig, restart_index: u32) -> RestartOutcome {
    let d = cfg.dim;
    let mut rng = rng_from_seed(restart_seed(cfg.seed, restart_index));
    let stop = descent_stop(cfg.tol_loss, d);
    let opts = DescentOpts {
        max_iters: cfg.max_iters,
        init_step: cfg.step_size,
        stop_loss: stop,
    };
    let (loss, iterations, mats) = match cfg.strategy {
        Strategy::Joint => {
            let prob = Problem {
                d,
                skel: skeleton(cfg.kind, d),
                fixed: Vec::new(),
                n_var: cfg.target_k,
            };
            let mut params = draw_params(prob.total_params(), &mut rng);
            let out = descend(&prob, &mut params, &opts);
            (out.loss, out.iters, prob.var_mats(&params))
        }
        Strategy::Greedy => greedy_from(cfg, &[], &mut rng),
    };
    RestartOutcome {
        restart_index,
        loss,
        iterations,
        mats,
    }
}

/// Greedy growth: fill slots up to `target_k`, optimizing only the newest
/// operator against everything already accepted.
fn greedy_from(
    cfg: &SearchConfig,
    seed_mats: &[CMat],
    rng: &mut rand_chacha::ChaCha12Rng,
) -> (f64, u32, Vec<CMat>) {
    let d = cfg.dim;
    let k = cfg.target_k;
    let skel = skeleton(cfg.kind, d);
    let plen = params_per_op(d);
    let slot_tol = cfg.tol_loss / (k * k) as f64;
    let opts = DescentOpts {
        max_iters: cfg.max_iters,
        init_step: cfg.step_size,
        stop_loss: descent_stop(slot_tol, d),
    };
    let mut accepted: Vec<CMat> = seed_mats.to_vec();
    let mut iterations = 0u32;
    while accepted.len() < k {
        if accepted.is_empty() {
            let prob = Problem {
                d,
                skel: skel.clone(),
                fixed: Vec::new(),
                n_var: 1,
            };
            let params = draw_params(plen, rng);
            accepted.push(prob.var_mats(&params).pop().expect("one operator built"));
            continue;
        }
        let prob = Problem {
            d,
            skel: skel.clone(),
            fixed: accepted.clone(),
            n_var: 1,
        };
        let mut best: Option<(f64, Vec<f64>)> = None;
        for _attempt in 0..3 {
            let mut params = draw_params(plen, rng);
            let out = descend(&prob, &mut params, &opts);
            iterations = iterations.saturating_add(out.iters);
            let better = best.as_ref().map_or(true, |(l, _)| out.loss < *l);
            if better {
                best = Some((out.loss, params));
            }
            if best.as_ref().map_or(false, |(l, _)| *l <= slot_tol) {
                break;
            }
        }
        let (_, params) = best.expect("at least one draw per slot");
        accepted.push(prob.var_mats(&params).pop().expect("one operator built"));
    }
    (loss_of_mats(&accepted, d), iterations, accepted)
}

/// Combines restart outcomes into a report. Outcomes may arrive in any order
/// and number (e.g. from parallel execution); they are sorted by index and
/// truncated at the first success, so a parallel driver that runs all
/// restarts produces the same report as the sequential early-stopping loop.
pub fn assemble_report(
    cfg: &SearchConfig,
    mut outcomes: Vec<RestartOutcome>,
    wall_time_s: f64,
    budget_exhausted: bool,
    meta: &str,
) -> SearchReport {
    outcomes.sort_by_key(|o| o.restart_index);
    if let Some(pos) = outcomes.iter().position(|o| o.loss <= cfg.tol_loss) {
        outcomes.truncate(pos + 1);
    }
    let per_restart_losses: Vec<f64> = outcomes.iter().map(|o| o.loss).collect();
    let iterations_used = outcomes.iter().map(|o| u64::from(o.iterations)).sum();
    let mut best: Option<&RestartOutcome> = None;
    for o in &outcomes {
        if best.map_or(true, |b| o.loss < b.loss) {
            best = Some(o);
        }
    }
    let best_loss = best.map_or(f64::INFINITY, |o| o.loss);
    let best_restart = best.map(|o| o.restart_index);
    let achieved = best.and_then(|o| {
        if o.loss > cfg.tol_loss {
            return None;
        }
        let ops: Option<Vec<AntiLinearOp>> = o
            .mats
            .iter()
            .map(|m| AntiLinearOp::new(m.clone()).ok())
            .collect();
        ops.and_then(|ops| {
            OrthoSet::with_tol(cfg.dim, cfg.kind, ops, String::from(meta), ACHIEVED_TOL).ok()
        })
    });
    SearchReport {
        config: cfg.clone(),
        best_loss,
        best_restart,
        achieved,
        per_restart_losses,
        iterations_used,
        wall_time_s,
        budget_exhausted,
    }
}

fn run_search(
    cfg: &SearchConfig,
    stopwatch: &dyn Stopwatch,
    max_seconds: Option<f64>,
    meta: &str,
) -> SearchReport {
    let t0 = stopwatch.elapsed_s();
    let mut outcomes = Vec::with_capacity(cfg.restarts as usize);
    let mut budget_exhausted = false;
    for r in 0..cfg.restarts {
        if let Some(limit) = max_seconds {
            if stopwatch.elapsed_s() - t0 >= limit {
                budget_exhausted = true;
                break;
            }
        }
        outcomes.push(run_restart(cfg, r));
        if outcomes.last().map_or(false, |o| o.loss <= cfg.tol_loss) {
            break;
        }
    }
    assemble_report(cfg, outcomes, stopwatch.elapsed_s() - t0, budget_exhausted, meta)
}

/// Searches for `target_k` mutually orthogonal operators. Restarts run
/// sequentially and stop early on the first success.
pub fn search_max_set(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    Ok(run_search(cfg, &NullStopwatch, None, "search"))
}

/// [`search_max_set`] with an injected stopwatch and optional time budget in
/// seconds; wall time is reported and the budget is honored between restarts.
pub fn search_with(
    cfg: &SearchConfig,
    stopwatch: &dyn Stopwatch,
    max_seconds: Option<f64>,
) -> Result<SearchReport> {
    cfg.validate()?;
    Ok(run_search(cfg, stopwatch, max_seconds, "search"))
}

/// Runs a search without validating the configuration, so that infeasible
/// targets (beyond the d(d±1)/2 bound) can be probed; such runs plateau at a
/// strictly positive loss and report `achieved = None`.
pub fn search_unchecked(cfg: &SearchConfig) -> SearchReport {
    run_search(cfg, &NullStopwatch, None, "search")
}

/// Extends a verified set to `cfg.target_k` operators by greedy growth,
/// keeping the seed set fixed. The best over `cfg.restarts` attempts wins.
pub fn grow_set(seed_set: &OrthoSet, cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    if seed_set.dim() != cfg.dim {
        return Err(Error::DimMismatch {
            expected: cfg.dim,
            found: seed_set.dim(),
        });
    }
    if seed_set.kind() != cfg.kind {
        return Err(Error::KindMismatch {
            context: "grow_set needs a seed set of the searched kind",
        });
    }
    if seed_set.len() >= cfg.target_k {
        return Err(Error::InvalidConfig {
            reason: "target_k must exceed the seed set size",
        });
    }
    let seed_mats: Vec<CMat> = seed_set.ops().iter().map(|o| o.matrix().clone()).collect();
    let mut outcomes = Vec::with_capacity(cfg.restarts as usize);
    for r in 0..cfg.restarts {
        let mut rng = rng_from_seed(restart_seed(cfg.seed, r));
        let (loss, iterations, mats) = greedy_from(cfg, &seed_mats, &mut rng);
        let success = loss <= cfg.tol_loss;
        outcomes.push(RestartOutcome {
            restart_index: r,
            loss,
            iterations,
            mats,
        });
        if success {
            break;
        }
    }
    Ok(assemble_report(cfg, outcomes, 0.0, false, "grow"))
}

/// Sweeps `target_k` from `k_min` to `k_max` at fixed dimension and kind,
/// stopping early when a time budget runs out. Reports are returned for the
/// values of k actually attempted; the budget is also threaded into each
/// search so a single k cannot overrun it.
pub fn explore_dimension(
    base: &SearchConfig,
    k_min: usize,
    k_max: usize,
    budget: &Budget,
    stopwatch: &dyn Stopwatch,
) -> Result<Vec<SearchReport>> {
    if k_min < 1 || k_min > k_max {
        return Err(Error::InvalidConfig {
            reason: "need 1 <= k_min <= k_max",
        });
    }
    let mut probe = base.clone();
    probe.target_k = k_max;
    probe.validate()?;

    let t0 = stopwatch.elapsed_s();
    let mut reports = Vec::new();
    for k in k_min..=k_max {
        let remaining = budget
            .max_seconds
            .map(|m| m - (stopwatch.elapsed_s() - t0));
        if let Some(rem) = remaining {
            if rem <= 0.0 {
                break;
            }
        }
        let mut cfg = base.clone();
        cfg.target_k = k;
        reports.push(run_search(&cfg, stopwatch, remaining, "search"));
    }
    Ok(reports)
}
