//! Acceptance gate: one test per numbered criterion, each emitting a single
//! `[criterion N] PASS/FAIL — ...` line (run with `-- --nocapture` to see the
//! lines for passing tests).

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use antilin::basis::{basis_minus, basis_plus, gram, signature};
use antilin::construct::{fourier_set, max_sets, tau_set, tensor, OrthoSet, SetKind};
use antilin::op::canonical_form;
use antilin::search::{
    random_structured_unitary, search_max_set, search_unchecked, takagi, verify_matrices,
    verify_set, SearchConfig, Strategy, ACHIEVED_TOL,
};
use antilin::{AntiLinearOp, CMat, Complex64, Error};

fn conclude(n: usize, ok: bool, summary: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("[criterion {n}] {status} — {summary}");
    assert!(ok, "[criterion {n}] {status} — {summary}");
}

fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn rand_complex(rng: &mut ChaCha12Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn rand_mat(rng: &mut ChaCha12Rng, d: usize) -> CMat {
    CMat::from_fn(d, d, |_, _| rand_complex(rng))
}

fn rand_vec(rng: &mut ChaCha12Rng, d: usize) -> Vec<Complex64> {
    (0..d).map(|_| rand_complex(rng)).collect()
}

fn rand_op(rng: &mut ChaCha12Rng, d: usize) -> AntiLinearOp {
    AntiLinearOp::new(rand_mat(rng, d)).expect("random matrix is square and finite")
}

/// Counting identities: dim ℋ± = d(d±1)/2, combined Gram diag(+1,...,−1,...),
/// signature d, for d = 1..8, in under 5 s.
#[test]
fn criterion_01_counting_identities() {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    let mut ok = true;
    for d in 1..=8usize {
        let plus = basis_plus(d).expect("basis exists");
        let minus = basis_minus(d).expect("basis exists");
        ok &= plus.len() == d * (d + 1) / 2;
        ok &= minus.len() == d * (d - 1) / 2;
        ok &= signature(d) == d;

        let mut ops = plus.ops().to_vec();
        ops.extend_from_slice(minus.ops());
        let g = gram(&ops).expect("gram of a basis");
        let n_plus = plus.len();
        for a in 0..ops.len() {
            for b in 0..ops.len() {
                let expected = if a != b {
                    Complex64::new(0.0, 0.0)
                } else if a < n_plus {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                };
                worst = worst.max((g.entries()[(a, b)] - expected).norm());
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    ok &= worst <= 1e-12 && elapsed < 5.0;
    conclude(
        1,
        ok,
        &format!(
            "d = 1..8: sizes d(d±1)/2, signature d, combined Gram within {worst:.2e} of \
             diag(±1) (tol 1e-12), {elapsed:.2}s (budget 5s)"
        ),
    );
}

/// The d = 2 quadruple: Gram 2·I₃ and [−2], the product relations through
/// the Pauli matrices, involution signs, and tracelessness, all at 1e−14.
#[test]
fn criterion_02_tau_relations() {
    let tol = 1e-14;
    let (conj, skew) = tau_set();
    let mut ok = conj.len() == 3 && skew.len() == 1;
    let mut worst = 0.0f64;

    let g = conj.gram().expect("gram of tau conjugations");
    worst = worst.max(g.max_offdiag());
    worst = worst.max(g.max_diag_deviation(2.0));
    let gs = skew.gram().expect("gram of tau0");
    worst = worst.max((gs.entries()[(0, 0)] - Complex64::new(-2.0, 0.0)).norm());

    let t1 = &conj.ops()[0];
    let t2 = &conj.ops()[1];
    let t3 = &conj.ops()[2];
    let t0 = &skew.ops()[0];
    let minus_i = Complex64::new(0.0, -1.0);
    let product = |a: &AntiLinearOp, b: &AntiLinearOp| -> CMat {
        a.compose(b).expect("2x2 composition").into_matrix()
    };

    // σ_j as defined by (dim2b): τ₁τ₂ = iσ₃, τ₃τ₁ = iσ₂, τ₂τ₃ = iσ₁.
    let sigma3 = product(t1, t2).scale(minus_i);
    let sigma2 = product(t3, t1).scale(minus_i);
    let sigma1 = product(t2, t3).scale(minus_i);
    // (dim2c) names the same σ_j through τ₀: τ₁τ₀ = σ₁, τ₂τ₀ = σ₂, τ₃τ₀ = σ₃.
    worst = worst.max(product(t1, t0).fro_dist(&sigma1));
    worst = worst.max(product(t2, t0).fro_dist(&sigma2));
    worst = worst.max(product(t3, t0).fro_dist(&sigma3));
    // Triple product τ₁τ₂τ₃ = −iτ₀ (anti-linear on both sides).
    let triple = t1
        .compose(t2)
        .expect("2x2 composition")
        .compose_anti(t3)
        .expect("2x2 composition");
    worst = worst.max(triple.matrix().fro_dist(t0.scale(minus_i).matrix()));
    // Tracelessness of σ₁, σ₂, σ₃.
    for s in [&sigma1, &sigma2, &sigma3] {
        worst = worst.max(s.trace().norm());
    }
    // Involution signs: τ_m² = 𝟙 for m = 1,2,3 and τ₀² = −𝟙.
    let eye = CMat::identity(2);
    for t in [t1, t2, t3] {
        worst = worst.max(product(t, t).fro_dist(&eye));
    }
    worst = worst.max(product(t0, t0).fro_dist(&eye.scale(Complex64::new(-1.0, 0.0))));

    ok &= worst <= tol;
    conclude(
        2,
        ok,
        &format!(
            "tau quadruple: Gram 2·I₃ and [−2], eight product relations incl. \
             τ₁τ₂τ₃ = −iτ₀, σ traceless, involution signs; worst residual \
             {worst:.2e} (tol 1e-14)"
        ),
    );
}

/// Power-of-two saturation: max_sets sizes (3,1), (10,6), (36,28), (136,120)
/// for d = 2,4,8,16, verified at 1e−10, in under 10 s.
#[test]
fn criterion_03_power_two_saturation() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut sizes = Vec::new();
    for (d, n_plus, n_minus) in [(2, 3, 1), (4, 10, 6), (8, 36, 28), (16, 136, 120)] {
        let (conj, skew) = max_sets(d).expect("power-of-two construction");
        ok &= conj.len() == n_plus && skew.len() == n_minus;
        ok &= verify_set(&conj, 1e-10).expect("certificate").passed;
        ok &= verify_set(&skew, 1e-10).expect("certificate").passed;
        sizes.push(format!("d={d}: ({}, {})", conj.len(), skew.len()));
    }
    let elapsed = t0.elapsed().as_secs_f64();
    ok &= elapsed < 10.0;
    conclude(
        3,
        ok,
        &format!(
            "{}; all verified at 1e-10 in {elapsed:.2}s (budget 10s)",
            sizes.join(", ")
        ),
    );
}

/// Bound enforcement: k > d(d±1)/2 is rejected up front, and with the gate
/// bypassed the d=2, k=4 loss plateaus above 0.1 across 16 restarts.
#[test]
fn criterion_04_bound_enforcement() {
    let mut ok = true;

    ok &= matches!(
        SearchConfig::new(2, SetKind::Conjugation, 4, 0),
        Err(Error::BoundExceeded {
            requested: 4,
            bound: 3,
            ..
        })
    );
    ok &= matches!(
        SearchConfig::new(4, SetKind::Skew, 7, 0),
        Err(Error::BoundExceeded {
            requested: 7,
            bound: 6,
            ..
        })
    );

    // Bypass the gate: four conjugations cannot fit in the 3-dimensional
    // Hermitian subspace at d = 2, so every restart stays far from zero.
    let cfg = SearchConfig {
        dim: 2,
        kind: SetKind::Conjugation,
        target_k: 4,
        restarts: 16,
        max_iters: 600,
        step_size: 0.1,
        tol_loss: 1e-12,
        seed: 20_260_826,
        strategy: Strategy::Joint,
    };
    let report = search_unchecked(&cfg);
    let min_loss = report
        .per_restart_losses
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    ok &= report.per_restart_losses.len() == 16;
    ok &= min_loss > 0.1;
    ok &= report.achieved.is_none();
    conclude(
        4,
        ok,
        &format!(
            "k beyond d(d±1)/2 rejected for both kinds; bypassed d=2, k=4 search \
             plateaued at loss ≥ {min_loss:.3} over 16 restarts (threshold 0.1)"
        ),
    );
}

/// Wigner adjoint identity ⟨φ₁, ϑ†φ₂⟩ = ⟨φ₂, ϑφ₁⟩ over 1000 random triples
/// per dimension, to 1e−12.
#[test]
fn criterion_05_adjoint_identity() {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for d in 1..=8usize {
        for _ in 0..1000 {
            let op = rand_op(&mut r, d);
            let adj = op.adjoint();
            let phi1 = rand_vec(&mut r, d);
            let phi2 = rand_vec(&mut r, d);
            let lhs = antilin::cmat::inner(&phi1, &adj.apply(&phi2).expect("same dim"));
            let rhs = antilin::cmat::inner(&phi2, &op.apply(&phi1).expect("same dim"));
            worst = worst.max((lhs - rhs).norm());
        }
    }
    let ok = worst < 1e-12;
    conclude(
        5,
        ok,
        &format!(
            "⟨φ₁, ϑ†φ₂⟩ = ⟨φ₂, ϑφ₁⟩ over 1000 triples × d = 1..8; max deviation \
             {worst:.2e} (tol 1e-12)"
        ),
    );
}

/// Sign structure of the canonical form: (ϑ⁺,ϑ⁺) ≥ 0, (ϑ⁻,ϑ⁻) ≤ 0, and the
/// two parts are orthogonal, over 1000 random operators per dimension.
#[test]
fn criterion_06_sign_structure() {
    let mut r = rng(6);
    let mut min_plus = f64::INFINITY;
    let mut max_minus = f64::NEG_INFINITY;
    let mut worst_cross = 0.0f64;
    let mut worst_imag = 0.0f64;
    for d in 1..=8usize {
        for _ in 0..1000 {
            let op = rand_op(&mut r, d);
            let h = op.hermitian_part();
            let s = op.skew_part();
            let hh = canonical_form(&h, &h).expect("same dim");
            let ss = canonical_form(&s, &s).expect("same dim");
            let hs = canonical_form(&h, &s).expect("same dim");
            min_plus = min_plus.min(hh.re);
            max_minus = max_minus.max(ss.re);
            worst_imag = worst_imag.max(hh.im.abs()).max(ss.im.abs());
            worst_cross = worst_cross.max(hs.norm());
        }
    }
    let ok = min_plus >= -1e-12 && max_minus <= 1e-12 && worst_cross < 1e-12 && worst_imag <= 1e-12;
    conclude(
        6,
        ok,
        &format!(
            "1000 ops × d = 1..8: (ϑ⁺,ϑ⁺) ≥ {min_plus:.2e}, (ϑ⁻,ϑ⁻) ≤ {max_minus:.2e}, \
             |(ϑ⁺,ϑ⁻)| ≤ {worst_cross:.2e} (tol 1e-12)"
        ),
    );
}

/// Tensor multiplicativity (ϑ₁⊗ϑ₂, ϑ₁'⊗ϑ₂') = (ϑ₁,ϑ₁')(ϑ₂,ϑ₂') over 500
/// random quadruples, to 1e−11 relative.
#[test]
fn criterion_07_tensor_multiplicativity() {
    let mut r = rng(7);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let d1 = r.random_range(1..=4usize);
        let d2 = r.random_range(1..=4usize);
        let (a, a2) = (rand_op(&mut r, d1), rand_op(&mut r, d1));
        let (b, b2) = (rand_op(&mut r, d2), rand_op(&mut r, d2));
        let lhs = canonical_form(&tensor(&a, &b), &tensor(&a2, &b2)).expect("same dim");
        let rhs = canonical_form(&a, &a2).expect("same dim")
            * canonical_form(&b, &b2).expect("same dim");
        worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0));
    }
    let ok = worst <= 1e-11;
    conclude(
        7,
        ok,
        &format!(
            "500 random quadruples at d₁,d₂ ≤ 4; max relative deviation {worst:.2e} \
             (tol 1e-11)"
        ),
    );
}

/// Search soundness: d=2/k=3 in ≤ 8 restarts and 5 s; d=3/k=3 (tol 1e−8) in
/// ≤ 16 restarts and 30 s; d=4/k=10 produces a mandatory verified witness,
/// with the cold-start success reported best-effort.
#[test]
fn criterion_08_search_soundness() {
    let mut ok = true;

    let cfg2 = SearchConfig::new(2, SetKind::Conjugation, 3, 101).expect("valid config");
    let t0 = Instant::now();
    let rep2 = search_max_set(&cfg2).expect("validated config");
    let t2 = t0.elapsed().as_secs_f64();
    ok &= rep2.succeeded() && rep2.best_loss < 1e-12 && t2 < 5.0;
    ok &= rep2.per_restart_losses.len() <= 8;

    let mut cfg3 = SearchConfig::new(3, SetKind::Conjugation, 3, 202).expect("valid config");
    cfg3.restarts = 16;
    cfg3.tol_loss = 1e-8;
    let t0 = Instant::now();
    let rep3 = search_max_set(&cfg3).expect("validated config");
    let t3 = t0.elapsed().as_secs_f64();
    ok &= rep3.succeeded() && rep3.best_loss < 1e-8 && t3 < 30.0;
    ok &= rep3.per_restart_losses.len() <= 16;

    // d = 4, k = 10: cold start is best-effort; the verified witness is not.
    // A search witness certifies at the search contract tolerance
    // (ACHIEVED_TOL); the exact construction backs it up at 1e-10.
    let cfg4 = SearchConfig::new(4, SetKind::Conjugation, 10, 303).expect("valid config");
    let t0 = Instant::now();
    let rep4 = search_max_set(&cfg4).expect("validated config");
    let t4 = t0.elapsed().as_secs_f64();
    let cold_ok = rep4.succeeded();
    let (witness, witness_src, witness_tol) = match rep4.achieved.clone() {
        Some(set) => (set, "cold search", ACHIEVED_TOL),
        None => (
            max_sets(4).expect("power-of-two construction").0,
            "power2(4) construction (greedy seed)",
            1e-10,
        ),
    };
    let cert = verify_set(&witness, witness_tol).expect("certificate");
    ok &= witness.len() == 10 && cert.passed;

    conclude(
        8,
        ok,
        &format!(
            "d=2/k=3 loss {:.1e} in {t2:.2}s (≤8 restarts, 5s); d=3/k=3 loss {:.1e} in \
             {t3:.2}s (≤16 restarts, 30s); d=4/k=10 cold search {} in {t4:.2}s \
             (best-effort, loss {:.1e}), witness via {witness_src} verified at \
             {witness_tol:.0e}",
            rep2.best_loss,
            rep3.best_loss,
            if cold_ok { "succeeded" } else { "failed" },
            rep4.best_loss,
        ),
    );
}

/// Takagi factorization: 500 random complex symmetric matrices at d ≤ 8 plus
/// degenerate-spectrum cases all reconstruct to better than 1e−10.
#[test]
fn criterion_09_takagi() {
    let mut r = rng(9);
    let mut worst = 0.0f64;
    let mut check = |a: &CMat| {
        let f = takagi(a, 1e-10).expect("symmetric input");
        worst = worst.max(f.reconstruct().fro_dist(a));
        worst = worst.max(f.u.unitarity_residual());
        for w in f.sigma.windows(2) {
            assert!(w[0] >= w[1], "singular values must be non-increasing");
        }
    };

    for _ in 0..500 {
        let d = r.random_range(1..=8usize);
        let b = rand_mat(&mut r, d);
        let sym = CMat::from_fn(d, d, |i, j| (b[(i, j)] + b[(j, i)]) * 0.5);
        check(&sym);
    }

    // Degenerate spectra: zero, scalar, permutation ⊗ 𝟙, repeated/rank-deficient
    // diagonal, diagonal Fourier conjugation, tensor square, and rank one.
    check(&CMat::zeros(4, 4));
    check(&CMat::identity(5));
    check(&CMat::identity(6).scale(Complex64::new(3.0, 0.0)));
    check(&CMat::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]).kron(&CMat::identity(2)));
    check(&CMat::from_fn(4, 4, |i, j| {
        if i == j && i < 2 {
            Complex64::new(5.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }));
    check(fourier_set(5).expect("fourier family").ops()[1].matrix());
    let (conj2, _) = tau_set();
    check(tensor(&conj2.ops()[2], &conj2.ops()[2]).matrix());
    let x = rand_vec(&mut r, 6);
    check(&CMat::from_fn(6, 6, |i, j| x[i] * x[j]));

    let ok = worst < 1e-10;
    conclude(
        9,
        ok,
        &format!(
            "500 random symmetric (d ≤ 8) + 8 degenerate cases: worst reconstruction \
             and unitarity residual {worst:.2e} (tol 1e-10)"
        ),
    );
}

/// Odd-dimension skew exclusion: every candidate skew conjugation at d = 3, 5
/// fails verification, and structured sampling refuses to even try.
#[test]
fn criterion_10_odd_skew_exclusion() {
    let mut r = rng(10);
    let mut ok = true;
    let mut best_unitarity = f64::INFINITY;
    for d in [3usize, 5] {
        for _ in 0..40 {
            let b = rand_mat(&mut r, d);
            let anti = CMat::from_fn(d, d, |i, j| (b[(i, j)] - b[(j, i)]) * 0.5);
            // Scale to Frobenius norm √d, the best any unitary candidate can do.
            let norm = anti.fro_norm();
            let candidate = anti.scale(Complex64::new((d as f64).sqrt() / norm, 0.0));
            let cert =
                verify_matrices(SetKind::Skew, &[candidate], 1e-10).expect("finite candidate");
            ok &= !cert.passed;
            best_unitarity = best_unitarity.min(cert.max_unitarity_residual);
        }
        ok &= matches!(
            random_structured_unitary(d, SetKind::Skew, 77),
            Err(Error::SkewOddDimension { .. })
        );
        ok &= OrthoSet::new(
            d,
            SetKind::Skew,
            vec![AntiLinearOp::standard_conjugation(d)],
            String::from("candidate"),
        )
        .is_err();
    }
    conclude(
        10,
        ok,
        &format!(
            "80 antisymmetric candidates at d = 3, 5 all rejected (unitarity residual \
             ≥ {best_unitarity:.2}); random_structured_unitary(skew, odd) errors"
        ),
    );
}

/// Determinism: fixed-seed searches emit byte-identical report JSON across
/// runs, including with parallel restarts.
#[test]
fn criterion_11_determinism() {
    let run = |parallel: bool| -> (i32, Vec<u8>) {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_antilin"));
        cmd.args([
            "search",
            "--dim",
            "3",
            "--kind",
            "conjugation",
            "--target-k",
            "3",
            "--seed",
            "12345",
            "--restarts",
            "6",
        ])
        .env_remove("ANTILIN_SEED");
        if parallel {
            cmd.arg("--parallel");
        }
        let out = cmd.output().expect("binary should spawn");
        (out.status.code().unwrap_or(-1), out.stdout)
    };

    let (c1, first) = run(false);
    let (c2, second) = run(false);
    let (c3, third) = run(true);
    let ok = c1 == 0 && c2 == 0 && c3 == 0 && first == second && first == third;
    conclude(
        11,
        ok,
        &format!(
            "three runs (sequential ×2, parallel ×1) of `search --dim 3 -k 3 --seed 12345` \
             produced identical {}-byte reports",
            first.len()
        ),
    );
}
