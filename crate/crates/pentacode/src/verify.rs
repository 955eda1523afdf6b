//! Self-verification suite: the cross-checks the library is built around,
//! packaged as named, individually runnable checks with one report line
//! each. The CLI exposes this as `pentacode verify`.
//!
//! Most checks compare two or three independent computation routes (closed
//! forms, symbolic sums, dense simulation, finite differences, Monte
//! Carlo); the tolerances are fixed here, not configurable, so a passing
//! run means the same thing everywhere.

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::channel::{
    rotation_bitflip_channel, transfer_matrix_from_kraus, NoiseParams, ReducedChannel, UnitalBlock,
};
use crate::code::{derive_alpha_beta, CodeSpec};
use crate::coding_map::{apply_reduced, process_matrix_explicit, process_matrix_oracle};
use crate::dense::{iid_noise_kraus, weight_one_error, FiveQubitDense};
use crate::dynamics::{
    fd_jacobian_block9, fd_jacobian_reduced5, fd_jacobian_two_var, jacobian_reduced2,
    norm2_closed_form, scan_circle, threshold_surface,
};
use crate::metrics::{
    avg_infidelity, choi_eigenvalues_closed_form, choi_of_delta, diamond_distance,
    diamond_primal_dual, haar_avg_fidelity_mc, post_correction_metrics,
};
use crate::pauli::Axis;

/// Published expansions of the decoder operators, used as ground truth for
/// the machine-derived tables. Every word carries coefficient −1/4.
pub mod reference {
    pub const D_X_WORDS: [&str; 16] = [
        "XXXXX", "IYYIX", "XIYYI", "IXIYY", "YIXIY", "IZXZI", "XYZZY", "ZZYXY", "IIZXZ", "YXYZZ",
        "ZIIZX", "XZIIZ", "ZYXYZ", "YZZYX", "ZXZII", "YYIXI",
    ];
    pub const D_Y_WORDS: [&str; 16] = [
        "YYYYY", "ZXXZY", "YZXXZ", "ZYZXX", "XZYZX", "ZIYIZ", "YXIIX", "IIXYX", "ZZIYI", "XYXII",
        "IZZIY", "YIZZI", "IXYXI", "XIIXY", "IYIZZ", "XXZYZ",
    ];
    pub const D_Z_WORDS: [&str; 16] = [
        "ZZZZZ", "YIIYZ", "ZYIIY", "YZYII", "IYZYI", "YXZXY", "ZIXXI", "XXIZI", "YYXZX", "IZIXX",
        "XYYXZ", "ZXYYX", "XIZIX", "IXXIZ", "XZXYY", "IIYZY",
    ];

    /// Published basin table: circle radius, max ‖Df‖, min ‖Df‖. The
    /// published extremes carry sampling noise of up to about ±0.011
    /// against the exact values, beyond their printed 3-decimal precision.
    pub const BASIN_TABLE: [(f64, f64, f64); 7] = [
        (0.02, 0.245, 0.101),
        (0.04, 0.520, 0.202),
        (0.06, 0.812, 0.283),
        (0.07, 0.964, 0.332),
        (0.072, 0.995, 0.346),
        (0.073, 1.010, 0.361),
        (0.08, 1.118, 0.387),
    ];
}

/// Outcome of one named check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn new(name: &str, passed: bool, detail: String) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Suite configuration. `quick` trades sample counts for speed without
/// changing any tolerance; results stay deterministic either way.
#[derive(Copy, Clone, Debug)]
pub struct VerifyConfig {
    pub quick: bool,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            quick: false,
            seed: 42,
        }
    }
}

/// Run every check in a fixed order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckReport> {
    vec![
        decoder_term_lists(),
        oracle_equivalence_symbolic(cfg),
        oracle_equivalence_dense(cfg),
        weight_one_correction(),
        fixed_point_derivatives(),
        basin_table(),
        threshold_region(cfg),
        metric_closed_forms(),
        asymptotics(),
        choi_spectrum(cfg),
        haar_mc_fidelity(cfg),
        pattern_preservation(cfg),
        jacobian_finite_differences(cfg),
    ]
}

/// Machine-derived decoder expansions equal the published 16-term lists:
/// same unsigned words, all with coefficient −1/4.
pub fn decoder_term_lists() -> CheckReport {
    let name = "decoder-term-lists";
    let tables = match derive_alpha_beta(&CodeSpec::five_qubit()) {
        Ok(t) => t,
        Err(e) => return CheckReport::new(name, false, format!("derivation failed: {e}")),
    };
    let mut mismatches = Vec::new();
    for (sigma, words) in [
        (Axis::X, reference::D_X_WORDS.as_slice()),
        (Axis::Y, reference::D_Y_WORDS.as_slice()),
        (Axis::Z, reference::D_Z_WORDS.as_slice()),
    ] {
        let expected: std::collections::BTreeSet<[Axis; 5]> = words
            .iter()
            .map(|w| {
                let p: crate::pauli::PauliString = w.parse().unwrap();
                p.axes().try_into().unwrap()
            })
            .collect();
        let derived = tables.beta(sigma);
        let derived_words: std::collections::BTreeSet<[Axis; 5]> =
            derived.iter().map(|t| t.axes).collect();
        if derived_words != expected {
            mismatches.push(format!("D_{sigma} word set differs"));
        }
        if derived.len() != 16
            || derived
                .iter()
                .any(|t| t.coeff != num_rational::Ratio::new(-1, 4))
        {
            mismatches.push(format!("D_{sigma} coefficients differ from -1/4"));
        }
    }
    if mismatches.is_empty() {
        CheckReport::new(
            name,
            true,
            "D_X, D_Y, D_Z match the published lists exactly".into(),
        )
    } else {
        CheckReport::new(name, false, mismatches.join("; "))
    }
}

/// Closed-form process matrix against the 256-term symbolic sum, on random
/// unital blocks with entries in `[-1, 1]`.
pub fn oracle_equivalence_symbolic(cfg: &VerifyConfig) -> CheckReport {
    let samples = if cfg.quick { 20 } else { 100 };
    oracle_equivalence_symbolic_with(process_matrix_explicit, samples, cfg.seed)
}

/// Same check with the closed-form route supplied by the caller, so a
/// deliberately perturbed implementation can be shown to fail.
pub fn oracle_equivalence_symbolic_with<F>(explicit: F, samples: usize, seed: u64) -> CheckReport
where
    F: Fn(&UnitalBlock) -> UnitalBlock,
{
    let name = "oracle-equivalence-symbolic";
    let tables = derive_alpha_beta(&CodeSpec::five_qubit()).expect("five-qubit code is valid");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let block = UnitalBlock {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-1.0..1.0))),
        };
        let diff = explicit(&block).max_abs_diff(&process_matrix_oracle(&tables, &block));
        worst = worst.max(diff);
    }
    CheckReport::new(
        name,
        worst < 1e-12,
        format!("max |Δ| = {worst:.3e} over {samples} random blocks (tol 1e-12)"),
    )
}

/// Closed-form process matrix against the dense 32-dimensional simulation
/// on random CPTP unital channels (mixtures of random unitaries).
pub fn oracle_equivalence_dense(cfg: &VerifyConfig) -> CheckReport {
    let name = "oracle-equivalence-dense";
    let channels = if cfg.quick { 3 } else { 10 };
    let dense = match FiveQubitDense::new(&CodeSpec::five_qubit()) {
        Ok(d) => d,
        Err(e) => return CheckReport::new(name, false, format!("construction failed: {e}")),
    };
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x0dd5eed);
    let mut worst = dense.self_check();
    for _ in 0..channels {
        let kraus1 = random_unital_kraus(&mut rng);
        let block = transfer_matrix_from_kraus(&kraus1).unital_block();
        let expected = process_matrix_explicit(&block).embed();
        let got = dense.logical_transfer_matrix(&iid_noise_kraus(&kraus1));
        worst = worst.max(got.max_abs_diff(&expected));
    }
    CheckReport::new(
        name,
        worst < 1e-10,
        format!("max |Δ| = {worst:.3e} over {channels} random CPTP channels (tol 1e-10)"),
    )
}

/// Each of the fifteen weight-one Pauli errors decodes to the identity
/// logical channel through the dense path.
pub fn weight_one_correction() -> CheckReport {
    let name = "weight-one-correction";
    let dense = match FiveQubitDense::new(&CodeSpec::five_qubit()) {
        Ok(d) => d,
        Err(e) => return CheckReport::new(name, false, format!("construction failed: {e}")),
    };
    let identity = crate::channel::TransferMatrix::identity();
    let mut worst = 0.0f64;
    for qubit in 0..5 {
        for axis in Axis::NONTRIVIAL {
            let tm = dense.logical_transfer_matrix(&weight_one_error(qubit, axis));
            worst = worst.max(tm.max_abs_diff(&identity));
        }
    }
    CheckReport::new(
        name,
        worst < 1e-10,
        format!("max |Δ| from identity = {worst:.3e} over 15 errors (tol 1e-10)"),
    )
}

/// The identity channel is an exact fixed point with vanishing total
/// derivative: analytically for the two-variable map, by central finite
/// differences for the five-variable reduced map and the full nine-entry
/// process matrix.
pub fn fixed_point_derivatives() -> CheckReport {
    let name = "fixed-point-derivatives";
    let fp = ReducedChannel::identity();
    let exact = apply_reduced(&fp).as_array() == fp.as_array();
    let analytic = jacobian_reduced2(1.0, 1.0).norm();
    let fd5 = fd_jacobian_reduced5(&fp, 1e-5).norm();
    let fd9 = fd_jacobian_block9(&UnitalBlock::identity(), 1e-5).norm();
    let passed = exact && analytic == 0.0 && fd5 < 1e-6 && fd9 < 1e-6;
    CheckReport::new(
        name,
        passed,
        format!(
            "fixed point exact: {exact}; ‖Df(1,1)‖ = {analytic}; ‖D(5-var)‖ = {fd5:.3e}, \
             ‖D(9-var)‖ = {fd9:.3e} (tol 1e-6)"
        ),
    )
}

/// Reproduce the basin table: extremes of `‖Df‖` over circles around the
/// fixed point, 3600 samples each. The gate tolerance of ±0.012 reflects
/// the sampling noise the published extremes carry; cells further than the
/// printed ±0.005 precision are listed in the detail line. The value the
/// threshold argument rests on — `max ‖Df‖ < 1` at radius 0.072 — is
/// checked strictly.
pub fn basin_table() -> CheckReport {
    let name = "basin-table";
    let mut worst = 0.0f64;
    let mut beyond_printed = Vec::new();
    let mut contraction_ok = true;
    for (radius, max_ref, min_ref) in reference::BASIN_TABLE {
        let est = scan_circle(radius, 3600);
        let dmax = (est.max_norm_on_circle - max_ref).abs();
        let dmin = (est.min_norm_on_circle - min_ref).abs();
        worst = worst.max(dmax).max(dmin);
        if dmax > 0.005 {
            beyond_printed.push(format!("max@{radius} Δ={dmax:.4}"));
        }
        if dmin > 0.005 {
            beyond_printed.push(format!("min@{radius} Δ={dmin:.4}"));
        }
        if radius == 0.072 {
            contraction_ok =
                est.max_norm_on_circle < 1.0 && (est.max_norm_on_circle - 0.995).abs() < 0.005;
        }
    }
    let passed = worst < 0.012 && contraction_ok;
    let mut detail = format!(
        "max |Δ| = {worst:.4} against the published table (gate ±0.012); \
         ‖Df‖ < 1 certified at r = 0.072: {contraction_ok}"
    );
    if !beyond_printed.is_empty() {
        detail.push_str(&format!(
            "; cells beyond the printed ±0.005: {}",
            beyond_printed.join(", ")
        ));
    }
    CheckReport::new(name, passed, detail)
}

/// Every grid point satisfying `1 − (1−2q)cos ε < 0.072` iterates to the
/// identity channel within 60 steps at tolerance 1e-9.
pub fn threshold_region(cfg: &VerifyConfig) -> CheckReport {
    let name = "threshold-region";
    let n = if cfg.quick { 20 } else { 50 };
    let q_grid: Vec<f64> = (0..n).map(|k| 0.05 * k as f64 / (n - 1) as f64).collect();
    let eps_grid: Vec<f64> = (0..n).map(|k| 0.45 * k as f64 / (n - 1) as f64).collect();
    let points = threshold_surface(&q_grid, &eps_grid, 60, 1e-9);
    let mut guaranteed = 0usize;
    let mut failures = Vec::new();
    for p in &points {
        if 1.0 - (1.0 - 2.0 * p.q) * p.epsilon.cos() < 0.072 {
            guaranteed += 1;
            if !p.converged {
                failures.push(format!("({}, {})", p.q, p.epsilon));
            }
        }
    }
    let boundary = threshold_surface(&[0.0], &[0.379], 60, 1e-9)[0].converged;
    let passed = failures.is_empty() && boundary;
    let detail = if passed {
        format!(
            "{guaranteed}/{} grid points in the certified region all converge; \
             (q=0, ε=0.379) converges: {boundary}",
            points.len()
        )
    } else {
        format!("non-converging certified points: {}", failures.join(", "))
    };
    CheckReport::new(name, passed, detail)
}

/// Closed-form physical metrics against their direct evaluations, and the
/// printed post-correction formulas against the composition route, on a
/// 20×20 parameter grid at 1e-12.
pub fn metric_closed_forms() -> CheckReport {
    let name = "metric-closed-forms";
    let mut worst = 0.0f64;
    for i in 0..20 {
        for j in 0..20 {
            let q = 0.05 * i as f64 / 19.0;
            let eps = 0.45 * j as f64 / 19.0;
            let params = NoiseParams::new(q, eps);
            let c = rotation_bitflip_channel(params);
            let w = 1.0 - 2.0 * q;

            let r = avg_infidelity(&c);
            let r_ref = (1.0 - w * eps.cos()) / 3.0;
            worst = worst.max((r - r_ref).abs());

            let d = diamond_distance(&c).expect("family is in regime");
            let d_ref = 0.5 * (1.0 + w * w - 2.0 * w * eps.cos()).sqrt();
            worst = worst.max((d - d_ref).abs());

            let report = post_correction_metrics(params);
            let logical = apply_reduced(&c);
            worst = worst.max((report.infidelity - avg_infidelity(&logical)).abs());
            let d_logical = diamond_distance(&logical).expect("image is in regime");
            worst = worst.max((report.diamond_distance - d_logical).abs());
        }
    }
    CheckReport::new(
        name,
        worst < 1e-12,
        format!("max |Δ| = {worst:.3e} over a 20×20 grid (tol 1e-12)"),
    )
}

/// Leading-order behavior of the logical error rates: quartic suppression
/// of coherent errors, quadratic suppression of stochastic errors.
pub fn asymptotics() -> CheckReport {
    let name = "asymptotics";
    let eps = 0.01f64;
    let coherent = post_correction_metrics(NoiseParams::new(0.0, eps));
    let d_phys = diamond_distance(&rotation_bitflip_channel(NoiseParams::new(0.0, eps)))
        .expect("family is in regime");
    let ratios_coherent = [
        coherent.infidelity / (5.0 / 12.0 * eps.powi(4)),
        coherent.diamond_distance / (5.0 / 8.0 * eps.powi(4)),
        coherent.diamond_distance / (10.0 * d_phys.powi(4)),
    ];
    let q = 1e-3f64;
    let stochastic = post_correction_metrics(NoiseParams::new(q, 0.0));
    let ratios_stochastic = [
        stochastic.infidelity / (20.0 / 3.0 * q * q),
        stochastic.diamond_distance / (10.0 * q * q),
    ];
    let coherent_ok = ratios_coherent.iter().all(|r| (0.99..=1.01).contains(r));
    let stochastic_ok = ratios_stochastic.iter().all(|r| (0.98..=1.02).contains(r));
    CheckReport::new(
        name,
        coherent_ok && stochastic_ok,
        format!(
            "coherent ratios {ratios_coherent:.4?} (window [0.99, 1.01]); \
             stochastic ratios {ratios_stochastic:.4?} (window [0.98, 1.02])"
        ),
    )
}

/// Numerically diagonalized Choi spectra against the closed-form
/// eigenvalues, and matching primal/dual feasible values, on random
/// in-regime channels.
pub fn choi_spectrum(cfg: &VerifyConfig) -> CheckReport {
    let name = "choi-spectrum";
    let wanted = if cfg.quick { 10 } else { 50 };
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0xc401);
    let mut worst = 0.0f64;
    let mut tested = 0usize;
    while tested < wanted {
        let c = random_in_regime_channel(&mut rng);
        tested += 1;
        let numeric = choi_of_delta(&c).expect("pattern holds").eigenvalues();
        let closed = choi_eigenvalues_closed_form(&c).expect("pattern holds");
        for (a, b) in numeric.iter().zip(closed.iter()) {
            worst = worst.max((a - b).abs());
        }
        let d = diamond_distance(&c).expect("in regime");
        let pd = diamond_primal_dual(&c).expect("in regime");
        worst = worst.max((pd.primal - d).abs());
        worst = worst.max((pd.dual - d).abs());
        worst = worst.max((-pd.feasibility_defect).max(0.0));
    }
    CheckReport::new(
        name,
        worst < 1e-10,
        format!("max |Δ| = {worst:.3e} over {wanted} in-regime channels (tol 1e-10)"),
    )
}

/// Monte Carlo Haar-averaged fidelity against the trace formula.
pub fn haar_mc_fidelity(cfg: &VerifyConfig) -> CheckReport {
    let name = "haar-mc-fidelity";
    let channels = if cfg.quick { 5 } else { 20 };
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0xaa12);
    let mut worst = 0.0f64;
    for k in 0..channels {
        let c = ReducedChannel::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let mc = haar_avg_fidelity_mc(&c, 1_000_000, cfg.seed.wrapping_add(k as u64));
        worst = worst.max((mc - (1.0 - avg_infidelity(&c))).abs());
    }
    CheckReport::new(
        name,
        worst < 1e-3,
        format!("max |Δ| = {worst:.3e} over {channels} channels × 1e6 states (tol 1e-3)"),
    )
}

/// The reduced pattern's structural zeros and the antisymmetric sign
/// pattern survive the coding map exactly.
pub fn pattern_preservation(cfg: &VerifyConfig) -> CheckReport {
    let name = "pattern-preservation";
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x9a77);
    let mut zeros_ok = true;
    let mut signs_ok = true;
    for _ in 0..200 {
        let u = rng.random_range(-1.5..1.5);
        let c = ReducedChannel::new(
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
            u,
            rng.random_range(-1.5..1.5),
        );
        let out = process_matrix_explicit(&c.to_block());
        let e = out.entries;
        zeros_ok &= e[0][1] == 0.0 && e[0][2] == 0.0 && e[1][0] == 0.0 && e[2][0] == 0.0;
        let anti = apply_reduced(&ReducedChannel::new(c.x, c.y, c.z, u, -u));
        signs_ok &= anti.v == -anti.u;
    }
    CheckReport::new(
        name,
        zeros_ok && signs_ok,
        format!("structural zeros exact: {zeros_ok}; v = -u preserved exactly: {signs_ok}"),
    )
}

/// Analytic two-variable Jacobian against central finite differences.
pub fn jacobian_finite_differences(cfg: &VerifyConfig) -> CheckReport {
    let name = "jacobian-fd";
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0xfd);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = rng.random_range(-1.2..1.2);
        let y = rng.random_range(-1.2..1.2);
        let diff = (jacobian_reduced2(x, y) - fd_jacobian_two_var(x, y, 1e-5)).norm();
        worst = worst.max(diff);
        let closed = norm2_closed_form(x, y).expect("discriminant nonnegative");
        let eig = crate::dynamics::norm2_eigensolve(&jacobian_reduced2(x, y));
        worst = worst.max((closed - eig).abs());
    }
    CheckReport::new(
        name,
        worst < 1e-6,
        format!(
            "max |Δ| = {worst:.3e} over 100 points, analytic vs FD and closed-form \
                 norm vs eigensolve (tol 1e-6)"
        ),
    )
}

/// A random channel satisfying the diamond-distance regime preconditions.
fn random_in_regime_channel(rng: &mut StdRng) -> ReducedChannel {
    loop {
        let x: f64 = rng.random_range(0.6..1.0);
        let y: f64 = rng.random_range(0.6..0.999);
        let u: f64 = rng.random_range(-0.4..0.4);
        let s = ((1.0 - y) * (1.0 - y) + u * u).sqrt();
        if s >= (1.0 - x) / 2.0 {
            return ReducedChannel::new(x, y, y, u, -u);
        }
    }
}

/// A random CPTP unital single-qubit channel as Kraus operators: a convex
/// mixture of three Haar-random unitaries.
pub fn random_unital_kraus(rng: &mut StdRng) -> Vec<Matrix2<Complex64>> {
    let mut weights = [0.0f64; 3];
    for w in weights.iter_mut() {
        *w = rng.random_range(0.05..1.0);
    }
    let total: f64 = weights.iter().sum();
    weights
        .iter()
        .map(|w| {
            let u = haar_unitary_2x2(rng);
            u.map(|e| e * (w / total).sqrt())
        })
        .collect()
}

/// Haar-random SU(2) element via a uniform unit quaternion.
fn haar_unitary_2x2(rng: &mut StdRng) -> Matrix2<Complex64> {
    let mut q = [0.0f64; 4];
    loop {
        for v in q.iter_mut() {
            *v = gaussian(rng);
        }
        let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for v in q.iter_mut() {
                *v /= norm;
            }
            break;
        }
    }
    let [a, b, c, d] = q;
    Matrix2::new(
        Complex64::new(a, b),
        Complex64::new(c, d),
        Complex64::new(-c, d),
        Complex64::new(a, -b),
    )
}

/// Standard normal sample by Box–Muller.
pub(crate) fn gaussian(rng: &mut StdRng) -> f64 {
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
