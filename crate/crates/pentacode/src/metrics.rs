//! Error-strength measures for channels in the reduced pattern: average
//! gate infidelity and diamond distance, for physical channels and their
//! images under the coding map.
//!
//! The diamond distance ships as a closed form certified for the
//! antisymmetric pattern `z = y`, `v = −u` with a single positive Choi
//! eigenvalue (the rotation-plus-bit-flip family and its images). It is
//! cross-checked at runtime against the spectrum of the Choi matrix of
//! `Δ = id − ℰ` and against matching primal/dual feasible values of the
//! underlying semidefinite program; requests outside the certified regime
//! return [`Error::OutOfRegime`] instead of extrapolating.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::channel::{apply_to_density, NoiseParams, ReducedChannel};
use crate::coding_map::apply_reduced;
use crate::error::Error;
use crate::verify::gaussian;

/// Average gate infidelity `r(ℰ) = 1 − F_avg(ℰ)` from the transfer-matrix
/// trace: `F_avg = (Tr L + Tr ℰ(I)) / (d(d+1))` with `d = 2`, so
/// `r = (3 − x − 2y)/6` on the `z = y` slice and `(3 − x − y − z)/6` in
/// general.
pub fn avg_infidelity(c: &ReducedChannel) -> f64 {
    if c.y == c.z {
        (3.0 - c.x - 2.0 * c.y) / 6.0
    } else {
        let trace = 1.0 + c.x + c.y + c.z;
        1.0 - (trace + 2.0) / 6.0
    }
}

/// The 4×4 Hermitian Choi matrix `J(Δ) = Σ_ij |i⟩⟨j| ⊗ Δ(|i⟩⟨j|)` of the
/// deviation `Δ = id − ℰ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    pub entries: Matrix4<Complex64>,
}

impl ChoiMatrix {
    /// Eigenvalues sorted descending, computed numerically.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let eig = nalgebra::SymmetricEigen::new(self.entries);
        let mut vals = [0.0f64; 4];
        for (k, v) in eig.eigenvalues.iter().enumerate() {
            vals[k] = *v;
        }
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals
    }

    pub fn max_abs_diff(&self, other: &ChoiMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[(i, j)] - other.entries[(i, j)]).norm());
            }
        }
        worst
    }

    /// Largest deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

const PATTERN_TOL: f64 = 1e-12;

fn require_antisymmetric_pattern(c: &ReducedChannel) -> Result<(), Error> {
    if (c.v + c.u).abs() > PATTERN_TOL {
        return Err(Error::PatternViolation(format!(
            "expected v = -u, got u = {}, v = {}",
            c.u, c.v
        )));
    }
    if (c.y - c.z).abs() > PATTERN_TOL {
        return Err(Error::PatternViolation(format!(
            "expected z = y, got y = {}, z = {}",
            c.y, c.z
        )));
    }
    Ok(())
}

/// The Choi matrix of `Δ = id − ℰ` for a channel in the antisymmetric
/// pattern, in the closed form
///
/// ```text
///  ( ½−½y        −½iu      −½iu      1−½x−½y )
///  ( ½iu         −½+½y     −½x+½y    ½iu     )
///  ( ½iu         −½x+½y    −½+½y     ½iu     )
///  ( 1−½x−½y     −½iu      −½iu      ½−½y    )
/// ```
pub fn choi_of_delta(c: &ReducedChannel) -> Result<ChoiMatrix, Error> {
    require_antisymmetric_pattern(c)?;
    let (x, y, u) = (c.x, c.y, c.u);
    let re = |v: f64| Complex64::new(v, 0.0);
    let im = |v: f64| Complex64::new(0.0, v);
    let d = re(0.5 - 0.5 * y);
    let e = re(-0.5 + 0.5 * y);
    let corner = re(1.0 - 0.5 * x - 0.5 * y);
    let cross = re(-0.5 * x + 0.5 * y);
    let entries = Matrix4::new(
        d,
        im(-0.5 * u),
        im(-0.5 * u),
        corner,
        im(0.5 * u),
        e,
        cross,
        im(0.5 * u),
        im(0.5 * u),
        cross,
        e,
        im(0.5 * u),
        corner,
        im(-0.5 * u),
        im(-0.5 * u),
        d,
    );
    Ok(ChoiMatrix { entries })
}

/// Definition-based reconstruction of the same Choi matrix: push every
/// computational-basis matrix unit through `Δ = id − ℰ` acting via the
/// embedded transfer matrix, and tile the 2×2 blocks. Used as the oracle
/// for [`choi_of_delta`].
pub fn choi_from_definition(c: &ReducedChannel) -> ChoiMatrix {
    let tm = c.to_block().embed();
    let mut entries = Matrix4::from_element(Complex64::new(0.0, 0.0));
    for i in 0..2 {
        for j in 0..2 {
            let mut unit = Matrix2::from_element(Complex64::new(0.0, 0.0));
            unit[(i, j)] = Complex64::new(1.0, 0.0);
            let delta = unit - apply_to_density(&tm, &unit);
            for k in 0..2 {
                for l in 0..2 {
                    entries[(2 * i + k, 2 * j + l)] = delta[(k, l)];
                }
            }
        }
    }
    ChoiMatrix { entries }
}

/// The closed-form eigenvalues of `J(Δ)`:
/// `λ₁,₂ = ½(1−x) ± √((1−y)² + u²)` and `λ₃,₄ = −½ + ½x` (twice).
pub fn choi_eigenvalues_closed_form(c: &ReducedChannel) -> Result<[f64; 4], Error> {
    require_antisymmetric_pattern(c)?;
    let s = ((1.0 - c.y) * (1.0 - c.y) + c.u * c.u).sqrt();
    let mut vals = [
        0.5 * (1.0 - c.x) + s,
        0.5 * (1.0 - c.x) - s,
        -0.5 + 0.5 * c.x,
        -0.5 + 0.5 * c.x,
    ];
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(vals)
}

/// Diamond distance to the identity for channels in the antisymmetric
/// pattern: `D⋄ = ¼(1−x) + ½√((1−y)² + u²)`.
///
/// The formula equals `λ₁/2` for the single positive Choi eigenvalue and is
/// certified only where that eigenvalue is unique, i.e.
/// `√((1−y)² + u²) ≥ (1−x)/2` and `x ≤ 1`; outside that regime the rank-1
/// feasible-point construction breaks down and an error is returned.
pub fn diamond_distance(c: &ReducedChannel) -> Result<f64, Error> {
    require_antisymmetric_pattern(c)?;
    let s = ((1.0 - c.y) * (1.0 - c.y) + c.u * c.u).sqrt();
    if c.x > 1.0 + PATTERN_TOL {
        return Err(Error::OutOfRegime(format!("x = {} exceeds 1", c.x)));
    }
    if s < (1.0 - c.x) / 2.0 - PATTERN_TOL {
        return Err(Error::OutOfRegime(format!(
            "second Choi eigenvalue {} is positive; the rank-1 construction does not apply",
            0.5 * (1.0 - c.x) - s
        )));
    }
    Ok(0.25 * (1.0 - c.x) + 0.5 * s)
}

/// Matching primal and dual feasible values of the diamond-norm
/// semidefinite program, computed from the numerical eigendecomposition of
/// the Choi matrix.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimalDualValues {
    /// `⟨J(Δ), ½Π₊⟩` for `Π₊` the positive-eigenspace projector.
    pub primal: f64,
    /// `‖Tr₂ Z‖∞` for the dual-feasible `Z = λ₁|ψ₁⟩⟨ψ₁|`.
    pub dual: f64,
    /// Most negative eigenvalue of `Z − J(Δ)`; dual feasibility requires
    /// this to vanish up to rounding.
    pub feasibility_defect: f64,
}

/// Evaluate both feasible points numerically. The positive eigenspace must
/// be at most rank one (`λ₂ ≤ 1e−12`), matching the regime of
/// [`diamond_distance`].
pub fn diamond_primal_dual(c: &ReducedChannel) -> Result<PrimalDualValues, Error> {
    let choi = choi_of_delta(c)?;
    let eig = nalgebra::SymmetricEigen::new(choi.entries);
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let lambda1 = eig.eigenvalues[order[0]];
    let lambda2 = eig.eigenvalues[order[1]];
    if lambda2 > 1e-12 {
        return Err(Error::OutOfRegime(format!(
            "positive eigenspace has rank > 1 (λ₂ = {lambda2})"
        )));
    }
    if lambda1 <= 1e-14 {
        // the identity channel: Δ = 0, both programs are trivially zero
        return Ok(PrimalDualValues {
            primal: 0.0,
            dual: 0.0,
            feasibility_defect: 0.0,
        });
    }
    let psi = eig.eigenvectors.column(order[0]).into_owned();
    let adjoint = psi.adjoint();
    let projector = psi * adjoint;
    // primal: ⟨J, ½Π₊⟩
    let primal = (choi.entries * projector.map(|e| e * 0.5)).trace().re;
    // dual: Z = λ₁ |ψ⟩⟨ψ|, value ‖Tr₂ Z‖∞
    let z = projector.map(|e| e * lambda1);
    let mut tr2 = Matrix2::from_element(Complex64::new(0.0, 0.0));
    for i in 0..2 {
        for k in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..2 {
                acc += z[(2 * i + j, 2 * k + j)];
            }
            tr2[(i, k)] = acc;
        }
    }
    let dual = nalgebra::SymmetricEigen::new(tr2).eigenvalues.max();
    let defect = nalgebra::SymmetricEigen::new(z - choi.entries)
        .eigenvalues
        .min();
    Ok(PrimalDualValues {
        primal,
        dual,
        feasibility_defect: defect,
    })
}

/// Both error measures of one channel.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub infidelity: f64,
    pub avg_fidelity: f64,
    pub diamond_distance: f64,
    pub channel: ReducedChannel,
}

/// Closed-form metrics of the logical channel one level of encoding
/// produces from the rotation-plus-bit-flip family:
///
/// ```text
/// r  = (13 − 10y − 10y² + 5y⁴ + 2y⁵)/24
/// D⋄ = 5/16·(1 − 2y² + y⁴) + 1/8·√((4 − 5y + y⁵)² + u¹⁰)
/// ```
///
/// with `y = (1−2q)cos ε` and `u = (1−2q)sin ε`. These are evaluated as
/// printed, not by composing [`apply_reduced`] with the metric functions;
/// agreement between the two routes is part of the verification suite.
pub fn post_correction_metrics(params: NoiseParams) -> MetricReport {
    let w = 1.0 - 2.0 * params.q;
    let y = w * params.epsilon.cos();
    let u = w * params.epsilon.sin();
    let y2 = y * y;
    let y4 = y2 * y2;
    let y5 = y4 * y;
    let infidelity = (13.0 - 10.0 * y - 10.0 * y2 + 5.0 * y4 + 2.0 * y5) / 24.0;
    let diamond = 5.0 / 16.0 * (1.0 - 2.0 * y2 + y4)
        + 1.0 / 8.0 * ((4.0 - 5.0 * y + y5).powi(2) + u.powi(10)).sqrt();
    let channel = apply_reduced(&crate::channel::rotation_bitflip_channel(params));
    MetricReport {
        infidelity,
        avg_fidelity: 1.0 - infidelity,
        diamond_distance: diamond,
        channel,
    }
}

/// The stochastic (`ε = 0`) limit of [`post_correction_metrics`], where the
/// physical error is a pure Pauli channel.
pub fn pauli_limit_metrics(q: f64) -> MetricReport {
    assert!((0.0..=0.5).contains(&q), "q must lie in [0, 1/2]");
    post_correction_metrics(NoiseParams::new(q, 0.0))
}

/// Haar-averaged state fidelity of a reduced channel, estimated by Monte
/// Carlo over pure states drawn as normalized two-component complex
/// Gaussians. Deterministic for a fixed seed; the independent oracle for
/// [`avg_infidelity`].
pub fn haar_avg_fidelity_mc(c: &ReducedChannel, samples: usize, seed: u64) -> f64 {
    let mut rng = StdRng::seed_from_u64(seed);
    let block = c.to_block().entries;
    let mut acc = 0.0f64;
    for _ in 0..samples {
        let amps: [f64; 4] = std::array::from_fn(|_| gaussian(&mut rng));
        let norm2: f64 = amps.iter().map(|a| a * a).sum();
        let (ar, ai, br, bi) = (amps[0], amps[1], amps[2], amps[3]);
        // Bloch vector of |ψ⟩ = (a, b)/‖·‖
        let n = [
            2.0 * (ar * br + ai * bi) / norm2,
            2.0 * (ar * bi - ai * br) / norm2,
            (ar * ar + ai * ai - br * br - bi * bi) / norm2,
        ];
        // ⟨ψ|ℰ(|ψ⟩⟨ψ|)|ψ⟩ = ½(1 + n·(M n)) for unital trace-preserving ℰ
        let mut dot = 0.0;
        for i in 0..3 {
            let mut mi = 0.0;
            for (j, nj) in n.iter().enumerate() {
                mi += block[i][j] * nj;
            }
            dot += n[i] * mi;
        }
        acc += 0.5 * (1.0 + dot);
    }
    acc / samples as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::rotation_bitflip_channel;
    use rand::Rng;

    fn family(q: f64, eps: f64) -> ReducedChannel {
        rotation_bitflip_channel(NoiseParams::new(q, eps))
    }

    #[test]
    fn identity_has_zero_metrics() {
        let id = ReducedChannel::identity();
        assert_eq!(avg_infidelity(&id), 0.0);
        assert_eq!(diamond_distance(&id).unwrap(), 0.0);
        let choi = choi_of_delta(&id).unwrap();
        assert!(choi.entries.iter().all(|e| e.norm() == 0.0));
        let pd = diamond_primal_dual(&id).unwrap();
        assert_eq!((pd.primal, pd.dual), (0.0, 0.0));
    }

    #[test]
    fn infidelity_closed_form_for_the_family() {
        for (q, eps) in [(0.0, 0.1), (0.01, 0.2), (0.05, 0.0), (0.02, 0.35)] {
            let r = avg_infidelity(&family(q, eps));
            let expected = (1.0 - (1.0 - 2.0 * q) * eps.cos()) / 3.0;
            assert!((r - expected).abs() < 1e-15, "q={q} eps={eps}");
        }
    }

    #[test]
    fn diamond_closed_form_for_the_family() {
        for (q, eps) in [(0.0, 0.1), (0.01, 0.2), (0.05, 0.0), (0.02, 0.35)] {
            let d = diamond_distance(&family(q, eps)).unwrap();
            let w = 1.0 - 2.0 * q;
            let expected = 0.5 * (1.0 + w * w - 2.0 * w * eps.cos()).sqrt();
            assert!((d - expected).abs() < 1e-14, "q={q} eps={eps}");
        }
        // pure rotation reduces to sin(ε/2)
        let eps = 0.3f64;
        let d = diamond_distance(&family(0.0, eps)).unwrap();
        assert!((d - (eps / 2.0).sin()).abs() < 1e-14);
    }

    #[test]
    fn choi_matches_definition() {
        let mut rng = StdRng::seed_from_u64(59);
        for _ in 0..50 {
            let c = ReducedChannel::new(
                rng.random_range(-1.0..1.0),
                0.0,
                0.0,
                rng.random_range(-1.0..1.0),
                0.0,
            );
            let y = rng.random_range(-1.0..1.0);
            let u = c.u;
            let c = ReducedChannel::new(c.x, y, y, u, -u);
            let printed = choi_of_delta(&c).unwrap();
            let reconstructed = choi_from_definition(&c);
            assert!(printed.max_abs_diff(&reconstructed) < 1e-12);
            assert!(printed.hermiticity_defect() < 1e-14);
            assert!(printed.entries.trace().norm() < 1e-14);
        }
    }

    #[test]
    fn choi_corner_entry() {
        let eps = 0.4f64;
        let c = family(0.0, eps);
        let choi = choi_of_delta(&c).unwrap();
        let expected = 1.0 - 0.5 - 0.5 * eps.cos();
        assert!((choi.entries[(0, 3)].re - expected).abs() < 1e-15);
    }

    #[test]
    fn choi_spectrum_matches_closed_form() {
        let mut rng = StdRng::seed_from_u64(61);
        for _ in 0..50 {
            let x = rng.random_range(0.6..1.0);
            let y = rng.random_range(0.6..1.0);
            let u = rng.random_range(-0.4..0.4);
            let c = ReducedChannel::new(x, y, y, u, -u);
            let numeric = choi_of_delta(&c).unwrap().eigenvalues();
            let closed = choi_eigenvalues_closed_form(&c).unwrap();
            for (a, b) in numeric.iter().zip(closed.iter()) {
                assert!((a - b).abs() < 1e-10, "{numeric:?} vs {closed:?}");
            }
        }
    }

    #[test]
    fn primal_and_dual_sandwich_the_closed_form() {
        let mut rng = StdRng::seed_from_u64(67);
        let mut tested = 0;
        while tested < 50 {
            let x = rng.random_range(0.6..1.0);
            let y = rng.random_range(0.6..0.999);
            let u = rng.random_range(-0.4..0.4);
            let c = ReducedChannel::new(x, y, y, u, -u);
            let s = ((1.0 - y) * (1.0 - y) + u * u).sqrt();
            if s < (1.0 - x) / 2.0 {
                continue;
            }
            tested += 1;
            let closed = diamond_distance(&c).unwrap();
            let pd = diamond_primal_dual(&c).unwrap();
            assert!((pd.primal - closed).abs() < 1e-10);
            assert!((pd.dual - closed).abs() < 1e-10);
            assert!(pd.feasibility_defect > -1e-10);
        }
    }

    #[test]
    fn pattern_and_regime_violations_are_errors() {
        let skew = ReducedChannel::new(1.0, 0.9, 0.9, 0.1, 0.2);
        assert!(matches!(
            choi_of_delta(&skew),
            Err(Error::PatternViolation(_))
        ));
        assert!(matches!(
            diamond_distance(&skew),
            Err(Error::PatternViolation(_))
        ));
        // y = 1, u = 0, x < 1: Δ supported on X alone, λ₂ > 0
        let degenerate = ReducedChannel::new(0.9, 1.0, 1.0, 0.0, 0.0);
        assert!(matches!(
            diamond_distance(&degenerate),
            Err(Error::OutOfRegime(_))
        ));
        assert!(matches!(
            diamond_primal_dual(&degenerate),
            Err(Error::OutOfRegime(_))
        ));
    }

    #[test]
    fn post_correction_matches_composition() {
        for (q, eps) in [(0.0, 0.05), (0.002, 0.1), (0.01, 0.3), (0.02, 0.0)] {
            let params = NoiseParams::new(q, eps);
            let report = post_correction_metrics(params);
            let logical = apply_reduced(&rotation_bitflip_channel(params));
            let r_composed = avg_infidelity(&logical);
            let d_composed = diamond_distance(&logical).unwrap();
            assert!(
                (report.infidelity - r_composed).abs() < 1e-12,
                "r at q={q} eps={eps}"
            );
            assert!(
                (report.diamond_distance - d_composed).abs() < 1e-12,
                "D at q={q} eps={eps}"
            );
        }
    }

    #[test]
    fn no_noise_post_correction_is_clean() {
        let report = post_correction_metrics(NoiseParams::new(0.0, 0.0));
        assert_eq!(report.infidelity, 0.0);
        assert_eq!(report.diamond_distance, 0.0);
    }

    #[test]
    fn quartic_suppression_of_coherent_errors() {
        let eps = 0.01f64;
        let report = post_correction_metrics(NoiseParams::new(0.0, eps));
        let r_ratio = report.infidelity / (5.0 / 12.0 * eps.powi(4));
        let d_ratio = report.diamond_distance / (5.0 / 8.0 * eps.powi(4));
        assert!((0.99..=1.01).contains(&r_ratio), "r ratio {r_ratio}");
        assert!((0.99..=1.01).contains(&d_ratio), "D ratio {d_ratio}");
        let d_phys = diamond_distance(&family(0.0, eps)).unwrap();
        let fourth_power = report.diamond_distance / (10.0 * d_phys.powi(4));
        assert!(
            (0.99..=1.01).contains(&fourth_power),
            "4th power ratio {fourth_power}"
        );
    }

    #[test]
    fn quadratic_suppression_of_stochastic_errors() {
        let q = 1e-3f64;
        let report = pauli_limit_metrics(q);
        let r_ratio = report.infidelity / (20.0 / 3.0 * q * q);
        let d_ratio = report.diamond_distance / (10.0 * q * q);
        assert!((0.98..=1.02).contains(&r_ratio), "r ratio {r_ratio}");
        assert!((0.98..=1.02).contains(&d_ratio), "D ratio {d_ratio}");
        let clean = pauli_limit_metrics(0.0);
        assert_eq!(clean.infidelity, 0.0);
        assert_eq!(clean.diamond_distance, 0.0);
    }

    #[test]
    fn rotation_family_relates_the_two_measures() {
        // with rotation alone, D⋄ = √(3r/2) exactly: both equal sin(ε/2)
        for eps in [0.4, 0.2, 0.1, 0.05] {
            let c = family(0.0, eps);
            let ratio = diamond_distance(&c).unwrap() / (1.5 * avg_infidelity(&c)).sqrt();
            assert!((ratio - 1.0).abs() < 1e-12, "ratio {ratio} at eps={eps}");
        }
        // a small admixture of stochastic noise perturbs the relation at
        // order q/ε²; the ratio returns to 1 as the rotation dominates
        let q = 1e-6;
        let mut prev_gap = f64::INFINITY;
        for eps in [0.02, 0.05, 0.1, 0.2] {
            let c = family(q, eps);
            let ratio = diamond_distance(&c).unwrap() / (1.5 * avg_infidelity(&c)).sqrt();
            let gap = (ratio - 1.0).abs();
            assert!(gap < prev_gap, "gap not shrinking at eps={eps}");
            prev_gap = gap;
        }
        assert!(prev_gap < 1e-3);
    }

    #[test]
    fn small_noise_expansions() {
        for k in 1..=4 {
            let scale = 0.5f64.powi(k);
            let (q, eps) = (0.01 * scale, 0.1 * scale);
            let c = family(q, eps);
            let r = avg_infidelity(&c);
            let d = diamond_distance(&c).unwrap();
            let r_err = (r - (2.0 / 3.0 * q + eps * eps / 6.0)).abs();
            let d_err = (d - (q * q + eps * eps / 4.0).sqrt()).abs();
            assert!(
                r_err < 0.1 * (q + eps * eps) * scale,
                "r expansion at scale {scale}"
            );
            assert!(
                d_err < 0.1 * (q * q + eps * eps).sqrt() * scale,
                "D expansion at scale {scale}"
            );
        }
    }

    #[test]
    fn monte_carlo_agrees_with_closed_form() {
        let mut rng = StdRng::seed_from_u64(71);
        for k in 0..20 {
            let c = ReducedChannel::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            // 1e6 samples: the estimator σ for unit-box channels is about
            // 3e-4, so the 1e-3 window holds with margin
            let mc = haar_avg_fidelity_mc(&c, 1_000_000, 1000 + k);
            let closed = 1.0 - avg_infidelity(&c);
            assert!((mc - closed).abs() < 1e-3, "channel {k}: {mc} vs {closed}");
        }
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let c = family(0.01, 0.2);
        let a = haar_avg_fidelity_mc(&c, 10_000, 7);
        let b = haar_avg_fidelity_mc(&c, 10_000, 7);
        assert_eq!(a, b);
    }
}
