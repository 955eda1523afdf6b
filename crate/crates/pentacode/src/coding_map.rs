//! The five-qubit coding map: physical channel in, logical channel out.
//!
//! The map is implemented along two independent routes that are required to
//! agree to near machine precision (a third, fully dense route lives in
//! [`crate::dense`]):
//!
//! * [`process_matrix_explicit`] evaluates the closed-form quintic
//!   polynomials for the nine entries of the output block. Each entry is a
//!   fixed argument permutation of one of three base polynomials, and each
//!   is also transcribed in fully expanded form; the two transcriptions are
//!   asserted equal in tests.
//! * [`process_matrix_oracle`] evaluates the characterization
//!   `G_σσ' = ½ Tr[D_σ · 𝒩⊗5(E(σ'))]` directly as a 256-term double sum
//!   over the encoder/decoder tables of [`crate::code`], with no algebraic
//!   simplification whatsoever.
//!
//! On the five-parameter [`ReducedChannel`] pattern the map closes, giving
//! the polynomial dynamical system implemented by [`apply_reduced`] and its
//! two-variable restriction [`reduced_two_var`].

use num_rational::Ratio;

use crate::channel::{ReducedChannel, UnitalBlock};
use crate::code::AlphaBetaTables;
use crate::pauli::Axis;

/// Diagonal-entry polynomial of the reduced map:
/// `g(x, y, z) = −x/4·(x⁴ − 5y² − 5z² + 5y²z²)`.
fn g(x: f64, y: f64, z: f64) -> f64 {
    -x / 4.0 * (x.powi(4) - 5.0 * y * y - 5.0 * z * z + 5.0 * y * y * z * z)
}

/// Off-diagonal damping of the reduced map: `h(w) = −w⁵/4`.
fn h(w: f64) -> f64 {
    -w.powi(5) / 4.0
}

/// Apply the coding map to a channel in the reduced pattern:
/// `(x, y, z, u, v) ↦ (g(x,y,z), g(y,z,x), g(z,x,y), h(u), h(v))`,
/// with `h(u)` staying at matrix position `(Z, Y)` and `h(v)` at `(Y, Z)`.
pub fn apply_reduced(m: &ReducedChannel) -> ReducedChannel {
    ReducedChannel::new(
        g(m.x, m.y, m.z),
        g(m.y, m.z, m.x),
        g(m.z, m.x, m.y),
        h(m.u),
        h(m.v),
    )
}

/// The two-variable restriction of the reduced map on the slice `z = y`
/// (which the map preserves): returns
/// `f₁(x,y) = −x/4·(x⁴ + 5y⁴ − 10y²)` and
/// `f₂(x,y) = −y/4·(y⁴ + 5x²y² − 5x² − 5y²)`.
pub fn reduced_two_var(x: f64, y: f64) -> (f64, f64) {
    let f1 = -x / 4.0 * (x.powi(4) + 5.0 * y.powi(4) - 10.0 * y * y);
    let f2 = -y / 4.0 * (y.powi(4) + 5.0 * x * x * y * y - 5.0 * x * x - 5.0 * y * y);
    (f1, f2)
}

// The nine output entries are argument permutations of three base quintics.
// Arguments are grouped by input-block row: (x1,x2,x3) from one row, then
// (y1,y2,y3), then (z1,z2,z3).

fn quintic_x(a: [f64; 9]) -> f64 {
    let [x1, x2, x3, y1, y2, y3, z1, z2, z3] = a;
    -x1 / 4.0
        * (x1.powi(4) + 5.0 * x2 * x2 * x3 * x3 + 5.0 * y1 * y1 * z1 * z1 + 5.0 * y2 * y2 * z3 * z3)
        - 5.0 / 2.0 * y3 * z2 * (x2 * y1 * z3 + x3 * y2 * z1)
        + 5.0 * x1 / 4.0 * (y2 * y2 + z3 * z3)
}

fn quintic_y(a: [f64; 9]) -> f64 {
    let [x1, x2, x3, y1, y2, y3, z1, z2, z3] = a;
    -x2 / 4.0
        * (x2.powi(4) + 5.0 * x1 * x1 * x3 * x3 + 5.0 * y2 * y2 * z2 * z2 + 5.0 * y3 * y3 * z1 * z1)
        - 5.0 / 2.0 * y1 * z3 * (x1 * y3 * z2 + x3 * y2 * z1)
        + 5.0 * x2 / 4.0 * (y3 * y3 + z1 * z1)
}

fn quintic_z(a: [f64; 9]) -> f64 {
    let [x1, x2, x3, y1, y2, y3, z1, z2, z3] = a;
    -x3 / 4.0
        * (x3.powi(4) + 5.0 * x1 * x1 * x2 * x2 + 5.0 * y1 * y1 * z2 * z2 + 5.0 * y3 * y3 * z3 * z3)
        - 5.0 / 2.0 * y2 * z1 * (x1 * y3 * z2 + x2 * y1 * z3)
        + 5.0 * x3 / 4.0 * (y1 * y1 + z2 * z2)
}

/// The closed-form process matrix: each output entry is one of the three
/// base quintics applied to a fixed permutation of the nine block entries.
pub fn process_matrix_explicit(n: &UnitalBlock) -> UnitalBlock {
    let [[xx, xy, xz], [yx, yy, yz], [zx, zy, zz]] = n.entries;
    let entries = [
        [
            quintic_x([xx, xy, xz, yx, yy, yz, zx, zy, zz]),
            quintic_y([xx, xy, xz, yx, yy, yz, zx, zy, zz]),
            quintic_z([xx, xy, xz, yx, yy, yz, zx, zy, zz]),
        ],
        [
            quintic_x([yx, yz, yy, xx, xz, xy, zx, zz, zy]),
            quintic_y([yz, yy, yx, xz, xy, xx, zz, zy, zx]),
            quintic_z([yy, yx, yz, xy, xx, xz, zy, zx, zz]),
        ],
        [
            quintic_x([zx, zz, zy, yx, yz, yy, xx, xz, xy]),
            quintic_y([zz, zy, zx, yz, yy, yx, xz, xy, xx]),
            quintic_z([zy, zx, zz, yy, yx, yz, xy, xx, xz]),
        ],
    ];
    UnitalBlock { entries }
}

/// The same nine entries transcribed a second time, fully expanded, used
/// only to cross-check the permutation table above. Two independent
/// transcriptions catch copy errors in either; do not simplify.
#[allow(clippy::too_many_lines)]
pub fn process_matrix_expanded(n: &UnitalBlock) -> UnitalBlock {
    let [[xx, xy, xz], [yx, yy, yz], [zx, zy, zz]] = n.entries;
    let sq = |t: f64| t * t;
    let g_xx = -xx / 4.0
        * (xx.powi(4) + 5.0 * sq(xy) * sq(xz) - 5.0 * sq(yy) - 5.0 * sq(zz)
            + 5.0 * sq(yx) * sq(zx)
            + 5.0 * sq(yy) * sq(zz))
        - 5.0 / 2.0 * (xy * yx * yz * zy * zz + xz * yy * yz * zx * zy);
    let g_xy = -xy / 4.0
        * (xy.powi(4) + 5.0 * sq(xx) * sq(xz) - 5.0 * sq(yz) - 5.0 * sq(zx)
            + 5.0 * sq(yy) * sq(zy)
            + 5.0 * sq(yz) * sq(zx))
        - 5.0 / 2.0 * (xx * yx * yz * zy * zz + xz * yx * yy * zx * zz);
    let g_xz = -xz / 4.0
        * (xz.powi(4) + 5.0 * sq(xx) * sq(xy) - 5.0 * sq(yx)
            + 5.0 * sq(yx) * sq(zy)
            + 5.0 * sq(yz) * sq(zz)
            - 5.0 * sq(zy))
        - 5.0 / 2.0 * (xx * yy * yz * zx * zy + xy * yx * yy * zx * zz);
    let g_yx = -yx / 4.0
        * (yx.powi(4) + 5.0 * sq(xx) * sq(zx) - 5.0 * sq(xz)
            + 5.0 * sq(xz) * sq(zy)
            + 5.0 * sq(yy) * sq(yz)
            - 5.0 * sq(zy))
        - 5.0 / 2.0 * (xx * xy * yz * zy * zz + xy * xz * yy * zx * zz);
    let g_yy = -yy / 4.0
        * (yy.powi(4) + 5.0 * sq(xx) * sq(zz) - 5.0 * sq(xx)
            + 5.0 * sq(xy) * sq(zy)
            + 5.0 * sq(yx) * sq(yz)
            - 5.0 * sq(zz))
        - 5.0 / 2.0 * (xx * xz * yz * zx * zy + xy * xz * yx * zx * zz);
    let g_yz = -yz / 4.0
        * (yz.powi(4) + 5.0 * sq(xy) * sq(zx) - 5.0 * sq(xy)
            + 5.0 * sq(xz) * sq(zz)
            + 5.0 * sq(yx) * sq(yy)
            - 5.0 * sq(zx))
        - 5.0 / 2.0 * (xx * xz * yy * zx * zy + xx * xy * yx * zy * zz);
    let g_zx = -zx / 4.0
        * (zx.powi(4) + 5.0 * sq(xx) * sq(yx) - 5.0 * sq(xy) + 5.0 * sq(xy) * sq(yz)
            - 5.0 * sq(yz)
            + 5.0 * sq(zy) * sq(zz))
        - 5.0 / 2.0 * (xx * xz * yy * yz * zy + xy * xz * yx * yy * zz);
    let g_zy = -zy / 4.0
        * (zy.powi(4) + 5.0 * sq(xy) * sq(yy) - 5.0 * sq(xz) + 5.0 * sq(xz) * sq(yx)
            - 5.0 * sq(yx)
            + 5.0 * sq(zx) * sq(zz))
        - 5.0 / 2.0 * (xx * xy * yx * yz * zz + xx * xz * yy * yz * zx);
    let g_zz = -zz / 4.0
        * (zz.powi(4) + 5.0 * sq(xx) * sq(yy) - 5.0 * sq(xx) + 5.0 * sq(xz) * sq(yz)
            - 5.0 * sq(yy)
            + 5.0 * sq(zx) * sq(zy))
        - 5.0 / 2.0 * (xx * xy * yx * yz * zy + xy * xz * yx * yy * zx);
    UnitalBlock {
        entries: [[g_xx, g_xy, g_xz], [g_yx, g_yy, g_yz], [g_zx, g_zy, g_zz]],
    }
}

/// The symbolic-sum route: every output entry is computed as
/// `G_σσ' = 2⁵ · Σ_ν Σ_μ β_ν · α_μ · Π_i N_{ν_i μ_i}`
/// over the sixteen decoder and sixteen encoder terms, with `N` the full
/// 4×4 transfer matrix of the input block.
///
/// The prefactor comes from the trace normalization: writing
/// `E(σ') = Σ_μ e_μ·μ` and `D_σ = Σ_ν β_ν·ν` in the plain product basis,
/// `G_σσ' = ½ Tr[D_σ 𝒩⊗5(E(σ'))]`, `Tr[ν²] = 2⁵`, and `e_μ = 2α_μ`
/// combine to `2⁵` on the stored `α` (whose entries carry the `1/32`).
///
/// Trace preservation and unitality of the output are asserted internally:
/// the identity row and column come out exactly `(1, 0, 0, 0)`.
pub fn process_matrix_oracle(tables: &AlphaBetaTables, n: &UnitalBlock) -> UnitalBlock {
    let full = n.embed();
    let entry = |sigma_out: Axis, sigma_in: Axis| -> f64 {
        let mut acc = 0.0f64;
        for bt in tables.beta(sigma_out) {
            for at in tables.alpha(sigma_in) {
                let coeff = bt.coeff * at.coeff * Ratio::new(32, 1);
                let mut prod = ratio_to_f64(coeff);
                for i in 0..5 {
                    prod *= full.entries[bt.axes[i].index()][at.axes[i].index()];
                }
                acc += prod;
            }
        }
        acc
    };
    assert_eq!(entry(Axis::I, Axis::I), 1.0, "G_II must be exactly 1");
    for sigma in Axis::NONTRIVIAL {
        assert_eq!(entry(Axis::I, sigma), 0.0, "G_I{sigma} must vanish exactly");
        assert_eq!(entry(sigma, Axis::I), 0.0, "G_{sigma}I must vanish exactly");
    }
    let mut entries = [[0.0; 3]; 3];
    for (i, so) in Axis::NONTRIVIAL.iter().enumerate() {
        for (j, si) in Axis::NONTRIVIAL.iter().enumerate() {
            entries[i][j] = entry(*so, *si);
        }
    }
    UnitalBlock { entries }
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{rotation_bitflip_channel, NoiseParams};
    use crate::code::{derive_alpha_beta, CodeSpec};
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_block(rng: &mut StdRng) -> UnitalBlock {
        UnitalBlock {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-1.0..1.0))),
        }
    }

    #[test]
    fn identity_maps_to_identity() {
        let id = UnitalBlock::identity();
        assert_eq!(process_matrix_explicit(&id), id);
        assert_eq!(
            apply_reduced(&ReducedChannel::identity()),
            ReducedChannel::identity()
        );
        let tables = derive_alpha_beta(&CodeSpec::five_qubit()).unwrap();
        assert!(process_matrix_oracle(&tables, &id).max_abs_diff(&id) < 1e-15);
    }

    #[test]
    fn reduced_fixed_point_is_exact() {
        let fp = ReducedChannel::identity();
        let image = apply_reduced(&fp);
        assert_eq!(image.as_array(), fp.as_array());
    }

    #[test]
    fn off_diagonal_damping_value() {
        let c = ReducedChannel::new(1.0, 1.0, 1.0, 0.5, 0.0);
        assert_eq!(apply_reduced(&c).u, -0.0078125);
    }

    #[test]
    fn diagonal_inputs_hit_the_same_polynomial() {
        let mut block = UnitalBlock {
            entries: [[0.0; 3]; 3],
        };
        for k in 0..3 {
            block.entries[k][k] = 0.9;
        }
        let out = process_matrix_explicit(&block);
        let expected = g(0.9, 0.9, 0.9);
        for k in 0..3 {
            assert!((out.entries[k][k] - expected).abs() < 1e-15);
        }
        let tables = derive_alpha_beta(&CodeSpec::five_qubit()).unwrap();
        let oracle = process_matrix_oracle(&tables, &block);
        assert!(oracle.max_abs_diff(&out) < 1e-12);
    }

    #[test]
    fn expanded_and_permuted_transcriptions_agree() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..200 {
            let block = random_block(&mut rng);
            let a = process_matrix_explicit(&block);
            let b = process_matrix_expanded(&block);
            assert!(
                a.max_abs_diff(&b) < 1e-13,
                "transcriptions differ: {:?}",
                block
            );
        }
    }

    #[test]
    fn oracle_matches_explicit_on_random_blocks() {
        let tables = derive_alpha_beta(&CodeSpec::five_qubit()).unwrap();
        let mut rng = StdRng::seed_from_u64(23);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let block = random_block(&mut rng);
            let a = process_matrix_explicit(&block);
            let b = process_matrix_oracle(&tables, &block);
            worst = worst.max(a.max_abs_diff(&b));
        }
        assert!(worst < 1e-12, "max discrepancy {worst}");
    }

    #[test]
    fn reduced_path_matches_general_path() {
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..100 {
            let c = ReducedChannel::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let via_block = process_matrix_explicit(&c.to_block());
            let direct = apply_reduced(&c).to_block();
            assert!(via_block.max_abs_diff(&direct) < 1e-14);
        }
    }

    #[test]
    fn noise_family_embedding_is_consistent() {
        let c = rotation_bitflip_channel(NoiseParams::new(0.01, 0.1));
        let via_block = process_matrix_explicit(&c.to_block());
        let direct = apply_reduced(&c).to_block();
        assert!(via_block.max_abs_diff(&direct) < 1e-15);
    }

    #[test]
    fn two_var_restriction_is_consistent() {
        assert_eq!(reduced_two_var(1.0, 1.0), (1.0, 1.0));
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..100 {
            let x = rng.random_range(-1.2..1.2);
            let y = rng.random_range(-1.2..1.2);
            let (f1, f2) = reduced_two_var(x, y);
            assert!((f1 - g(x, y, y)).abs() < 1e-14);
            assert!((f2 - g(y, y, x)).abs() < 1e-14);
            let full = apply_reduced(&ReducedChannel::new(x, y, y, 0.0, 0.0));
            assert!((full.x - f1).abs() < 1e-14);
            assert!((full.y - f2).abs() < 1e-14);
            assert!((full.z - f2).abs() < 1e-14);
        }
    }

    #[test]
    fn near_fixed_point_contracts() {
        let (f1, f2) = reduced_two_var(0.95, 0.95);
        assert!((1.0 - f1).abs() < 0.05);
        assert!((1.0 - f2).abs() < 0.05);
    }

    proptest! {
        /// Structural zeros of the reduced pattern are preserved exactly.
        #[test]
        fn pattern_preservation(
            x in -1.5f64..1.5, y in -1.5f64..1.5, z in -1.5f64..1.5,
            u in -1.5f64..1.5, v in -1.5f64..1.5,
        ) {
            let c = ReducedChannel::new(x, y, z, u, v);
            let out = process_matrix_explicit(&c.to_block());
            prop_assert_eq!(out.entries[0][1], 0.0);
            prop_assert_eq!(out.entries[0][2], 0.0);
            prop_assert_eq!(out.entries[1][0], 0.0);
            prop_assert_eq!(out.entries[2][0], 0.0);
        }

        /// The antisymmetric off-diagonal pattern v = −u survives the map.
        #[test]
        fn sign_pattern_preservation(
            x in -1.5f64..1.5, y in -1.5f64..1.5, z in -1.5f64..1.5, u in -1.5f64..1.5,
        ) {
            let c = ReducedChannel::new(x, y, z, u, -u);
            let out = apply_reduced(&c);
            prop_assert_eq!(out.v, -out.u);
        }
    }
}
