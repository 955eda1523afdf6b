//! Concatenation as a dynamical system on channel space.
//!
//! Re-encoding every physical qubit of the code into the code again, ad
//! infinitum, iterates the coding map on the five-parameter reduced pattern.
//! The identity channel is a fixed point with vanishing total derivative, so
//! it is locally attracting; this module iterates the map, evaluates the
//! analytic Jacobian and its matrix 2-norm for the two-variable restriction,
//! scans circles around the fixed point to estimate the basin radius, and
//! maps out which noise parameters are taken to the identity.

use nalgebra::{Matrix2, SMatrix};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{rotation_bitflip_channel, NoiseParams, ReducedChannel, UnitalBlock};
use crate::coding_map::{apply_reduced, process_matrix_explicit, reduced_two_var};
use crate::error::Error;

/// Where an iteration ended up.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Limit {
    /// Converged to the identity channel `(1, 1, 1, 0, 0)`.
    IdentityChannel,
    /// Settled on a fixed point other than the identity (e.g. the zero
    /// block).
    OtherFixedPoint,
    /// A coordinate left the escape radius or became non-finite.
    Diverged,
    /// Budget exhausted without meeting any of the above.
    MaxIters,
}

/// The orbit of one initial channel under repeated application of the
/// coding map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IterationTrace {
    /// Visited states, starting with the initial channel; consecutive
    /// entries are related by one application of the map.
    pub states: Vec<ReducedChannel>,
    pub converged: bool,
    pub limit: Limit,
}

impl IterationTrace {
    pub fn last(&self) -> &ReducedChannel {
        self.states.last().expect("trace is never empty")
    }

    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }
}

/// Coordinates beyond this magnitude count as escaped; the map is
/// polynomial, so escape is rapid and unambiguous.
const ESCAPE_RADIUS: f64 = 1e6;

/// Iterate the reduced coding map from `initial`, classifying the limit.
///
/// Convergence to the identity is declared when the sup-norm distance drops
/// below `tol`; a non-identity numerical fixed point (successive states
/// closer than `tol`) is classified [`Limit::OtherFixedPoint`]; non-finite
/// or escaping coordinates give [`Limit::Diverged`] rather than an error.
pub fn iterate(initial: ReducedChannel, max_iters: usize, tol: f64) -> IterationTrace {
    assert!(max_iters >= 1, "max_iters must be at least 1");
    assert!(tol > 0.0, "tolerance must be positive");
    let identity = ReducedChannel::identity();
    let mut states = vec![initial];
    if initial.sup_distance(&identity) < tol {
        return IterationTrace {
            states,
            converged: true,
            limit: Limit::IdentityChannel,
        };
    }
    for _ in 0..max_iters {
        let current = *states.last().unwrap();
        let next = apply_reduced(&current);
        states.push(next);
        let escaped = next
            .as_array()
            .iter()
            .any(|c| !c.is_finite() || c.abs() > ESCAPE_RADIUS);
        if escaped {
            return IterationTrace {
                states,
                converged: false,
                limit: Limit::Diverged,
            };
        }
        if next.sup_distance(&identity) < tol {
            return IterationTrace {
                states,
                converged: true,
                limit: Limit::IdentityChannel,
            };
        }
        if next.sup_distance(&current) < tol {
            return IterationTrace {
                states,
                converged: true,
                limit: Limit::OtherFixedPoint,
            };
        }
    }
    IterationTrace {
        states,
        converged: false,
        limit: Limit::MaxIters,
    }
}

/// Analytic Jacobian of the two-variable restriction:
///
/// ```text
/// ∂f₁/∂x = −5/4·(x⁴ + y⁴) + 5/2·y²      ∂f₁/∂y = 5xy(1 − y²)
/// ∂f₂/∂x = 5/2·xy(1 − y²)               ∂f₂/∂y = −5/4·y²(−3 + 3x² + y²) + 5/4·x²
/// ```
pub fn jacobian_reduced2(x: f64, y: f64) -> Matrix2<f64> {
    let df1_dx = -5.0 / 4.0 * (x.powi(4) + y.powi(4)) + 5.0 / 2.0 * y * y;
    let df1_dy = 5.0 * x * y * (1.0 - y * y);
    let df2_dx = 5.0 / 2.0 * x * y * (1.0 - y * y);
    let df2_dy = -5.0 / 4.0 * y * y * (-3.0 + 3.0 * x * x + y * y) + 5.0 / 4.0 * x * x;
    Matrix2::new(df1_dx, df1_dy, df2_dx, df2_dy)
}

/// Matrix 2-norm of the two-variable Jacobian in closed form:
/// `‖Df(x, y)‖ = 5/8·√(a + 2√b)` with `a` and `b` the fixed polynomials
/// below. Cross-checked against the eigenvalue route in tests; a negative
/// `b` beyond rounding would mean the transcription is wrong and is
/// reported as an internal-consistency error.
pub fn norm2_closed_form(x: f64, y: f64) -> Result<f64, Error> {
    let x2 = x * x;
    let x3 = x2 * x;
    let x4 = x2 * x2;
    let x5 = x4 * x;
    let x8 = x4 * x4;
    let y2 = y * y;
    let y3 = y2 * y;
    let y4 = y2 * y2;
    let y5 = y4 * y;
    let y6 = y4 * y2;
    let y7 = y6 * y;
    let sq = |t: f64| t * t;

    let a = 2.0 * sq(x4 + y4 - 2.0 * y2)
        + 2.0 * sq(-3.0 * y2 + 3.0 * x2 * y2 + y4 - x2)
        + 32.0 * sq(x * y - x * y3)
        + 8.0 * sq(x * y - x * y3);
    let b =
        sq(
            x8 - x4 - 7.0 * x4 * y4 - 18.0 * x2 * y6 + 2.0 * x4 * y2 + 44.0 * x2 * y4 + 2.0 * y6
                - 5.0 * y4
                - 18.0 * x2 * y2,
        ) + 16.0
            * sq(3.0 * x * y7 - 10.0 * x * y5 + 2.0 * x5 * y3 + 3.0 * x3 * y5
                - 2.0 * x5 * y
                - 4.0 * x3 * y3
                + x3 * y
                + 7.0 * x * y3);
    if b < -1e-12 {
        return Err(Error::InternalConsistency(format!(
            "norm discriminant b = {b} is negative at ({x}, {y})"
        )));
    }
    Ok(5.0 / 8.0 * (a + 2.0 * b.max(0.0).sqrt()).sqrt())
}

/// 2-norm of a 2×2 matrix via the largest eigenvalue of `AᵀA`. The
/// independent route used to cross-check [`norm2_closed_form`].
pub fn norm2_eigensolve(m: &Matrix2<f64>) -> f64 {
    let gram = m.transpose() * m;
    let eig = nalgebra::SymmetricEigen::new(gram);
    eig.eigenvalues.max().max(0.0).sqrt()
}

/// Extremes of `‖Df‖` over a sampled circle around the fixed point `(1, 1)`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasinEstimate {
    pub radius: f64,
    pub max_norm_on_circle: f64,
    pub min_norm_on_circle: f64,
    pub samples: usize,
}

/// Evaluate the closed-form norm at `samples` equally spaced points on the
/// circle of the given radius centered at `(1, 1)`.
pub fn scan_circle(radius: f64, samples: usize) -> BasinEstimate {
    assert!(samples >= 360, "circle scan needs at least 360 samples");
    let (max, min) = (0..samples)
        .into_par_iter()
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
            let x = 1.0 + radius * theta.cos();
            let y = 1.0 + radius * theta.sin();
            norm2_closed_form(x, y).expect("norm discriminant cannot be negative")
        })
        .fold(
            || (f64::NEG_INFINITY, f64::INFINITY),
            |(mx, mn), v| (mx.max(v), mn.min(v)),
        )
        .reduce(
            || (f64::NEG_INFINITY, f64::INFINITY),
            |(ax, an), (bx, bn)| (ax.max(bx), an.min(bn)),
        );
    BasinEstimate {
        radius,
        max_norm_on_circle: max,
        min_norm_on_circle: min,
        samples,
    }
}

/// One row of a threshold scan: does this noise parameter pair iterate to
/// the identity channel?
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPoint {
    pub q: f64,
    pub epsilon: f64,
    pub converged: bool,
}

/// For every `(q, ε)` pair of the grids, iterate the coding map on the
/// rotation-plus-bit-flip channel and record whether it reaches the
/// identity. Rows are in `q`-major order regardless of evaluation order.
pub fn threshold_surface(
    q_grid: &[f64],
    eps_grid: &[f64],
    max_iters: usize,
    tol: f64,
) -> Vec<ThresholdPoint> {
    assert!(
        !q_grid.is_empty() && !eps_grid.is_empty(),
        "grids must be nonempty"
    );
    let pairs: Vec<(f64, f64)> = q_grid
        .iter()
        .flat_map(|&q| eps_grid.iter().map(move |&e| (q, e)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(q, epsilon)| {
            let initial = rotation_bitflip_channel(NoiseParams::new(q, epsilon));
            let trace = iterate(initial, max_iters, tol);
            ThresholdPoint {
                q,
                epsilon,
                converged: trace.limit == Limit::IdentityChannel,
            }
        })
        .collect()
}

/// Central finite-difference Jacobian of the two-variable map.
pub fn fd_jacobian_two_var(x: f64, y: f64, step: f64) -> Matrix2<f64> {
    let fx_plus = reduced_two_var(x + step, y);
    let fx_minus = reduced_two_var(x - step, y);
    let fy_plus = reduced_two_var(x, y + step);
    let fy_minus = reduced_two_var(x, y - step);
    Matrix2::new(
        (fx_plus.0 - fx_minus.0) / (2.0 * step),
        (fy_plus.0 - fy_minus.0) / (2.0 * step),
        (fx_plus.1 - fx_minus.1) / (2.0 * step),
        (fy_plus.1 - fy_minus.1) / (2.0 * step),
    )
}

/// Central finite-difference total derivative of the five-variable reduced
/// map. Only the two-variable restriction has an analytic Jacobian here,
/// so the full map is differentiated numerically; it is only used for the
/// zero-derivative checks at fixed points.
pub fn fd_jacobian_reduced5(at: &ReducedChannel, step: f64) -> SMatrix<f64, 5, 5> {
    let mut jac = SMatrix::<f64, 5, 5>::zeros();
    let base = at.as_array();
    for j in 0..5 {
        let mut plus = base;
        let mut minus = base;
        plus[j] += step;
        minus[j] -= step;
        let f_plus = apply_reduced(&from_array(plus)).as_array();
        let f_minus = apply_reduced(&from_array(minus)).as_array();
        for i in 0..5 {
            jac[(i, j)] = (f_plus[i] - f_minus[i]) / (2.0 * step);
        }
    }
    jac
}

/// Central finite-difference total derivative of the full nine-entry
/// process matrix, a 9×9 matrix in row-major entry order.
pub fn fd_jacobian_block9(at: &UnitalBlock, step: f64) -> SMatrix<f64, 9, 9> {
    let mut jac = SMatrix::<f64, 9, 9>::zeros();
    for j in 0..9 {
        let mut plus = *at;
        let mut minus = *at;
        plus.entries[j / 3][j % 3] += step;
        minus.entries[j / 3][j % 3] -= step;
        let f_plus = process_matrix_explicit(&plus).row_major();
        let f_minus = process_matrix_explicit(&minus).row_major();
        for i in 0..9 {
            jac[(i, j)] = (f_plus[i] - f_minus[i]) / (2.0 * step);
        }
    }
    jac
}

fn from_array(a: [f64; 5]) -> ReducedChannel {
    ReducedChannel::new(a[0], a[1], a[2], a[3], a[4])
}
