//! Exact analysis of the five-qubit perfect code under unital single-qubit
//! noise.
//!
//! The crate computes the code's logical (effective) channel from the
//! explicit process matrix of the coding map, studies repeated concatenation
//! as a dynamical system on channel space, and evaluates error-strength
//! metrics (average gate infidelity, diamond distance) for physical and
//! logical channels.
//!
//! Everything is built three times over, on purpose:
//!
//! * [`coding_map::process_matrix_explicit`] — closed-form quintic
//!   polynomials in the nine entries of a unital block;
//! * [`coding_map::process_matrix_oracle`] — a 256-term symbolic sum over
//!   the encoder/decoder expansion tables derived from the stabilizer data
//!   by exact Pauli algebra;
//! * [`dense::FiveQubitDense`] — a literal 32-dimensional simulation of
//!   encode → noise → measure → recover → decode.
//!
//! The three routes are required to agree to near machine precision; the
//! [`verify`] module packages those cross-checks (and the dynamics/metrics
//! reproductions) into a runnable suite, exposed on the command line as
//! `pentacode verify`.
//!
//! ```
//! use pentacode::channel::{rotation_bitflip_channel, NoiseParams};
//! use pentacode::coding_map::apply_reduced;
//! use pentacode::metrics::{avg_infidelity, diamond_distance};
//!
//! // a small coherent error: 0.1 rad rotation, 1% bit-flip probability
//! let physical = rotation_bitflip_channel(NoiseParams::new(0.01, 0.1));
//! let logical = apply_reduced(&physical);
//!
//! // one level of encoding strictly reduces both error measures
//! assert!(avg_infidelity(&logical) < avg_infidelity(&physical));
//! assert!(diamond_distance(&logical).unwrap() < diamond_distance(&physical).unwrap());
//! ```

pub mod channel;
pub mod cli;
pub mod code;
pub mod coding_map;
pub mod dense;
pub mod dynamics;
pub mod error;
pub mod metrics;
pub mod pauli;
pub mod verify;

pub use error::Error;

/// The user guide, chapter by chapter. Each chapter lives in `book/src/` and
/// is included here verbatim so that `cargo test --doc` compiles and runs
/// every code block the book shows.
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/pauli-algebra.md")]
    pub mod pauli_algebra {}
    #[doc = include_str!("../../../book/src/channels.md")]
    pub mod channels {}
    #[doc = include_str!("../../../book/src/coding-map.md")]
    pub mod coding_map {}
    #[doc = include_str!("../../../book/src/concatenation.md")]
    pub mod concatenation {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    pub mod metrics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
