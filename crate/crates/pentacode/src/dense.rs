//! Dense 32-dimensional simulation of the full error-correction round.
//!
//! Nothing in this module knows about the expansion tables or the
//! closed-form polynomials: the encoder isometry, syndrome projectors,
//! recovery unitaries, and decoder are built as explicit matrices from the
//! code data alone, and the logical transfer matrix is read off by pushing
//! the four Pauli operators through encode → noise → decode. That makes it
//! a fully independent oracle for the other two routes — and the natural
//! place to check weight-one error correction literally.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::channel::TransferMatrix;
use crate::code::CodeSpec;
use crate::error::Error;
use crate::pauli::{kron, Axis, PauliString};

type CMat = DMatrix<Complex64>;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// The encoder, decoder, and bookkeeping of one code instance as dense
/// operators.
pub struct FiveQubitDense {
    /// 32×2 isometry mapping the logical qubit into the code space.
    isometry: CMat,
    /// 2×32 decoder Kraus operators, one per syndrome.
    decoder_kraus: Vec<CMat>,
}

impl FiveQubitDense {
    /// Build the dense operators from a code specification.
    ///
    /// The code space projector is the average of the stabilizer elements;
    /// the logical `|0̄⟩` is the (normalized) projection of `|0…0⟩`, and
    /// `|1̄⟩ = X̄|0̄⟩`. Each decoder Kraus operator is
    /// `V† · R · P_s(R)` for a recovery `R` and its syndrome projector.
    pub fn new(spec: &CodeSpec) -> Result<FiveQubitDense, Error> {
        spec.validate()?;
        let n = spec.n_qubits();
        let dim = 1usize << n;
        let elements = spec.stabilizer_elements()?;
        let mut projector = CMat::from_element(dim, dim, czero());
        for e in &elements {
            projector += e.to_dense();
        }
        projector /= Complex64::new(elements.len() as f64, 0.0);

        let mut zero_ket = CMat::from_element(dim, 1, czero());
        zero_ket[(0, 0)] = Complex64::new(1.0, 0.0);
        let mut codeword0 = &projector * &zero_ket;
        let norm = codeword0.norm();
        if norm < 1e-12 {
            return Err(Error::InvalidCode(
                "|0…0⟩ has no component in the code space".into(),
            ));
        }
        codeword0 /= Complex64::new(norm, 0.0);
        let codeword1 = spec.logical(Axis::X).to_dense() * &codeword0;

        let mut isometry = CMat::from_element(dim, 2, czero());
        isometry.set_column(0, &codeword0.column(0));
        isometry.set_column(1, &codeword1.column(0));

        let mut decoder_kraus = Vec::with_capacity(spec.recovery_set.len());
        for recovery in &spec.recovery_set {
            let r = recovery.to_dense();
            let p = syndrome_projector(spec, recovery)?;
            decoder_kraus.push(isometry.adjoint() * &r * &p);
        }
        Ok(FiveQubitDense {
            isometry,
            decoder_kraus,
        })
    }

    /// Encoding channel applied to a 2×2 operator: `V ρ V†`.
    pub fn encode(&self, rho: &Matrix2<Complex64>) -> CMat {
        let rho_d = CMat::from_fn(2, 2, |i, j| rho[(i, j)]);
        &self.isometry * rho_d * self.isometry.adjoint()
    }

    /// Decoding channel applied to a 32×32 operator: measure the syndrome,
    /// recover, and invert the encoding.
    pub fn decode(&self, rho: &CMat) -> Matrix2<Complex64> {
        let mut out = CMat::from_element(2, 2, czero());
        for k in &self.decoder_kraus {
            out += k * rho * k.adjoint();
        }
        Matrix2::from_fn(|i, j| out[(i, j)])
    }

    /// The logical transfer matrix of `decode ∘ noise ∘ encode` for a noise
    /// channel given by dense 32×32 Kraus operators.
    pub fn logical_transfer_matrix(&self, noise_kraus: &[CMat]) -> TransferMatrix {
        let mut entries = [[0.0; 4]; 4];
        for (j, axis_in) in Axis::ALL.iter().enumerate() {
            let input = single_qubit_pauli(*axis_in);
            let encoded = self.encode(&input);
            let mut noisy = CMat::from_element(32, 32, czero());
            for k in noise_kraus {
                noisy += k * &encoded * k.adjoint();
            }
            let decoded = self.decode(&noisy);
            for (i, axis_out) in Axis::ALL.iter().enumerate() {
                let p = single_qubit_pauli(*axis_out);
                let val = (p * decoded).trace() * 0.5;
                entries[i][j] = val.re;
            }
        }
        TransferMatrix { entries }
    }

    /// Consistency checks on the constructed operators: `V†V = I₂` and the
    /// decoder Kraus operators summing to a trace-preserving channel.
    pub fn self_check(&self) -> f64 {
        let mut worst = 0.0f64;
        let gram = self.isometry.adjoint() * &self.isometry;
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - Complex64::new(want, 0.0)).norm());
            }
        }
        let mut sum = CMat::from_element(32, 32, czero());
        for k in &self.decoder_kraus {
            sum += k.adjoint() * k;
        }
        for i in 0..32 {
            for j in 0..32 {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((sum[(i, j)] - Complex64::new(want, 0.0)).norm());
            }
        }
        worst
    }
}

fn single_qubit_pauli(axis: Axis) -> Matrix2<Complex64> {
    let m = axis.matrix();
    Matrix2::from_fn(|i, j| m[(i, j)])
}

/// Projector onto the subspace an error with the syndrome of `recovery`
/// maps the code space to: `(1/2^g) Π_k (I + (−1)^{s_k} g_k)`.
fn syndrome_projector(spec: &CodeSpec, recovery: &PauliString) -> Result<CMat, Error> {
    let dim = 1usize << spec.n_qubits();
    let mut p = CMat::identity(dim, dim);
    for g in &spec.stabilizer_generators {
        let sign = if recovery.commutes(g)? { 1.0 } else { -1.0 };
        let term = (CMat::identity(dim, dim) + g.to_dense() * Complex64::new(sign, 0.0))
            / Complex64::new(2.0, 0.0);
        p = &p * term;
    }
    Ok(p)
}

/// All `k^5` five-fold tensor products of single-qubit Kraus operators:
/// the dense Kraus decomposition of an i.i.d. noise layer.
pub fn iid_noise_kraus(single: &[Matrix2<Complex64>]) -> Vec<CMat> {
    let singles: Vec<CMat> = single
        .iter()
        .map(|m| CMat::from_fn(2, 2, |i, j| m[(i, j)]))
        .collect();
    let mut out: Vec<CMat> = vec![CMat::identity(1, 1)];
    for _ in 0..5 {
        let mut next = Vec::with_capacity(out.len() * singles.len());
        for acc in &out {
            for s in &singles {
                next.push(kron(acc, s));
            }
        }
        out = next;
    }
    out
}

/// The unitary error `σ` on one qubit (identity elsewhere) as a single
/// dense Kraus operator.
pub fn weight_one_error(qubit: usize, axis: Axis) -> Vec<CMat> {
    let p = PauliString::single(5, qubit, axis).unwrap();
    vec![p.to_dense()]
}
