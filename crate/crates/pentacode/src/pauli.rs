//! Signed n-qubit Pauli operators in binary symplectic form.
//!
//! A [`PauliString`] is `i^t · (X^{x_1} Z^{z_1}) ⊗ … ⊗ (X^{x_n} Z^{z_n})`
//! with the X and Z parts stored as bit vectors and the phase tracked as an
//! exact power of `i`. Products, commutation checks, and dense matrix
//! realizations are all exact; no floating point enters until a string is
//! expanded with [`PauliString::to_dense`].

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Error;

/// Strings are capped at this many qubits so the bit vectors fit in one
/// machine word and dense expansions stay affordable.
pub const MAX_QUBITS: usize = 10;

/// A single-qubit Pauli letter.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    I,
    X,
    Y,
    Z,
}

impl Axis {
    /// All four letters in the conventional `{I, X, Y, Z}` order.
    pub const ALL: [Axis; 4] = [Axis::I, Axis::X, Axis::Y, Axis::Z];

    /// The three non-identity letters.
    pub const NONTRIVIAL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Index into `{I, X, Y, Z}`-ordered tables.
    pub fn index(self) -> usize {
        match self {
            Axis::I => 0,
            Axis::X => 1,
            Axis::Y => 2,
            Axis::Z => 3,
        }
    }

    fn bits(self) -> (u16, u16) {
        match self {
            Axis::I => (0, 0),
            Axis::X => (1, 0),
            Axis::Y => (1, 1),
            Axis::Z => (0, 1),
        }
    }

    fn from_bits(x: u16, z: u16) -> Axis {
        match (x & 1, z & 1) {
            (0, 0) => Axis::I,
            (1, 0) => Axis::X,
            (1, 1) => Axis::Y,
            (0, 1) => Axis::Z,
            _ => unreachable!(),
        }
    }

    /// The 2×2 matrix of this letter.
    pub fn matrix(self) -> DMatrix<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Axis::I => DMatrix::from_row_slice(2, 2, &[l, o, o, l]),
            Axis::X => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            Axis::Y => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            Axis::Z => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Axis::I => 'I',
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// A complex phase restricted to the fourth roots of unity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    /// Interpret as the exponent `t` in `i^t`.
    pub fn exponent(self) -> u8 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    /// Build from an exponent of `i` (taken modulo 4).
    pub fn from_exponent(t: i32) -> Phase {
        match t.rem_euclid(4) {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            3 => Phase::MinusI,
            _ => unreachable!(),
        }
    }

    pub fn times(self, other: Phase) -> Phase {
        Phase::from_exponent(i32::from(self.exponent()) + i32::from(other.exponent()))
    }

    /// `+1` or `-1` when the phase is real, `None` for `±i`.
    pub fn real_sign(self) -> Option<i8> {
        match self {
            Phase::PlusOne => Some(1),
            Phase::MinusOne => Some(-1),
            _ => None,
        }
    }

    pub fn as_complex(self) -> Complex64 {
        match self {
            Phase::PlusOne => Complex64::new(1.0, 0.0),
            Phase::PlusI => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::PlusOne => write!(f, "+1"),
            Phase::PlusI => write!(f, "+i"),
            Phase::MinusOne => write!(f, "-1"),
            Phase::MinusI => write!(f, "-i"),
        }
    }
}

/// A signed Pauli operator on `n ≤ 10` qubits.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: u8,
    x_bits: u16,
    z_bits: u16,
    phase: Phase,
}

impl PauliString {
    /// The identity on `n` qubits.
    pub fn identity(n: usize) -> Result<PauliString, Error> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: n,
                max: MAX_QUBITS,
            });
        }
        Ok(PauliString {
            n: n as u8,
            x_bits: 0,
            z_bits: 0,
            phase: Phase::PlusOne,
        })
    }

    /// A single non-identity letter at `qubit` (0-based), identity elsewhere.
    pub fn single(n: usize, qubit: usize, axis: Axis) -> Result<PauliString, Error> {
        let mut p = PauliString::identity(n)?;
        if qubit >= n {
            return Err(Error::Capacity {
                requested: qubit + 1,
                max: n,
            });
        }
        let (x, z) = axis.bits();
        p.x_bits |= x << qubit;
        p.z_bits |= z << qubit;
        // Y is stored as i·XZ, so fold the letter's phase into t.
        if axis == Axis::Y {
            p.phase = Phase::PlusI;
        }
        Ok(p)
    }

    /// Build the operator whose printed form is the given letters with
    /// phase `+1` (e.g. `from_axes(&[X,Z,Z,X,I])` is `XZZXI`).
    pub fn from_axes(axes: &[Axis]) -> Result<PauliString, Error> {
        let mut p = PauliString::identity(axes.len())?;
        let mut t: i32 = 0;
        for (k, axis) in axes.iter().enumerate() {
            let (x, z) = axis.bits();
            p.x_bits |= x << k;
            p.z_bits |= z << k;
            if *axis == Axis::Y {
                t += 1;
            }
        }
        p.phase = Phase::from_exponent(t);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The stored phase, normalized so that the operator equals
    /// `phase · (letter string)`.
    pub fn phase(&self) -> Phase {
        // Undo the i per Y folded into the internal X^x Z^z exponent.
        let ys = (self.x_bits & self.z_bits).count_ones() as i32;
        Phase::from_exponent(i32::from(self.phase.exponent()) - ys)
    }

    /// The letter at `qubit`.
    pub fn axis(&self, qubit: usize) -> Axis {
        Axis::from_bits(self.x_bits >> qubit, self.z_bits >> qubit)
    }

    /// All letters, low qubit first.
    pub fn axes(&self) -> Vec<Axis> {
        (0..self.len()).map(|k| self.axis(k)).collect()
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        (self.x_bits | self.z_bits).count_ones() as usize
    }

    pub fn is_identity_op(&self) -> bool {
        self.x_bits == 0 && self.z_bits == 0 && self.phase == Phase::PlusOne
    }

    /// The same operator multiplied by an extra scalar phase.
    pub fn phased(&self, extra: Phase) -> PauliString {
        PauliString {
            phase: self.phase.times(extra),
            ..*self
        }
    }

    /// Group product `self · other` with exact phase tracking.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        // Reordering X^{x2} past Z^{z1} costs (-1)^{z1·x2}.
        let swaps = (self.z_bits & other.x_bits).count_ones() as i32;
        let t = i32::from(self.phase.exponent()) + i32::from(other.phase.exponent()) + 2 * swaps;
        Ok(PauliString {
            n: self.n,
            x_bits: self.x_bits ^ other.x_bits,
            z_bits: self.z_bits ^ other.z_bits,
            phase: Phase::from_exponent(t),
        })
    }

    /// True iff the symplectic inner product of the bit vectors vanishes.
    pub fn commutes(&self, other: &PauliString) -> Result<bool, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let s =
            (self.x_bits & other.z_bits).count_ones() + (self.z_bits & other.x_bits).count_ones();
        Ok(s.is_multiple_of(2))
    }

    /// The ±1 sign picked up under conjugation by `other`:
    /// `other† · self · other = sign · self` for Pauli `other`.
    pub fn conjugation_sign(&self, other: &PauliString) -> Result<i8, Error> {
        Ok(if self.commutes(other)? { 1 } else { -1 })
    }

    /// Expand into the dense `2^n × 2^n` complex matrix.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::from_element(1, 1, self.phase.as_complex());
        for k in (0..self.len()).rev() {
            // Tensor factors are ordered qubit 0 ⊗ qubit 1 ⊗ …, matching the
            // printed left-to-right letter order.
            let (x, z) = ((self.x_bits >> k) & 1, (self.z_bits >> k) & 1);
            let factor = match (x, z) {
                (0, 0) => Axis::I.matrix(),
                (1, 0) => Axis::X.matrix(),
                // internal X·Z, not the letter Y; the per-letter i lives in
                // the phase already
                (1, 1) => Axis::X.matrix() * Axis::Z.matrix(),
                (0, 1) => Axis::Z.matrix(),
                _ => unreachable!(),
            };
            m = kron(&factor, &m);
        }
        m
    }
}

/// Kronecker product, row-major `a ⊗ b`.
pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = DMatrix::from_element(ar * br, ac * bc, Complex64::new(0.0, 0.0));
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase() {
            Phase::PlusOne => {}
            Phase::MinusOne => write!(f, "-")?,
            Phase::PlusI => write!(f, "+i")?,
            Phase::MinusI => write!(f, "-i")?,
        }
        for k in 0..self.len() {
            write!(f, "{}", self.axis(k))?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parse strings like `XZZXI`, `-Y`, `+iXY`, `-iZZZZZ`.
    fn from_str(s: &str) -> Result<PauliString, Error> {
        let bad = || Error::Parse(format!("invalid Pauli string {s:?}"));
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::PlusI, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MinusI, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::PlusOne, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MinusOne, r)
        } else {
            (Phase::PlusOne, s)
        };
        if rest.is_empty() || rest.len() > MAX_QUBITS {
            return Err(bad());
        }
        let mut axes = Vec::with_capacity(rest.len());
        for c in rest.chars() {
            axes.push(match c {
                'I' => Axis::I,
                'X' => Axis::X,
                'Y' => Axis::Y,
                'Z' => Axis::Z,
                _ => return Err(bad()),
            });
        }
        let mut p = PauliString::from_axes(&axes)?;
        p.phase = p.phase.times(phase);
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn random_string(rng: &mut StdRng, n: usize) -> PauliString {
        let axes: Vec<Axis> = (0..n).map(|_| Axis::ALL[rng.random_range(0..4)]).collect();
        let mut ps = PauliString::from_axes(&axes).unwrap();
        ps.phase = ps.phase.times(Phase::from_exponent(rng.random_range(0..4)));
        ps
    }

    fn dense_eq(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> bool {
        a.shape() == b.shape() && (a - b).iter().all(|c| c.norm() < 1e-12)
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let prod = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(prod, p("-iY"));
        assert_eq!(prod.to_string(), "-iY");
    }

    #[test]
    fn identity_is_neutral() {
        let id = PauliString::identity(5).unwrap();
        let g = p("XZZXI");
        assert_eq!(id.multiply(&g).unwrap(), g);
        assert_eq!(g.multiply(&id).unwrap(), g);
    }

    #[test]
    fn generator_product_matches_dense() {
        let a = p("XZZXI");
        let b = p("IXZZX");
        let prod = a.multiply(&b).unwrap();
        assert!(dense_eq(&prod.to_dense(), &(a.to_dense() * b.to_dense())));
    }

    #[test]
    fn commutation_basics() {
        assert!(p("X").commutes(&p("X")).unwrap());
        assert!(!p("X").commutes(&p("Z")).unwrap());
        let x1 = PauliString::single(5, 0, Axis::X).unwrap();
        assert!(x1.commutes(&p("XZZXI")).unwrap());
        // dense commutator agrees
        let (a, b) = (x1.to_dense(), p("XZZXI").to_dense());
        assert!(dense_eq(&(&a * &b), &(&b * &a)));
    }

    #[test]
    fn dense_basics() {
        let id = p("I").to_dense();
        assert!(dense_eq(&id, &DMatrix::identity(2, 2)));
        let y = p("Y").to_dense();
        let i = Complex64::new(0.0, 1.0);
        let o = Complex64::new(0.0, 0.0);
        assert!(dense_eq(&y, &DMatrix::from_row_slice(2, 2, &[o, -i, i, o])));
        let g = p("XZZXI").to_dense();
        assert_eq!(g.shape(), (32, 32));
        assert!(dense_eq(&(&g * &g), &DMatrix::identity(32, 32)));
    }

    #[test]
    fn squares_are_signed_identities() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let q = random_string(&mut rng, 5);
            let sq = q.multiply(&q).unwrap();
            assert_eq!(sq.x_bits, 0);
            assert_eq!(sq.z_bits, 0);
            assert!(
                sq.phase.real_sign().is_some(),
                "square of {q} has phase {:?}",
                sq.phase
            );
        }
    }

    #[test]
    fn dense_is_a_homomorphism() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let a = random_string(&mut rng, 5);
            let b = random_string(&mut rng, 5);
            let prod = a.multiply(&b).unwrap();
            assert!(
                dense_eq(&prod.to_dense(), &(a.to_dense() * b.to_dense())),
                "dense mismatch for {a} · {b}"
            );
        }
    }

    #[test]
    fn commutes_matches_dense_commutator() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..100 {
            let a = random_string(&mut rng, 5);
            let b = random_string(&mut rng, 5);
            let (da, db) = (a.to_dense(), b.to_dense());
            let dense_commute = dense_eq(&(&da * &db), &(&db * &da));
            assert_eq!(a.commutes(&b).unwrap(), dense_commute, "{a} vs {b}");
        }
    }

    #[test]
    fn associativity_exhaustive_single_qubit() {
        let mut all = Vec::new();
        for axis in Axis::ALL {
            for t in 0..4 {
                let mut q = PauliString::single(1, 0, axis).unwrap();
                q.phase = q.phase.times(Phase::from_exponent(t));
                all.push(q);
            }
        }
        for a in &all {
            for b in &all {
                for c in &all {
                    let left = a.multiply(b).unwrap().multiply(c).unwrap();
                    let right = a.multiply(&b.multiply(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn dimension_and_capacity_errors() {
        assert!(matches!(
            p("X").multiply(&p("XX")),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            p("X").commutes(&p("XX")),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            PauliString::identity(11),
            Err(Error::Capacity { .. })
        ));
    }

    proptest! {
        #[test]
        fn associativity_random_five_qubit(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_string(&mut rng, 5);
            let b = random_string(&mut rng, 5);
            let c = random_string(&mut rng, 5);
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn display_parse_round_trip(seed in any::<u64>(), n in 1usize..=8) {
            let mut rng = StdRng::seed_from_u64(seed);
            let q = random_string(&mut rng, n);
            let back: PauliString = q.to_string().parse().unwrap();
            prop_assert_eq!(q, back);
        }
    }
}
