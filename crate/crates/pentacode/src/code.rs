//! The five-qubit perfect code with the symmetric decoder, and the exact
//! expansion tables characterizing its encoding and decoding operations.
//!
//! The encoder is characterized by operators `E_σ = (1/(2|S|)) Σ_k S_k σ̄`
//! (sum over the full stabilizer group, `σ̄` the logical Pauli) and the
//! decoder by `D_σ = (1/|S|) Σ_{j,k} R_j† S_k σ̄ R_j` (additionally summed
//! over the recovery operators). Expanded in the plain Pauli product basis
//! these give sparse tables of exact dyadic rationals — [`AlphaBetaTables`]
//! — from which the logical channel of any i.i.d. noise follows by a finite
//! sum. Everything here is exact integer/rational arithmetic on
//! [`PauliString`]s; no floating point.

use num_rational::Ratio;

use crate::error::Error;
use crate::pauli::{Axis, PauliString, Phase};

/// Stabilizer generators, logical operators, and the syndrome → recovery
/// assignment defining a code with its decoder.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    pub stabilizer_generators: Vec<PauliString>,
    /// Logical operators indexed by [`Axis`] (`I, X, Y, Z`).
    pub logical_ops: [PauliString; 4],
    pub recovery_set: Vec<PauliString>,
}

impl CodeSpec {
    /// The `[[5,1,3]]` code: generators `⟨XZZXI, IXZZX, XIXZZ, ZXIXZ⟩`,
    /// transversal logicals, and the sixteen weight-≤1 recoveries of the
    /// symmetric decoder.
    pub fn five_qubit() -> CodeSpec {
        let stabilizer_generators = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let logical_ops = [
            "IIIII".parse().unwrap(),
            "XXXXX".parse().unwrap(),
            "YYYYY".parse().unwrap(),
            "ZZZZZ".parse().unwrap(),
        ];
        let mut recovery_set: Vec<PauliString> = vec![PauliString::identity(5).unwrap()];
        for qubit in 0..5 {
            for axis in Axis::NONTRIVIAL {
                recovery_set.push(PauliString::single(5, qubit, axis).unwrap());
            }
        }
        CodeSpec {
            stabilizer_generators,
            logical_ops,
            recovery_set,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.logical_ops[0].len()
    }

    /// The logical operator for the given axis.
    pub fn logical(&self, axis: Axis) -> &PauliString {
        &self.logical_ops[axis.index()]
    }

    /// Commutation pattern of `p` against the generators; bit `k` is set
    /// when `p` anticommutes with generator `k`.
    pub fn syndrome(&self, p: &PauliString) -> Result<u16, Error> {
        let mut s = 0u16;
        for (k, g) in self.stabilizer_generators.iter().enumerate() {
            if !p.commutes(g)? {
                s |= 1 << k;
            }
        }
        Ok(s)
    }

    /// All `2^g` stabilizer group elements as subset products of the
    /// generators, with exact phases.
    pub fn stabilizer_elements(&self) -> Result<Vec<PauliString>, Error> {
        let n = self.n_qubits();
        let g = self.stabilizer_generators.len();
        let mut out = Vec::with_capacity(1 << g);
        for mask in 0u32..(1 << g) {
            let mut acc = PauliString::identity(n)?;
            for (k, gen) in self.stabilizer_generators.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    acc = acc.multiply(gen)?;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Check the structural requirements: commuting generators, logicals in
    /// the normalizer, `Ȳ = i·X̄·Z̄`, and a bijective syndrome → recovery
    /// assignment.
    pub fn validate(&self) -> Result<(), Error> {
        for (i, a) in self.stabilizer_generators.iter().enumerate() {
            for b in self.stabilizer_generators.iter().skip(i + 1) {
                if !a.commutes(b)? {
                    return Err(Error::InvalidCode(format!(
                        "generators {a} and {b} do not commute"
                    )));
                }
            }
        }
        for logical in &self.logical_ops {
            for g in &self.stabilizer_generators {
                if !logical.commutes(g)? {
                    return Err(Error::InvalidCode(format!(
                        "logical {logical} anticommutes with generator {g}"
                    )));
                }
            }
        }
        let y_from_xz = self
            .logical(Axis::X)
            .multiply(self.logical(Axis::Z))?
            .phased(Phase::PlusI);
        if &y_from_xz != self.logical(Axis::Y) {
            return Err(Error::InvalidCode(format!(
                "logical Y is {} but i·X̄·Z̄ = {}",
                self.logical(Axis::Y),
                y_from_xz
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for r in &self.recovery_set {
            if !seen.insert(self.syndrome(r)?) {
                return Err(Error::InvalidCode(format!(
                    "recovery {r} duplicates a syndrome"
                )));
            }
        }
        if seen.len() != 1 << self.stabilizer_generators.len() {
            return Err(Error::InvalidCode(
                "recovery set does not cover all syndromes".into(),
            ));
        }
        Ok(())
    }
}

impl std::fmt::Display for CodeSpec {
    /// Text form listing generator, logical, and recovery strings, one
    /// group per line, for printing and diffing against reference tables.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "stabilizers:")?;
        for g in &self.stabilizer_generators {
            write!(f, " {g}")?;
        }
        write!(f, "\nlogicals:")?;
        for axis in Axis::ALL {
            write!(f, " {}={}", axis, self.logical(axis))?;
        }
        write!(f, "\nrecoveries:")?;
        for r in &self.recovery_set {
            write!(f, " {r}")?;
        }
        Ok(())
    }
}

/// One expansion term: an unsigned five-letter Pauli word and its exact
/// rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub axes: [Axis; 5],
    pub coeff: Ratio<i64>,
}

/// Sparse plain-basis expansions of the `E_σ` (encoder) and `D_σ` (decoder)
/// operators, indexed by the logical axis `σ`.
///
/// `alpha` holds encoder coefficients: sixteen entries of magnitude `1/32`
/// per axis. `beta` holds decoder coefficients: sixteen entries of magnitude
/// `1/4` per non-identity axis, and the single term `IIIII ↦ 1` for `σ = I`.
#[derive(Clone, Debug)]
pub struct AlphaBetaTables {
    alpha: [Vec<Term>; 4],
    beta: [Vec<Term>; 4],
}

impl AlphaBetaTables {
    pub fn alpha(&self, sigma: Axis) -> &[Term] {
        &self.alpha[sigma.index()]
    }

    pub fn beta(&self, sigma: Axis) -> &[Term] {
        &self.beta[sigma.index()]
    }
}

/// Expand the encoder and decoder of `spec` into exact coefficient tables.
///
/// The sign a Pauli recovery contributes under conjugation is the
/// commutation sign `η(P, R) = ±1`: `R† P R = η(P, R)·P`.
pub fn derive_alpha_beta(spec: &CodeSpec) -> Result<AlphaBetaTables, Error> {
    spec.validate()?;
    let elements = spec.stabilizer_elements()?;
    let group_order = elements.len() as i64;

    let mut alpha: [Vec<Term>; 4] = Default::default();
    let mut beta: [Vec<Term>; 4] = Default::default();

    for sigma in Axis::ALL {
        let logical = spec.logical(sigma);
        let mut alpha_terms = Vec::with_capacity(elements.len());
        let mut beta_terms = Vec::new();
        for element in &elements {
            let prod = element.multiply(logical)?;
            // S_k and σ̄ commute, so the product is Hermitian: phase ±1.
            let sign = prod.phase().real_sign().ok_or_else(|| {
                Error::InvalidCode(format!(
                    "stabilizer element {element} times logical {logical} is not Hermitian"
                ))
            })?;
            let axes: [Axis; 5] = prod
                .axes()
                .try_into()
                .map_err(|_| Error::InvalidCode("expected a five-qubit code".into()))?;
            alpha_terms.push(Term {
                axes,
                coeff: Ratio::new(i64::from(sign), 2 * group_order),
            });
            let mut weight = 0i64;
            for r in &spec.recovery_set {
                weight += i64::from(prod.conjugation_sign(r)?);
            }
            let coeff = Ratio::new(i64::from(sign) * weight, group_order);
            if coeff != Ratio::new(0, 1) {
                beta_terms.push(Term { axes, coeff });
            }
        }
        alpha_terms.sort_by_key(|t| t.axes);
        beta_terms.sort_by_key(|t| t.axes);
        alpha[sigma.index()] = alpha_terms;
        beta[sigma.index()] = beta_terms;
    }
    Ok(AlphaBetaTables { alpha, beta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::reference::{D_X_WORDS, D_Y_WORDS, D_Z_WORDS};

    fn word_set(words: &[&str]) -> std::collections::BTreeSet<[Axis; 5]> {
        words
            .iter()
            .map(|w| {
                let p: PauliString = w.parse().unwrap();
                p.axes().try_into().unwrap()
            })
            .collect()
    }

    #[test]
    fn five_qubit_spec_is_valid() {
        CodeSpec::five_qubit().validate().unwrap();
    }

    #[test]
    fn recovery_syndromes_are_a_bijection() {
        let spec = CodeSpec::five_qubit();
        let syndromes: std::collections::BTreeSet<u16> = spec
            .recovery_set
            .iter()
            .map(|r| spec.syndrome(r).unwrap())
            .collect();
        assert_eq!(spec.recovery_set.len(), 16);
        assert_eq!(syndromes.len(), 16);
    }

    #[test]
    fn decoder_identity_is_trivial() {
        let tables = derive_alpha_beta(&CodeSpec::five_qubit()).unwrap();
        let beta_i = tables.beta(Axis::I);
        assert_eq!(beta_i.len(), 1);
        assert_eq!(beta_i[0].axes, [Axis::I; 5]);
        assert_eq!(beta_i[0].coeff, Ratio::new(1, 1));
    }

    #[test]
    fn decoder_x_contains_all_x_word() {
        let tables = derive_alpha_beta(&CodeSpec::five_qubit()).unwrap();
        let term = tables
            .beta(Axis::X)
            .iter()
            .find(|t| t.axes == [Axis::X; 5])
            .expect("XXXXX missing from D_X");
        assert_eq!(term.coeff, Ratio::new(-1, 4));
    }

    #[test]
    fn decoder_term_lists_match_reference_tables() {
        let tables = derive_alpha_beta(&CodeSpec::five_qubit()).unwrap();
        for (sigma, words) in [
            (Axis::X, D_X_WORDS.as_slice()),
            (Axis::Y, D_Y_WORDS.as_slice()),
            (Axis::Z, D_Z_WORDS.as_slice()),
        ] {
            let derived = tables.beta(sigma);
            assert_eq!(derived.len(), 16, "D_{sigma} term count");
            let derived_words: std::collections::BTreeSet<[Axis; 5]> =
                derived.iter().map(|t| t.axes).collect();
            assert_eq!(derived_words, word_set(words), "D_{sigma} word set");
            for t in derived {
                assert_eq!(t.coeff, Ratio::new(-1, 4), "D_{sigma} coefficient");
            }
        }
    }

    #[test]
    fn encoder_tables_have_expected_shape() {
        let tables = derive_alpha_beta(&CodeSpec::five_qubit()).unwrap();
        for sigma in Axis::ALL {
            let terms = tables.alpha(sigma);
            assert_eq!(terms.len(), 16);
            for t in terms {
                assert_eq!(t.coeff.numer().abs(), 1);
                assert_eq!(*t.coeff.denom(), 32);
            }
        }
        let id_term = tables
            .alpha(Axis::I)
            .iter()
            .find(|t| t.axes == [Axis::I; 5])
            .unwrap();
        assert_eq!(id_term.coeff, Ratio::new(1, 32));
    }

    #[test]
    fn text_form_prints_all_operator_groups() {
        let text = CodeSpec::five_qubit().to_string();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "stabilizers: XZZXI IXZZX XIXZZ ZXIXZ"
        );
        assert_eq!(
            lines.next().unwrap(),
            "logicals: I=IIIII X=XXXXX Y=YYYYY Z=ZZZZZ"
        );
        let recoveries = lines.next().unwrap();
        assert!(recoveries.starts_with("recoveries: IIIII XIIII YIIII ZIIII"));
        assert_eq!(recoveries.split_whitespace().count(), 17);
    }

    #[test]
    fn rejects_non_commuting_generators() {
        let mut spec = CodeSpec::five_qubit();
        spec.stabilizer_generators[0] = "ZZZXI".parse().unwrap();
        assert!(matches!(
            derive_alpha_beta(&spec),
            Err(Error::InvalidCode(_))
        ));
    }
}
