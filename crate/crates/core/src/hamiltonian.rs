// Copyright 2026 The starpauli Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Spin-chain Hamiltonians as coefficient-tagged Pauli-term lists.
//!
//! Time-dependent coefficients switch on the parity of the 1-based step index `k`, which is
//! recovered from `t = kΔt` by rounding.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::MAX_DENSE_QUBITS;
use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, C64};
use crate::pauli::{Pauli, PauliString};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficient {
    Constant(f64),
    /// `even` on even step indices, `odd` on odd ones.
    StepParity {
        even: f64,
        odd: f64,
    },
}

impl Coefficient {
    pub fn is_constant(&self) -> bool {
        matches!(self, Coefficient::Constant(_))
    }

    pub fn at_step(&self, k: u64) -> f64 {
        match *self {
            Coefficient::Constant(a) => a,
            Coefficient::StepParity { even, odd } => {
                if k.is_multiple_of(2) {
                    even
                } else {
                    odd
                }
            }
        }
    }

    /// Value at `t` on a grid of spacing `dt`.
    pub fn value(&self, t: f64, dt: f64) -> f64 {
        match self {
            Coefficient::Constant(a) => *a,
            _ => self.at_step(step_index(t, dt)),
        }
    }
}

/// `k = round(t / dt)`, clamped at zero.
pub fn step_index(t: f64, dt: f64) -> u64 {
    (t / dt).round().max(0.0) as u64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianTerm {
    pub coeff: Coefficient,
    pub string: PauliString,
}

impl HamiltonianTerm {
    pub fn constant(a: f64, string: PauliString) -> Self {
        Self { coeff: Coefficient::Constant(a), string }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hamiltonian {
    pub n: usize,
    pub terms: Vec<HamiltonianTerm>,
    pub time_dependent: bool,
    pub seed: Option<u64>,
}

impl Hamiltonian {
    pub fn new(n: usize, terms: Vec<HamiltonianTerm>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.string.len() != n) {
            return Err(Error::InvalidHamiltonian(format!(
                "term {} has length {}, expected {n}",
                t.string,
                t.string.len()
            )));
        }
        let time_dependent = terms.iter().any(|t| !t.coeff.is_constant());
        Ok(Self { n, terms, time_dependent, seed: None })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficients_at(&self, t: f64, dt: f64) -> Vec<f64> {
        self.terms.iter().map(|term| term.coeff.value(t, dt)).collect()
    }

    pub fn coefficients_at_step(&self, k: u64) -> Vec<f64> {
        self.terms.iter().map(|term| term.coeff.at_step(k)).collect()
    }

    /// `Σ a_j(t) σ_j` as a dense matrix.
    pub fn dense_at(&self, t: f64, dt: f64) -> Result<DenseOperator> {
        self.dense_with(&self.coefficients_at(t, dt))
    }

    pub fn dense_with(&self, coeffs: &[f64]) -> Result<DenseOperator> {
        if self.n > MAX_DENSE_QUBITS {
            return Err(Error::TooManyQubits { what: "dense Hamiltonian", n: self.n, limit: MAX_DENSE_QUBITS });
        }
        let mut h = DenseOperator::zeros(1 << self.n);
        for (term, &a) in self.terms.iter().zip(coeffs) {
            if a != 0.0 {
                h.add_scaled_assign(&term.string.dense(), C64::new(a, 0.0));
            }
        }
        Ok(h)
    }

    /// Whether all term strings commute pairwise.
    pub fn all_commute(&self) -> bool {
        self.terms
            .iter()
            .enumerate()
            .all(|(i, a)| self.terms[i + 1..].iter().all(|b| a.string.commutes_with(&b.string)))
    }
}

impl fmt::Display for Hamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| match t.coeff {
                Coefficient::Constant(a) => format!("{a}·{}", t.string),
                Coefficient::StepParity { even, odd } => format!("({even}|{odd})·{}", t.string),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn single(n: usize, site: usize, p: Pauli) -> PauliString {
    let mut letters = vec![Pauli::I; n];
    letters[site - 1] = p;
    PauliString::new(letters).expect("n >= 1")
}

fn pair(n: usize, site: usize, p: Pauli) -> PauliString {
    let mut letters = vec![Pauli::I; n];
    letters[site - 1] = p;
    letters[site] = p;
    PauliString::new(letters).expect("n >= 2")
}

fn require_chain(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidHamiltonian(format!("chain needs n >= 2, got {n}")));
    }
    Ok(())
}

/// `h_l ~ uniform[-1, 1]`, one per site.
pub fn random_fields(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

/// `Σ_l J Z_l Z_{l+1}` on an open chain.
pub fn build_ising(n: usize, j: f64) -> Result<Hamiltonian> {
    require_chain(n)?;
    let terms = (1..n).map(|l| HamiltonianTerm::constant(j, pair(n, l, Pauli::Z))).collect();
    Hamiltonian::new(n, terms)
}

/// `I^{⊗n} + I^{⊗(n-1)}⊗X`.
pub fn build_blkdg(n: usize) -> Result<Hamiltonian> {
    let identity = PauliString::identity(n)?;
    let last_x = PauliString::from_ix_index(n, 1)?;
    Hamiltonian::new(n, vec![HamiltonianTerm::constant(1.0, identity), HamiltonianTerm::constant(1.0, last_x)])
}

/// `Σ_l J (XX + YY + ZZ)_{l,l+1} + Σ_l h_l Z_l`, plus `-g(t) Σ_l X_l` when time dependent.
pub fn build_heisenberg(n: usize, j: f64, seed: u64, time_dependent: bool) -> Result<Hamiltonian> {
    require_chain(n)?;
    let mut terms = Vec::new();
    for l in 1..n {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            terms.push(HamiltonianTerm::constant(j, pair(n, l, p)));
        }
    }
    for (l, h) in random_fields(n, seed).into_iter().enumerate() {
        terms.push(HamiltonianTerm::constant(h, single(n, l + 1, Pauli::Z)));
    }
    if time_dependent {
        // g = +1 on even steps and -1 on odd ones
        let coeff = Coefficient::StepParity { even: -1.0, odd: 1.0 };
        terms.extend((1..=n).map(|l| HamiltonianTerm { coeff, string: single(n, l, Pauli::X) }));
    }
    let mut h = Hamiltonian::new(n, terms)?;
    h.seed = Some(seed);
    Ok(h)
}

/// `Σ_l J Z_l Z_{l+1} + g Σ_l X_l + Σ_l h_l Z_l` with `J = 1`, `g = 1/2`; when time dependent
/// `J` is 1 on even steps and 0 on odd ones.
pub fn build_tfqim(n: usize, seed: u64, time_dependent: bool) -> Result<Hamiltonian> {
    require_chain(n)?;
    let j = if time_dependent { Coefficient::StepParity { even: 1.0, odd: 0.0 } } else { Coefficient::Constant(1.0) };
    let mut terms: Vec<HamiltonianTerm> =
        (1..n).map(|l| HamiltonianTerm { coeff: j, string: pair(n, l, Pauli::Z) }).collect();
    terms.extend((1..=n).map(|l| HamiltonianTerm::constant(0.5, single(n, l, Pauli::X))));
    for (l, h) in random_fields(n, seed).into_iter().enumerate() {
        terms.push(HamiltonianTerm::constant(h, single(n, l + 1, Pauli::Z)));
    }
    let mut h = Hamiltonian::new(n, terms)?;
    h.seed = Some(seed);
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ising,
    Blkdg,
    Heisenberg,
    Tfqim,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Ising => "ising",
            ModelKind::Blkdg => "blkdg",
            ModelKind::Heisenberg => "heisenberg",
            ModelKind::Tfqim => "tfqim",
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ising" => Ok(ModelKind::Ising),
            "blkdg" => Ok(ModelKind::Blkdg),
            "heisenberg" | "heis" => Ok(ModelKind::Heisenberg),
            "tfqim" => Ok(ModelKind::Tfqim),
            other => Err(Error::InvalidHamiltonian(format!("unknown model {other:?}"))),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn default_j() -> f64 {
    1.0
}

/// JSON model description, e.g. `{"model": "heisenberg", "n": 4, "J": 1.0, "seed": 7}`.
///
/// `J` applies to the Ising and Heisenberg chains; the transverse-field model fixes `J = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: ModelKind,
    pub n: usize,
    #[serde(rename = "J", default = "default_j")]
    pub j: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub time_dependent: bool,
}

impl ModelSpec {
    pub fn new(model: ModelKind, n: usize) -> Self {
        Self { model, n, j: 1.0, seed: 0, time_dependent: false }
    }

    pub fn build(&self) -> Result<Hamiltonian> {
        match self.model {
            ModelKind::Ising => build_ising(self.n, self.j),
            ModelKind::Blkdg => build_blkdg(self.n),
            ModelKind::Heisenberg => build_heisenberg(self.n, self.j, self.seed, self.time_dependent),
            ModelKind::Tfqim => build_tfqim(self.n, self.seed, self.time_dependent),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, ZERO};

    fn words(h: &Hamiltonian) -> Vec<String> {
        h.terms.iter().map(|t| t.string.to_string()).collect()
    }

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn ising_examples() {
        let h = build_ising(2, 1.0).unwrap();
        assert_eq!(words(&h), ["ZZ"]);
        assert_eq!(h.dense_at(0.3, 0.1).unwrap(), DenseOperator::diagonal(&[ONE, -ONE, -ONE, ONE]));
        let h = build_ising(3, 1.0).unwrap();
        assert_eq!(words(&h), ["ZZI", "IZZ"]);
        assert!(h.terms.iter().all(|t| t.coeff == Coefficient::Constant(1.0)));
        assert!(build_ising(1, 1.0).is_err());
        assert!(h.all_commute());
    }

    #[test]
    fn blkdg_examples() {
        let h = build_blkdg(1).unwrap();
        assert_eq!(
            h.dense_at(0.0, 0.1).unwrap(),
            DenseOperator::from_rows(vec![vec![ONE, ONE], vec![ONE, ONE]]).unwrap()
        );
        assert_eq!(words(&build_blkdg(2).unwrap()), ["II", "IX"]);
        for n in 1..=6 {
            let d = build_blkdg(n).unwrap().dense_at(0.0, 0.1).unwrap();
            assert!((0..d.dim()).all(|r| d.row_nonzeros(r) <= 2));
        }
    }

    #[test]
    fn heisenberg_structure() {
        let h = build_heisenberg(2, 1.0, 5, false).unwrap();
        assert_eq!(words(&h), ["XX", "YY", "ZZ", "ZI", "IZ"]);
        for t in &h.terms[3..] {
            let Coefficient::Constant(a) = t.coeff else { panic!("constant field") };
            assert!((-1.0..=1.0).contains(&a));
        }
        assert_eq!(h, build_heisenberg(2, 1.0, 5, false).unwrap());
        assert_ne!(h, build_heisenberg(2, 1.0, 6, false).unwrap());
        for n in 2..=6 {
            assert_eq!(build_heisenberg(n, 1.0, 1, false).unwrap().len(), 3 * (n - 1) + n);
            assert_eq!(build_heisenberg(n, 1.0, 1, true).unwrap().len(), 3 * (n - 1) + 2 * n);
        }
    }

    #[test]
    fn heisenberg_parity() {
        let h = build_heisenberg(2, 1.0, 5, true).unwrap();
        assert!(h.time_dependent);
        let dt = 0.001;
        let x_coeff = |k: u64| h.coefficients_at(k as f64 * dt, dt)[5];
        assert_eq!(x_coeff(2), -1.0);
        assert_eq!(x_coeff(1), 1.0);
        assert_eq!(x_coeff(1000), -1.0);
        assert_eq!(x_coeff(999), 1.0);
    }

    #[test]
    fn tfqim_structure() {
        let h = build_tfqim(2, 9, false).unwrap();
        assert_eq!(words(&h), ["ZZ", "XI", "IX", "ZI", "IZ"]);
        assert_eq!(h.terms[0].coeff, Coefficient::Constant(1.0));
        assert_eq!(h.terms[1].coeff, Coefficient::Constant(0.5));
        assert!(!h.all_commute());
        let h = build_tfqim(2, 9, true).unwrap();
        assert_eq!(h.coefficients_at_step(1)[0], 0.0);
        assert_eq!(h.coefficients_at_step(2)[0], 1.0);
        for n in 2..=6 {
            assert_eq!(build_tfqim(n, 1, false).unwrap().len(), (n - 1) + 2 * n);
        }
    }

    #[test]
    fn dense_matches_kronecker_sum() {
        let h = build_heisenberg(2, 1.0, 42, false).unwrap();
        let fields = random_fields(2, 42);
        let x = DenseOperator::from_2x2([[ZERO, ONE], [ONE, ZERO]]);
        let y = DenseOperator::from_2x2([[ZERO, -crate::linalg::I], [crate::linalg::I, ZERO]]);
        let z = DenseOperator::diagonal(&[ONE, -ONE]);
        let id = DenseOperator::identity(2);
        let mut expect = x.kron(&x).add(&y.kron(&y)).add(&z.kron(&z));
        expect = expect.add(&z.kron(&id).scale(re(fields[0]))).add(&id.kron(&z).scale(re(fields[1])));
        assert!(h.dense_at(0.0, 0.01).unwrap().sub(&expect).max_abs() < 1e-15);
    }

    #[test]
    fn dense_is_hermitian() {
        let models = [
            build_ising(4, 1.0).unwrap(),
            build_blkdg(4).unwrap(),
            build_heisenberg(4, 1.0, 3, true).unwrap(),
            build_tfqim(4, 3, true).unwrap(),
        ];
        for h in &models {
            for k in 0..4 {
                let d = h.dense_at(k as f64 * 0.01, 0.01).unwrap();
                assert_eq!(d.hermitian_deviation(), 0.0);
            }
        }
        let empty = Hamiltonian::new(2, vec![]).unwrap();
        assert_eq!(empty.dense_at(0.0, 0.1).unwrap(), DenseOperator::zeros(4));
        assert!(build_ising(11, 1.0).unwrap().dense_at(0.0, 0.1).is_err());
    }

    #[test]
    fn model_spec_json() {
        let spec: ModelSpec =
            serde_json::from_str(r#"{"model":"tfqim","n":3,"J":1.0,"seed":4,"time_dependent":true}"#).unwrap();
        assert_eq!(spec.model, ModelKind::Tfqim);
        assert_eq!(spec.build().unwrap(), build_tfqim(3, 4, true).unwrap());
        let back: ModelSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        assert!(serde_json::from_str::<ModelSpec>(r#"{"model":"potts","n":3}"#).is_err());
        assert_eq!("Heisenberg".parse::<ModelKind>().unwrap(), ModelKind::Heisenberg);
    }
}
