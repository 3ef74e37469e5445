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

//! CNOT permutation circuits `ΠT^e_{n,x}`, `ΠT^o_{n,x}` and the similarity decomposition of
//! arbitrary Pauli strings onto `I⊗…⊗I⊗X`.
//!
//! For `x = (x_{n-2} … x_0)` the even form is the product of `CNOT(n, n-j-1)` over the set bits
//! `x_j`; every factor has qubit `n` as control, so they commute. The odd form wraps the even
//! form in `CNOT(n-m-1, n)` where `m` is the highest set bit of `x`.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::DenseOperator;
use crate::pauli::{Pauli, PauliString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermCircuitSpec {
    pub n: usize,
    pub x: u64,
    pub parity: Parity,
}

impl PermCircuitSpec {
    pub fn new(n: usize, x: u64, parity: Parity) -> Result<Self> {
        let spec = Self { n, x, parity };
        spec.validate()?;
        Ok(spec)
    }

    pub fn max_x(n: usize) -> u64 {
        (1u64 << (n - 1)) - 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyPauli);
        }
        if self.n > 63 || self.x > Self::max_x(self.n) {
            return Err(Error::PermParamOutOfRange { n: self.n, x: self.x, max: Self::max_x(self.n.min(63)) });
        }
        Ok(())
    }

    /// `x_j` for `0 ≤ j ≤ n-2`.
    pub fn bit(&self, j: usize) -> bool {
        (self.x >> j) & 1 == 1
    }

    /// Highest set bit of `x`, if any.
    pub fn top_bit(&self) -> Option<usize> {
        (self.x != 0).then(|| 63 - self.x.leading_zeros() as usize)
    }
}

/// A two-cycle on 1-based basis-state indices, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transposition {
    pub i: u64,
    pub j: u64,
}

impl Transposition {
    pub fn new(a: u64, b: u64) -> Self {
        assert_ne!(a, b, "transposition of a point with itself");
        Self { i: a.min(b), j: a.max(b) }
    }
}

/// The permutation circuit, gates listed in the order of the defining product.
pub fn perm_circuit(spec: &PermCircuitSpec) -> Result<Circuit> {
    spec.validate()?;
    let n = spec.n;
    let even: Vec<Gate> = (0..n.saturating_sub(1)).filter(|&j| spec.bit(j)).map(|j| Gate::cnot(n, n - j - 1)).collect();
    let gates = match (spec.parity, spec.top_bit()) {
        (Parity::Even, _) | (Parity::Odd, None) => even,
        (Parity::Odd, Some(m)) => {
            let wrap = Gate::cnot(n - m - 1, n);
            let mut g = Vec::with_capacity(even.len() + 2);
            g.push(wrap.clone());
            g.extend(even);
            g.push(wrap);
            g
        }
    };
    Circuit::from_gates(n, gates)
}

/// The disjoint transposition set whose product equals the permutation circuit.
///
/// With `m` ranging over `0..2^{n-1}` and `Λ` the set bits of `x`:
/// `α(m) = Σ_{k∈Λ} m_k 2^{k+1} + Σ_{j∉Λ} m_j 2^{j+1} + 2`,
/// `β(m) = Σ_{k∈Λ} m̄_k 2^{k+1} + Σ_{j∉Λ} m_j 2^{j+1} + c` with `c = 2` (even) or `1` (odd),
/// keeping the pairs with `α < β`.
pub fn transposition_product(spec: &PermCircuitSpec) -> Result<Vec<Transposition>> {
    spec.validate()?;
    if spec.x == 0 {
        return Err(Error::EmptyTranspositionProduct);
    }
    let bits = spec.n - 1;
    let in_lambda = |k: usize| spec.bit(k);
    let offset = match spec.parity {
        Parity::Even => 2,
        Parity::Odd => 1,
    };
    let mut out = Vec::new();
    for m in 0..(1u64 << bits) {
        let mut alpha = 2u64;
        let mut beta = offset;
        for k in 0..bits {
            let mk = (m >> k) & 1;
            alpha += mk << (k + 1);
            beta += if in_lambda(k) { (mk ^ 1) << (k + 1) } else { mk << (k + 1) };
        }
        if alpha < beta {
            out.push(Transposition::new(alpha, beta));
        }
    }
    out.sort();
    Ok(out)
}

/// Permutation matrix of a set of disjoint transpositions on `2^n` states.
pub fn transpositions_matrix(n: usize, ts: &[Transposition]) -> DenseOperator {
    let dim = 1usize << n;
    let mut image: Vec<usize> = (0..dim).collect();
    for t in ts {
        image.swap(t.i as usize - 1, t.j as usize - 1);
    }
    let mut m = DenseOperator::zeros(dim);
    for (col, &row) in image.iter().enumerate() {
        m.set(row, col, crate::linalg::ONE);
    }
    m
}

/// Which `ΠT` conjugates an IX-type string `σ_b` onto `I⊗…⊗X`: even with `x = (b-1)/2` for odd
/// `b`, odd with `x = b/2` for even `b`.
pub fn conjugating_spec(sigma: &PauliString) -> Result<PermCircuitSpec> {
    let b = sigma.index_of_ix()?;
    if b == 0 {
        return Err(Error::IdentityString);
    }
    if b % 2 == 1 {
        PermCircuitSpec::new(sigma.len(), (b - 1) / 2, Parity::Even)
    } else {
        PermCircuitSpec::new(sigma.len(), b / 2, Parity::Odd)
    }
}

/// `P` with `P σ P = I⊗…⊗I⊗X` for an IX-type `σ ≠ I`.
pub fn conjugating_perm(sigma: &PauliString) -> Result<Circuit> {
    perm_circuit(&conjugating_spec(sigma)?)
}

/// Single-qubit basis change `τ_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Conjugator {
    Identity,
    H,
    S,
}

/// `σ = τ† · μ · τ` with `μ` IX-type and `P μ P = I⊗…⊗X`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityDecomposition {
    pub tau: Vec<Conjugator>,
    pub mu: PauliString,
    pub b: u64,
    pub perm_spec: PermCircuitSpec,
    pub perm: Circuit,
}

impl SimilarityDecomposition {
    /// Gates of `τ` (applied before the permutation).
    pub fn tau_gates(&self) -> Vec<Gate> {
        self.tau
            .iter()
            .enumerate()
            .filter_map(|(k, c)| match c {
                Conjugator::Identity => None,
                Conjugator::H => Some(Gate::h(k + 1)),
                Conjugator::S => Some(Gate::s(k + 1)),
            })
            .collect()
    }

    /// Gates of `τ†` (applied after the permutation).
    pub fn tau_dagger_gates(&self) -> Vec<Gate> {
        self.tau
            .iter()
            .enumerate()
            .filter_map(|(k, c)| match c {
                Conjugator::Identity => None,
                Conjugator::H => Some(Gate::h(k + 1)),
                Conjugator::S => Some(Gate::sdag(k + 1)),
            })
            .collect()
    }

    /// Dense `τ = τ_1 ⊗ … ⊗ τ_n`.
    pub fn tau_matrix(&self) -> Result<DenseOperator> {
        Circuit::from_gates(self.tau.len(), self.tau_gates())?.unitary()
    }
}

pub fn similarity_decomposition(sigma: &PauliString) -> Result<SimilarityDecomposition> {
    if sigma.is_identity() {
        return Err(Error::IdentityString);
    }
    let tau = sigma
        .letters()
        .iter()
        .map(|p| match p {
            Pauli::Z => Conjugator::H,
            Pauli::Y => Conjugator::S,
            Pauli::I | Pauli::X => Conjugator::Identity,
        })
        .collect();
    let mu =
        PauliString::new(sigma.letters().iter().map(|&p| if p == Pauli::I { Pauli::I } else { Pauli::X }).collect())?;
    let b = mu.index_of_ix()?;
    let perm_spec = conjugating_spec(&mu)?;
    let perm = perm_circuit(&perm_spec)?;
    Ok(SimilarityDecomposition { tau, mu, b, perm_spec, perm })
}
