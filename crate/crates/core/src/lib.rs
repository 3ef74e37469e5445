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

//! Scalable circuits for exponentials of Pauli strings.
//!
//! Every Pauli string over `{I, X}` is permutation-similar to `I⊗…⊗I⊗X`, and the permutations
//! involved are products of CNOTs that all touch the last qubit. Conjugating by single-qubit `H`
//! and `S` layers extends this to arbitrary strings, so `exp(±iθσ)` compiles to
//!
//! ```text
//! τ · P · R_X(±θ) on qubit n · P · τ†
//! ```
//!
//! which runs unchanged on star-connected hardware with qubit `n` at the hub.
//!
//! The crate is organised bottom-up:
//!
//! - [`pauli`]: Pauli strings, their binary indexing and dense matrices.
//! - [`linalg`]: dense complex operators, statevectors and the Hermitian exponential oracle.
//! - [`circuit`]: the gate IR with exact evaluators, gate census and connectivity checks.
//! - [`perm`]: the CNOT permutation families and the similarity decomposition.
//! - [`synth`]: compilation of `exp(±iθσ)` and gate-count bounds.
//! - [`hamiltonian`]: Ising, block-diagonal, Heisenberg and transverse-field Ising chains.
//! - [`trotter`]: product-formula circuits and circuit-vs-exact error reports.
//! - [`noise`]: per-gate Kraus noise on density matrices and fidelity.
//! - [`cli`]: the `starpauli` command-line front-end.
//!
//! ```
//! use starpauli::linalg::{exp_hermitian, frobenius_distance};
//! use starpauli::synth::{gate_bounds, synthesize, Sign};
//! use starpauli::PauliString;
//!
//! let sigma = PauliString::parse("ZXYI")?;
//! let circuit = synthesize(&sigma, 0.3, Sign::Minus)?;
//! let exact = exp_hermitian(&sigma.dense(), -0.3)?;
//! assert!(frobenius_distance(&circuit.unitary()?, &exact)? < 1e-10);
//! assert!(gate_bounds(&sigma)?.admits(&circuit.census()));
//! assert!(circuit.star_connectivity_report(4).passes());
//! # Ok::<(), starpauli::Error>(())
//! ```
//!
//! Rotation conventions: `R_X(θ) = exp(iθX)`, `R_Y(θ) = exp(iθY)`, `R_Z(θ) = diag(e^{iθ}, e^{-iθ})`
//! and `S = R_Z(π/4)`. Qubit 1 is the leftmost, most significant tensor factor.

pub mod circuit;
pub mod cli;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod noise;
pub mod pauli;
pub mod perm;
pub mod synth;
pub mod trotter;

pub use circuit::{Circuit, Gate, GateCensus, GateKind};
pub use error::{Error, Result};
pub use hamiltonian::{Coefficient, Hamiltonian, HamiltonianTerm, ModelKind, ModelSpec};
pub use linalg::{DenseOperator, Statevector};
pub use pauli::{Pauli, PauliString};
pub use perm::{Parity, PermCircuitSpec, SimilarityDecomposition, Transposition};
pub use synth::{ExpSynthRequest, GateCountBound, Sign};
