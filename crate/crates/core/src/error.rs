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

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty Pauli string")]
    EmptyPauli,
    #[error("invalid Pauli letter {letter:?} at position {position}")]
    InvalidLetter { letter: char, position: usize },
    #[error("Pauli string {0} is not over {{I, X}}")]
    NotIxType(String),
    #[error("identity Pauli string has no circuit")]
    IdentityString,
    #[error("index {index} out of range for {n} qubits")]
    IndexOutOfRange { n: usize, index: u64 },
    #[error("permutation parameter x = {x} out of range [0, {max}] for n = {n}")]
    PermParamOutOfRange { n: usize, x: u64, max: u64 },
    #[error("transposition product is empty for x = 0")]
    EmptyTranspositionProduct,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("{what} infeasible for n = {n} (limit {limit})")]
    TooManyQubits { what: &'static str, n: usize, limit: usize },
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("invalid Hamiltonian: {0}")]
    InvalidHamiltonian(String),
    #[error("invalid Trotter plan: {0}")]
    InvalidPlan(String),
    #[error("Hamiltonian terms do not commute: {0} and {1}")]
    NonCommuting(String, String),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid noise configuration: {0}")]
    InvalidNoise(String),
    #[error("unknown input state {0:?}")]
    UnknownInputState(String),
    #[error("io: {0}")]
    Io(String),
    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serde(e.to_string())
    }
}
