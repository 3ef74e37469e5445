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

//! Pauli strings and their binary indexing.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::DenseOperator;

/// One tensor factor of a Pauli string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// The 2×2 matrix, row-major.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }
}

/// A word `σ_1 σ_2 … σ_n` over `{I, X, Y, Z}`; position 1 is the leftmost tensor factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyPauli);
        }
        Ok(Self { letters })
    }

    /// Parses a letter word such as `"XYIZ"`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyPauli);
        }
        let letters = text
            .chars()
            .enumerate()
            .map(|(k, c)| Pauli::from_char(c).ok_or(Error::InvalidLetter { letter: c, position: k + 1 }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { letters })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(vec![Pauli::I; n])
    }

    /// `σ_b`: X at every position whose bit of `b` is set, where position `j` carries weight
    /// `2^{n-j}`.
    pub fn from_ix_index(n: usize, b: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPauli);
        }
        if n < 64 && b >> n != 0 {
            return Err(Error::IndexOutOfRange { n, index: b });
        }
        let letters = (1..=n).map(|j| if (b >> (n - j)) & 1 == 1 { Pauli::X } else { Pauli::I }).collect();
        Ok(Self { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    /// Letter at 1-based position `j`.
    pub fn at(&self, j: usize) -> Pauli {
        self.letters[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    pub fn is_ix_type(&self) -> bool {
        self.letters.iter().all(|&p| matches!(p, Pauli::I | Pauli::X))
    }

    pub fn is_diagonal(&self) -> bool {
        self.letters.iter().all(|&p| matches!(p, Pauli::I | Pauli::Z))
    }

    /// Number of occurrences of `p`.
    pub fn count(&self, p: Pauli) -> usize {
        self.letters.iter().filter(|&&q| q == p).count()
    }

    /// 1-based positions holding a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        self.letters.iter().enumerate().filter(|(_, &p)| p != Pauli::I).map(|(k, _)| k + 1).collect()
    }

    /// The index `b = Σ_j 2^{n-j} b_j` of an IX-type string.
    pub fn index_of_ix(&self) -> Result<u64> {
        if !self.is_ix_type() {
            return Err(Error::NotIxType(self.to_string()));
        }
        Ok(self.letters.iter().fold(0u64, |acc, &p| (acc << 1) | u64::from(p == Pauli::X)))
    }

    /// The string with `I` prepended, i.e. `I ⊗ σ`.
    pub fn padded_left(&self) -> Self {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(Pauli::I);
        letters.extend_from_slice(&self.letters);
        Self { letters }
    }

    /// Whether two strings of equal length commute as operators.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        debug_assert_eq!(self.len(), other.len());
        let anti =
            self.letters.iter().zip(&other.letters).filter(|(&a, &b)| a != Pauli::I && b != Pauli::I && a != b).count();
        anti % 2 == 0
    }

    /// Bit masks `(x_or_y, y_or_z)` over basis-state indices (qubit `j` ↦ bit `n - j`).
    pub(crate) fn masks(&self) -> (usize, usize, u32) {
        let n = self.len();
        let mut flip = 0usize;
        let mut sign = 0usize;
        let mut ny = 0u32;
        for (k, &p) in self.letters.iter().enumerate() {
            let bit = 1usize << (n - 1 - k);
            match p {
                Pauli::I => {}
                Pauli::X => flip |= bit,
                Pauli::Y => {
                    flip |= bit;
                    sign |= bit;
                    ny += 1;
                }
                Pauli::Z => sign |= bit,
            }
        }
        (flip, sign, ny)
    }

    /// Dense matrix as the Kronecker product of the letter matrices in positional order.
    pub fn dense(&self) -> DenseOperator {
        self.letters.iter().fold(DenseOperator::identity(1), |acc, &p| acc.kron(&DenseOperator::from_2x2(p.matrix())))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.letters {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        PauliString::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub fn parse_pauli(text: &str) -> Result<PauliString> {
    PauliString::parse(text)
}

pub fn pauli_from_index(n: usize, b: u64) -> Result<PauliString> {
    PauliString::from_ix_index(n, b)
}
