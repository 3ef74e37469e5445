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

//! Dense complex operators and statevectors.
//!
//! Basis index of `|b_1 … b_n⟩` is `Σ_j 2^{n-j} b_j`, so qubit `q` (1-based) lives at bit `n - q`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pauli::PauliString;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// A 2×2 complex matrix, row-major.
pub type Mat2 = [[C64; 2]; 2];

fn log2_exact(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Square complex matrix of power-of-two dimension, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<C64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = ONE;
        }
        m
    }

    pub fn from_2x2(m: Mat2) -> Self {
        Self { dim: 2, data: vec![m[0][0], m[0][1], m[1][0], m[1][1]] }
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        log2_exact(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(dim, row.len()));
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (k, &v) in entries.iter().enumerate() {
            m.data[k * entries.len() + k] = v;
        }
        m
    }

    /// Outer product `|ψ⟩⟨ψ|`.
    pub fn projector(psi: &Statevector) -> Self {
        let a = psi.amplitudes();
        Self::from_fn(a.len(), |r, c| a[r] * a[c].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    /// Matrix product `self · other`. Panics on dimension mismatch.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for r in 0..n {
            let out_row = &mut out[r * n..(r + 1) * n];
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |r, c| self.get(r / b, c / b) * other.get(r % b, c % b))
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn add_scaled_assign(&mut self, other: &Self, s: C64) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    pub fn scale_assign(&mut self, s: C64) {
        for a in &mut self.data {
            *a *= s;
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    /// Entrywise distance of `U·U†` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        self.matmul(&self.dagger()).sub(&Self::identity(self.dim)).max_abs()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Number of nonzero entries in row `r`.
    pub fn row_nonzeros(&self, r: usize) -> usize {
        self.row(r).iter().filter(|a| **a != ZERO).count()
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(HermitianEigen::new(self)?.values)
    }

    /// `self ← G · self` where `G` acts as `m` on the basis bit `bit` (pairs of rows mix).
    pub fn left_apply_1q(&mut self, bit: usize, m: &Mat2) {
        let n = self.dim;
        let mask = 1usize << bit;
        for i in 0..n {
            if i & mask != 0 {
                continue;
            }
            let j = i | mask;
            let (lo, hi) = self.data.split_at_mut(j * n);
            let ri = &mut lo[i * n..(i + 1) * n];
            let rj = &mut hi[..n];
            for (a, b) in ri.iter_mut().zip(rj.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = m[0][0] * x + m[0][1] * y;
                *b = m[1][0] * x + m[1][1] * y;
            }
        }
    }

    /// `self ← CNOT · self`.
    pub fn left_apply_cnot(&mut self, control_bit: usize, target_bit: usize) {
        let n = self.dim;
        let (cm, tm) = (1usize << control_bit, 1usize << target_bit);
        for i in 0..n {
            if i & cm != 0 && i & tm == 0 {
                let j = i | tm;
                let (lo, hi) = self.data.split_at_mut(j * n);
                lo[i * n..(i + 1) * n].swap_with_slice(&mut hi[..n]);
            }
        }
    }

    /// `self ← self · G†` where `G` acts as `m` on bit `bit`.
    pub fn right_apply_1q_dagger(&mut self, bit: usize, m: &Mat2) {
        let n = self.dim;
        let mask = 1usize << bit;
        let md = [[m[0][0].conj(), m[0][1].conj()], [m[1][0].conj(), m[1][1].conj()]];
        for row in self.data.chunks_exact_mut(n) {
            for i in 0..n {
                if i & mask != 0 {
                    continue;
                }
                let j = i | mask;
                let (x, y) = (row[i], row[j]);
                row[i] = x * md[0][0] + y * md[0][1];
                row[j] = x * md[1][0] + y * md[1][1];
            }
        }
    }

    /// `self ← self · CNOT` (CNOT is its own adjoint).
    pub fn right_apply_cnot(&mut self, control_bit: usize, target_bit: usize) {
        let n = self.dim;
        let (cm, tm) = (1usize << control_bit, 1usize << target_bit);
        for row in self.data.chunks_exact_mut(n) {
            for i in 0..n {
                if i & cm != 0 && i & tm == 0 {
                    row.swap(i, i | tm);
                }
            }
        }
    }

    /// `self ← exp(iθσ) · self`, using `exp(iθσ) = cos θ·I + i sin θ·σ`.
    pub fn left_apply_pauli_exp(&mut self, sigma: &PauliString, theta: f64) {
        let n = self.dim;
        assert_eq!(1usize << sigma.len(), n, "Pauli length does not match operator");
        let (flip, sign, ny) = sigma.masks();
        let (c, s) = (theta.cos(), theta.sin());
        let isin = I * s;
        let base = I.powu(ny);
        // σ|k⟩ = phase(k)|k ⊕ flip⟩
        let phase = |k: usize| if (k & sign).count_ones() % 2 == 1 { -base } else { base };
        if flip == 0 {
            for r in 0..n {
                let f = c + isin * phase(r);
                for a in &mut self.data[r * n..(r + 1) * n] {
                    *a *= f;
                }
            }
            return;
        }
        for r in 0..n {
            let k = r ^ flip;
            if k < r {
                continue;
            }
            // (σA)[r] = phase(k)·A[k], (σA)[k] = phase(r)·A[r]
            let (pr, pk) = (phase(k), phase(r));
            let (lo, hi) = self.data.split_at_mut(k * n);
            let row_r = &mut lo[r * n..(r + 1) * n];
            let row_k = &mut hi[..n];
            for (a, b) in row_r.iter_mut().zip(row_k.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = c * x + isin * pr * y;
                *b = c * y + isin * pk * x;
            }
        }
    }
}

impl Serialize for DenseOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim))?;
        for r in 0..self.dim {
            let row: Vec<[f64; 2]> = self.row(r).iter().map(|z| [z.re, z.im]).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for DenseOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let rows = rows.into_iter().map(|r| r.into_iter().map(|[a, b]| C64::new(a, b)).collect()).collect();
        DenseOperator::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Spectral decomposition `A = V diag(λ) V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors as columns.
    pub vectors: DenseOperator,
}

impl HermitianEigen {
    pub fn new(a: &DenseOperator) -> Result<Self> {
        let dev = a.hermitian_deviation();
        if dev > 1e-12 * a.max_abs().max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
        let n = a.dim();
        let m = DMatrix::from_fn(n, n, |r, c| {
            if r == c {
                C64::new(a.get(r, c).re, 0.0)
            } else {
                // symmetrize so the solver sees an exactly Hermitian input
                (a.get(r, c) + a.get(c, r).conj()) * 0.5
            }
        });
        let eig = SymmetricEigen::new(m);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = DenseOperator::from_fn(n, |r, c| eig.eigenvectors[(r, order[c])]);
        Ok(Self { values, vectors })
    }

    /// `exp(iθA) = V diag(e^{iθλ}) V†`.
    pub fn exp_i(&self, theta: f64) -> DenseOperator {
        let n = self.vectors.dim();
        let phases: Vec<C64> = self.values.iter().map(|&l| C64::from_polar(1.0, theta * l)).collect();
        let scaled = DenseOperator::from_fn(n, |r, c| self.vectors.get(r, c) * phases[c]);
        scaled.matmul(&self.vectors.dagger())
    }

    pub fn reconstruct(&self) -> DenseOperator {
        let n = self.vectors.dim();
        let scaled = DenseOperator::from_fn(n, |r, c| self.vectors.get(r, c) * self.values[c]);
        scaled.matmul(&self.vectors.dagger())
    }
}

/// `exp(iθA)` for Hermitian `A`, via real-eigenvalue spectral decomposition.
pub fn exp_hermitian(a: &DenseOperator, theta: f64) -> Result<DenseOperator> {
    Ok(HermitianEigen::new(a)?.exp_i(theta))
}

/// `sqrt(Σ |A_ij − B_ij|²)`.
pub fn frobenius_distance(a: &DenseOperator, b: &DenseOperator) -> Result<f64> {
    a.check_same_dim(b)?;
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt())
}

/// Complex amplitudes of an `n`-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    amps: Vec<C64>,
}

impl Statevector {
    /// `|index⟩` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = ONE;
        Self { amps }
    }

    /// Takes amplitudes as given; the length must be a power of two and the norm 1 to 1e-12.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        log2_exact(amps.len())?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidGate(format!("statevector norm² {norm} != 1")));
        }
        Ok(Self { amps })
    }

    /// Product state `|φ⟩^{⊗n}` for a single-qubit state `φ = (a, b)`.
    pub fn product(n: usize, phi: [C64; 2]) -> Self {
        let amps = (0..1usize << n).map(|k| (0..n).fold(ONE, |acc, bit| acc * phi[(k >> bit) & 1])).collect();
        Self { amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.amps.len().trailing_zeros() as usize
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Statevector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scale(&mut self, s: C64) {
        for a in &mut self.amps {
            *a *= s;
        }
    }

    /// Euclidean distance to another state.
    pub fn distance(&self, other: &Statevector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt())
    }

    /// `M·ψ` for a dense operator.
    pub fn mul_by(&self, m: &DenseOperator) -> Result<Statevector> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch(m.dim(), self.dim()));
        }
        let amps = (0..self.dim()).map(|r| m.row(r).iter().zip(&self.amps).map(|(a, b)| a * b).sum()).collect();
        Ok(Statevector { amps })
    }

    pub(crate) fn apply_1q(&mut self, bit: usize, m: &Mat2) {
        let mask = 1usize << bit;
        let amps = &mut self.amps;
        for i in 0..amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let (x, y) = (amps[i], amps[j]);
                amps[i] = m[0][0] * x + m[0][1] * y;
                amps[j] = m[1][0] * x + m[1][1] * y;
            }
        }
    }

    pub(crate) fn apply_cnot(&mut self, control_bit: usize, target_bit: usize) {
        let (cm, tm) = (1usize << control_bit, 1usize << target_bit);
        for i in 0..self.amps.len() {
            if i & cm != 0 && i & tm == 0 {
                self.amps.swap(i, i | tm);
            }
        }
    }
}
