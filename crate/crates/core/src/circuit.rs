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

//! Gate-level IR, exact evaluators and structural accounting.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, Mat2, Statevector, C64, ZERO};

/// Largest qubit count for which [`Circuit::unitary`] builds a dense matrix.
pub const MAX_DENSE_QUBITS: usize = 10;
/// Largest qubit count accepted by the statevector evaluator.
pub const MAX_STATEVECTOR_QUBITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    RX,
    RY,
    RZ,
    H,
    S,
    Sdag,
    CNOT,
}

impl GateKind {
    pub const ALL: [GateKind; 7] =
        [GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::H, GateKind::S, GateKind::Sdag, GateKind::CNOT];

    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::RX | GateKind::RY | GateKind::RZ)
    }

    pub fn arity(self) -> usize {
        if self == GateKind::CNOT {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A gate on 1-based qubits. CNOT qubits are `[control, target]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
}

impl Gate {
    pub fn rx(q: usize, theta: f64) -> Self {
        Self { kind: GateKind::RX, qubits: vec![q], angle: Some(theta) }
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        Self { kind: GateKind::RY, qubits: vec![q], angle: Some(theta) }
    }

    pub fn rz(q: usize, theta: f64) -> Self {
        Self { kind: GateKind::RZ, qubits: vec![q], angle: Some(theta) }
    }

    pub fn h(q: usize) -> Self {
        Self { kind: GateKind::H, qubits: vec![q], angle: None }
    }

    pub fn s(q: usize) -> Self {
        Self { kind: GateKind::S, qubits: vec![q], angle: None }
    }

    pub fn sdag(q: usize) -> Self {
        Self { kind: GateKind::Sdag, qubits: vec![q], angle: None }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self { kind: GateKind::CNOT, qubits: vec![control, target], angle: None }
    }

    pub fn control(&self) -> Option<usize> {
        (self.kind == GateKind::CNOT).then(|| self.qubits[0])
    }

    pub fn target(&self) -> usize {
        *self.qubits.last().expect("gate without qubits")
    }

    pub fn touches(&self, q: usize) -> bool {
        self.qubits.contains(&q)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.qubits.len() != self.kind.arity() {
            return Err(Error::InvalidGate(format!("{} expects {} qubit(s)", self.kind, self.kind.arity())));
        }
        for &q in &self.qubits {
            if q == 0 || q > n {
                return Err(Error::QubitOutOfRange { qubit: q, n });
            }
        }
        if self.kind == GateKind::CNOT && self.qubits[0] == self.qubits[1] {
            return Err(Error::InvalidGate("CNOT control equals target".into()));
        }
        match (self.kind.is_rotation(), self.angle) {
            (true, None) => Err(Error::InvalidGate(format!("{} needs an angle", self.kind))),
            (false, Some(_)) => Err(Error::InvalidGate(format!("{} takes no angle", self.kind))),
            (true, Some(a)) if !a.is_finite() => Err(Error::InvalidGate("non-finite angle".into())),
            _ => Ok(()),
        }
    }

    /// 2×2 matrix of a single-qubit gate.
    pub fn matrix_1q(&self) -> Option<Mat2> {
        let angle = self.angle.unwrap_or(0.0);
        let (c, s) = (angle.cos(), angle.sin());
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Some(match self.kind {
            GateKind::RX => [[C64::new(c, 0.0), C64::new(0.0, s)], [C64::new(0.0, s), C64::new(c, 0.0)]],
            GateKind::RY => [[C64::new(c, 0.0), C64::new(s, 0.0)], [C64::new(-s, 0.0), C64::new(c, 0.0)]],
            GateKind::RZ => [[C64::from_polar(1.0, angle), ZERO], [ZERO, C64::from_polar(1.0, -angle)]],
            GateKind::H => [[C64::new(r, 0.0), C64::new(r, 0.0)], [C64::new(r, 0.0), C64::new(-r, 0.0)]],
            GateKind::S => [[C64::from_polar(1.0, FRAC_PI_4), ZERO], [ZERO, C64::from_polar(1.0, -FRAC_PI_4)]],
            GateKind::Sdag => [[C64::from_polar(1.0, -FRAC_PI_4), ZERO], [ZERO, C64::from_polar(1.0, FRAC_PI_4)]],
            GateKind::CNOT => return None,
        })
    }

    pub fn inverse(&self) -> Gate {
        match self.kind {
            GateKind::S => Gate::sdag(self.qubits[0]),
            GateKind::Sdag => Gate::s(self.qubits[0]),
            _ => Gate { kind: self.kind, qubits: self.qubits.clone(), angle: self.angle.map(|a| -a) },
        }
    }

    fn shifted(&self, offset: usize) -> Gate {
        Gate { kind: self.kind, qubits: self.qubits.iter().map(|q| q + offset).collect(), angle: self.angle }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.angle) {
            (GateKind::CNOT, _) => write!(f, "CNOT({},{})", self.qubits[0], self.qubits[1]),
            (k, Some(a)) => write!(f, "{k}({a}) on {}", self.qubits[0]),
            (k, None) => write!(f, "{k} on {}", self.qubits[0]),
        }
    }
}

/// An ordered gate list on `n` qubits; gates apply left to right in time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(n);
        c.extend(gates)?;
        Ok(c)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Circuit = serde_json::from_str(text)?;
        Circuit::from_gates(raw.n, raw.gates)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Appends `other` (which must have the same width) after `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn concat(&self, other: &Circuit) -> Result<Circuit> {
        let mut c = self.clone();
        c.append(other)?;
        Ok(c)
    }

    /// The adjoint circuit.
    pub fn inverse(&self) -> Circuit {
        Circuit { n: self.n, gates: self.gates.iter().rev().map(Gate::inverse).collect() }
    }

    /// Relabels qubit `q` to `q + offset` on a register of `n + offset` qubits.
    pub fn shifted(&self, offset: usize) -> Circuit {
        Circuit { n: self.n + offset, gates: self.gates.iter().map(|g| g.shifted(offset)).collect() }
    }

    pub(crate) fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    fn bit(&self, q: usize) -> usize {
        self.n - q
    }

    /// Dense unitary: product of gate matrices in application order.
    pub fn unitary(&self) -> Result<DenseOperator> {
        if self.n > MAX_DENSE_QUBITS {
            return Err(Error::TooManyQubits { what: "dense unitary", n: self.n, limit: MAX_DENSE_QUBITS });
        }
        let mut u = DenseOperator::identity(1 << self.n);
        self.left_apply_to(&mut u);
        Ok(u)
    }

    /// `m ← U_circuit · m` without forming `U_circuit`.
    pub fn left_apply_to(&self, m: &mut DenseOperator) {
        assert_eq!(m.dim(), 1 << self.n, "operator width does not match circuit");
        for g in &self.gates {
            match g.matrix_1q() {
                Some(mat) => m.left_apply_1q(self.bit(g.qubits[0]), &mat),
                None => m.left_apply_cnot(self.bit(g.qubits[0]), self.bit(g.qubits[1])),
            }
        }
    }

    /// Applies a single gate to a statevector in place.
    pub(crate) fn apply_gate_in_place(&self, g: &Gate, psi: &mut Statevector) {
        match g.matrix_1q() {
            Some(mat) => psi.apply_1q(self.bit(g.qubits[0]), &mat),
            None => psi.apply_cnot(self.bit(g.qubits[0]), self.bit(g.qubits[1])),
        }
    }

    /// Evolves a statevector gate by gate.
    pub fn apply(&self, psi: &Statevector) -> Result<Statevector> {
        let mut out = psi.clone();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }

    pub fn apply_in_place(&self, psi: &mut Statevector) -> Result<()> {
        if self.n > MAX_STATEVECTOR_QUBITS {
            return Err(Error::TooManyQubits { what: "statevector", n: self.n, limit: MAX_STATEVECTOR_QUBITS });
        }
        if psi.dim() != 1 << self.n {
            return Err(Error::DimensionMismatch(1 << self.n, psi.dim()));
        }
        for g in &self.gates {
            self.apply_gate_in_place(g, psi);
        }
        Ok(())
    }

    /// Greedy layering: a gate opens a new layer iff it shares a qubit with the current layer.
    /// Returns the gate indices of each layer.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut layers: Vec<Vec<usize>> = Vec::new();
        let mut busy = vec![false; self.n + 1];
        for (k, g) in self.gates.iter().enumerate() {
            let clash = g.qubits.iter().any(|&q| busy[q]);
            if clash || layers.is_empty() {
                busy.iter_mut().for_each(|b| *b = false);
                layers.push(Vec::new());
            }
            for &q in &g.qubits {
                busy[q] = true;
            }
            layers.last_mut().expect("layer exists").push(k);
        }
        layers
    }

    pub fn depth(&self) -> usize {
        self.layers().len()
    }

    pub fn census(&self) -> GateCensus {
        let mut counts: BTreeMap<GateKind, usize> = GateKind::ALL.iter().map(|&k| (k, 0)).collect();
        let mut cnot_with_control_n = 0;
        let mut cnot_with_target_n = 0;
        for g in &self.gates {
            *counts.entry(g.kind).or_default() += 1;
            if g.kind == GateKind::CNOT {
                if g.qubits[0] == self.n {
                    cnot_with_control_n += 1;
                }
                if g.qubits[1] == self.n {
                    cnot_with_target_n += 1;
                }
            }
        }
        GateCensus { counts, cnot_with_control_n, cnot_with_target_n, depth: self.depth() }
    }

    /// Checks that every CNOT touches `center`.
    pub fn star_connectivity_report(&self, center: usize) -> StarReport {
        let violations = self
            .gates
            .iter()
            .enumerate()
            .filter(|(_, g)| g.kind == GateKind::CNOT && !g.touches(center))
            .map(|(k, _)| k + 1)
            .collect();
        StarReport { center, violations }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gates.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Per-kind gate counts plus hub-qubit CNOT orientation and depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GateCensus {
    pub counts: BTreeMap<GateKind, usize>,
    pub cnot_with_control_n: usize,
    pub cnot_with_target_n: usize,
    pub depth: usize,
}

impl GateCensus {
    pub fn count(&self, kind: GateKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Rotations about Z, counting `S` and `S†` as `R_Z(±π/4)`.
    pub fn z_rotations(&self) -> usize {
        self.count(GateKind::RZ) + self.count(GateKind::S) + self.count(GateKind::Sdag)
    }
}

impl fmt::Display for GateCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.counts {
            write!(f, "{k}={v} ")?;
        }
        write!(
            f,
            "cnot_ctrl_n={} cnot_tgt_n={} depth={}",
            self.cnot_with_control_n, self.cnot_with_target_n, self.depth
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub center: usize,
    /// 1-based positions of offending CNOTs.
    pub violations: Vec<usize>,
}

impl StarReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn unitary_of(c: &Circuit) -> Result<DenseOperator> {
    c.unitary()
}

pub fn apply(c: &Circuit, psi: &Statevector) -> Result<Statevector> {
    c.apply(psi)
}

pub fn census(c: &Circuit) -> GateCensus {
    c.census()
}

pub fn star_connectivity_report(c: &Circuit, center: usize) -> StarReport {
    c.star_connectivity_report(center)
}
