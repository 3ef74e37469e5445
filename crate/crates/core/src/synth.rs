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

//! Compilation of `exp(±iθσ)` for arbitrary Pauli strings.
//!
//! Non-diagonal strings use the similarity template `τ · P · R_X(±θ)_n · P · τ†` followed by a
//! CNOT cancellation pass. Strings over `{I, Z}` take a ladder of `CNOT(l, n)` around a single
//! `R_Z` instead.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateCensus, GateKind};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::perm::similarity_decomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::InvalidGate(format!("unknown sign {other:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpSynthRequest {
    pub sigma: PauliString,
    pub theta: f64,
    pub sign: Sign,
}

impl ExpSynthRequest {
    pub fn new(sigma: PauliString, theta: f64, sign: Sign) -> Self {
        Self { sigma, theta, sign }
    }

    pub fn angle(&self) -> f64 {
        self.sign.factor() * self.theta
    }
}

/// Upper limits on gate counts for one `exp(iθσ)` block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCountBound {
    pub rx_max: usize,
    pub ry_max: usize,
    pub rz_max: usize,
    pub cnot_control_n_max: usize,
    pub cnot_target_n_max: usize,
}

impl GateCountBound {
    /// Names of the bounds the census exceeds; `S` and `S†` count as `R_Z`.
    pub fn violations(&self, census: &GateCensus) -> Vec<String> {
        let checks = [
            ("rx", census.count(GateKind::RX), self.rx_max),
            ("ry", census.count(GateKind::RY), self.ry_max),
            ("rz", census.z_rotations(), self.rz_max),
            ("cnot_ctrl_n", census.cnot_with_control_n, self.cnot_control_n_max),
            ("cnot_tgt_n", census.cnot_with_target_n, self.cnot_target_n_max),
        ];
        checks
            .iter()
            .filter(|(_, have, max)| have > max)
            .map(|(name, have, max)| format!("{name}: {have} > {max}"))
            .collect()
    }

    pub fn admits(&self, census: &GateCensus) -> bool {
        self.violations(census).is_empty()
    }
}

impl fmt::Display for GateCountBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rx<={} ry<={} rz<={} cnot_ctrl_n<={} cnot_tgt_n<={}",
            self.rx_max, self.ry_max, self.rz_max, self.cnot_control_n_max, self.cnot_target_n_max
        )
    }
}

/// Gate-count bound for `σ`, with `n₂` the number of `Y` and `n₃` the number of `Z` letters.
///
/// A diagonal string whose last letter is `I` and whose weight is at least two cannot be reached
/// from `Z_n` by `CNOT(l, n)` conjugation alone, so that case allows the two `CNOT(n, w)` gates
/// used to move its parity onto qubit `n`.
pub fn gate_bounds(sigma: &PauliString) -> Result<GateCountBound> {
    if sigma.is_identity() {
        return Err(Error::IdentityString);
    }
    let n = sigma.len();
    if sigma.is_diagonal() {
        let needs_hub_move = sigma.at(n) == Pauli::I && sigma.support().len() >= 2;
        return Ok(GateCountBound {
            rx_max: 0,
            ry_max: 0,
            rz_max: 1,
            cnot_control_n_max: if needs_hub_move { 2 } else { 0 },
            cnot_target_n_max: 2 * n - 2,
        });
    }
    let n2 = sigma.count(Pauli::Y);
    let n3 = sigma.count(Pauli::Z);
    Ok(GateCountBound {
        rx_max: 1,
        ry_max: 2 * n2,
        rz_max: 4 * n2 + 2 * n3,
        cnot_control_n_max: 2 * n - 2,
        cnot_target_n_max: 2,
    })
}

/// Circuit for `exp(±iθσ)`.
pub fn exp_pauli_circuit(req: &ExpSynthRequest) -> Result<Circuit> {
    let sigma = &req.sigma;
    if sigma.is_identity() {
        return Err(Error::IdentityString);
    }
    let n = sigma.len();
    let angle = req.angle();
    let gates = if sigma.is_diagonal() {
        diagonal_gates(sigma, angle)
    } else {
        let d = similarity_decomposition(sigma)?;
        let mut g = d.tau_gates();
        g.extend(d.perm.gates().iter().cloned());
        g.push(Gate::rx(n, angle));
        g.extend(d.perm.gates().iter().cloned());
        g.extend(d.tau_dagger_gates());
        cancel_cnot_pairs(g)
    };
    Circuit::from_gates(n, gates)
}

/// Convenience wrapper around [`exp_pauli_circuit`].
pub fn synthesize(sigma: &PauliString, theta: f64, sign: Sign) -> Result<Circuit> {
    exp_pauli_circuit(&ExpSynthRequest::new(sigma.clone(), theta, sign))
}

fn diagonal_gates(sigma: &PauliString, angle: f64) -> Vec<Gate> {
    let n = sigma.len();
    let support = sigma.support();
    if sigma.at(n) == Pauli::Z {
        let ladder: Vec<Gate> = support.iter().filter(|&&l| l != n).map(|&l| Gate::cnot(l, n)).collect();
        return mirrored(ladder, Gate::rz(n, angle));
    }
    if support.len() == 1 {
        return vec![Gate::rz(support[0], angle)];
    }
    // CNOT(n, w) maps Z_J onto Z_J Z_n, which the ladder then folds onto qubit n.
    let w = support[0];
    let mut outer = vec![Gate::cnot(n, w)];
    outer.extend(support.iter().map(|&l| Gate::cnot(l, n)));
    mirrored(outer, Gate::rz(n, angle))
}

fn mirrored(prefix: Vec<Gate>, center: Gate) -> Vec<Gate> {
    let mut g = prefix.clone();
    g.push(center);
    g.extend(prefix.into_iter().rev());
    g
}

/// Whether `g` commutes with `CNOT(c, t)` by one of the elementary rules used for cancellation.
fn commutes_with_cnot(c: usize, t: usize, g: &Gate) -> bool {
    if !g.touches(c) && !g.touches(t) {
        return true;
    }
    match g.kind {
        GateKind::RX => g.target() == t,
        GateKind::RZ | GateKind::S | GateKind::Sdag => g.target() == c,
        GateKind::CNOT => {
            let (gc, gt) = (g.qubits[0], g.qubits[1]);
            (gc == c && gt != t) || (gt == t && gc != c)
        }
        GateKind::RY | GateKind::H => false,
    }
}

/// Removes pairs of identical CNOTs separated only by gates that commute with them.
pub fn cancel_cnot_pairs(mut gates: Vec<Gate>) -> Vec<Gate> {
    loop {
        let mut removed = None;
        'outer: for i in 0..gates.len() {
            if gates[i].kind != GateKind::CNOT {
                continue;
            }
            let (c, t) = (gates[i].qubits[0], gates[i].qubits[1]);
            for j in i + 1..gates.len() {
                if gates[j] == gates[i] {
                    removed = Some((i, j));
                    break 'outer;
                }
                if !commutes_with_cnot(c, t, &gates[j]) {
                    break;
                }
            }
        }
        match removed {
            Some((i, j)) => {
                gates.remove(j);
                gates.remove(i);
            }
            None => return gates,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{exp_hermitian, frobenius_distance, DenseOperator, Statevector, C64};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ps(s: &str) -> PauliString {
        PauliString::parse(s).unwrap()
    }

    fn oracle_distance(word: &str, theta: f64, sign: Sign) -> f64 {
        let sigma = ps(word);
        let c = synthesize(&sigma, theta, sign).unwrap();
        let exact = exp_hermitian(&sigma.dense(), sign.factor() * theta).unwrap();
        frobenius_distance(&c.unitary().unwrap(), &exact).unwrap()
    }

    fn all_words(n: usize) -> Vec<String> {
        let letters = ['I', 'X', 'Y', 'Z'];
        (1..(1usize << (2 * n))).map(|code| (0..n).map(|k| letters[(code >> (2 * k)) & 3]).collect()).collect()
    }

    fn random_word(rng: &mut ChaCha8Rng, n: usize) -> PauliString {
        loop {
            let letters: Vec<Pauli> = (0..n).map(|_| Pauli::ALL[rng.random_range(0..4)]).collect();
            let s = PauliString::new(letters).unwrap();
            if !s.is_identity() {
                return s;
            }
        }
    }

    #[test]
    fn last_x_is_a_single_rotation() {
        for n in 1..=5 {
            let sigma = PauliString::from_ix_index(n, 1).unwrap();
            let c = synthesize(&sigma, 0.42, Sign::Plus).unwrap();
            assert_eq!(c.gates(), &[Gate::rx(n, 0.42)]);
        }
    }

    #[test]
    fn zz_fast_path() {
        let c = synthesize(&ps("ZZ"), 0.7, Sign::Plus).unwrap();
        assert_eq!(c.gates(), &[Gate::cnot(1, 2), Gate::rz(2, 0.7), Gate::cnot(1, 2)]);
        assert!(oracle_distance("ZZ", 0.7, Sign::Plus) <= 1e-12);
    }

    #[test]
    fn a2_pattern_appears() {
        let c = synthesize(&ps("XXII"), 0.3, Sign::Plus).unwrap();
        assert_eq!(
            c.gates(),
            &[
                Gate::cnot(1, 4),
                Gate::cnot(4, 2),
                Gate::cnot(4, 1),
                Gate::rx(4, 0.3),
                Gate::cnot(4, 2),
                Gate::cnot(4, 1),
                Gate::cnot(1, 4)
            ]
        );
        assert!(oracle_distance("XXII", 0.3, Sign::Plus) <= 1e-10);
    }

    #[test]
    fn identity_rejected() {
        assert_eq!(synthesize(&ps("III"), 0.1, Sign::Plus), Err(Error::IdentityString));
        assert_eq!(gate_bounds(&ps("II")), Err(Error::IdentityString));
    }

    #[test]
    fn zero_angle_is_identity() {
        for word in all_words(3) {
            let c = synthesize(&ps(&word), 0.0, Sign::Plus).unwrap();
            let u = c.unitary().unwrap();
            assert!(u.sub(&DenseOperator::identity(8)).max_abs() < 1e-12, "{word}");
        }
    }

    #[test]
    fn oracle_exhaustive_small() {
        for n in 1..=4 {
            for word in all_words(n) {
                for (theta, sign) in [(0.1, Sign::Plus), (0.7, Sign::Minus), (std::f64::consts::FRAC_PI_3, Sign::Plus)]
                {
                    let d = oracle_distance(&word, theta, sign);
                    assert!(d <= 1e-10, "{word} θ={theta} {sign}: {d}");
                }
            }
        }
    }

    #[test]
    fn oracle_random_statevectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [5, 6] {
            for _ in 0..60 {
                let sigma = random_word(&mut rng, n);
                let theta = rng.random_range(-3.0..3.0);
                let c = synthesize(&sigma, theta, Sign::Minus).unwrap();
                let amps: Vec<C64> =
                    (0..1 << n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
                let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                let psi = Statevector::from_amplitudes(amps.iter().map(|a| a / norm).collect()).unwrap();
                let exact = exp_hermitian(&sigma.dense(), -theta).unwrap();
                let d = c.apply(&psi).unwrap().distance(&psi.mul_by(&exact).unwrap()).unwrap();
                assert!(d <= 1e-10, "{sigma}: {d}");
            }
        }
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(
            gate_bounds(&ps("ZY")).unwrap(),
            GateCountBound { rx_max: 1, ry_max: 2, rz_max: 6, cnot_control_n_max: 2, cnot_target_n_max: 2 }
        );
        let zzz = gate_bounds(&ps("ZZZ")).unwrap();
        assert_eq!(zzz.rz_max, 1);
        assert_eq!(zzz.cnot_target_n_max, 4);
        assert_eq!(zzz.cnot_control_n_max, 0);
        let c = synthesize(&ps("IIX"), 1.0, Sign::Plus).unwrap().census();
        assert_eq!((c.count(GateKind::RX), c.count(GateKind::CNOT)), (1, 0));
        let zy = synthesize(&ps("ZY"), 0.4, Sign::Plus).unwrap();
        assert!(gate_bounds(&ps("ZY")).unwrap().admits(&zy.census()));
    }

    #[test]
    fn bounds_hold_on_random_strings() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let n = rng.random_range(1..=10);
            let sigma = random_word(&mut rng, n);
            let c = synthesize(&sigma, 0.3, Sign::Plus).unwrap();
            let v = gate_bounds(&sigma).unwrap().violations(&c.census());
            assert!(v.is_empty(), "{sigma}: {v:?}");
            assert!(c.star_connectivity_report(n).passes(), "{sigma}");
        }
    }

    #[test]
    fn diagonal_counts() {
        for n in 2..=7 {
            for word in all_words(n.min(4)).into_iter().map(|w| format!("{}{}", "I".repeat(n - n.min(4)), w)) {
                let sigma = ps(&word);
                if !sigma.is_diagonal() {
                    continue;
                }
                let c = synthesize(&sigma, 0.2, Sign::Plus).unwrap().census();
                assert_eq!(c.z_rotations(), 1, "{word}");
                assert!(c.cnot_with_target_n <= 2 * n - 2, "{word}");
                assert_eq!(c.count(GateKind::RX) + c.count(GateKind::RY), 0);
            }
        }
    }

    #[test]
    fn sign_symmetry() {
        for word in all_words(3) {
            let sigma = ps(&word);
            let plus = synthesize(&sigma, 0.9, Sign::Plus).unwrap().unitary().unwrap();
            let minus = synthesize(&sigma, 0.9, Sign::Minus).unwrap().unitary().unwrap();
            assert!(plus.matmul(&minus).sub(&DenseOperator::identity(8)).max_abs() < 1e-12, "{word}");
        }
    }

    #[test]
    fn padded_identity_shifts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.random_range(1..=8);
            let sigma = random_word(&mut rng, n);
            let c = synthesize(&sigma, 0.5, Sign::Plus).unwrap();
            let padded = synthesize(&sigma.padded_left(), 0.5, Sign::Plus).unwrap();
            assert_eq!(padded.gates(), c.shifted(1).gates(), "{sigma}");
            assert!(padded.gates().iter().all(|g| !g.touches(1)));
        }
    }

    #[test]
    fn cancellation_rules() {
        let g = vec![Gate::cnot(1, 3), Gate::rx(3, 0.2), Gate::rz(1, 0.1), Gate::cnot(2, 3), Gate::cnot(1, 3)];
        assert_eq!(cancel_cnot_pairs(g), vec![Gate::rx(3, 0.2), Gate::rz(1, 0.1), Gate::cnot(2, 3)]);
        let blocked = vec![Gate::cnot(1, 3), Gate::rz(3, 0.2), Gate::cnot(1, 3)];
        assert_eq!(cancel_cnot_pairs(blocked.clone()), blocked);
        let reversed = vec![Gate::cnot(1, 3), Gate::cnot(3, 1), Gate::cnot(1, 3)];
        assert_eq!(cancel_cnot_pairs(reversed.clone()), reversed);
    }
}
