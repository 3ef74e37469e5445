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

//! Density-matrix simulation under per-gate Kraus noise.
//!
//! Each gate is followed by bit-flip then phase-flip on the qubits it touches. After each greedy
//! layer, qubits the layer left idle get amplitude damping then phase damping. The two
//! probabilities are drawn once per run from the configured ranges.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, Mat2, Statevector, C64, ONE, ZERO};

/// Largest qubit count for density-matrix evolution.
pub const MAX_DENSITY_QUBITS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KrausKind {
    BitFlip,
    PhaseFlip,
    AmplitudeDamping,
    PhaseDamping,
}

impl KrausKind {
    pub const ALL: [KrausKind; 4] =
        [KrausKind::BitFlip, KrausKind::PhaseFlip, KrausKind::AmplitudeDamping, KrausKind::PhaseDamping];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KrausChannel {
    pub kind: KrausKind,
    pub p: f64,
    pub operators: Vec<Mat2>,
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Kraus operators of a single-qubit channel.
pub fn channel_kraus(kind: KrausKind, p: f64) -> Result<KrausChannel> {
    check_probability(p)?;
    let (a, b) = ((1.0 - p).sqrt(), p.sqrt());
    let operators = match kind {
        KrausKind::BitFlip => vec![[[re(a), ZERO], [ZERO, re(a)]], [[ZERO, re(b)], [re(b), ZERO]]],
        KrausKind::PhaseFlip => vec![[[re(a), ZERO], [ZERO, re(a)]], [[re(b), ZERO], [ZERO, re(-b)]]],
        KrausKind::AmplitudeDamping => vec![[[ONE, ZERO], [ZERO, re(a)]], [[ZERO, re(b)], [ZERO, ZERO]]],
        KrausKind::PhaseDamping => vec![[[ONE, ZERO], [ZERO, re(a)]], [[ZERO, ZERO], [ZERO, re(b)]]],
    };
    Ok(KrausChannel { kind, p, operators })
}

impl KrausChannel {
    /// Largest entry of `Σ E†E − I`.
    pub fn completeness_deviation(&self) -> f64 {
        let mut sum = [[ZERO; 2]; 2];
        for e in &self.operators {
            for (r, row) in sum.iter_mut().enumerate() {
                for (c, v) in row.iter_mut().enumerate() {
                    *v += e[0][r].conj() * e[0][c] + e[1][r].conj() * e[1][c];
                }
            }
        }
        let mut dev: f64 = 0.0;
        for (r, row) in sum.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let id = if r == c { ONE } else { ZERO };
                dev = dev.max((v - id).norm());
            }
        }
        dev
    }

    /// `ρ ← Σ E ρ E†` on basis bit `bit`.
    pub fn apply(&self, rho: &mut DenseOperator, bit: usize) {
        let mut acc = DenseOperator::zeros(rho.dim());
        for e in &self.operators {
            let mut term = rho.clone();
            term.left_apply_1q(bit, e);
            term.right_apply_1q_dagger(bit, e);
            acc.add_scaled_assign(&term, ONE);
        }
        *rho = acc;
    }
}

/// Strength classes for drawn probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseClass {
    Off,
    Low,
    Medium,
    High,
}

impl NoiseClass {
    /// Half-open range `(lo, hi]`; `Off` is the point `0`.
    pub fn range(self) -> (f64, f64) {
        match self {
            NoiseClass::Off => (0.0, 0.0),
            NoiseClass::Low => (0.0, 1e-3),
            NoiseClass::Medium => (1e-3, 1e-1),
            NoiseClass::High => (1e-1, 1.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NoiseClass::Off => "off",
            NoiseClass::Low => "low",
            NoiseClass::Medium => "medium",
            NoiseClass::High => "high",
        }
    }
}

/// How a probability is chosen: a class, an explicit range or a fixed value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbSpec {
    Class(NoiseClass),
    Range { lo: f64, hi: f64 },
    Fixed(f64),
}

impl ProbSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProbSpec::Class(_) => Ok(()),
            ProbSpec::Fixed(p) => check_probability(p),
            ProbSpec::Range { lo, hi } => {
                check_probability(lo)?;
                check_probability(hi)?;
                if lo > hi {
                    return Err(Error::InvalidNoise(format!("empty range ({lo}, {hi}]")));
                }
                Ok(())
            }
        }
    }

    fn bounds(&self) -> (f64, f64) {
        match *self {
            ProbSpec::Class(c) => c.range(),
            ProbSpec::Range { lo, hi } => (lo, hi),
            ProbSpec::Fixed(p) => (p, p),
        }
    }

    /// Draws from `(lo, hi]`.
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let (lo, hi) = self.bounds();
        let u: f64 = rng.random();
        hi - u * (hi - lo)
    }

    /// Label used in output tables.
    pub fn label(&self) -> String {
        match *self {
            ProbSpec::Class(c) => c.name().to_string(),
            ProbSpec::Range { lo, hi } => format!("{lo}:{hi}"),
            ProbSpec::Fixed(p) => format!("{p}"),
        }
    }
}

impl FromStr for ProbSpec {
    type Err = Error;

    /// `low`, `medium`, `high`, `off`, a number, or `lo:hi`.
    fn from_str(s: &str) -> Result<Self> {
        let spec = match s.to_ascii_lowercase().as_str() {
            "off" | "none" => ProbSpec::Class(NoiseClass::Off),
            "low" => ProbSpec::Class(NoiseClass::Low),
            "medium" => ProbSpec::Class(NoiseClass::Medium),
            "high" => ProbSpec::Class(NoiseClass::High),
            other => {
                let num =
                    |t: &str| t.trim().parse::<f64>().map_err(|_| Error::InvalidNoise(format!("bad noise spec {s:?}")));
                match other.split_once(':') {
                    Some((lo, hi)) => ProbSpec::Range { lo: num(lo)?, hi: num(hi)? },
                    None => ProbSpec::Fixed(num(other)?),
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for ProbSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Which CNOT qubits receive gate-error channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CnotNoise {
    #[default]
    BothQubits,
    TargetOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    /// Bit-flip and phase-flip probability after each gate.
    pub gate: ProbSpec,
    /// Amplitude- and phase-damping probability on idle qubits after each layer.
    pub idle: ProbSpec,
    pub seed: u64,
    #[serde(default)]
    pub cnot_noise: CnotNoise,
}

impl NoiseConfig {
    pub fn new(gate: ProbSpec, idle: ProbSpec, seed: u64) -> Self {
        Self { gate, idle, seed, cnot_noise: CnotNoise::default() }
    }

    pub fn noiseless() -> Self {
        Self::new(ProbSpec::Fixed(0.0), ProbSpec::Fixed(0.0), 0)
    }

    /// Draws the gate probability, then the idle one, from a generator seeded with `seed`.
    pub fn resolve(&self) -> Result<ResolvedNoise> {
        self.gate.validate()?;
        self.idle.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let gate_p = self.gate.draw(&mut rng);
        let idle_p = self.idle.draw(&mut rng);
        ResolvedNoise::new(gate_p, idle_p, self.cnot_noise)
    }
}

/// Concrete channels for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedNoise {
    pub gate_p: f64,
    pub idle_p: f64,
    pub cnot_noise: CnotNoise,
    gate_channels: [KrausChannel; 2],
    idle_channels: [KrausChannel; 2],
}

impl ResolvedNoise {
    pub fn new(gate_p: f64, idle_p: f64, cnot_noise: CnotNoise) -> Result<Self> {
        Ok(Self {
            gate_p,
            idle_p,
            cnot_noise,
            gate_channels: [channel_kraus(KrausKind::BitFlip, gate_p)?, channel_kraus(KrausKind::PhaseFlip, gate_p)?],
            idle_channels: [
                channel_kraus(KrausKind::AmplitudeDamping, idle_p)?,
                channel_kraus(KrausKind::PhaseDamping, idle_p)?,
            ],
        })
    }

    fn noisy_qubits<'g>(&self, g: &'g Gate) -> &'g [usize] {
        match (g.control(), self.cnot_noise) {
            (Some(_), CnotNoise::TargetOnly) => &g.qubits[1..],
            _ => &g.qubits,
        }
    }
}

fn density_dim_check(c: &Circuit, rho: &DenseOperator) -> Result<()> {
    let n = c.num_qubits();
    if n > MAX_DENSITY_QUBITS {
        return Err(Error::TooManyQubits { what: "density matrix", n, limit: MAX_DENSITY_QUBITS });
    }
    if rho.dim() != 1 << n {
        return Err(Error::DimensionMismatch(1 << n, rho.dim()));
    }
    Ok(())
}

/// `ρ ← N(ρ)` for the noisy version of `c`, in place.
pub fn evolve_noisy_in_place(c: &Circuit, rho: &mut DenseOperator, noise: &ResolvedNoise) -> Result<()> {
    density_dim_check(c, rho)?;
    let n = c.num_qubits();
    let bit = |q: usize| n - q;
    for layer in c.layers() {
        let mut busy = vec![false; n + 1];
        for &k in &layer {
            let g = &c.gates()[k];
            match g.matrix_1q() {
                Some(m) => {
                    rho.left_apply_1q(bit(g.qubits[0]), &m);
                    rho.right_apply_1q_dagger(bit(g.qubits[0]), &m);
                }
                None => {
                    let (cb, tb) = (bit(g.qubits[0]), bit(g.qubits[1]));
                    rho.left_apply_cnot(cb, tb);
                    rho.right_apply_cnot(cb, tb);
                }
            }
            for &q in &g.qubits {
                busy[q] = true;
            }
            if noise.gate_p > 0.0 {
                for &q in noise.noisy_qubits(g) {
                    for ch in &noise.gate_channels {
                        ch.apply(rho, bit(q));
                    }
                }
            }
        }
        if noise.idle_p > 0.0 {
            for q in (1..=n).filter(|&q| !busy[q]) {
                for ch in &noise.idle_channels {
                    ch.apply(rho, bit(q));
                }
            }
        }
    }
    Ok(())
}

/// Noisy evolution of `ρ0` through `c`, with probabilities drawn from `cfg`.
pub fn evolve_noisy(c: &Circuit, rho0: &DenseOperator, cfg: &NoiseConfig) -> Result<DenseOperator> {
    let noise = cfg.resolve()?;
    let mut rho = rho0.clone();
    evolve_noisy_in_place(c, &mut rho, &noise)?;
    Ok(rho)
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn fidelity(psi: &Statevector, rho: &DenseOperator) -> Result<f64> {
    let rho_psi = psi.mul_by(rho)?;
    Ok(psi.inner(&rho_psi)?.re)
}

/// The two product input states used in fidelity studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputState {
    /// `|1⟩^{⊗n}`.
    Ones,
    /// `((|0⟩ + |1⟩)/√2)^{⊗n}`.
    Plus,
}

impl InputState {
    pub const ALL: [InputState; 2] = [InputState::Ones, InputState::Plus];

    pub fn state(self, n: usize) -> Statevector {
        match self {
            InputState::Ones => Statevector::basis(n, (1 << n) - 1),
            InputState::Plus => {
                let r = re(std::f64::consts::FRAC_1_SQRT_2);
                Statevector::product(n, [r, r])
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InputState::Ones => "ones",
            InputState::Plus => "plus",
        }
    }
}

impl FromStr for InputState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ones" | "1" | "one" => Ok(InputState::Ones),
            "plus" | "+" | "h0" => Ok(InputState::Plus),
            other => Err(Error::UnknownInputState(other.to_string())),
        }
    }
}

impl fmt::Display for InputState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelitySample {
    pub step: usize,
    pub t: f64,
    pub fidelity: f64,
}

/// Fidelity between the noiseless and noisy evolution of `psi0` through consecutive step
/// circuits, sampled at the given step indices (step 0 is the input itself).
pub fn fidelity_trace(
    steps: &[Circuit],
    dt: f64,
    psi0: &Statevector,
    noise: &ResolvedNoise,
    sample_steps: &[usize],
) -> Result<Vec<FidelitySample>> {
    let mut psi = psi0.clone();
    let mut rho = DenseOperator::projector(psi0);
    let mut out = Vec::new();
    for k in 0..=steps.len() {
        if k > 0 {
            let c = &steps[k - 1];
            c.apply_in_place(&mut psi)?;
            evolve_noisy_in_place(c, &mut rho, noise)?;
        }
        if sample_steps.contains(&k) {
            out.push(FidelitySample { step: k, t: k as f64 * dt, fidelity: fidelity(&psi, &rho)? });
        }
    }
    Ok(out)
}

/// One CSV row of a noisy scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoisyRow {
    pub t: f64,
    pub qubits: usize,
    pub input_state: String,
    pub gate_p_class: String,
    pub idle_p_class: String,
    pub gate_p: f64,
    pub idle_p: f64,
    pub fidelity: f64,
    pub seed: u64,
}
