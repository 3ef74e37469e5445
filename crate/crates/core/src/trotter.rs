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

//! Product-formula circuits and circuit-vs-exact error reports.
//!
//! One Trotter step of length `Δt` is a sequence of factors `exp(-i a_j f Δt σ_j)`, each compiled
//! by [`crate::synth`]. Identity strings never become gates; their factor `e^{-i a_j f Δt}` is kept
//! as a scalar phase alongside the circuit.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;
use crate::linalg::{exp_hermitian, frobenius_distance, DenseOperator, HermitianEigen, C64};
use crate::synth::{cancel_cnot_pairs, synthesize, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrotterPlan {
    #[serde(rename = "T")]
    pub total_time: f64,
    pub r: usize,
    pub order: usize,
    #[serde(default)]
    pub constant_depth: bool,
}

impl TrotterPlan {
    pub fn new(total_time: f64, r: usize, order: usize) -> Result<Self> {
        let plan = Self { total_time, r, order, constant_depth: false };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::InvalidPlan("r must be at least 1".into()));
        }
        if !(self.total_time > 0.0 && self.total_time.is_finite()) {
            return Err(Error::InvalidPlan(format!("T must be positive, got {}", self.total_time)));
        }
        if self.order == 0 || (self.order > 1 && self.order % 2 == 1) {
            return Err(Error::InvalidPlan(format!("order must be 1 or even, got {}", self.order)));
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.total_time / self.r as f64
    }
}

/// `ν_k = 1 / (4 - 4^{1/(2k-1)})`.
pub fn suzuki_nu(k: usize) -> f64 {
    1.0 / (4.0 - 4f64.powf(1.0 / (2.0 * k as f64 - 1.0)))
}

/// Factors `(term index, fraction of Δt)` of one step, in time order.
pub fn step_factors(num_terms: usize, order: usize) -> Vec<(usize, f64)> {
    let raw = match order {
        1 => (0..num_terms).map(|j| (j, 1.0)).collect(),
        2 => {
            let mut f: Vec<(usize, f64)> = (0..num_terms).map(|j| (j, 0.5)).collect();
            f.extend((0..num_terms).rev().map(|j| (j, 0.5)));
            f
        }
        _ => {
            let nu = suzuki_nu(order / 2);
            let inner = step_factors(num_terms, order - 2);
            let mut f = Vec::with_capacity(5 * inner.len());
            for w in [nu, nu, 1.0 - 4.0 * nu, nu, nu] {
                f.extend(inner.iter().map(|&(j, x)| (j, x * w)));
            }
            f
        }
    };
    merge_adjacent(raw)
}

fn merge_adjacent(factors: Vec<(usize, f64)>) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64)> = Vec::with_capacity(factors.len());
    for (j, x) in factors {
        match out.last_mut() {
            Some(last) if last.0 == j => last.1 += x,
            _ => out.push((j, x)),
        }
    }
    out
}

/// A circuit together with the global phase `e^{iφ}` of its dropped identity terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrotterCircuit {
    pub circuit: Circuit,
    pub phase: f64,
}

impl TrotterCircuit {
    fn empty(n: usize) -> Self {
        Self { circuit: Circuit::new(n), phase: 0.0 }
    }

    fn append(&mut self, other: &TrotterCircuit) -> Result<()> {
        self.circuit.append(&other.circuit)?;
        self.phase += other.phase;
        Ok(())
    }

    /// `e^{iφ} · U_circuit`.
    pub fn unitary(&self) -> Result<DenseOperator> {
        Ok(self.circuit.unitary()?.scale(C64::from_polar(1.0, self.phase)))
    }

    pub fn depth(&self) -> usize {
        self.circuit.depth()
    }
}

/// Circuit and phase for the factors of one step with coefficient vector `coeffs`.
pub fn step_circuit(h: &Hamiltonian, coeffs: &[f64], dt: f64, order: usize) -> Result<TrotterCircuit> {
    let mut out = TrotterCircuit::empty(h.n);
    for (j, f) in step_factors(h.len(), order) {
        let theta = coeffs[j] * f * dt;
        let sigma = &h.terms[j].string;
        if sigma.is_identity() {
            out.phase -= theta;
        } else {
            out.circuit.append(&synthesize(sigma, theta, Sign::Minus)?)?;
        }
    }
    Ok(out)
}

/// Whether all terms commute, as Pauli strings.
pub fn commuting_check(h: &Hamiltonian) -> Result<()> {
    for (i, a) in h.terms.iter().enumerate() {
        for b in &h.terms[i + 1..] {
            if !a.string.commutes_with(&b.string) {
                return Err(Error::NonCommuting(a.string.to_string(), b.string.to_string()));
            }
        }
    }
    Ok(())
}

/// Product-formula circuit for a time-independent Hamiltonian.
pub fn trotter_circuit(h: &Hamiltonian, plan: &TrotterPlan) -> Result<TrotterCircuit> {
    plan.validate()?;
    if h.time_dependent {
        return Err(Error::InvalidPlan("time-dependent Hamiltonian needs the piecewise-constant path".into()));
    }
    if plan.constant_depth {
        return constant_depth_circuit(h, plan.total_time);
    }
    let step = step_circuit(h, &h.coefficients_at_step(1), plan.dt(), plan.order)?;
    let mut out = TrotterCircuit::empty(h.n);
    for _ in 0..plan.r {
        out.append(&step)?;
    }
    Ok(out)
}

/// First-order circuit with coefficients frozen at `t = kΔt` during step `k`.
pub fn trotter_td_circuit(h: &Hamiltonian, plan: &TrotterPlan) -> Result<TrotterCircuit> {
    plan.validate()?;
    if plan.order != 1 {
        return Err(Error::InvalidPlan(format!("time-dependent evolution uses order 1, got {}", plan.order)));
    }
    let mut cache = StepCache::new(h, plan.dt(), 1);
    let mut out = TrotterCircuit::empty(h.n);
    for k in 1..=plan.r as u64 {
        out.append(cache.get(k)?)?;
    }
    Ok(out)
}

/// The `r` per-step circuits of a plan, in time order. Time-dependent Hamiltonians use order 1.
pub fn step_circuits(h: &Hamiltonian, plan: &TrotterPlan) -> Result<Vec<TrotterCircuit>> {
    plan.validate()?;
    if h.time_dependent && plan.order != 1 {
        return Err(Error::InvalidPlan(format!("time-dependent evolution uses order 1, got {}", plan.order)));
    }
    let mut cache = StepCache::new(h, plan.dt(), plan.order);
    (1..=plan.r as u64).map(|k| cache.get(k).cloned()).collect()
}

/// One pass over the terms with accumulated angles `a_j T`; requires commuting terms.
pub fn constant_depth_circuit(h: &Hamiltonian, total_time: f64) -> Result<TrotterCircuit> {
    if h.time_dependent {
        return Err(Error::InvalidPlan("constant-depth circuits need constant coefficients".into()));
    }
    commuting_check(h)?;
    let mut out = step_circuit(h, &h.coefficients_at_step(1), total_time, 1)?;
    out.circuit = Circuit::from_gates(h.n, cancel_cnot_pairs(out.circuit.into_gates()))?;
    Ok(out)
}

struct StepCache<'a> {
    h: &'a Hamiltonian,
    dt: f64,
    order: usize,
    steps: HashMap<Vec<u64>, TrotterCircuit>,
}

impl<'a> StepCache<'a> {
    fn new(h: &'a Hamiltonian, dt: f64, order: usize) -> Self {
        Self { h, dt, order, steps: HashMap::new() }
    }

    fn get(&mut self, k: u64) -> Result<&TrotterCircuit> {
        let coeffs = self.h.coefficients_at_step(k);
        let key: Vec<u64> = coeffs.iter().map(|a| a.to_bits()).collect();
        if !self.steps.contains_key(&key) {
            let c = step_circuit(self.h, &coeffs, self.dt, self.order)?;
            self.steps.insert(key.clone(), c);
        }
        Ok(&self.steps[&key])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorSample {
    pub step: usize,
    pub t: f64,
    pub err_circuit: f64,
    pub err_numeric: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub samples: Vec<ErrorSample>,
}

impl ErrorReport {
    /// Largest `|err_circuit - err_numeric|` over the samples.
    pub fn max_column_gap(&self) -> f64 {
        self.samples.iter().map(|s| (s.err_circuit - s.err_numeric).abs()).fold(0.0, f64::max)
    }

    pub fn max_circuit_error(&self) -> f64 {
        self.samples.iter().map(|s| s.err_circuit).fold(0.0, f64::max)
    }

    pub fn last(&self) -> Option<&ErrorSample> {
        self.samples.last()
    }
}

/// Steps `0, stride, 2·stride, …` plus `r` itself.
pub fn strided_steps(r: usize, stride: usize) -> Vec<usize> {
    let mut steps: Vec<usize> = (0..=r).step_by(stride.max(1)).collect();
    if steps.last() != Some(&r) {
        steps.push(r);
    }
    steps
}

/// Frobenius errors of the circuit prefix and of the numeric product formula against the exact
/// evolution at the given step boundaries.
///
/// The exact reference is `exp(-iHt)` for constant `H` and the ordered product of
/// `exp(-iH(kΔt)Δt)` otherwise. Time-dependent Hamiltonians are evolved with order 1.
pub fn error_report(h: &Hamiltonian, plan: &TrotterPlan, sample_steps: &[usize]) -> Result<ErrorReport> {
    plan.validate()?;
    if h.n > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits { what: "dense error report", n: h.n, limit: MAX_DENSE_QUBITS });
    }
    if h.time_dependent && plan.order != 1 {
        return Err(Error::InvalidPlan(format!("time-dependent evolution uses order 1, got {}", plan.order)));
    }
    let dim = 1usize << h.n;
    let dt = plan.dt();
    let mut wanted: Vec<usize> = sample_steps.iter().copied().filter(|&k| k <= plan.r).collect();
    wanted.sort_unstable();
    wanted.dedup();

    let constant_depth = plan.constant_depth && !h.time_dependent;
    if plan.constant_depth {
        commuting_check(h)?;
    }
    let factors = step_factors(h.len(), plan.order);
    let spectral = if h.time_dependent { None } else { Some(HermitianEigen::new(&h.dense_at(0.0, dt)?)?) };
    let mut exact_steps: HashMap<Vec<u64>, DenseOperator> = HashMap::new();
    let mut circuits = StepCache::new(h, dt, plan.order);

    let mut u_circuit = DenseOperator::identity(dim);
    let mut u_numeric = DenseOperator::identity(dim);
    let mut u_exact = DenseOperator::identity(dim);
    let mut phase = 0.0;
    let mut samples = Vec::with_capacity(wanted.len());
    let mut next = wanted.iter().peekable();

    for k in 0..=plan.r {
        if k > 0 {
            let coeffs = h.coefficients_at_step(k as u64);
            if !constant_depth {
                let step = circuits.get(k as u64)?;
                step.circuit.left_apply_to(&mut u_circuit);
                phase += step.phase;
            }
            for &(j, f) in &factors {
                u_numeric.left_apply_pauli_exp(&h.terms[j].string, -coeffs[j] * f * dt);
            }
            if spectral.is_none() {
                let key: Vec<u64> = coeffs.iter().map(|a| a.to_bits()).collect();
                if !exact_steps.contains_key(&key) {
                    exact_steps.insert(key.clone(), exp_hermitian(&h.dense_with(&coeffs)?, -dt)?);
                }
                u_exact = exact_steps[&key].matmul(&u_exact);
            }
        }
        if next.peek() == Some(&&k) {
            next.next();
            let t = k as f64 * dt;
            if constant_depth {
                let c = constant_depth_circuit(h, t)?;
                u_circuit = c.circuit.unitary()?;
                phase = c.phase;
            }
            let exact = match &spectral {
                Some(e) => e.exp_i(-t),
                None => u_exact.clone(),
            };
            let with_phase = u_circuit.scale(C64::from_polar(1.0, phase));
            samples.push(ErrorSample {
                step: k,
                t,
                err_circuit: frobenius_distance(&with_phase, &exact)?,
                err_numeric: frobenius_distance(&u_numeric, &exact)?,
            });
        }
    }
    Ok(ErrorReport { samples })
}

/// One CSV row of a Trotter scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrotterRow {
    pub t: f64,
    pub qubits: usize,
    pub order: usize,
    pub r: usize,
    pub err_circuit: f64,
    pub err_numeric: f64,
    pub model: String,
    pub seed: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_blkdg, build_heisenberg, build_ising, build_tfqim, HamiltonianTerm};
    use crate::pauli::PauliString;

    fn ps(s: &str) -> PauliString {
        PauliString::parse(s).unwrap()
    }

    fn x_plus_z() -> Hamiltonian {
        Hamiltonian::new(1, vec![HamiltonianTerm::constant(1.0, ps("X")), HamiltonianTerm::constant(1.0, ps("Z"))])
            .unwrap()
    }

    fn final_error(h: &Hamiltonian, r: usize, order: usize) -> f64 {
        let plan = TrotterPlan::new(1.0, r, order).unwrap();
        error_report(h, &plan, &[r]).unwrap().samples[0].err_circuit
    }

    #[test]
    fn plan_validation() {
        assert!(TrotterPlan::new(1.0, 10, 3).is_err());
        assert!(TrotterPlan::new(1.0, 0, 1).is_err());
        assert!(TrotterPlan::new(0.0, 10, 1).is_err());
        assert!(TrotterPlan::new(1.0, 10, 4).is_ok());
        assert!((suzuki_nu(2) - 0.4144908).abs() < 1e-7);
    }

    #[test]
    fn factor_weights_sum_to_one_per_term() {
        for order in [1, 2, 4, 6] {
            let f = step_factors(3, order);
            for j in 0..3 {
                let total: f64 = f.iter().filter(|x| x.0 == j).map(|x| x.1).sum();
                assert!((total - 1.0).abs() < 1e-14, "order {order}");
            }
        }
        assert_eq!(step_factors(2, 2), vec![(0, 0.5), (1, 1.0), (0, 0.5)]);
    }

    #[test]
    fn single_term_is_exact() {
        let h = Hamiltonian::new(2, vec![HamiltonianTerm::constant(1.0, ps("ZZ"))]).unwrap();
        for r in [1, 3, 10] {
            let c = trotter_circuit(&h, &TrotterPlan::new(0.8, r, 1).unwrap()).unwrap();
            let exact = exp_hermitian(&ps("ZZ").dense(), -0.8).unwrap();
            assert!(frobenius_distance(&c.unitary().unwrap(), &exact).unwrap() < 1e-12);
        }
    }

    #[test]
    fn ising_is_exact() {
        for n in 2..=6 {
            let h = build_ising(n, 1.0).unwrap();
            let plan = TrotterPlan::new(1.0, 10, 1).unwrap();
            let rep = error_report(&h, &plan, &strided_steps(10, 1)).unwrap();
            assert_eq!(rep.samples.len(), 11);
            assert_eq!(rep.samples[0].err_circuit, 0.0);
            assert_eq!(rep.samples[0].err_numeric, 0.0);
            assert!(rep.max_circuit_error() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn convergence_rates() {
        let h = x_plus_z();
        for (order, ratio) in [(1, 2.0), (2, 4.0)] {
            let e: Vec<f64> = [8, 16, 32].iter().map(|&r| final_error(&h, r, order)).collect();
            for w in e.windows(2) {
                let got = w[0] / w[1];
                assert!((got / ratio - 1.0).abs() < 0.15, "order {order}: ratio {got}");
            }
        }
        let e4: Vec<f64> = [8, 16].iter().map(|&r| final_error(&h, r, 4)).collect();
        assert!((e4[0] / e4[1]).log2() > 3.5);
    }

    #[test]
    fn circuit_tracks_numeric() {
        let h = build_heisenberg(2, 1.0, 1, false).unwrap();
        let plan = TrotterPlan::new(1.0, 200, 1).unwrap();
        let rep = error_report(&h, &plan, &strided_steps(200, 20)).unwrap();
        assert!(rep.max_column_gap() <= 1e-9);
        assert!(rep.last().unwrap().err_numeric > 1e-6);
    }

    #[test]
    fn td_path_matches_constant_path() {
        let h = build_tfqim(3, 2, false).unwrap();
        let plan = TrotterPlan::new(1.0, 5, 1).unwrap();
        assert_eq!(trotter_td_circuit(&h, &plan).unwrap(), trotter_circuit(&h, &plan).unwrap());
        assert!(trotter_circuit(&build_tfqim(3, 2, true).unwrap(), &plan).is_err());
        assert!(trotter_td_circuit(&h, &TrotterPlan::new(1.0, 5, 2).unwrap()).is_err());
    }

    #[test]
    fn td_angles_follow_step_parity() {
        let dt = 0.1;
        let h = build_tfqim(2, 2, true).unwrap();
        let odd = step_circuit(&h, &h.coefficients_at_step(1), dt, 1).unwrap();
        let zz_angles: Vec<f64> = odd.circuit.gates()[..3].iter().filter_map(|g| g.angle).collect();
        assert_eq!(zz_angles, vec![0.0]);
        let even = step_circuit(&h, &h.coefficients_at_step(2), dt, 1).unwrap();
        assert_eq!(even.circuit.gates()[1].angle, Some(-dt));

        let h = build_heisenberg(2, 1.0, 2, true).unwrap();
        let last_rx = |k: u64| {
            let c = step_circuit(&h, &h.coefficients_at_step(k), dt, 1).unwrap();
            c.circuit.gates().last().unwrap().angle.unwrap()
        };
        // X-term coefficient is +1 on odd steps, -1 on even ones; angle is -a·dt
        assert!((last_rx(1) + dt).abs() < 1e-15);
        assert!((last_rx(2) - dt).abs() < 1e-15);
    }

    #[test]
    fn td_report_tracks_numeric() {
        let h = build_heisenberg(2, 1.0, 3, true).unwrap();
        let plan = TrotterPlan::new(1.0, 100, 1).unwrap();
        let rep = error_report(&h, &plan, &strided_steps(100, 10)).unwrap();
        assert!(rep.max_column_gap() <= 1e-9);
    }

    #[test]
    fn constant_depth_cases() {
        let h = build_blkdg(3).unwrap();
        let c = constant_depth_circuit(&h, 0.7).unwrap();
        assert_eq!(c.circuit.gates(), &[crate::circuit::Gate::rx(3, -0.7)]);
        assert!((c.phase + 0.7).abs() < 1e-15);

        assert!(matches!(
            constant_depth_circuit(&build_tfqim(3, 1, false).unwrap(), 1.0),
            Err(Error::NonCommuting(..))
        ));

        let h = build_ising(4, 1.0).unwrap();
        let fast = constant_depth_circuit(&h, 1.0).unwrap().unitary().unwrap();
        for r in [1, 7, 50] {
            let slow = trotter_circuit(&h, &TrotterPlan::new(1.0, r, 1).unwrap()).unwrap().unitary().unwrap();
            assert!(frobenius_distance(&fast, &slow).unwrap() < 1e-10);
        }
        let mut plan = TrotterPlan::new(1.0, 30, 1).unwrap();
        plan.constant_depth = true;
        let rep = error_report(&h, &plan, &strided_steps(30, 5)).unwrap();
        assert!(rep.max_circuit_error() < 1e-10);
    }
}
