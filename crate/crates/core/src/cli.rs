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

//! The `starpauli` command-line front-end.
//!
//! Every file a command writes is accompanied by `<file>.manifest.json` recording the inputs
//! that produced it. Exit codes: 0 on success, 1 when a run is infeasible, 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::hamiltonian::{ModelKind, ModelSpec};
use crate::noise::{fidelity_trace, CnotNoise, InputState, NoiseConfig, NoisyRow, ProbSpec, MAX_DENSITY_QUBITS};
use crate::pauli::PauliString;
use crate::perm::{conjugating_spec, perm_circuit, transposition_product, Parity, PermCircuitSpec, Transposition};
use crate::synth::{gate_bounds, synthesize, Sign};
use crate::trotter::{error_report, step_circuits, strided_steps, TrotterPlan, TrotterRow};

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "STARPAULI_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "starpauli",
    version,
    about = "Star-connectivity circuits for Pauli exponentials and Trotter evolution"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile exp(±iθσ) and check its gate counts.
    Synth(SynthArgs),
    /// Circuit and numeric Trotter errors against exact evolution.
    TrotterScan(TrotterScanArgs),
    /// Fidelity of noisy Trotter circuits.
    NoisyScan(NoisyScanArgs),
    /// Dump a CNOT permutation circuit and its transpositions.
    Perm(PermArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    #[value(name = "+", alias = "plus")]
    Plus,
    #[value(name = "-", alias = "minus")]
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub pauli: String,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, value_enum, default_value = "+")]
    pub sign: SignArg,
    /// Circuit JSON destination; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub model: ModelKind,
    /// Qubit counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long = "J", default_value_t = 1.0, allow_hyphen_values = true)]
    pub j: f64,
    #[arg(long)]
    pub time_dependent: bool,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
}

impl ModelArgs {
    fn spec(&self, n: usize) -> ModelSpec {
        ModelSpec { model: self.model, n, j: self.j, seed: self.seed, time_dependent: self.time_dependent }
    }
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long = "T", default_value_t = 1.0)]
    pub total_time: f64,
    /// Trotter steps r.
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, default_value_t = 1)]
    pub order: usize,
    /// Sample every this many steps (default r/20).
    #[arg(long)]
    pub stride: Option<usize>,
}

impl PlanArgs {
    fn plan(&self, constant_depth: bool) -> Result<TrotterPlan> {
        let mut plan = TrotterPlan::new(self.total_time, self.steps, self.order)?;
        plan.constant_depth = constant_depth;
        Ok(plan)
    }

    fn samples(&self) -> Vec<usize> {
        strided_steps(self.steps, self.stride.unwrap_or((self.steps / 20).max(1)))
    }
}

#[derive(Debug, Args)]
pub struct TrotterScanArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub plan: PlanArgs,
    /// Use one pass with accumulated angles (commuting Hamiltonians only).
    #[arg(long)]
    pub constant_depth: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CnotNoiseArg {
    Both,
    Target,
}

#[derive(Debug, Args)]
pub struct NoisyScanArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub plan: PlanArgs,
    /// Gate-error strengths: low, medium, high, off, a value, or lo:hi.
    #[arg(long, value_delimiter = ',', default_value = "low")]
    pub gate_noise: Vec<ProbSpec>,
    /// Idle-error strengths, same syntax as --gate-noise.
    #[arg(long, value_delimiter = ',', default_value = "low")]
    pub idle_noise: Vec<ProbSpec>,
    /// Input states: ones, plus.
    #[arg(long, value_delimiter = ',', default_value = "ones,plus")]
    pub input_state: Vec<InputState>,
    #[arg(long, value_enum, default_value = "both")]
    pub cnot_noise: CnotNoiseArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Debug, Args)]
pub struct PermArgs {
    #[arg(long, conflicts_with = "pauli", required_unless_present = "pauli")]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub x: Option<u64>,
    #[arg(long, value_enum, requires = "n")]
    pub parity: Option<ParityArg>,
    /// IX-type string whose conjugating permutation to dump.
    #[arg(long)]
    pub pauli: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Everything needed to reproduce one output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub models: Vec<ModelSpec>,
    pub plan: Option<TrotterPlan>,
    pub noise: Vec<NoiseConfig>,
    pub input_states: Vec<InputState>,
    pub seed: Option<u64>,
    pub output: PathBuf,
    pub tool_version: String,
}

impl RunManifest {
    fn new(command: &str, output: &Path) -> Self {
        Self {
            command: command.to_string(),
            models: Vec::new(),
            plan: None,
            noise: Vec::new(),
            input_states: Vec::new(),
            seed: None,
            output: output.to_path_buf(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_os_string();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    fn write(&self) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        fs::write(Self::path_for(&self.output), text + "\n")?;
        Ok(())
    }
}

/// Exit status for an error: 1 for infeasible or failed runs, 2 for bad input.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TooManyQubits { .. } | Error::Io(_) | Error::Serde(_) | Error::NotHermitian(_) => 1,
        _ => 2,
    }
}

/// Parses `args` and runs the chosen command, returning the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 2;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    match run(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs a parsed command; `Ok(1)` signals a completed run that failed its own check.
pub fn run(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Synth(a) => cmd_synth(a, out),
        Command::TrotterScan(a) => cmd_trotter_scan(a, out).map(|_| 0),
        Command::NoisyScan(a) => cmd_noisy_scan(a, out).map(|_| 0),
        Command::Perm(a) => cmd_perm(a, out).map(|_| 0),
    }
}

pub fn cmd_synth(a: &SynthArgs, out: &mut dyn Write) -> Result<i32> {
    let sigma = PauliString::parse(&a.pauli)?;
    let bounds = gate_bounds(&sigma)?;
    let circuit = synthesize(&sigma, a.theta, a.sign.into())?;
    let census = circuit.census();
    let violations = bounds.violations(&census);
    match &a.out {
        Some(path) => {
            fs::write(path, circuit.to_json() + "\n")?;
            RunManifest::new("synth", path).write()?;
        }
        None => writeln!(out, "{}", circuit.to_json())?,
    }
    let verdict = if violations.is_empty() { "PASS".to_string() } else { format!("FAIL ({})", violations.join(", ")) };
    let summary = format!("circuit: {circuit}\ncensus: {census}\nbounds: {bounds}\nbound check: {verdict}\n");
    // keep stdout pure JSON when the circuit goes there
    if a.out.is_some() {
        out.write_all(summary.as_bytes())?;
    } else {
        eprint!("{summary}");
    }
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn check_feasible(ns: &[usize], limit: usize, what: &'static str) -> Result<()> {
    match ns.iter().find(|&&n| n > limit) {
        Some(&n) => Err(Error::TooManyQubits { what, n, limit }),
        None => Ok(()),
    }
}

pub fn cmd_trotter_scan(a: &TrotterScanArgs, out: &mut dyn Write) -> Result<()> {
    let plan = a.plan.plan(a.constant_depth)?;
    check_feasible(&a.model.n, crate::circuit::MAX_DENSE_QUBITS, "dense error report")?;
    let samples = a.plan.samples();
    let mut writer = csv::Writer::from_path(&a.out)?;
    let mut manifest = RunManifest::new("trotter-scan", &a.out);
    for &n in &a.model.n {
        let spec = a.model.spec(n);
        let h = spec.build()?;
        let report = error_report(&h, &plan, &samples)?;
        for s in &report.samples {
            writer.serialize(TrotterRow {
                t: s.t,
                qubits: n,
                order: plan.order,
                r: plan.r,
                err_circuit: s.err_circuit,
                err_numeric: s.err_numeric,
                model: spec.model.to_string(),
                seed: spec.seed,
            })?;
        }
        writeln!(
            out,
            "{} n={n}: max err_circuit={:.3e} max |err_circuit-err_numeric|={:.3e}",
            spec.model,
            report.max_circuit_error(),
            report.max_column_gap()
        )?;
        manifest.models.push(spec);
    }
    writer.flush()?;
    manifest.plan = Some(plan);
    manifest.seed = Some(a.model.seed);
    manifest.write()
}

pub fn cmd_noisy_scan(a: &NoisyScanArgs, out: &mut dyn Write) -> Result<()> {
    let plan = a.plan.plan(false)?;
    check_feasible(&a.model.n, MAX_DENSITY_QUBITS, "density matrix")?;
    let samples = a.plan.samples();
    let cnot_noise = match a.cnot_noise {
        CnotNoiseArg::Both => CnotNoise::BothQubits,
        CnotNoiseArg::Target => CnotNoise::TargetOnly,
    };
    let mut writer = csv::Writer::from_path(&a.out)?;
    let mut manifest = RunManifest::new("noisy-scan", &a.out);
    for &n in &a.model.n {
        let spec = a.model.spec(n);
        let h = spec.build()?;
        let steps: Vec<Circuit> = step_circuits(&h, &plan)?.into_iter().map(|s| s.circuit).collect();
        for gate in &a.gate_noise {
            for idle in &a.idle_noise {
                let cfg = NoiseConfig { gate: *gate, idle: *idle, seed: a.model.seed, cnot_noise };
                let noise = cfg.resolve()?;
                for &input in &a.input_state {
                    let trace = fidelity_trace(&steps, plan.dt(), &input.state(n), &noise, &samples)?;
                    for s in &trace {
                        writer.serialize(NoisyRow {
                            t: s.t,
                            qubits: n,
                            input_state: input.to_string(),
                            gate_p_class: gate.label(),
                            idle_p_class: idle.label(),
                            gate_p: noise.gate_p,
                            idle_p: noise.idle_p,
                            fidelity: s.fidelity,
                            seed: cfg.seed,
                        })?;
                    }
                    let last = trace.last().map_or(f64::NAN, |s| s.fidelity);
                    writeln!(out, "{} n={n} {input} gate={gate} idle={idle}: F(T)={last:.6}", spec.model)?;
                }
                if !manifest.noise.contains(&cfg) {
                    manifest.noise.push(cfg);
                }
            }
        }
        manifest.models.push(spec);
    }
    writer.flush()?;
    manifest.plan = Some(plan);
    manifest.input_states = a.input_state.clone();
    manifest.seed = Some(a.model.seed);
    manifest.write()
}

#[derive(Debug, Serialize)]
struct PermDump {
    spec: PermCircuitSpec,
    circuit: Circuit,
    transpositions: Vec<Transposition>,
}

pub fn cmd_perm(a: &PermArgs, out: &mut dyn Write) -> Result<()> {
    let spec = match (&a.pauli, a.n) {
        (Some(word), _) => conjugating_spec(&PauliString::parse(word)?)?,
        (None, Some(n)) => {
            let parity = match a.parity.unwrap_or(ParityArg::Even) {
                ParityArg::Even => Parity::Even,
                ParityArg::Odd => Parity::Odd,
            };
            PermCircuitSpec::new(n, a.x.unwrap_or(0), parity)?
        }
        (None, None) => return Err(Error::InvalidPlan("perm needs --n or --pauli".into())),
    };
    let circuit = perm_circuit(&spec)?;
    let transpositions = if spec.x == 0 { Vec::new() } else { transposition_product(&spec)? };
    let dump = PermDump { spec, circuit, transpositions };
    let text = serde_json::to_string_pretty(&dump)?;
    match &a.out {
        Some(path) => {
            fs::write(path, text + "\n")?;
            RunManifest::new("perm", path).write()?;
            writeln!(out, "{}", dump.circuit)?;
        }
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}
