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

//! End-to-end runs of the `starpauli` binary.

use std::path::Path;
use std::process::{Command, Output};

use starpauli::circuit::{Circuit, Gate};

fn starpauli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starpauli")).args(args).env_remove("STARPAULI_SEED").output().expect("binary runs")
}

fn rows(path: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(path).unwrap().records().map(|r| r.unwrap()).collect()
}

fn column(path: &Path, name: &str) -> Vec<f64> {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let idx = rdr.headers().unwrap().iter().position(|h| h == name).expect("column present");
    rdr.records().map(|r| r.unwrap()[idx].parse().unwrap()).collect()
}

#[test]
fn synth_writes_circuit_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let res = starpauli(&["synth", "--pauli", "IIX", "--theta", "0.5", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    let c = Circuit::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c.gates(), &[Gate::rx(3, 0.5)]);
    assert!(String::from_utf8_lossy(&res.stdout).contains("bound check: PASS"));
    assert!(dir.path().join("c.json.manifest.json").exists());
}

#[test]
fn synth_contains_four_qubit_pattern() {
    let res = starpauli(&["synth", "--pauli", "XXII", "--theta", "0.3"]);
    assert_eq!(res.status.code(), Some(0));
    let c = Circuit::from_json(String::from_utf8(res.stdout).unwrap().trim()).unwrap();
    let g = c.gates();
    assert_eq!(&g[..3], &[Gate::cnot(1, 4), Gate::cnot(4, 2), Gate::cnot(4, 1)]);
    assert_eq!(g.last(), Some(&Gate::cnot(1, 4)));
}

#[test]
fn synth_negative_angle_and_sign() {
    let res = starpauli(&["synth", "--pauli", "IX", "--theta", "-0.25", "--sign", "-"]);
    assert_eq!(res.status.code(), Some(0));
    let c = Circuit::from_json(String::from_utf8(res.stdout).unwrap().trim()).unwrap();
    assert_eq!(c.gates(), &[Gate::rx(2, 0.25)]);
}

#[test]
fn usage_errors() {
    assert_eq!(starpauli(&["synth", "--pauli", "QQ", "--theta", "0.1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = out.to_str().unwrap();
    assert_eq!(
        starpauli(&["trotter-scan", "--model", "ising", "--n", "2", "--order", "3", "--out", o]).status.code(),
        Some(2)
    );
    assert_eq!(
        starpauli(&["noisy-scan", "--model", "tfqim", "--n", "2", "--input-state", "zero", "--out", o]).status.code(),
        Some(2)
    );
    assert_eq!(starpauli(&["trotter-scan", "--model", "potts", "--n", "2", "--out", o]).status.code(), Some(2));
}

#[test]
fn infeasible_sizes_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = out.to_str().unwrap();
    assert_eq!(starpauli(&["trotter-scan", "--model", "ising", "--n", "12", "--out", o]).status.code(), Some(1));
    assert_eq!(starpauli(&["noisy-scan", "--model", "ising", "--n", "9", "--out", o]).status.code(), Some(1));
}

#[test]
fn ising_scan_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ising.csv");
    let res = starpauli(&["trotter-scan", "--model", "ising", "--n", "2,3,4,5,6", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let errs = column(&out, "err_circuit");
    assert_eq!(errs.len(), 5 * 21);
    assert!(errs.iter().all(|&e| e <= 1e-10));
    let header = csv::Reader::from_path(&out).unwrap().headers().unwrap().clone();
    assert_eq!(
        header.iter().collect::<Vec<_>>(),
        ["t", "qubits", "order", "r", "err_circuit", "err_numeric", "model", "seed"]
    );
}

#[test]
fn heisenberg_scan_columns_agree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("heis.csv");
    let res = starpauli(&[
        "trotter-scan",
        "--model",
        "heisenberg",
        "--n",
        "2",
        "--seed",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0));
    let circuit = column(&out, "err_circuit");
    let numeric = column(&out, "err_numeric");
    assert!(circuit.iter().zip(&numeric).all(|(a, b)| (a - b).abs() <= 1e-9));
    assert!(numeric.last().unwrap() > &1e-6);
}

#[test]
fn scans_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let res = starpauli(&[
            "noisy-scan",
            "--model",
            "tfqim",
            "--n",
            "2",
            "--steps",
            "50",
            "--seed",
            "9",
            "--gate-noise",
            "low,medium",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(res.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r = rows(&a);
    assert_eq!(r.len(), 2 * 2 * 26);
    assert_eq!(&r[0][0], "0.0");
    assert_eq!(&r[0][7], "1.0");
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "noisy-scan");
    assert_eq!(manifest["seed"], 9);
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let res = Command::new(env!("CARGO_BIN_EXE_starpauli"))
        .args(["trotter-scan", "--model", "tfqim", "--n", "2", "--steps", "10", "--out", out.to_str().unwrap()])
        .env("STARPAULI_SEED", "31")
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(0));
    assert!(rows(&out).iter().all(|r| &r[7] == "31"));
}

#[test]
fn perm_dump() {
    let res = starpauli(&["perm", "--n", "3", "--x", "1", "--parity", "odd"]);
    assert_eq!(res.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(v["transpositions"], serde_json::json!([{"i": 2, "j": 3}, {"i": 6, "j": 7}]));
    let res = starpauli(&["perm", "--pauli", "XXII"]);
    let v: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(v["spec"], serde_json::json!({"n": 4, "x": 6, "parity": "odd"}));
    assert_eq!(starpauli(&["perm", "--n", "3", "--x", "9"]).status.code(), Some(2));
}
