//! The JSON report emitted by every subcommand.

use std::collections::BTreeMap;

use monoideal_core::{Monomial, MonomialIdeal, Ring};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct InputIdeal {
    pub name: String,
    /// Canonical minimal generators.
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ring: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideals: Vec<InputIdeal>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, Value>,
}

/// Run-dependent measurements, excluded from reproducibility checks.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub powers_computed: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub powers_from_cache: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Inputs,
    pub results: Value,
    pub timings: Timings,
    pub versions: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: &str, inputs: Inputs, results: Value, timings: Timings) -> Self {
        let versions = BTreeMap::from([
            ("monoideal".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("monoideal-core".to_string(), monoideal_core::VERSION.to_string()),
        ]);
        Report { command: command.to_string(), inputs, results, timings, versions }
    }

    /// The report with run-dependent fields cleared.
    pub fn canonical(&self) -> Report {
        Report { timings: Timings::default(), ..self.clone() }
    }
}

pub fn monomial(ring: &Ring, m: &Monomial) -> String {
    ring.display(m).to_string()
}

pub fn generators(ideal: &MonomialIdeal) -> Vec<String> {
    ideal.generators().iter().map(|g| monomial(ideal.ring(), g)).collect()
}

pub fn input_ideal(name: &str, ideal: &MonomialIdeal) -> InputIdeal {
    InputIdeal { name: name.to_string(), generators: generators(ideal) }
}
