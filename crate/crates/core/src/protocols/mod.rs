//! Named circuits and identities, each checked against the dense oracle.

mod counterexample;
mod cx;
mod fourier;
mod magic;

pub use counterexample::{
    cx_insufficiency_certificate, mod2_invariant, subgroup_generators, target_map, BFS_DEFAULT_CAP,
};
pub use cx::{build_cx_protocol, check_cx_protocol};
pub use fourier::{build_split_fourier, check_split_fourier, check_triple_identity, gauss_sum};
pub use magic::{build_magic_injection, check_magic_injection, cubic_phase_table, t_gate_table};

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::Serialize;

use crate::group::Group;

/// Outcome of a protocol check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProtocolReport {
    pub protocol: String,
    pub group: String,
    pub branches: usize,
    pub passed: usize,
    pub failures: Vec<String>,
    /// Distinct global phases seen, as `[re, im]`.
    pub phases: Vec<[f64; 2]>,
    pub details: BTreeMap<String, String>,
}

impl ProtocolReport {
    pub fn new(protocol: &str, group: &Group) -> Self {
        ProtocolReport {
            protocol: protocol.into(),
            group: group.to_string(),
            branches: 0,
            passed: 0,
            failures: Vec::new(),
            phases: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn success(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.branches += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < 32 {
            self.failures.push(what());
        } else if self.failures.len() == 32 {
            self.failures.push("further failures omitted".into());
        }
    }

    pub(crate) fn note_phase(&mut self, z: Complex<f64>) {
        if !self.phases.iter().any(|p| (Complex::new(p[0], p[1]) - z).norm() < 1e-9) {
            self.phases.push([z.re, z.im]);
        }
    }

    pub(crate) fn detail(&mut self, key: &str, value: impl ToString) {
        self.details.insert(key.into(), value.to_string());
    }
}

/// Tracks the global phase per measurement record, which must not depend on the input.
#[derive(Default)]
pub(crate) struct PhaseLedger(BTreeMap<crate::sim::Record, Complex<f64>>);

impl PhaseLedger {
    /// False if this record was seen before with a different phase.
    pub(crate) fn consistent(&mut self, record: &crate::sim::Record, z: Complex<f64>) -> bool {
        match self.0.get(record) {
            Some(prev) => (prev - z).norm() < 1e-9,
            None => {
                self.0.insert(record.clone(), z);
                true
            }
        }
    }
}
