//! Machine-readable run reports with re-checkable equivalence witnesses.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::endo::REndomorphism;
use crate::error::{Error, Result};
use crate::io::{self, ElementJson, EndoJson, QuiverJson};
use crate::path_algebra::{Potential, TermDifference};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Error => 2,
        }
    }

    pub fn from_bool(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// A claim that `map` carries `source` to `target` up to rotation of cycles
/// and truncation at the map's degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub quiver: QuiverJson,
    pub map: EndoJson,
    pub source: ElementJson,
    pub target: ElementJson,
}

impl EquivalenceWitness {
    pub fn new(map: &REndomorphism, source: &Potential, target: &Potential) -> EquivalenceWitness {
        EquivalenceWitness {
            quiver: io::quiver_to_json(map.quiver()),
            map: io::endo_to_json(map),
            source: io::potential_to_json(source),
            target: io::potential_to_json(target),
        }
    }

    /// Rebuilds everything from the JSON and re-applies the map. Returns the
    /// first disagreeing term, or `None` when the claim holds.
    pub fn recheck(&self) -> Result<Option<TermDifference>> {
        let q = io::quiver_from_json(&self.quiver)?;
        let map = io::endo_from_json(&q, &self.map)?;
        if !map.is_automorphism() {
            return Err(Error::Invariant("the witness map is not invertible".into()));
        }
        let d = map.degree();
        let source = io::potential_from_json(&q, &self.source)?.with_degree(d);
        let target = io::potential_from_json(&q, &self.target)?.with_degree(d);
        Ok(map.apply_potential(&source)?.first_difference(&target))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 of the command line and the contents of every input file.
    pub inputs_digest: String,
    pub outcome: Outcome,
    #[serde(default)]
    pub result: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<EquivalenceWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<TermDifference>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Seconds spent in each phase.
    #[serde(default)]
    pub timings: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: Vec<String>, inputs_digest: String) -> RunReport {
        RunReport {
            command,
            inputs_digest,
            outcome: Outcome::Pass,
            result: serde_json::Value::Null,
            witness: None,
            first_difference: None,
            error: None,
            timings: BTreeMap::new(),
        }
    }

    pub fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.timings.entry(phase.to_string()).or_insert(0.0) += start.elapsed().as_secs_f64();
        out
    }

    /// Re-verifies the witness, setting the outcome and first difference.
    pub fn check_witness(&mut self) -> Result<()> {
        let Some(w) = &self.witness else {
            return Err(Error::InvalidArgument("the report carries no witness".into()));
        };
        let start = Instant::now();
        let diff = w.recheck()?;
        self.timings.insert("recheck".into(), start.elapsed().as_secs_f64());
        if diff.is_some() && self.outcome == Outcome::Pass {
            self.outcome = Outcome::Fail;
        }
        if self.first_difference.is_none() {
            self.first_difference = diff;
        }
        Ok(())
    }
}

pub fn digest<'a>(parts: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}
