//! Machine-readable results of verification runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub pass: bool,
    /// Set when a bounded search stopped before exhausting its space.
    pub truncated: bool,
    pub counts: BTreeMap<String, u64>,
    /// Concrete failing objects, pairs, vectors or step indices.
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
    pub details: Value,
    pub elapsed_micros: u64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            pass: true,
            truncated: false,
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            details: Value::Null,
            elapsed_micros: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn count(&mut self, key: &str, value: usize) {
        self.counts.insert(key.to_string(), value as u64);
    }

    /// Records a failure; the report no longer passes.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.pass = false;
        self.witnesses.push(witness.into());
    }

    pub fn fail_all(&mut self, witnesses: impl IntoIterator<Item = String>) {
        for w in witnesses {
            self.fail(w);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn set_details<T: Serialize>(&mut self, details: &T) -> Result<()> {
        self.details = serde_json::to_value(details).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Flat `key<TAB>value` rendering; details are emitted as compact JSON.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command\t{}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "param.{k}\t{v}");
        }
        let _ = writeln!(out, "pass\t{}", self.pass);
        let _ = writeln!(out, "truncated\t{}", self.truncated);
        for (k, v) in &self.counts {
            let _ = writeln!(out, "count.{k}\t{v}");
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "witness\t{w}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note\t{n}");
        }
        if !self.details.is_null() {
            let _ = writeln!(out, "details\t{}", self.details);
        }
        let _ = writeln!(out, "elapsed_micros\t{}", self.elapsed_micros);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let mut r = Report::new("verify theorem1").param("type", "A3");
        r.count("tilting_objects", 14);
        r.fail("T = [P1, P2]: collision");
        r.set_details(&serde_json::json!({"z": [1, 2], "a": {"q": "x1^-1"}}))
            .unwrap();
        r.elapsed_micros = 123;
        let first = r.to_json();
        let back = Report::from_json(&first).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), first);
        assert!(!back.pass);
        assert!(r.to_tsv().contains("count.tilting_objects\t14"));
    }
}
