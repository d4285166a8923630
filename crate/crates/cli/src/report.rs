//! Reports (`"schema": "exactcat-report/1"`) and their text rendering.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

pub const REPORT_SCHEMA: &str = "exactcat-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    SampledPass,
    RefusedBound,
    Fail,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::SampledPass => "sampled-pass",
            Verdict::RefusedBound => "refused-bound",
            Verdict::Fail => "fail",
        }
    }

    /// 0 = all pass, 1 = a verification failed, 2 = refused.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::SampledPass => 0,
            Verdict::Fail => 1,
            Verdict::RefusedBound => 2,
        }
    }
}

/// One checked statement with its facts and, on failure, a counterexample.
#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub id: String,
    pub verdict: Verdict,
    pub exhaustive: bool,
    pub facts: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

impl Section {
    pub fn new(id: impl Into<String>) -> Self {
        Section {
            id: id.into(),
            verdict: Verdict::Pass,
            exhaustive: true,
            facts: Map::new(),
            witness: None,
            notes: Vec::new(),
            mismatches: Vec::new(),
        }
    }

    pub fn fact(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.facts.insert(key.to_string(), v.into());
        self
    }

    pub fn note(&mut self, n: impl Into<String>) -> &mut Self {
        self.notes.push(n.into());
        self
    }

    pub fn refused(id: impl Into<String>, reason: String) -> Self {
        let mut s = Section::new(id);
        s.verdict = Verdict::RefusedBound;
        s.notes.push(reason);
        s
    }

    /// Sets the verdict from the section's own checks: `ok` when no
    /// expectations are given, otherwise agreement with every expectation.
    pub fn settle(&mut self, ok: bool, expect: &Map<String, Value>, witness: Option<Value>) {
        for (k, want) in expect {
            match self.facts.get(k) {
                Some(got) if got == want => {}
                Some(got) => self.mismatches.push(format!("{k}: expected {want}, got {got}")),
                None => self.mismatches.push(format!("{k}: expected {want}, not reported")),
            }
        }
        let ok = if expect.is_empty() { ok } else { self.mismatches.is_empty() };
        self.verdict = if !ok {
            Verdict::Fail
        } else if self.exhaustive {
            Verdict::Pass
        } else {
            Verdict::SampledPass
        };
        if !ok {
            self.witness = witness.or_else(|| Some(serde_json::json!({"mismatches": self.mismatches})));
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub verdict: Verdict,
    pub exit_code: i32,
    pub notes: Vec<String>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str, sections: Vec<Section>, notes: Vec<String>) -> Self {
        let verdict = sections.iter().map(|s| s.verdict).max().unwrap_or(Verdict::Pass);
        Report {
            schema: REPORT_SCHEMA,
            command: command.to_string(),
            verdict,
            exit_code: verdict.exit_code(),
            notes,
            sections,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} report ({})", self.command, self.schema);
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        for s in &self.sections {
            let _ = writeln!(out, "[{}] {}", s.verdict.label(), s.id);
            for (k, v) in &s.facts {
                match v {
                    Value::Array(_) | Value::Object(_) => {
                        let _ = writeln!(out, "    {k}: {}", render_compound(v));
                    }
                    _ => {
                        let _ = writeln!(out, "    {k}: {v}");
                    }
                }
            }
            for m in &s.mismatches {
                let _ = writeln!(out, "    MISMATCH {m}");
            }
            for n in &s.notes {
                let _ = writeln!(out, "    note: {n}");
            }
            if let Some(w) = &s.witness {
                let _ = writeln!(out, "    witness: {w}");
            }
        }
        let _ = writeln!(out, "verdict: {} (exit {})", self.verdict.label(), self.exit_code);
        out
    }
}

fn render_compound(v: &Value) -> String {
    let s = v.to_string();
    if s.len() <= 120 {
        s
    } else {
        format!("{}... ({} bytes)", &s[..117], s.len())
    }
}
