//! Structured reports and their table rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::operadic::IdentityTally;

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub theorem: String,
    pub passed: bool,
    /// Informational checks are reported but do not decide the status.
    pub required: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DimensionTable {
    pub name: String,
    pub degrees: Vec<usize>,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Tally {
    pub name: String,
    pub theorem: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TaskReport {
    pub id: String,
    pub target: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub tables: Vec<DimensionTable>,
    pub tallies: Vec<Tally>,
    pub convention_flags: Vec<String>,
    pub notes: Vec<String>,
}

impl TaskReport {
    pub fn new(id: &str, target: &str) -> TaskReport {
        TaskReport {
            id: id.to_string(),
            target: target.to_string(),
            status: Status::Pass,
            checks: Vec::new(),
            tables: Vec::new(),
            tallies: Vec::new(),
            convention_flags: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, theorem: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            theorem: theorem.to_string(),
            passed,
            required: true,
            detail: detail.into(),
        });
    }

    pub fn info(&mut self, name: &str, theorem: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            theorem: theorem.to_string(),
            passed,
            required: false,
            detail: detail.into(),
        });
    }

    pub fn table(&mut self, name: &str, dims: &[usize]) {
        self.tables.push(DimensionTable {
            name: name.to_string(),
            degrees: (0..dims.len()).collect(),
            dims: dims.to_vec(),
        });
    }

    /// Records the tally and a required check that it has no failures.
    pub fn tally(&mut self, t: &IdentityTally, theorem: &str) {
        self.tallies.push(Tally {
            name: t.name.clone(),
            theorem: theorem.to_string(),
            passed: t.passed,
            failed: t.failed,
            skipped: t.skipped,
        });
        self.check(&t.name, theorem, t.ok(), format!("{} passed, {} failed", t.passed, t.failed));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn finish(mut self) -> TaskReport {
        self.status = Status::from_bool(self.checks.iter().filter(|c| c.required).all(|c| c.passed));
        self
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub document: String,
    pub field: String,
    pub seed: u64,
    pub rng: String,
    pub max_space: usize,
    pub status: Status,
    pub tasks: Vec<TaskReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {}  field {}  seed {}  status {}",
            self.command,
            self.document,
            self.field,
            self.seed,
            self.status.label()
        );
        for t in &self.tasks {
            let _ = writeln!(out, "\n[{}] {}  {}", t.status.label(), t.id, t.target);
            for tab in &t.tables {
                let width = tab.name.chars().count().max(6);
                let degs: Vec<String> = tab.degrees.iter().map(|d| format!("{d:>5}")).collect();
                let dims: Vec<String> = tab.dims.iter().map(|d| format!("{d:>5}")).collect();
                let _ = writeln!(out, "  {:<width$} |{}", "degree", degs.join(""));
                let _ = writeln!(out, "  {:<width$} |{}", tab.name, dims.join(""));
            }
            for c in &t.checks {
                let mark = match (c.passed, c.required) {
                    (true, _) => "ok  ",
                    (false, true) => "FAIL",
                    (false, false) => "info",
                };
                let _ = writeln!(out, "  {mark} {:<44} {:<28} {}", c.name, c.theorem, c.detail);
            }
            for f in &t.convention_flags {
                let _ = writeln!(out, "  flag {f}");
            }
            for n in &t.notes {
                let _ = writeln!(out, "  note {n}");
            }
        }
        out
    }
}
