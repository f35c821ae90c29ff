use std::fmt::{Display, Write as _};

use serde::Serialize;
use serde_json::Value;

use crate::groups::{GroupSpec, ReflectionGroup};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub group: String,
    pub suite: &'static str,
    pub check_id: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupCard {
    pub order: usize,
    pub degrees: Vec<u32>,
    pub coxeter_number: u32,
    pub reflections: usize,
    pub conductor: u32,
}

impl GroupCard {
    pub fn of(w: &ReflectionGroup) -> Self {
        GroupCard {
            order: w.order(),
            degrees: w.degrees().to_vec(),
            coxeter_number: w.coxeter_number(),
            reflections: w.reflections().len(),
            conductor: w.conductor(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSection {
    pub suite: &'static str,
    pub checks: Vec<Check>,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSection {
    pub group: GroupSpec,
    pub card: Option<GroupCard>,
    pub suites: Vec<SuiteSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suites: Vec<&'static str>,
    pub n_max: usize,
    pub groups: Vec<GroupSection>,
    pub pass: bool,
}

impl Report {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.groups
            .iter()
            .flat_map(|g| g.suites.iter().flat_map(|s| s.checks.iter()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for c in self.checks() {
            w.serialize(c).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            match &g.card {
                Some(c) => writeln!(
                    out,
                    "== {} |W| = {}, degrees {:?}, h = {}, {} reflections",
                    g.group, c.order, c.degrees, c.coxeter_number, c.reflections
                ),
                None => writeln!(out, "== {}", g.group),
            }
            .expect("write to string");
            for c in g.suites.iter().flat_map(|s| &s.checks) {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{tag} {}/{}: expected {}, computed {}",
                    c.suite, c.check_id, c.expected, c.computed
                )
                .expect("write to string");
            }
            if let Some(ms) = g.elapsed_ms {
                writeln!(out, "   ({ms} ms)").expect("write to string");
            }
        }
        let total = self.checks().count();
        let failed = self.checks().filter(|c| !c.pass).count();
        writeln!(
            out,
            "overall: {} ({} checks, {} failed)",
            if self.pass { "PASS" } else { "FAIL" },
            total,
            failed
        )
        .expect("write to string");
        out
    }
}

/// Collects the checks of one suite.
pub struct SuiteBuilder {
    group: String,
    suite: &'static str,
    checks: Vec<Check>,
    details: serde_json::Map<String, Value>,
}

impl SuiteBuilder {
    pub fn new(group: GroupSpec, suite: &'static str) -> Self {
        SuiteBuilder {
            group: group.to_string(),
            suite,
            checks: Vec::new(),
            details: serde_json::Map::new(),
        }
    }

    pub fn eq<T: Display + PartialEq>(&mut self, id: impl Into<String>, expected: T, computed: T) {
        let pass = expected == computed;
        self.push(id, expected.to_string(), computed.to_string(), pass);
    }

    /// A check whose expected outcome is "ok".
    pub fn ok(&mut self, id: impl Into<String>, result: Result<(), String>) {
        match result {
            Ok(()) => self.push(id, "ok".into(), "ok".into(), true),
            Err(e) => self.push(id, "ok".into(), e, false),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, expected: String, computed: String, pass: bool) {
        self.checks.push(Check {
            group: self.group.clone(),
            suite: self.suite,
            check_id: id.into(),
            expected,
            computed,
            pass,
        });
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details
            .insert(key.to_string(), serde_json::to_value(value).expect("details serialise"));
    }

    pub fn finish(self) -> SuiteSection {
        SuiteSection {
            suite: self.suite,
            checks: self.checks,
            details: Value::Object(self.details),
        }
    }
}
