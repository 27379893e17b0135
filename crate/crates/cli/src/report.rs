//! Verification reports and their three encodings.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

/// An expected value together with the formula it comes from.
pub fn expected(source: &str, value: Value) -> Value {
    json!({ "source": source, "value": value })
}

/// One comparison of a computed quantity against its expectation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub params: Value,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
}

impl Report {
    /// Sorts the checks by name so that concurrent evaluation order never
    /// shows up in the output.
    pub fn new(command: impl Into<String>, config: &RunConfig, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            command: command.into(),
            config: serde_json::to_value(config).expect("config serializes"),
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => self.to_csv(),
            Format::Table => Ok(self.to_table()),
        }
    }

    fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "params", "expected", "source", "computed", "pass", "ms"])?;
        for c in &self.checks {
            w.write_record([
                c.name.clone(),
                c.params.to_string(),
                short(&c.expected["value"]),
                short(&c.expected["source"]),
                short(&c.computed),
                c.pass.to_string(),
                c.ms.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn to_table(&self) -> String {
        let header = ["name", "expected", "computed", "pass", "ms"].map(String::from);
        let rows: Vec<[String; 5]> = self
            .checks
            .iter()
            .map(|c| {
                [
                    c.name.clone(),
                    short(&c.expected["value"]),
                    short(&c.computed),
                    if c.pass { "ok".into() } else { "FAIL".into() },
                    c.ms.to_string(),
                ]
            })
            .collect();
        let mut widths = [0; 5];
        for row in std::iter::once(&header).chain(&rows) {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |row: &[String; 5]| {
            let cells: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            cells.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = format!("{}  [{}]\n", self.command, self.config["backend"].as_str().unwrap_or(""));
        out.push_str(&line(&header));
        for row in &rows {
            out.push_str(&line(row));
        }
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), self.failures()));
        out
    }
}

/// Compact rendering for table and csv cells: strings bare, a
/// `{dim, decomposition}` pair as `V12 + V8 (22)`, everything else as JSON.
fn short(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) if m.len() == 2 && m.contains_key("dim") && m.contains_key("decomposition") => {
            format!("{} ({})", short(&m["decomposition"]), m["dim"])
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(name: &str, pass: bool) -> Check {
        Check {
            name: name.into(),
            params: json!({ "l": 3 }),
            expected: expected("test", json!({ "dim": 22, "decomposition": "V12 + V8" })),
            computed: json!({ "dim": 22, "decomposition": "V12 + V8" }),
            pass,
            ms: 0,
        }
    }

    #[test]
    fn checks_are_sorted_and_counted() {
        let r = Report::new("x", &RunConfig::default(), vec![check("b", true), check("a", false)]);
        assert_eq!(r.checks[0].name, "a");
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.failures(), 1);
    }

    #[test]
    fn encodings() {
        let r = Report::new("decompose", &RunConfig::default(), vec![check("a", true)]);
        let json: Value = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(json["config"]["backend"], "specialize(q0=7/5)");
        assert_eq!(json["checks"][0]["expected"]["source"], "test");
        let csv = r.render(Format::Csv).unwrap();
        assert!(csv.starts_with("name,params,expected,source,computed,pass,ms\n"));
        assert!(csv.contains("V12 + V8 (22)"));
        let table = r.render(Format::Table).unwrap();
        assert!(table.ends_with("1 checks, 0 failed\n"));
    }
}
