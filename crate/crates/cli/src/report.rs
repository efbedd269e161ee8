//! Line-oriented `key=value` reports.
//!
//! A report is a header block, one `[check]` block per record and a
//! `[summary]` block. Without timings the text depends only on the
//! configuration and the seed.

use std::fmt::{Display, Write};
use std::time::Duration;

#[derive(Clone, Debug)]
pub struct Record {
    pub name: String,
    /// Short statement of what is being checked.
    pub anchor: String,
    pub passed: bool,
    pub fields: Vec<(String, String)>,
    pub elapsed: Option<Duration>,
}

impl Record {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Record {
            name: name.into(),
            anchor: anchor.into(),
            passed: true,
            fields: Vec::new(),
            elapsed: None,
        }
    }

    pub fn field(mut self, key: &str, value: impl Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    /// Conjoins `ok` into the verdict.
    pub fn require(mut self, ok: bool) -> Self {
        self.passed &= ok;
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub header: Vec<(String, String)>,
    pub records: Vec<Record>,
    pub error: Option<String>,
}

impl Report {
    pub fn header(&mut self, key: &str, value: impl Display) {
        self.header.push((key.to_string(), value.to_string()));
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.records.iter().all(|r| r.passed)
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn render(&self, timing: bool) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            writeln!(out, "{k}={v}").unwrap();
        }
        for r in &self.records {
            out.push_str("\n[check]\n");
            writeln!(out, "name={}", r.name).unwrap();
            writeln!(out, "anchor={}", r.anchor).unwrap();
            writeln!(out, "status={}", if r.passed { "pass" } else { "fail" }).unwrap();
            for (k, v) in &r.fields {
                writeln!(out, "{k}={v}").unwrap();
            }
            if let (true, Some(d)) = (timing, r.elapsed) {
                writeln!(out, "elapsed_ms={}", d.as_millis()).unwrap();
            }
        }
        let failed = self.records.iter().filter(|r| !r.passed).count();
        out.push_str("\n[summary]\n");
        writeln!(out, "checks={}", self.records.len()).unwrap();
        writeln!(out, "passed={}", self.records.len() - failed).unwrap();
        writeln!(out, "failed={failed}").unwrap();
        if let Some(e) = &self.error {
            writeln!(out, "error={e}").unwrap();
        }
        writeln!(out, "verdict={}", if self.passed() { "pass" } else { "fail" }).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_layout() {
        let mut r = Report::default();
        r.header("command", "verify");
        r.records.push(Record::new("a", "x = x").field("count", 3));
        r.records.push(Record::new("b", "y").require(false));
        let text = r.render(false);
        assert_eq!(
            text,
            "command=verify\n\n[check]\nname=a\nanchor=x = x\nstatus=pass\ncount=3\n\n\
             [check]\nname=b\nanchor=y\nstatus=fail\n\n[summary]\nchecks=2\npassed=1\nfailed=1\nverdict=fail\n"
        );
        assert!(!r.passed());
    }

    #[test]
    fn timing_is_opt_in() {
        let mut r = Report::default();
        let mut rec = Record::new("a", "b");
        rec.elapsed = Some(Duration::from_millis(12));
        r.records.push(rec);
        assert!(!r.render(false).contains("elapsed_ms"));
        assert!(r.render(true).contains("elapsed_ms=12"));
    }
}
