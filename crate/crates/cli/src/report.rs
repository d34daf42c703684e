//! Line-oriented reports.
//!
//! Every report starts with the schema version, the command, the input and
//! the bounds in force, followed by `key: value` lines in a fixed order.

use std::fmt::Display;

pub const SCHEMA: &str = "phk-report/1";

#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: &str, bounds: &[(&str, String)]) -> Report {
        let bounds: Vec<String> = bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut r = Report::default();
        r.kv("schema", SCHEMA);
        r.kv("command", command);
        r.kv("input", input);
        r.kv(
            "bounds",
            if bounds.is_empty() {
                "none".to_string()
            } else {
                bounds.join(" ")
            },
        );
        r
    }

    pub fn kv(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn render(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}
