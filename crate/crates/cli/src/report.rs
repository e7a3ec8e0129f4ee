//! Reports: one structure rendered either as aligned tables or as JSON, so
//! both forms carry the same numbers.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: vec![],
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectedCheck {
    pub quantity: String,
    pub expected: Vec<String>,
    pub computed: Vec<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub scenario: String,
    pub gamma: String,
    pub cutoff: Option<String>,
    pub tables: Vec<Table>,
    pub verdicts: Vec<String>,
    pub expected: Vec<ExpectedCheck>,
    pub notes: Vec<String>,
    /// Some sector had no spectrum; the result is partial.
    pub degraded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, scenario: &str, gamma: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            scenario: scenario.into(),
            gamma: gamma.into(),
            cutoff: None,
            tables: vec![],
            verdicts: vec![],
            expected: vec![],
            notes: vec![],
            degraded: false,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {}  (Γ = {})",
            self.command, self.scenario, self.gamma
        );
        if let Some(c) = &self.cutoff {
            let _ = writeln!(out, "cutoff: {c}");
        }
        for t in &self.tables {
            out.push('\n');
            render(&mut out, t);
        }
        if !self.verdicts.is_empty() {
            out.push('\n');
            for v in &self.verdicts {
                let _ = writeln!(out, "{v}");
            }
        }
        if !self.expected.is_empty() {
            out.push('\n');
            for e in &self.expected {
                let _ = writeln!(
                    out,
                    "expected {}: {} | computed: {} | {}",
                    e.quantity,
                    e.expected.join(" vs "),
                    e.computed.join(" vs "),
                    if e.matches { "match" } else { "MISMATCH" }
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if self.degraded {
            let _ = writeln!(out, "degraded: some sectors have no spectrum support");
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        out
    }
}

fn render(out: &mut String, t: &Table) {
    let _ = writeln!(out, "{}", t.title);
    let width = |i: usize| {
        t.rows
            .iter()
            .map(|r| r[i].chars().count())
            .chain([t.columns[i].chars().count()])
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..t.columns.len()).map(width).collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "  {}", line(&t.columns));
    for r in &t.rows {
        let _ = writeln!(out, "  {}", line(r));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let mut t = Table::new("demo", &["a", "long column"]);
        t.push(vec!["xyz".into(), "1".into()]);
        let mut r = Report::new("sectors", "x", "Z");
        r.tables.push(t);
        let s = r.to_table();
        assert!(s.contains("  a    long column\n  xyz  1\n"), "{s}");
        assert!(r.to_json().contains("\"schema_version\": 1"));
    }
}
