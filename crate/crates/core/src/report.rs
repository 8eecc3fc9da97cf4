use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::verdict::Verdict;

pub const SCHEMA: &str = "psolv-report/1";

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub group_id: String,
    pub statement_id: String,
    pub verdict: Verdict,
    /// Wall time in milliseconds. Left out unless asked for, so that
    /// repeated runs give identical documents.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(group_id: impl Into<String>, verdict: Verdict) -> Self {
        Report {
            tool_version: TOOL_VERSION.to_string(),
            group_id: group_id.into(),
            statement_id: verdict.statement.clone(),
            verdict,
            timing_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub reports: Vec<Report>,
}

impl Default for ReportDocument {
    fn default() -> Self {
        ReportDocument {
            schema: SCHEMA.to_string(),
            reports: Vec::new(),
        }
    }
}

impl ReportDocument {
    pub fn new(reports: Vec<Report>) -> Self {
        ReportDocument {
            schema: SCHEMA.to_string(),
            reports,
        }
    }

    pub fn findings(&self) -> impl Iterator<Item = &Report> {
        self.reports.iter().filter(|r| r.verdict.is_finding())
    }

    pub fn has_findings(&self) -> bool {
        self.findings().next().is_some()
    }

    /// Stable order by group, then statement; ties keep their relative order.
    pub fn sort(&mut self) {
        self.reports
            .sort_by(|a, b| (&a.group_id, &a.statement_id).cmp(&(&b.group_id, &b.statement_id)));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Text,
    Structured,
}

pub fn emit_report(doc: &ReportDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Structured => {
            let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => emit_text(doc),
    }
}

pub fn parse_report(text: &str) -> Result<ReportDocument> {
    let doc: ReportDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.schema != SCHEMA {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("unknown schema {:?}", doc.schema),
        });
    }
    Ok(doc)
}

fn status(v: &Verdict) -> &'static str {
    if v.is_finding() {
        "FINDING"
    } else if v.report_only {
        "report"
    } else if !v.hypothesis_holds {
        "hypothesis-fails"
    } else {
        match v.conclusion_holds {
            Some(true) => "holds",
            Some(false) => "fails",
            None => "open",
        }
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} ({} reports)", doc.schema, doc.reports.len());
    for r in &doc.reports {
        let v = &r.verdict;
        let _ = write!(out, "[{}] {} {}", r.statement_id, r.group_id, status(v));
        for (k, val) in &v.parameters {
            let _ = write!(out, " {k}={}", render_value(val));
        }
        if let Some(ms) = r.timing_ms {
            let _ = write!(out, " time={ms}ms");
        }
        out.push('\n');
        for w in &v.witnesses {
            let _ = writeln!(out, "    {}: {}", w.description, w.value);
        }
        for n in &v.notes {
            let _ = writeln!(out, "    note: {n}");
        }
    }
    let findings = doc.findings().count();
    let _ = writeln!(out, "# findings: {findings}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportDocument {
        let v = Verdict::new("p_length")
            .hypothesis(true)
            .report_only()
            .param("p", 2)
            .param("p_length", 2);
        let mut r = Report::new("symmetric:4", v);
        r.timing_ms = Some(3);
        ReportDocument::new(vec![r])
    }

    #[test]
    fn empty_document_is_valid() {
        let doc = ReportDocument::default();
        let text = emit_report(&doc, OutputFormat::Structured);
        assert_eq!(parse_report(&text).unwrap(), doc);
        assert!(emit_report(&doc, OutputFormat::Text).contains("0 reports"));
    }

    #[test]
    fn round_trip_and_contents() {
        let doc = sample();
        let text = emit_report(&doc, OutputFormat::Structured);
        assert!(text.contains("\"p_length\": 2"));
        assert!(text.contains(SCHEMA));
        assert_eq!(parse_report(&text).unwrap(), doc);
        let plain = emit_report(&doc, OutputFormat::Text);
        assert!(plain.contains("[p_length] symmetric:4 report"));
    }

    #[test]
    fn rejects_other_schema() {
        let text = emit_report(&sample(), OutputFormat::Structured).replace(SCHEMA, "other/9");
        assert!(parse_report(&text).is_err());
    }
}
