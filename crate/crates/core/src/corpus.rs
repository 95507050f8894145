//! Corpus files: named PD codes with optional expected invariants, and batch
//! evaluation against them.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{HalfInt, LaurentPoly};
use crate::analysis::{top_report, verify_theorem, Check, TopReport, Verification};
use crate::diagram::{parse_pd, ArcLabel, DecoratedDiagram};
use crate::par::{map_ordered, Execution};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error{}: {message}", entry.as_ref().map(|e| format!(" in entry '{e}'")).unwrap_or_default())]
    Schema {
        entry: Option<String>,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fil_max: Option<HalfInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gr_max: Option<HalfInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibred: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<LaurentPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub pd: String,
    /// Marked arc; the lowest label when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<ArcLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<DecoratedDiagram, CorpusError> {
        let schema = |message: String| CorpusError::Schema {
            entry: Some(self.name.clone()),
            message,
        };
        let d = parse_pd(&self.pd).map_err(|e| schema(e.to_string()))?;
        match self.edge {
            Some(e) => d.decorate(e).map_err(|e| schema(e.to_string())),
            None => Ok(d.decorate_default()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    schema: u32,
    entries: Vec<CorpusEntry>,
}

/// Parses corpus JSON and checks every entry's diagram and decoration.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let file: CorpusFile = serde_json::from_str(text).map_err(|e| CorpusError::Schema {
        entry: None,
        message: e.to_string(),
    })?;
    if file.schema != SCHEMA {
        return Err(CorpusError::Schema {
            entry: None,
            message: format!("unsupported schema {}", file.schema),
        });
    }
    for e in &file.entries {
        e.diagram()?;
    }
    Ok(file.entries)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusEntry>, CorpusError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_corpus(&text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub pass: bool,
    pub report: Option<TopReport>,
    pub verification: Option<Verification>,
    pub expectations: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn expectation_checks(exp: &Expected, r: &TopReport) -> Vec<Check> {
    let mut out = Vec::new();
    let mut cmp = |name: &str, ok: bool, want: String, got: String| {
        out.push(Check::new(name, ok, format!("expected {want}, got {got}")));
    };
    if let Some(v) = exp.alternative {
        cmp(
            "alternative",
            v == r.alternative,
            v.to_string(),
            r.alternative.to_string(),
        );
    }
    if let Some(v) = exp.components {
        cmp(
            "components",
            v == r.components,
            v.to_string(),
            r.components.to_string(),
        );
    }
    if let Some(v) = exp.fil_max {
        cmp(
            "fil_max",
            v == r.fil_max,
            v.to_string(),
            r.fil_max.to_string(),
        );
    }
    if let Some(v) = exp.gr_max {
        let got = r
            .gr_max
            .map(|g| g.to_string())
            .unwrap_or_else(|| "none".into());
        cmp("gr_max", Some(v) == r.gr_max, v.to_string(), got);
    }
    if let Some(v) = exp.rank {
        cmp("rank", v == r.rank, v.to_string(), r.rank.to_string());
    }
    if let Some(v) = exp.fibred {
        let got = r
            .fibred
            .map(|f| f.to_string())
            .unwrap_or_else(|| "undecided".into());
        cmp("fibred", Some(v) == r.fibred, v.to_string(), got);
    }
    if let Some(v) = &exp.alexander {
        let ok = v.eq_up_to_unit(&r.alexander).unwrap_or(false);
        cmp("alexander", ok, v.to_string(), r.alexander.to_string());
    }
    out
}

/// Report, verification checks and expectations for one entry.
///
/// Entries whose diagram is not alternative pass when they are expected to
/// be non-alternative and their expectations hold; the verification checks are
/// then not run.
pub fn evaluate_entry(entry: &CorpusEntry, exec: Execution) -> EntryResult {
    let failed = |error: String| EntryResult {
        name: entry.name.clone(),
        pass: false,
        report: None,
        verification: None,
        expectations: Vec::new(),
        error: Some(error),
    };
    let dd = match entry.diagram() {
        Ok(dd) => dd,
        Err(e) => return failed(e.to_string()),
    };
    let report = match top_report(&dd, exec) {
        Ok(r) => r,
        Err(e) => return failed(e.to_string()),
    };
    let expected = entry.expected.clone().unwrap_or_default();
    let expectations = expectation_checks(&expected, &report);
    let verification = report.alternative.then(|| verify_theorem(&dd, exec));
    let gate = match &verification {
        Some(v) => v.pass,
        None => expected.alternative == Some(false),
    };
    let pass =
        gate && !expectations.iter().any(Check::failed) && !report.checks.iter().any(Check::failed);
    EntryResult {
        name: entry.name.clone(),
        pass,
        report: Some(report),
        verification,
        expectations,
        error: None,
    }
}

/// Evaluates every entry, possibly concurrently; results keep corpus order.
pub fn evaluate_corpus(entries: &[CorpusEntry], exec: Execution) -> Vec<EntryResult> {
    map_ordered(entries, exec, |e| evaluate_entry(e, Execution::Sequential))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_fields_and_bad_pd() {
        let unknown = r#"{"schema":1,"entries":[{"name":"a","pd":"X(1,2,2,1)","colour":1}]}"#;
        assert!(matches!(
            parse_corpus(unknown),
            Err(CorpusError::Schema { entry: None, .. })
        ));
        let bad = r#"{"schema":1,"entries":[{"name":"broken","pd":"X(1,2,3)"}]}"#;
        match parse_corpus(bad) {
            Err(CorpusError::Schema { entry: Some(n), .. }) => assert_eq!(n, "broken"),
            other => panic!("{other:?}"),
        }
        let version = r#"{"schema":2,"entries":[]}"#;
        assert!(parse_corpus(version).is_err());
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_corpus("/nonexistent/corpus.json"),
            Err(CorpusError::Io { .. })
        ));
    }

    #[test]
    fn kink_entry_passes() {
        let text = r#"{"schema":1,"entries":[{"name":"kink","pd":"X(1,2,2,1)",
            "expected":{"fil_max":"0","rank":1,"fibred":true,"alexander":"1"}}]}"#;
        let entries = parse_corpus(text).unwrap();
        let res = evaluate_corpus(&entries, Execution::Sequential);
        assert!(res[0].pass, "{res:?}");
        assert_eq!(res[0].expectations.len(), 4);
    }
}
