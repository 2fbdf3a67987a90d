//! Rendering, parsing and comparing recommendation reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheduler::RecommendationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Md,
    Csv,
    Structured,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "md" => Ok(ReportFormat::Md),
            "csv" => Ok(ReportFormat::Csv),
            "structured" | "json" => Ok(ReportFormat::Structured),
            other => Err(format!("unknown format `{other}` (expected md, csv or structured)")),
        }
    }
}

pub const OVERALL_SCOPE: &str = "overall";
pub const METHOD_PR: &str = "pr";
pub const METHOD_TWO_TUPLE: &str = "two-tuple";

const CSV_HEADER: [&str; 9] = [
    "scope",
    "objective",
    "method",
    "numeric",
    "label",
    "alpha",
    "centroid_l",
    "centroid_r",
    "similarity",
];

/// One (scope, objective, method) cell of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    /// Welder id or `overall`.
    pub scope: String,
    pub objective: String,
    pub method: String,
    pub numeric: f64,
    pub label: String,
    pub alpha: Option<f64>,
    pub centroid_l: Option<f64>,
    pub centroid_r: Option<f64>,
    pub similarity: Option<f64>,
}

impl RecommendationReport {
    /// Flattened cells: welders in order then overall, objectives in
    /// scenario order, PR before 2-tuple.
    pub fn rows(&self) -> Vec<ReportRow> {
        let mut rows = Vec::new();
        let scopes = self
            .welders
            .iter()
            .map(|w| (w.id.to_string(), &w.pr, &w.two_tuple))
            .chain(std::iter::once((
                OVERALL_SCOPE.to_string(),
                &self.overall.pr,
                &self.overall.two_tuple,
            )));
        for (scope, pr, tt) in scopes {
            for obj in &self.objectives {
                if let Some(r) = pr.get(&obj.name) {
                    rows.push(ReportRow {
                        scope: scope.clone(),
                        objective: obj.name.clone(),
                        method: METHOD_PR.into(),
                        numeric: r.numeric,
                        label: r.linguistic.clone(),
                        alpha: None,
                        centroid_l: Some(r.centroid.c_l),
                        centroid_r: Some(r.centroid.c_r),
                        similarity: Some(r.similarity_to_word),
                    });
                }
                if let Some(c) = tt.get(&obj.name) {
                    rows.push(ReportRow {
                        scope: scope.clone(),
                        objective: obj.name.clone(),
                        method: METHOD_TWO_TUPLE.into(),
                        numeric: c.beta,
                        label: c.tuple.label.clone(),
                        alpha: Some(c.tuple.alpha),
                        centroid_l: None,
                        centroid_r: None,
                        similarity: None,
                    });
                }
            }
        }
        rows
    }
}

pub fn render_report(report: &RecommendationReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Md => Ok(render_md(report)),
        ReportFormat::Csv => render_csv(&report.rows()),
        ReportFormat::Structured => Ok(serde_json::to_string_pretty(report)? + "\n"),
    }
}

fn render_md(report: &RecommendationReport) -> String {
    let p = &report.provenance;
    let mut out = String::new();
    let _ = writeln!(out, "# Recommendation report\n");
    let _ = writeln!(out, "- codebook: {}", p.codebook);
    let _ = writeln!(
        out,
        "- methods: {}",
        if p.methods.is_empty() { "none".to_string() } else { p.methods.join(", ") }
    );
    let _ = writeln!(out, "- height mode: {:?}", p.height_mode);
    let _ = writeln!(out, "- grid step: {}", p.grid_step);
    if let Some(seed) = p.seed {
        let _ = writeln!(out, "- seed: {seed}");
    }
    out.push('\n');

    let methods: Vec<(&str, &str)> = p
        .methods
        .iter()
        .map(|m| if m == METHOD_PR { (METHOD_PR, "PR") } else { (METHOD_TWO_TUPLE, "2-tuple") })
        .collect();
    let mut header = vec!["Welder".to_string()];
    for obj in &report.objectives {
        for (_, title) in &methods {
            header.push(format!("{} {title} N", obj.name));
            header.push(format!("{} {title} L", obj.name));
        }
    }
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));

    let rows = report.rows();
    let mut scopes: Vec<String> = report.welders.iter().map(|w| w.id.to_string()).collect();
    if !rows.is_empty() {
        scopes.push(OVERALL_SCOPE.into());
    }
    for scope in scopes {
        let mut cells = vec![if scope == OVERALL_SCOPE { "Overall".to_string() } else { scope.clone() }];
        for obj in &report.objectives {
            for (method, _) in &methods {
                match rows
                    .iter()
                    .find(|r| r.scope == scope && r.objective == obj.name && r.method == *method)
                {
                    Some(r) => {
                        cells.push(format!("{:.2}", r.numeric));
                        cells.push(match r.alpha {
                            Some(a) if scope == OVERALL_SCOPE => format!("({}, {a:.2})", r.label),
                            _ => r.label.clone(),
                        });
                    }
                    None => cells.extend(["".to_string(), "".to_string()]),
                }
            }
        }
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    out
}

fn fixed(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

fn render_csv(rows: &[ReportRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.scope.clone(),
            r.objective.clone(),
            r.method.clone(),
            fixed(Some(r.numeric)),
            r.label.clone(),
            fixed(r.alpha),
            fixed(r.centroid_l),
            fixed(r.centroid_r),
            fixed(r.similarity),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Schema(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Schema(e.to_string()))
}

/// Reads rows back from a CSV report.
pub fn parse_csv_report(text: &str) -> Result<Vec<ReportRow>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Schema(format!("unexpected CSV header `{}`", header.join(","))));
    }
    let num = |s: &str, field: &str| -> Result<Option<f64>> {
        if s.is_empty() {
            return Ok(None);
        }
        s.parse()
            .map(Some)
            .map_err(|_| Error::Schema(format!("field `{field}`: `{s}` is not a number")))
    };
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let numeric = num(&rec[3], "numeric")?.ok_or_else(|| Error::Schema("field `numeric` is empty".into()))?;
        rows.push(ReportRow {
            scope: rec[0].to_string(),
            objective: rec[1].to_string(),
            method: rec[2].to_string(),
            numeric,
            label: rec[4].to_string(),
            alpha: num(&rec[5], "alpha")?,
            centroid_l: num(&rec[6], "centroid_l")?,
            centroid_r: num(&rec[7], "centroid_r")?,
            similarity: num(&rec[8], "similarity")?,
        });
    }
    Ok(rows)
}

/// Reads a CSV or structured report into rows; the format is sniffed from
/// the first non-blank character.
pub fn parse_report(text: &str) -> Result<Vec<ReportRow>> {
    if text.trim_start().starts_with('{') {
        let report: RecommendationReport = serde_json::from_str(text)?;
        Ok(report.rows())
    } else {
        parse_csv_report(text)
    }
}

/// A cell that differs between two reports.
#[derive(Debug, Clone, PartialEq)]
pub struct Difference {
    pub scope: String,
    pub objective: String,
    pub method: String,
    pub field: &'static str,
    pub left: String,
    pub right: String,
}

impl std::fmt::Display for Difference {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}/{}/{} {}: {} vs {}",
            self.scope, self.objective, self.method, self.field, self.left, self.right
        )
    }
}

/// Cell-wise comparison. Numbers match within `tol`, labels exactly; a
/// cell missing on one side is reported with field `row`.
pub fn compare_reports(left: &[ReportRow], right: &[ReportRow], tol: f64) -> Vec<Difference> {
    let key = |r: &ReportRow| (r.scope.clone(), r.objective.clone(), r.method.clone());
    let mut diffs = Vec::new();
    let diff = |r: &ReportRow, field, left: String, right: String| Difference {
        scope: r.scope.clone(),
        objective: r.objective.clone(),
        method: r.method.clone(),
        field,
        left,
        right,
    };
    for a in left {
        let Some(b) = right.iter().find(|b| key(b) == key(a)) else {
            diffs.push(diff(a, "row", "present".into(), "missing".into()));
            continue;
        };
        if a.label != b.label {
            diffs.push(diff(a, "label", a.label.clone(), b.label.clone()));
        }
        let fields: [(&'static str, Option<f64>, Option<f64>); 5] = [
            ("numeric", Some(a.numeric), Some(b.numeric)),
            ("alpha", a.alpha, b.alpha),
            ("centroid_l", a.centroid_l, b.centroid_l),
            ("centroid_r", a.centroid_r, b.centroid_r),
            ("similarity", a.similarity, b.similarity),
        ];
        for (field, x, y) in fields {
            let same = match (x, y) {
                (Some(x), Some(y)) => (x - y).abs() <= tol,
                (None, None) => true,
                _ => false,
            };
            if !same {
                diffs.push(diff(a, field, fixed(x), fixed(y)));
            }
        }
    }
    for b in right {
        if !left.iter().any(|a| key(a) == key(b)) {
            diffs.push(diff(b, "row", "missing".into(), "present".into()));
        }
    }
    diffs
}
