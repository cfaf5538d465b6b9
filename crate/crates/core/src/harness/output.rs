use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use super::compare::ComparisonReport;
use crate::error::{Error, Result};
use crate::types::{PhaseShiftResult, ScatteringConfig, Scheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "table" => Ok(Self::Table),
            other => Err(Error::Parse(format!("unknown output format '{other}'"))),
        }
    }
}

/// One row of output: a single scheme at a single configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRecord {
    pub scheme: Scheme,
    pub k: f64,
    pub l: u32,
    pub n: f64,
    pub delta: Option<f64>,
    pub error_estimate: Option<f64>,
    pub diagnostics: Value,
    /// `ok` or the error variant name.
    pub status: String,
}

impl ResultRecord {
    pub fn new(cfg: &ScatteringConfig, scheme: Scheme, outcome: &Result<PhaseShiftResult>) -> Self {
        let (delta, error_estimate, diagnostics, status) = match outcome {
            Ok(r) => (
                Some(r.value),
                Some(r.error_estimate),
                serde_json::to_value(&r.diagnostics).unwrap_or(Value::Null),
                "ok".to_string(),
            ),
            Err(e) => (None, None, json!({ "message": e.to_string() }), e.name().to_string()),
        };
        Self {
            scheme,
            k: cfg.k(),
            l: cfg.l(),
            n: cfg.n(),
            delta,
            error_estimate,
            diagnostics,
            status,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

pub fn records_of(report: &ComparisonReport) -> Vec<ResultRecord> {
    report
        .results
        .iter()
        .map(|(s, r)| ResultRecord::new(&report.config, *s, r))
        .collect()
}

pub fn report_json(report: &ComparisonReport) -> Value {
    json!({
        "k": report.config.k(),
        "l": report.config.l(),
        "n": report.config.n(),
        "potential": report.potential.to_string(),
        "max_pairwise_discrepancy": report.max_pairwise_discrepancy,
        "agreement": report.agreement,
        "tolerance_used": report.tolerance_used,
        "results": records_of(report),
    })
}

pub const CSV_HEADER: &str = "k,l,n,scheme,delta,error_estimate,status";

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:e}"))
}

pub fn records_csv(records: &[ResultRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.k,
            r.l,
            r.n,
            r.scheme,
            opt(r.delta),
            opt(r.error_estimate),
            r.status
        );
    }
    out
}

pub fn records_table(records: &[ResultRecord]) -> String {
    let mut out = format!(
        "{:>10} {:>3} {:>6} {:<7} {:>24} {:>10}  {}\n",
        "k", "l", "n", "scheme", "delta", "error", "status"
    );
    for r in records {
        let _ = writeln!(
            out,
            "{:>10} {:>3} {:>6} {:<7} {:>24} {:>10}  {}",
            r.k,
            r.l,
            r.n,
            r.scheme.as_str(),
            r.delta.map_or_else(|| "-".into(), |d| format!("{d:.16e}")),
            r.error_estimate.map_or_else(|| "-".into(), |e| format!("{e:.2e}")),
            r.status
        );
    }
    out
}

/// Renders plain per-scheme results.
pub fn render_records(records: &[ResultRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(records).expect("records serialize") + "\n",
        OutputFormat::Csv => records_csv(records),
        OutputFormat::Table => records_table(records),
    }
}

/// Renders comparison reports; CSV and table flatten them into rows.
pub fn render_reports(reports: &[ComparisonReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let v: Vec<Value> = reports.iter().map(report_json).collect();
            serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
        }
        OutputFormat::Csv => records_csv(&reports.iter().flat_map(records_of).collect::<Vec<_>>()),
        OutputFormat::Table => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&records_table(&records_of(r)));
                let _ = writeln!(
                    out,
                    "max discrepancy {:.3e} (tolerance {:.1e}): {}\n",
                    r.max_pairwise_discrepancy,
                    r.tolerance_used,
                    if r.agreement { "agree" } else { "DISAGREE" }
                );
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::compare_schemes;
    use crate::potential::PowerLawPotential;

    fn report() -> ComparisonReport {
        let cfg = ScatteringConfig::three_d(1.0, 0).unwrap();
        compare_schemes(&PowerLawPotential::lj12(1.0, 1.0, 1.0), &cfg, &[Scheme::Dimreg, Scheme::Acont], 1e-4)
    }

    #[test]
    fn json_fields_are_stable() {
        let v = serde_json::to_value(records_of(&report())).unwrap();
        let first = v[0].as_object().unwrap();
        let mut keys: Vec<&str> = first.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["delta", "diagnostics", "error_estimate", "k", "l", "n", "scheme", "status"]);
        assert_eq!(first["scheme"], "dimreg");
        assert_eq!(first["status"], "ok");
    }

    #[test]
    fn csv_layout() {
        let csv = render_reports(&[report()], OutputFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("1,0,3,dimreg,"));
        assert!(lines[2].ends_with(",ok"));
    }

    #[test]
    fn error_rows_carry_variant_name() {
        let cfg = ScatteringConfig::new(1.0, 0, 4.0).unwrap();
        let r = compare_schemes(&PowerLawPotential::lj12(1.0, 1.0, 1.0), &cfg, &[Scheme::Dimreg], 1e-4);
        let recs = records_of(&r);
        assert_eq!(recs[0].status, "DimensionalPole");
        assert!(recs[0].delta.is_none());
        assert!(render_records(&recs, OutputFormat::Table).contains("DimensionalPole"));
    }

    #[test]
    fn formats_parse() {
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
