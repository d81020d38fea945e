use serde::Serialize;

use qdamp_core::report::VerificationReport;

use crate::config::Format;
use crate::CliError;

/// A numeric table: one header row, then rows of equal length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => {
                let mut w = writer();
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(|x| number(*x)))?;
                }
                finish(w)
            }
            Format::Json => json(self),
        }
    }
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    all_passed: bool,
    passed: usize,
    failed: usize,
    skipped: usize,
    records: &'a [qdamp_core::report::CheckRecord],
}

pub fn render_report(report: &VerificationReport, format: Format) -> Result<String, CliError> {
    use qdamp_core::report::Status;
    match format {
        Format::Json => {
            let count = |s: Status| report.records.iter().filter(|r| r.status == s).count();
            json(&ReportDocument {
                all_passed: report.all_passed(),
                passed: count(Status::Pass),
                failed: count(Status::Fail),
                skipped: count(Status::Skipped),
                records: &report.records,
            })
        }
        Format::Csv => {
            let mut w = writer();
            w.write_record([
                "name",
                "status",
                "residual",
                "tolerance",
                "margin",
                "dims",
                "identity",
                "reason",
            ])?;
            for r in &report.records {
                let status = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skipped => "skipped",
                };
                let dims: Vec<String> = r.dims.iter().map(|d| d.to_string()).collect();
                w.write_record([
                    r.name.clone(),
                    status.to_string(),
                    r.residual.map(number).unwrap_or_default(),
                    number(r.tolerance),
                    r.margin.map(|m| m.to_string()).unwrap_or_default(),
                    dims.join("x"),
                    r.identity.clone(),
                    r.reason.clone().unwrap_or_default(),
                ])?;
            }
            finish(w)
        }
    }
}

/// 17 significant digits, '.' decimal separator.
fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["t".into(), "x".into()]);
        t.push(vec![0.0, 1.0 / 3.0]);
        let s = t.render(Format::Csv).unwrap();
        assert_eq!(s, "t,x\n0.0000000000000000e0,3.3333333333333331e-1\n");
        let back: f64 = s
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .nth(1)
            .unwrap()
            .parse()
            .unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }

    #[test]
    fn report_csv_quotes_formulas() {
        let mut r = VerificationReport::new();
        r.check("a", "f(x, y) = 0", 0.5, 1.0, Some(2), &[3, 3]);
        let s = render_report(&r, Format::Csv).unwrap();
        assert!(s.contains("\"f(x, y) = 0\""));
        assert!(s.ends_with('\n') && !s.contains('\r'));
    }
}
