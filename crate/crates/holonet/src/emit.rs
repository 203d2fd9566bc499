//! Report serialization: JSON for machines, aligned text for people, CSV
//! with one row per check.

use std::time::{SystemTime, UNIX_EPOCH};

use holonet_core::report::VerificationReport;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Serialize)]
struct CheckOut<'a> {
    name: &'a str,
    status: &'a str,
    residual: Option<f64>,
    witness: Option<&'a str>,
    details: &'a str,
}

#[derive(Serialize)]
struct SpectrumOut<'a> {
    name: &'a str,
    terms: usize,
    labels: Vec<(&'a str, u32)>,
}

#[derive(Serialize)]
struct ReportOut<'a> {
    subject: &'a str,
    pass: bool,
    checks: Vec<CheckOut<'a>>,
    notes: &'a [String],
    spectra: Vec<SpectrumOut<'a>>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at_unix: Option<u64>,
    pass: bool,
    reports: Vec<ReportOut<'a>>,
}

fn view(r: &VerificationReport) -> ReportOut<'_> {
    ReportOut {
        subject: &r.subject,
        pass: r.passed(),
        checks: r
            .checks
            .iter()
            .map(|c| CheckOut {
                name: &c.name,
                status: c.status.as_str(),
                residual: c.residual,
                witness: c.witness.as_deref(),
                details: &c.details,
            })
            .collect(),
        notes: &r.notes,
        spectra: r
            .spectra
            .iter()
            .map(|s| SpectrumOut {
                name: &s.name,
                terms: s.terms.iter().map(|(_, m)| *m as usize).sum(),
                labels: s.terms.iter().map(|(l, m)| (l.as_str(), *m)).collect(),
            })
            .collect(),
    }
}

fn timestamp(reproducible: bool) -> Option<u64> {
    if reproducible {
        return None;
    }
    SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs())
}

/// Serializes one report.
pub fn emit_report(r: &VerificationReport, format: Format, reproducible: bool) -> String {
    emit_reports(std::slice::from_ref(r), format, reproducible)
}

/// Serializes several reports. JSON wraps them in one envelope with an
/// overall flag and, unless `reproducible`, a timestamp.
pub fn emit_reports(reports: &[VerificationReport], format: Format, reproducible: bool) -> String {
    match format {
        Format::Json => {
            let env = Envelope {
                generated_at_unix: timestamp(reproducible),
                pass: reports.iter().all(VerificationReport::passed),
                reports: reports.iter().map(view).collect(),
            };
            let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => reports.iter().map(text).collect::<Vec<_>>().join("\n"),
        Format::Csv => csv_rows(reports),
    }
}

fn text(r: &VerificationReport) -> String {
    let width = r.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    let mut out = format!("== {} ==\n", r.subject);
    for c in &r.checks {
        let pad = width - c.name.chars().count();
        let residual = c.residual.map(|x| format!("  residual {x:.3e}")).unwrap_or_default();
        out.push_str(&format!(
            "{}{}  {}{}  {}\n",
            c.name,
            " ".repeat(pad),
            c.status.as_str().to_uppercase(),
            residual,
            c.details
        ));
        if let Some(w) = &c.witness {
            out.push_str(&format!("{}  witness: {w}\n", " ".repeat(width)));
        }
    }
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    for s in &r.spectra {
        let total: u32 = s.terms.iter().map(|(_, m)| m).sum();
        out.push_str(&format!("{} ({total} terms):\n", s.name));
        for (label, m) in &s.terms {
            if *m == 1 {
                out.push_str(&format!("  {label}\n"));
            } else {
                out.push_str(&format!("  {m} x {label}\n"));
            }
        }
    }
    out.push_str(&format!("{}\n", r.summary()));
    out
}

fn csv_rows(reports: &[VerificationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["subject", "check", "status", "residual", "witness", "details"]).expect("in-memory write");
    for r in reports {
        for c in &r.checks {
            let residual = c.residual.map(|x| format!("{x:e}")).unwrap_or_default();
            w.write_record([
                r.subject.as_str(),
                c.name.as_str(),
                c.status.as_str(),
                residual.as_str(),
                c.witness.as_deref().unwrap_or(""),
                c.details.as_str(),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
