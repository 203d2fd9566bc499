//! Named pass/fail checks with residuals, witnesses and attached spectra.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub witness: Option<String>,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::from_bool(ok),
            residual: None,
            witness: None,
            details: details.into(),
        }
    }

    /// Passes iff `residual < tol`.
    pub fn residual(name: impl Into<String>, residual: f64, tol: f64, details: impl Into<String>) -> Self {
        let mut c = Self::new(name, residual < tol, details);
        c.residual = Some(residual);
        c
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_residual(mut self, r: f64) -> Self {
        self.residual = Some(r);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A spectrum attached to a report: its name and label list with
/// multiplicities, in canonical (sorted) order.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedSpectrum {
    pub name: String,
    pub terms: Vec<(String, u32)>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub spectra: Vec<NamedSpectrum>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self { subject: subject.into(), ..Self::default() }
    }

    pub fn push(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn attach_spectrum(&mut self, name: impl Into<String>, mut terms: Vec<(String, u32)>) {
        terms.sort();
        self.spectra.push(NamedSpectrum { name: name.into(), terms });
    }

    /// Records the outcome of a fallible step as a check, keeping the error
    /// text as its witness.
    pub fn push_result<T>(&mut self, name: &str, r: &crate::Result<T>, details: impl Into<String>) {
        match r {
            Ok(_) => self.push(Check::new(name, true, details)),
            Err(e) => self.push(Check::new(name, false, details).with_witness(e.to_string())),
        };
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
        self.spectra.extend(other.spectra);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        alloc::format!(
            "{}: {} checks, {} failed, {}",
            self.subject,
            self.checks.len(),
            failed,
            if failed == 0 { "PASS" } else { "FAIL" }
        )
    }
}

impl core::fmt::Display for Status {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}
