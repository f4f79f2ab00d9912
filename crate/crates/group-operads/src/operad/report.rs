//! Structured results of the law suites: one record per checked law.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawRecord {
    pub law: String,
    pub family: String,
    pub samples: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LawRecord {
    pub fn pass(law: impl Into<String>, family: impl Into<String>, samples: usize) -> Self {
        LawRecord {
            law: law.into(),
            family: family.into(),
            samples,
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(
        law: impl Into<String>,
        family: impl Into<String>,
        samples: usize,
        witness: String,
    ) -> Self {
        LawRecord {
            law: law.into(),
            family: family.into(),
            samples,
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Attaches a witness string, useful on passing records that exhibit
    /// a found example.
    pub fn with_witness(mut self, witness: String) -> Self {
        self.witness = Some(witness);
        self
    }
}

impl fmt::Display for LawRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<40} family={:<4} samples={}",
            match self.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            },
            self.law,
            self.family,
            self.samples
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

/// An ordered bundle of law records.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub records: Vec<LawRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, record: LawRecord) {
        self.records.push(record);
    }

    pub fn merge(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    /// Newline-delimited JSON records, one per law.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("plain data serializes"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
