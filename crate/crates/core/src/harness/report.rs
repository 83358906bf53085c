use std::fmt::Write as _;

use serde::{Serialize, Serializer};

/// Rows with slack below `-FAIL_TOL` fail.
pub const FAIL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn csv(self) -> &'static str {
        match self {
            Status::Pass => "true",
            Status::Fail => "false",
            Status::Skipped => "skipped",
        }
    }
}

/// One checked inequality `left <= right` on one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub check: String,
    pub anchor: String,
    pub instance: usize,
    #[serde(serialize_with = "sig_opt")]
    pub left: Option<f64>,
    #[serde(serialize_with = "sig_opt")]
    pub right: Option<f64>,
    #[serde(serialize_with = "sig_opt")]
    pub slack: Option<f64>,
    pub pass: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn sig_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) if x.is_finite() => s.serialize_f64(format_sig(*x).parse().expect("formatted float")),
        _ => s.serialize_none(),
    }
}

impl Row {
    pub fn compare(check: &str, anchor: &str, instance: usize, left: f64, right: f64) -> Self {
        let slack = right - left;
        let pass = if slack >= -FAIL_TOL { Status::Pass } else { Status::Fail };
        Row {
            check: check.into(),
            anchor: anchor.into(),
            instance,
            left: Some(left),
            right: Some(right),
            slack: Some(slack),
            pass,
            note: None,
        }
    }

    pub fn skipped(check: &str, anchor: &str, instance: usize, note: impl Into<String>) -> Self {
        Row {
            check: check.into(),
            anchor: anchor.into(),
            instance,
            left: None,
            right: None,
            slack: None,
            pass: Status::Skipped,
            note: Some(note.into()),
        }
    }

    pub fn failed(check: &str, anchor: &str, instance: usize, note: impl Into<String>) -> Self {
        Row { pass: Status::Fail, ..Self::skipped(check, anchor, instance, note) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub summary: Summary,
    pub rows: Vec<Row>,
}

impl VerificationReport {
    /// Sorts rows by instance and check name; rows of equal key keep their
    /// generation order.
    pub fn new(mut rows: Vec<Row>) -> Self {
        rows.sort_by(|a, b| a.instance.cmp(&b.instance).then_with(|| a.check.cmp(&b.check)));
        let count = |s: Status| rows.iter().filter(|r| r.pass == s).count();
        let summary = Summary {
            rows: rows.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        VerificationReport { summary, rows }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.pass == Status::Fail)
    }

    pub fn rows_for<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Row> {
        self.rows.iter().filter(move |r| r.check == check)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,anchor,instance,left,right,slack,pass\n");
        let num = |v: Option<f64>| v.map(format_sig).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                csv_field(&r.check),
                csv_field(&r.anchor),
                r.instance,
                num(r.left),
                num(r.right),
                num(r.slack),
                r.pass.csv()
            );
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `%.12g`: twelve significant digits, trailing zeros trimmed.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (DIGITS - 1 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        trim_zeros(&s).to_string()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
