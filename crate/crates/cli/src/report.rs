//! The report every invocation produces, and its two renderings.

use std::fmt::Write as _;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// How a run ended; the exit code is derived from this alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ParseError,
    ValidationFailure,
    SizeCap,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::ParseError => 1,
            Status::ValidationFailure => 2,
            Status::SizeCap => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::ParseError => "parse_error",
            Status::ValidationFailure => "validation_failure",
            Status::SizeCap => "size_cap",
        }
    }
}

/// A failure carried to the top of a command; the message includes the
/// witness when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure { status: Status::ParseError, message: message.into() }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Failure { status: Status::ValidationFailure, message: message.into() }
    }
}

impl From<gmunn::Error> for Failure {
    fn from(e: gmunn::Error) -> Self {
        let status = match e {
            gmunn::Error::Malformed(_) | gmunn::Error::OutOfRange { .. } => Status::ParseError,
            ref e if e.is_size_cap() => Status::SizeCap,
            _ => Status::ValidationFailure,
        };
        Failure { status, message: e.to_string() }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Command, input digests, flat results in insertion order, and status.
#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    inputs: Vec<(String, String)>,
    results: Map<String, Value>,
    status: Status,
    error: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: Vec::new(), results: Map::new(), status: Status::Ok, error: None }
    }

    pub fn input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.push((path.into(), sha256_hex(bytes)));
    }

    /// Values are scalars or arrays of scalars.
    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.into(), value.into());
    }

    pub fn fail(&mut self, failure: Failure) {
        self.status = failure.status;
        self.error = Some(failure.message);
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn to_json(&self, banner: bool) -> String {
        let mut top = Map::new();
        if banner {
            top.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
        }
        top.insert("command".into(), Value::from(self.command.as_str()));
        let inputs = self
            .inputs
            .iter()
            .map(|(path, digest)| Value::from(format!("{path} sha256:{digest}")))
            .collect::<Vec<_>>();
        top.insert("inputs".into(), Value::Array(inputs));
        top.insert("results".into(), Value::Object(self.results.clone()));
        top.insert("status".into(), Value::from(self.status.label()));
        if let Some(e) = &self.error {
            top.insert("error".into(), Value::from(e.as_str()));
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(top)).expect("report serialises");
        out.push('\n');
        out
    }

    pub fn to_text(&self, banner: bool) -> String {
        let mut out = String::new();
        if banner {
            writeln!(out, "gmunn {}", env!("CARGO_PKG_VERSION")).unwrap();
        }
        writeln!(out, "command: {}", self.command).unwrap();
        for (path, digest) in &self.inputs {
            writeln!(out, "input: {path} sha256:{digest}").unwrap();
        }
        for (key, value) in &self.results {
            match value {
                Value::String(s) if s.contains('\n') => {
                    writeln!(out, "{key}:").unwrap();
                    for line in s.lines() {
                        writeln!(out, "  {line}").unwrap();
                    }
                }
                _ => writeln!(out, "{key}: {}", text(value)).unwrap(),
            }
        }
        if let Some(e) = &self.error {
            writeln!(out, "error: {e}").unwrap();
        }
        writeln!(out, "status: {}", self.status.label()).unwrap();
        out
    }
}

fn text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(text).collect::<Vec<_>>().join(" ")),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let codes: Vec<u8> =
            [Status::Ok, Status::ParseError, Status::ValidationFailure, Status::SizeCap].map(Status::exit_code).into();
        assert_eq!(codes, vec![0, 1, 2, 3]);
    }

    #[test]
    fn error_classification() {
        assert_eq!(Failure::from(gmunn::Error::Malformed("x".into())).status, Status::ParseError);
        assert_eq!(Failure::from(gmunn::Error::OutOfRange { id: 3, size: 2 }).status, Status::ParseError);
        let cap = gmunn::Error::SizeCapExceeded { what: "semigroup", size: 9, cap: 8 };
        assert_eq!(Failure::from(cap).status, Status::SizeCap);
        assert_eq!(Failure::from(gmunn::Error::NotRegular(1)).status, Status::ValidationFailure);
    }

    #[test]
    fn renderings() {
        let mut r = Report::new("mu");
        r.input("s.isg", b"abc");
        r.put("classes", 2);
        r.put("partition", vec![0, 0, 1]);
        r.put("table", "isg v1\nn 1\n");
        let t = r.to_text(false);
        assert_eq!(
            t,
            "command: mu\n\
             input: s.isg sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad\n\
             classes: 2\npartition: [0 0 1]\ntable:\n  isg v1\n  n 1\nstatus: ok\n"
        );
        let j: Value = serde_json::from_str(&r.to_json(true)).unwrap();
        assert_eq!(j["results"]["partition"], serde_json::json!([0, 0, 1]));
        assert_eq!(j["status"], "ok");
        assert!(j.get("version").is_some());
        r.fail(Failure::validation("bad"));
        assert!(r.to_text(true).ends_with("error: bad\nstatus: validation_failure\n"));
    }
}
