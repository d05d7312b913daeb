use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use s3knots::braid::BraidError;
use s3knots::cabling::CablingError;
use s3knots::kirby::KirbyError;
use s3knots::knotalg::KnotAlgError;
use s3knots::lorenz::LorenzError;
use s3knots::s3flow::FlowError;

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub struct CliError {
    pub exit: u8,
    pub module: &'static str,
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { exit: EXIT_USAGE, module: "cli", code: "usage", message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { exit: EXIT_DOMAIN, module: "cli", code: "io", message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "error": { "module": self.module, "code": self.code, "message": self.message },
            "exit_code": self.exit,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

fn domain(module: &'static str, code: &'static str, message: String) -> CliError {
    CliError { exit: EXIT_DOMAIN, module, code, message }
}

impl From<BraidError> for CliError {
    fn from(e: BraidError) -> Self {
        let code = match e {
            BraidError::Parameter(_) => "parameter",
            BraidError::Domain(_) => "domain",
            BraidError::Internal(_) => "internal",
        };
        domain("braid", code, e.to_string())
    }
}

impl From<CablingError> for CliError {
    fn from(e: CablingError) -> Self {
        match e {
            CablingError::Braid(b) => b.into(),
            CablingError::Parameter(_) => domain("cabling", "parameter", e.to_string()),
            CablingError::Domain(_) => domain("cabling", "domain", e.to_string()),
        }
    }
}

impl From<FlowError> for CliError {
    fn from(e: FlowError) -> Self {
        let code = match e {
            FlowError::OffSphere(_) => "domain",
            FlowError::Parameter(_) => "parameter",
        };
        domain("s3flow", code, e.to_string())
    }
}

impl From<LorenzError> for CliError {
    fn from(e: LorenzError) -> Self {
        let code = match e {
            LorenzError::Parameter(_) => "parameter",
            LorenzError::Word(_) => "word",
        };
        domain("lorenz", code, e.to_string())
    }
}

impl From<KnotAlgError> for CliError {
    fn from(e: KnotAlgError) -> Self {
        let code = match e {
            KnotAlgError::Parameter(_) => "parameter",
            KnotAlgError::Domain(_) => "domain",
            KnotAlgError::Parse(_) => "parse",
            KnotAlgError::Overflow(_) => "overflow",
        };
        domain("knotalg", code, e.to_string())
    }
}

impl From<KirbyError> for CliError {
    fn from(e: KirbyError) -> Self {
        let code = match e {
            KirbyError::Invalid(_) => "invalid",
            KirbyError::Parameter(_) => "parameter",
            KirbyError::Framing { .. } => "framing",
        };
        domain("kirby", code, e.to_string())
    }
}

/// Result keys of one command plus its echoed inputs and tolerances.
#[derive(Default)]
pub struct Document {
    fields: Map<String, Value>,
    inputs: Map<String, Value>,
    tolerances: Map<String, Value>,
}

impl Document {
    pub fn new(command: &str) -> Self {
        let mut d = Document::default();
        d.inputs.insert("command".into(), Value::String(command.into()));
        d
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.fields.insert(key.into(), serde_json::to_value(value).expect("serializable output"));
        self
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), serde_json::to_value(value).expect("serializable input"));
        self
    }

    pub fn tolerance(&mut self, key: &str, value: f64) -> &mut Self {
        self.tolerances.insert(key.into(), json!(value));
        self
    }

    pub fn finish(self) -> Value {
        let mut out = self.fields;
        out.insert("inputs_echo".into(), Value::Object(self.inputs));
        if !self.tolerances.is_empty() {
            out.insert("tolerances".into(), Value::Object(self.tolerances));
        }
        out.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        Value::Object(out)
    }
}

pub fn write_document(doc: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc).expect("JSON value serializes");
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| CliError::io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}
