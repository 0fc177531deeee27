//! Reading input files and turning failures into exit codes.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use monact::io::{act_from_spec, ActSpec, MonoidRef};
use monact::{Act, Monoid, MonoidSpec};

#[derive(Debug)]
pub enum CliError {
    Domain(monact::Error),
    Json { path: String, message: String },
    Io { path: String, message: String },
    Mismatch(Value),
}

impl From<monact::Error> for CliError {
    fn from(e: monact::Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    /// Exit code and the JSON object describing the failure.
    pub fn report(self) -> (u8, Value) {
        match self {
            CliError::Domain(e) => {
                let mut v = json!({"error": e.kind(), "message": e.to_string()});
                if let monact::Error::TooLarge { what, size, bound } = e {
                    v["what"] = json!(what);
                    v["size"] = json!(size);
                    v["bound"] = json!(bound);
                }
                (1, v)
            }
            CliError::Json { path, message } => (
                1,
                json!({"error": "InvalidJson", "path": path, "message": message}),
            ),
            CliError::Io { path, message } => {
                (2, json!({"error": "Io", "path": path, "message": message}))
            }
            CliError::Mismatch(mut v) => {
                v["error"] = json!("Mismatch");
                v["message"] = json!("observed values differ from expectations");
                (1, v)
            }
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn read_monoid(path: &Path) -> Result<Arc<Monoid>, CliError> {
    let spec: MonoidSpec = parse(path, &read_text(path)?)?;
    Ok(Arc::new(Monoid::from_spec(&spec)?))
}

/// Loads an act; a monoid given by path is resolved against the act file's
/// directory.
pub fn read_act(path: &Path) -> Result<Act, CliError> {
    let spec: ActSpec = parse(path, &read_text(path)?)?;
    let monoid = match &spec.monoid {
        MonoidRef::Inline(m) => Arc::new(Monoid::from_spec(m)?),
        MonoidRef::Path(p) => read_monoid(&path.parent().unwrap_or(Path::new("")).join(p))?,
    };
    Ok(act_from_spec(&spec, monoid)?)
}

pub fn labels(act: &Act, members: &[usize]) -> Vec<String> {
    members.iter().map(|&a| act.label(a).to_string()).collect()
}

/// A map as `[[x, f(x)], …]` in carrier order.
pub fn pairs(h: &monact::ActHom) -> Value {
    let src = h.source();
    let tgt = h.target();
    Value::Array(
        (0..src.len())
            .map(|a| json!([src.label(a), tgt.label(h.apply(a))]))
            .collect(),
    )
}
