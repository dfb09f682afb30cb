//! Deterministic JSON emission: keys sorted, pretty-printed, written once
//! via temp file and rename.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
#[error("cannot write {path}: {source}")]
pub struct EmitError {
    pub path: String,
    #[source]
    pub source: std::io::Error,
}

/// Canonical text of a report. Routing through `serde_json::Value` sorts
/// every object's keys.
pub fn to_canonical_json<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("report serializes");
    let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
    text.push('\n');
    text
}

pub fn write_atomic(path: &Path, contents: &str) -> Result<(), EmitError> {
    let err = |source| EmitError {
        path: path.display().to_string(),
        source,
    };
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = std::fs::File::create(&tmp).map_err(err)?;
    f.write_all(contents.as_bytes()).map_err(err)?;
    f.sync_all().map_err(err)?;
    drop(f);
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        err(e)
    })
}

/// Writes the report to `path`, or to stdout when `path` is `None`.
pub fn emit_report<T: Serialize>(report: &T, path: Option<&Path>) -> Result<(), EmitError> {
    let text = to_canonical_json(report);
    match path {
        Some(p) => write_atomic(p, &text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| EmitError {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}
