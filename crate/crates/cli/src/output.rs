//! Output plumbing: surd display with 50-digit decimals, CSV assembly, and
//! atomic file writes.

use divcell_core::homogeneous::Extended;
use divcell_core::Surd;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const DECIMAL_DIGITS: usize = 50;

/// Exact literal plus a 50-significant-digit decimal.
pub fn surd_json(x: &Surd) -> Value {
    json!({ "exact": x.to_string(), "decimal_50": x.decimal(DECIMAL_DIGITS) })
}

pub fn extended_literal(v: &Extended) -> String {
    match v {
        Extended::Finite(x) => x.to_string(),
        Extended::Infinite => "infinity".to_string(),
    }
}

pub fn extended_decimal(v: &Extended) -> String {
    match v {
        Extended::Finite(x) => x.decimal(DECIMAL_DIGITS),
        Extended::Infinite => "infinity".to_string(),
    }
}

/// Writes `content` to the path atomically (temp file in the same
/// directory, then rename), or to stdout when no path is given.
pub fn write_out(out: Option<&Path>, content: &str) -> std::io::Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
        Some(path) => {
            let tmp = temp_sibling(path);
            std::fs::write(&tmp, content)?;
            std::fs::rename(&tmp, path)
        }
    }
}

fn temp_sibling(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

/// Simple CSV assembly; all emitted values are comma-free by construction
/// (surd literals, integers, decimals).
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Csv {
        Csv { out: format!("{}\n", header.join(",")) }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.out.push_str(&fields.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub fn pretty(v: &Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("serializable");
    text.push('\n');
    text
}
