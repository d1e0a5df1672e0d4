//! Rendering and delivery helpers: round-trip-safe float formatting,
//! pretty JSON, and atomic file writes.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

/// Formats a float with 17 significant digits, enough to round-trip f64
/// exactly. Used for CSV and plot-data columns; JSON goes through
/// serde_json, whose shortest-round-trip encoding is equally lossless.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty JSON with a trailing newline.
pub fn pretty_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).context("serializing to JSON")?;
    text.push('\n');
    Ok(text)
}

/// Writes through a temp file in the destination directory, then renames
/// into place, so readers never observe a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temp file in {}", dir.display()))?;
    tmp.write_all(bytes).with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("moving output into place at {}", path.display()))?;
    Ok(())
}

/// Sends rendered text to the output path, or to stdout when none is given.
pub fn deliver(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).context("writing to stdout")?;
            out.flush().context("flushing stdout")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_through_seventeen_digits() {
        for &x in &[0.1, 2171.0000000000005, -0.894_427_190_999_915_86, 1e300, 5.0e-324] {
            let text = fmt_f64(x);
            let back: f64 = text.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {text} -> {back}");
        }
    }

    #[test]
    fn atomic_write_replaces_and_leaves_no_debris() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"first\n").unwrap();
        write_atomic(&path, b"second\n").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second\n");
        let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(entries.len(), 1, "temp files left behind");
    }

    #[test]
    fn atomic_write_fails_when_directory_is_missing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("out.csv");
        assert!(write_atomic(&path, b"x").is_err());
    }
}
