//! Engine configuration shared by every subcommand.
//!
//! Sources, lowest precedence first: built-in defaults, the
//! `MERTENS_LAB_WORKERS` environment variable, a `key = value` config file,
//! command-line flags.

use std::env;
use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use mertens_lab::SieveOpts;

/// Segments shorter than this thrash the prime tables more than they save
/// in memory; the engine refuses them.
pub const MIN_SEGMENT_SIZE: usize = 1 << 16;

/// Environment variable supplying the default worker count.
pub const WORKERS_ENV: &str = "MERTENS_LAB_WORKERS";

/// Output shape for a command. Which shapes a command accepts depends on
/// its schema; the dispatcher rejects mismatches before computing anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plotdata,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Plotdata => "plotdata",
        };
        f.write_str(name)
    }
}

/// Resolved sieve knobs. Results never depend on them; wall time does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub segment_size: usize,
    pub worker_count: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { segment_size: 1 << 20, worker_count: 1 }
    }
}

impl EngineConfig {
    /// Applies the precedence chain and validates the result.
    pub fn resolve(
        file: Option<&Path>,
        flag_segment_size: Option<usize>,
        flag_workers: Option<usize>,
    ) -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(workers) = env_workers()? {
            cfg.worker_count = workers;
        }
        if let Some(path) = file {
            cfg.apply_file(path)?;
        }
        if let Some(segment_size) = flag_segment_size {
            cfg.segment_size = segment_size;
        }
        if let Some(workers) = flag_workers {
            cfg.worker_count = workers;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = format!("{}:{}", path.display(), idx + 1);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("{at}: expected key = value, got {line:?}"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "segment_size" => {
                    self.segment_size = value
                        .parse()
                        .with_context(|| format!("{at}: segment_size {value:?}"))?;
                }
                "workers" => {
                    self.worker_count =
                        value.parse().with_context(|| format!("{at}: workers {value:?}"))?;
                }
                _ => bail!("{at}: unknown key {key:?} (expected segment_size or workers)"),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.worker_count < 1 {
            bail!("worker count must be at least 1");
        }
        if self.segment_size < MIN_SEGMENT_SIZE {
            bail!(
                "segment size must be at least {MIN_SEGMENT_SIZE}, got {}",
                self.segment_size
            );
        }
        Ok(())
    }

    pub fn sieve_opts(&self) -> SieveOpts {
        SieveOpts { segment_len: self.segment_size, workers: self.worker_count }
    }
}

fn env_workers() -> Result<Option<usize>> {
    match env::var(WORKERS_ENV) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map(Some)
            .with_context(|| format!("{WORKERS_ENV} must be a positive integer, got {raw:?}")),
        Err(env::VarError::NotPresent) => Ok(None),
        Err(err) => Err(anyhow!("{WORKERS_ENV}: {err}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn defaults_are_valid() {
        let cfg = EngineConfig::default();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.worker_count, 1);
    }

    #[test]
    fn file_overrides_defaults_and_flags_override_file() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# comment line").unwrap();
        writeln!(file, "workers = 3").unwrap();
        writeln!(file, "segment_size = 131072").unwrap();
        file.flush().unwrap();

        let cfg = EngineConfig::resolve(Some(file.path()), None, None).unwrap();
        assert_eq!((cfg.segment_size, cfg.worker_count), (131_072, 3));

        let cfg = EngineConfig::resolve(Some(file.path()), Some(1 << 20), Some(5)).unwrap();
        assert_eq!((cfg.segment_size, cfg.worker_count), (1 << 20, 5));
    }

    #[test]
    fn rejects_unknown_keys_with_line_context() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "threads = 3").unwrap();
        file.flush().unwrap();

        let err = EngineConfig::resolve(Some(file.path()), None, None).unwrap_err();
        let msg = format!("{err:#}");
        assert!(msg.contains(":1"), "missing line context: {msg}");
        assert!(msg.contains("threads"), "missing key context: {msg}");
    }

    #[test]
    fn rejects_out_of_range_values() {
        assert!(EngineConfig::resolve(None, Some(1024), None).is_err());
        assert!(EngineConfig::resolve(None, None, Some(0)).is_err());
    }
}
