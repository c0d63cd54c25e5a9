//! Run configuration: defaults, optional key=value config file, the
//! HECKE_CACHE_DIR environment override, and command-line flags, merged in
//! that order (later wins).

use std::path::{Path, PathBuf};

use hecke_lab::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!(
                "output format must be csv or json, got {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub sieve_limit: u64,
    pub eigenform_n: u64,
    pub cache_dir: Option<PathBuf>,
    pub threads: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            sieve_limit: hecke_lab::arith::DEFAULT_SIEVE_LIMIT,
            eigenform_n: hecke_lab::eigenform::DEFAULT_N,
            cache_dir: None,
            threads: 1,
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    /// Apply a config file of `key=value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "{}:{}: expected key=value",
                    path.display(),
                    lineno + 1
                ))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let parse_u64 = |v: &str| {
                v.parse::<u64>().map_err(|_| {
                    Error::InvalidArgument(format!(
                        "{}:{}: {key} needs a positive integer",
                        path.display(),
                        lineno + 1
                    ))
                })
            };
            match key {
                "sieve_limit" => self.sieve_limit = parse_u64(value)?,
                "eigenform_n" => self.eigenform_n = parse_u64(value)?,
                "threads" => self.threads = parse_u64(value)? as usize,
                "cache_dir" => self.cache_dir = Some(PathBuf::from(value)),
                "format" => self.format = OutputFormat::parse(value)?,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "{}:{}: unknown config key `{other}`",
                        path.display(),
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn apply_env(&mut self) {
        if let Ok(dir) = std::env::var("HECKE_CACHE_DIR") {
            if !dir.is_empty() {
                self.cache_dir = Some(PathBuf::from(dir));
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sieve_limit < 2 || self.eigenform_n == 0 || self.threads == 0 {
            return Err(Error::InvalidArgument(
                "all configured limits must be positive (sieve_limit >= 2)".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn file_then_flag_precedence() {
        let dir = std::env::temp_dir().join(format!("hecke-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "# comment\nsieve_limit = 5000\nthreads=3\nformat=json").unwrap();
        drop(f);
        let mut cfg = RunConfig::default();
        cfg.apply_file(&path).unwrap();
        assert_eq!(cfg.sieve_limit, 5000);
        assert_eq!(cfg.threads, 3);
        assert_eq!(cfg.format, OutputFormat::Json);
        cfg.validate().unwrap();
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn unknown_key_rejected() {
        let dir = std::env::temp_dir().join(format!("hecke-cfg-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg");
        std::fs::write(&path, "sievelimit=10\n").unwrap();
        let mut cfg = RunConfig::default();
        assert!(cfg.apply_file(&path).is_err());
        let _ = std::fs::remove_dir_all(&dir);
    }
}
