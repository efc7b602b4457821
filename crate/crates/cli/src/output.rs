//! Deterministic text emission: fixed-width float formatting, CSV and JSON
//! assembly in memory, and a single write per output file.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::CliError;

/// 17 significant digits in scientific notation; round-trips every f64 and
/// never depends on locale or shortest-representation heuristics.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Optional float: empty CSV field when absent.
pub fn fmt_opt_csv(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Optional float: JSON null when absent.
pub fn fmt_opt_json(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_else(|| "null".to_string())
}

/// Where a command's output goes; the content is fully assembled before the
/// single write, so identical configs produce byte-identical files.
pub struct OutputTarget {
    path: Option<PathBuf>,
}

impl OutputTarget {
    pub fn new(path: Option<PathBuf>) -> Self {
        Self { path }
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn write(&self, content: &str) -> Result<(), CliError> {
        match &self.path {
            Some(path) => write_file(path, content),
            None => {
                print!("{content}");
                std::io::stdout().flush().map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
            }
        }
    }

    /// Writes a companion document: to `<path>.json` when writing files, or
    /// appended after a blank line on stdout.
    pub fn write_sidecar(&self, content: &str) -> Result<(), CliError> {
        match &self.path {
            Some(path) => {
                let mut sidecar = path.as_os_str().to_owned();
                sidecar.push(".json");
                write_file(Path::new(&sidecar), content)
            }
            None => {
                print!("\n{content}");
                std::io::stdout().flush().map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
            }
        }
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
