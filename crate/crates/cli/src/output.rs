use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::config::Format;
use crate::error::CliError;

/// Fixed formatting for floating-point table cells.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.12e}")
}

/// Destination directory and serialization choices for one run.
#[derive(Clone, Debug)]
pub struct Output {
    pub dir: PathBuf,
    pub format: Format,
    pub timestamp: bool,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_unix: Option<u64>,
    verified: bool,
    report: &'a T,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    columns: &'a [&'a str],
    rows: &'a [Vec<String>],
}

impl Output {
    fn path(&self, name: &str) -> Result<PathBuf, CliError> {
        std::fs::create_dir_all(&self.dir).map_err(|source| CliError::Io {
            path: self.dir.clone(),
            source,
        })?;
        Ok(self.dir.join(name))
    }

    fn write(&self, path: &Path, bytes: &[u8]) -> Result<(), CliError> {
        std::fs::write(path, bytes).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Writes `<stem>.json` wrapping the report with run metadata.
    pub fn report<T: Serialize>(
        &self,
        stem: &str,
        command: &str,
        verified: bool,
        report: &T,
    ) -> Result<PathBuf, CliError> {
        let env = Envelope {
            command,
            version: env!("CARGO_PKG_VERSION"),
            generated_unix: self.timestamp.then(|| {
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0)
            }),
            verified,
            report,
        };
        let mut text = serde_json::to_string_pretty(&env).expect("reports serialize");
        text.push('\n');
        let path = self.path(&format!("{stem}.json"))?;
        self.write(&path, text.as_bytes())?;
        Ok(path)
    }

    /// Writes a table as `<stem>.csv` or `<stem>.json` depending on the format.
    pub fn table(&self, stem: &str, columns: &[&str], rows: &[Vec<String>]) -> Result<PathBuf, CliError> {
        let (path, bytes) = match self.format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let to_err = |e: csv::Error| CliError::Config(format!("csv: {e}"));
                w.write_record(columns).map_err(to_err)?;
                for r in rows {
                    w.write_record(r).map_err(to_err)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Config(format!("csv: {e}")))?;
                (self.path(&format!("{stem}.csv"))?, bytes)
            }
            Format::Json => {
                let mut text = serde_json::to_string_pretty(&JsonTable { columns, rows })
                    .expect("tables serialize");
                text.push('\n');
                (self.path(&format!("{stem}.json"))?, text.into_bytes())
            }
        };
        self.write(&path, &bytes)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_cells() {
        assert_eq!(fmt_f64(1.4), "1.400000000000e0");
        assert_eq!(fmt_f64(-0.05), "-5.000000000000e-2");
        assert_eq!(fmt_f64(0.0), "0.000000000000e0");
    }
}
