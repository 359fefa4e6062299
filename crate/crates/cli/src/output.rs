//! Table assembly and deterministic CSV/JSON emission.
//!
//! Numbers are written in full double precision scientific notation and the
//! files carry no timestamps, so identical configs produce byte-identical
//! output.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::config::OutputFormat;
use crate::CliError;

/// Environment variable naming the default directory for relative output
/// paths.
pub const OUT_DIR_ENV: &str = "DICKE_PAIR_OUT_DIR";

/// One table cell.
#[derive(Clone, Debug)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// A rectangular table with named columns plus the metadata that the JSON
/// format carries alongside it.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Map<String, Value>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            metadata: Map::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Attach run metadata (parameters, tolerances, version).
    pub fn set_metadata(&mut self, settings: Option<&crate::config::Settings>, mode: &str) {
        let mut meta = Map::new();
        meta.insert("mode".into(), json!(mode));
        meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        if let Some(s) = settings {
            meta.insert(
                "params".into(),
                json!({
                    "omega0": s.params.omega0(),
                    "omega12": s.params.omega12(),
                    "gamma12": s.params.gamma12(),
                }),
            );
            meta.insert("tmax".into(), json!(s.t_max));
            meta.insert("samples".into(), json!(s.n_samples));
            meta.insert("tolerance".into(), json!(s.tol));
            if let Some(p) = s.preset {
                meta.insert("preset".into(), json!(p));
            }
        }
        self.metadata = meta;
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    write!(w, ",")?;
                }
                first = false;
                match cell {
                    Cell::Num(v) => write!(w, "{v:.17e}")?,
                    Cell::Text(s) => write!(w, "{s}")?,
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row.iter()) {
                    let v = match cell {
                        Cell::Num(x) => json!(x),
                        Cell::Text(s) => json!(s),
                    };
                    obj.insert((*name).to_string(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "metadata": Value::Object(self.metadata.clone()),
            "rows": rows,
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)
    }

    /// Write to `out` (resolving relative paths against the output-dir
    /// environment variable) or to stdout when no path is given.
    pub fn emit(&self, out: Option<&Path>, format: OutputFormat) -> Result<(), CliError> {
        match out {
            Some(path) => {
                let resolved = resolve_out_path(path);
                if let Some(parent) = resolved.parent() {
                    if !parent.as_os_str().is_empty() {
                        std::fs::create_dir_all(parent).map_err(|e| {
                            CliError::run(format!("cannot create {}: {e}", parent.display()))
                        })?;
                    }
                }
                let file = std::fs::File::create(&resolved).map_err(|e| {
                    CliError::run(format!("cannot create {}: {e}", resolved.display()))
                })?;
                let mut buf = std::io::BufWriter::new(file);
                self.write_to(&mut buf, format)
                    .map_err(|e| CliError::run(format!("write failed: {e}")))
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                self.write_to(&mut lock, format)
                    .map_err(|e| CliError::run(format!("write failed: {e}")))
            }
        }
    }

    fn write_to<W: Write>(&self, w: &mut W, format: OutputFormat) -> std::io::Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(w),
            OutputFormat::Json => self.write_json(w),
        }
    }
}

/// Relative output paths land in `$DICKE_PAIR_OUT_DIR` when it is set.
pub fn resolve_out_path(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}
