//! Parameter resolution: config file, then flags, then preset defaults.
//!
//! The config file is flat `key = value` text, one pair per line, with `#`
//! comments. Flags override file values; both override preset defaults for
//! the run controls (tmax, samples, tol) but conflict with the preset for
//! the physical parameters.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use dicke_pair::{find_preset, FigurePreset, PairGeometry, SystemParams};

use crate::CliError;

/// Output format of the data files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    /// Comma-separated values with a header line.
    Csv,
    /// The same table as an array of row objects plus a metadata object.
    Json,
}

/// Raw option set shared by the simulation subcommands; every field is
/// optional until resolution.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct RunArgs {
    /// Rabi frequency Ω0 in units of γ
    #[arg(long)]
    pub omega0: Option<f64>,
    /// Dipole-dipole shift Ω12 in units of γ (direct parameter source)
    #[arg(long)]
    pub omega12: Option<f64>,
    /// Collective decay γ12 in units of γ (direct parameter source)
    #[arg(long)]
    pub gamma12: Option<f64>,
    /// Interatomic separation r12/λ (geometry parameter source)
    #[arg(long)]
    pub r12: Option<f64>,
    /// Dipole angle θ in radians (with --r12; default π/2)
    #[arg(long)]
    pub theta: Option<f64>,
    /// Time span γt of the series
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Number of samples in the series
    #[arg(long)]
    pub samples: Option<usize>,
    /// Integrator tolerance (absolute and relative)
    #[arg(long)]
    pub tol: Option<f64>,
    /// Figure preset name (e.g. fig2-n1, fig3b, fig11)
    #[arg(long)]
    pub preset: Option<String>,
    /// Output file; stdout when omitted. Relative paths land in
    /// $DICKE_PAIR_OUT_DIR when that is set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Config file with `key = value` lines; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fully resolved run settings.
#[derive(Clone, Debug)]
pub struct Settings {
    pub params: SystemParams,
    pub t_max: f64,
    pub n_samples: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub preset: Option<&'static str>,
}

impl RunArgs {
    /// Merge the config file (if any) under the flags and resolve.
    pub fn resolve(&self) -> Result<Settings, CliError> {
        let mut merged = self.clone();
        if let Some(path) = &self.config {
            let file = parse_config_file(path)?;
            merged.apply_file_defaults(&file)?;
        }
        merged.resolve_merged()
    }

    /// Fill every unset field from the parsed config file.
    fn apply_file_defaults(&mut self, file: &HashMap<String, String>) -> Result<(), CliError> {
        fn num(key: &str, raw: &str) -> Result<f64, CliError> {
            raw.parse()
                .map_err(|_| CliError::usage(format!("config key {key}: invalid number {raw:?}")))
        }
        for (key, raw) in file {
            match key.as_str() {
                "omega0" => fill(&mut self.omega0, num(key, raw)?),
                "omega12" => fill(&mut self.omega12, num(key, raw)?),
                "gamma12" => fill(&mut self.gamma12, num(key, raw)?),
                "r12" => fill(&mut self.r12, num(key, raw)?),
                "theta" => fill(&mut self.theta, num(key, raw)?),
                "tmax" => fill(&mut self.tmax, num(key, raw)?),
                "tol" => fill(&mut self.tol, num(key, raw)?),
                "samples" => {
                    let v = raw.parse().map_err(|_| {
                        CliError::usage(format!("config key samples: invalid integer {raw:?}"))
                    })?;
                    fill(&mut self.samples, v);
                }
                "preset" => fill(&mut self.preset, raw.clone()),
                "out" => fill(&mut self.out, PathBuf::from(raw)),
                "format" => {
                    let v = match raw.as_str() {
                        "csv" => OutputFormat::Csv,
                        "json" => OutputFormat::Json,
                        other => {
                            return Err(CliError::usage(format!(
                                "config key format: expected csv or json, got {other:?}"
                            )))
                        }
                    };
                    fill(&mut self.format, v);
                }
                other => {
                    return Err(CliError::usage(format!("unknown config key {other:?}")));
                }
            }
        }
        Ok(())
    }

    fn resolve_merged(&self) -> Result<Settings, CliError> {
        let preset: Option<FigurePreset> = match &self.preset {
            Some(name) => Some(
                find_preset(name)
                    .ok_or_else(|| CliError::usage(format!("unknown preset {name:?}")))?,
            ),
            None => None,
        };

        let has_geometry = self.r12.is_some() || self.theta.is_some();
        let has_direct = self.omega12.is_some() || self.gamma12.is_some();
        if has_geometry && has_direct {
            return Err(CliError::usage(
                "conflicting parameter sources: give either --r12/--theta or \
                 --omega12/--gamma12, not both",
            ));
        }
        if preset.is_some() && (has_geometry || has_direct || self.omega0.is_some()) {
            return Err(CliError::usage(
                "conflicting parameter sources: a preset fixes omega0/omega12/gamma12",
            ));
        }

        let params = if let Some(p) = &preset {
            p.params()
        } else if has_geometry {
            let r12 = self
                .r12
                .ok_or_else(|| CliError::usage("--theta requires --r12"))?;
            let theta = self.theta.unwrap_or(std::f64::consts::FRAC_PI_2);
            let geom = PairGeometry::new(r12, theta).map_err(CliError::run)?;
            let omega0 = self
                .omega0
                .ok_or_else(|| CliError::usage("missing --omega0"))?;
            SystemParams::from_geometry(omega0, geom).map_err(CliError::run)?
        } else {
            let omega0 = self
                .omega0
                .ok_or_else(|| CliError::usage("missing --omega0 (or --preset/--config)"))?;
            SystemParams::new(
                omega0,
                self.omega12.unwrap_or(0.0),
                self.gamma12.unwrap_or(0.0),
            )
            .map_err(CliError::run)?
        };

        let t_max = self
            .tmax
            .or(preset.as_ref().map(|p| p.t_max))
            .unwrap_or(10.0);
        let n_samples = self
            .samples
            .or(preset.as_ref().map(|p| p.n_samples))
            .unwrap_or(1000);
        if !t_max.is_finite() || t_max <= 0.0 {
            return Err(CliError::usage("tmax must be positive"));
        }
        if n_samples < 2 {
            return Err(CliError::usage("samples must be at least 2"));
        }
        let tol = self.tol.unwrap_or(1e-9);
        if !tol.is_finite() || tol <= 0.0 {
            return Err(CliError::usage("tol must be positive"));
        }

        Ok(Settings {
            params,
            t_max,
            n_samples,
            tol,
            out: self.out.clone(),
            format: self.format.unwrap_or(OutputFormat::Csv),
            preset: preset.map(|p| p.name),
        })
    }
}

fn fill<T>(slot: &mut Option<T>, value: T) {
    if slot.is_none() {
        *slot = Some(value);
    }
}

/// Parse a flat `key = value` file with `#` comments.
pub fn parse_config_file(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, raw_line) in text.lines().enumerate() {
        let line = match raw_line.split_once('#') {
            Some((before, _)) => before,
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!(
                "config line {}: expected `key = value`, got {raw_line:?}",
                lineno + 1
            ))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}
