//! Global options, the JSON config file, and their merge order:
//! defaults < config file < command-line flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Well half-width, in units of the oscillator scale length.
    #[arg(long, global = true)]
    pub a: Option<f64>,

    /// Particle mass (natural units).
    #[arg(long, global = true)]
    pub m: Option<f64>,

    /// Oscillator angular frequency (natural units).
    #[arg(long, global = true)]
    pub omega: Option<f64>,

    /// Real part of the coherent-state label beta.
    #[arg(long = "beta-re", global = true)]
    pub beta_re: Option<f64>,

    /// Imaginary part of the coherent-state label beta.
    #[arg(long = "beta-im", global = true)]
    pub beta_im: Option<f64>,

    /// Quadrature phase, degrees.
    #[arg(long = "phi-deg", global = true)]
    pub phi_deg: Option<f64>,

    /// Relative probability weight allowed outside the truncated basis.
    #[arg(long = "tail-eps", global = true)]
    pub tail_eps: Option<f64>,

    /// Energy tolerance for the grid eigensolvers.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Output file; stdout when omitted. Relative paths are joined onto
    /// $FOSC_OUT_DIR when that variable is set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format for tabular results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// JSON config file with keys a, m, omega, tail_eps, tol.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write a gnuplot script next to the data (requires --out).
    #[arg(long = "plot-script", global = true)]
    pub plot_script: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    a: Option<f64>,
    m: Option<f64>,
    omega: Option<f64>,
    tail_eps: Option<f64>,
    tol: Option<f64>,
}

/// Fully resolved scalar settings shared by all commands.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub a: f64,
    pub m: f64,
    pub omega: f64,
    pub beta: Complex64,
    pub phi_deg: f64,
    pub tail_eps: f64,
    pub tol: f64,
}

impl Settings {
    pub fn resolve(opts: &GlobalOpts) -> Result<Settings, CliError> {
        let file = match &opts.config {
            Some(path) => load_config(path)?,
            None => FileConfig::default(),
        };
        let pick = |flag: Option<f64>, from_file: Option<f64>, default: f64| {
            flag.or(from_file).unwrap_or(default)
        };
        Ok(Settings {
            a: pick(opts.a, file.a, 1.0),
            m: pick(opts.m, file.m, 1.0),
            omega: pick(opts.omega, file.omega, 1.0),
            beta: Complex64::new(opts.beta_re.unwrap_or(1.0), opts.beta_im.unwrap_or(0.0)),
            phi_deg: opts.phi_deg.unwrap_or(0.0),
            tail_eps: pick(opts.tail_eps, file.tail_eps, fosc_core::DEFAULT_EPS_TAIL),
            tol: pick(opts.tol, file.tol, 1e-5),
        })
    }

    pub fn params(&self) -> Result<fosc_core::ConfinementParams, CliError> {
        fosc_core::derive_params(self.a, self.m, self.omega).map_err(CliError::Core)
    }

    pub fn phi_rad(&self) -> f64 {
        self.phi_deg.to_radians()
    }
}

fn load_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Msg(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Msg(format!("bad config {}: {e}", path.display())))
}
