//! `fosc identity`: diagonal moments of the completeness measure.
//!
//! Diagnostic command: exits 0 regardless of how far the moments sit from
//! unity; the point is the report.

use clap::Args;

use fosc_core::{identity_moments, MomentAlpha};

use crate::config::{Format, GlobalOpts, Settings};
use crate::output;
use crate::CliError;

#[derive(Debug, Args)]
pub struct IdentityArgs {
    /// Highest moment index to evaluate.
    #[arg(long = "n-max", default_value_t = 10)]
    pub n_max: usize,

    /// Measure order offset: `eta` or a numeric value.
    #[arg(long, default_value = "eta")]
    pub alpha: String,

    /// Undeformed limit (flat measure; moments are exactly 1).
    #[arg(long)]
    pub free: bool,
}

pub fn run(args: &IdentityArgs, settings: &Settings, opts: &GlobalOpts) -> Result<u8, CliError> {
    let alpha = match args.alpha.as_str() {
        "eta" => MomentAlpha::Eta,
        other => MomentAlpha::Value(other.parse::<f64>().map_err(|_| {
            CliError::Msg(format!("alpha must be 'eta' or a number, got '{other}'"))
        })?),
    };
    let report = if args.free {
        identity_moments(0.0, 1.0, args.n_max, alpha)
    } else {
        let p = settings.params()?;
        identity_moments(p.gamma_prime, p.eta, args.n_max, alpha)
    }
    .map_err(CliError::Core)?;

    let content = match opts.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| CliError::Msg(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = output::provenance(
                "identity",
                &[
                    ("a", output::fmt(settings.a)),
                    ("m", output::fmt(settings.m)),
                    ("omega", output::fmt(settings.omega)),
                    ("free", args.free.to_string()),
                ],
            );
            s.push_str(&report.to_csv());
            s
        }
    };
    output::write_output(opts.out.as_deref(), &content)?;
    Ok(0)
}
