//! `fosc mandel`: Mandel parameter versus well width, one curve per
//! squared label magnitude.

use clap::Args;
use num_complex::Complex64;
use rayon::prelude::*;

use fosc_core::{
    build_nlcs_deformed, derive_params, mandel_parameter, DeformationFunction,
};

use crate::config::{Format, GlobalOpts, Settings};
use crate::output::{self, PlotSpec};
use crate::sweep::{SweepSpec, SweepVariable};
use crate::CliError;

#[derive(Debug, Args)]
pub struct MandelArgs {
    #[arg(long = "a-start", default_value_t = 0.3)]
    pub a_start: f64,
    #[arg(long = "a-stop", default_value_t = 10.0)]
    pub a_stop: f64,
    #[arg(long = "a-steps", default_value_t = 98)]
    pub a_steps: usize,

    /// Squared label magnitudes, one output curve each.
    #[arg(long = "beta-sq-list", value_delimiter = ',', default_values_t = [0.5, 1.0, 1.5, 4.0])]
    pub beta_sq_list: Vec<f64>,

    /// Drop the deformation (undeformed oscillator): M is identically 0.
    #[arg(long)]
    pub free: bool,
}

pub fn run(args: &MandelArgs, settings: &Settings, opts: &GlobalOpts) -> Result<u8, CliError> {
    let sweep = SweepSpec::new(SweepVariable::WellWidth, args.a_start, args.a_stop, args.a_steps)?;
    for &b2 in &args.beta_sq_list {
        if !b2.is_finite() || b2 < 0.0 {
            return Err(CliError::Msg(format!("beta-sq must be >= 0, got {b2}")));
        }
    }
    let widths = sweep.values();

    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for &b2 in &args.beta_sq_list {
        let beta = Complex64::new(b2.sqrt(), 0.0);
        let curve: Vec<(f64, f64, f64)> = widths
            .par_iter()
            .map(|&a| -> Result<(f64, f64, f64), fosc_core::Error> {
                let f = if args.free {
                    DeformationFunction::harmonic()
                } else {
                    derive_params(a, settings.m, settings.omega)?.deformation()
                };
                let st = build_nlcs_deformed(beta, f, settings.tail_eps)?;
                Ok((a, b2, mandel_parameter(&st)))
            })
            .collect::<Result<_, _>>()
            .map_err(CliError::Core)?;
        rows.extend(curve);
    }

    let content = match opts.format {
        Format::Csv => {
            let mut s = output::provenance(
                "mandel",
                &[
                    ("m", output::fmt(settings.m)),
                    ("omega", output::fmt(settings.omega)),
                    ("tail_eps", output::fmt(settings.tail_eps)),
                    ("sweep", sweep.describe()),
                    ("beta_sq_list", format!("{:?}", args.beta_sq_list)),
                    ("free", args.free.to_string()),
                    ("beta_phase", "real positive".to_string()),
                ],
            );
            s.push_str("a_l,beta_sq,mandel_m\n");
            for (a, b2, m) in &rows {
                s.push_str(&format!("{:.6},{:.4},{}\n", a, b2, output::fmt(*m)));
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&serde_json::json!({
                "command": "mandel",
                "sweep": sweep.describe(),
                "free": args.free,
                "tail_eps": settings.tail_eps,
                "rows": rows.iter().map(|(a, b2, m)| {
                    serde_json::json!({"a_l": a, "beta_sq": b2, "mandel_m": m})
                }).collect::<Vec<_>>(),
            }))
            .map_err(|e| CliError::Msg(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    output::write_output(opts.out.as_deref(), &content)?;
    if let Some(script) = &opts.plot_script {
        output::write_plot_script(
            script,
            opts.out.as_deref(),
            &PlotSpec {
                title: "Mandel parameter vs well width",
                xlabel: "a / l0",
                ylabel: "M",
                x_col: 1,
                y_col: 3,
                curve_col: 2,
            },
        )?;
    }
    Ok(0)
}
