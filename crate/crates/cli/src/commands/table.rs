//! `fosc table`: closed-form model spectrum next to both numerical solvers.

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use fosc_core::{derive_params, model_energy, solve_dirichlet, solve_model_potential};

use crate::config::{Format, GlobalOpts, Settings};
use crate::output::{self, PlotSpec};
use crate::CliError;

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Half-widths to tabulate, comma separated.
    #[arg(long = "a-list", value_delimiter = ',', default_values_t = [0.5, 1.0, 2.0, 3.0, 4.0])]
    pub a_list: Vec<f64>,

    /// Number of levels per half-width.
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
}

#[derive(Debug, Serialize)]
struct TableRow {
    n: usize,
    a: f64,
    e_model: f64,
    e_dirichlet: f64,
    e_model_numeric: f64,
    delta_dirichlet: f64,
    delta_model_numeric: f64,
    converged: bool,
}

#[derive(Debug, Serialize)]
struct TableReport {
    m: f64,
    omega: f64,
    tol: f64,
    rows: Vec<TableRow>,
}

pub fn run(args: &TableArgs, settings: &Settings, opts: &GlobalOpts) -> Result<u8, CliError> {
    for &a in &args.a_list {
        if !a.is_finite() || a <= 0.0 {
            return Err(CliError::Core(fosc_core::Error::domain(format!(
                "a must be positive, got {a}"
            ))));
        }
    }
    if args.levels == 0 {
        return Err(CliError::Core(fosc_core::Error::domain("levels must be >= 1")));
    }

    let per_width: Vec<Vec<TableRow>> = args
        .a_list
        .par_iter()
        .map(|&a| -> Result<Vec<TableRow>, fosc_core::Error> {
            let p = derive_params(a, settings.m, settings.omega)?;
            let dirichlet = solve_dirichlet(
                |x| 0.5 * p.m * p.omega * p.omega * x * x,
                a,
                p.m,
                args.levels,
                settings.tol,
            )?;
            let model_num = solve_model_potential(&p, args.levels, settings.tol)?;
            Ok((0..args.levels)
                .map(|n| {
                    let e_model = model_energy(n, &p);
                    TableRow {
                        n,
                        a,
                        e_model,
                        e_dirichlet: dirichlet.energies[n],
                        e_model_numeric: model_num.energies[n],
                        delta_dirichlet: e_model - dirichlet.energies[n],
                        delta_model_numeric: model_num.energies[n] - e_model,
                        converged: dirichlet.converged && model_num.converged,
                    }
                })
                .collect())
        })
        .collect::<Result<_, _>>()
        .map_err(CliError::Core)?;

    let rows: Vec<TableRow> = per_width.into_iter().flatten().collect();
    let any_unconverged = rows.iter().any(|r| !r.converged);

    let content = match opts.format {
        Format::Csv => {
            let mut s = output::provenance(
                "table",
                &[
                    ("m", output::fmt(settings.m)),
                    ("omega", output::fmt(settings.omega)),
                    ("tol", output::fmt(settings.tol)),
                    ("a_list", format!("{:?}", args.a_list)),
                    ("levels", args.levels.to_string()),
                ],
            );
            s.push_str(
                "n,a,e_model,e_dirichlet,e_model_numeric,delta_dirichlet,delta_model_numeric,converged\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "{},{:.4},{:.8},{:.8},{:.8},{},{},{}\n",
                    r.n,
                    r.a,
                    r.e_model,
                    r.e_dirichlet,
                    r.e_model_numeric,
                    output::fmt(r.delta_dirichlet),
                    output::fmt(r.delta_model_numeric),
                    r.converged
                ));
            }
            s
        }
        Format::Json => {
            let report = TableReport {
                m: settings.m,
                omega: settings.omega,
                tol: settings.tol,
                rows,
            };
            let mut s = serde_json::to_string_pretty(&report)
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
                title: "confined oscillator energy levels",
                xlabel: "a / l0",
                ylabel: "E / (hbar omega)",
                x_col: 2,
                y_col: 3,
                curve_col: 1,
            },
        )?;
    }
    Ok(if any_unconverged { 3 } else { 0 })
}
