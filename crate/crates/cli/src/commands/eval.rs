//! `fosc eval`: one-shot access to the individual operations.

use clap::Subcommand;
use serde_json::json;

use fosc_core::{
    build_nlcs, deformed_energy, eigenstate_residual, gen_bessel_i, heisenberg_phase_g,
    mandel_parameter, model_energy, quadrature_variance, squeeze_s, squeeze_s_deformed,
};

use crate::config::{GlobalOpts, Settings};
use crate::output;
use crate::CliError;

#[derive(Debug, Subcommand)]
pub enum EvalOp {
    /// Derived confinement constants for the current inputs.
    Params,
    /// Closed-form model energy at level n.
    ModelEnergy {
        #[arg(long)]
        n: usize,
    },
    /// Deformed-oscillator energy at level n (Omega = omega).
    DeformedEnergy {
        #[arg(long)]
        n: usize,
    },
    /// Deformation function f(n).
    DeformationF {
        #[arg(long)]
        n: usize,
    },
    /// Generalized factorial g(n).
    GenFactorial {
        #[arg(long)]
        n: usize,
    },
    /// Heisenberg phase factor G(n).
    PhaseG {
        #[arg(long)]
        n: usize,
    },
    /// Generalized Bessel-type series at explicit parameters.
    GenBesselI {
        #[arg(long)]
        eta: f64,
        #[arg(long = "gamma-prime")]
        gamma_prime: f64,
        #[arg(long)]
        x: f64,
    },
    /// Mandel parameter of the state set by --a and --beta-re/--beta-im.
    Mandel,
    /// Quadrature variance at --phi-deg.
    QuadVar {
        #[arg(long)]
        deformed: bool,
    },
    /// Squeezing parameter s at --phi-deg.
    SqueezeS,
    /// Deformed squeezing combination S at --phi-deg.
    SqueezeSDeformed,
    /// Truncation residual of the constructed state.
    Residual,
}

pub fn run(op: &EvalOp, settings: &Settings, opts: &GlobalOpts) -> Result<u8, CliError> {
    let state = || -> Result<fosc_core::NlcsState, CliError> {
        build_nlcs(settings.beta, &settings.params()?, settings.tail_eps).map_err(CliError::Core)
    };
    let value = match op {
        EvalOp::Params => {
            let p = settings.params()?;
            let mut s = serde_json::to_string_pretty(&json!({
                "op": "params",
                "a": p.a, "m": p.m, "omega": p.omega,
                "gamma": p.gamma, "gamma_prime": p.gamma_prime,
                "eta": p.eta, "l0": p.l0,
            }))
            .map_err(|e| CliError::Msg(e.to_string()))?;
            s.push('\n');
            output::write_output(opts.out.as_deref(), &s)?;
            return Ok(0);
        }
        EvalOp::ModelEnergy { n } => ("model_energy", model_energy(*n, &settings.params()?)),
        EvalOp::DeformedEnergy { n } => {
            let p = settings.params()?;
            ("deformed_energy", deformed_energy(*n, &p.deformation(), p.omega))
        }
        EvalOp::DeformationF { n } => {
            ("deformation_f", settings.params()?.deformation().eval(*n))
        }
        EvalOp::GenFactorial { n } => (
            "generalized_factorial",
            settings.params()?.deformation().generalized_factorial(*n),
        ),
        EvalOp::PhaseG { n } => (
            "heisenberg_phase_g",
            heisenberg_phase_g(*n, &settings.params()?.deformation()),
        ),
        EvalOp::GenBesselI { eta, gamma_prime, x } => (
            "gen_bessel_i",
            gen_bessel_i(*eta, *gamma_prime, *x).map_err(CliError::Core)?,
        ),
        EvalOp::Mandel => ("mandel_parameter", mandel_parameter(&state()?)),
        EvalOp::QuadVar { deformed } => (
            "quadrature_variance",
            quadrature_variance(&state()?, settings.phi_rad(), *deformed),
        ),
        EvalOp::SqueezeS => ("squeeze_s", squeeze_s(&state()?, settings.phi_rad())),
        EvalOp::SqueezeSDeformed => (
            "squeeze_s_deformed",
            squeeze_s_deformed(&state()?, settings.phi_rad()),
        ),
        EvalOp::Residual => ("eigenstate_residual", eigenstate_residual(&state()?)),
    };
    let mut s = serde_json::to_string_pretty(&json!({
        "op": value.0,
        "a": settings.a,
        "beta_re": settings.beta.re,
        "beta_im": settings.beta.im,
        "phi_deg": settings.phi_deg,
        "value": value.1,
    }))
    .map_err(|e| CliError::Msg(e.to_string()))?;
    s.push('\n');
    output::write_output(opts.out.as_deref(), &s)?;
    Ok(0)
}
