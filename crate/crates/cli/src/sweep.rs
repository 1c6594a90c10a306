//! Sweep grids for the statistics commands.

use clap::ValueEnum;

use crate::CliError;

/// Which quantity a sweep runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVariable {
    /// Well half-width in scale-length units.
    #[value(name = "a_l")]
    WellWidth,
    /// Squared magnitude of the state label.
    #[value(name = "beta_sq")]
    BetaSq,
    /// Quadrature phase in degrees.
    #[value(name = "phi")]
    PhiDeg,
}

/// An inclusive linear grid `start ..= stop` with `steps` points.
#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, start: f64, stop: f64, steps: usize) -> Result<Self, CliError> {
        if steps < 2 {
            return Err(CliError::Msg(format!("sweep needs at least 2 steps, got {steps}")));
        }
        if start.partial_cmp(&stop) != Some(std::cmp::Ordering::Less) {
            return Err(CliError::Msg(format!(
                "sweep start must be below stop, got {start} .. {stop}"
            )));
        }
        let domain_ok = match variable {
            SweepVariable::WellWidth => start > 0.0,
            SweepVariable::BetaSq => start >= 0.0,
            SweepVariable::PhiDeg => true,
        };
        if !domain_ok {
            return Err(CliError::Msg(format!(
                "sweep start {start} outside the domain of {variable:?}"
            )));
        }
        Ok(SweepSpec {
            variable,
            start,
            stop,
            steps,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let h = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.start + h * i as f64).collect()
    }

    pub fn describe(&self) -> String {
        format!(
            "{:?} from {} to {} in {} steps",
            self.variable, self.start, self.stop, self.steps
        )
    }
}
