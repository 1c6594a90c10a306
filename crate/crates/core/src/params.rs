//! Unit system and derived confinement constants.
//!
//! Everything downstream works in natural units `hbar = 1`. A well of
//! half-width `a` around the origin confines an oscillator of mass `m` and
//! frequency `omega`; the derived constants are
//!
//! ```text
//! gamma  = pi^2 / (8 a^2 m)          confinement energy scale
//! gamma' = gamma / omega             dimensionless deformation strength
//! eta    = sqrt(gamma'^2 + 1)
//! l0     = 1 / (m omega)             scale length of the oscillator
//! ```
//!
//! and the deformation function of the confined oscillator is
//! `f(n) = sqrt(gamma' n + eta)`.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive_finite, Error, Result};

/// Physical inputs plus the derived confinement constants.
///
/// Derived fields are computed once at construction and stored, so every
/// consumer sees bitwise-identical values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsInput", into = "ParamsInput")]
pub struct ConfinementParams {
    /// Well half-width.
    pub a: f64,
    /// Particle mass.
    pub m: f64,
    /// Oscillator angular frequency.
    pub omega: f64,
    /// Confinement energy scale `pi^2 / (8 a^2 m)`.
    pub gamma: f64,
    /// `gamma / omega`.
    pub gamma_prime: f64,
    /// `sqrt(gamma_prime^2 + 1)`.
    pub eta: f64,
    /// Scale length `1 / (m omega)`.
    pub l0: f64,
}

/// Flat serialization form: only the physical inputs persist; derived
/// fields are always recomputed on load.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct ParamsInput {
    a: f64,
    #[serde(default = "one")]
    m: f64,
    #[serde(default = "one")]
    omega: f64,
}

fn one() -> f64 {
    1.0
}

impl TryFrom<ParamsInput> for ConfinementParams {
    type Error = Error;
    fn try_from(p: ParamsInput) -> Result<Self> {
        derive_params(p.a, p.m, p.omega)
    }
}

impl From<ConfinementParams> for ParamsInput {
    fn from(p: ConfinementParams) -> Self {
        ParamsInput {
            a: p.a,
            m: p.m,
            omega: p.omega,
        }
    }
}

impl ConfinementParams {
    /// The deformation function `f(n) = sqrt(gamma' n + eta)` of this well.
    pub fn deformation(&self) -> DeformationFunction {
        DeformationFunction {
            gamma_prime: self.gamma_prime,
            eta: self.eta,
        }
    }

    /// Half-width in units of the scale length, `a / l0`.
    pub fn a_over_l0(&self) -> f64 {
        self.a / self.l0
    }
}

/// Derives all confinement constants from the physical inputs.
pub fn derive_params(a: f64, m: f64, omega: f64) -> Result<ConfinementParams> {
    ensure_positive_finite("a", a)?;
    ensure_positive_finite("m", m)?;
    ensure_positive_finite("omega", omega)?;
    let gamma = std::f64::consts::PI.powi(2) / (8.0 * a * a * m);
    let gamma_prime = gamma / omega;
    let eta = (gamma_prime * gamma_prime + 1.0).sqrt();
    Ok(ConfinementParams {
        a,
        m,
        omega,
        gamma,
        gamma_prime,
        eta,
        l0: 1.0 / (m * omega),
    })
}

/// The number-dependent deformation `f(n) = sqrt(gamma' n + eta)`.
///
/// `gamma_prime = 0`, `eta = 1` is the undeformed oscillator (`f == 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationFunction {
    pub gamma_prime: f64,
    pub eta: f64,
}

impl DeformationFunction {
    /// Builds a deformation with explicit parameters.
    pub fn new(gamma_prime: f64, eta: f64) -> Result<Self> {
        if !gamma_prime.is_finite() || gamma_prime < 0.0 {
            return Err(Error::domain(format!(
                "gamma_prime must be finite and non-negative, got {gamma_prime}"
            )));
        }
        if !eta.is_finite() || eta <= 0.0 {
            return Err(Error::domain(format!(
                "eta must be finite and positive, got {eta}"
            )));
        }
        Ok(DeformationFunction { gamma_prime, eta })
    }

    /// The undeformed limit `f(n) == 1`.
    pub fn harmonic() -> Self {
        DeformationFunction {
            gamma_prime: 0.0,
            eta: 1.0,
        }
    }

    /// `f(n) = sqrt(gamma' n + eta)`.
    pub fn eval(&self, n: usize) -> f64 {
        self.eval_squared(n).sqrt()
    }

    /// `f(n)^2 = gamma' n + eta`, exact.
    pub fn eval_squared(&self, n: usize) -> f64 {
        self.gamma_prime * n as f64 + self.eta
    }

    /// True when this is the undeformed oscillator.
    pub fn is_harmonic(&self) -> bool {
        self.gamma_prime == 0.0 && self.eta == 1.0
    }
}

/// `f(n)` for the confined well described by `p`.
pub fn deformation_f(n: usize, p: &ConfinementParams) -> f64 {
    p.deformation().eval(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn derive_params_a4() {
        let p = derive_params(4.0, 1.0, 1.0).unwrap();
        // gamma = pi^2/128; then eta = sqrt(1 + gamma^2)
        assert!((p.gamma - PI * PI / 128.0).abs() < 1e-16);
        assert!((p.gamma - 0.077_106_284_383_510_61).abs() < 1e-15);
        assert!((p.eta - 1.0029682841901985).abs() < 1e-14);
        assert_eq!(p.gamma, p.gamma_prime);
        assert!((p.l0 * p.m * p.omega - 1.0).abs() < 1e-16);
    }

    #[test]
    fn derive_params_a_half() {
        let p = derive_params(0.5, 1.0, 1.0).unwrap();
        assert!((p.gamma - PI * PI / 2.0).abs() < 1e-14);
        assert!((p.gamma - 4.934_802_200_544_679).abs() < 1e-13);
    }

    #[test]
    fn free_oscillator_limit() {
        let p = derive_params(1e8, 1.0, 1.0).unwrap();
        assert!(p.gamma_prime < 1e-15);
        assert!((p.eta - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_forms_identical() {
        // 4 pi^2 / (32 a^2 m) == pi^2 / (8 a^2 m)
        for a in [0.3, 0.5, 1.0, 2.0, 7.5] {
            let p = derive_params(a, 1.3, 0.8).unwrap();
            let alt = 4.0 * PI * PI / (32.0 * a * a * 1.3);
            assert_eq!(p.gamma, alt);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(derive_params(0.0, 1.0, 1.0).is_err());
        assert!(derive_params(1.0, -2.0, 1.0).is_err());
        assert!(derive_params(1.0, 1.0, f64::NAN).is_err());
        assert!(derive_params(f64::INFINITY, 1.0, 1.0).is_err());
        let msg = derive_params(1.0, 0.0, 1.0).unwrap_err().to_string();
        assert!(msg.contains('m'), "error should name the field: {msg}");
    }

    #[test]
    fn deformation_values() {
        // harmonic: f == 1 for any n
        let f = DeformationFunction::harmonic();
        for n in [0usize, 1, 5, 400] {
            assert_eq!(f.eval(n), 1.0);
        }
        // gamma'=1, eta=1: f(2) = sqrt(3)
        let f = DeformationFunction::new(1.0, 1.0).unwrap();
        assert!((f.eval(2) - 3f64.sqrt()).abs() < 1e-16);
        // confined at a=1: f(0) = sqrt(eta), eta = sqrt((pi^2/8)^2 + 1)
        let p = derive_params(1.0, 1.0, 1.0).unwrap();
        let eta = ((PI * PI / 8.0).powi(2) + 1.0).sqrt();
        assert!((deformation_f(0, &p) - eta.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn deformation_monotone_in_n_and_limit_in_a() {
        let p = derive_params(0.7, 1.0, 1.0).unwrap();
        let f = p.deformation();
        for n in 0..50 {
            assert!(f.eval(n + 1) > f.eval(n));
        }
        // fixed n: f -> 1 monotonically as a grows
        let mut last = f64::INFINITY;
        for a in [0.5, 1.0, 2.0, 4.0, 8.0, 64.0, 1024.0, 8192.0] {
            let v = deformation_f(3, &derive_params(a, 1.0, 1.0).unwrap());
            assert!(v < last && v >= 1.0);
            last = v;
        }
        assert!((last - 1.0).abs() < 1e-7);
    }

    #[test]
    fn gamma_prime_scale_consistency() {
        // gamma' is dimensionless and depends on (a, m, omega) only through
        // a^2 m omega, i.e. through a in units of the oscillator length
        // 1/sqrt(m omega).
        for (a, m, w) in [(1.5, 2.0, 0.5), (0.4, 1.0, 3.0), (6.0, 0.25, 0.25)] {
            let p = derive_params(a, m, w).unwrap();
            let q = derive_params(a * (m * w).sqrt(), 1.0, 1.0).unwrap();
            assert!((p.gamma_prime - q.gamma_prime).abs() <= 1e-12 * p.gamma_prime);
        }
    }

    #[test]
    fn json_round_trip_recomputes_derived() {
        let p = derive_params(2.0, 1.0, 1.0).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"a\":2.0"), "flat input-only form: {s}");
        assert!(!s.contains("gamma"), "derived fields must not serialize: {s}");
        let back: ConfinementParams = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
        // derived fields are never read from files
        let tampered: ConfinementParams =
            serde_json::from_str(r#"{"a": 2.0, "m": 1.0, "omega": 1.0}"#).unwrap();
        assert_eq!(tampered.gamma, p.gamma);
    }
}
