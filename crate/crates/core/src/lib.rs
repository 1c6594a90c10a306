//! Confined harmonic oscillator as a deformed oscillator.
//!
//! A harmonic oscillator confined to a one-dimensional infinite well has an
//! unequally spaced spectrum, which can be encoded in a number-dependent
//! deformation of the ladder algebra, `f(n) = sqrt(gamma' n + eta)`. This
//! crate provides:
//!
//! - [`params`]: the unit system and derived confinement constants;
//! - [`fock`]: truncated number-basis operators and an expectation engine;
//! - [`spectra`]: the closed-form model spectrum, the deformed-oscillator
//!   energy, and an independent finite-difference eigensolver;
//! - [`nlcs`]: nonlinear coherent states (eigenstates of the deformed
//!   annihilation operator) and their statistics — photon distribution,
//!   Mandel parameter, quadrature squeezing, completeness-measure moments;
//! - [`special`]: modified Bessel functions of real order and the adaptive
//!   quadrature backing the moment checks.

pub mod error;
pub mod fock;
pub mod nlcs;
pub mod params;
pub mod special;
pub mod spectra;

pub use error::{Error, Result};
pub use fock::{
    build_deformed, build_ladder, expectation, heisenberg_phase_g, ladder_from_spectrum,
    FockOperator, FockVector,
};
pub use nlcs::{
    build_nlcs, build_nlcs_deformed, eigenstate_residual, gen_bessel_i, generalized_factorial,
    identity_moment_check, identity_moments, mandel_parameter, normalization_sq_bessel,
    normalization_sq_direct, photon_distribution, quadrature_variance, squeeze_s,
    squeeze_s_deformed, MomentAlpha, MomentReport, MomentRow, NlcsState, DEFAULT_EPS_TAIL,
};
pub use params::{derive_params, deformation_f, ConfinementParams, DeformationFunction};
pub use spectra::{
    deformed_energy, model_energy, shift_to_ground, solve_dirichlet, solve_model_potential,
    SpectrumResult,
};
