//! Exact and approximate amplitude solutions for the harmonic oscillator with
//! a time-dependent frequency.
//!
//! The library is organised around the squared amplitude `xi²(t)` of a
//! Wronskian-normalised complex oscillator solution `w = xi e^{-i theta}`:
//!
//! * [`frequency`] — a catalog of amplitude profiles with closed-form
//!   frequencies `omega²(t)`, the amplitude → frequency construction, and
//!   tabulated/custom profiles;
//! * [`dynamics`] — adaptive integration of `u'' + omega²(t) u = 0`, nonlinear
//!   amplitude solutions built from solution pairs, normalised complex modes,
//!   conserved quantities, and residual oracles;
//! * [`quantum`] — number-state wavefunctions, normalisation and
//!   Schrödinger-residual checks, dispersions, and invariant expectations;
//! * [`perturb`] — the iterative amplitude scheme for slowly-varying
//!   frequencies and its WKB limits;
//! * [`validate`] — the machine-readable self-check suite used by the CLI.
//!
//! Units: `hbar = 1` and mass `m = 1` throughout.

pub mod error;
pub mod fd;
pub mod rng;
pub mod quad;
pub mod interp;
pub mod ode;
pub mod frequency;
pub mod dynamics;
pub mod quantum;
pub mod perturb;
pub mod validate;

pub use error::{Error, Result};
pub use frequency::{construct_frequency, FrequencyModel, ValidityDomain};
pub use dynamics::{
    anchored_mode, complex_mode_from_pair, ermakov_invariant, gelfand_dikii_residual,
    integrate_oscillator, integrate_pair, mode_from_squeeze, phase_integral, pinney_residual,
    pinney_solution, wronskian, ModeFunction, PinneyCoefficients, Trajectory,
};
pub use ode::Tolerances;
pub use quantum::{
    hermite, invariant_expectation, schrodinger_residual, uncertainties, vacuum_energy,
    wavefunction, AmplitudeSource, ClosedFormAmplitude, Uncertainties, WaveFunctionSample,
};
pub use perturb::{convergence_report, wkb_leading, wkb_second_order, PerturbationState};
