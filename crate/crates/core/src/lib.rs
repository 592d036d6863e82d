//! Weak-drive two-photon response of emitter chains coupled to a chiral waveguide.
//!
//! Natural units: Γ = 1. See [`params`] for the amplitude conventions.

pub mod coefficients;
pub mod ensemble;
pub mod error;
pub mod exec;
pub mod observables;
pub mod params;
pub mod response;
pub mod single;

pub use error::{Error, Result};
pub use exec::Exec;
pub use params::{
    ComplexAmplitude, DriveConfig, DriveMode, EmitterParams, Flags, Units, ValidityFlag,
};
pub use response::TwoPhotonResponse;
