//! Boost transformations of Schrödinger plane waves and numerical certification of
//! their covariance properties.
//!
//! * [`spacetime`]: Galilei, extended low-velocity and Lorentz boosts of events.
//! * [`states`]: plane waves, phase factors and finite-difference probes.
//! * [`covariance`]: covariance checks, order scans and the Lorentz reference.
//! * [`noninertial`]: non-inertial histories and their accumulated phase.
//! * [`cli`]: the `lowboost` command-line front end.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod covariance;
pub mod error;
pub mod noninertial;
pub mod quadrature;
pub mod spacetime;
pub mod states;

pub use error::{Error, Result};
pub use spacetime::{BoostKind, BoostSpec, Event, FrameMatrix, Vec3};
pub use states::{EnergyMomentum, LinearPhaseWave, PhaseFactor, PhaseLinear, PlaneWave, WaveField};
