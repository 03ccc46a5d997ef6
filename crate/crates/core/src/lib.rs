//! Simulation of single-qubit teleportation over three-qubit W-class resource
//! states: exact protocol runs, seeded Monte Carlo sampling, entanglement
//! measures, resource-condition and geometry checks, and NMR-style state
//! preparation families.

mod error;
pub mod conditions;
pub mod entanglement;
pub mod nmr;
pub mod protocols;
pub mod qmath;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
