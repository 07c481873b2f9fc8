//! Thermal quantum correlations of three dipole-coupled exciton qubits.
//!
//! The crate builds the three-dot Hamiltonian, its Gibbs state, and two
//! correlation measures on that state: a lower bound τ₃ on tripartite
//! concurrence and the global quantum discord. [`sweep`] drives parameter
//! scans and writes CSV output.

pub mod concurrence;
pub mod discord;
pub mod error;
pub mod linalg;
pub mod model;
pub mod optimize;
pub mod state;
pub mod sweep;
pub mod thermal;

pub use error::{Error, Result};
