//! Quantitative core for quantum-enabled optical very-long-baseline interferometry.
//!
//! The crate is split along the physical pipeline:
//!
//! * [`photometry`]: AB magnitudes to photon rates and per-bin mean photon number.
//! * [`source`]: the two-site stellar state as a Gaussian covariance and as a
//!   weak-source density matrix.
//! * [`estimation`]: quantum Fisher information, local-measurement Fisher
//!   information and Cramér–Rao bounds, with a numerical SLD oracle.
//! * [`protocols`]: symbolic time-bin simulations of the entanglement-assisted
//!   readout schemes with Bell-pair accounting.
//! * [`geodesy`]: baseline geometry, fringe phase and baseline precision.
//! * [`cavity`]: cavity-QED figures of merit and three-level adiabatic transfer.
//! * [`astro`]: target calculators (angular separations, relativistic precession).
//! * [`tables`]: regeneration of the published reference tables with tolerance checks.

pub mod astro;
pub mod cavity;
pub mod constants;
pub mod error;
pub mod estimation;
pub mod geodesy;
pub mod photometry;
pub mod protocols;
pub mod rng;
pub mod source;
pub mod tables;

pub use error::{Error, Result};
pub use source::SourceParams;
