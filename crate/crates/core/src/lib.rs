//! Leggett-Garg correlator protocols simulated exactly on small density matrices.
//!
//! * [`quantum`]: dense density-matrix algebra for 1 to 4 qubits.
//! * [`protocols`]: separate-run, single-run three-ancilla, and ideal negative
//!   result correlator engines, the K statistic, and the invasiveness demo.
//! * [`macrorealist`]: classical two-state hidden-variable baselines.
//! * [`ensemble`]: pseudo-pure decomposition and thermal polarization of NMR ensembles.
//! * [`cli`]: the `lgi` command-line front end (CSV and SVG output).

pub mod cli;
pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod macrorealist;
pub mod protocols;
pub mod quantum;
pub mod sampling;

pub use error::{Error, Result};
