//! Polarization-frequency biphoton ququarts: states, density matrices,
//! reduced descriptions and entanglement measures.

pub mod density;
pub mod error;
pub mod format;
pub mod linalg;
pub mod measures;
pub mod report;
pub mod scenario;
pub mod state;
pub mod two_qubit;
pub mod verify;

pub use error::{Error, Result};
pub use state::{BasisLabel, PureBiphotonState, QuquartCoeffs};
