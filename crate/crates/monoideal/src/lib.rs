//! File formats, the power-sequence cache and the command line front end
//! for `monoideal-core`.

pub mod cache;
pub mod cli;
pub mod document;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod report;

pub use document::{parse_ideal_file, IdealDocument, NamedIdeal};
pub use error::{CliError, Result};
pub use lattice::{parse_lattice_file, LatticeDocument};
pub use report::Report;
