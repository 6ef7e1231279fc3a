//! Exact invariants of monomial ideals viewed as ideal sheaves on projective
//! space: regularity, sheaf generation degree, Newton polyhedra and Rees
//! valuations, standard pair decompositions and arithmetic degrees, and
//! two-sided estimates of the asymptotic invariant `s`. A small module
//! handles divisor classes on surfaces with a finite Néron–Severi lattice.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod decomposition;
pub mod error;
pub mod homology;
pub mod ideal;
pub mod linalg;
pub mod newton;
pub mod nilpotency;
pub mod ring;
pub mod sinvariant;
pub mod surface;

pub use error::{Error, Result};
pub use homology::{BettiTable, Limits, RegularityReport};
pub use ideal::MonomialIdeal;
pub use ring::{Monomial, Ring};

/// Exact rational numbers used for every reported invariant.
pub type Rational = num_rational::Ratio<i64>;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
