//! Hypergraph-product (HGP) CSS codes and check-type qubit reduction.
//!
//! The pipeline runs coloring → matching → stabilizer combination → qubit
//! removal, with independent checkers for every preserved property, split
//! syndrome-extraction schedules, chain maps for augmented and punctured inputs,
//! and a phenomenological memory simulator.

pub mod catalog;
pub mod codes;
pub mod coloring;
pub mod gf2;
pub mod hgp;
pub mod homomorphism;
pub mod memsim;
pub mod planner;
pub mod reducer;
pub mod sescheduler;
pub mod verifier;

pub use codes::{ClassicalCode, Distance, Generator, SimpleGraph, TannerGraph};
pub use gf2::{BitMatrix, BitVec, Echelon};
pub use hgp::{CssCode, QubitCoord, QubitLayout};

pub type NoiseModel64 = memsim::NoiseModel<f64>;
pub type DecodingGraph64 = memsim::DecodingGraph<f64>;
pub type TrialResult64 = memsim::TrialResult<f64>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("input code is not full rank: {0}")]
    NotFullRank(String),
    #[error("invalid coloring: {0}")]
    Coloring(String),
    #[error("infeasible schedule: {0}")]
    Infeasible(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
