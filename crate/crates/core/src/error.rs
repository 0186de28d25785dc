use thiserror::Error;

use crate::arith::FmError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("ray matrix has dependent columns (the variety has a torus factor)")]
    DependentColumns,
    #[error("class group has torsion, invariant factors {0:?}")]
    Torsion(Vec<String>),
    #[error("invalid class group basis: {0}")]
    InvalidBasis(String),
    #[error("deformation has {got} entries, expected {expected}")]
    DeformationLength { got: usize, expected: usize },
    #[error("invalid ray removal: {0}")]
    InvalidRemoval(String),
    #[error("degenerate arrangement: {0}")]
    Degenerate(String),
    #[error("boundary entry from {face} to {cell} has a negative exponent")]
    NegativeExponent { cell: String, face: String },
    #[error("rank {0} arrangements are not supported")]
    UnsupportedRank(usize),
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error(transparent)]
    Fm(#[from] FmError),
}

pub type Result<T> = std::result::Result<T, Error>;
