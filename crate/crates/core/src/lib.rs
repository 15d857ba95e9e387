//! Exact eigenvalue computations for the association scheme on perfect
//! matchings of the complete graph `K_{2n}`.
//!
//! Relations and eigenspaces are both indexed by partitions of `n`. The
//! eigenvalue tables can be produced two ways: from brute-force
//! intersection numbers ([`tables::build_table_oracle`]) or from closed
//! forms in the power-sum algebra ([`tables::build_table_formulas`]).

pub mod arith;
pub mod characters;
pub mod error;
pub mod linalg;
pub mod matching;
pub mod partition;
pub mod poly;
pub mod ratios;
pub mod scheme;
pub mod spectra;
pub mod symfunc;
pub mod tables;

pub use error::{Error, Result};
pub use matching::Matching;
pub use partition::Partition;
pub use poly::PolyT;
pub use symfunc::PowerSumExpr;
pub use tables::EigTable;
