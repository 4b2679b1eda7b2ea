//! File formats, reports, and the command-line surface for the
//! `sympeig-core` computations.
//!
//! Matrices travel as MatrixMarket files (array or coordinate, real,
//! general or symmetric storage); results are emitted as key-stable JSON
//! reports so downstream tooling can diff and re-parse them losslessly.

pub mod cli;
pub mod mm;
pub mod report;
