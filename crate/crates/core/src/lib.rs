//! Exact algebra for qudit Pauli stabilizer models of abelian twisted quantum
//! doubles: construction, condensation by measurement, anyon extraction, and
//! cross-checks against anyon-theory, K-matrix and fusion-group formalisms.

// Matrix code reads more clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod exactmath;
pub mod extraction;
pub mod anyon;
pub mod circuitmap;
pub mod kmatrix;
pub mod lattice;
pub mod params;
pub mod pauli;
pub mod stabilizer;
