//! Torus geometry, stabilizer model builders and string operators.

mod geometry;
mod json;
mod label;
mod models;


use thiserror::Error;

pub use geometry::{Dir, Orientation, PathSpec, SiteLabel, TorusLattice};
pub use json::{ModelJson, ModelSpec, ModelType};
pub use label::TcLabel;
pub use models::{condensed_boson, elementary_flux, gauge_charge, Framing, LatticeModel, ModelKind, Term, TermFamily};

pub use crate::params::{ParamsError, TqdParams};

use crate::pauli::PauliError;
use crate::stabilizer::StabilizerError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("torus {lx}x{ly} is too small; both sides must be at least 2")]
    TooSmall { lx: usize, ly: usize },
    #[error("invalid group order {0}")]
    BadOrder(u32),
    #[error("unknown anyon label {0:?}")]
    UnknownLabel(String),
    #[error("label has {found} layers, model has {expected}")]
    LabelLayers { expected: usize, found: usize },
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

/// Z_N toric code on an `lx x ly` torus.
pub fn build_zn_tc(n: u32, lx: usize, ly: usize) -> Result<LatticeModel, LatticeError> {
    LatticeModel::zn_tc(n, lx, ly)
}

/// Double semion stabilizer model.
pub fn build_ds(lx: usize, ly: usize) -> Result<LatticeModel, LatticeError> {
    LatticeModel::ds(lx, ly)
}

/// Abelian twisted quantum double stabilizer model.
pub fn build_tqd(params: &TqdParams, lx: usize, ly: usize) -> Result<LatticeModel, LatticeError> {
    LatticeModel::tqd(params, lx, ly)
}

/// DS-based symmetry-protected topological model with vertex qubits.
pub fn build_spt(lx: usize, ly: usize) -> Result<LatticeModel, LatticeError> {
    LatticeModel::spt(lx, ly)
}
