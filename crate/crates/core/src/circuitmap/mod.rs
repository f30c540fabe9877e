//! Circuit-level link between the DS stabilizer code and the string-net model:
//! branched triangulations and cochains, the quadratic-phase operator class,
//! the conjugation chain, and a dense ground-space oracle.

mod chain;
mod dense;
mod qpp;
mod triangular;

use serde::Serialize;
use thiserror::Error;

use crate::exactmath::ExactError;
use crate::lattice::LatticeError;
use crate::pauli::PauliError;
use crate::stabilizer::StabilizerError;

pub use chain::{
    conjugate_code_by_ucx, conjugate_group, encoded_c_term, square_ds_with_ancillas, table1_identity,
    triangular_b_term, triangular_c_term, uaa_circuit, uab_circuit, uab_report, ucx_circuit, ucx_report,
    vertex_x_profile, EighthRoot, Table1Report, Table1Row, UabReport, UcxReport,
};
pub use dense::{dense_ground_space, DenseGroundSpace, DENSE_LIMIT};
pub use qpp::{map_qudit_to_qubits, qubit_pair, QuadraticPhaseOperator};
pub use triangular::{BranchedTriangularLattice, Cochain, EdgeKind, Face};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("branched torus needs Lx, Ly >= 3, got {lx} x {ly}")]
    TooSmall { lx: usize, ly: usize },
    #[error("cochain degree {degree} exceeds the surface dimension")]
    DegreeOverflow { degree: u8 },
    #[error("cochain modulus must be at least 2, got {0}")]
    BadModulus(u8),
    #[error("cochains differ in degree or modulus")]
    CochainMismatch,
    #[error("expected {expected} entries, found {found}")]
    Length { expected: usize, found: usize },
    #[error("site {site} out of range for {len} qubits")]
    SiteOutOfRange { site: usize, len: usize },
    #[error("two-qubit gate acts twice on site {0}")]
    SameSite(usize),
    #[error("site {site} has dimension {dim}, expected 4")]
    NotFourDimensional { site: usize, dim: u32 },
    #[error("odd X power on site {site} leaves the quadratic-phase class")]
    OddX { site: usize },
    #[error("Hilbert space of dimension {dimension} exceeds the dense limit")]
    TooLarge { dimension: u64 },
    #[error("expected a double semion model")]
    NotDs,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Summary of the string-net link checks on an `L x L` torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixReport {
    pub psi_identity: Status,
    pub table1: Status,
    pub ucx_terms: Status,
    pub uab_ce: Status,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        [self.psi_identity, self.table1, self.ucx_terms, self.uab_ce]
            .iter()
            .all(|s| *s == Status::Pass)
    }
}

pub fn appendix_check(l: usize) -> Result<AppendixReport, CircuitError> {
    let lat = BranchedTriangularLattice::new(l, l)?;
    Ok(AppendixReport {
        psi_identity: lat.psi_identity_failures()?.is_empty().into(),
        table1: table1_identity().passed().into(),
        ucx_terms: ucx_report(l, l)?.passed().into(),
        uab_ce: uab_report(l, l)?.passed().into(),
    })
}
