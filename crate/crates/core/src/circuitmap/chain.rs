//! Operator-level checks of the circuit taking the square-lattice DS code to the
//! string-net form: `U_CX` onto the triangular lattice, the qudit-to-qubit
//! encoding, and the `CZ` layer `U_AB` that frees the `B` qubits.

use std::sync::Arc;

use serde::Serialize;

use super::qpp::{map_qudit_to_qubits, qubit_pair, QuadraticPhaseOperator};
use super::triangular::{BranchedTriangularLattice, EdgeKind};
use super::CircuitError;
use crate::exactmath::{solve_linear_mod, IntMatrix};
use crate::lattice::{LatticeModel, ModelKind};
use crate::pauli::{CliffordGate, PauliOperator, QuditSystem};
use crate::stabilizer::{StabilizerGroup, Verdict};
use num_bigint::BigInt;

/// `U_CX = prod_{up faces} CX_{12,13} CX_{23,13}`; every target is a diagonal edge.
pub fn ucx_circuit(lat: &BranchedTriangularLattice) -> Vec<CliffordGate> {
    lat.faces()
        .enumerate()
        .filter(|(f, _)| lat.is_up(*f))
        .flat_map(|(_, face)| {
            [
                CliffordGate::QuditCx {
                    control: face.e12,
                    target: face.e13,
                },
                CliffordGate::QuditCx {
                    control: face.e23,
                    target: face.e13,
                },
            ]
        })
        .collect()
}

/// `U_AB = prod_{faces} CZ(A_{<12>}, B_{<23>})` on the two-qubit encoding.
pub fn uab_circuit(lat: &BranchedTriangularLattice) -> Vec<CliffordGate> {
    lat.faces()
        .map(|f| CliffordGate::QubitCz {
            a: qubit_pair(f.e12).0,
            b: qubit_pair(f.e23).1,
        })
        .collect()
}

/// `U_AA = prod_{up faces} CZ(A_{<12>}, A_{<23>})`.
pub fn uaa_circuit(lat: &BranchedTriangularLattice) -> Vec<CliffordGate> {
    lat.faces()
        .enumerate()
        .filter(|(f, _)| lat.is_up(*f))
        .map(|(_, f)| CliffordGate::QubitCz {
            a: qubit_pair(f.e12).0,
            b: qubit_pair(f.e23).0,
        })
        .collect()
}

fn tri_system(lat: &BranchedTriangularLattice) -> Result<Arc<QuditSystem>, CircuitError> {
    Ok(QuditSystem::uniform(lat.count(1), 4)?)
}

fn op(sys: &Arc<QuditSystem>, x: &[(usize, i64)], z: &[(usize, i64)]) -> PauliOperator {
    PauliOperator::from_exponents(sys, 0, x, z).expect("triangular sites are valid")
}

/// Square DS code plus ancilla qudits on the diagonals held by `<X^2, Z^2>`,
/// laid out on the triangular lattice's edges.
pub fn square_ds_with_ancillas(ds: &LatticeModel) -> Result<(BranchedTriangularLattice, StabilizerGroup), CircuitError> {
    if ds.kind() != ModelKind::Ds {
        return Err(CircuitError::NotDs);
    }
    let (lx, ly) = (ds.lattice().lx(), ds.lattice().ly());
    let lat = BranchedTriangularLattice::new(lx, ly)?;
    let sys = tri_system(&lat)?;
    let mut gens = Vec::new();
    for g in ds.group().generators() {
        gens.push(g.remap_sites(&sys, |s| s)?);
    }
    for (x, y) in (0..ly as i64).flat_map(|y| (0..lx as i64).map(move |x| (x, y))) {
        let d = lat.edge(x, y, EdgeKind::D);
        gens.push(op(&sys, &[(d, 2)], &[]));
        gens.push(op(&sys, &[], &[(d, 2)]));
    }
    Ok((lat, StabilizerGroup::new(&sys, gens)?))
}

/// Conjugates the ancilla-extended square DS code by `U_CX`.
pub fn conjugate_code_by_ucx(ds: &LatticeModel) -> Result<StabilizerGroup, CircuitError> {
    let (lat, group) = square_ds_with_ancillas(ds)?;
    conjugate_group(&group, &ucx_circuit(&lat))
}

pub fn conjugate_group(group: &StabilizerGroup, circuit: &[CliffordGate]) -> Result<StabilizerGroup, CircuitError> {
    let gens = group
        .generators()
        .iter()
        .map(|g| g.conjugate(circuit))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StabilizerGroup::new(group.system(), gens)?)
}

/// Edge term `C_e = X_e^2 prod_{e', f} (Z_{e'}^2)^{(e' cup e)(f)}` of the triangular DS code.
pub fn triangular_c_term(lat: &BranchedTriangularLattice, e: usize) -> Result<PauliOperator, CircuitError> {
    let sys = tri_system(lat)?;
    let target = lat.indicator(1, 2, e)?;
    let mut z = Vec::new();
    for e2 in 0..lat.count(1) {
        let cup = lat.cup_product(&lat.indicator(1, 2, e2)?, &target)?;
        if !cup.is_zero() {
            z.push((e2, 2));
        }
    }
    Ok(op(&sys, &[(e, 2)], &z))
}

/// Face term `Z^2` on the three edges of a face.
pub fn triangular_b_term(lat: &BranchedTriangularLattice, f: usize) -> Result<PauliOperator, CircuitError> {
    let sys = tri_system(lat)?;
    let face = lat.face(f);
    Ok(op(&sys, &[], &[(face.e12, 2), (face.e23, 2), (face.e13, 2)]))
}

/// `X` exponents of the vertex term acting on `|0>`: `delta v + 2 (v cup delta v)` mod 4.
pub fn vertex_x_profile(lat: &BranchedTriangularLattice, v: usize) -> Result<Vec<u8>, CircuitError> {
    let dv4 = lat.coboundary(&lat.indicator(0, 4, v)?)?;
    let v2 = lat.indicator(0, 2, v)?;
    let cup = lat.cup_product(&v2, &lat.coboundary(&v2)?)?;
    Ok(dv4.values().iter().zip(cup.values()).map(|(a, b)| (a + 2 * b) % 4).collect())
}

/// Whether some element of `group` has exactly the given `X` exponents (any `Z` part).
fn has_x_profile(group: &StabilizerGroup, profile: &[u8]) -> Result<bool, CircuitError> {
    let n = profile.len();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|s| group.generators().iter().map(|g| g.x_exp(s) as i64).collect())
        .collect();
    let a = IntMatrix::from_rows(&rows)?;
    let b: Vec<BigInt> = profile.iter().map(|&v| BigInt::from(v)).collect();
    let m = vec![BigInt::from(4); n];
    Ok(solve_linear_mod(&a, &b, &m)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UcxReport {
    pub lx: usize,
    pub ly: usize,
    pub commuting: bool,
    pub logical_dimension: String,
    /// `U Z_d^2 U^dag` is the `Z^2` face term of the up triangle over `d`, exactly.
    pub up_faces_from_ancilla_z2: bool,
    /// Every cup-product edge term is an exact member (diagonal ones are the bare ancilla `X^2`).
    pub edge_terms: bool,
    /// `Z^2` face terms of up and down triangles are exact members.
    pub face_terms: bool,
    /// For every vertex some member has `X` exponents `delta v + 2 (v cup delta v)`.
    pub vertex_x_profiles: bool,
    /// The conjugated code equals the code generated by the conjugated vertex terms
    /// completed by edge terms, together with the face and edge terms.
    pub generated_by_terms: bool,
}

impl UcxReport {
    pub fn passed(&self) -> bool {
        self.commuting
            && self.logical_dimension == "4"
            && self.up_faces_from_ancilla_z2
            && self.edge_terms
            && self.face_terms
            && self.vertex_x_profiles
            && self.generated_by_terms
    }
}

fn exact_member(group: &StabilizerGroup, p: &PauliOperator) -> bool {
    group.member_with_phase(p).verdict == Verdict::Member
}

/// Vertex term on the triangular lattice: the conjugated square vertex term, or its
/// inverse, times edge terms fixing its `X` exponents to [`vertex_x_profile`].
fn triangular_a_term(
    lat: &BranchedTriangularLattice,
    conjugated_vertex: &PauliOperator,
    v: usize,
) -> Result<Option<PauliOperator>, CircuitError> {
    let profile = vertex_x_profile(lat, v)?;
    for sign in [1, -1] {
        let cand = conjugated_vertex.pow(sign);
        let diff: Vec<i64> = (0..lat.count(1))
            .map(|e| (profile[e] as i64 - cand.x_exp(e) as i64).rem_euclid(4))
            .collect();
        if diff.iter().all(|&d| d == 0 || d == 2) {
            let mut out = cand;
            for e in (0..lat.count(1)).filter(|&e| diff[e] == 2) {
                out = &out * &triangular_c_term(lat, e)?;
            }
            return Ok(Some(out));
        }
    }
    Ok(None)
}

pub fn ucx_report(lx: usize, ly: usize) -> Result<UcxReport, CircuitError> {
    let ds = LatticeModel::ds(lx, ly)?;
    let (lat, base) = square_ds_with_ancillas(&ds)?;
    let circuit = ucx_circuit(&lat);
    let group = conjugate_group(&base, &circuit)?;
    let sys = Arc::clone(group.system());

    let up_faces_from_ancilla_z2 = (0..lat.count(2)).filter(|&f| lat.is_up(f)).all(|f| {
        let d = lat.face(f).e13;
        op(&sys, &[], &[(d, 2)]).conjugate(&circuit).ok() == triangular_b_term(&lat, f).ok()
    });

    let c_terms = (0..lat.count(1))
        .map(|e| triangular_c_term(&lat, e))
        .collect::<Result<Vec<_>, _>>()?;
    let b_terms = (0..lat.count(2))
        .map(|f| triangular_b_term(&lat, f))
        .collect::<Result<Vec<_>, _>>()?;
    let edge_terms = c_terms.iter().all(|c| exact_member(&group, c));
    let face_terms = b_terms.iter().all(|b| exact_member(&group, b));

    let mut vertex_x_profiles = true;
    let mut a_terms = Vec::new();
    for (term, g) in ds.terms().iter().zip(ds.group().generators()) {
        if term.family != crate::lattice::TermFamily::A {
            continue;
        }
        let v = lat.vertex(term.x, term.y);
        vertex_x_profiles &= has_x_profile(&group, &vertex_x_profile(&lat, v)?)?;
        match triangular_a_term(&lat, &g.remap_sites(&sys, |s| s)?.conjugate(&circuit)?, v)? {
            Some(a) => a_terms.push(a),
            None => vertex_x_profiles = false,
        }
    }
    let generated = StabilizerGroup::candidate(&sys, a_terms.into_iter().chain(b_terms).chain(c_terms).collect())?;
    let generated_by_terms = generated.same_group(&group);

    Ok(UcxReport {
        lx,
        ly,
        commuting: group.assert_commuting().is_empty(),
        logical_dimension: group.logical_dimension()?.to_string(),
        up_faces_from_ancilla_z2,
        edge_terms,
        face_terms,
        vertex_x_profiles,
        generated_by_terms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UabReport {
    pub edges: usize,
    /// Edge kinds for which every `U_AB C^{II}_e U_AB^dag` equals `X^B_e`.
    pub collapsed: Vec<EdgeKind>,
    pub failures: Vec<usize>,
    /// `U_AA` leaves every collapsed `X^B_e` unchanged.
    pub uaa_preserves: bool,
}

impl UabReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.collapsed.len() == 3 && self.uaa_preserves
    }
}

/// Image `C^{II}_e` of the cup-product edge term under the qubit encoding.
pub fn encoded_c_term(lat: &BranchedTriangularLattice, e: usize) -> Result<QuadraticPhaseOperator, CircuitError> {
    map_qudit_to_qubits(&triangular_c_term(lat, e)?)
}

pub fn uab_report(lx: usize, ly: usize) -> Result<UabReport, CircuitError> {
    let lat = BranchedTriangularLattice::new(lx, ly)?;
    let uab = uab_circuit(&lat);
    let uaa = uaa_circuit(&lat);
    let n = 2 * lat.count(1);
    let mut failures = Vec::new();
    let mut uaa_preserves = true;
    for e in 0..lat.count(1) {
        let target = QuadraticPhaseOperator::x_on(n, qubit_pair(e).1)?;
        let got = encoded_c_term(&lat, e)?.conjugate(&uab)?;
        if got != target {
            failures.push(e);
        }
        uaa_preserves &= target.conjugate(&uaa)? == target;
    }
    let collapsed = [EdgeKind::H, EdgeKind::V, EdgeKind::D]
        .into_iter()
        .filter(|k| {
            (0..lat.count(1))
                .filter(|&e| lat.edge_position(e).2 == *k)
                .all(|e| !failures.contains(&e))
        })
        .collect();
    Ok(UabReport {
        edges: lat.count(1),
        collapsed,
        failures,
        uaa_preserves,
    })
}

/// An eighth root of unity `e^{pi i k / 4}`, rendered as `1`, `i`, `-1`, `-i` where possible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EighthRoot(pub u8);

impl Serialize for EighthRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let text = match self.0 % 8 {
            0 => "1".to_string(),
            2 => "i".to_string(),
            4 => "-1".to_string(),
            6 => "-i".to_string(),
            k => format!("exp(i*pi*{k}/4)"),
        };
        s.serialize_str(&text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    /// `(a_12, a_13, a_23)`.
    pub bits: [u8; 3],
    pub cz: EighthRoot,
    pub s_product: EighthRoot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    /// Rows with even edge sum, the face-term `+1` subspace.
    pub rows: Vec<Table1Row>,
    /// Odd-sum rows, excluded by the face constraint.
    pub excluded: Vec<Table1Row>,
    pub agree_on_even: bool,
    /// Some excluded row distinguishes the two operators, so the constraint is needed.
    pub excluded_differ: bool,
}

impl Table1Report {
    pub fn passed(&self) -> bool {
        self.rows.len() == 4 && self.agree_on_even && self.excluded_differ
    }
}

/// Compares `CZ_{12,23}` with `S^dag_12 S_13 S^dag_23` on the basis states of one face.
pub fn table1_identity() -> Table1Report {
    let cz = QuadraticPhaseOperator::cz(3, 0, 2).expect("valid sites");
    let s = [(0, -1), (1, 1), (2, -1)]
        .into_iter()
        .map(|(q, k)| QuadraticPhaseOperator::s_power(3, q, k).expect("valid site"))
        .fold(QuadraticPhaseOperator::identity(3), |acc, g| &acc * &g);
    let (mut rows, mut excluded) = (Vec::new(), Vec::new());
    for m in 0..8u8 {
        let bits = [(m >> 2) & 1, (m >> 1) & 1, m & 1];
        let b: Vec<bool> = bits.iter().map(|&v| v == 1).collect();
        let row = Table1Row {
            bits,
            cz: EighthRoot(cz.diagonal_phase(&b).expect("three bits")),
            s_product: EighthRoot(s.diagonal_phase(&b).expect("three bits")),
        };
        if bits.iter().sum::<u8>() % 2 == 0 {
            rows.push(row);
        } else {
            excluded.push(row);
        }
    }
    Table1Report {
        agree_on_even: rows.iter().all(|r| r.cz == r.s_product),
        excluded_differ: excluded.iter().any(|r| r.cz != r.s_product),
        rows,
        excluded,
    }
}
