//! Anyon data measured directly on lattice models through string operators.

mod spt;


use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::anyon::{theories_isomorphic, tqd_theory, AnyonError, AnyonTheory};
use crate::exactmath::{integer_kernel, IntMatrix, Rational01};
use crate::lattice::{Dir, LatticeError, LatticeModel, ModelKind, PathSpec, TcLabel};
use crate::pauli::{PauliError, PauliOperator};
use crate::stabilizer::{StabilizerError, Verdict};

pub use spt::{spt_cocycle, CocycleTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractionError {
    #[error("label {0} is confined in this model")]
    Confined(String),
    #[error("junction arms must start at the center, leave it counter-clockwise and not meet elsewhere")]
    BadJunction,
    #[error("torus {lx}x{ly} is too small for this measurement")]
    TorusTooSmall { lx: usize, ly: usize },
    #[error("measured data is not a quadratic form: {0}")]
    Inconsistent(String),
    #[error("boundary operator does not split into endpoint pieces")]
    Decomposition,
    #[error("model has no vertex symmetry")]
    NotSpt,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Anyon(#[from] AnyonError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

/// Three direct paths leaving a common vertex in counter-clockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JunctionSpec {
    pub center: (i64, i64),
    pub arms: [PathSpec; 3],
}

impl JunctionSpec {
    /// Straight arms of length `len` pointing `first`, then a quarter and a half turn further.
    pub fn straight(center: (i64, i64), first: Dir, len: usize) -> Self {
        let arm = |k: u8| PathSpec::straight(center, first.rotate_ccw(k), len);
        JunctionSpec {
            center,
            arms: [arm(0), arm(1), arm(2)],
        }
    }

    /// Checks shared start, counter-clockwise initial directions and disjointness away from the center.
    pub fn validate(&self, lx: usize, ly: usize) -> Result<(), ExtractionError> {
        let wrap = |(x, y): (i64, i64)| (x.rem_euclid(lx as i64), y.rem_euclid(ly as i64));
        let mut seen = std::collections::HashSet::new();
        let mut turns = Vec::new();
        for arm in &self.arms {
            let (start, steps) = match arm {
                PathSpec::Direct { start, steps } => (*start, steps),
                PathSpec::Dual { .. } => return Err(ExtractionError::BadJunction),
            };
            if wrap(start) != wrap(self.center) || steps.is_empty() {
                return Err(ExtractionError::BadJunction);
            }
            turns.push(steps[0].quarter_turns());
            for v in arm.vertices().into_iter().skip(1) {
                if wrap(v) == wrap(self.center) || !seen.insert(wrap(v)) {
                    return Err(ExtractionError::BadJunction);
                }
            }
        }
        let ccw = |a: u8, b: u8| (b + 4 - a) % 4;
        let (a, b, c) = (turns[0], turns[1], turns[2]);
        if ccw(a, b) == 0 || ccw(a, c) <= ccw(a, b) {
            return Err(ExtractionError::BadJunction);
        }
        Ok(())
    }
}

fn require_deconfined(model: &LatticeModel, label: &TcLabel) -> Result<(), ExtractionError> {
    if model.is_deconfined(label)? {
        Ok(())
    } else {
        Err(ExtractionError::Confined(label.to_string()))
    }
}

/// Phase `lambda` (in turns) with `a = e^{2 pi i lambda} b`, for operators with equal Pauli parts.
fn relative_phase(a: &PauliOperator, b: &PauliOperator) -> Rational01 {
    debug_assert_eq!(a.symplectic(), b.symplectic());
    a.phase_turns() - b.phase_turns()
}

/// Topological spin from the three-string junction identity
/// `W1 W2^dag W3 = theta W3 W2^dag W1`.
pub fn t_junction_theta(model: &LatticeModel, label: &TcLabel, junction: &JunctionSpec) -> Result<Rational01, ExtractionError> {
    require_deconfined(model, label)?;
    let lat = model.lattice();
    junction.validate(lat.lx(), lat.ly())?;
    let w: Vec<PauliOperator> = junction
        .arms
        .iter()
        .map(|p| model.string_operator(label, p))
        .collect::<Result<_, _>>()?;
    let w2d = w[1].adjoint();
    let lhs = w[0].multiply(&w2d)?.multiply(&w[2])?;
    let rhs = w[2].multiply(&w2d)?.multiply(&w[0])?;
    Ok(relative_phase(&lhs, &rhs))
}

/// Default junction for a torus: centered, arms as long as the torus allows.
pub fn default_junction(model: &LatticeModel, rotation: u8) -> Result<JunctionSpec, ExtractionError> {
    let lat = model.lattice();
    let (lx, ly) = (lat.lx(), lat.ly());
    if lx < 3 || ly < 3 {
        return Err(ExtractionError::TorusTooSmall { lx, ly });
    }
    let len = (lx.min(ly) - 1) / 2;
    let center = ((lx / 2) as i64, (ly / 2) as i64);
    Ok(JunctionSpec::straight(center, Dir::E.rotate_ccw(rotation), len))
}

/// Spin of `label` measured by the default junction.
pub fn topological_spin(model: &LatticeModel, label: &TcLabel) -> Result<Rational01, ExtractionError> {
    t_junction_theta(model, label, &default_junction(model, 0)?)
}

/// Full braid of `a` around `b`: commutation phase of a horizontal `a` loop
/// and a vertical `b` loop crossing it once.
pub fn crossing_braiding(model: &LatticeModel, a: &TcLabel, b: &TcLabel) -> Result<Rational01, ExtractionError> {
    require_deconfined(model, a)?;
    require_deconfined(model, b)?;
    let lat = model.lattice();
    let wa = model.string_operator(a, &PathSpec::straight((0, 0), Dir::E, lat.lx()))?;
    let wb = model.string_operator(b, &PathSpec::straight((0, 0), Dir::N, lat.ly()))?;
    Ok(wb.commutation_phase(&wa)?)
}

/// Smallest `n >= 1` for which `label^n` has trivial spin and braids trivially with every generating label.
pub fn fusion_order(model: &LatticeModel, label: &TcLabel) -> Result<u64, ExtractionError> {
    require_deconfined(model, label)?;
    let gens = model.generating_labels();
    let bound = model.lattice().layers().iter().fold(1u64, |l, &d| num_integer::lcm(l, d as u64));
    for n in 1..=bound {
        let a = label.scale(n as i64);
        if !topological_spin(model, &a)?.is_zero() {
            continue;
        }
        let mut trivial = true;
        for (_, g) in &gens {
            if !crossing_braiding(model, &a, g)?.is_zero() {
                trivial = false;
                break;
            }
        }
        if trivial {
            return Ok(n);
        }
    }
    Ok(bound)
}

/// Smallest `n >= 1` for which `label^n` braids trivially with every
/// generating label; needs only crossing loops, so it works on any torus.
pub fn braiding_order(model: &LatticeModel, label: &TcLabel) -> Result<u64, ExtractionError> {
    let gens = model.generating_labels();
    let bound = model.lattice().layers().iter().fold(1u64, |l, &d| num_integer::lcm(l, d as u64));
    for n in 1..=bound {
        let a = label.scale(n as i64);
        let mut trivial = true;
        for (_, g) in &gens {
            trivial &= crossing_braiding(model, &a, g)?.is_zero();
        }
        if trivial {
            return Ok(n);
        }
    }
    Ok(bound)
}

/// Anyon data extracted from a model for a set of generating labels.
#[derive(Clone, Debug, Serialize)]
pub struct ExtractedTheory {
    pub labels: Vec<String>,
    pub fusion_orders: Vec<u64>,
    pub theta: Vec<Rational01>,
    pub braiding: Vec<Vec<Rational01>>,
    /// Theory generated by the labels, modulo combinations braiding trivially with all of them.
    pub theory: AnyonTheory,
}

/// Measures spins, braiding and fusion orders of `labels` and assembles the
/// generated theory, checking `B(a, b) = theta(ab) - theta(a) - theta(b)`.
pub fn extract_theory(model: &LatticeModel, labels: &[(String, TcLabel)]) -> Result<ExtractedTheory, ExtractionError> {
    let r = labels.len();
    let theta: Vec<Rational01> = labels
        .iter()
        .map(|(_, l)| topological_spin(model, l))
        .collect::<Result<_, _>>()?;
    let mut braiding = vec![vec![Rational01::ZERO; r]; r];
    for i in 0..r {
        for j in 0..r {
            braiding[i][j] = crossing_braiding(model, &labels[i].1, &labels[j].1)?;
        }
    }
    for i in 0..r {
        for j in i..r {
            let joint = topological_spin(model, &labels[i].1.add(&labels[j].1))?;
            if joint - theta[i] - theta[j] != braiding[i][j] {
                return Err(ExtractionError::Inconsistent(format!(
                    "B({}, {}) disagrees with the spin ratio",
                    labels[i].0, labels[j].0
                )));
            }
        }
    }
    let fusion_orders = labels
        .iter()
        .map(|(_, l)| fusion_order(model, l))
        .collect::<Result<_, _>>()?;
    let relations = trivially_braiding(&braiding);
    let theory = AnyonTheory::from_presentation(&theta, &braiding, &relations).map_err(|e| match e {
        AnyonError::NotWellDefined => ExtractionError::Inconsistent("spins do not descend to the fusion group".into()),
        e => e.into(),
    })?;
    Ok(ExtractedTheory {
        labels: labels.iter().map(|(n, _)| n.clone()).collect(),
        fusion_orders,
        theta,
        braiding,
        theory,
    })
}

/// Integer combinations `c` with `sum_i c_i B[i][j] = 0 mod 1` for every `j`.
fn trivially_braiding(b: &[Vec<Rational01>]) -> Vec<Vec<i64>> {
    let r = b.len();
    if r == 0 {
        return vec![];
    }
    let l = b.iter().flatten().fold(1i64, |acc, x| num_integer::lcm(acc, x.denominator()));
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|j| {
            let mut row: Vec<i64> = (0..r).map(|i| b[i][j].numerator() * (l / b[i][j].denominator())).collect();
            row.extend((0..r).map(|t| if t == j { l } else { 0 }));
            row
        })
        .collect();
    integer_kernel(&IntMatrix::from_rows(&rows).expect("rectangular"))
        .into_iter()
        .map(|v| v[..r].iter().map(|x| i64::try_from(x).expect("small coefficient")).collect())
        .collect()
}

/// Extraction summary compared against the expected theory of the model.
#[derive(Clone, Debug, Serialize)]
pub struct ExtractionReport {
    pub theta: BTreeMap<String, Rational01>,
    pub braiding: Vec<Vec<Rational01>>,
    pub fusion_orders: BTreeMap<String, u64>,
    pub iso_match: bool,
    pub target: String,
}

/// Expected theory of a model and its name.
pub fn target_theory(model: &LatticeModel) -> Result<(String, AnyonTheory), ExtractionError> {
    Ok(match model.kind() {
        ModelKind::Tc => {
            let n = model.lattice().layers().first().copied().unwrap_or(1) as u64;
            (format!("Z{n} toric code"), AnyonTheory::toric_code(n))
        }
        ModelKind::Ds => ("double semion".into(), AnyonTheory::double_semion()),
        ModelKind::Tqd => {
            let p = model.params().expect("TQD models carry parameters");
            (format!("TQD N={:?}", p.orders()), tqd_theory(p)?)
        }
        ModelKind::StackedTc => {
            let t = model
                .lattice()
                .layers()
                .iter()
                .fold(AnyonTheory::trivial(), |t, &d| t.stack(&AnyonTheory::toric_code(d as u64)));
            ("stacked toric codes".into(), t)
        }
        ModelKind::DsVertex | ModelKind::Spt => ("trivial".into(), AnyonTheory::trivial()),
    })
}

/// Extracts the theory of the model's generating labels and compares it with [`target_theory`].
pub fn extraction_report(model: &LatticeModel) -> Result<ExtractionReport, ExtractionError> {
    let labels = model.generating_labels();
    let ex = extract_theory(model, &labels)?;
    let (target, expect) = target_theory(model)?;
    let iso_match = theories_isomorphic(&ex.theory, &expect).is_some();
    Ok(ExtractionReport {
        theta: ex.labels.iter().cloned().zip(ex.theta.iter().copied()).collect(),
        braiding: ex.braiding,
        fusion_orders: ex.labels.iter().cloned().zip(ex.fusion_orders.iter().copied()).collect(),
        iso_match,
        target,
    })
}

/// One logical operator: a noncontractible loop of a generating label.
#[derive(Clone, Debug, Serialize)]
pub struct LogicalOperator {
    pub name: String,
    pub label: String,
    /// `horizontal` loops run along x, `vertical` along y.
    pub cycle: &'static str,
    #[serde(skip)]
    pub operator: PauliOperator,
}

#[derive(Clone, Debug, Serialize)]
pub struct LogicalReport {
    pub operators: Vec<LogicalOperator>,
    /// `commutation[i][j]`: phase of `L_i L_j L_i^dag L_j^dag`.
    pub commutation: Vec<Vec<Rational01>>,
    /// Verdict of `L^n` against the stabilizer group, `n` the label's fusion order.
    pub powers: Vec<(String, u64, Verdict)>,
    /// Every logical commutes with all stabilizers and lies outside the group.
    pub logicals_valid: bool,
}

/// Logical operators from both noncontractible loops of every generating label.
///
/// For the double semion this yields `Z1 = W^s` (horizontal), `X1 = W^s`
/// (vertical) and the same pair for `s̄`.
pub fn logical_algebra(model: &LatticeModel) -> Result<LogicalReport, ExtractionError> {
    let mut ops = Vec::new();
    let mut labels = Vec::new();
    for (k, (name, label)) in model.generating_labels().into_iter().enumerate() {
        let [h, v] = model.noncontractible_loops(&label)?;
        labels.push(label.clone());
        labels.push(label);
        ops.push(LogicalOperator {
            name: format!("Z{}", k + 1),
            label: name.clone(),
            cycle: "horizontal",
            operator: h,
        });
        ops.push(LogicalOperator {
            name: format!("X{}", k + 1),
            label: name,
            cycle: "vertical",
            operator: v,
        });
    }
    let n = ops.len();
    let mut commutation = vec![vec![Rational01::ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            commutation[i][j] = ops[i].operator.commutation_phase(&ops[j].operator)?;
        }
    }
    let group = model.group();
    let mut powers = Vec::new();
    let mut valid = true;
    for (op, label) in ops.iter().zip(&labels) {
        let order = braiding_order(model, label)?;
        let verdict = group.member_with_phase(&op.operator.pow(order as i64)).verdict;
        powers.push((op.name.clone(), order, verdict));
        valid &= group.generators().iter().all(|g| g.commutes_with(&op.operator))
            && group.member_with_phase(&op.operator).verdict == Verdict::NotMember;
    }
    Ok(LogicalReport {
        operators: ops,
        commutation,
        powers,
        logicals_valid: valid,
    })
}
