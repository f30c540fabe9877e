use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::ExtractionError;
use crate::exactmath::{solve_linear_mod, IntMatrix, Rational01};
use crate::lattice::{LatticeModel, SiteLabel};
use crate::pauli::PauliOperator;
use crate::stabilizer::{StabilizerGroup, Verdict};

/// `omega(g, h, k)` for `g, h, k` in Z_2, indexed `[g][h][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleTable {
    pub values: [[[Rational01; 2]; 2]; 2],
    /// Interval length used for the truncation.
    pub interval: usize,
}

impl CocycleTable {
    pub fn get(&self, g: usize, h: usize, k: usize) -> Rational01 {
        self.values[g][h][k]
    }

    /// Sum over the coboundary terms of every `(g, h, k, l)`; all zero for a 3-cocycle.
    pub fn coboundary_violations(&self) -> usize {
        let w = |a: usize, b: usize, c: usize| self.values[a][b][c];
        let mut bad = 0;
        for g in 0..2 {
            for h in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let lhs = w(h, k, l) + w(g, (h + k) % 2, l) + w(g, h, k);
                        let rhs = w((g + h) % 2, k, l) + w(g, h, (k + l) % 2);
                        bad += (lhs != rhs) as usize;
                    }
                }
            }
        }
        bad
    }
}

/// Geometry of the truncated boundary action: the region `R` is the band of
/// rows `0..=top`, the interval covers columns `x0..x0+len` along its upper edge.
struct Window {
    top: i64,
    x0: i64,
    len: i64,
}

impl Window {
    fn rows(&self, ly: i64, y: i64) -> bool {
        let y = y.rem_euclid(ly);
        (self.top - 1..=self.top + 1).contains(&y)
    }

    fn cols(&self, x: i64) -> bool {
        (self.x0..self.x0 + self.len).contains(&x)
    }

    fn middle(&self, x: i64) -> bool {
        (self.x0 + 1..self.x0 + self.len - 1).contains(&x)
    }
}

fn site_xy(model: &LatticeModel, s: usize) -> (i64, i64) {
    match model.lattice().label(s) {
        SiteLabel::Edge { x, y, .. } | SiteLabel::Vertex { x, y } => (x, y),
    }
}

/// Boundary 3-cocycle of the Z_2 SPT model.
///
/// The symmetry restricted to the band `R`, times the inverse product of the
/// vertex terms inside `R`, acts only near the edges of `R`; its piece along an
/// interval of the upper edge is `P`. `P^2` is reduced by stabilizers inside
/// `R` until nothing remains in the middle of the interval, then split at the
/// midpoint into `Omega_L Omega_R`. `omega` is the residual phase of the
/// associativity defect at the left end, measured against stabilizers in `R`.
pub fn spt_cocycle(model: &LatticeModel, interval: usize) -> Result<CocycleTable, ExtractionError> {
    let sym = model.vertex_symmetry().ok_or(ExtractionError::NotSpt)?;
    let lat = model.lattice();
    let (lx, ly) = (lat.lx() as i64, lat.ly() as i64);
    let len = interval as i64;
    if len < 4 || lx < len + 4 || ly < 6 {
        return Err(ExtractionError::TorusTooSmall {
            lx: lat.lx(),
            ly: lat.ly(),
        });
    }
    let win = Window { top: ly / 2, x0: 2, len };
    let in_r_row = |y: i64| (0..=win.top).contains(&y);
    let in_r = |s: usize| -> bool {
        match lat.label(s) {
            SiteLabel::Vertex { y, .. } => in_r_row(y),
            SiteLabel::Edge { y, orientation, .. } => {
                in_r_row(y) && (orientation == crate::lattice::Orientation::H || in_r_row(y + 1))
            }
        }
    };
    let sys = lat.system();
    let gens = model.group().generators();
    let inside: Vec<PauliOperator> = gens.iter().filter(|g| g.support().all(in_r)).cloned().collect();
    let r_group = StabilizerGroup::new(sys, inside.clone())?;

    let vertex_terms = model
        .terms()
        .iter()
        .zip(gens)
        .filter(|(t, g)| t.family == crate::lattice::TermFamily::AX && g.support().all(in_r))
        .fold(PauliOperator::identity(sys), |acc, (_, g)| &acc * g);
    let p_r = sym.restrict(in_r);
    let full = &p_r * &vertex_terms.adjoint();
    let p = full.restrict(|s| {
        let (x, y) = site_xy(model, s);
        win.rows(ly, y) && win.cols(x)
    });

    let sq = &p * &p;
    let omega = strip_middle(model, &sq, &inside, &win)?;
    let mid = win.x0 + len / 2;
    let omega_l = omega.restrict(|s| site_xy(model, s).0 < mid);
    let omega_r = omega.restrict(|s| site_xy(model, s).0 >= mid).with_phase(0);
    if &omega_l * &omega_r != omega {
        return Err(ExtractionError::Decomposition);
    }

    let id = PauliOperator::identity(sys);
    let pg = |g: usize| if g == 1 { p.clone() } else { id.clone() };
    let ol = |g: usize, h: usize| if g == 1 && h == 1 { omega_l.clone() } else { id.clone() };
    let mut values = [[[Rational01::ZERO; 2]; 2]; 2];
    for g in 0..2 {
        for h in 0..2 {
            for k in 0..2 {
                let lhs = &(&(&pg(g) * &ol(h, k)) * &pg(g).adjoint()) * &ol(g, (h + k) % 2);
                let rhs = &ol(g, h) * &ol((g + h) % 2, k);
                let defect = &lhs * &rhs.adjoint();
                let m = r_group.member_with_phase(&defect);
                if m.verdict == Verdict::NotMember {
                    return Err(ExtractionError::Decomposition);
                }
                values[g][h][k] = m.residual_phase;
            }
        }
    }
    Ok(CocycleTable { values, interval })
}

/// Multiplies `op` by stabilizers supported in `R` near the interval so that
/// nothing is left on its middle columns.
fn strip_middle(
    model: &LatticeModel,
    op: &PauliOperator,
    inside: &[PauliOperator],
    win: &Window,
) -> Result<PauliOperator, ExtractionError> {
    let ly = model.lattice().ly() as i64;
    let near: Vec<&PauliOperator> = inside
        .iter()
        .filter(|g| {
            g.support().all(|s| {
                let (x, y) = site_xy(model, s);
                win.rows(ly, y) && (win.x0 - 1..=win.x0 + win.len).contains(&x)
            })
        })
        .collect();
    let sys = op.system();
    let targets: Vec<usize> = (0..sys.len()).filter(|&s| win.middle(site_xy(model, s).0)).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut moduli = Vec::new();
    for &s in &targets {
        for part in 0..2 {
            let comp = |o: &PauliOperator| if part == 0 { o.x_exp(s) } else { o.z_exp(s) } as i64;
            rows.push(near.iter().map(|g| comp(g)).collect::<Vec<i64>>());
            rhs.push(BigInt::from(comp(op)));
            moduli.push(BigInt::from(sys.dim(s)));
        }
    }
    if near.is_empty() || rows.is_empty() {
        return Err(ExtractionError::Decomposition);
    }
    let a = IntMatrix::from_rows(&rows).expect("rectangular");
    let c = solve_linear_mod(&a, &rhs, &moduli)
        .expect("consistent dimensions")
        .ok_or(ExtractionError::Decomposition)?;
    let s = near
        .iter()
        .zip(&c)
        .fold(PauliOperator::identity(sys), |acc, (g, k)| &acc * &g.pow(k.to_i64().expect("small")));
    let out = op * &s.adjoint();
    if out.support().any(|s| win.middle(site_xy(model, s).0)) {
        return Err(ExtractionError::Decomposition);
    }
    Ok(out)
}
