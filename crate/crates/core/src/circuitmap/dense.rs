//! Dense state-vector oracle for small stabilizer codes.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CircuitError;
use crate::pauli::PauliOperator;
use crate::stabilizer::StabilizerGroup;

/// Largest Hilbert-space dimension the oracle accepts.
pub const DENSE_LIMIT: u64 = 1 << 20;

/// Relative norm below which a projected vector counts as already spanned.
const RANK_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct DenseGroundSpace {
    pub dimension: usize,
    /// Orthonormal basis of the joint `+1` eigenspace.
    pub basis: Vec<Vec<Complex64>>,
}

/// Mixed-radix layout with site 0 as the least significant digit.
struct Layout {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(dims: &[u32]) -> Result<Self, CircuitError> {
        let total = dims.iter().try_fold(1u64, |acc, &d| {
            let t = acc.saturating_mul(d as u64);
            (t <= DENSE_LIMIT).then_some(t).ok_or(CircuitError::TooLarge { dimension: t })
        })?;
        let mut strides = Vec::with_capacity(dims.len());
        let mut s = 1;
        for &d in dims {
            strides.push(s);
            s *= d as usize;
        }
        Ok(Layout {
            dims: dims.iter().map(|&d| d as usize).collect(),
            strides,
            total: total as usize,
        })
    }

    /// `P psi` for `P = e^{pi i k/D} prod_s X_s^{x_s} Z_s^{z_s}`, with `Z|j> = e^{2 pi i j/d}|j>`.
    fn apply(&self, p: &PauliOperator, psi: &[Complex64]) -> Vec<Complex64> {
        let big_d = p.system().lcm() as f64;
        let global = Complex64::from_polar(1.0, std::f64::consts::PI * p.phase() as f64 / big_d);
        let entries: Vec<(usize, usize, usize)> = p.entries().map(|(s, x, z)| (s, x as usize, z as usize)).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); self.total];
        for (j, &amp) in psi.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let mut target = j;
            let mut turns = 0.0;
            for &(s, x, z) in &entries {
                let d = self.dims[s];
                let digit = (j / self.strides[s]) % d;
                turns += (z * digit) as f64 / d as f64;
                let shifted = (digit + x) % d;
                target = target + shifted * self.strides[s] - digit * self.strides[s];
            }
            out[target] += amp * global * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * turns);
        }
        out
    }
}

/// Projector `(1/L) sum_{k<L} g^k` where `g^L` is the first scalar power; `None` when
/// that scalar is not `1`, so the `+1` eigenspace of `g` is empty.
fn project(layout: &Layout, g: &PauliOperator, psi: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let mut power = g.clone();
    let mut order = 1;
    while !power.is_scalar() {
        power = &power * g;
        order += 1;
    }
    if power.phase() != 0 {
        return None;
    }
    let mut acc = psi.clone();
    let mut cur = psi;
    for _ in 1..order {
        cur = layout.apply(g, &cur);
        for (a, c) in acc.iter_mut().zip(&cur) {
            *a += c;
        }
    }
    let scale = 1.0 / order as f64;
    acc.iter_mut().for_each(|a| *a *= scale);
    Some(acc)
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn remove_components(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for b in basis {
        let overlap: Complex64 = b.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum();
        v.iter_mut().zip(b).for_each(|(y, x)| *y -= overlap * x);
    }
}

/// Joint `+1` eigenspace of the generators, found by projecting seeded random
/// vectors and orthonormalizing until two consecutive draws add nothing new.
pub fn dense_ground_space(group: &StabilizerGroup, seed: u64) -> Result<DenseGroundSpace, CircuitError> {
    let layout = Layout::new(group.system().dims())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut misses = 0;
    while misses < 2 && basis.len() < layout.total {
        let mut v: Vec<Complex64> = (0..layout.total)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for g in group.generators() {
            match project(&layout, g, v) {
                Some(p) => v = p,
                None => return Ok(DenseGroundSpace { dimension: 0, basis }),
            }
        }
        let before = norm(&v);
        if before < RANK_TOLERANCE {
            return Ok(DenseGroundSpace { dimension: 0, basis });
        }
        remove_components(&mut v, &basis);
        remove_components(&mut v, &basis);
        let after = norm(&v);
        if after / before > RANK_TOLERANCE {
            v.iter_mut().for_each(|c| *c /= after);
            basis.push(v);
            misses = 0;
        } else {
            misses += 1;
        }
    }
    Ok(DenseGroundSpace {
        dimension: basis.len(),
        basis,
    })
}
