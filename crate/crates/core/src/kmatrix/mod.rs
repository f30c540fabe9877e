//! K-matrix description of Abelian TQDs and of their construction from stacked toric codes.

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::anyon::AnyonTheory;
use crate::exactmath::{smith_normal_form, ExactError, IntMatrix, RationalMatrix, Rational01};
use crate::params::TqdParams;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KMatrixError {
    #[error("K must be symmetric")]
    NotSymmetric,
    #[error("K is singular")]
    Singular,
    #[error("transformation matrix is not unimodular")]
    NotUnimodular,
    #[error("vector has length {found}, K has dimension {expected}")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Symmetric integer matrix defining an Abelian anyon theory on `Z^n / K Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct KMatrix(IntMatrix);

impl TryFrom<IntMatrix> for KMatrix {
    type Error = KMatrixError;

    fn try_from(m: IntMatrix) -> Result<Self, KMatrixError> {
        KMatrix::new(m)
    }
}

impl From<KMatrix> for IntMatrix {
    fn from(k: KMatrix) -> IntMatrix {
        k.0
    }
}

fn rat_to_01(v: &BigRational) -> Rational01 {
    let den = v.denom().clone();
    let num = v.numer() % &den;
    Rational01::from_i128(num.to_i128().expect("fits"), den.to_i128().expect("fits"))
}

/// Diagonal block `N` and symmetric block `S` of the TQD K-matrix.
fn n_and_s(p: &TqdParams) -> (Vec<i64>, Vec<Vec<i64>>) {
    let m = p.layers();
    let n: Vec<i64> = (0..m).map(|i| p.order(i) as i64).collect();
    let s = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { 2 * p.n(i) as i64 } else { p.nij(i, j) as i64 })
                .collect()
        })
        .collect();
    (n, s)
}

/// Upper-triangular `U` with `n_i` on the diagonal and `n_ij` above it.
fn upper(p: &TqdParams) -> Vec<Vec<i64>> {
    let m = p.layers();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => p.n(i) as i64,
                    std::cmp::Ordering::Greater => p.nij(i, j) as i64,
                })
                .collect()
        })
        .collect()
}

fn blocks(a: &[Vec<i64>], b: &[Vec<i64>], c: &[Vec<i64>], d: &[Vec<i64>]) -> IntMatrix {
    let rows: Vec<Vec<i64>> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x.iter().chain(y).copied().collect())
        .chain(c.iter().zip(d).map(|(x, y)| x.iter().chain(y).copied().collect()))
        .collect();
    IntMatrix::from_rows(&rows).expect("square blocks")
}

fn diag(v: &[i64]) -> Vec<Vec<i64>> {
    (0..v.len())
        .map(|i| (0..v.len()).map(|j| if i == j { v[i] } else { 0 }).collect())
        .collect()
}

fn zeros(m: usize) -> Vec<Vec<i64>> {
    vec![vec![0; m]; m]
}

/// Cokernel `Z^n / K Z^n` with one representative per anyon.
#[derive(Clone, Debug, Serialize)]
pub struct AnyonGroup {
    /// Nontrivial invariant factors.
    pub invariant_factors: Vec<u64>,
    /// Generator vectors, one per nontrivial factor.
    pub generators: Vec<Vec<i64>>,
    /// Coset representatives in generator-coordinate order.
    pub representatives: Vec<Vec<i64>>,
}

/// Anyon counts by spin together with the matrix signature.
#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub counts: BTreeMap<Rational01, usize>,
    pub signature: i64,
}

impl KMatrix {
    pub fn new(k: IntMatrix) -> Result<Self, KMatrixError> {
        if !k.is_symmetric() {
            return Err(KMatrixError::NotSymmetric);
        }
        Ok(KMatrix(k))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, KMatrixError> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// `[[0, N], [N, -S]]`: fluxes first, charges second.
    pub fn tqd(p: &TqdParams) -> Self {
        let (n, s) = n_and_s(p);
        let neg_s: Vec<Vec<i64>> = s.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        KMatrix(blocks(&zeros(n.len()), &diag(&n), &diag(&n), &neg_s))
    }

    /// Stack of `Z_{N_i^2}` toric codes, `[[0, N^2], [N^2, 0]]`.
    pub fn stacked_toric_codes(p: &TqdParams) -> Self {
        let sq: Vec<i64> = (0..p.layers()).map(|i| (p.order(i) as i64).pow(2)).collect();
        KMatrix(blocks(&zeros(sq.len()), &diag(&sq), &diag(&sq), &zeros(sq.len())))
    }

    pub fn toric_code(n: i64) -> Self {
        KMatrix(IntMatrix::from_rows(&[[0, n], [n, 0]]).expect("2x2"))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn determinant(&self) -> BigInt {
        self.0.determinant().expect("square")
    }

    pub fn inverse(&self) -> Result<RationalMatrix, KMatrixError> {
        self.0.to_rational().inverse().map_err(|e| match e {
            ExactError::Singular => KMatrixError::Singular,
            e => e.into(),
        })
    }

    fn check(&self, l: &[i64]) -> Result<(), KMatrixError> {
        if l.len() == self.dim() {
            Ok(())
        } else {
            Err(KMatrixError::Length {
                expected: self.dim(),
                found: l.len(),
            })
        }
    }

    fn form(inv: &RationalMatrix, a: &[i64], b: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    acc += inv.get(i, j) * BigRational::from_integer(BigInt::from(x * y));
                }
            }
        }
        acc
    }

    /// `q(l) = l^T K^{-1} l / 2 mod 1`.
    pub fn q_of(&self, l: &[i64]) -> Result<Rational01, KMatrixError> {
        self.check(l)?;
        let inv = self.inverse()?;
        let v = Self::form(&inv, l, l) / BigRational::from_integer(BigInt::from(2));
        Ok(rat_to_01(&v))
    }

    /// `b(l, l') = l^T K^{-1} l' mod 1`.
    pub fn b_of(&self, l: &[i64], lp: &[i64]) -> Result<Rational01, KMatrixError> {
        self.check(l)?;
        self.check(lp)?;
        Ok(rat_to_01(&Self::form(&self.inverse()?, l, lp)))
    }

    /// Cokernel of `K` via Smith form: `U K V = D`, generators `U^{-1} e_i`.
    pub fn anyon_group(&self) -> Result<AnyonGroup, KMatrixError> {
        if self.determinant().is_zero() {
            return Err(KMatrixError::Singular);
        }
        let snf = smith_normal_form(&self.0);
        let uinv = snf.u.inverse_unimodular()?;
        let d: Vec<i64> = snf.diagonal().iter().map(|x| x.abs().to_i64().expect("fits")).collect();
        let kept: Vec<usize> = (0..d.len()).filter(|&i| d[i] != 1).collect();
        let generators: Vec<Vec<i64>> = kept
            .iter()
            .map(|&i| (0..self.dim()).map(|r| uinv.get_i64(r, i)).collect())
            .collect();
        let factors: Vec<u64> = kept.iter().map(|&i| d[i] as u64).collect();
        let coords = AnyonTheory::new(
            factors.clone(),
            vec![Rational01::ZERO; factors.len()],
            vec![vec![Rational01::ZERO; factors.len()]; factors.len()],
        )
        .expect("shape")
        .elements();
        let representatives = coords
            .iter()
            .map(|y| {
                (0..self.dim())
                    .map(|r| y.iter().zip(&generators).map(|(c, g)| c * g[r]).sum())
                    .collect()
            })
            .collect();
        Ok(AnyonGroup {
            invariant_factors: factors,
            generators,
            representatives,
        })
    }

    /// Theory on the Smith-basis generators with `q` and `b` from `K^{-1}`.
    pub fn theory(&self) -> Result<AnyonTheory, KMatrixError> {
        let g = self.anyon_group()?;
        let q = g.generators.iter().map(|l| self.q_of(l)).collect::<Result<Vec<_>, _>>()?;
        let b = g
            .generators
            .iter()
            .map(|x| g.generators.iter().map(|y| self.b_of(x, y)).collect())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AnyonTheory::new(g.invariant_factors, q, b).expect("shape"))
    }

    /// `W K W^T`.
    pub fn transform(&self, w: &IntMatrix) -> Result<KMatrix, KMatrixError> {
        if w.rows() != self.dim() || w.cols() != self.dim() {
            return Err(ExactError::DimensionMismatch {
                expected: self.dim(),
                found: w.rows(),
            }
            .into());
        }
        if !w.is_unimodular() {
            return Err(KMatrixError::NotUnimodular);
        }
        let out = w.checked_mul(&self.0)?.checked_mul(&w.transpose())?;
        Ok(KMatrix(out))
    }

    /// Positive minus negative eigenvalue count.
    pub fn signature(&self) -> Result<i64, KMatrixError> {
        let (p, n, _) = self.0.to_rational().inertia()?;
        Ok(p as i64 - n as i64)
    }

    pub fn census(&self) -> Result<Census, KMatrixError> {
        let g = self.anyon_group()?;
        let inv = self.inverse()?;
        let mut counts = BTreeMap::new();
        for l in &g.representatives {
            let q = rat_to_01(&(Self::form(&inv, l, l) / BigRational::from_integer(BigInt::from(2))));
            *counts.entry(q).or_insert(0) += 1;
        }
        Ok(Census {
            counts,
            signature: self.signature()?,
        })
    }
}

/// Boson matrix `Q`, deconfined lattice `L` and the three identities of the
/// stacked-toric-code condensation.
#[derive(Clone, Debug, Serialize)]
pub struct CondensationCheck {
    #[serde(rename = "Q")]
    pub q: IntMatrix,
    #[serde(rename = "L")]
    pub l: IntMatrix,
    /// `Q^T K_TC^{-1} Q = -S`.
    pub bosons_pairing: bool,
    /// `L^T K_TC^{-1} Q = (0; -I) mod 1`.
    pub deconfined_pairing: bool,
    /// `L^{-1} K_TC L^{-T} = K_TQD`.
    pub recovers_tqd: bool,
}

impl CondensationCheck {
    pub fn all_hold(&self) -> bool {
        self.bosons_pairing && self.deconfined_pairing && self.recovers_tqd
    }
}

/// Builds `Q = (-N; N U)` and `L = [[I, 0], [N U^T N^{-1}, N]]` and checks the identities.
pub fn condensation_matrices(p: &TqdParams) -> Result<CondensationCheck, KMatrixError> {
    let m = p.layers();
    let (n, s) = n_and_s(p);
    let u = upper(p);
    let q_rows: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { -n[i] } else { 0 }).collect())
        .chain((0..m).map(|i| (0..m).map(|j| n[i] * u[i][j]).collect()))
        .collect();
    let q = IntMatrix::from_rows(&q_rows)?;
    // (N U^T N^{-1})_{ij} = N_i U_{ji} / N_j; integral since N_j | N_i whenever U_{ji} != 0.
    let lower: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| n[i] * u[j][i] / n[j]).collect())
        .collect();
    let ident: Vec<Vec<i64>> = diag(&vec![1; m]);
    let l = blocks(&ident, &zeros(m), &lower, &diag(&n));

    let ktc = KMatrix::stacked_toric_codes(p);
    let kinv = ktc.inverse()?;
    let qr = q.to_rational();
    let lr = l.to_rational();
    let qkq = qr.transpose().checked_mul(&kinv)?.checked_mul(&qr)?;
    let neg_s: Vec<Vec<i64>> = s.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let bosons_pairing = qkq == IntMatrix::from_rows(&neg_s)?.to_rational();

    let lkq = lr.transpose().checked_mul(&kinv)?.checked_mul(&qr)?;
    let deconfined_pairing = (0..2 * m).all(|i| {
        (0..m).all(|j| {
            let target = if i >= m && i - m == j { -1 } else { 0 };
            (lkq.get(i, j) - BigRational::from_integer(BigInt::from(target))).is_integer()
        })
    });

    let linv = lr.inverse()?;
    let kt = linv.checked_mul(&ktc.0.to_rational())?.checked_mul(&linv.transpose())?;
    let recovers_tqd = kt == KMatrix::tqd(p).0.to_rational();
    Ok(CondensationCheck {
        q,
        l,
        bosons_pairing,
        deconfined_pairing,
        recovers_tqd,
    })
}

/// Theory `F_{2^r}`: `Z_{2^r} x Z_{2^r}` with `q(a) = (a1^2 + a2^2 + a1 a2) / 2^r`.
pub fn f2r_theory(r: u32) -> AnyonTheory {
    let n = 1i64 << r;
    let q = Rational01::new(1, n);
    AnyonTheory::new(vec![n as u64; 2], vec![q, q], vec![vec![q.scale(2), q], vec![q, q.scale(2)]]).expect("shape")
}
