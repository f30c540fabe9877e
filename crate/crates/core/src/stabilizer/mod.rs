//! Stabilizer groups over mixed-dimension qudits.

#[cfg(test)]
mod tests;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{cokernel_order, IntMatrix, ModDiagonal, Rational01};
use crate::pauli::{PauliError, PauliJson, PauliOperator, QuditSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilizerError {
    #[error("generators fail to commute: {0:?}")]
    NonCommuting(Vec<(usize, usize)>),
    #[error("group contains a nontrivial scalar (witness coefficients {0:?})")]
    Inconsistent(Vec<i64>),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Member,
    MemberUpToPhase,
    NotMember,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipResult {
    /// One exponent per generator; the ordered product reproduces the query's Pauli part.
    pub coefficients: Vec<i64>,
    /// `phase(query) - phase(product)` in turns; zero exactly when `verdict` is `Member`.
    pub residual_phase: Rational01,
    pub verdict: Verdict,
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    fn not_member() -> Self {
        MembershipResult {
            coefficients: Vec::new(),
            residual_phase: Rational01::ZERO,
            verdict: Verdict::NotMember,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Consistency {
    Consistent,
    /// Coefficients whose generator product is the scalar `e^{2 pi i phase}`.
    Inconsistent { witness: Vec<i64>, phase: Rational01 },
}

/// A list of Pauli generators on one qudit system.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    system: Arc<QuditSystem>,
    generators: Vec<PauliOperator>,
}

/// `{"dims": [...], "generators": [{"phase", "x", "z"}, ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub dims: Vec<u32>,
    pub generators: Vec<PauliJson>,
}

impl StabilizerGroup {
    /// Builds a group, rejecting non-commuting generators.
    pub fn new(system: &Arc<QuditSystem>, generators: Vec<PauliOperator>) -> Result<Self, StabilizerError> {
        let g = Self::candidate(system, generators)?;
        let bad = g.assert_commuting();
        if bad.is_empty() {
            Ok(g)
        } else {
            Err(StabilizerError::NonCommuting(bad))
        }
    }

    /// Builds a candidate generating set without the commutation check.
    pub fn candidate(system: &Arc<QuditSystem>, generators: Vec<PauliOperator>) -> Result<Self, StabilizerError> {
        for g in &generators {
            if g.system() != system {
                return Err(PauliError::SystemMismatch.into());
            }
        }
        Ok(StabilizerGroup {
            system: Arc::clone(system),
            generators,
        })
    }

    pub fn system(&self) -> &Arc<QuditSystem> {
        &self.system
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// All index pairs `(i, j)`, `i < j`, of non-commuting generators.
    pub fn assert_commuting(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate().skip(i + 1) {
                if !a.commutes_with(b) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    fn require_commuting(&self) -> Result<(), StabilizerError> {
        let bad = self.assert_commuting();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(StabilizerError::NonCommuting(bad))
        }
    }

    /// Sites touched by some generator, sorted.
    fn active_sites(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.generators.iter().flat_map(|g| g.support()).collect();
        set.into_iter().collect()
    }

    /// Lifted exponent matrix over `Z/D`: two rows (x, z) per active site, one
    /// column per generator, site-`q` entries scaled by `D/d_q`.
    fn lifted_rows(&self, sites: &[usize]) -> Vec<Vec<i64>> {
        let big_d = self.system.lcm() as i64;
        let mut rows = vec![vec![0i64; self.generators.len()]; 2 * sites.len()];
        for (j, g) in self.generators.iter().enumerate() {
            for (s, x, z) in g.entries() {
                let k = sites.binary_search(&s).expect("active site");
                let f = big_d / self.system.dim(s) as i64;
                rows[2 * k][j] = f * x as i64;
                rows[2 * k + 1][j] = f * z as i64;
            }
        }
        rows
    }

    fn lifted_vector(&self, p: &PauliOperator, sites: &[usize]) -> Option<Vec<i64>> {
        let big_d = self.system.lcm() as i64;
        let mut v = vec![0i64; 2 * sites.len()];
        for (s, x, z) in p.entries() {
            let k = sites.binary_search(&s).ok()?;
            let f = big_d / self.system.dim(s) as i64;
            v[2 * k] = f * x as i64;
            v[2 * k + 1] = f * z as i64;
        }
        Some(v)
    }

    /// Ordered product `prod_j g_j^{c_j}`.
    pub fn product(&self, coefficients: &[i64]) -> PauliOperator {
        self.generators
            .iter()
            .zip(coefficients)
            .filter(|(_, &c)| c != 0)
            .fold(PauliOperator::identity(&self.system), |acc, (g, &c)| &acc * &g.pow(c))
    }

    /// Order of the group modulo phases, via the cokernel of the generator
    /// exponents stacked with the relations `d_q e_q`.
    pub fn group_order(&self) -> Result<BigInt, StabilizerError> {
        self.require_commuting()?;
        let sites = self.active_sites();
        let n = 2 * sites.len();
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(self.generators.len() + n);
        for g in &self.generators {
            let mut v = vec![BigInt::zero(); n];
            for (s, x, z) in g.entries() {
                let k = sites.binary_search(&s).expect("active site");
                v[2 * k] = BigInt::from(x);
                v[2 * k + 1] = BigInt::from(z);
            }
            cols.push(v);
        }
        let mut full = BigInt::one();
        for (k, &s) in sites.iter().enumerate() {
            let d = BigInt::from(self.system.dim(s));
            for off in 0..2 {
                let mut v = vec![BigInt::zero(); n];
                v[2 * k + off] = d.clone();
                cols.push(v);
            }
            full *= &d * &d;
        }
        // Columns span the lattice; transpose so that rows are coordinates.
        let m = IntMatrix::from_big_rows(cols, n).expect("rectangular").transpose();
        let coker = cokernel_order(&m).expect("relation rows make the cokernel finite");
        Ok(full / coker)
    }

    /// The same order computed from the diagonal of the lifted system over `Z/D`.
    pub fn group_order_modular(&self) -> BigInt {
        let sites = self.active_sites();
        let big_d = self.system.lcm() as i64;
        let rows = self.lifted_rows(&sites);
        let diag = ModDiagonal::new(rows, self.generators.len(), big_d, Vec::new());
        diag.image_order()
    }

    pub fn scalar_consistency(&self) -> Result<Consistency, StabilizerError> {
        self.require_commuting()?;
        let sites = self.active_sites();
        let big_d = self.system.lcm() as i64;
        let n = self.generators.len();
        let diag = ModDiagonal::new(self.lifted_rows(&sites), n, big_d, Vec::new());
        let mut candidates = diag.kernel();
        candidates.extend((0..n).map(|j| {
            let mut c = vec![0i64; n];
            c[j] = big_d;
            c
        }));
        for c in candidates {
            let p = self.product(&c);
            debug_assert!(p.is_scalar());
            if p.phase() != 0 {
                return Ok(Consistency::Inconsistent {
                    phase: p.phase_turns(),
                    witness: c,
                });
            }
        }
        Ok(Consistency::Consistent)
    }

    /// `prod_q d_q / |S|`.
    pub fn logical_dimension(&self) -> Result<BigInt, StabilizerError> {
        if let Consistency::Inconsistent { witness, .. } = self.scalar_consistency()? {
            return Err(StabilizerError::Inconsistent(witness));
        }
        let total: BigInt = self.system.dims().iter().map(|&d| BigInt::from(d)).product();
        let order = self.group_order()?;
        let (q, r) = total.div_rem(&order);
        debug_assert!(r.is_zero(), "order of a consistent group divides the dimension");
        Ok(q)
    }

    pub fn member_with_phase(&self, p: &PauliOperator) -> MembershipResult {
        self.members_with_phase(std::slice::from_ref(p)).pop().expect("one query")
    }

    /// Batched membership: one diagonalization serves every query.
    pub fn members_with_phase(&self, queries: &[PauliOperator]) -> Vec<MembershipResult> {
        let sites = self.active_sites();
        let big_d = self.system.lcm() as i64;
        let vecs: Vec<Option<Vec<i64>>> = queries
            .iter()
            .map(|q| if q.system() == &self.system { self.lifted_vector(q, &sites) } else { None })
            .collect();
        let rhs: Vec<Vec<i64>> = vecs
            .iter()
            .map(|v| v.clone().unwrap_or_else(|| vec![0; 2 * sites.len()]))
            .collect();
        let diag = ModDiagonal::new(self.lifted_rows(&sites), self.generators.len(), big_d, rhs);
        queries
            .iter()
            .zip(&vecs)
            .enumerate()
            .map(|(k, (q, v))| {
                if v.is_none() {
                    return MembershipResult::not_member();
                }
                let Some(c) = diag.solve(k) else {
                    return MembershipResult::not_member();
                };
                let prod = self.product(&c);
                debug_assert_eq!(prod.symplectic(), q.symplectic());
                let residual = q.phase_turns() - prod.phase_turns();
                MembershipResult {
                    coefficients: c,
                    residual_phase: residual,
                    verdict: if residual.is_zero() { Verdict::Member } else { Verdict::MemberUpToPhase },
                }
            })
            .collect()
    }

    /// Subgroup of elements commuting with every probe.
    pub fn centralizer_in_group(&self, probes: &[PauliOperator]) -> Result<StabilizerGroup, StabilizerError> {
        if probes.is_empty() {
            return Ok(self.clone());
        }
        for p in probes {
            if p.system() != &self.system {
                return Err(PauliError::SystemMismatch.into());
            }
        }
        let big_d = self.system.lcm() as i64;
        let pairing: Vec<Vec<i64>> = probes
            .iter()
            .map(|p| {
                self.generators
                    .iter()
                    .map(|g| {
                        let phi = g.commutation_phase(p).expect("same system");
                        phi.numerator() * (big_d / phi.denominator())
                    })
                    .collect()
            })
            .collect();
        let diag = ModDiagonal::new(pairing, self.generators.len(), big_d, Vec::new());
        let gens = diag
            .kernel()
            .into_iter()
            .map(|c| self.product(&c))
            .filter(|p| !p.is_identity())
            .collect();
        Ok(StabilizerGroup {
            system: Arc::clone(&self.system),
            generators: gens,
        })
    }

    /// Condensation by measurement with `+1` outcomes: `<C_S(ops), ops>`.
    pub fn measure(&self, ops: &[PauliOperator]) -> Result<StabilizerGroup, StabilizerError> {
        let candidate = Self::candidate(&self.system, ops.to_vec())?;
        candidate.require_commuting()?;
        let mut out = self.centralizer_in_group(ops)?;
        out.generators.extend(ops.iter().cloned());
        Ok(out)
    }

    /// Every generator of `other` is an exact member of `self`.
    pub fn contains_group(&self, other: &StabilizerGroup) -> bool {
        self.members_with_phase(&other.generators)
            .iter()
            .all(MembershipResult::is_member)
    }

    /// Equality by mutual exact membership of generators.
    pub fn same_group(&self, other: &StabilizerGroup) -> bool {
        self.system == other.system && self.contains_group(other) && other.contains_group(self)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            dims: self.system.dims().to_vec(),
            generators: self.generators.iter().map(PauliJson::from).collect(),
        }
    }

    pub fn from_json(j: &GroupJson) -> Result<Self, StabilizerError> {
        let system = QuditSystem::new(j.dims.clone())?;
        let gens = j
            .generators
            .iter()
            .map(|g| g.to_operator(&system))
            .collect::<Result<Vec<_>, _>>()?;
        Self::candidate(&system, gens)
    }
}
