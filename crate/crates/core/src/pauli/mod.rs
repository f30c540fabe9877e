//! Generalized Pauli operators on mixed-dimension qudits with exact phases.

mod clifford;
mod json;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::exactmath::Rational01;

pub use clifford::CliffordGate;
pub use json::PauliJson;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("site {site} out of range for a system of {len} qudits")]
    SiteOutOfRange { site: usize, len: usize },
    #[error("operators act on different qudit systems")]
    SystemMismatch,
    #[error("qudit dimension must be at least 2, got {0}")]
    BadDimension(u32),
    #[error("gate {gate} needs {needed} on sites {sites:?}")]
    GateDimension {
        gate: &'static str,
        needed: &'static str,
        sites: Vec<usize>,
    },
}

/// Qudit dimensions by site, with the cached common multiple `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuditSystem {
    dims: Vec<u32>,
    lcm: u64,
}

impl QuditSystem {
    pub fn new(dims: Vec<u32>) -> Result<Arc<Self>, PauliError> {
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(PauliError::BadDimension(d));
        }
        let lcm = dims.iter().fold(1u64, |acc, &d| acc.lcm(&(d as u64)));
        Ok(Arc::new(QuditSystem { dims, lcm }))
    }

    pub fn uniform(n: usize, d: u32) -> Result<Arc<Self>, PauliError> {
        Self::new(vec![d; n])
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn dim(&self, site: usize) -> u32 {
        self.dims[site]
    }

    /// `D = lcm(d_q)`; phases are exponents of `e^{pi i / D}` taken mod `2D`.
    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    pub fn phase_modulus(&self) -> u64 {
        2 * self.lcm
    }

    fn check_site(&self, site: usize) -> Result<(), PauliError> {
        if site < self.dims.len() {
            Ok(())
        } else {
            Err(PauliError::SiteOutOfRange {
                site,
                len: self.dims.len(),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliKind {
    X,
    Z,
}

/// `e^{pi i phase / D} * prod_q X_q^{x_q} Z_q^{z_q}`, sites in index order.
#[derive(Clone, Debug)]
pub struct PauliOperator {
    system: Arc<QuditSystem>,
    phase: u64,
    /// site -> (x exponent, z exponent); entries with both zero are dropped.
    sites: BTreeMap<usize, (u32, u32)>,
}

impl PartialEq for PauliOperator {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.system, &o.system) || self.system == o.system)
            && self.phase == o.phase
            && self.sites == o.sites
    }
}

impl Eq for PauliOperator {}

impl std::hash::Hash for PauliOperator {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.phase.hash(h);
        self.sites.hash(h);
    }
}

fn reduce(v: i64, m: u64) -> u64 {
    v.rem_euclid(m as i64) as u64
}

impl PauliOperator {
    pub fn identity(system: &Arc<QuditSystem>) -> Self {
        PauliOperator {
            system: Arc::clone(system),
            phase: 0,
            sites: BTreeMap::new(),
        }
    }

    /// Scalar `e^{pi i phase / D}`.
    pub fn scalar(system: &Arc<QuditSystem>, phase: i64) -> Self {
        PauliOperator {
            system: Arc::clone(system),
            phase: reduce(phase, system.phase_modulus()),
            sites: BTreeMap::new(),
        }
    }

    pub fn single(system: &Arc<QuditSystem>, site: usize, kind: PauliKind, exponent: i64) -> Result<Self, PauliError> {
        system.check_site(site)?;
        let e = reduce(exponent, system.dim(site) as u64) as u32;
        let mut op = Self::identity(system);
        let entry = match kind {
            PauliKind::X => (e, 0),
            PauliKind::Z => (0, e),
        };
        if entry != (0, 0) {
            op.sites.insert(site, entry);
        }
        Ok(op)
    }

    pub fn x(system: &Arc<QuditSystem>, site: usize, exponent: i64) -> Result<Self, PauliError> {
        Self::single(system, site, PauliKind::X, exponent)
    }

    pub fn z(system: &Arc<QuditSystem>, site: usize, exponent: i64) -> Result<Self, PauliError> {
        Self::single(system, site, PauliKind::Z, exponent)
    }

    /// Builds `e^{pi i phase/D} prod X^x Z^z` from normal-ordered exponent lists.
    /// Repeated sites accumulate exponents.
    pub fn from_exponents(
        system: &Arc<QuditSystem>,
        phase: i64,
        x: &[(usize, i64)],
        z: &[(usize, i64)],
    ) -> Result<Self, PauliError> {
        let mut acc: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
        for &(s, e) in x {
            system.check_site(s)?;
            acc.entry(s).or_default().0 += e;
        }
        for &(s, e) in z {
            system.check_site(s)?;
            acc.entry(s).or_default().1 += e;
        }
        let mut op = Self::scalar(system, phase);
        for (s, (xe, ze)) in acc {
            let d = system.dim(s) as u64;
            let entry = (reduce(xe, d) as u32, reduce(ze, d) as u32);
            if entry != (0, 0) {
                op.sites.insert(s, entry);
            }
        }
        Ok(op)
    }

    pub fn system(&self) -> &Arc<QuditSystem> {
        &self.system
    }

    /// Phase exponent in `[0, 2D)` of `e^{pi i / D}`.
    pub fn phase(&self) -> u64 {
        self.phase
    }

    /// Phase as a fraction of a full turn.
    pub fn phase_turns(&self) -> Rational01 {
        Rational01::new(self.phase as i64, self.system.phase_modulus() as i64)
    }

    pub fn x_exp(&self, site: usize) -> u32 {
        self.sites.get(&site).map_or(0, |e| e.0)
    }

    pub fn z_exp(&self, site: usize) -> u32 {
        self.sites.get(&site).map_or(0, |e| e.1)
    }

    /// Nonzero `(site, (x, z))` entries in site order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, u32)> + '_ {
        self.sites.iter().map(|(&s, &(x, z))| (s, x, z))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.sites.keys().copied()
    }

    pub fn weight(&self) -> usize {
        self.sites.len()
    }

    /// True when no qudit is acted on (a pure phase).
    pub fn is_scalar(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.sites.is_empty() && self.phase == 0
    }

    /// Keeps the phase and the tensor factors on sites where `keep` holds.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        PauliOperator {
            system: self.system.clone(),
            phase: self.phase,
            sites: self.sites.iter().filter(|(s, _)| keep(**s)).map(|(&s, &e)| (s, e)).collect(),
        }
    }

    pub fn with_phase(&self, phase: i64) -> Self {
        let mut out = self.clone();
        out.phase = reduce(phase, self.system.phase_modulus());
        out
    }

    pub fn times_phase(&self, delta: i64) -> Self {
        self.with_phase(self.phase as i64 + delta)
    }

    fn same_system(&self, o: &Self) -> Result<(), PauliError> {
        if Arc::ptr_eq(&self.system, &o.system) || self.system == o.system {
            Ok(())
        } else {
            Err(PauliError::SystemMismatch)
        }
    }

    /// Normal-ordered product `self * o`.
    pub fn multiply(&self, o: &Self) -> Result<Self, PauliError> {
        self.same_system(o)?;
        let big_d = self.system.lcm();
        let m = self.system.phase_modulus();
        let mut phase = (self.phase + o.phase) % m;
        let mut sites = self.sites.clone();
        for (&s, &(x2, z2)) in &o.sites {
            let d = self.system.dim(s);
            let e = sites.entry(s).or_insert((0, 0));
            // Z^{z1} X^{x2} = w^{z1 x2} X^{x2} Z^{z1}, w = e^{2 pi i/d}
            phase = (phase + 2 * (big_d / d as u64) * ((e.1 as u64 * x2 as u64) % d as u64)) % m;
            e.0 = (e.0 + x2) % d;
            e.1 = (e.1 + z2) % d;
            if *e == (0, 0) {
                sites.remove(&s);
            }
        }
        Ok(PauliOperator {
            system: Arc::clone(&self.system),
            phase,
            sites,
        })
    }

    /// Inverse (the Paulis are unitary).
    pub fn adjoint(&self) -> Self {
        let big_d = self.system.lcm();
        let m = self.system.phase_modulus();
        let mut phase = (m - self.phase) % m;
        let mut sites = BTreeMap::new();
        for (&s, &(x, z)) in &self.sites {
            let d = self.system.dim(s);
            phase = (phase + 2 * (big_d / d as u64) * ((x as u64 * z as u64) % d as u64)) % m;
            sites.insert(s, ((d - x) % d, (d - z) % d));
        }
        PauliOperator {
            system: Arc::clone(&self.system),
            phase,
            sites,
        }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Self {
        let big_d = self.system.lcm() as i64;
        // P^D is a scalar of order dividing 2D, so P^{2D^2} = 1.
        let period = 2 * big_d * big_d;
        let mut k = k.rem_euclid(period);
        let mut base = self.clone();
        let mut acc = Self::identity(&self.system);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// `phi` with `P Q = e^{2 pi i phi} Q P`.
    pub fn commutation_phase(&self, o: &Self) -> Result<Rational01, PauliError> {
        self.same_system(o)?;
        Ok(self.comm_unchecked(o))
    }

    /// True when the two operators commute.
    pub fn commutes_with(&self, o: &Self) -> bool {
        self.comm_unchecked(o).is_zero()
    }

    fn comm_unchecked(&self, o: &Self) -> Rational01 {
        let big_d = self.system.lcm() as i64;
        let (small, large, sign) = if self.sites.len() <= o.sites.len() {
            (&self.sites, &o.sites, 1)
        } else {
            (&o.sites, &self.sites, -1)
        };
        let mut acc: i64 = 0;
        for (s, &(x1, z1)) in small {
            if let Some(&(x2, z2)) = large.get(s) {
                let d = self.system.dim(*s) as i64;
                let term = (z1 as i64 * x2 as i64 - x1 as i64 * z2 as i64).rem_euclid(d);
                acc = (acc + (big_d / d) * term).rem_euclid(big_d);
            }
        }
        Rational01::new(sign * acc, big_d)
    }

    /// Exponent vector `(x_0, z_0, x_1, z_1, ...)` over all sites.
    pub fn symplectic(&self) -> Vec<i64> {
        let mut v = vec![0i64; 2 * self.system.len()];
        for (&s, &(x, z)) in &self.sites {
            v[2 * s] = x as i64;
            v[2 * s + 1] = z as i64;
        }
        v
    }

    /// Same exponents, relabelled through `map` onto another system.
    pub fn remap_sites(&self, system: &Arc<QuditSystem>, map: impl Fn(usize) -> usize) -> Result<Self, PauliError> {
        let x: Vec<(usize, i64)> = self.entries().map(|(s, x, _)| (map(s), x as i64)).collect();
        let z: Vec<(usize, i64)> = self.entries().map(|(s, _, z)| (map(s), z as i64)).collect();
        if !system.lcm().is_multiple_of(self.system.lcm()) {
            return Err(PauliError::SystemMismatch);
        }
        let scale = (system.lcm() / self.system.lcm()) as i64;
        Self::from_exponents(system, self.phase as i64 * scale, &x, &z)
    }
}

impl Mul for &PauliOperator {
    type Output = PauliOperator;

    /// Panics on system mismatch; use [`PauliOperator::multiply`] to handle it.
    fn mul(self, o: &PauliOperator) -> PauliOperator {
        self.multiply(o).expect("operators on different systems")
    }
}

impl fmt::Display for PauliOperator {
    /// Canonical text form, e.g. `i · X[3]^2 Z[7]^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (&s, &(x, z)) in &self.sites {
            if x != 0 {
                factors.push(format!("X[{s}]^{x}"));
            }
            if z != 0 {
                factors.push(format!("Z[{s}]^{z}"));
            }
        }
        let body = if factors.is_empty() { "I".to_string() } else { factors.join(" ") };
        if self.phase == 0 {
            write!(f, "{body}")
        } else {
            write!(f, "{} · {body}", self.phase_turns().phase_label())
        }
    }
}
