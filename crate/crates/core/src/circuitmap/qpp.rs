//! Qubit operators `e^{pi i k/4} X^x Diag(i^{sum l_s b_s} (-1)^{sum k_st b_s b_t})`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use serde::Serialize;

use super::CircuitError;
use crate::pauli::{CliffordGate, PauliOperator};

/// Operator in the class generated by Pauli `X`, `S` and `CZ` on qubits.
///
/// `phase` is in units of `pi/4` mod 8, `lambda` in units of `pi/2` mod 4, and
/// `kappa` lists the pairs `s < t` carrying a `(-1)^{b_s b_t}` factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticPhaseOperator {
    phase: u8,
    x: Vec<bool>,
    lambda: Vec<u8>,
    kappa: BTreeSet<(usize, usize)>,
}

fn pair(s: usize, t: usize) -> (usize, usize) {
    (s.min(t), s.max(t))
}

impl QuadraticPhaseOperator {
    pub fn identity(n: usize) -> Self {
        QuadraticPhaseOperator {
            phase: 0,
            x: vec![false; n],
            lambda: vec![0; n],
            kappa: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bits(&self) -> &[bool] {
        &self.x
    }

    pub fn lambda(&self) -> &[u8] {
        &self.lambda
    }

    pub fn kappa(&self) -> &BTreeSet<(usize, usize)> {
        &self.kappa
    }

    fn check_site(&self, s: usize) -> Result<(), CircuitError> {
        if s < self.len() {
            Ok(())
        } else {
            Err(CircuitError::SiteOutOfRange { site: s, len: self.len() })
        }
    }

    pub fn with_phase(mut self, phase: i64) -> Self {
        self.phase = phase.rem_euclid(8) as u8;
        self
    }

    pub fn x_on(n: usize, s: usize) -> Result<Self, CircuitError> {
        let mut op = Self::identity(n);
        op.check_site(s)?;
        op.x[s] = true;
        Ok(op)
    }

    /// `S^k` on site `s`; `k = 2` gives `Z`.
    pub fn s_power(n: usize, s: usize, k: i64) -> Result<Self, CircuitError> {
        let mut op = Self::identity(n);
        op.check_site(s)?;
        op.lambda[s] = k.rem_euclid(4) as u8;
        Ok(op)
    }

    pub fn z_on(n: usize, s: usize) -> Result<Self, CircuitError> {
        Self::s_power(n, s, 2)
    }

    pub fn cz(n: usize, s: usize, t: usize) -> Result<Self, CircuitError> {
        let mut op = Self::identity(n);
        op.check_site(s)?;
        op.check_site(t)?;
        if s == t {
            return Err(CircuitError::SameSite(s));
        }
        op.kappa.insert(pair(s, t));
        Ok(op)
    }

    pub fn is_diagonal(&self) -> bool {
        self.x.iter().all(|&b| !b)
    }

    /// Phase of the operator's diagonal part on `|bits>`, in units of `pi/4` and
    /// including the global phase. Equals the eigenvalue exponent when the operator is diagonal.
    pub fn diagonal_phase(&self, bits: &[bool]) -> Result<u8, CircuitError> {
        if bits.len() != self.len() {
            return Err(CircuitError::Length {
                expected: self.len(),
                found: bits.len(),
            });
        }
        let lin: u32 = self.lambda.iter().zip(bits).filter(|(_, &b)| b).map(|(&l, _)| l as u32).sum();
        let quad = self.kappa.iter().filter(|&&(s, t)| bits[s] && bits[t]).count() as u32;
        Ok(((self.phase as u32 + 2 * lin + 4 * quad) % 8) as u8)
    }

    fn toggle(&mut self, s: usize, t: usize) {
        let p = pair(s, t);
        if !self.kappa.remove(&p) {
            self.kappa.insert(p);
        }
    }

    fn neighbours(&self, s: usize) -> Vec<usize> {
        self.kappa
            .iter()
            .filter_map(|&(a, b)| if a == s { Some(b) } else if b == s { Some(a) } else { None })
            .collect()
    }

    /// Rewrites the diagonal part as `D(b xor e_s)`, returning the constant in units of `pi/2`.
    fn flip_diagonal(&mut self, s: usize) -> u8 {
        let constant = self.lambda[s];
        for t in self.neighbours(s) {
            self.lambda[t] = (self.lambda[t] + 2) % 4;
        }
        self.lambda[s] = (4 - self.lambda[s]) % 4;
        constant
    }

    /// `X^x D X^x`, folding the constant into the phase.
    fn conjugate_diagonal_by_x(&mut self, x: &[bool]) {
        for s in (0..x.len()).filter(|&s| x[s]) {
            let c = self.flip_diagonal(s);
            self.phase = (self.phase + 2 * c) % 8;
        }
    }

    fn diagonal_part(&self) -> Self {
        QuadraticPhaseOperator {
            phase: 0,
            x: vec![false; self.len()],
            lambda: self.lambda.clone(),
            kappa: self.kappa.clone(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, CircuitError> {
        if self.len() != other.len() {
            return Err(CircuitError::Length {
                expected: self.len(),
                found: other.len(),
            });
        }
        // (p1 X^x1 D1)(p2 X^x2 D2) = p1 p2 X^{x1+x2} (X^x2 D1 X^x2) D2
        let mut d1 = self.diagonal_part();
        d1.conjugate_diagonal_by_x(&other.x);
        let mut out = QuadraticPhaseOperator {
            phase: (self.phase + other.phase + d1.phase) % 8,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            lambda: d1.lambda.iter().zip(&other.lambda).map(|(a, b)| (a + b) % 4).collect(),
            kappa: d1.kappa,
        };
        for &(s, t) in &other.kappa {
            out.toggle(s, t);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Self {
        // (p X^x D)^-1 = p^-1 X^x (X^x D^-1 X^x)
        let mut d = self.diagonal_part();
        for l in d.lambda.iter_mut() {
            *l = (4 - *l) % 4;
        }
        d.conjugate_diagonal_by_x(&self.x);
        QuadraticPhaseOperator {
            phase: (8 - self.phase + d.phase) % 8,
            x: self.x.clone(),
            lambda: d.lambda,
            kappa: d.kappa,
        }
    }

    /// `U D U^dag` for `U = CX(c -> t)`, i.e. the substitution `b_t -> b_t xor b_c`.
    fn conjugate_by_cx(&self, c: usize, t: usize) -> Self {
        let mut out = self.clone();
        out.x[t] ^= self.x[c];
        let lt = self.lambda[t];
        out.lambda[c] = (out.lambda[c] + lt) % 4;
        if lt % 2 == 1 {
            out.toggle(c, t);
        }
        for s in self.neighbours(t) {
            if s == c {
                out.lambda[c] = (out.lambda[c] + 2) % 4;
            } else {
                out.toggle(c, s);
            }
        }
        out
    }

    /// `U P U^dag` for a circuit applied in order, `circuit[0]` first.
    pub fn conjugate(&self, circuit: &[CliffordGate]) -> Result<Self, CircuitError> {
        let n = self.len();
        circuit.iter().try_fold(self.clone(), |op, g| match *g {
            CliffordGate::QubitCx { control, target } | CliffordGate::QuditCx { control, target } => {
                op.check_site(control)?;
                op.check_site(target)?;
                if control == target {
                    return Err(CircuitError::SameSite(control));
                }
                Ok(op.conjugate_by_cx(control, target))
            }
            CliffordGate::QubitCz { a, b } => {
                let u = Self::cz(n, a, b)?;
                u.multiply(&op)?.multiply(&u.inverse())
            }
            CliffordGate::QubitS { site } => {
                let u = Self::s_power(n, site, 1)?;
                u.multiply(&op)?.multiply(&u.inverse())
            }
        })
    }
}

impl Mul for &QuadraticPhaseOperator {
    type Output = QuadraticPhaseOperator;

    fn mul(self, rhs: Self) -> QuadraticPhaseOperator {
        self.multiply(rhs).expect("operators on the same number of qubits")
    }
}

impl fmt::Display for QuadraticPhaseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^{}", self.phase)?;
        for (s, _) in self.x.iter().enumerate().filter(|(_, &b)| b) {
            write!(f, " X{s}")?;
        }
        for (s, &l) in self.lambda.iter().enumerate().filter(|(_, &l)| l != 0) {
            write!(f, " S{s}^{l}")?;
        }
        for (s, t) in &self.kappa {
            write!(f, " CZ{s},{t}")?;
        }
        Ok(())
    }
}

/// Images of qudit `e` under the two-qubit encoding: `(A, B) = (2e, 2e + 1)`.
pub fn qubit_pair(site: usize) -> (usize, usize) {
    (2 * site, 2 * site + 1)
}

/// Image of a `d = 4` Pauli under `Z -> S^A Z^B`, `X -> X^A CX^{AB}`.
///
/// Only even `X` powers stay inside the quadratic-phase class (`X^2 -> X^B`);
/// an odd power yields [`CircuitError::OddX`].
pub fn map_qudit_to_qubits(p: &PauliOperator) -> Result<QuadraticPhaseOperator, CircuitError> {
    let sys = p.system();
    if let Some(site) = (0..sys.len()).find(|&s| sys.dim(s) != 4) {
        return Err(CircuitError::NotFourDimensional { site, dim: sys.dim(site) });
    }
    let mut out = QuadraticPhaseOperator::identity(2 * sys.len());
    out.phase = (p.phase() % 8) as u8;
    for (s, xe, ze) in p.entries() {
        if xe % 2 == 1 {
            return Err(CircuitError::OddX { site: s });
        }
        let (a, b) = qubit_pair(s);
        out.x[b] = xe == 2;
        out.lambda[a] = (ze % 4) as u8;
        out.lambda[b] = ((2 * ze) % 4) as u8;
    }
    Ok(out)
}
