use std::fmt;

use serde::{Deserialize, Serialize};

/// Anyon label of a stack of toric codes: `prod_i e_i^{e[i]} m_i^{m[i]}`.
///
/// Every model here arises from stacked toric codes, so string operators of all
/// models are addressed by these exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TcLabel {
    pub e: Vec<i64>,
    pub m: Vec<i64>,
}

impl TcLabel {
    pub fn trivial(layers: usize) -> Self {
        TcLabel {
            e: vec![0; layers],
            m: vec![0; layers],
        }
    }

    /// Single-layer `e^p m^q`.
    pub fn em(p: i64, q: i64) -> Self {
        TcLabel { e: vec![p], m: vec![q] }
    }

    pub fn layers(&self) -> usize {
        self.e.len()
    }

    pub fn add(&self, o: &TcLabel) -> TcLabel {
        TcLabel {
            e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect(),
            m: self.m.iter().zip(&o.m).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> TcLabel {
        TcLabel {
            e: self.e.iter().map(|a| a * k).collect(),
            m: self.m.iter().map(|a| a * k).collect(),
        }
    }

    /// Trivial on layers of the given qudit dimensions.
    pub fn is_trivial(&self, dims: &[u32]) -> bool {
        self.e.iter().chain(&self.m).zip(dims.iter().chain(dims)).all(|(a, &d)| a.rem_euclid(d as i64) == 0)
    }

    /// Exponents reduced into `[0, d_i)`.
    pub fn reduced(&self, dims: &[u32]) -> TcLabel {
        TcLabel {
            e: self.e.iter().zip(dims).map(|(a, &d)| a.rem_euclid(d as i64)).collect(),
            m: self.m.iter().zip(dims).map(|(a, &d)| a.rem_euclid(d as i64)).collect(),
        }
    }
}

impl fmt::Display for TcLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, (&p, &q)) in self.e.iter().zip(&self.m).enumerate() {
            let tag = if self.e.len() == 1 { String::new() } else { format!("{}", i + 1) };
            if p != 0 {
                parts.push(format!("e{tag}^{p}"));
            }
            if q != 0 {
                parts.push(format!("m{tag}^{q}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}
