//! Twisted-quantum-double parameters: `G = prod_i Z_{N_i}` with type I and type II
//! cocycle integers `n_i` and `n_ij`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamsError {
    #[error("at least one factor is required")]
    Empty,
    #[error("N_{index} = {value} is not a prime power")]
    NotPrimePower { index: usize, value: u32 },
    #[error("factors must be ordered N_1 <= N_2 <= ...")]
    Unordered,
    #[error("expected {expected} entries in {field}, found {found}")]
    Length {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("n_{i} = {value} must lie in [0, {bound})")]
    TypeOneRange { i: usize, value: i64, bound: u32 },
    #[error("n_{i}{j} = {value} must lie in [0, gcd(N_{i}, N_{j}) = {bound})")]
    TypeTwoRange {
        i: usize,
        j: usize,
        value: i64,
        bound: u32,
    },
    #[error("n_ij table is not symmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },
}

pub(crate) fn is_prime_power(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).expect("n >= 2 has a prime factor");
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Validated parameters. Indices are zero-based in code; messages use one-based names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TqdParams {
    #[serde(rename = "N")]
    orders: Vec<u32>,
    n: Vec<u32>,
    /// Full symmetric table with diagonal `2 n_i mod N_i`.
    nij: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawParams {
    #[serde(rename = "N")]
    orders: Vec<u32>,
    #[serde(default)]
    n: Vec<i64>,
    #[serde(default)]
    nij: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for TqdParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawParams::deserialize(d)?;
        TqdParams::new(raw.orders, raw.n, raw.nij).map_err(serde::de::Error::custom)
    }
}

impl TqdParams {
    /// `n` may be empty (all zero); `nij` may be empty (all zero) or a full
    /// `M x M` symmetric table whose diagonal is ignored.
    pub fn new(orders: Vec<u32>, n: Vec<i64>, nij: Vec<Vec<i64>>) -> Result<Self, ParamsError> {
        let m = orders.len();
        if m == 0 {
            return Err(ParamsError::Empty);
        }
        for (i, &v) in orders.iter().enumerate() {
            if !is_prime_power(v) {
                return Err(ParamsError::NotPrimePower { index: i + 1, value: v });
            }
        }
        if orders.windows(2).any(|w| w[0] > w[1]) {
            return Err(ParamsError::Unordered);
        }
        let n = if n.is_empty() { vec![0; m] } else { n };
        if n.len() != m {
            return Err(ParamsError::Length {
                field: "n",
                expected: m,
                found: n.len(),
            });
        }
        let mut n_out = Vec::with_capacity(m);
        for (i, (&v, &big_n)) in n.iter().zip(&orders).enumerate() {
            if v < 0 || v >= big_n as i64 {
                return Err(ParamsError::TypeOneRange { i: i + 1, value: v, bound: big_n });
            }
            n_out.push(v as u32);
        }
        let nij = if nij.is_empty() { vec![vec![0; m]; m] } else { nij };
        if nij.len() != m || nij.iter().any(|r| r.len() != m) {
            return Err(ParamsError::Length {
                field: "nij",
                expected: m,
                found: nij.len(),
            });
        }
        let mut table = vec![vec![0u32; m]; m];
        for i in 0..m {
            table[i][i] = (2 * n_out[i]) % orders[i];
            for j in i + 1..m {
                if nij[i][j] != nij[j][i] {
                    return Err(ParamsError::Asymmetric { i: i + 1, j: j + 1 });
                }
                let bound = orders[i].gcd(&orders[j]);
                let v = nij[i][j];
                if v < 0 || v >= bound as i64 {
                    return Err(ParamsError::TypeTwoRange {
                        i: i + 1,
                        j: j + 1,
                        value: v,
                        bound,
                    });
                }
                table[i][j] = v as u32;
                table[j][i] = v as u32;
            }
        }
        Ok(TqdParams {
            orders,
            n: n_out,
            nij: table,
        })
    }

    /// Parameters with only the off-diagonal entries given as `(i, j, value)`, zero-based.
    pub fn with_pairs(orders: Vec<u32>, n: Vec<i64>, pairs: &[(usize, usize, i64)]) -> Result<Self, ParamsError> {
        let m = orders.len();
        let mut t = vec![vec![0i64; m]; m];
        for &(i, j, v) in pairs {
            if i >= m || j >= m || i == j {
                return Err(ParamsError::Length {
                    field: "nij",
                    expected: m,
                    found: i.max(j) + 1,
                });
            }
            t[i][j] = v;
            t[j][i] = v;
        }
        Self::new(orders, n, t)
    }

    pub fn layers(&self) -> usize {
        self.orders.len()
    }

    /// `N_i`.
    pub fn order(&self, i: usize) -> u32 {
        self.orders[i]
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn n(&self, i: usize) -> u32 {
        self.n[i]
    }

    /// `n_ij`, with `n_ii = 2 n_i mod N_i`.
    pub fn nij(&self, i: usize, j: usize) -> u32 {
        self.nij[i][j]
    }

    /// `|G| = prod N_i`.
    pub fn group_size(&self) -> u64 {
        self.orders.iter().map(|&v| v as u64).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(TqdParams::new(vec![2], vec![1], vec![]).is_ok());
        assert!(matches!(TqdParams::new(vec![6], vec![], vec![]), Err(ParamsError::NotPrimePower { .. })));
        assert!(matches!(TqdParams::new(vec![4, 2], vec![], vec![]), Err(ParamsError::Unordered)));
        assert!(matches!(TqdParams::new(vec![2], vec![2], vec![]), Err(ParamsError::TypeOneRange { .. })));
        assert!(matches!(
            TqdParams::with_pairs(vec![2, 3], vec![], &[(0, 1, 1)]),
            Err(ParamsError::TypeTwoRange { bound: 1, .. })
        ));
        assert!(matches!(
            TqdParams::new(vec![2, 2], vec![], vec![vec![0, 1], vec![0, 0]]),
            Err(ParamsError::Asymmetric { .. })
        ));
        let p = TqdParams::with_pairs(vec![2, 4], vec![1, 3], &[(0, 1, 1)]).unwrap();
        assert_eq!(p.nij(0, 0), 0);
        assert_eq!(p.nij(1, 1), 2);
        assert_eq!(p.nij(1, 0), 1);
        assert_eq!(p.group_size(), 8);
    }

    #[test]
    fn json() {
        let p: TqdParams = serde_json::from_str(r#"{"N":[2,2],"n":[1,1],"nij":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(p.nij(0, 1), 1);
        assert!(serde_json::from_str::<TqdParams>(r#"{"N":[2,2],"nij":[[0,2],[2,0]]}"#).is_err());
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"N":[2,2],"n":[1,1],"nij":[[0,1],[1,0]]}"#
        );
    }

    #[test]
    fn prime_powers() {
        let pp: Vec<u32> = (1..30).filter(|&v| is_prime_power(v)).collect();
        assert_eq!(pp, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]);
    }
}
