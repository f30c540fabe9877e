//! Exact integer and rational-mod-1 linear algebra.

mod matrix;
mod modular;
mod rational;
mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use matrix::{IntMatrix, RationalMatrix};
pub use modular::ModDiagonal;
pub use rational::Rational01;
pub use snf::{cokernel_order, integer_kernel, invariant_factors, smith_normal_form, solve_integer, SnfResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have differing lengths")]
    Ragged,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("matrix has non-integral entries")]
    NotIntegral,
    #[error("modulus must be positive")]
    BadModulus,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Solves `A x = b` with row `i` taken modulo `moduli[i]`.
///
/// Each row is lifted to the common modulus `L = lcm(moduli)` by the factor
/// `L / moduli[i]`; the lifted system is then solved over `Z/L`. Returns
/// `Ok(None)` when no solution exists.
pub fn solve_linear_mod(
    a: &IntMatrix,
    b: &[BigInt],
    moduli: &[BigInt],
) -> Result<Option<Vec<BigInt>>, ExactError> {
    if b.len() != a.rows() {
        return Err(ExactError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    if moduli.len() != a.rows() {
        return Err(ExactError::DimensionMismatch {
            expected: a.rows(),
            found: moduli.len(),
        });
    }
    if moduli.iter().any(|m| m <= &BigInt::zero()) {
        return Err(ExactError::BadModulus);
    }
    let l = moduli.iter().fold(BigInt::one(), |acc, m| acc.lcm(m));
    let lifted_row = |i: usize| -> (Vec<BigInt>, BigInt) {
        let f = &l / &moduli[i];
        (a.row(i).iter().map(|v| (v * &f).mod_floor(&l)).collect(), (&b[i] * &f).mod_floor(&l))
    };

    match l.to_i64().filter(|&v| v < (1 << 40)) {
        Some(lm) => Ok(solve_lifted_machine(a, &lifted_row, lm)),
        None => solve_lifted_integer(a, &lifted_row, &l),
    }
}

type LiftedRow<'a> = dyn Fn(usize) -> (Vec<BigInt>, BigInt) + 'a;

fn solve_lifted_machine(a: &IntMatrix, lifted_row: &LiftedRow<'_>, lm: i64) -> Option<Vec<BigInt>> {
    let mut rows = Vec::with_capacity(a.rows());
    let mut rhs = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let (r, c) = lifted_row(i);
        rows.push(r.iter().map(|v| v.to_i64().expect("reduced")).collect());
        rhs.push(c.to_i64().expect("reduced"));
    }
    let d = ModDiagonal::new(rows, a.cols(), lm, vec![rhs]);
    d.solve(0).map(|x| x.into_iter().map(BigInt::from).collect())
}

/// Integer solve of `[A_lift | L I] (x, t)^T = b_lift`.
fn solve_lifted_integer(
    a: &IntMatrix,
    lifted_row: &LiftedRow<'_>,
    l: &BigInt,
) -> Result<Option<Vec<BigInt>>, ExactError> {
    let (m, n) = (a.rows(), a.cols());
    let mut ext = IntMatrix::zeros(m, n + m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let (r, c) = lifted_row(i);
        for (j, v) in r.into_iter().enumerate() {
            ext.set(i, j, v);
        }
        ext.set(i, n + i, l.clone());
        rhs.push(c);
    }
    Ok(solve_integer(&ext, &rhs)?.map(|x| x[..n].iter().map(|v| v.mod_floor(l)).collect()))
}
