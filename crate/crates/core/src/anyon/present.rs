use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{AnyonError, AnyonTheory, Element};
use crate::exactmath::{integer_kernel, smith_normal_form, solve_integer, IntMatrix, Rational01};

fn to_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("coefficient fits in i64")
}

/// A theory presented as `Z^r / relations` with a quadratic form on `Z^r`.
///
/// The result's generators are rows of `V^{-1}` where `U R V` is the Smith form
/// of the relation matrix; coordinates of a free vector `x` are `x V`.
#[derive(Clone, Debug)]
pub struct Presentation {
    theory: AnyonTheory,
    basis: Vec<Element>,
    v: IntMatrix,
    kept: Vec<usize>,
}

impl Presentation {
    /// Quotient of the free quadratic module by the row span of `relations`.
    pub fn new(q_free: &[Rational01], b_free: &[Vec<Rational01>], relations: &[Vec<i64>]) -> Result<Self, AnyonError> {
        let r = q_free.len();
        let free = AnyonTheory {
            orders: vec![1; r],
            q_gen: q_free.to_vec(),
            b_gen: b_free.to_vec(),
        };
        if b_free.len() != r || b_free.iter().any(|row| row.len() != r) || relations.iter().any(|row| row.len() != r) {
            return Err(AnyonError::Shape);
        }
        for rel in relations {
            if !free.q_raw(rel).is_zero() || (0..r).any(|j| !free.b_raw(rel, &unit(r, j)).is_zero()) {
                return Err(AnyonError::NotWellDefined);
            }
        }
        if r == 0 {
            return Ok(Presentation {
                theory: AnyonTheory::trivial(),
                basis: vec![],
                v: IntMatrix::zeros(0, 0),
                kept: vec![],
            });
        }
        let m = if relations.is_empty() {
            IntMatrix::zeros(0, r)
        } else {
            IntMatrix::from_rows(relations)?
        };
        let snf = smith_normal_form(&m);
        let diag = snf.diagonal();
        if diag.len() < r || diag.iter().any(Zero::is_zero) {
            return Err(AnyonError::Infinite);
        }
        let vinv = snf.v.inverse_unimodular()?;
        let kept: Vec<usize> = (0..r).filter(|&i| !diag[i].is_one()).collect();
        let basis: Vec<Element> = kept.iter().map(|&i| vinv.row(i).iter().map(to_i64).collect()).collect();
        let orders: Vec<u64> = kept.iter().map(|&i| diag[i].to_u64().expect("order fits")).collect();
        let q_gen = basis.iter().map(|x| free.q_raw(x)).collect();
        let b_gen = basis
            .iter()
            .map(|x| basis.iter().map(|y| free.b_raw(x, y)).collect())
            .collect();
        Ok(Presentation {
            theory: AnyonTheory { orders, q_gen, b_gen },
            basis,
            v: snf.v,
            kept,
        })
    }

    pub fn theory(&self) -> &AnyonTheory {
        &self.theory
    }

    pub fn into_theory(self) -> AnyonTheory {
        self.theory
    }

    /// Free-module vectors of the result's generators.
    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    /// Class of a free vector in the result's generators.
    pub fn coordinates(&self, x: &[i64]) -> Element {
        let y: Vec<i64> = (0..self.v.cols())
            .map(|c| x.iter().enumerate().map(|(r, &xr)| xr * self.v.get_i64(r, c)).sum())
            .collect();
        let picked: Vec<i64> = self.kept.iter().map(|&i| y[i]).collect();
        self.theory.reduce(&picked)
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Result of condensing a set of mutually transparent bosons.
#[derive(Clone, Debug)]
pub struct Condensation {
    parent: AnyonTheory,
    bosons: Vec<Element>,
    /// Generators of the deconfined subgroup, as parent elements.
    deconfined: Vec<Element>,
    presentation: Presentation,
}

impl Condensation {
    pub fn theory(&self) -> &AnyonTheory {
        self.presentation.theory()
    }

    pub fn deconfined_generators(&self) -> &[Element] {
        &self.deconfined
    }

    pub fn bosons(&self) -> &[Element] {
        &self.bosons
    }

    /// True when `a` braids trivially with every condensed boson.
    pub fn is_deconfined(&self, a: &[i64]) -> Result<bool, AnyonError> {
        for b in &self.bosons {
            if !self.parent.braiding(a, b)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Class `[a]` in the condensed theory, or `None` when `a` is confined.
    pub fn class_of(&self, a: &[i64]) -> Result<Option<Element>, AnyonError> {
        if !self.is_deconfined(a)? {
            return Ok(None);
        }
        let n = self.parent.rank();
        let cols = generator_columns(&self.parent, &self.deconfined, &self.bosons);
        let m = columns_to_matrix(n, &cols)?;
        let rhs: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        let sol = solve_integer(&m, &rhs)?.ok_or(AnyonError::NotWellDefined)?;
        let c: Vec<i64> = sol[..self.deconfined.len()].iter().map(to_i64).collect();
        Ok(Some(self.presentation.coordinates(&c)))
    }
}

/// Columns `[H | -G]`: deconfined generators then negated relations (orders and bosons).
fn generator_columns(parent: &AnyonTheory, h: &[Element], bosons: &[Element]) -> Vec<Vec<i64>> {
    let n = parent.rank();
    let mut cols: Vec<Vec<i64>> = h.to_vec();
    for i in 0..n {
        let mut c = vec![0; n];
        c[i] = -(parent.orders[i] as i64);
        cols.push(c);
    }
    cols.extend(bosons.iter().map(|b| b.iter().map(|x| -x).collect()));
    cols
}

fn columns_to_matrix(rows: usize, cols: &[Vec<i64>]) -> Result<IntMatrix, AnyonError> {
    let data: Vec<Vec<i64>> = (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    if rows == 0 {
        return Ok(IntMatrix::zeros(0, cols.len()));
    }
    Ok(IntMatrix::from_rows(&data)?)
}

impl AnyonTheory {
    /// Theory with free generators carrying `q_free`/`b_free`, modulo `relations`.
    pub fn from_presentation(
        q_free: &[Rational01],
        b_free: &[Vec<Rational01>],
        relations: &[Vec<i64>],
    ) -> Result<AnyonTheory, AnyonError> {
        Presentation::new(q_free, b_free, relations).map(Presentation::into_theory)
    }

    /// Condenses mutually transparent bosons: confines anyons braiding
    /// nontrivially with them and identifies anyons differing by them.
    pub fn condense(&self, bosons: &[Element]) -> Result<Condensation, AnyonError> {
        let n = self.rank();
        for (i, b) in bosons.iter().enumerate() {
            if !self.q(b)?.is_zero() {
                return Err(AnyonError::NotBoson { index: i });
            }
        }
        for i in 0..bosons.len() {
            for j in i + 1..bosons.len() {
                if !self.braiding(&bosons[i], &bosons[j])?.is_zero() {
                    return Err(AnyonError::NotTransparent { i, j });
                }
            }
        }
        // Deconfined lattice: a with sum_j a_j B(g_j, b_k) = 0 mod 1 for every k.
        let pairing: Vec<Vec<Rational01>> = bosons
            .iter()
            .map(|b| (0..n).map(|j| self.b_raw(&self.generator(j), b)).collect())
            .collect();
        let l = pairing
            .iter()
            .flatten()
            .fold(1i64, |acc, r| num_integer::lcm(acc, r.denominator()));
        let k = bosons.len();
        let deconfined: Vec<Element> = if k == 0 {
            (0..n).map(|i| self.generator(i)).collect()
        } else {
            let rows: Vec<Vec<i64>> = pairing
                .iter()
                .enumerate()
                .map(|(kk, row)| {
                    let mut r: Vec<i64> = row.iter().map(|x| x.numerator() * (l / x.denominator())).collect();
                    r.extend((0..k).map(|t| if t == kk { l } else { 0 }));
                    r
                })
                .collect();
            integer_kernel(&IntMatrix::from_rows(&rows)?)
                .into_iter()
                .map(|v| v[..n].iter().map(to_i64).collect::<Element>())
                .filter(|v| v.iter().any(|&x| x != 0))
                .collect()
        };
        let cols = generator_columns(self, &deconfined, bosons);
        let relations: Vec<Vec<i64>> = if n == 0 {
            vec![]
        } else {
            integer_kernel(&columns_to_matrix(n, &cols)?)
                .into_iter()
                .map(|v| v[..deconfined.len()].iter().map(to_i64).collect())
                .collect()
        };
        let q_free: Vec<Rational01> = deconfined.iter().map(|h| self.q_raw(h)).collect();
        let b_free: Vec<Vec<Rational01>> = deconfined
            .iter()
            .map(|x| deconfined.iter().map(|y| self.b_raw(x, y)).collect())
            .collect();
        let presentation = Presentation::new(&q_free, &b_free, &relations)?;
        Ok(Condensation {
            parent: self.clone(),
            bosons: bosons.to_vec(),
            deconfined,
            presentation,
        })
    }
}
