//! Abelian anyon theories given by a finite abelian group and a quadratic form.

mod present;
mod tqd;

#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{cokernel_order, ExactError, IntMatrix, Rational01};
use crate::params::ParamsError;

pub use present::{Condensation, Presentation};
pub use tqd::{
    cocycle_value, fusion_group, fusion_group_from_cocycle, stack_condense_to_tqd, tqd_presentation, tqd_theory,
    StackCondensation,
};

/// Group element as exponents of the theory's generators.
pub type Element = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnyonError {
    #[error("theory data has inconsistent shape")]
    Shape,
    #[error("element has {found} components, theory has {expected} generators")]
    ElementLength { expected: usize, found: usize },
    #[error("anyon {index} is not a boson")]
    NotBoson { index: usize },
    #[error("anyons {i} and {j} braid nontrivially")]
    NotTransparent { i: usize, j: usize },
    #[error("presentation defines an infinite group")]
    Infinite,
    #[error("quadratic form does not descend to the quotient")]
    NotWellDefined,
    #[error("group element component out of range")]
    OutOfRange,
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// An axiom failure found by [`AnyonTheory::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The stored pairing is not symmetric or its diagonal is not `2 q`.
    PairingTable { i: usize, j: usize },
    /// `q` or `b` changes when a generator exponent is shifted by its order.
    NotWellDefined { generator: usize },
    /// `q(a^n) != n^2 q(a)`.
    Quadratic { element: Element, n: i64 },
    /// `B(a^n, a') != n B(a, a')`.
    Bilinear { a: Element, b: Element, n: i64 },
}

/// Anyons `prod_i g_i^{a_i}` with `a_i mod orders[i]`, topological spin
/// `theta(a) = exp(2 pi i q(a))`, and
/// `q(a) = sum_i a_i^2 q_gen[i] + sum_{i<j} a_i a_j b_gen[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnyonTheory {
    orders: Vec<u64>,
    q_gen: Vec<Rational01>,
    b_gen: Vec<Vec<Rational01>>,
}

/// Exhaustive pair checks run only below this many anyons; above it the second
/// argument ranges over generators, which suffices by bilinearity.
const PAIR_LIMIT: u64 = 256;

impl AnyonTheory {
    /// Shape-checked constructor. `b_gen` must be square; axioms are checked by [`validate`](Self::validate).
    pub fn new(orders: Vec<u64>, q_gen: Vec<Rational01>, b_gen: Vec<Vec<Rational01>>) -> Result<Self, AnyonError> {
        let n = orders.len();
        if q_gen.len() != n || b_gen.len() != n || b_gen.iter().any(|r| r.len() != n) || orders.contains(&0) {
            return Err(AnyonError::Shape);
        }
        Ok(AnyonTheory { orders, q_gen, b_gen })
    }

    pub fn trivial() -> Self {
        AnyonTheory {
            orders: vec![],
            q_gen: vec![],
            b_gen: vec![],
        }
    }

    /// Z_N toric code with generators `e`, `m`.
    pub fn toric_code(n: u64) -> Self {
        AnyonTheory {
            orders: vec![n, n],
            q_gen: vec![Rational01::ZERO; 2],
            b_gen: vec![
                vec![Rational01::ZERO, Rational01::new(1, n as i64)],
                vec![Rational01::new(1, n as i64), Rational01::ZERO],
            ],
        }
    }

    /// Single cyclic anyon of order `n` with `q(g) = q`.
    pub fn cyclic(n: u64, q: Rational01) -> Self {
        AnyonTheory {
            orders: vec![n],
            q_gen: vec![q],
            b_gen: vec![vec![q.scale(2)]],
        }
    }

    pub fn semion() -> Self {
        Self::cyclic(2, Rational01::new(1, 4))
    }

    pub fn anti_semion() -> Self {
        Self::cyclic(2, Rational01::new(3, 4))
    }

    /// Generators `s`, `s̄`.
    pub fn double_semion() -> Self {
        Self::semion().stack(&Self::anti_semion())
    }

    /// Decoupled stack: product group, additive `q`, no cross braiding.
    pub fn stack(&self, other: &AnyonTheory) -> AnyonTheory {
        let n = self.rank() + other.rank();
        let mut b = vec![vec![Rational01::ZERO; n]; n];
        for (i, row) in self.b_gen.iter().enumerate() {
            b[i][..row.len()].copy_from_slice(row);
        }
        let off = self.rank();
        for (i, row) in other.b_gen.iter().enumerate() {
            b[off + i][off..].copy_from_slice(row);
        }
        AnyonTheory {
            orders: self.orders.iter().chain(&other.orders).copied().collect(),
            q_gen: self.q_gen.iter().chain(&other.q_gen).copied().collect(),
            b_gen: b,
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn q_gen(&self) -> &[Rational01] {
        &self.q_gen
    }

    pub fn b_gen(&self) -> &[Vec<Rational01>] {
        &self.b_gen
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Number of anyons.
    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn identity(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut a = self.identity();
        a[i] = 1;
        a
    }

    fn check(&self, a: &[i64]) -> Result<(), AnyonError> {
        if a.len() == self.rank() {
            Ok(())
        } else {
            Err(AnyonError::ElementLength {
                expected: self.rank(),
                found: a.len(),
            })
        }
    }

    pub fn reduce(&self, a: &[i64]) -> Element {
        a.iter().zip(&self.orders).map(|(&x, &o)| x.rem_euclid(o as i64)).collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Element {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, a: &[i64], k: i64) -> Element {
        let s: Vec<i64> = a.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    /// `q(a)` evaluated on the given exponents without reduction.
    fn q_raw(&self, a: &[i64]) -> Rational01 {
        let mut acc = Rational01::ZERO;
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            acc += self.q_gen[i].scale(a[i] * a[i]);
            for j in i + 1..a.len() {
                if a[j] != 0 {
                    acc += self.b_gen[i][j].scale(a[i] * a[j]);
                }
            }
        }
        acc
    }

    fn b_raw(&self, a: &[i64], b: &[i64]) -> Rational01 {
        let mut acc = Rational01::ZERO;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    acc += self.b_gen[i][j].scale(ai * bj);
                }
            }
        }
        acc
    }

    /// Topological spin exponent `q(a)`.
    pub fn q(&self, a: &[i64]) -> Result<Rational01, AnyonError> {
        self.check(a)?;
        Ok(self.q_raw(&self.reduce(a)))
    }

    /// Braiding exponent `B(a, b) = q(ab) - q(a) - q(b)`.
    pub fn braiding(&self, a: &[i64], b: &[i64]) -> Result<Rational01, AnyonError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.b_raw(&self.reduce(a), &self.reduce(b)))
    }

    pub fn element_order(&self, a: &[i64]) -> u64 {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &o)| o / (x.rem_euclid(o as i64) as u64).gcd(&o))
            .fold(1, |l, k| l.lcm(&k))
    }

    /// All anyons in mixed-radix order, first generator fastest.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut cur = self.identity();
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == cur.len() {
                    return out;
                }
                cur[i] += 1;
                if cur[i] < self.orders[i] as i64 {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Checks the quadratic-form axioms exhaustively; an empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { self.q_gen[i].scale(2) } else { self.b_gen[j][i] };
                if self.b_gen[i][j] != expect {
                    out.push(Violation::PairingTable { i, j });
                }
            }
        }
        for i in 0..n {
            let o = self.orders[i] as i64;
            let q_ok = self.q_gen[i].scale(o * o).is_zero();
            let b_ok = (0..n).all(|j| self.b_gen[i][j].scale(o).is_zero());
            if !(q_ok && b_ok) {
                out.push(Violation::NotWellDefined { generator: i });
            }
        }
        let elems = self.elements();
        let partners: Vec<Element> = if self.size() <= PAIR_LIMIT {
            elems.clone()
        } else {
            (0..n).map(|i| self.generator(i)).collect()
        };
        for a in &elems {
            let qa = self.q_raw(a);
            let ord = self.element_order(a) as i64;
            for k in 1..=ord {
                let ak = self.scale(a, k);
                if self.q_raw(&ak) != qa.scale(k * k) {
                    out.push(Violation::Quadratic { element: a.clone(), n: k });
                }
            }
            for b in &partners {
                let bab = self.q_raw(&self.add(a, b)) - qa - self.q_raw(b);
                for k in 1..=ord {
                    let ak = self.scale(a, k);
                    let lhs = self.q_raw(&self.add(&ak, b)) - self.q_raw(&ak) - self.q_raw(b);
                    if lhs != bab.scale(k) {
                        out.push(Violation::Bilinear {
                            a: a.clone(),
                            b: b.clone(),
                            n: k,
                        });
                    }
                }
            }
        }
        out
    }

    /// True when no nontrivial anyon braids trivially with everything.
    pub fn is_modular(&self) -> bool {
        let gens: Vec<Element> = (0..self.rank()).map(|i| self.generator(i)).collect();
        self.elements()
            .iter()
            .filter(|a| a.iter().any(|&x| x != 0))
            .all(|a| gens.iter().any(|g| !self.b_raw(a, g).is_zero()))
    }

    /// Number of anyons with each spin exponent.
    pub fn spin_census(&self) -> BTreeMap<Rational01, usize> {
        let mut m = BTreeMap::new();
        for a in self.elements() {
            *m.entry(self.q_raw(&a)).or_insert(0) += 1;
        }
        m
    }

    fn profile(&self) -> BTreeMap<(u64, Rational01), usize> {
        let mut m = BTreeMap::new();
        for a in self.elements() {
            *m.entry((self.element_order(&a), self.q_raw(&a))).or_insert(0) += 1;
        }
        m
    }

    /// Order of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[Element]) -> u64 {
        let n = self.rank();
        if n == 0 {
            return 1;
        }
        let mut cols: Vec<Vec<i64>> = gens.to_vec();
        for i in 0..n {
            let mut c = vec![0; n];
            c[i] = self.orders[i] as i64;
            cols.push(c);
        }
        let rows: Vec<Vec<i64>> = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let m = IntMatrix::from_rows(&rows).expect("rectangular");
        let coker = cokernel_order(&m).expect("finite index");
        (BigInt::from(self.size()) / coker).to_u64().expect("fits")
    }

    /// Images of this theory's generators under an isomorphism onto `other`
    /// preserving fusion and `q`, or `None`.
    pub fn isomorphism(&self, other: &AnyonTheory) -> Option<Vec<Element>> {
        if self.size() != other.size() || self.profile() != other.profile() {
            return None;
        }
        let elems = other.elements();
        let candidates: Vec<Vec<&Element>> = (0..self.rank())
            .map(|i| {
                elems
                    .iter()
                    .filter(|a| other.element_order(a) == self.orders[i] && other.q_raw(a) == self.q_gen[i])
                    .collect()
            })
            .collect();
        let mut chosen: Vec<Element> = Vec::new();
        self.extend_iso(other, &candidates, &mut chosen).then_some(chosen)
    }

    fn extend_iso(&self, other: &AnyonTheory, cands: &[Vec<&Element>], chosen: &mut Vec<Element>) -> bool {
        let i = chosen.len();
        if i == self.rank() {
            return other.subgroup_order(chosen) == other.size();
        }
        for &c in &cands[i] {
            if (0..i).all(|j| other.b_raw(c, &chosen[j]) == self.b_gen[i][j]) {
                chosen.push(c.clone());
                if self.extend_iso(other, cands, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// All Lagrangian subgroups, each as its sorted list of anyons.
    ///
    /// Subgroups of mutually transparent bosons are grown one boson at a time.
    pub fn lagrangian_subgroups(&self) -> Vec<Vec<Element>> {
        let size = self.size();
        let zero = self.identity();
        let bosons: Vec<Element> = self
            .elements()
            .into_iter()
            .filter(|a| *a != zero && self.q_raw(a).is_zero())
            .collect();
        let start: BTreeSet<Element> = [zero].into_iter().collect();
        let mut seen: HashSet<BTreeSet<Element>> = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(s) = queue.pop_front() {
            let n = s.len() as u64;
            if n * n == size && self.is_lagrangian(&s) {
                out.push(s.iter().cloned().collect());
            }
            if n * n >= size {
                continue;
            }
            for b in &bosons {
                if s.contains(b) || !s.iter().all(|m| self.b_raw(m, b).is_zero()) {
                    continue;
                }
                let ord = self.element_order(b) as i64;
                let next: BTreeSet<Element> = s
                    .iter()
                    .flat_map(|m| (0..ord).map(move |k| (m, k)))
                    .map(|(m, k)| self.add(m, &self.scale(b, k)))
                    .collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        out.sort();
        out
    }

    fn is_lagrangian(&self, s: &BTreeSet<Element>) -> bool {
        self.elements()
            .iter()
            .filter(|a| !s.contains(*a))
            .all(|a| s.iter().any(|m| !self.b_raw(a, m).is_zero()))
    }
}

/// Isomorphism witness between two theories, if one exists.
pub fn theories_isomorphic(a: &AnyonTheory, b: &AnyonTheory) -> Option<Vec<Element>> {
    a.isomorphism(b)
}
