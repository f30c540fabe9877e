use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{AnyonError, AnyonTheory, Condensation, Element, Presentation};
use crate::exactmath::{invariant_factors, IntMatrix, Rational01};
use crate::lattice::{condensed_boson, elementary_flux, gauge_charge, TcLabel};
use crate::params::TqdParams;

/// Free generators `c_1..c_M, phi_1..phi_M` with the TQD quadratic form and
/// fusion relations `c_i^{N_i} = 1`, `phi_i^{N_i} = c_i^{2 n_i} prod_{j != i} c_j^{n_ij}`.
pub fn tqd_presentation(p: &TqdParams) -> Result<Presentation, AnyonError> {
    let m = p.layers();
    let r = 2 * m;
    let ord = |i: usize| p.order(i) as i64;
    let mut q = vec![Rational01::ZERO; r];
    let mut b = vec![vec![Rational01::ZERO; r]; r];
    for i in 0..m {
        q[m + i] = Rational01::new(p.n(i) as i64, ord(i) * ord(i));
        b[i][m + i] = Rational01::new(1, ord(i));
        b[m + i][i] = b[i][m + i];
        for j in 0..m {
            b[m + i][m + j] = if i == j {
                q[m + i].scale(2)
            } else {
                Rational01::new(p.nij(i, j) as i64, ord(i) * ord(j))
            };
        }
    }
    Presentation::new(&q, &b, &tqd_relations(p))
}

fn tqd_relations(p: &TqdParams) -> Vec<Vec<i64>> {
    let m = p.layers();
    let mut rels = Vec::new();
    for i in 0..m {
        let mut c = vec![0; 2 * m];
        c[i] = p.order(i) as i64;
        rels.push(c);
        let mut f = vec![0; 2 * m];
        f[m + i] = p.order(i) as i64;
        for j in 0..m {
            f[j] = if i == j { -2 * p.n(i) as i64 } else { -(p.nij(i, j) as i64) };
        }
        rels.push(f);
    }
    rels
}

/// Anyon theory of the Abelian TQD with the given parameters.
pub fn tqd_theory(p: &TqdParams) -> Result<AnyonTheory, AnyonError> {
    tqd_presentation(p).map(Presentation::into_theory)
}

/// Nontrivial invariant factors of the TQD fusion group.
pub fn fusion_group(p: &TqdParams) -> Vec<u64> {
    let rels = tqd_relations(p);
    let m = IntMatrix::from_rows(&rels).expect("square relation matrix");
    invariant_factors(&m)
        .iter()
        .map(|d| d.to_u64().expect("fits"))
        .filter(|&d| d != 1)
        .collect()
}

/// Fusion group rebuilt from the central extension of `G` by `G` with 2-cocycle
/// `lambda`, read off from element-order counts of the explicit multiplication.
pub fn fusion_group_from_cocycle(p: &TqdParams) -> Vec<u64> {
    let m = p.layers();
    let orders: Vec<i64> = (0..m).map(|i| p.order(i) as i64).collect();
    let mul = |a: &[i64], b: &[i64]| -> Vec<i64> {
        let carry: Vec<i64> = (0..m).map(|i| (a[i] + b[i]) / orders[i]).collect();
        let mut out = vec![0; 2 * m];
        for i in 0..m {
            out[i] = (a[i] + b[i]).rem_euclid(orders[i]);
            let mut lam = 2 * p.n(i) as i64 * carry[i];
            for j in (0..m).filter(|&j| j != i) {
                lam += p.nij(i, j) as i64 * carry[j];
            }
            out[m + i] = (a[m + i] + b[m + i] + lam).rem_euclid(orders[i]);
        }
        out
    };
    let radix: Vec<i64> = orders.iter().chain(&orders).copied().collect();
    let size: i64 = radix.iter().product();
    let exponent = radix.iter().fold(1i64, |l, &o| l.lcm(&(o * o)));
    // torsion[k] = #{x : x^k = 1} for k dividing the exponent.
    let divisors: Vec<i64> = (1..=exponent).filter(|k| exponent % k == 0).collect();
    let mut torsion: BTreeMap<i64, u64> = divisors.iter().map(|&k| (k, 0)).collect();
    for idx in 0..size {
        let mut x = vec![0; 2 * m];
        let mut rest = idx;
        for (slot, &o) in x.iter_mut().zip(&radix) {
            *slot = rest % o;
            rest /= o;
        }
        let mut pow = x.clone();
        let mut k = 1;
        while pow.iter().any(|&c| c != 0) {
            pow = mul(&pow, &x);
            k += 1;
        }
        for (&d, count) in torsion.iter_mut() {
            if d % k == 0 {
                *count += 1;
            }
        }
    }
    invariant_factors_from_torsion(exponent, &torsion)
}

/// Invariant factors of a finite abelian group from its `k`-torsion counts.
fn invariant_factors_from_torsion(exponent: i64, torsion: &BTreeMap<i64, u64>) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut e = exponent;
    let mut q = 2;
    while e > 1 {
        if e % q == 0 {
            primes.push(q);
            while e % q == 0 {
                e /= q;
            }
        }
        q += 1;
    }
    // For each prime, exponents of the cyclic p-factors in decreasing order.
    let mut parts: Vec<(i64, Vec<u32>)> = Vec::new();
    for &pr in &primes {
        let mut at_least = Vec::new();
        let mut pk = 1;
        while exponent % (pk * pr) == 0 {
            let lo = torsion[&pk];
            pk *= pr;
            let ratio = torsion[&pk] / lo;
            at_least.push(log_exact(ratio, pr as u64));
        }
        let count = at_least.first().copied().unwrap_or(0);
        let exps: Vec<u32> = (0..count)
            .map(|t| at_least.iter().filter(|&&c| c > t).count() as u32)
            .collect();
        parts.push((pr, exps));
    }
    let len = parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..len)
        .map(|t| {
            parts
                .iter()
                .map(|(pr, e)| (*pr as u64).pow(e.get(t).copied().unwrap_or(0)))
                .product()
        })
        .collect();
    out.sort_unstable();
    out
}

fn log_exact(mut v: u64, p: u64) -> u32 {
    let mut k = 0;
    while v > 1 {
        v /= p;
        k += 1;
    }
    k
}

fn check_element(p: &TqdParams, g: &[i64]) -> Result<(), AnyonError> {
    if g.len() != p.layers() || g.iter().enumerate().any(|(i, &x)| x < 0 || x >= p.order(i) as i64) {
        return Err(AnyonError::OutOfRange);
    }
    Ok(())
}

/// Phase exponent of the type I and type II 3-cocycle `omega(g, h, k)`.
pub fn cocycle_value(p: &TqdParams, g: &[i64], h: &[i64], k: &[i64]) -> Result<Rational01, AnyonError> {
    check_element(p, g)?;
    check_element(p, h)?;
    check_element(p, k)?;
    let m = p.layers();
    let ord = |i: usize| p.order(i) as i64;
    let carry = |j: usize| h[j] + k[j] - (h[j] + k[j]).rem_euclid(ord(j));
    let mut acc = Rational01::ZERO;
    for i in 0..m {
        acc += Rational01::new(p.n(i) as i64 * g[i] * carry(i), ord(i) * ord(i));
        for j in i + 1..m {
            acc += Rational01::new(p.nij(i, j) as i64 * g[i] * carry(j), ord(i) * ord(j));
        }
    }
    Ok(acc)
}

/// Condensation of stacked `Z_{N_i^2}` toric codes into the TQD theory.
#[derive(Clone, Debug)]
pub struct StackCondensation {
    pub parent: AnyonTheory,
    pub condensation: Condensation,
    pub target: AnyonTheory,
    /// Isomorphism from the condensed theory onto `target`, if any.
    pub witness: Option<Vec<Element>>,
    /// Classes of the charges `c_i` and fluxes `phi_i` in the condensed theory.
    pub charge_classes: Vec<Element>,
    pub flux_classes: Vec<Element>,
}

impl StackCondensation {
    pub fn isomorphic(&self) -> bool {
        self.witness.is_some()
    }
}

/// Parent coordinates `(e_1, m_1, e_2, m_2, ...)` of a stacked toric-code label.
pub fn stack_element(label: &TcLabel) -> Element {
    label.e.iter().zip(&label.m).flat_map(|(&e, &m)| [e, m]).collect()
}

/// Builds the stack of `Z_{N_i^2}` toric codes, condenses every `b_i` and
/// compares the result with [`tqd_theory`].
pub fn stack_condense_to_tqd(p: &TqdParams) -> Result<StackCondensation, AnyonError> {
    let parent = p
        .orders()
        .iter()
        .fold(AnyonTheory::trivial(), |t, &n| t.stack(&AnyonTheory::toric_code((n * n) as u64)));
    let bosons: Vec<Element> = (0..p.layers()).map(|i| stack_element(&condensed_boson(p, i))).collect();
    let condensation = parent.condense(&bosons)?;
    let target = tqd_theory(p)?;
    let witness = condensation.theory().isomorphism(&target);
    let classes = |f: fn(&TqdParams, usize) -> TcLabel| -> Result<Vec<Element>, AnyonError> {
        (0..p.layers())
            .map(|i| {
                condensation
                    .class_of(&stack_element(&f(p, i)))?
                    .ok_or(AnyonError::NotWellDefined)
            })
            .collect()
    };
    let charge_classes = classes(gauge_charge)?;
    let flux_classes = classes(elementary_flux)?;
    Ok(StackCondensation {
        parent,
        condensation,
        target,
        witness,
        charge_classes,
        flux_classes,
    })
}
