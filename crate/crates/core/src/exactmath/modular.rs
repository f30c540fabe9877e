//! Diagonalization over `Z/L` with machine integers. This is the fast path the
//! stabilizer engine uses for membership, kernels and centralizers; the
//! arbitrary-precision Smith form remains the reference route.

use num_integer::Integer;

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = (a as i128).extended_gcd(&(b as i128));
    (e.gcd as i64, e.x as i64, e.y as i64)
}

fn mulmod(a: i64, b: i64, m: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(m as i128)) as i64
}

/// Result of reducing `A` (rows x cols) over `Z/L` to diagonal form
/// `P A V = diag`, with `P` applied to the supplied right-hand sides.
#[derive(Clone, Debug)]
pub struct ModDiagonal {
    modulus: i64,
    cols: usize,
    diag: Vec<i64>,
    v: Vec<Vec<i64>>,
    rhs: Vec<Vec<i64>>,
}

impl ModDiagonal {
    /// `a` is a list of rows of length `cols`; `rhs` holds column vectors of length `a.len()`.
    pub fn new(mut a: Vec<Vec<i64>>, cols: usize, modulus: i64, rhs: Vec<Vec<i64>>) -> Self {
        assert!(modulus >= 1);
        let m = a.len();
        let l = modulus;
        for row in a.iter_mut() {
            debug_assert_eq!(row.len(), cols);
            for x in row.iter_mut() {
                *x = x.rem_euclid(l);
            }
        }
        // Right-hand sides stored transposed: one row per equation.
        let mut r: Vec<Vec<i64>> = (0..m)
            .map(|i| rhs.iter().map(|c| c[i].rem_euclid(l)).collect())
            .collect();
        let mut v: Vec<Vec<i64>> = (0..cols)
            .map(|i| (0..cols).map(|j| (i == j) as i64 % l).collect())
            .collect();

        let row_comb = |rows: &mut Vec<Vec<i64>>, t: usize, i: usize, s: i64, u: i64, p: i64, q: i64| {
            // row_t <- s row_t + u row_i ; row_i <- p row_t + q row_i
            let (lo, hi) = rows.split_at_mut(i);
            let (rt, ri) = (&mut lo[t], &mut hi[0]);
            for (x, y) in rt.iter_mut().zip(ri.iter_mut()) {
                let (a0, b0) = (*x, *y);
                *x = (mulmod(s, a0, l) + mulmod(u, b0, l)) % l;
                *y = (mulmod(p, a0, l) + mulmod(q, b0, l)) % l;
            }
        };
        let col_comb = |rows: &mut Vec<Vec<i64>>, t: usize, j: usize, s: i64, u: i64, p: i64, q: i64| {
            for row in rows.iter_mut() {
                let (a0, b0) = (row[t], row[j]);
                row[t] = (mulmod(s, a0, l) + mulmod(u, b0, l)) % l;
                row[j] = (mulmod(p, a0, l) + mulmod(q, b0, l)) % l;
            }
        };

        let steps = m.min(cols);
        let mut diag = vec![0i64; steps];
        for t in 0..steps {
            let Some((pi, pj)) = (t..m)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] != 0)
            else {
                break;
            };
            a.swap(t, pi);
            r.swap(t, pi);
            if pj != t {
                for row in a.iter_mut().chain(v.iter_mut()) {
                    row.swap(t, pj);
                }
            }
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    let (p, b) = (a[t][t], a[i][t]);
                    if b == 0 {
                        continue;
                    }
                    if b % p == 0 {
                        let k = (l - (b / p) % l) % l;
                        row_comb(&mut a, t, i, 1, 0, k, 1);
                        row_comb(&mut r, t, i, 1, 0, k, 1);
                    } else {
                        let (g, s, u) = ext_gcd(p, b);
                        let (pp, qq) = ((-(b / g)).rem_euclid(l), (p / g).rem_euclid(l));
                        let (s, u) = (s.rem_euclid(l), u.rem_euclid(l));
                        row_comb(&mut a, t, i, s, u, pp, qq);
                        row_comb(&mut r, t, i, s, u, pp, qq);
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    let (p, b) = (a[t][t], a[t][j]);
                    if b == 0 {
                        continue;
                    }
                    if b % p == 0 {
                        let k = (l - (b / p) % l) % l;
                        col_comb(&mut a, t, j, 1, 0, k, 1);
                        col_comb(&mut v, t, j, 1, 0, k, 1);
                    } else {
                        let (g, s, u) = ext_gcd(p, b);
                        let (pp, qq) = ((-(b / g)).rem_euclid(l), (p / g).rem_euclid(l));
                        let (s, u) = (s.rem_euclid(l), u.rem_euclid(l));
                        col_comb(&mut a, t, j, s, u, pp, qq);
                        col_comb(&mut v, t, j, s, u, pp, qq);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            diag[t] = a[t][t];
        }
        ModDiagonal {
            modulus: l,
            cols,
            diag,
            v,
            rhs: r,
        }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// Some `x` with `A x = b_k (mod L)` for the `k`-th right-hand side.
    pub fn solve(&self, k: usize) -> Option<Vec<i64>> {
        let l = self.modulus;
        let mut y = vec![0i64; self.cols];
        for (i, row) in self.rhs.iter().enumerate() {
            let c = row[k];
            let d = self.diag.get(i).copied().unwrap_or(0);
            let g = d.gcd(&l);
            if c % g != 0 {
                return None;
            }
            if i < self.cols && c != 0 {
                let lg = l / g;
                let inv = if lg == 1 {
                    0
                } else {
                    ext_gcd((d / g).rem_euclid(lg), lg).1.rem_euclid(lg)
                };
                y[i] = mulmod(c / g, inv, lg);
            }
        }
        Some(self.apply_v(&y))
    }

    /// Generators of `{x : A x = 0 (mod L)}` as a subgroup of `(Z/L)^cols`.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let l = self.modulus;
        (0..self.cols)
            .filter_map(|j| {
                let d = self.diag.get(j).copied().unwrap_or(0);
                let k = l / d.gcd(&l);
                (k < l).then(|| {
                    let mut y = vec![0i64; self.cols];
                    y[j] = k % l;
                    self.apply_v(&y)
                })
            })
            .filter(|x| x.iter().any(|&e| e != 0))
            .collect()
    }

    /// Order of the image `A (Z/L)^cols`.
    pub fn image_order(&self) -> num_bigint::BigInt {
        let l = self.modulus;
        self.diag
            .iter()
            .map(|&d| num_bigint::BigInt::from(l / d.gcd(&l)))
            .product()
    }

    fn apply_v(&self, y: &[i64]) -> Vec<i64> {
        let l = self.modulus;
        (0..self.cols)
            .map(|i| {
                self.v[i]
                    .iter()
                    .zip(y)
                    .fold(0i64, |acc, (&a, &b)| (acc + mulmod(a, b, l)) % l)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eval(a: &[Vec<i64>], x: &[i64], l: i64) -> Vec<i64> {
        a.iter()
            .map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum::<i64>().rem_euclid(l))
            .collect()
    }

    #[test]
    fn solves_spec_example() {
        let a = vec![vec![3, 0], vec![0, 3]];
        let d = ModDiagonal::new(a.clone(), 2, 9, vec![vec![3, 6]]);
        let x = d.solve(0).unwrap();
        assert_eq!(eval(&a, &x, 9), vec![3, 6]);
    }

    #[test]
    fn parity_obstruction() {
        let d = ModDiagonal::new(vec![vec![2]], 1, 4, vec![vec![1], vec![2]]);
        assert!(d.solve(0).is_none());
        assert_eq!(d.solve(1).map(|x| (2 * x[0]) % 4), Some(2));
        assert_eq!(d.kernel(), vec![vec![2]]);
    }

    proptest! {
        #[test]
        fn solve_and_kernel_match_brute_force(
            l in 2i64..7,
            entries in proptest::collection::vec(0i64..12, 9),
            b in proptest::collection::vec(0i64..12, 3),
        ) {
            let a: Vec<Vec<i64>> = (0..3).map(|r| entries[r * 3..r * 3 + 3].to_vec()).collect();
            let b: Vec<i64> = b.iter().map(|v| v % l).collect();
            let d = ModDiagonal::new(a.clone(), 3, l, vec![b.clone()]);
            let all: Vec<Vec<i64>> = (0..l * l * l).map(|n| vec![n % l, (n / l) % l, n / (l * l)]).collect();
            let brute_solvable = all.iter().any(|x| eval(&a, x, l) == b);
            match d.solve(0) {
                Some(x) => prop_assert_eq!(eval(&a, &x, l), b.clone()),
                None => prop_assert!(!brute_solvable),
            }
            // Kernel generators span exactly the brute-force kernel.
            let ker = d.kernel();
            for k in &ker {
                prop_assert!(eval(&a, k, l).iter().all(|&e| e == 0));
            }
            let brute: std::collections::BTreeSet<Vec<i64>> =
                all.iter().filter(|x| eval(&a, x, l).iter().all(|&e| e == 0)).cloned().collect();
            let mut span = std::collections::BTreeSet::from([vec![0i64; 3]]);
            loop {
                let mut grew = false;
                for s in span.clone() {
                    for k in &ker {
                        let n: Vec<i64> = s.iter().zip(k).map(|(p, q)| (p + q) % l).collect();
                        grew |= span.insert(n);
                    }
                }
                if !grew { break; }
            }
            prop_assert_eq!(span, brute);
        }
    }
}
