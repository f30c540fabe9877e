//! Branched triangulation of the torus with simplicial cochains.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::CircuitError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// `(x, y) -> (x + 1, y)`
    H,
    /// `(x, y) -> (x, y + 1)`
    V,
    /// `(x, y) -> (x + 1, y + 1)`
    D,
}

/// Torus triangulated by the diagonals `(x, y) -> (x + 1, y + 1)`, with every edge
/// oriented toward increasing coordinates. No face is cyclically oriented.
///
/// Edge indices place `H` and `V` at `2c` and `2c + 1` for cell `c = y Lx + x`,
/// matching the square-lattice edge layout, and the diagonals after them at `2n + c`.
/// Faces are `up(x, y) = <(x,y), (x+1,y), (x+1,y+1)>` at `2c` and
/// `down(x, y) = <(x,y), (x,y+1), (x+1,y+1)>` at `2c + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchedTriangularLattice {
    lx: usize,
    ly: usize,
}

/// A face with its vertices in branching order and edges `<12>`, `<23>`, `<13>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: [usize; 3],
    pub e12: usize,
    pub e23: usize,
    pub e13: usize,
}

/// A `Z_m`-valued `p`-cochain listing one value per `p`-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cochain {
    degree: u8,
    modulus: u8,
    values: Vec<u8>,
}

impl Cochain {
    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn get(&self, simplex: usize) -> u8 {
        self.values[simplex]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CircuitError> {
        if (self.degree, self.modulus) != (other.degree, other.modulus) {
            return Err(CircuitError::CochainMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % self.modulus).collect();
        Ok(Cochain { values, ..*self })
    }

    /// Support of the cochain: simplices with nonzero value.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i)
    }
}

impl BranchedTriangularLattice {
    /// Needs `L >= 3` in both directions so every face has three distinct vertices.
    pub fn new(lx: usize, ly: usize) -> Result<Self, CircuitError> {
        if lx < 3 || ly < 3 {
            return Err(CircuitError::TooSmall { lx, ly });
        }
        Ok(BranchedTriangularLattice { lx, ly })
    }

    pub fn lx(&self) -> usize {
        self.lx
    }

    pub fn ly(&self) -> usize {
        self.ly
    }

    fn cells(&self) -> usize {
        self.lx * self.ly
    }

    fn cell(&self, x: i64, y: i64) -> usize {
        let x = x.rem_euclid(self.lx as i64) as usize;
        let y = y.rem_euclid(self.ly as i64) as usize;
        y * self.lx + x
    }

    fn coords(&self, c: usize) -> (i64, i64) {
        ((c % self.lx) as i64, (c / self.lx) as i64)
    }

    /// Number of `p`-simplices.
    pub fn count(&self, degree: u8) -> usize {
        self.cells() * [1, 3, 2][degree as usize]
    }

    pub fn vertex(&self, x: i64, y: i64) -> usize {
        self.cell(x, y)
    }

    pub fn edge(&self, x: i64, y: i64, kind: EdgeKind) -> usize {
        let c = self.cell(x, y);
        match kind {
            EdgeKind::H => 2 * c,
            EdgeKind::V => 2 * c + 1,
            EdgeKind::D => 2 * self.cells() + c,
        }
    }

    /// Base point and kind of an edge.
    pub fn edge_position(&self, e: usize) -> (i64, i64, EdgeKind) {
        let n = self.cells();
        let (c, kind) = if e >= 2 * n {
            (e - 2 * n, EdgeKind::D)
        } else if e.is_multiple_of(2) {
            (e / 2, EdgeKind::H)
        } else {
            (e / 2, EdgeKind::V)
        };
        let (x, y) = self.coords(c);
        (x, y, kind)
    }

    /// `[tail, head]`.
    pub fn edge_vertices(&self, e: usize) -> [usize; 2] {
        let (x, y, kind) = self.edge_position(e);
        let (dx, dy) = match kind {
            EdgeKind::H => (1, 0),
            EdgeKind::V => (0, 1),
            EdgeKind::D => (1, 1),
        };
        [self.vertex(x, y), self.vertex(x + dx, y + dy)]
    }

    pub fn up_face(&self, x: i64, y: i64) -> usize {
        2 * self.cell(x, y)
    }

    pub fn down_face(&self, x: i64, y: i64) -> usize {
        2 * self.cell(x, y) + 1
    }

    pub fn is_up(&self, f: usize) -> bool {
        f.is_multiple_of(2)
    }

    pub fn face(&self, f: usize) -> Face {
        let (x, y) = self.coords(f / 2);
        use EdgeKind::*;
        if self.is_up(f) {
            Face {
                vertices: [self.vertex(x, y), self.vertex(x + 1, y), self.vertex(x + 1, y + 1)],
                e12: self.edge(x, y, H),
                e23: self.edge(x + 1, y, V),
                e13: self.edge(x, y, D),
            }
        } else {
            Face {
                vertices: [self.vertex(x, y), self.vertex(x, y + 1), self.vertex(x + 1, y + 1)],
                e12: self.edge(x, y, V),
                e23: self.edge(x, y + 1, H),
                e13: self.edge(x, y, D),
            }
        }
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.count(2)).map(|f| self.face(f))
    }

    /// The two faces bordering an edge.
    pub fn edge_faces(&self, e: usize) -> [usize; 2] {
        let (x, y, kind) = self.edge_position(e);
        match kind {
            EdgeKind::H => [self.up_face(x, y), self.down_face(x, y - 1)],
            EdgeKind::V => [self.down_face(x, y), self.up_face(x - 1, y)],
            EdgeKind::D => [self.up_face(x, y), self.down_face(x, y)],
        }
    }

    pub fn zero_cochain(&self, degree: u8, modulus: u8) -> Result<Cochain, CircuitError> {
        self.cochain(degree, modulus, vec![0; self.count(degree.min(2))])
    }

    pub fn cochain(&self, degree: u8, modulus: u8, values: Vec<i64>) -> Result<Cochain, CircuitError> {
        if degree > 2 {
            return Err(CircuitError::DegreeOverflow { degree });
        }
        if modulus < 2 {
            return Err(CircuitError::BadModulus(modulus));
        }
        let expected = self.count(degree);
        if values.len() != expected {
            return Err(CircuitError::Length {
                expected,
                found: values.len(),
            });
        }
        let values = values.into_iter().map(|v| v.rem_euclid(modulus as i64) as u8).collect();
        Ok(Cochain { degree, modulus, values })
    }

    /// The cochain `1` on a single simplex.
    pub fn indicator(&self, degree: u8, modulus: u8, simplex: usize) -> Result<Cochain, CircuitError> {
        let mut c = self.zero_cochain(degree, modulus)?;
        if simplex >= c.values.len() {
            return Err(CircuitError::Length {
                expected: c.values.len(),
                found: simplex + 1,
            });
        }
        c.values[simplex] = 1;
        Ok(c)
    }

    fn check(&self, c: &Cochain) -> Result<(), CircuitError> {
        if c.values.len() == self.count(c.degree) {
            Ok(())
        } else {
            Err(CircuitError::Length {
                expected: self.count(c.degree),
                found: c.values.len(),
            })
        }
    }

    /// `(delta c)(s) = c(boundary s)` with `d<12> = <2> - <1>` and
    /// `d<123> = <23> - <13> + <12>`.
    pub fn coboundary(&self, c: &Cochain) -> Result<Cochain, CircuitError> {
        self.check(c)?;
        let m = c.modulus as i64;
        let g = |s: usize| c.values[s] as i64;
        let values: Vec<i64> = match c.degree {
            0 => (0..self.count(1))
                .map(|e| {
                    let [t, h] = self.edge_vertices(e);
                    g(h) - g(t)
                })
                .collect(),
            1 => self.faces().map(|f| g(f.e23) - g(f.e13) + g(f.e12)).collect(),
            _ => return Err(CircuitError::DegreeOverflow { degree: 3 }),
        };
        self.cochain(c.degree + 1, m as u8, values)
    }

    /// Cup product evaluated on branching-ordered simplices:
    /// `(a cup b)<1..p+q+1> = a<1..p+1> b<p+1..p+q+1>`.
    pub fn cup_product(&self, a: &Cochain, b: &Cochain) -> Result<Cochain, CircuitError> {
        self.check(a)?;
        self.check(b)?;
        if a.modulus != b.modulus {
            return Err(CircuitError::CochainMismatch);
        }
        let degree = a.degree + b.degree;
        if degree > 2 {
            return Err(CircuitError::DegreeOverflow { degree });
        }
        let (av, bv) = (&a.values, &b.values);
        let prod = |x: u8, y: u8| x as i64 * y as i64;
        let values: Vec<i64> = match (a.degree, b.degree) {
            (0, 0) => av.iter().zip(bv).map(|(&x, &y)| prod(x, y)).collect(),
            (0, 1) => (0..self.count(1)).map(|e| prod(av[self.edge_vertices(e)[0]], bv[e])).collect(),
            (1, 0) => (0..self.count(1)).map(|e| prod(av[e], bv[self.edge_vertices(e)[1]])).collect(),
            (1, 1) => self.faces().map(|f| prod(av[f.e12], bv[f.e23])).collect(),
            (0, 2) => (0..self.count(2)).map(|f| prod(av[self.face(f).vertices[0]], bv[f])).collect(),
            (2, 0) => (0..self.count(2)).map(|f| prod(av[f], bv[self.face(f).vertices[2]])).collect(),
            _ => unreachable!("degree checked above"),
        };
        self.cochain(degree, a.modulus, values)
    }

    fn binary_vertex_cochain(&self, b: &Cochain) -> Result<(), CircuitError> {
        self.check(b)?;
        if b.degree != 0 || b.modulus != 2 {
            return Err(CircuitError::CochainMismatch);
        }
        Ok(())
    }

    /// `prod_faces (-1)^{b_u b_v b_w} prod_edges (-1)^{b_v b_w} prod_v (-1)^{b_v}`, as `+1` or `-1`.
    pub fn amplitude_psi(&self, b: &Cochain) -> Result<i32, CircuitError> {
        self.binary_vertex_cochain(b)?;
        let on = |v: usize| b.values[v] == 1;
        let faces = self.faces().filter(|f| f.vertices.iter().all(|&v| on(v))).count();
        let edges = (0..self.count(1))
            .filter(|&e| self.edge_vertices(e).iter().all(|&v| on(v)))
            .count();
        let vertices = (0..self.count(0)).filter(|&v| on(v)).count();
        Ok(if (faces + edges + vertices) % 2 == 0 { 1 } else { -1 })
    }

    /// Number of closed loops on the dual hexagonal lattice traced by the edges with `delta b = 1`.
    pub fn domain_wall_count(&self, b: &Cochain) -> Result<usize, CircuitError> {
        self.binary_vertex_cochain(b)?;
        let walls = self.coboundary(b)?;
        let mut uf = UnionFind::<usize>::new(self.count(2));
        let mut touched = vec![false; self.count(2)];
        for e in walls.support() {
            let [f, g] = self.edge_faces(e);
            uf.union(f, g);
            touched[f] = true;
            touched[g] = true;
        }
        let mut roots: Vec<usize> = (0..self.count(2)).filter(|&f| touched[f]).map(|f| uf.find(f)).collect();
        roots.sort_unstable();
        roots.dedup();
        Ok(roots.len())
    }

    /// Checks `Psi(b) = (-1)^{N_dw(b)}` over all `2^{Lx Ly}` configurations; returns the failures.
    pub fn psi_identity_failures(&self) -> Result<Vec<Vec<u8>>, CircuitError> {
        let n = self.count(0);
        if n > 24 {
            return Err(CircuitError::TooLarge { dimension: 1u64 << n.min(63) });
        }
        let mut failures = Vec::new();
        for mask in 0u64..(1 << n) {
            let b = self.cochain(0, 2, (0..n).map(|v| ((mask >> v) & 1) as i64).collect())?;
            let walls = self.domain_wall_count(&b)?;
            let expected = if walls % 2 == 0 { 1 } else { -1 };
            if self.amplitude_psi(&b)? != expected {
                failures.push(b.values);
            }
        }
        Ok(failures)
    }
}
