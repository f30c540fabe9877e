use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::pauli::{PauliError, PauliOperator, QuditSystem};

/// Edge orientation: `H` runs `(x, y) -> (x+1, y)`, `V` runs `(x, y) -> (x, y+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    H,
    V,
}

/// Unit step on the square lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    E,
    N,
    W,
    S,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::E, Dir::N, Dir::W, Dir::S];

    pub fn delta(self) -> (i64, i64) {
        match self {
            Dir::E => (1, 0),
            Dir::N => (0, 1),
            Dir::W => (-1, 0),
            Dir::S => (0, -1),
        }
    }

    /// Quarter turns counter-clockwise from east.
    pub fn quarter_turns(self) -> u8 {
        match self {
            Dir::E => 0,
            Dir::N => 1,
            Dir::W => 2,
            Dir::S => 3,
        }
    }

    pub fn rotate_ccw(self, k: u8) -> Dir {
        Dir::ALL[((self.quarter_turns() + k) % 4) as usize]
    }

    pub fn reverse(self) -> Dir {
        self.rotate_ccw(2)
    }
}

/// What a site index refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SiteLabel {
    Edge { x: i64, y: i64, orientation: Orientation, layer: usize },
    Vertex { x: i64, y: i64 },
}

/// Periodic `lx x ly` square lattice with one qudit per edge and layer, plus
/// an optional qudit per vertex.
///
/// Edge sites come first, `((y lx + x) 2 + o) layers + layer`; vertex sites follow.
#[derive(Clone, Debug)]
pub struct TorusLattice {
    lx: i64,
    ly: i64,
    layers: Vec<u32>,
    vertex_dim: Option<u32>,
    system: Arc<QuditSystem>,
}

impl TorusLattice {
    pub fn new(lx: usize, ly: usize, layers: Vec<u32>, vertex_dim: Option<u32>) -> Result<Self, PauliError> {
        let mut dims = Vec::with_capacity(2 * lx * ly * layers.len() + lx * ly);
        for _ in 0..2 * lx * ly {
            dims.extend_from_slice(&layers);
        }
        if let Some(d) = vertex_dim {
            dims.extend(std::iter::repeat_n(d, lx * ly));
        }
        Ok(TorusLattice {
            lx: lx as i64,
            ly: ly as i64,
            layers,
            vertex_dim,
            system: QuditSystem::new(dims)?,
        })
    }

    pub fn lx(&self) -> usize {
        self.lx as usize
    }

    pub fn ly(&self) -> usize {
        self.ly as usize
    }

    pub fn layers(&self) -> &[u32] {
        &self.layers
    }

    pub fn vertex_dim(&self) -> Option<u32> {
        self.vertex_dim
    }

    pub fn system(&self) -> &Arc<QuditSystem> {
        &self.system
    }

    pub fn wrap(&self, x: i64, y: i64) -> (i64, i64) {
        (x.rem_euclid(self.lx), y.rem_euclid(self.ly))
    }

    pub fn edge(&self, x: i64, y: i64, o: Orientation, layer: usize) -> usize {
        let (x, y) = self.wrap(x, y);
        let cell = (y * self.lx + x) as usize;
        (cell * 2 + (o == Orientation::V) as usize) * self.layers.len() + layer
    }

    /// Vertex-qudit site; panics when the lattice has no vertex layer.
    pub fn vertex(&self, x: i64, y: i64) -> usize {
        assert!(self.vertex_dim.is_some(), "lattice has no vertex qudits");
        let (x, y) = self.wrap(x, y);
        self.edge_count() + (y * self.lx + x) as usize
    }

    pub fn edge_count(&self) -> usize {
        (2 * self.lx * self.ly) as usize * self.layers.len()
    }

    pub fn label(&self, site: usize) -> SiteLabel {
        let nl = self.layers.len();
        if site >= self.edge_count() {
            let c = (site - self.edge_count()) as i64;
            return SiteLabel::Vertex {
                x: c % self.lx,
                y: c / self.lx,
            };
        }
        let layer = site % nl;
        let rest = site / nl;
        let orientation = if rest.is_multiple_of(2) { Orientation::H } else { Orientation::V };
        let c = (rest / 2) as i64;
        SiteLabel::Edge {
            x: c % self.lx,
            y: c / self.lx,
            orientation,
            layer,
        }
    }

    /// All vertices `(x, y)` in row-major order; plaquette `p(x, y)` has `(x, y)` as its lower-left corner.
    pub fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (0..self.ly).flat_map(move |y| (0..self.lx).map(move |x| (x, y)))
    }

    /// Edge traversed by a unit step from `(x, y)`, with `+1` when the step follows the edge orientation.
    pub fn step_edge(&self, x: i64, y: i64, d: Dir) -> (i64, i64, Orientation, i64) {
        match d {
            Dir::E => (x, y, Orientation::H, 1),
            Dir::W => (x - 1, y, Orientation::H, -1),
            Dir::N => (x, y, Orientation::V, 1),
            Dir::S => (x, y - 1, Orientation::V, -1),
        }
    }

    /// Edge crossed by a dual step out of plaquette `p(a, b)`, with the sign of the
    /// flux-hop `X` exponent.
    pub fn dual_step_edge(&self, a: i64, b: i64, d: Dir) -> (i64, i64, Orientation, i64) {
        match d {
            Dir::E => (a + 1, b, Orientation::V, 1),
            Dir::W => (a, b, Orientation::V, -1),
            Dir::N => (a, b + 1, Orientation::H, -1),
            Dir::S => (a, b, Orientation::H, 1),
        }
    }

    /// Shifts every site of `p` by `(dx, dy)` unit cells.
    pub fn translate(&self, p: &PauliOperator, dx: i64, dy: i64) -> PauliOperator {
        p.remap_sites(&self.system, |s| match self.label(s) {
            SiteLabel::Edge { x, y, orientation, layer } => self.edge(x + dx, y + dy, orientation, layer),
            SiteLabel::Vertex { x, y } => self.vertex(x + dx, y + dy),
        })
        .expect("translation stays on the lattice")
    }
}

/// A lattice path given as a start point and unit steps.
///
/// `Direct` paths start at vertex `(x, y)`; `Dual` paths start at plaquette `p(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathSpec {
    Direct { start: (i64, i64), steps: Vec<Dir> },
    Dual { start: (i64, i64), steps: Vec<Dir> },
}

impl PathSpec {
    pub fn straight(start: (i64, i64), d: Dir, len: usize) -> Self {
        PathSpec::Direct {
            start,
            steps: vec![d; len],
        }
    }

    pub fn steps(&self) -> &[Dir] {
        match self {
            PathSpec::Direct { steps, .. } | PathSpec::Dual { steps, .. } => steps,
        }
    }

    /// Net displacement of the path.
    pub fn displacement(&self) -> (i64, i64) {
        self.steps().iter().fold((0, 0), |(x, y), d| {
            let (dx, dy) = d.delta();
            (x + dx, y + dy)
        })
    }

    /// True when the path ends where it starts on the given torus.
    pub fn is_closed(&self, lx: usize, ly: usize) -> bool {
        let (dx, dy) = self.displacement();
        dx.rem_euclid(lx as i64) == 0 && dy.rem_euclid(ly as i64) == 0
    }

    /// Vertices visited (start included) of the equivalent direct path.
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let (start, steps) = self.as_direct();
        let mut out = vec![start];
        let mut cur = start;
        for d in steps {
            let (dx, dy) = d.delta();
            cur = (cur.0 + dx, cur.1 + dy);
            out.push(cur);
        }
        out
    }

    /// Dual path at `p(a, b)` is read as the direct path at vertex `(a+1, b+1)`,
    /// whose south-west ribbon partner is that same dual path.
    pub fn as_direct(&self) -> ((i64, i64), &[Dir]) {
        match self {
            PathSpec::Direct { start, steps } => (*start, steps),
            PathSpec::Dual { start, steps } => ((start.0 + 1, start.1 + 1), steps),
        }
    }
}
