use serde::{Deserialize, Serialize};

use super::{Dir, LatticeError, Orientation, PathSpec, TcLabel, TorusLattice};
use crate::params::TqdParams;
use crate::pauli::PauliOperator;
use crate::stabilizer::StabilizerGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Single-layer Z_N toric code.
    Tc,
    /// Layer-wise Z_{N_i^2} toric codes, the parent of a TQD.
    StackedTc,
    Ds,
    Tqd,
    /// DS with a vertex qubit layer and the symmetric product terms (before measuring `D_e`).
    DsVertex,
    Spt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermFamily {
    /// Vertex term.
    A,
    /// Plaquette term.
    B,
    /// Short condensed-boson string, indexed by the edge carrying its `X` part.
    C,
    /// Vertex term dressed by the vertex-qubit `X`.
    AX,
    /// Short `ss̄` string bound to vertex-qubit `Z` charges.
    D,
    /// Bare vertex-qubit `X`.
    XV,
}

/// Position and kind of one generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub family: TermFamily,
    pub x: i64,
    pub y: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layer: Option<usize>,
}

/// Which dual path accompanies a direct path in a dyon ribbon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Framing {
    /// Plaquette `p(x, y)` pairs with vertex `(x, y)`; used for condensed short strings.
    NorthEast,
    /// Plaquette `p(x-1, y-1)` pairs with vertex `(x, y)`; used for deconfined strings.
    SouthWest,
}

impl Framing {
    fn offset(self) -> (i64, i64) {
        match self {
            Framing::NorthEast => (0, 0),
            Framing::SouthWest => (-1, -1),
        }
    }
}

/// A stabilizer model on a torus with its geometry and term legend.
#[derive(Clone, Debug)]
pub struct LatticeModel {
    kind: ModelKind,
    lattice: TorusLattice,
    params: Option<TqdParams>,
    group: StabilizerGroup,
    terms: Vec<Term>,
}

fn term(family: TermFamily, x: i64, y: i64, orientation: Option<Orientation>, layer: Option<usize>) -> Term {
    Term {
        family,
        x,
        y,
        orientation,
        layer,
    }
}

impl TorusLattice {
    fn op(&self, phase: i64, x: &[(usize, i64)], z: &[(usize, i64)]) -> PauliOperator {
        PauliOperator::from_exponents(self.system(), phase, x, z).expect("lattice sites are valid")
    }

    /// Toric-code vertex term `A_v`: `X` on outgoing edges, `X^{-1}` on incoming ones.
    pub fn tc_vertex(&self, x: i64, y: i64, layer: usize) -> PauliOperator {
        use Orientation::*;
        self.op(
            0,
            &[
                (self.edge(x, y, H, layer), 1),
                (self.edge(x, y, V, layer), 1),
                (self.edge(x - 1, y, H, layer), -1),
                (self.edge(x, y - 1, V, layer), -1),
            ],
            &[],
        )
    }

    /// Toric-code plaquette term `B_p` on `p(x, y)`: `Z` on bottom and right, `Z^{-1}` on top and left.
    pub fn tc_plaquette(&self, x: i64, y: i64, layer: usize) -> PauliOperator {
        use Orientation::*;
        self.op(
            0,
            &[],
            &[
                (self.edge(x, y, H, layer), 1),
                (self.edge(x + 1, y, V, layer), 1),
                (self.edge(x, y + 1, H, layer), -1),
                (self.edge(x, y, V, layer), -1),
            ],
        )
    }

    /// One ribbon step of label `a` from vertex `(x, y)`: charge part on the
    /// traversed edge, flux part across the edge between the framed plaquettes.
    pub fn hop(&self, a: &TcLabel, x: i64, y: i64, d: Dir, framing: Framing) -> PauliOperator {
        let (ex, ey, eo, es) = self.step_edge(x, y, d);
        let (ox, oy) = framing.offset();
        let (mx, my, mo, ms) = self.dual_step_edge(x + ox, y + oy, d);
        let mut xs = Vec::new();
        let mut zs = Vec::new();
        for layer in 0..a.layers() {
            if a.e[layer] != 0 {
                zs.push((self.edge(ex, ey, eo, layer), es * a.e[layer]));
            }
            if a.m[layer] != 0 {
                xs.push((self.edge(mx, my, mo, layer), ms * a.m[layer]));
            }
        }
        self.op(0, &xs, &zs)
    }

    /// Ordered product of ribbon steps along `path`.
    pub fn ribbon(&self, a: &TcLabel, path: &PathSpec, framing: Framing) -> PauliOperator {
        let ((mut x, mut y), steps) = path.as_direct();
        let mut out = PauliOperator::identity(self.system());
        for &d in steps {
            out = &out * &self.hop(a, x, y, d, framing);
            let (dx, dy) = d.delta();
            x += dx;
            y += dy;
        }
        out
    }
}

/// Charge labels `e_i` of the parent stack.
fn charge(layers: usize, i: usize, k: i64) -> TcLabel {
    let mut a = TcLabel::trivial(layers);
    a.e[i] = k;
    a
}

/// Condensed boson `b_i = m_i^{-N_i} e_i^{N_i n_i} prod_{j<i} e_j^{N_j n_ij}`.
pub fn condensed_boson(p: &TqdParams, i: usize) -> TcLabel {
    let mut b = TcLabel::trivial(p.layers());
    let ni = p.order(i) as i64;
    b.m[i] = -ni;
    b.e[i] = ni * p.n(i) as i64;
    for j in 0..i {
        b.e[j] = p.order(j) as i64 * p.nij(i, j) as i64;
    }
    b
}

/// Gauge charge `c_i = e_i^{N_i}`.
pub fn gauge_charge(p: &TqdParams, i: usize) -> TcLabel {
    charge(p.layers(), i, p.order(i) as i64)
}

/// Elementary flux `phi_i = m_i e_i^{n_i} prod_{j>i} e_j^{(N_j/N_i) n_ij}`.
pub fn elementary_flux(p: &TqdParams, i: usize) -> TcLabel {
    let mut a = TcLabel::trivial(p.layers());
    a.m[i] = 1;
    a.e[i] = p.n(i) as i64;
    for j in i + 1..p.layers() {
        a.e[j] = (p.order(j) / p.order(i)) as i64 * p.nij(i, j) as i64;
    }
    a
}

fn ds_params() -> TqdParams {
    TqdParams::new(vec![2], vec![1], vec![]).expect("valid")
}

fn check_size(lx: usize, ly: usize) -> Result<(), LatticeError> {
    if lx < 2 || ly < 2 {
        Err(LatticeError::TooSmall { lx, ly })
    } else {
        Ok(())
    }
}

impl LatticeModel {
    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn lattice(&self) -> &TorusLattice {
        &self.lattice
    }

    pub fn params(&self) -> Option<&TqdParams> {
        self.params.as_ref()
    }

    pub fn group(&self) -> &StabilizerGroup {
        &self.group
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_group(self) -> StabilizerGroup {
        self.group
    }

    fn assemble(
        kind: ModelKind,
        lattice: TorusLattice,
        params: Option<TqdParams>,
        items: Vec<(Term, PauliOperator)>,
    ) -> Result<Self, LatticeError> {
        let (terms, gens): (Vec<Term>, Vec<PauliOperator>) = items.into_iter().unzip();
        let group = StabilizerGroup::new(lattice.system(), gens)?;
        Ok(LatticeModel {
            kind,
            lattice,
            params,
            group,
            terms,
        })
    }

    /// Z_N toric code.
    pub fn zn_tc(n: u32, lx: usize, ly: usize) -> Result<Self, LatticeError> {
        check_size(lx, ly)?;
        if n == 0 {
            return Err(LatticeError::BadOrder(n));
        }
        let layers = if n == 1 { vec![] } else { vec![n] };
        let lattice = TorusLattice::new(lx, ly, layers, None)?;
        let mut items = Vec::new();
        if n > 1 {
            for (x, y) in lattice.cells() {
                items.push((term(TermFamily::A, x, y, None, Some(0)), lattice.tc_vertex(x, y, 0)));
            }
            for (x, y) in lattice.cells() {
                items.push((term(TermFamily::B, x, y, None, Some(0)), lattice.tc_plaquette(x, y, 0)));
            }
        }
        Self::assemble(ModelKind::Tc, lattice, None, items)
    }

    /// Layer-wise Z_{N_i^2} toric codes.
    pub fn stacked_tc(p: &TqdParams, lx: usize, ly: usize) -> Result<Self, LatticeError> {
        check_size(lx, ly)?;
        let lattice = tqd_lattice(p, lx, ly, None)?;
        let mut items = Vec::new();
        for i in 0..p.layers() {
            for (x, y) in lattice.cells() {
                items.push((term(TermFamily::A, x, y, None, Some(i)), lattice.tc_vertex(x, y, i)));
            }
            for (x, y) in lattice.cells() {
                items.push((term(TermFamily::B, x, y, None, Some(i)), lattice.tc_plaquette(x, y, i)));
            }
        }
        Self::assemble(ModelKind::StackedTc, lattice, Some(p.clone()), items)
    }

    /// Short strings `C_{e,i}` of the condensed bosons on the given lattice.
    pub fn condensed_strings(lattice: &TorusLattice, p: &TqdParams) -> Vec<(Term, PauliOperator)> {
        let mut out = Vec::new();
        for i in 0..p.layers() {
            let b = condensed_boson(p, i);
            for (x, y) in lattice.cells() {
                // East step from (x-1, y) crosses v(x, y); north step from (x, y-1) crosses h(x, y).
                out.push((
                    term(TermFamily::C, x, y, Some(Orientation::V), Some(i)),
                    lattice.hop(&b, x - 1, y, Dir::E, Framing::NorthEast),
                ));
                out.push((
                    term(TermFamily::C, x, y, Some(Orientation::H), Some(i)),
                    lattice.hop(&b, x, y - 1, Dir::N, Framing::NorthEast),
                ));
            }
        }
        out
    }

    /// Vertex terms `A_{v,i}` and plaquette terms `B_{p,i}` of the condensed model.
    fn tqd_vertex(lattice: &TorusLattice, p: &TqdParams, x: i64, y: i64, i: usize) -> PauliOperator {
        let mut a = lattice.tc_vertex(x, y, i);
        for j in i..p.layers() {
            let r = if j == i {
                p.n(i) as i64
            } else {
                (p.order(j) / p.order(i)) as i64 * p.nij(i, j) as i64
            };
            if r != 0 {
                a = &a * &lattice.tc_plaquette(x, y, j).pow(-r);
            }
        }
        a
    }

    fn tqd_items(lattice: &TorusLattice, p: &TqdParams) -> Vec<(Term, PauliOperator)> {
        let mut items = Vec::new();
        for i in 0..p.layers() {
            for (x, y) in lattice.cells() {
                items.push((term(TermFamily::A, x, y, None, Some(i)), Self::tqd_vertex(lattice, p, x, y, i)));
            }
            for (x, y) in lattice.cells() {
                items.push((
                    term(TermFamily::B, x, y, None, Some(i)),
                    lattice.tc_plaquette(x, y, i).pow(p.order(i) as i64),
                ));
            }
        }
        items.extend(Self::condensed_strings(lattice, p));
        items
    }

    /// Abelian TQD stabilizer model for `G = prod Z_{N_i}` with the given cocycle.
    pub fn tqd(p: &TqdParams, lx: usize, ly: usize) -> Result<Self, LatticeError> {
        check_size(lx, ly)?;
        let lattice = tqd_lattice(p, lx, ly, None)?;
        let items = Self::tqd_items(&lattice, p);
        Self::assemble(ModelKind::Tqd, lattice, Some(p.clone()), items)
    }

    /// Double semion model: the TQD with `G = Z_2`, `n_1 = 1`.
    pub fn ds(lx: usize, ly: usize) -> Result<Self, LatticeError> {
        let mut m = Self::tqd(&ds_params(), lx, ly)?;
        m.kind = ModelKind::Ds;
        Ok(m)
    }

    /// DS with a vertex qubit layer: `<A_v, B_p, C_e, X_v>`.
    pub fn ds_with_vertex_qubits(lx: usize, ly: usize) -> Result<Self, LatticeError> {
        check_size(lx, ly)?;
        let p = ds_params();
        let lattice = tqd_lattice(&p, lx, ly, Some(2))?;
        let mut items = Self::tqd_items(&lattice, &p);
        for (x, y) in lattice.cells() {
            let xv = lattice.op(0, &[(lattice.vertex(x, y), 1)], &[]);
            items.push((term(TermFamily::XV, x, y, None, None), xv));
        }
        Self::assemble(ModelKind::DsVertex, lattice, Some(p), items)
    }

    /// `D_e`: the `ss̄` short string on edge `e` times `Z` on both endpoint qubits.
    pub fn spt_edge_terms(lattice: &TorusLattice) -> Vec<(Term, PauliOperator)> {
        let ssbar = TcLabel::em(2, 0);
        let mut out = Vec::new();
        for (x, y) in lattice.cells() {
            for (o, d) in [(Orientation::H, Dir::E), (Orientation::V, Dir::N)] {
                let (dx, dy) = d.delta();
                let w = lattice.hop(&ssbar, x, y, d, Framing::SouthWest);
                let zz = lattice.op(0, &[], &[(lattice.vertex(x, y), 1), (lattice.vertex(x + dx, y + dy), 1)]);
                out.push((term(TermFamily::D, x, y, Some(o), None), &w * &zz));
            }
        }
        out
    }

    /// DS-based SPT model `<A_v X_v, C_e, D_e>` with a Z_2 vertex symmetry.
    pub fn spt(lx: usize, ly: usize) -> Result<Self, LatticeError> {
        check_size(lx, ly)?;
        let p = ds_params();
        let lattice = tqd_lattice(&p, lx, ly, Some(2))?;
        let mut items = Vec::new();
        for (x, y) in lattice.cells() {
            let xv = lattice.op(0, &[(lattice.vertex(x, y), 1)], &[]);
            let a = Self::tqd_vertex(&lattice, &p, x, y, 0);
            items.push((term(TermFamily::AX, x, y, None, None), &a * &xv));
        }
        items.extend(Self::condensed_strings(&lattice, &p));
        items.extend(Self::spt_edge_terms(&lattice));
        Self::assemble(ModelKind::Spt, lattice, Some(p), items)
    }

    /// Global symmetry `prod_v X_v` of a model with vertex qubits.
    pub fn vertex_symmetry(&self) -> Option<PauliOperator> {
        self.lattice.vertex_dim()?;
        let xs: Vec<(usize, i64)> = self.lattice.cells().map(|(x, y)| (self.lattice.vertex(x, y), 1)).collect();
        Some(self.lattice.op(0, &xs, &[]))
    }

    /// Short strings that condense the parent stack into this model.
    pub fn condensing_strings(&self) -> Vec<PauliOperator> {
        match &self.params {
            Some(p) => Self::condensed_strings(&self.lattice, p).into_iter().map(|t| t.1).collect(),
            None => Vec::new(),
        }
    }

    /// Measures the condensing strings in the parent stack of toric codes and checks
    /// the result equals this model's group. `None` for models without a parent stack.
    pub fn condensation_equality(&self) -> Result<Option<bool>, LatticeError> {
        let p = match (self.kind, &self.params) {
            (ModelKind::Ds | ModelKind::Tqd, Some(p)) => p,
            _ => return Ok(None),
        };
        let parent = Self::stacked_tc(p, self.lattice.lx(), self.lattice.ly())?;
        let measured = parent.group.measure(&self.condensing_strings())?;
        Ok(Some(measured.same_group(&self.group)))
    }

    /// String operator of `label` along `path`: charge part on the direct path,
    /// flux part on the dual path shifted by `(-1/2, -1/2)`; steps multiplied in path order.
    pub fn string_operator(&self, label: &TcLabel, path: &PathSpec) -> Result<PauliOperator, LatticeError> {
        if label.layers() != self.lattice.layers().len() {
            return Err(LatticeError::LabelLayers {
                expected: self.lattice.layers().len(),
                found: label.layers(),
            });
        }
        Ok(self.lattice.ribbon(label, path, Framing::SouthWest))
    }

    /// Named anyon labels: `e`, `m` (toric code); `s`, `sbar`, `ssbar` (DS and SPT);
    /// `c<i>`, `phi<i>` with one-based `i` (TQD and stacks); `1` everywhere.
    pub fn named_label(&self, name: &str) -> Result<TcLabel, LatticeError> {
        let layers = self.lattice.layers().len();
        let unknown = || LatticeError::UnknownLabel(name.to_string());
        if name == "1" {
            return Ok(TcLabel::trivial(layers));
        }
        match self.kind {
            ModelKind::Tc => match name {
                "e" if layers == 1 => Ok(TcLabel::em(1, 0)),
                "m" if layers == 1 => Ok(TcLabel::em(0, 1)),
                _ => Err(unknown()),
            },
            ModelKind::Ds | ModelKind::DsVertex | ModelKind::Spt if matches!(name, "s" | "sbar" | "ssbar") => {
                Ok(match name {
                    "s" => TcLabel::em(1, 1),
                    "sbar" => TcLabel::em(3, 1),
                    _ => TcLabel::em(2, 0),
                })
            }
            _ => {
                let p = self.params.as_ref().ok_or_else(unknown)?;
                let (kind, idx) = if let Some(r) = name.strip_prefix("phi") {
                    (true, r)
                } else if let Some(r) = name.strip_prefix('c') {
                    (false, r)
                } else {
                    return Err(unknown());
                };
                let i: usize = idx.parse().map_err(|_| unknown())?;
                if i == 0 || i > p.layers() {
                    return Err(unknown());
                }
                Ok(if kind { elementary_flux(p, i - 1) } else { gauge_charge(p, i - 1) })
            }
        }
    }

    /// Labels generating the deconfined anyons.
    pub fn generating_labels(&self) -> Vec<(String, TcLabel)> {
        let names: Vec<String> = match self.kind {
            ModelKind::Tc if self.lattice.layers().len() == 1 => vec!["e".into(), "m".into()],
            ModelKind::Tc => vec![],
            ModelKind::Ds => vec!["s".into(), "sbar".into()],
            ModelKind::StackedTc => {
                let p = self.params.as_ref().expect("stack has params");
                let mut v = Vec::new();
                for i in 0..p.layers() {
                    let mut e = TcLabel::trivial(p.layers());
                    e.e[i] = 1;
                    let mut m = TcLabel::trivial(p.layers());
                    m.m[i] = 1;
                    v.push((format!("e{}", i + 1), e));
                    v.push((format!("m{}", i + 1), m));
                }
                return v;
            }
            ModelKind::Tqd => {
                let m = self.params.as_ref().map_or(0, TqdParams::layers);
                (1..=m).map(|i| format!("phi{i}")).chain((1..=m).map(|i| format!("c{i}"))).collect()
            }
            ModelKind::DsVertex | ModelKind::Spt => vec![],
        };
        names
            .into_iter()
            .map(|n| {
                let l = self.named_label(&n).expect("known name");
                (n, l)
            })
            .collect()
    }

    /// Noncontractible loops of `label` around both torus cycles.
    pub fn noncontractible_loops(&self, label: &TcLabel) -> Result<[PauliOperator; 2], LatticeError> {
        let h = PathSpec::straight((0, 0), Dir::E, self.lattice.lx());
        let v = PathSpec::straight((0, 0), Dir::N, self.lattice.ly());
        Ok([self.string_operator(label, &h)?, self.string_operator(label, &v)?])
    }

    /// A label is deconfined when both noncontractible loops commute with every generator.
    pub fn is_deconfined(&self, label: &TcLabel) -> Result<bool, LatticeError> {
        let loops = self.noncontractible_loops(label)?;
        Ok(loops
            .iter()
            .all(|l| self.group.generators().iter().all(|g| g.commutes_with(l))))
    }
}

fn tqd_lattice(p: &TqdParams, lx: usize, ly: usize, vertex: Option<u32>) -> Result<TorusLattice, LatticeError> {
    let dims: Vec<u32> = p.orders().iter().map(|&n| n * n).collect();
    Ok(TorusLattice::new(lx, ly, dims, vertex)?)
}
