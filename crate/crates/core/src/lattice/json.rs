use serde::{Deserialize, Serialize};

use super::{LatticeError, LatticeModel, SiteLabel, Term, TqdParams};
use crate::stabilizer::GroupJson;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelType {
    Tc,
    Ds,
    Tqd,
    Spt,
}

/// Input description of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    #[serde(rename = "type")]
    pub kind: ModelType,
    #[serde(rename = "N", default)]
    pub orders: Vec<u32>,
    #[serde(default)]
    pub n: Vec<i64>,
    #[serde(default)]
    pub nij: Vec<Vec<i64>>,
    #[serde(rename = "Lx")]
    pub lx: usize,
    #[serde(rename = "Ly")]
    pub ly: usize,
}

impl ModelSpec {
    pub fn build(&self) -> Result<LatticeModel, LatticeError> {
        match self.kind {
            ModelType::Tc => {
                let n = match self.orders.as_slice() {
                    [n] => *n,
                    _ => return Err(LatticeError::BadOrder(0)),
                };
                LatticeModel::zn_tc(n, self.lx, self.ly)
            }
            ModelType::Ds => LatticeModel::ds(self.lx, self.ly),
            ModelType::Spt => LatticeModel::spt(self.lx, self.ly),
            ModelType::Tqd => {
                let p = TqdParams::new(self.orders.clone(), self.n.clone(), self.nij.clone())?;
                LatticeModel::tqd(&p, self.lx, self.ly)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SiteEntry {
    pub index: usize,
    pub dim: u32,
    #[serde(flatten)]
    pub label: SiteLabel,
}

/// Serialized model: the stabilizer group, a site legend and a term legend
/// aligned with `group.generators`.
#[derive(Clone, Debug, Serialize)]
pub struct ModelJson {
    #[serde(rename = "Lx")]
    pub lx: usize,
    #[serde(rename = "Ly")]
    pub ly: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<TqdParams>,
    pub group: GroupJson,
    pub sites: Vec<SiteEntry>,
    pub terms: Vec<Term>,
}

impl From<&LatticeModel> for ModelJson {
    fn from(m: &LatticeModel) -> Self {
        let lat = m.lattice();
        let sys = lat.system();
        ModelJson {
            lx: lat.lx(),
            ly: lat.ly(),
            params: m.params().cloned(),
            group: m.group().to_json(),
            sites: (0..sys.len())
                .map(|i| SiteEntry {
                    index: i,
                    dim: sys.dim(i),
                    label: lat.label(i),
                })
                .collect(),
            terms: m.terms().to_vec(),
        }
    }
}
