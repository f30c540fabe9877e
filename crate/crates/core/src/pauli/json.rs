use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{PauliError, PauliOperator, QuditSystem};

/// Serialized operator: `{"phase": int, "x": {site: exp}, "z": {site: exp}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PauliJson {
    pub phase: u64,
    #[serde(default)]
    pub x: BTreeMap<usize, u32>,
    #[serde(default)]
    pub z: BTreeMap<usize, u32>,
}

impl From<&PauliOperator> for PauliJson {
    fn from(p: &PauliOperator) -> Self {
        PauliJson {
            phase: p.phase(),
            x: p.entries().filter(|e| e.1 != 0).map(|(s, x, _)| (s, x)).collect(),
            z: p.entries().filter(|e| e.2 != 0).map(|(s, _, z)| (s, z)).collect(),
        }
    }
}

impl PauliJson {
    pub fn to_operator(&self, system: &Arc<QuditSystem>) -> Result<PauliOperator, PauliError> {
        let x: Vec<(usize, i64)> = self.x.iter().map(|(&s, &e)| (s, e as i64)).collect();
        let z: Vec<(usize, i64)> = self.z.iter().map(|(&s, &e)| (s, e as i64)).collect();
        PauliOperator::from_exponents(system, self.phase as i64, &x, &z)
    }
}
