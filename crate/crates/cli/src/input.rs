//! Resolution of command inputs: model specs, TQD parameters, anyon theories
//! and integer matrices given either as files or as inline flags.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::de::DeserializeOwned;
use tqd_core::anyon::{tqd_theory, AnyonTheory, Element};
use tqd_core::lattice::{LatticeModel, ModelSpec, ModelType, TqdParams};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Tc,
    Ds,
    Tqd,
    Spt,
}

impl From<ModelArg> for ModelType {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Tc => ModelType::Tc,
            ModelArg::Ds => ModelType::Ds,
            ModelArg::Tqd => ModelType::Tqd,
            ModelArg::Spt => ModelType::Spt,
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// JSON model spec: {"type", "N", "n", "nij", "Lx", "Ly"}
    #[arg(long, global = true, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Model family when no spec is given (default: tqd if --N is set, else ds)
    #[arg(long = "model", global = true, value_enum)]
    pub model: Option<ModelArg>,
    /// Cyclic factor orders N_1 <= N_2 <= ...
    #[arg(long = "N", global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub orders: Vec<u32>,
    /// Type I cocycle integers n_i
    #[arg(long = "n", global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub n: Vec<i64>,
    /// Type II cocycle integers as one-based "i,j,v;i,j,v"
    #[arg(long = "nij", global = true, allow_hyphen_values = true)]
    pub nij: Option<String>,
    /// Square torus size, sets both Lx and Ly
    #[arg(long = "L", global = true)]
    pub l: Option<usize>,
    #[arg(long = "Lx", global = true)]
    pub lx: Option<usize>,
    #[arg(long = "Ly", global = true)]
    pub ly: Option<usize>,
    /// Compact single-line JSON instead of pretty-printed
    #[arg(long, global = true)]
    pub json: bool,
    /// Print a one-line verdict to stderr
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses `"a,b;c,d"` into rows of integers.
pub fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>, CliError> {
    text.split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|row| {
            row.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<i64>()
                        .map_err(|_| CliError::Usage(format!("expected an integer, found {v:?} in {text:?}")))
                })
                .collect()
        })
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize, i64)>, CliError> {
    parse_rows(text)?
        .into_iter()
        .map(|row| match row.as_slice() {
            &[i, j, v] if i >= 1 && j >= 1 => Ok((i as usize - 1, j as usize - 1, v)),
            _ => Err(CliError::Usage(format!(
                "--nij entries must be one-based \"i,j,v\" triples, found {row:?}"
            ))),
        })
        .collect()
}

impl Common {
    /// Torus size from the flags, falling back to `default` per axis.
    pub fn size(&self, default: (usize, usize)) -> (usize, usize) {
        (
            self.lx.or(self.l).unwrap_or(default.0),
            self.ly.or(self.l).unwrap_or(default.1),
        )
    }

    /// Model spec from `--spec`, with explicit size flags taking precedence,
    /// or assembled from the inline flags.
    pub fn model_spec(&self, default_size: (usize, usize)) -> Result<ModelSpec, CliError> {
        if let Some(path) = &self.spec {
            let mut spec: ModelSpec = read_json(path)?;
            if let Some(l) = self.l {
                spec.lx = l;
                spec.ly = l;
            }
            spec.lx = self.lx.unwrap_or(spec.lx);
            spec.ly = self.ly.unwrap_or(spec.ly);
            return Ok(spec);
        }
        let kind = match self.model {
            Some(m) => m.into(),
            None if self.orders.is_empty() => ModelType::Ds,
            None => ModelType::Tqd,
        };
        let (lx, ly) = self.size(default_size);
        let nij = match (&self.nij, self.orders.len()) {
            (Some(text), m) => {
                let mut t = vec![vec![0i64; m]; m];
                for (i, j, v) in parse_pairs(text)? {
                    if i >= m || j >= m || i == j {
                        return Err(CliError::Usage(format!(
                            "--nij index ({}, {}) is outside 1..={m} or on the diagonal",
                            i + 1,
                            j + 1
                        )));
                    }
                    t[i][j] = v;
                    t[j][i] = v;
                }
                t
            }
            (None, _) => Vec::new(),
        };
        Ok(ModelSpec {
            kind,
            orders: self.orders.clone(),
            n: self.n.clone(),
            nij,
            lx,
            ly,
        })
    }

    pub fn model(&self, default_size: (usize, usize)) -> Result<LatticeModel, CliError> {
        Ok(self.model_spec(default_size)?.build()?)
    }

    /// TQD parameters from the spec or flags. A `ds` spec maps to `N = 2, n = 1`.
    pub fn params(&self) -> Result<TqdParams, CliError> {
        let spec = self.model_spec((3, 3))?;
        match spec.kind {
            ModelType::Ds => Ok(TqdParams::new(vec![2], vec![1], vec![])?),
            ModelType::Tqd => Ok(TqdParams::new(spec.orders, spec.n, spec.nij)?),
            other => Err(CliError::Usage(format!(
                "this command needs TQD parameters, not a {other:?} model"
            ))),
        }
    }

    /// Anyon theory from a JSON file, or the TQD theory of the parameters.
    pub fn theory(&self, path: Option<&Path>) -> Result<AnyonTheory, CliError> {
        match path {
            Some(p) => load_theory(p),
            None => Ok(tqd_theory(&self.params()?)?),
        }
    }
}

/// Theory file: {"orders": [...], "q_gen": ["p/q", ...], "b_gen": [[...], ...]}.
pub fn load_theory(path: &Path) -> Result<AnyonTheory, CliError> {
    let t: AnyonTheory = read_json(path)?;
    let bad = t.validate();
    if bad.is_empty() {
        Ok(t)
    } else {
        Err(CliError::Usage(format!(
            "{} is not a valid anyon theory: {}",
            path.display(),
            serde_json::to_string(&bad).expect("violations serialize")
        )))
    }
}

/// Elements given as `"a,b;c,d"`, each with one exponent per generator.
pub fn parse_elements(text: &str, rank: usize) -> Result<Vec<Element>, CliError> {
    let rows = parse_rows(text)?;
    if let Some(r) = rows.iter().find(|r| r.len() != rank) {
        return Err(CliError::Usage(format!(
            "element {r:?} needs {rank} exponents"
        )));
    }
    Ok(rows)
}
