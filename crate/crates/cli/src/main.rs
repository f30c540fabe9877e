//! `tqd`: builds twisted-quantum-double stabilizer models, runs the exact
//! verifications and extractions of `tqd-core`, and reports JSON.
//!
//! Exit codes: 0 when the report's check passes, 1 when a verification fails,
//! 2 on malformed input or usage errors.

mod input;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;
use tqd_core::anyon::{
    cocycle_value, fusion_group, fusion_group_from_cocycle, stack_condense_to_tqd, theories_isomorphic, tqd_theory, AnyonError,
    AnyonTheory,
};
use tqd_core::circuitmap::{appendix_check, CircuitError};
use tqd_core::exactmath::{ExactError, IntMatrix};
use tqd_core::extraction::{extraction_report, spt_cocycle, ExtractionError};
use tqd_core::kmatrix::{condensation_matrices, KMatrix, KMatrixError};
use tqd_core::lattice::{LatticeError, ModelJson, ParamsError};
use tqd_core::stabilizer::{Consistency, StabilizerError};

use input::{load_theory, parse_elements, parse_rows, Common, ModelArg};

/// Largest anyon count for which the multiplication-table route of the fusion group runs.
const COCYCLE_ROUTE_LIMIT: u64 = 256;
/// Largest `|G|` for which `theory cocycle` prints the full table.
const COCYCLE_TABLE_LIMIT: u64 = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON in {}: {source}", path.display())]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("cannot write report: {0}")]
    Output(#[from] std::io::Error),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    Anyon(#[from] AnyonError),
    #[error(transparent)]
    Extraction(#[from] ExtractionError),
    #[error(transparent)]
    KMatrix(#[from] KMatrixError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Parser, Debug)]
#[command(name = "tqd", version, about = "Twisted quantum double stabilizer models: build, verify, extract")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Model construction
    #[command(subcommand)]
    Model(ModelCmd),
    /// Exact checks on a model's stabilizer group
    Verify {
        check: VerifyCheck,
        /// Expected logical dimension; a mismatch exits 1
        #[arg(long)]
        expect: Option<u64>,
    },
    /// Anyon data measured on the lattice
    #[command(subcommand)]
    Anyons(AnyonsCmd),
    /// Abstract anyon-theory calculus
    #[command(subcommand)]
    Theory(TheoryCmd),
    /// K-matrix formalism
    #[command(subcommand)]
    Kmatrix(KCmd),
    /// Symmetry-protected phase boundary data
    #[command(subcommand)]
    Spt(SptCmd),
    /// String-net to Pauli circuit checks
    #[command(subcommand)]
    Appendixa(AppendixCmd),
}

#[derive(Subcommand, Debug)]
enum ModelCmd {
    /// Emit the stabilizer group with site and term legends
    Build,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyCheck {
    Commuting,
    Scalar,
    Degeneracy,
    CondensationEquality,
}

#[derive(Subcommand, Debug)]
enum AnyonsCmd {
    /// Spins, braiding and fusion orders from string operators (default 3x3)
    Extract,
}

#[derive(Subcommand, Debug)]
enum TheoryCmd {
    /// Theory of the TQD parameters with its spin table
    Tqd,
    /// Condense a set of bosons
    Condense {
        #[arg(long, value_name = "PATH")]
        theory: Option<PathBuf>,
        /// Bosons as exponent vectors, "a,b;c,d"
        #[arg(long, allow_hyphen_values = true)]
        bosons: String,
    },
    /// Every Lagrangian subgroup
    Lagrangian {
        #[arg(long, value_name = "PATH")]
        theory: Option<PathBuf>,
    },
    /// Stack with a second theory, or condense stacked toric codes to the TQD
    Stack {
        #[arg(long, value_name = "PATH")]
        theory: Option<PathBuf>,
        #[arg(long = "with", value_name = "PATH")]
        with: Option<PathBuf>,
    },
    /// Search for a braided isomorphism between two theories
    Iso {
        #[arg(long, value_name = "PATH")]
        theory: Option<PathBuf>,
        #[arg(long = "with", value_name = "PATH")]
        with: PathBuf,
    },
    /// Fusion group by Smith normal form and by the cocycle extension
    FusionGroup,
    /// Values of the type I/II 3-cocycle
    Cocycle {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        g: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        h: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k: Vec<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum KCmd {
    /// K matrix with its anyon group, census and signature
    Build {
        /// Explicit K as "a,b;c,d" instead of the TQD parameters
        #[arg(long = "K", allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Anyon counts by spin
    Census {
        #[arg(long = "K", allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Stacked toric code condensation identities
    CondenseCheck,
    /// Basis change K -> W K W^T for unimodular W
    Transform {
        #[arg(long = "K", allow_hyphen_values = true)]
        k: Option<String>,
        #[arg(long = "W", allow_hyphen_values = true)]
        w: String,
    },
}

#[derive(Subcommand, Debug)]
enum SptCmd {
    /// Boundary 3-cocycle (default torus 9x6)
    Cocycle {
        /// Length of the truncation interval
        #[arg(long, default_value_t = 4)]
        interval: usize,
    },
}

#[derive(Subcommand, Debug)]
enum AppendixCmd {
    /// Loop identity, CZ/S table, and both circuit conjugations (default L = 3)
    Check,
}

/// A JSON report together with the pass/fail verdict it encodes.
struct Report {
    body: Value,
    passed: bool,
}

impl Report {
    fn new(body: impl Serialize, passed: bool) -> Result<Self, CliError> {
        Ok(Report {
            body: serde_json::to_value(body).expect("reports serialize"),
            passed,
        })
    }

    fn pass(body: impl Serialize) -> Result<Self, CliError> {
        Self::new(body, true)
    }
}

fn element_key(a: &[i64]) -> String {
    a.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Theory data with per-anyon spins as phase labels and as turns.
fn theory_summary(t: &AnyonTheory) -> Result<Value, CliError> {
    let mut theta = BTreeMap::new();
    let mut spin = BTreeMap::new();
    for a in t.elements() {
        let q = t.q(&a)?;
        theta.insert(element_key(&a), q.phase_label());
        spin.insert(element_key(&a), q);
    }
    Ok(json!({
        "theory": t,
        "size": t.size(),
        "modular": t.is_modular(),
        "violations": t.validate(),
        "theta": theta,
        "spin": spin,
        "census": t.spin_census(),
    }))
}

fn kmatrix_from(common: &Common, text: Option<&str>) -> Result<KMatrix, CliError> {
    match text {
        Some(t) => Ok(KMatrix::from_rows(&parse_rows(t)?)?),
        None => Ok(KMatrix::tqd(&common.params()?)),
    }
}

fn kmatrix_summary(k: &KMatrix) -> Result<Value, CliError> {
    let census = k.census()?;
    Ok(json!({
        "K": k,
        "group": k.anyon_group()?.invariant_factors,
        "census": census.counts,
        "signature": census.signature,
    }))
}

fn verify(common: &Common, check: VerifyCheck, expect: Option<u64>) -> Result<Report, CliError> {
    let model = common.model((3, 3))?;
    let group = model.group();
    match check {
        VerifyCheck::Commuting => {
            let bad = group.assert_commuting();
            Report::new(
                json!({ "commuting": bad.is_empty(), "generators": group.len(), "violations": bad }),
                bad.is_empty(),
            )
        }
        VerifyCheck::Scalar => match group.scalar_consistency()? {
            Consistency::Consistent => Report::pass(json!({ "scalar_consistent": true })),
            Consistency::Inconsistent { witness, phase } => Report::new(
                json!({ "scalar_consistent": false, "witness": witness, "phase": phase }),
                false,
            ),
        },
        VerifyCheck::Degeneracy => {
            let dim = group.logical_dimension()?;
            let value: Value = match u64::try_from(&dim) {
                Ok(v) => v.into(),
                Err(_) => dim.to_string().into(),
            };
            match expect {
                None => Report::pass(json!({ "logical_dimension": value })),
                Some(e) => {
                    let ok = dim == e.into();
                    Report::new(json!({ "logical_dimension": value, "expected": e }), ok)
                }
            }
        }
        VerifyCheck::CondensationEquality => match model.condensation_equality()? {
            Some(eq) => Report::new(json!({ "condensation_equality": eq }), eq),
            None => Err(CliError::Usage(
                "condensation-equality applies to ds and tqd models only".into(),
            )),
        },
    }
}

fn theory(common: &Common, cmd: TheoryCmd) -> Result<Report, CliError> {
    match cmd {
        TheoryCmd::Tqd => {
            let p = common.params()?;
            let t = tqd_theory(&p)?;
            let ok = t.validate().is_empty() && t.is_modular();
            let mut body = theory_summary(&t)?;
            body["params"] = json!(p);
            Report::new(body, ok)
        }
        TheoryCmd::Condense { theory, bosons } => {
            let t = common.theory(theory.as_deref())?;
            let bosons = parse_elements(&bosons, t.rank())?;
            let c = t.condense(&bosons)?;
            Report::pass(json!({
                "bosons": c.bosons(),
                "deconfined_generators": c.deconfined_generators(),
                "condensed": theory_summary(c.theory())?,
            }))
        }
        TheoryCmd::Lagrangian { theory } => {
            let t = common.theory(theory.as_deref())?;
            let subs = t.lagrangian_subgroups();
            Report::pass(json!({ "count": subs.len(), "subgroups": subs }))
        }
        TheoryCmd::Stack { theory, with: Some(other) } => {
            let t = common.theory(theory.as_deref())?;
            Report::pass(theory_summary(&t.stack(&load_theory(&other)?))?)
        }
        TheoryCmd::Stack { theory: Some(_), with: None } => Err(CliError::Usage(
            "theory stack needs --with when --theory is given".into(),
        )),
        TheoryCmd::Stack { theory: None, with: None } => {
            let p = common.params()?;
            let s = stack_condense_to_tqd(&p)?;
            Report::new(
                json!({
                    "params": p,
                    "parent": s.parent,
                    "condensed": s.condensation.theory(),
                    "target": s.target,
                    "isomorphic": s.isomorphic(),
                    "witness": s.witness,
                    "charge_classes": s.charge_classes,
                    "flux_classes": s.flux_classes,
                }),
                s.isomorphic(),
            )
        }
        TheoryCmd::Iso { theory, with } => {
            let a = common.theory(theory.as_deref())?;
            let b = load_theory(&with)?;
            let witness = theories_isomorphic(&a, &b);
            let ok = witness.is_some();
            Report::new(json!({ "isomorphic": ok, "witness": witness }), ok)
        }
        TheoryCmd::FusionGroup => {
            let p = common.params()?;
            let snf = fusion_group(&p);
            let size: u64 = snf.iter().product();
            let cocycle = (size <= COCYCLE_ROUTE_LIMIT).then(|| fusion_group_from_cocycle(&p));
            let agree = cocycle.as_ref().is_none_or(|c| *c == snf);
            Report::new(
                json!({ "params": p, "snf": snf, "order": size, "cocycle": cocycle, "agree": agree }),
                agree,
            )
        }
        TheoryCmd::Cocycle { g, h, k } => cocycle(common, g, h, k),
    }
}

fn cocycle(common: &Common, g: Vec<i64>, h: Vec<i64>, k: Vec<i64>) -> Result<Report, CliError> {
    let p = common.params()?;
    if !(g.is_empty() && h.is_empty() && k.is_empty()) {
        let omega = cocycle_value(&p, &g, &h, &k)?;
        return Report::pass(json!({ "params": p, "g": g, "h": h, "k": k, "omega": omega }));
    }
    if p.group_size() > COCYCLE_TABLE_LIMIT {
        return Err(CliError::Usage(format!(
            "|G| = {} is too large for the full table; pass --g, --h and --k",
            p.group_size()
        )));
    }
    let elements: Vec<Vec<i64>> = (0..p.group_size())
        .map(|mut v| {
            p.orders()
                .iter()
                .map(|&n| {
                    let d = (v % n as u64) as i64;
                    v /= n as u64;
                    d
                })
                .collect()
        })
        .collect();
    let mut table = BTreeMap::new();
    for a in &elements {
        for b in &elements {
            for c in &elements {
                let key = format!("{}|{}|{}", element_key(a), element_key(b), element_key(c));
                table.insert(key, cocycle_value(&p, a, b, c)?);
            }
        }
    }
    Report::pass(json!({ "params": p, "omega": table }))
}

fn kmatrix(common: &Common, cmd: KCmd) -> Result<Report, CliError> {
    match cmd {
        KCmd::Build { k } => Report::pass(kmatrix_summary(&kmatrix_from(common, k.as_deref())?)?),
        KCmd::Census { k } => {
            let c = kmatrix_from(common, k.as_deref())?.census()?;
            let total: usize = c.counts.values().sum();
            Report::pass(json!({ "census": c.counts, "signature": c.signature, "total": total }))
        }
        KCmd::CondenseCheck => {
            let c = condensation_matrices(&common.params()?)?;
            let ok = c.all_hold();
            Report::new(c, ok)
        }
        KCmd::Transform { k, w } => {
            let k = kmatrix_from(common, k.as_deref())?;
            let w = IntMatrix::from_rows(&parse_rows(&w)?)?;
            let mut body = kmatrix_summary(&k.transform(&w)?)?;
            body["input"] = json!(k);
            body["W"] = json!(w);
            Report::pass(body)
        }
    }
}

fn spt(common: &Common, interval: usize) -> Result<Report, CliError> {
    let mut c = common.clone();
    if c.spec.is_none() && c.model.is_none() {
        c.model = Some(ModelArg::Spt);
    }
    let table = spt_cocycle(&c.model((9, 6))?, interval)?;
    let mut omega = BTreeMap::new();
    for g in 0..2 {
        for h in 0..2 {
            for k in 0..2 {
                omega.insert(format!("{g},{h},{k}"), table.get(g, h, k));
            }
        }
    }
    let violations = table.coboundary_violations();
    Report::new(
        json!({ "interval": table.interval, "omega": omega, "coboundary_violations": violations }),
        violations == 0,
    )
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let common = &cli.common;
    match cli.command {
        Command::Model(ModelCmd::Build) => Report::pass(ModelJson::from(&common.model((3, 3))?)),
        Command::Verify { check, expect } => verify(common, check, expect),
        Command::Anyons(AnyonsCmd::Extract) => {
            let r = extraction_report(&common.model((3, 3))?)?;
            let ok = r.iso_match;
            Report::new(r, ok)
        }
        Command::Theory(cmd) => theory(common, cmd),
        Command::Kmatrix(cmd) => kmatrix(common, cmd),
        Command::Spt(SptCmd::Cocycle { interval }) => spt(common, interval),
        Command::Appendixa(AppendixCmd::Check) => {
            let (lx, ly) = common.size((3, 3));
            if lx != ly {
                return Err(CliError::Usage("appendixa check needs a square torus".into()));
            }
            let r = appendix_check(lx)?;
            let ok = r.passed();
            Report::new(r, ok)
        }
    }
}

fn emit(common: &Common, report: &Report) -> Result<(), CliError> {
    let mut text = if common.json {
        serde_json::to_string(&report.body)
    } else {
        serde_json::to_string_pretty(&report.body)
    }
    .expect("JSON values serialize");
    text.push('\n');
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common.clone();
    let outcome = run(cli).and_then(|r| emit(&common, &r).map(|()| r.passed));
    match outcome {
        Ok(passed) => {
            if common.verbose {
                eprintln!("tqd: {}", if passed { "pass" } else { "fail" });
            }
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("tqd: error: {e}");
            ExitCode::from(2)
        }
    }
}
