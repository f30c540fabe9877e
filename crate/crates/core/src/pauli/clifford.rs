use serde::{Deserialize, Serialize};

use super::{PauliError, PauliOperator};

/// Clifford gates whose conjugation action keeps Paulis Pauli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CliffordGate {
    /// `|a, b> -> |a, b + a>` on two qudits of equal dimension.
    QuditCx { control: usize, target: usize },
    QubitCz { a: usize, b: usize },
    /// `diag(1, i)` on a qubit.
    QubitS { site: usize },
    QubitCx { control: usize, target: usize },
}

impl CliffordGate {
    fn validate(&self, op: &PauliOperator) -> Result<(), PauliError> {
        let sys = op.system();
        let sites = match *self {
            CliffordGate::QuditCx { control, target } | CliffordGate::QubitCx { control, target } => vec![control, target],
            CliffordGate::QubitCz { a, b } => vec![a, b],
            CliffordGate::QubitS { site } => vec![site],
        };
        for &s in &sites {
            sys.check_site(s)?;
        }
        let (ok, gate, needed) = match *self {
            CliffordGate::QuditCx { control, target } => (
                control != target && sys.dim(control) == sys.dim(target),
                "QuditCx",
                "two distinct qudits of equal dimension",
            ),
            CliffordGate::QubitCx { control: a, target: b } | CliffordGate::QubitCz { a, b } => (
                a != b && sys.dim(a) == 2 && sys.dim(b) == 2,
                "two-qubit gate",
                "two distinct qubits",
            ),
            CliffordGate::QubitS { site } => (sys.dim(site) == 2, "QubitS", "a qubit"),
        };
        if ok {
            Ok(())
        } else {
            Err(PauliError::GateDimension { gate, needed, sites })
        }
    }

    /// Images `(U X_s U^dag, U Z_s U^dag)` of the elementary operators on `site`.
    fn images(&self, op: &PauliOperator, site: usize) -> (PauliOperator, PauliOperator) {
        let sys = op.system();
        let x = |s: usize, e: i64| PauliOperator::x(sys, s, e).expect("validated site");
        let z = |s: usize, e: i64| PauliOperator::z(sys, s, e).expect("validated site");
        let (xi, zi) = (x(site, 1), z(site, 1));
        match *self {
            CliffordGate::QuditCx { control, target } | CliffordGate::QubitCx { control, target } => {
                if site == control {
                    (&xi * &x(target, 1), zi)
                } else if site == target {
                    (xi, &z(control, -1) * &zi)
                } else {
                    (xi, zi)
                }
            }
            CliffordGate::QubitCz { a, b } => {
                if site == a {
                    (&xi * &z(b, 1), zi)
                } else if site == b {
                    (&z(a, 1) * &xi, zi)
                } else {
                    (xi, zi)
                }
            }
            CliffordGate::QubitS { site: s } => {
                if site == s {
                    // S X S^dag = Y = i X Z
                    let i_phase = (sys.lcm() / 2) as i64;
                    ((&xi * &zi).times_phase(i_phase), zi)
                } else {
                    (xi, zi)
                }
            }
        }
    }

    /// `U P U^dag`.
    pub fn conjugate(&self, op: &PauliOperator) -> Result<PauliOperator, PauliError> {
        self.validate(op)?;
        let mut out = PauliOperator::scalar(op.system(), op.phase() as i64);
        for (s, xe, ze) in op.entries() {
            let (ix, iz) = self.images(op, s);
            out = &out * &ix.pow(xe as i64);
            out = &out * &iz.pow(ze as i64);
        }
        Ok(out)
    }
}

impl PauliOperator {
    /// Conjugates by the circuit `U = g_k ... g_1`, applying `circuit[0]` first.
    pub fn conjugate(&self, circuit: &[CliffordGate]) -> Result<PauliOperator, PauliError> {
        circuit.iter().try_fold(self.clone(), |p, g| g.conjugate(&p))
    }
}
