use std::fmt::Write as _;

use super::state::{StateVector, MAX_QUBITS};
use crate::scalar::Real;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate<T> {
    H(usize),
    X(usize),
    /// `RY(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`
    Ry(usize, T),
    /// `RZ(θ) = diag(e^{−iθ/2}, e^{iθ/2})`
    Rz(usize, T),
    Cnot { control: usize, target: usize },
    Toffoli { c1: usize, c2: usize, target: usize },
    /// Fredkin gate: swaps `a` and `b` when `control` is set.
    Cswap { control: usize, a: usize, b: usize },
}

impl<T: Real> Gate<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::X(_) => "X",
            Gate::Ry(..) => "RY",
            Gate::Rz(..) => "RZ",
            Gate::Cnot { .. } => "CNOT",
            Gate::Toffoli { .. } => "CCX",
            Gate::Cswap { .. } => "CSWAP",
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match *self {
            Gate::H(t) | Gate::X(t) | Gate::Ry(t, _) | Gate::Rz(t, _) => vec![t],
            Gate::Cnot { target, .. } | Gate::Toffoli { target, .. } => vec![target],
            Gate::Cswap { a, b, .. } => vec![a, b],
        }
    }

    pub fn controls(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot { control, .. } | Gate::Cswap { control, .. } => vec![control],
            Gate::Toffoli { c1, c2, .. } => vec![c1, c2],
            _ => vec![],
        }
    }

    pub fn angle(&self) -> Option<T> {
        match *self {
            Gate::Ry(_, a) | Gate::Rz(_, a) => Some(a),
            _ => None,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        let mut q = self.targets();
        q.extend(self.controls());
        q
    }

    pub(crate) fn check_distinct(&self) -> Result<()> {
        let q = self.qubits();
        for (i, a) in q.iter().enumerate() {
            if q[i + 1..].contains(a) {
                return Err(Error::OverlappingQubits(*a));
            }
        }
        Ok(())
    }

    fn remapped(&self, map: &[usize]) -> Self {
        match *self {
            Gate::H(t) => Gate::H(map[t]),
            Gate::X(t) => Gate::X(map[t]),
            Gate::Ry(t, a) => Gate::Ry(map[t], a),
            Gate::Rz(t, a) => Gate::Rz(map[t], a),
            Gate::Cnot { control, target } => Gate::Cnot {
                control: map[control],
                target: map[target],
            },
            Gate::Toffoli { c1, c2, target } => Gate::Toffoli {
                c1: map[c1],
                c2: map[c2],
                target: map[target],
            },
            Gate::Cswap { control, a, b } => Gate::Cswap {
                control: map[control],
                a: map[a],
                b: map[b],
            },
        }
    }
}

/// Controlled-SWAP as `CNOT(b→a) · CCX(control, a → b) · CNOT(b→a)`.
pub fn decompose_cswap<T: Real>(control: usize, a: usize, b: usize) -> [Gate<T>; 3] {
    [
        Gate::Cnot { control: b, target: a },
        Gate::Toffoli { c1: control, c2: a, target: b },
        Gate::Cnot { control: b, target: a },
    ]
}

/// Ordered gate list on a fixed-width register.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit<T> {
    q: usize,
    gates: Vec<Gate<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(q: usize) -> Result<Self> {
        if q > MAX_QUBITS {
            return Err(Error::TooManyQubits(q));
        }
        Ok(Self { q, gates: Vec::new() })
    }

    pub fn qubits(&self) -> usize {
        self.q
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate<T>) -> Result<&mut Self> {
        if let Some(&b) = gate.qubits().iter().find(|&&b| b >= self.q) {
            return Err(Error::QubitOutOfRange {
                index: b,
                qubits: self.q,
            });
        }
        gate.check_distinct()?;
        self.gates.push(gate);
        Ok(self)
    }

    /// Appends `other` with its qubit `i` mapped to `map[i]`.
    pub fn append_mapped(&mut self, other: &Circuit<T>, map: &[usize]) -> Result<()> {
        if map.len() < other.q {
            return Err(Error::DimensionMismatch {
                expected: other.q,
                got: map.len(),
            });
        }
        for g in &other.gates {
            self.push(g.remapped(map))?;
        }
        Ok(())
    }

    /// Same circuit with every controlled-SWAP expanded into
    /// two CNOTs and a Toffoli.
    pub fn decompose_cswaps(&self) -> Circuit<T> {
        let mut out = Circuit { q: self.q, gates: Vec::with_capacity(self.gates.len()) };
        for g in &self.gates {
            match *g {
                Gate::Cswap { control, a, b } => out.gates.extend(decompose_cswap(control, a, b)),
                other => out.gates.push(other),
            }
        }
        out
    }

    pub fn apply_to(&self, state: &mut StateVector<T>) -> Result<()> {
        if state.qubits() != self.q {
            return Err(Error::DimensionMismatch {
                expected: self.q,
                got: state.qubits(),
            });
        }
        self.gates.iter().try_for_each(|g| state.apply(g))
    }

    /// One line per gate: `GATE targets controls angle`, lists comma
    /// separated, `-` for empty fields.
    pub fn dump(&self) -> String {
        let list = |v: Vec<usize>| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            }
        };
        let mut s = String::new();
        for g in &self.gates {
            let angle = g.angle().map_or("-".to_string(), |a| format!("{a:.17e}"));
            let _ = writeln!(s, "{} {} {} {}", g.name(), list(g.targets()), list(g.controls()), angle);
        }
        s
    }
}
