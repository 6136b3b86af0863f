use ndarray::Array2;

use super::gate::{Gate, GateKind};
use crate::{Error, Result, C64};

/// Widest register the statevector path accepts.
pub const MAX_WIDTH: usize = 24;

/// Apply a controlled 2x2 matrix in place. `target = None` multiplies every
/// amplitude whose controls are all set by `m[0]` (a phase).
pub(crate) fn apply_kernel(amps: &mut [C64], target: Option<usize>, ctrl_mask: usize, m: &[C64; 4]) {
    match target {
        None => {
            for (i, a) in amps.iter_mut().enumerate() {
                if i & ctrl_mask == ctrl_mask {
                    *a *= m[0];
                }
            }
        }
        Some(t) => {
            let bit = 1usize << t;
            for i in 0..amps.len() {
                if i & bit != 0 || i & ctrl_mask != ctrl_mask {
                    continue;
                }
                let j = i | bit;
                let (a, b) = (amps[i], amps[j]);
                amps[i] = m[0] * a + m[1] * b;
                amps[j] = m[2] * a + m[3] * b;
            }
        }
    }
}

pub(crate) fn mask(qs: &[usize]) -> usize {
    qs.iter().fold(0, |m, q| m | (1 << q))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Computational basis state `|index>`.
    pub fn basis(width: usize, index: usize) -> Result<Self> {
        if width > MAX_WIDTH {
            return Err(Error::DimensionCap { dim: 1 << width, cap: 1 << MAX_WIDTH });
        }
        if index >= 1 << width {
            return Err(Error::invalid("alpha", format!("basis index {index} outside {width} qubits")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << width];
        amps[index] = C64::new(1.0, 0.0);
        Ok(StateVector { width, amps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.width)?;
        apply_kernel(&mut self.amps, gate.target(), mask(&gate.controls), &gate.kind.matrix());
        Ok(())
    }

    /// Probability that `qubit` reads 0.
    pub fn prob_zero(&self, qubit: usize) -> f64 {
        let bit = 1 << qubit;
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }
}

/// Ordered gate list over a fixed register.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit { width, gates: vec![] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Append another circuit's gates (applied after ours).
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.width > self.width {
            return Err(Error::invalid("width", format!("cannot append width {} onto {}", other.width, self.width)));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Phase carried by uncontrolled `GlobalPhase` gates.
    pub fn global_phase(&self) -> f64 {
        self.gates
            .iter()
            .filter(|g| g.controls.is_empty())
            .filter_map(|g| match g.kind {
                GateKind::GlobalPhase(t) => Some(t),
                _ => None,
            })
            .sum()
    }

    /// Gates touching at least two qubits.
    pub fn multi_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.arity() >= 2).count()
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Every gate conditioned on `control`, which must lie outside the
    /// circuit's own register; the width grows to include it.
    pub fn controlled(&self, control: usize) -> Result<Circuit> {
        if control < self.width {
            return Err(Error::invalid("control", format!("qubit {control} overlaps the register")));
        }
        Ok(Circuit {
            width: control + 1,
            gates: self.gates.iter().map(|g| g.controlled(control)).collect(),
        })
    }

    /// Same gates on a wider register.
    pub fn widened(&self, width: usize) -> Circuit {
        Circuit { width: width.max(self.width), gates: self.gates.clone() }
    }

    pub fn repeated(&self, times: usize) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len() * times);
        for _ in 0..times {
            gates.extend_from_slice(&self.gates);
        }
        Circuit { width: self.width, gates }
    }

    pub fn run(&self, state: &mut StateVector) -> Result<()> {
        if state.width < self.width {
            return Err(Error::invalid("width", "state narrower than circuit"));
        }
        for g in &self.gates {
            apply_kernel(&mut state.amps, g.target(), mask(&g.controls), &g.kind.matrix());
        }
        Ok(())
    }

    /// Dense unitary, column `j` being the image of `|j>`.
    pub fn dense_matrix(&self) -> Result<Array2<C64>> {
        use rayon::prelude::*;
        let dim = 1usize << self.width;
        let cols = (0..dim)
            .into_par_iter()
            .map(|j| {
                let mut s = StateVector::basis(self.width, j)?;
                self.run(&mut s)?;
                Ok(s.amps)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut u = Array2::zeros((dim, dim));
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                u[(i, j)] = v;
            }
        }
        Ok(u)
    }

    /// Plain-text listing: a `width N` header, then one gate per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("width {}\n", self.width);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty circuit listing".into()))?;
        let width = header
            .strip_prefix("width ")
            .and_then(|w| w.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
        let mut c = Circuit::new(width);
        for l in lines {
            c.push(l.parse()?)?;
        }
        Ok(c)
    }
}
