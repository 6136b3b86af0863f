use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Gate vocabulary. Every gate is a single-qubit unitary on one target,
/// conditioned on zero or more controls; `GlobalPhase` has no target and
/// multiplies the (controlled) subspace by `exp(i theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    RX(f64),
    RZ(f64),
    Phase(f64),
    GlobalPhase(f64),
    CX,
    MCX,
    CPhase(f64),
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "Sdg",
            GateKind::RX(_) => "RX",
            GateKind::RZ(_) => "RZ",
            GateKind::Phase(_) => "Phase",
            GateKind::GlobalPhase(_) => "GlobalPhase",
            GateKind::CX => "CX",
            GateKind::MCX => "MCX",
            GateKind::CPhase(_) => "CPhase",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::RX(a) | GateKind::RZ(a) | GateKind::Phase(a) | GateKind::GlobalPhase(a) | GateKind::CPhase(a) => {
                Some(a)
            }
            _ => None,
        }
    }

    /// The 2x2 matrix applied to the target, row-major.
    pub fn matrix(&self) -> [C64; 4] {
        let c = |re: f64, im: f64| C64::new(re, im);
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match *self {
            GateKind::X | GateKind::CX | GateKind::MCX => [z, o, o, z],
            GateKind::Y => [z, c(0.0, -1.0), c(0.0, 1.0), z],
            GateKind::Z => [o, z, z, -o],
            GateKind::H => [c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)],
            GateKind::S => [o, z, z, c(0.0, 1.0)],
            GateKind::Sdg => [o, z, z, c(0.0, -1.0)],
            GateKind::RX(t) => {
                let (s, k) = (t / 2.0).sin_cos();
                [c(k, 0.0), c(0.0, -s), c(0.0, -s), c(k, 0.0)]
            }
            GateKind::RZ(t) => [C64::from_polar(1.0, -t / 2.0), z, z, C64::from_polar(1.0, t / 2.0)],
            GateKind::Phase(t) | GateKind::CPhase(t) => [o, z, z, C64::from_polar(1.0, t)],
            GateKind::GlobalPhase(t) => {
                let p = C64::from_polar(1.0, t);
                [p, z, z, p]
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    /// Empty for `GlobalPhase`, one qubit otherwise.
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
}

impl Gate {
    pub fn single(kind: GateKind, target: usize) -> Self {
        Gate { kind, targets: vec![target], controls: vec![] }
    }

    pub fn global_phase(theta: f64) -> Self {
        Gate { kind: GateKind::GlobalPhase(theta), targets: vec![], controls: vec![] }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate { kind: GateKind::CX, targets: vec![target], controls: vec![control] }
    }

    pub fn mcx(controls: Vec<usize>, target: usize) -> Self {
        let kind = match controls.len() {
            0 => GateKind::X,
            1 => GateKind::CX,
            _ => GateKind::MCX,
        };
        Gate { kind, targets: vec![target], controls }
    }

    /// Multi-controlled phase on `target`.
    pub fn mc_phase(theta: f64, controls: Vec<usize>, target: usize) -> Self {
        let kind = if controls.is_empty() { GateKind::Phase(theta) } else { GateKind::CPhase(theta) };
        Gate { kind, targets: vec![target], controls }
    }

    pub fn target(&self) -> Option<usize> {
        self.targets.first().copied()
    }

    /// All qubits the gate touches.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets.iter().chain(self.controls.iter()).copied()
    }

    pub fn arity(&self) -> usize {
        self.targets.len() + self.controls.len()
    }

    /// Gate conditioned on one more control. An uncontrolled global phase
    /// becomes a phase gate on the control: under control it is no longer
    /// global.
    pub fn controlled(&self, control: usize) -> Gate {
        if let GateKind::GlobalPhase(t) = self.kind {
            if self.controls.is_empty() {
                return Gate::single(GateKind::Phase(t), control);
            }
            let mut rest = self.controls.clone();
            let tgt = rest.remove(0);
            rest.push(control);
            return Gate::mc_phase(t, rest, tgt);
        }
        let mut controls = self.controls.clone();
        controls.push(control);
        let kind = match self.kind {
            GateKind::X | GateKind::CX | GateKind::MCX => return Gate::mcx(controls, self.targets[0]),
            GateKind::Phase(t) | GateKind::CPhase(t) => GateKind::CPhase(t),
            k => k,
        };
        Gate { kind, targets: self.targets.clone(), controls }
    }

    /// The inverse gate.
    pub fn inverse(&self) -> Gate {
        let kind = match self.kind {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::RX(t) => GateKind::RX(-t),
            GateKind::RZ(t) => GateKind::RZ(-t),
            GateKind::Phase(t) => GateKind::Phase(-t),
            GateKind::GlobalPhase(t) => GateKind::GlobalPhase(-t),
            GateKind::CPhase(t) => GateKind::CPhase(-t),
            k => k,
        };
        Gate { kind, ..self.clone() }
    }

    pub(crate) fn validate(&self, width: usize) -> Result<()> {
        let want_targets = usize::from(!matches!(self.kind, GateKind::GlobalPhase(_)));
        if self.targets.len() != want_targets {
            return Err(Error::invalid("gate", format!("{} takes {want_targets} target(s)", self.kind.name())));
        }
        let ok_controls = match self.kind {
            GateKind::CX => self.controls.len() == 1,
            GateKind::MCX | GateKind::CPhase(_) => !self.controls.is_empty(),
            _ => true,
        };
        if !ok_controls {
            return Err(Error::invalid("gate", format!("{} with {} controls", self.kind.name(), self.controls.len())));
        }
        let mut seen = 0u64;
        for q in self.qubits() {
            if q >= width {
                return Err(Error::invalid("gate", format!("qubit {q} outside width {width}")));
            }
            if seen & (1 << q) != 0 {
                return Err(Error::invalid("gate", format!("qubit {q} used twice")));
            }
            seen |= 1 << q;
        }
        if let Some(a) = self.kind.angle() {
            if !a.is_finite() {
                return Err(Error::invalid("gate", "non-finite angle"));
            }
        }
        Ok(())
    }
}

fn list(qs: &[usize]) -> String {
    if qs.is_empty() {
        "-".into()
    } else {
        qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// `KIND targets controls angle`, with `-` for an empty list or no angle.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let angle = match self.kind.angle() {
            Some(a) => format!("{a:?}"),
            None => "-".into(),
        };
        write!(f, "{} {} {} {}", self.kind.name(), list(&self.targets), list(&self.controls), angle)
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(line: &str) -> Result<Gate> {
        let bad = |why: &str| Error::Parse(format!("gate line `{line}`: {why}"));
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(bad("expected 4 fields"));
        }
        let qubits = |s: &str| -> Result<Vec<usize>> {
            if s == "-" {
                return Ok(vec![]);
            }
            s.split(',').map(|q| q.parse().map_err(|_| bad("bad qubit index"))).collect()
        };
        let angle = || -> Result<f64> { fields[3].parse().map_err(|_| bad("bad angle")) };
        let kind = match fields[0] {
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "H" => GateKind::H,
            "S" => GateKind::S,
            "Sdg" => GateKind::Sdg,
            "RX" => GateKind::RX(angle()?),
            "RZ" => GateKind::RZ(angle()?),
            "Phase" => GateKind::Phase(angle()?),
            "GlobalPhase" => GateKind::GlobalPhase(angle()?),
            "CX" => GateKind::CX,
            "MCX" => GateKind::MCX,
            "CPhase" => GateKind::CPhase(angle()?),
            _ => return Err(bad("unknown gate kind")),
        };
        Ok(Gate { kind, targets: qubits(fields[1])?, controls: qubits(fields[2])? })
    }
}
