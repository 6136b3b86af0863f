//! Density matrices stored as a flattened `2w`-qubit vector: entry
//! `rho[i][j]` lives at `i | j << w`, so a gate acts as `U` on the low
//! bits and `conj(U)` on the high bits.

use ndarray::Array2;

use super::model::NoiseModel;
use crate::circuits::{apply_kernel, mask, Circuit, GateKind, StateVector};
use crate::linalg::eigvalsh;
use crate::{Error, Result, C64};

/// Widest register the density-matrix path accepts.
pub const NOISY_WIDTH_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    width: usize,
    v: Vec<C64>,
}

const ZERO: C64 = C64::new(0.0, 0.0);

impl DensityMatrix {
    /// `|index><index|`.
    pub fn basis(width: usize, index: usize) -> Result<Self> {
        if width > NOISY_WIDTH_CAP {
            return Err(Error::DimensionCap { dim: 1 << width, cap: 1 << NOISY_WIDTH_CAP });
        }
        if index >= 1 << width {
            return Err(Error::invalid("alpha", format!("basis index {index} outside {width} qubits")));
        }
        let mut v = vec![ZERO; 1 << (2 * width)];
        v[index | index << width] = C64::new(1.0, 0.0);
        Ok(DensityMatrix { width, v })
    }

    pub fn from_pure(s: &StateVector) -> Result<Self> {
        let w = s.width();
        if w > NOISY_WIDTH_CAP {
            return Err(Error::DimensionCap { dim: 1 << w, cap: 1 << NOISY_WIDTH_CAP });
        }
        let a = s.amplitudes();
        let mut v = vec![ZERO; 1 << (2 * w)];
        for (j, bj) in a.iter().enumerate() {
            for (i, ai) in a.iter().enumerate() {
                v[i | j << w] = ai * bj.conj();
            }
        }
        Ok(DensityMatrix { width: w, v })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.v[i | j << self.width]
    }

    pub fn to_matrix(&self) -> Array2<C64> {
        let d = 1 << self.width;
        Array2::from_shape_fn((d, d), |(i, j)| self.get(i, j))
    }

    pub fn trace(&self) -> C64 {
        (0..1usize << self.width).map(|i| self.get(i, i)).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let d = 1 << self.width;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..=i {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let w = eigvalsh(&self.to_matrix(), "density matrix")?;
        Ok(w.into_iter().fold(f64::INFINITY, f64::min))
    }

    /// `<psi|rho|psi>`.
    pub fn fidelity_with(&self, psi: &StateVector) -> f64 {
        let a = psi.amplitudes();
        let mut f = ZERO;
        for (i, ai) in a.iter().enumerate() {
            for (j, aj) in a.iter().enumerate() {
                f += ai.conj() * self.get(i, j) * aj;
            }
        }
        f.re
    }

    pub fn prob_zero(&self, qubit: usize) -> f64 {
        (0..1usize << self.width).filter(|i| i >> qubit & 1 == 0).map(|i| self.get(i, i).re).sum()
    }

    pub fn apply_unitary(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.width() > self.width {
            return Err(Error::invalid("width", "density matrix narrower than circuit"));
        }
        for g in circuit.gates() {
            self.conjugate(g)
        }
        Ok(())
    }

    fn conjugate(&mut self, g: &crate::circuits::Gate) {
        let w = self.width;
        let m = g.kind.matrix();
        let ctrl = mask(&g.controls);
        apply_kernel(&mut self.v, g.target(), ctrl, &m);
        let mc = m.map(|z| z.conj());
        apply_kernel(&mut self.v, g.target().map(|t| t + w), ctrl << w, &mc);
    }

    /// Rewrite every 2x2 block `[r00, r01, r10, r11]` of `qubit`.
    fn blocks(&mut self, qubit: usize, mut f: impl FnMut([C64; 4]) -> [C64; 4]) {
        let rb = 1 << qubit;
        let cb = 1 << (qubit + self.width);
        for x in 0..self.v.len() {
            if x & (rb | cb) != 0 {
                continue;
            }
            let idx = [x, x | cb, x | rb, x | rb | cb];
            let out = f(idx.map(|k| self.v[k]));
            for (k, o) in idx.into_iter().zip(out) {
                self.v[k] = o;
            }
        }
    }

    /// `(1 - p) rho + p (Tr_targets rho) (x) I / 2^k`.
    pub fn depolarize(&mut self, p: f64, targets: &[usize]) -> Result<()> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid("depol", format!("probability {p} outside [0, 1]")));
        }
        if p == 0.0 || targets.is_empty() {
            return Ok(());
        }
        let mut mixed = self.clone();
        for &q in targets {
            mixed.blocks(q, |[a, _, _, d]| {
                let h = (a + d) * 0.5;
                [h, ZERO, ZERO, h]
            });
        }
        for (x, y) in self.v.iter_mut().zip(mixed.v) {
            *x = *x * (1.0 - p) + y * p;
        }
        Ok(())
    }

    /// Amplitude damping `gamma`, then dephasing so that off-diagonals end
    /// up scaled by `offdiag` overall. Needs `offdiag <= sqrt(1 - gamma)`.
    pub fn relax(&mut self, qubit: usize, gamma: f64, offdiag: f64) -> Result<()> {
        let keep = (1.0 - gamma).sqrt();
        if !(0.0..=1.0).contains(&gamma) || offdiag < 0.0 || offdiag > keep + 1e-12 {
            return Err(Error::invalid("T2", format!("off-diagonal factor {offdiag} unreachable after damping {gamma}")));
        }
        self.blocks(qubit, |[a, b, c, d]| [a + d * gamma, b * offdiag, c * offdiag, d * (1.0 - gamma)]);
        Ok(())
    }

    /// Thermal relaxation for `dur_ns` under `model` (no-op without T1/T2).
    pub fn thermal(&mut self, model: &NoiseModel, qubit: usize, dur_ns: f64) -> Result<()> {
        match model.relaxation(dur_ns) {
            Some((gamma, off)) if dur_ns > 0.0 => self.relax(qubit, gamma, off),
            _ => Ok(()),
        }
    }
}

/// Run `circuit` from `|0...0>` with each gate followed by its noise:
/// depol1 and thermal(dur1) after single-qubit gates, depol2 over all
/// touched qubits and thermal(dur2) on each after multi-qubit gates.
/// Uncontrolled global phases are noiseless.
pub fn noisy_simulate(circuit: &Circuit, noise: &NoiseModel) -> Result<DensityMatrix> {
    let mut rho = DensityMatrix::basis(circuit.width(), 0)?;
    noisy_run(&mut rho, circuit, noise)?;
    Ok(rho)
}

pub fn noisy_run(rho: &mut DensityMatrix, circuit: &Circuit, noise: &NoiseModel) -> Result<()> {
    noise.validate()?;
    if circuit.width() > rho.width {
        return Err(Error::invalid("width", "density matrix narrower than circuit"));
    }
    for g in circuit.gates() {
        rho.conjugate(g);
        if matches!(g.kind, GateKind::GlobalPhase(_)) && g.controls.is_empty() {
            continue;
        }
        let qs: Vec<usize> = g.qubits().collect();
        let (p, dur) = if qs.len() == 1 { (noise.depol1, noise.dur1) } else { (noise.depol2, noise.dur2) };
        rho.depolarize(p, &qs)?;
        for &q in &qs {
            rho.thermal(noise, q, dur)?;
        }
    }
    Ok(())
}

/// Symmetric confusion map on the readout of one qubit: returns the
/// observed `P(0)`.
pub fn readout_p0(rho: &DensityMatrix, qubit: usize, readout_p: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&readout_p) {
        return Err(Error::invalid("readout_p", format!("{readout_p} outside [0, 0.5)")));
    }
    let p0 = rho.prob_zero(qubit);
    Ok((1.0 - readout_p) * p0 + readout_p * (1.0 - p0))
}
