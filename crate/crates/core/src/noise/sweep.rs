use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::density::{noisy_simulate, readout_p0};
use super::model::NoiseModel;
use crate::circuits::{estimate_from_p0, hadamard_circuit, trotter_evolution, Part, Shots, StateVector};
use crate::lattice::{Basis, LatticeConfig};
use crate::{Error, Result};

/// A Hadamard-test estimate of `Re` or `Im <alpha|U(t)|alpha>` along a time
/// grid, with `U(t)` the Trotterized evolution at step `dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapExperiment {
    pub lattice: LatticeConfig,
    pub basis: Basis,
    pub alpha: usize,
    pub part: Part,
    pub dt: f64,
    pub times: Vec<f64>,
}

impl OverlapExperiment {
    pub fn validate(&self) -> Result<()> {
        self.lattice.validate()?;
        self.lattice.qubits()?;
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::invalid("dt", format!("{} must be positive", self.dt)));
        }
        if self.times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(Error::invalid("times", "times must be finite and non-negative"));
        }
        Ok(())
    }

    /// Trotter steps used at time `t`; the step length is `t / steps`.
    pub fn steps(&self, t: f64) -> usize {
        ((t / self.dt).round() as usize).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub time: f64,
    pub steps: usize,
    /// Multi-qubit gates in the full test circuit.
    pub two_qubit_gates: usize,
    pub ideal: f64,
    pub mean: f64,
    pub sd: f64,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub noise: NoiseModel,
    pub repetitions: usize,
    pub shots: Shots,
    pub points: Vec<SweepPoint>,
}

/// For every noise model and time step, simulate the density matrix once,
/// then repeat the seeded readout `repetitions` times. Intervals are
/// `mean +- 1.96 sd` over the repetitions.
pub fn run_noise_sweep(
    exp: &OverlapExperiment,
    grid: &[NoiseModel],
    repetitions: usize,
    shots: Shots,
    seed: u64,
) -> Result<Vec<ExperimentSummary>> {
    exp.validate()?;
    if repetitions < 2 {
        return Err(Error::invalid("repetitions", "need at least two repetitions"));
    }
    for m in grid {
        m.validate()?;
    }
    let g = exp.lattice.qubits()?;
    let circuits = exp
        .times
        .par_iter()
        .map(|&t| {
            let steps = exp.steps(t);
            let u = trotter_evolution(&exp.lattice, exp.basis, t, steps)?;
            let c = hadamard_circuit(&u, exp.alpha, exp.part)?;
            let mut s = StateVector::basis(c.width(), 0)?;
            c.run(&mut s)?;
            let ideal = match exp.part {
                Part::Re => 2.0 * s.prob_zero(g) - 1.0,
                Part::Im => 1.0 - 2.0 * s.prob_zero(g),
            };
            Ok((c, steps, ideal))
        })
        .collect::<Result<Vec<_>>>()?;
    let nt = exp.times.len();
    let jobs: Vec<(usize, usize)> = (0..grid.len()).flat_map(|i| (0..nt).map(move |j| (i, j))).collect();
    let points = jobs
        .par_iter()
        .map(|&(i, j)| {
            let (c, steps, ideal) = &circuits[j];
            let noise = &grid[i];
            let rho = noisy_simulate(c, noise)?;
            let p0 = readout_p0(&rho, g, noise.readout_p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((i * nt + j) as u64);
            let vals = (0..repetitions)
                .map(|_| estimate_from_p0(p0, exp.part, shots, &mut rng).map(|e| e.value))
                .collect::<Result<Vec<_>>>()?;
            let n = vals.len() as f64;
            let mean = vals.iter().sum::<f64>() / n;
            let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
            Ok(SweepPoint {
                time: exp.times[j],
                steps: *steps,
                two_qubit_gates: c.multi_qubit_count(),
                ideal: *ideal,
                mean,
                sd,
                lo: mean - 1.96 * sd,
                hi: mean + 1.96 * sd,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(grid
        .iter()
        .zip(points.chunks(nt.max(1)))
        .map(|(noise, pts)| ExperimentSummary { noise: *noise, repetitions, shots, points: pts.to_vec() })
        .collect())
}
