//! Density-matrix simulation with per-gate noise channels and seeded
//! repeated readout.

mod density;
mod model;
mod sweep;

pub use density::{noisy_run, noisy_simulate, readout_p0, DensityMatrix, NOISY_WIDTH_CAP};
pub use model::{Channel, NoiseModel, Thermal};
pub use sweep::{run_noise_sweep, ExperimentSummary, OverlapExperiment, SweepPoint};
