//! Two-qubit overlap under each noise channel in turn, plus a hardware-like
//! preset.
//!
//! ```text
//! cargo run --release --example noise_sweep
//! ```

use icf_scatter::circuits::{Part, Shots};
use icf_scatter::lattice::{Basis, LatticeConfig};
use icf_scatter::noise::{run_noise_sweep, Channel, NoiseModel, OverlapExperiment};

fn main() -> icf_scatter::Result<()> {
    let exp = OverlapExperiment {
        lattice: LatticeConfig::new(4, 4.0, 1.0, 2.0)?,
        basis: Basis::Coordinate,
        alpha: 0,
        part: Part::Re,
        dt: 0.04,
        times: vec![0.0, 0.5, 1.0],
    };
    let mut grid: Vec<NoiseModel> =
        [Channel::Readout, Channel::Depol1, Channel::Depol2, Channel::Thermal].iter().map(|&c| NoiseModel::default_grid(c).remove(0)).collect();
    grid.push(NoiseModel::preset("heron-median")?);

    for s in run_noise_sweep(&exp, &grid, 20, Shots::Count(1000), 1)? {
        println!("{:?}", s.noise);
        for p in &s.points {
            println!(
                "  t = {:.1}  ideal {:+.3}  noisy {:+.3} +- {:.3}  ({} two-qubit gates)",
                p.time, p.ideal, p.mean, p.sd, p.two_qubit_gates
            );
        }
    }
    Ok(())
}
