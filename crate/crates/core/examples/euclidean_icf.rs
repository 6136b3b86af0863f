//! Euclidean ICF difference on a coordinate lattice against the
//! infinite-volume curve, for a repulsive and an attractive delta.
//!
//! ```text
//! cargo run --release --example euclidean_icf
//! ```

use icf_scatter::analytic::{bound_state_energy, icf_infinite_limit, ScatteringParams, TimeKind};
use icf_scatter::lattice::LatticeConfig;
use icf_scatter::spectral::{icf_difference, Prescription, SpectrumPair};

fn main() -> icf_scatter::Result<()> {
    for v0 in [2.0, -0.5] {
        let cfg = LatticeConfig::new(400, 10.0, 1.0, v0)?;
        let pair = SpectrumPair::for_prescription(&cfg, Prescription::EPlusIEps { eps: 0.1 })?;
        let p = ScatteringParams::new(1.0, v0)?;
        println!("V0 = {v0}, bound state: {:?}", bound_state_energy(&p));
        println!("{:>6} {:>12} {:>12} {:>10}", "tau", "lattice", "limit", "diff");
        for i in 0..=6 {
            let tau = 0.5 * i as f64 + 1.0;
            let dc = icf_difference(&pair.interacting, &pair.free, tau, TimeKind::Euclidean, 0)?.re;
            let lim = icf_infinite_limit(tau, TimeKind::Euclidean, &p)?.re;
            println!("{tau:>6.2} {dc:>12.6} {lim:>12.6} {:>10.2e}", dc - lim);
        }
        println!();
    }
    Ok(())
}
