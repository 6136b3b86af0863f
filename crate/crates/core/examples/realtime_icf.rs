//! Real-time ICF difference: raw, window-averaged, and the infinite-volume
//! curve. The raw lattice signal oscillates with the box levels.
//!
//! ```text
//! cargo run --release --example realtime_icf
//! ```

use icf_scatter::analytic::{icf_infinite_limit, ScatteringParams, TimeKind};
use icf_scatter::lattice::{build_coordinate_hamiltonian, LatticeConfig};
use icf_scatter::spectral::{eigen_spectrum, icf_difference, icf_window_average};

fn main() -> icf_scatter::Result<()> {
    let cfg = LatticeConfig::new(300, 10.0, 1.0, 2.0)?;
    let int = eigen_spectrum(&build_coordinate_hamiltonian(&cfg, true)?)?;
    let free = eigen_spectrum(&build_coordinate_hamiltonian(&cfg, false)?)?;
    let p = ScatteringParams::new(1.0, 2.0)?;
    let window = 1.0;

    println!("{:>5} {:>20} {:>20} {:>20}", "t", "raw", "windowed", "limit");
    for i in 0..=10 {
        let t = 0.5 * i as f64;
        let raw = icf_difference(&int, &free, t, TimeKind::Real, 0)?;
        let avg = icf_window_average(&int, t, window)? - icf_window_average(&free, t, window)?;
        let lim = icf_infinite_limit(t, TimeKind::Real, &p)?;
        println!("{t:>5.2} {:>20} {:>20} {:>20}", fmt(raw), fmt(avg), fmt(lim));
    }
    Ok(())
}

fn fmt(z: icf_scatter::C64) -> String {
    format!("{:+.4}{:+.4}i", z.re, z.im)
}
