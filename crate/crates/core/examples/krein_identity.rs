//! E times the resolvent-trace difference at E + i eps against
//! -(E + i eps) d ln T / dE.
//!
//! ```text
//! cargo run --release --example krein_identity
//! ```

use icf_scatter::analytic::{amplitudes, ScatteringParams};
use icf_scatter::lattice::LatticeConfig;
use icf_scatter::spectral::{scan_prescription, Prescription};

fn main() -> icf_scatter::Result<()> {
    let cfg = LatticeConfig::new(1000, 100.0, 1.0, 2.0)?;
    let p = ScatteringParams::new(1.0, 2.0)?;
    let energies: Vec<f64> = (0..=8).map(|i| 0.1 + 0.05 * i as f64).collect();
    let scan = scan_prescription(&cfg, Prescription::EPlusIEps { eps: 0.1 }, &energies)?;
    println!("{:>5} {:>22} {:>22}", "E", "E dC(E+i eps)", "-z dlnT/dE");
    for (z, v) in scan.energies.iter().zip(&scan.e_values) {
        let k = -*z * amplitudes(*z, &p)?.dlnt_de;
        println!("{:>5.2} {:>+10.5}{:>+10.5}i {:>+10.5}{:>+10.5}i", z.re, v.re, v.im, k.re, k.im);
    }
    Ok(())
}
