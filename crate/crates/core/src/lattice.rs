//! Discretized Hamiltonians of a particle on a periodic ring of length `L`
//! with a contact interaction at the centre of the box.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Grid and physical parameters of the trapped system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeConfig {
    /// Number of grid points.
    pub n: usize,
    /// Box size.
    pub l: f64,
    /// Particle mass.
    pub m: f64,
    /// Contact coupling; negative values bind one state.
    pub v0: f64,
}

impl LatticeConfig {
    pub fn new(n: usize, l: f64, m: f64, v0: f64) -> Result<Self> {
        let cfg = LatticeConfig { n, l, m, v0 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid("N", format!("need at least 2 grid points, got {}", self.n)));
        }
        if self.n % 2 != 0 {
            return Err(Error::invalid("N", format!("{} is odd; the delta sites N/2-1, N/2 need even N", self.n)));
        }
        if !(self.l.is_finite() && self.l > 0.0) {
            return Err(Error::invalid("L", format!("box size must be positive, got {}", self.l)));
        }
        if !(self.m.is_finite() && self.m > 0.0) {
            return Err(Error::invalid("m", format!("mass must be positive, got {}", self.m)));
        }
        if !self.v0.is_finite() {
            return Err(Error::invalid("V0", "coupling must be finite"));
        }
        Ok(())
    }

    /// Lattice spacing `a = L / (N - 1)`.
    pub fn spacing(&self) -> f64 {
        self.l / (self.n as f64 - 1.0)
    }

    /// Same grid with the interaction switched off.
    pub fn free(&self) -> Self {
        LatticeConfig { v0: 0.0, ..*self }
    }

    /// Register width `log2 N`; errors unless `N` is a power of two.
    pub fn qubits(&self) -> Result<usize> {
        if !self.n.is_power_of_two() {
            return Err(Error::invalid("N", format!("{} is not a power of two", self.n)));
        }
        Ok(self.n.trailing_zeros() as usize)
    }

    /// Kinetic scale `1 / (m a^2)`.
    pub fn kinetic_scale(&self) -> f64 {
        let a = self.spacing();
        1.0 / (self.m * a * a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Coordinate,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rotation {
    None,
    /// Box size continued to `L -> iL`.
    IL,
}

/// Dense complex Hamiltonian tagged with how it was built.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    pub entries: Array2<C64>,
    pub basis: Basis,
    pub rotation: Rotation,
    pub hermitian: bool,
    pub interacting: bool,
}

impl HamiltonianMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Short label carried into spectra and error messages.
    pub fn descriptor(&self) -> String {
        format!(
            "{:?}{} {}x{}{}",
            self.basis,
            if self.rotation == Rotation::IL { "/iL" } else { "" },
            self.dim(),
            self.dim(),
            if self.interacting { " interacting" } else { " free" }
        )
    }

    /// `max |H - H^dagger| / max |H|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let h = &self.entries;
        let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
            }
        }
        worst / scale
    }
}

/// Contact potential on the grid: `V0 / (2a)` on the two central sites.
pub fn contact_potential(cfg: &LatticeConfig) -> Vec<f64> {
    let mut v = vec![0.0; cfg.n];
    let h = cfg.v0 / (2.0 * cfg.spacing());
    v[cfg.n / 2 - 1] = h;
    v[cfg.n / 2] = h;
    v
}

/// Momentum modes `k_n = (2 pi / L)(-N/2 + n)` for `n = 0..N`.
pub fn momentum_modes(cfg: &LatticeConfig) -> Vec<f64> {
    let dk = 2.0 * std::f64::consts::PI / cfg.l;
    (0..cfg.n)
        .map(|n| dk * (n as f64 - (cfg.n / 2) as f64))
        .collect()
}

fn ring(n: usize, hop: f64, diag: impl Fn(usize) -> C64) -> Array2<C64> {
    let mut h = Array2::<C64>::zeros((n, n));
    for i in 0..n {
        let j = (i + 1) % n;
        // for n = 2 both bonds land on the same pair, doubling it
        h[(i, j)] += hop;
        h[(j, i)] += hop;
        h[(i, i)] = diag(i);
    }
    h
}

pub fn build_coordinate_hamiltonian(cfg: &LatticeConfig, interacting: bool) -> Result<HamiltonianMatrix> {
    cfg.validate()?;
    let k = cfg.kinetic_scale();
    let v = if interacting { contact_potential(cfg) } else { vec![0.0; cfg.n] };
    Ok(HamiltonianMatrix {
        entries: ring(cfg.n, -0.5 * k, |i| C64::new(k + v[i], 0.0)),
        basis: Basis::Coordinate,
        rotation: Rotation::None,
        hermitian: true,
        interacting,
    })
}

pub fn build_momentum_hamiltonian(cfg: &LatticeConfig, interacting: bool) -> Result<HamiltonianMatrix> {
    cfg.validate()?;
    let n = cfg.n;
    let shift = if interacting { cfg.v0 / cfg.l } else { 0.0 };
    let mut h = Array2::from_elem((n, n), C64::new(shift, 0.0));
    for (i, k) in momentum_modes(cfg).into_iter().enumerate() {
        h[(i, i)] += k * k / (2.0 * cfg.m);
    }
    Ok(HamiltonianMatrix {
        entries: h,
        basis: Basis::Momentum,
        rotation: Rotation::None,
        hermitian: true,
        interacting,
    })
}

/// Coordinate Hamiltonian after `L -> iL` (hence `a -> ia`): hopping flips
/// sign and the contact term becomes imaginary.
pub fn build_il_rotated_hamiltonian(cfg: &LatticeConfig, interacting: bool) -> Result<HamiltonianMatrix> {
    cfg.validate()?;
    let k = cfg.kinetic_scale();
    let v = if interacting { contact_potential(cfg) } else { vec![0.0; cfg.n] };
    Ok(HamiltonianMatrix {
        entries: ring(cfg.n, 0.5 * k, |i| -C64::new(k, v[i])),
        basis: Basis::Coordinate,
        rotation: Rotation::IL,
        hermitian: !interacting || cfg.v0 == 0.0,
        interacting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigvalsh;
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn two_site_ring_is_identity_minus_x() {
        let cfg = LatticeConfig::new(2, 4.0, 1.0, 2.0).unwrap();
        let h = build_coordinate_hamiltonian(&cfg, true).unwrap().entries;
        let a = 4.0;
        let d = 1.0 / (a * a) + 2.0 / (2.0 * a);
        assert!((h[(0, 0)] - c(d)).norm() < 1e-15);
        assert!((h[(1, 1)] - c(d)).norm() < 1e-15);
        assert!((h[(0, 1)] - c(-1.0 / (a * a))).norm() < 1e-15);
        assert!((h[(1, 0)] - c(-1.0 / (a * a))).norm() < 1e-15);
    }

    #[test]
    fn four_site_matches_stencil() {
        let cfg = LatticeConfig::new(4, 4.0, 1.0, 2.0).unwrap();
        let h = build_coordinate_hamiltonian(&cfg, true).unwrap().entries;
        let a = 4.0 / 3.0;
        // brute-force periodic second difference plus the trapezoid delta
        let mut want = Array2::<C64>::zeros((4, 4));
        for i in 0..4usize {
            for j in 0..4usize {
                let d = (i as i64 - j as i64).rem_euclid(4);
                let lap = match d {
                    0 => -2.0,
                    1 | 3 => 1.0,
                    _ => 0.0,
                };
                want[(i, j)] = c(-lap / (2.0 * a * a));
            }
        }
        want[(1, 1)] += 2.0 / (2.0 * a);
        want[(2, 2)] += 2.0 / (2.0 * a);
        assert!(crate::linalg::max_abs_diff(&h, &want) < 1e-14);
    }

    #[test]
    fn free_ring_has_zero_mode() {
        let cfg = LatticeConfig::new(16, 3.0, 0.7, 5.0).unwrap();
        let h = build_coordinate_hamiltonian(&cfg, false).unwrap().entries;
        for row in h.rows() {
            assert!(row.sum().norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(LatticeConfig::new(1, 1.0, 1.0, 1.0).is_err());
        assert!(LatticeConfig::new(5, 1.0, 1.0, 1.0).is_err());
        assert!(LatticeConfig::new(4, 0.0, 1.0, 1.0).is_err());
        assert!(LatticeConfig::new(4, 1.0, -1.0, 1.0).is_err());
        match LatticeConfig::new(7, 1.0, 1.0, 1.0) {
            Err(Error::InvalidParameter { key, .. }) => assert_eq!(key, "N"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn momentum_two_modes() {
        let cfg = LatticeConfig::new(2, 4.0, 1.0, 2.0).unwrap();
        let h = build_momentum_hamiltonian(&cfg, true).unwrap().entries;
        // independent loop: n = 0 gives k = -pi/2, n = 1 gives k = 0
        let mut diag = vec![];
        for n in 0..2 {
            let k = 2.0 * std::f64::consts::PI / 4.0 * (-1.0 + n as f64);
            diag.push(k * k / 2.0);
        }
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((diag[0] - pi2 / 8.0).abs() < 1e-15);
        assert!((h[(0, 0)] - c(pi2 / 8.0 + 0.5)).norm() < 1e-14);
        assert!((h[(0, 1)] - c(0.5)).norm() < 1e-15);
        assert!((h[(1, 0)] - c(0.5)).norm() < 1e-15);
        assert!((h[(1, 1)] - c(diag[1] + 0.5)).norm() < 1e-15);
    }

    #[test]
    fn momentum_zero_mode_and_free_diagonal() {
        let cfg = LatticeConfig::new(8, 2.0, 1.0, 1.5).unwrap();
        let h = build_momentum_hamiltonian(&cfg, false).unwrap().entries;
        assert_eq!(h[(4, 4)], c(0.0));
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert_eq!(h[(i, j)], c(0.0));
                }
            }
        }
    }

    #[test]
    fn rotated_two_sites() {
        let cfg = LatticeConfig::new(2, 4.0, 1.0, 2.0).unwrap();
        let h = build_il_rotated_hamiltonian(&cfg, true).unwrap();
        assert!(!h.hermitian);
        let e = &h.entries;
        assert!((e[(0, 0)] - C64::new(-1.0 / 16.0, -0.25)).norm() < 1e-15);
        assert!((e[(0, 1)] - c(2.0 / 32.0)).norm() < 1e-15);

        // a -> ia substituted by hand into the unrotated closed form
        let ia = C64::new(0.0, 4.0);
        let diag = C64::new(1.0, 0.0) / (ia * ia) + 2.0 / (2.0 * ia);
        let hop = -C64::new(1.0, 0.0) / (ia * ia);
        assert!((e[(1, 1)] - diag).norm() < 1e-15);
        assert!((e[(1, 0)] - hop).norm() < 1e-15);
        assert!(h.hermiticity_defect() > 0.1);
    }

    #[test]
    fn rotated_free_spectrum_is_negated() {
        let cfg = LatticeConfig::new(32, 5.0, 1.3, 0.0).unwrap();
        let mut a = eigvalsh(&build_coordinate_hamiltonian(&cfg, false).unwrap().entries, "").unwrap();
        let mut b = eigvalsh(&build_il_rotated_hamiltonian(&cfg, false).unwrap().entries, "").unwrap();
        a.sort_by(f64::total_cmp);
        b.iter_mut().for_each(|x| *x = -*x);
        b.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn free_coordinate_levels_follow_ring_dispersion() {
        let cfg = LatticeConfig::new(32, 6.0, 1.3, 0.0).unwrap();
        let mut x = eigvalsh(&build_coordinate_hamiltonian(&cfg, false).unwrap().entries, "").unwrap();
        x.sort_by(f64::total_cmp);
        let a = cfg.spacing();
        let mut want: Vec<f64> = (0..cfg.n)
            .map(|j| 1.0 / (cfg.m * a * a) * (1.0 - (2.0 * std::f64::consts::PI * j as f64 / cfg.n as f64).cos()))
            .collect();
        want.sort_by(f64::total_cmp);
        for (g, w) in x.iter().zip(&want) {
            assert!((g - w).abs() < 1e-10);
        }
    }

    // N sites at spacing L/(N-1) close into a ring of length N a, slightly
    // longer than L; the momentum builder is compared on that ring.
    #[test]
    fn free_bases_agree_at_low_levels() {
        for &n in &[8usize, 16, 32, 64] {
            let cfg = LatticeConfig::new(n, 6.0, 1.0, 0.0).unwrap();
            let a = cfg.spacing();
            let ring = LatticeConfig { l: n as f64 * a, ..cfg };
            let mut x = eigvalsh(&build_coordinate_hamiltonian(&cfg, false).unwrap().entries, "").unwrap();
            let mut p = eigvalsh(&build_momentum_hamiltonian(&ring, false).unwrap().entries, "").unwrap();
            x.sort_by(f64::total_cmp);
            p.sort_by(f64::total_cmp);
            let dk = 2.0 * std::f64::consts::PI / ring.l;
            for i in 0..n / 4 {
                // flat bound for the lowest modes, five times the k^4 a^2 / 24m
                // truncation term above them
                let k2 = 2.0 * cfg.m * p[i];
                let tol = 5.0 * a * a / cfg.m * (dk * dk).max(k2 * k2 / 24.0);
                assert!((x[i] - p[i]).abs() <= tol, "N={n} level {i}: {} vs {}", x[i], p[i]);
            }
        }
    }

    proptest! {
        #[test]
        fn coordinate_is_hermitian(half in 1usize..40, l in 0.5f64..50.0, m in 0.1f64..5.0, v0 in -10.0f64..10.0) {
            let cfg = LatticeConfig::new(2 * half, l, m, v0).unwrap();
            let h = build_coordinate_hamiltonian(&cfg, true).unwrap();
            prop_assert!(h.hermiticity_defect() <= 1e-14);
            let p = build_momentum_hamiltonian(&cfg, true).unwrap();
            prop_assert!(p.hermiticity_defect() <= 1e-14);
        }

        #[test]
        fn kinetic_part_is_translation_invariant(half in 2usize..20, shift in 1usize..7, l in 1.0f64..20.0) {
            let cfg = LatticeConfig::new(2 * half, l, 1.0, 0.0).unwrap();
            let n = cfg.n;
            let h = build_coordinate_hamiltonian(&cfg, false).unwrap().entries;
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(h[(i, j)], h[((i + shift) % n, (j + shift) % n)]);
                }
            }
        }

        #[test]
        fn trapezoid_weight_of_contact(half in 1usize..200, l in 0.5f64..100.0, v0 in -5.0f64..5.0) {
            let cfg = LatticeConfig::new(2 * half, l, 1.0, v0).unwrap();
            let total: f64 = contact_potential(&cfg).iter().sum::<f64>() * cfg.spacing();
            prop_assert!((total - v0).abs() <= 1e-12 * (1.0 + v0.abs()));
        }
    }
}
