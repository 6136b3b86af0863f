//! Scalar field with quartic self-coupling on a few spatial sites, each
//! site carrying a field-value register of `N_phi = 2^G` grid points.
//!
//! Basis index: `sum_j alpha_j N_phi^j`, site 0 in the least significant
//! block. Two coefficient conventions are built side by side:
//!
//! * `AsPrinted`: `a sum_j h_j + (a/a_phi^2) sum_j phi_{j+1} phi_j` with
//!   `h_j` hopping `-1/(2 m a_phi^2)` and diagonal
//!   `1/(m a_phi^2) + (m^2 + 2/a_phi^2) phi^2/2 + lambda phi^4/24`.
//! * `Canonical`: `a sum_j [Pi^2/2 + m^2 phi^2/2 + lambda phi^4/24]
//!   + (1/2a) sum_j (phi_{j+1} - phi_j)^2`, with `Pi^2` the same three-point
//!   stencil as the particle Hamiltonian.
//!
//! Both sums over `j` are periodic, so a single site couples to itself.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::circuits::{multiply, scale, simplify, PauliString, PauliTerm};
use crate::linalg::eigvalsh_real;
use crate::{Error, Result};

/// Largest Hilbert-space dimension the dense builder accepts.
pub const FIELD_DIM_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldLatticeConfig {
    pub nx: usize,
    /// Spatial spacing `a`.
    pub spacing: f64,
    pub m: f64,
    pub lambda: f64,
    pub nphi: usize,
    pub phi_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    AsPrinted,
    Canonical,
}

impl FieldLatticeConfig {
    /// Spacing from a box: `a = L / (N_x - 1)`. A single site has no box
    /// length to speak of; use the struct literal with `spacing` instead.
    pub fn from_box(nx: usize, l: f64, m: f64, lambda: f64, nphi: usize, phi_max: f64) -> Result<Self> {
        if nx < 2 {
            return Err(Error::invalid("Nx", "a box spacing needs at least two sites"));
        }
        let c = FieldLatticeConfig { nx, spacing: l / (nx - 1) as f64, m, lambda, nphi, phi_max };
        c.validate()?;
        Ok(c)
    }

    /// Grid wide enough for the free ground state: `phi_max = 12/sqrt(m)`.
    pub fn default_phi_max(m: f64) -> f64 {
        12.0 / m.sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 1 {
            return Err(Error::invalid("Nx", "need at least one site"));
        }
        if self.nphi < 2 || !self.nphi.is_power_of_two() {
            return Err(Error::invalid("Nphi", format!("{} is not a power of two >= 2", self.nphi)));
        }
        for (k, v) in [("a", self.spacing), ("m", self.m), ("phi_max", self.phi_max)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(k, format!("{v} must be positive and finite")));
            }
        }
        if !self.lambda.is_finite() {
            return Err(Error::invalid("lambda", "must be finite"));
        }
        let dim = self.dim();
        if dim.map_or(true, |d| d > FIELD_DIM_CAP) {
            return Err(Error::DimensionCap { dim: dim.unwrap_or(usize::MAX), cap: FIELD_DIM_CAP });
        }
        Ok(())
    }

    fn dim(&self) -> Option<usize> {
        self.nphi.checked_pow(self.nx as u32)
    }

    pub fn phi_spacing(&self) -> f64 {
        self.phi_max / (self.nphi - 1) as f64
    }

    pub fn qubits_per_site(&self) -> usize {
        self.nphi.trailing_zeros() as usize
    }

    /// `phi_alpha = -phi_max/2 + a_phi alpha`.
    pub fn phi_values(&self) -> Vec<f64> {
        let d = self.phi_spacing();
        (0..self.nphi).map(|a| -self.phi_max / 2.0 + d * a as f64).collect()
    }
}

/// `U_phi = -sum_b 2^b/2 Z_b`, i.e. `diag(-(N_phi - 1)/2 + alpha)`.
pub fn phi_operator(g: usize) -> Result<Vec<PauliTerm>> {
    if g == 0 {
        return Err(Error::invalid("Gphi", "need at least one qubit"));
    }
    Ok((0..g).map(|b| PauliTerm::new(-((1u64 << b) as f64) / 2.0, PauliString::z_on(g, &[b]))).collect())
}

/// Site-local diagonal as a Pauli sum in the printed convention,
/// `1/(m a_phi^2) I + (1 + a_phi^2 m^2/2) U^2 + (a_phi^4 lambda/24) U^4`.
pub fn local_diagonal_terms(cfg: &FieldLatticeConfig) -> Result<Vec<PauliTerm>> {
    cfg.validate()?;
    let g = cfg.qubits_per_site();
    let d = cfg.phi_spacing();
    let u = phi_operator(g)?;
    let u2 = multiply(&u, &u);
    let u4 = multiply(&u2, &u2);
    let mut t = vec![PauliTerm::new(1.0 / (cfg.m * d * d), PauliString::identity(g))];
    t.extend(scale(&u2, 1.0 + 0.5 * d * d * cfg.m * cfg.m));
    t.extend(scale(&u4, d.powi(4) * cfg.lambda / 24.0));
    Ok(simplify(t))
}

/// The same diagonal evaluated directly on the grid.
pub fn local_diagonal(cfg: &FieldLatticeConfig, convention: Convention) -> Vec<f64> {
    let d = cfg.phi_spacing();
    let (m, lam) = (cfg.m, cfg.lambda);
    cfg.phi_values()
        .into_iter()
        .map(|p| match convention {
            Convention::AsPrinted => 1.0 / (m * d * d) + 0.5 * (m * m + 2.0 / (d * d)) * p * p + lam * p.powi(4) / 24.0,
            Convention::Canonical => 1.0 / (d * d) + 0.5 * m * m * p * p + lam * p.powi(4) / 24.0,
        })
        .collect()
}

fn local_hopping(cfg: &FieldLatticeConfig, convention: Convention) -> f64 {
    let d2 = cfg.phi_spacing().powi(2);
    match convention {
        Convention::AsPrinted => -1.0 / (2.0 * cfg.m * d2),
        Convention::Canonical => -1.0 / (2.0 * d2),
    }
}

/// Dense real-symmetric field Hamiltonian.
#[derive(Debug, Clone)]
pub struct FieldHamiltonian {
    pub entries: Array2<f64>,
    pub convention: Convention,
    pub config: FieldLatticeConfig,
}

impl FieldHamiltonian {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut w = eigvalsh_real(&self.entries, &format!("field {:?} {}x{}", self.convention, self.dim(), self.dim()))?;
        w.sort_by(f64::total_cmp);
        Ok(w)
    }

    pub fn asymmetry(&self) -> f64 {
        let h = &self.entries;
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max((h[(i, j)] - h[(j, i)]).abs());
            }
        }
        worst
    }
}

pub fn build_field_hamiltonian(cfg: &FieldLatticeConfig, convention: Convention) -> Result<FieldHamiltonian> {
    cfg.validate()?;
    let (nx, np, a) = (cfg.nx, cfg.nphi, cfg.spacing);
    let dim = cfg.dim().expect("validated");
    let phi = cfg.phi_values();
    let diag = local_diagonal(cfg, convention);
    let hop = a * local_hopping(cfg, convention);
    let mut h = Array2::<f64>::zeros((dim, dim));
    let digit = |idx: usize, j: usize| idx / np.pow(j as u32) % np;
    for idx in 0..dim {
        let mut e = 0.0;
        for j in 0..nx {
            let aj = digit(idx, j);
            let ak = digit(idx, (j + 1) % nx);
            e += a * diag[aj];
            e += match convention {
                Convention::AsPrinted => a / cfg.phi_spacing().powi(2) * phi[ak] * phi[aj],
                Convention::Canonical => (phi[ak] - phi[aj]).powi(2) / (2.0 * a),
            };
        }
        h[(idx, idx)] = e;
        for j in 0..nx {
            let stride = np.pow(j as u32);
            let aj = digit(idx, j);
            let up = if aj + 1 == np { idx - aj * stride } else { idx + stride };
            // for N_phi = 2 both neighbours coincide, doubling the bond
            h[(idx, up)] += hop;
            h[(up, idx)] += hop;
        }
    }
    Ok(FieldHamiltonian { entries: h, convention, config: *cfg })
}

/// Max-norm disagreement between the two conventions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConventionDiff {
    pub max_abs: f64,
    pub diagonal_max_abs: f64,
    pub offdiagonal_max_abs: f64,
    pub as_printed_levels: Vec<f64>,
    pub canonical_levels: Vec<f64>,
}

pub fn compare_conventions(cfg: &FieldLatticeConfig, levels: usize) -> Result<ConventionDiff> {
    let p = build_field_hamiltonian(cfg, Convention::AsPrinted)?;
    let c = build_field_hamiltonian(cfg, Convention::Canonical)?;
    let (mut dmax, mut omax) = (0.0f64, 0.0f64);
    for ((i, j), x) in p.entries.indexed_iter() {
        let d = (x - c.entries[(i, j)]).abs();
        if i == j {
            dmax = dmax.max(d);
        } else {
            omax = omax.max(d);
        }
    }
    let take = |w: Vec<f64>| w.into_iter().take(levels).collect::<Vec<_>>();
    Ok(ConventionDiff {
        max_abs: dmax.max(omax),
        diagonal_max_abs: dmax,
        offdiagonal_max_abs: omax,
        as_printed_levels: take(p.eigenvalues()?),
        canonical_levels: take(c.eigenvalues()?),
    })
}
