//! Exact diagonalization and the spectral sums built on it: integrated
//! correlation functions, resolvent traces and the phase read off them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{angle_from_cot, ScatteringParams};
pub use crate::analytic::TimeKind;
use crate::lattice::{build_coordinate_hamiltonian, build_il_rotated_hamiltonian, HamiltonianMatrix, LatticeConfig};
use crate::{linalg, Error, Result, C64};

/// Largest matrix dimension diagonalized unless the caller raises the cap.
pub const DEFAULT_DIM_CAP: usize = 4096;
/// Minimum distance between an evaluation energy and any eigenvalue.
pub const POLE_TOLERANCE: f64 = 1e-12;
/// Euclidean exponents beyond this are refused rather than overflowed.
pub const EXPONENT_LIMIT: f64 = 700.0;

/// Eigenvalues of one Hamiltonian, sorted by real part.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<C64>,
    source: String,
}

impl Spectrum {
    pub fn from_eigenvalues(mut eigenvalues: Vec<C64>, source: impl Into<String>) -> Self {
        eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Spectrum {
            eigenvalues,
            source: source.into(),
        }
    }

    pub fn eigenvalues(&self) -> &[C64] {
        &self.eigenvalues
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Real parts, for spectra known to be real.
    pub fn real_parts(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.re).collect()
    }
}

pub fn eigen_spectrum(h: &HamiltonianMatrix) -> Result<Spectrum> {
    eigen_spectrum_capped(h, DEFAULT_DIM_CAP)
}

pub fn eigen_spectrum_capped(h: &HamiltonianMatrix, cap: usize) -> Result<Spectrum> {
    if h.dim() > cap {
        return Err(Error::DimensionCap { dim: h.dim(), cap });
    }
    if h.entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::invalid("H", "matrix has non-finite entries"));
    }
    let desc = h.descriptor();
    let values = if h.hermitian {
        linalg::eigvalsh(&h.entries, &desc)?
            .into_iter()
            .map(|x| C64::new(x, 0.0))
            .collect()
    } else {
        linalg::eigvals(&h.entries, &desc)?
    };
    Ok(Spectrum::from_eigenvalues(values, desc))
}

fn check_time(t: f64, kind: TimeKind) -> Result<()> {
    if !t.is_finite() || (kind == TimeKind::Euclidean && t < 0.0) {
        return Err(Error::invalid("tau", format!("Euclidean time must be non-negative, got {t}")));
    }
    Ok(())
}

/// Moment `n` of the integrated correlation function:
/// `sum e^n exp(-i e t)` or `sum e^n exp(-e tau)`.
pub fn icf(spec: &Spectrum, t: f64, kind: TimeKind, moment: u32) -> Result<C64> {
    check_time(t, kind)?;
    if moment > 2 {
        return Err(Error::invalid("moment", format!("supported moments are 0, 1, 2; got {moment}")));
    }
    let mut sum = C64::new(0.0, 0.0);
    for &e in &spec.eigenvalues {
        let arg = match kind {
            TimeKind::Real => C64::new(0.0, -t) * e,
            TimeKind::Euclidean => -e * t,
        };
        if arg.re > EXPONENT_LIMIT {
            return Err(Error::Overflow { exponent: arg.re, limit: EXPONENT_LIMIT });
        }
        sum += e.powu(moment) * arg.exp();
    }
    Ok(sum)
}

/// `icf(interacting) - icf(free)`.
pub fn icf_difference(int: &Spectrum, free: &Spectrum, t: f64, kind: TimeKind, moment: u32) -> Result<C64> {
    Ok(icf(int, t, kind, moment)? - icf(free, t, kind, moment)?)
}

/// Real-time ICF averaged over `[t - w/2, t + w/2]`, done in closed form
/// term by term: each `exp(-i e t)` picks up `sinc(e w / 2)`.
pub fn icf_window_average(spec: &Spectrum, t: f64, width: f64) -> Result<C64> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::invalid("width", format!("window must be positive, got {width}")));
    }
    Ok(spec
        .eigenvalues
        .iter()
        .map(|&e| {
            let x = e * (width / 2.0);
            let sinc = if x.norm() < 1e-8 { C64::new(1.0, 0.0) } else { x.sin() / x };
            (C64::new(0.0, -t) * e).exp() * sinc
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pairing {
    Interacting,
    Free,
    Difference,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelatorSeries {
    pub kind: TimeKind,
    pub moment: u32,
    pub pairing: Pairing,
    pub grid: Vec<f64>,
    pub values: Vec<C64>,
}

fn check_grid(grid: &[f64], key: &str) -> Result<()> {
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid(key, "grid must be strictly increasing"));
    }
    Ok(())
}

/// `Delta C` of the given moment over a time grid.
pub fn correlator_difference(
    int: &Spectrum,
    free: &Spectrum,
    grid: &[f64],
    kind: TimeKind,
    moment: u32,
) -> Result<CorrelatorSeries> {
    check_grid(grid, if kind == TimeKind::Real { "t" } else { "tau" })?;
    let values = grid
        .par_iter()
        .map(|&t| icf_difference(int, free, t, kind, moment))
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrelatorSeries {
        kind,
        moment,
        pairing: Pairing::Difference,
        grid: grid.to_vec(),
        values,
    })
}

/// `sum 1 / (E - e_n)`.
pub fn resolvent_trace(spec: &Spectrum, e: C64) -> Result<C64> {
    let mut sum = C64::new(0.0, 0.0);
    for &ev in &spec.eigenvalues {
        let d = e - ev;
        if d.norm() < POLE_TOLERANCE {
            return Err(Error::PoleProximity { energy: e, pole: ev, tolerance: POLE_TOLERANCE });
        }
        sum += 1.0 / d;
    }
    Ok(sum)
}

/// `cot phi = -Im / Re`. A vanishing real part returns an infinite
/// sentinel signed like `-Im`.
pub fn phase_cot_from_resolvent(dc: C64) -> f64 {
    if dc.re.abs() < 1e-300 {
        if dc.im > 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    } else {
        -dc.im / dc.re
    }
}

/// `phi` on the same `(-pi/2, pi/2]` branch as the analytic phase shift.
pub fn phase_angle_from_resolvent(dc: C64) -> f64 {
    angle_from_cot(phase_cot_from_resolvent(dc))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Prescription {
    /// Evaluate at `E + i eps` on the real trapped spectra.
    EPlusIEps { eps: f64 },
    /// Evaluate at real `E` on the `L -> iL` rotated spectra.
    IL,
}

/// Interacting and free spectra for one prescription.
#[derive(Debug, Clone)]
pub struct SpectrumPair {
    pub interacting: Spectrum,
    pub free: Spectrum,
}

impl SpectrumPair {
    pub fn for_prescription(cfg: &LatticeConfig, prescription: Prescription) -> Result<Self> {
        let build = match prescription {
            Prescription::EPlusIEps { .. } => build_coordinate_hamiltonian,
            Prescription::IL => build_il_rotated_hamiltonian,
        };
        Ok(SpectrumPair {
            interacting: eigen_spectrum(&build(cfg, true)?)?,
            free: eigen_spectrum(&build(cfg, false)?)?,
        })
    }
}

/// `Delta C~` over an energy grid, with the derived phase columns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResolventScan {
    pub prescription: Prescription,
    /// Evaluation energies (`E + i eps`, or real `E` for iL).
    pub energies: Vec<C64>,
    /// `Delta C~(E)`.
    pub values: Vec<C64>,
    /// `E Delta C~(E)`, with `E` the complex evaluation energy.
    pub e_values: Vec<C64>,
    /// Free trace over `L`.
    pub free_over_l: Vec<C64>,
    /// `cot phi` from the E-multiplied column.
    pub cot_phi: Vec<f64>,
    /// `cot phi` from the raw column.
    pub cot_phi_raw: Vec<f64>,
    pub warnings: Vec<String>,
}

pub fn scan_prescription(cfg: &LatticeConfig, prescription: Prescription, energies: &[f64]) -> Result<ResolventScan> {
    check_prescription(cfg, prescription)?;
    let pair = SpectrumPair::for_prescription(cfg, prescription)?;
    scan_with_spectra(&pair, cfg, prescription, energies)
}

fn check_prescription(cfg: &LatticeConfig, prescription: Prescription) -> Result<()> {
    cfg.validate()?;
    if let Prescription::EPlusIEps { eps } = prescription {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::invalid("eps", format!("need eps > 0, got {eps}")));
        }
    }
    Ok(())
}

/// As [`scan_prescription`], reusing spectra computed earlier.
pub fn scan_with_spectra(
    pair: &SpectrumPair,
    cfg: &LatticeConfig,
    prescription: Prescription,
    energies: &[f64],
) -> Result<ResolventScan> {
    check_prescription(cfg, prescription)?;
    let mut warnings = vec![];
    let z: Vec<C64> = match prescription {
        Prescription::EPlusIEps { eps } => {
            if eps.sqrt() * cfg.l < 5.0 {
                warnings.push(format!(
                    "sqrt(eps) L = {:.3} < 5: eps does not smear the level spacing",
                    eps.sqrt() * cfg.l
                ));
            }
            energies.iter().map(|&e| C64::new(e, eps)).collect()
        }
        Prescription::IL => energies.iter().map(|&e| C64::new(e, 0.0)).collect(),
    };
    let rows = z
        .par_iter()
        .map(|&e| {
            let fi = resolvent_trace(&pair.interacting, e)?;
            let f0 = resolvent_trace(&pair.free, e)?;
            Ok((fi - f0, f0 / cfg.l))
        })
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<C64> = rows.iter().map(|r| r.0).collect();
    let e_values: Vec<C64> = values.iter().zip(&z).map(|(v, e)| v * e).collect();
    Ok(ResolventScan {
        prescription,
        cot_phi: e_values.iter().map(|&v| phase_cot_from_resolvent(v)).collect(),
        cot_phi_raw: values.iter().map(|&v| phase_cot_from_resolvent(v)).collect(),
        free_over_l: rows.iter().map(|r| r.1).collect(),
        energies: z,
        values,
        e_values,
        warnings,
    })
}

/// `|cot phi - cot delta| / |cot delta|` per grid energy.
pub fn cot_relative_errors(scan: &ResolventScan, p: &ScatteringParams) -> Result<Vec<f64>> {
    scan.energies
        .iter()
        .zip(&scan.cot_phi)
        .map(|(e, &c)| {
            let want = crate::analytic::phase_shift_cot(e.re, p)?;
            Ok((c - want).abs() / want.abs())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{free_resolvent, icf_infinite_limit, ResolventMode};
    use crate::lattice::build_momentum_hamiltonian;
    use ndarray::Array2;
    use proptest::prelude::*;

    fn real_spec(v: &[f64]) -> Spectrum {
        Spectrum::from_eigenvalues(v.iter().map(|&x| C64::new(x, 0.0)).collect(), "test")
    }

    #[test]
    fn diagonal_momentum_spectrum() {
        let cfg = LatticeConfig::new(8, 3.0, 1.0, 0.0).unwrap();
        let h = build_momentum_hamiltonian(&cfg, false).unwrap();
        let s = eigen_spectrum(&h).unwrap();
        let mut d: Vec<f64> = h.entries.diag().iter().map(|z| z.re).collect();
        d.sort_by(f64::total_cmp);
        for (a, b) in s.real_parts().iter().zip(&d) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn two_site_spectrum() {
        let cfg = LatticeConfig::new(2, 4.0, 1.0, 2.0).unwrap();
        let s = eigen_spectrum(&build_coordinate_hamiltonian(&cfg, true).unwrap()).unwrap();
        let a = 4.0;
        let v = 2.0 / (2.0 * a);
        let want = [v, 2.0 / (a * a) + v];
        for (g, w) in s.real_parts().iter().zip(&want) {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn rotated_free_spectrum_negates() {
        let cfg = LatticeConfig::new(16, 5.0, 1.0, 0.0).unwrap();
        let a = eigen_spectrum(&build_coordinate_hamiltonian(&cfg, false).unwrap()).unwrap();
        let b = eigen_spectrum(&build_il_rotated_hamiltonian(&cfg, false).unwrap()).unwrap();
        let mut neg: Vec<f64> = b.real_parts().iter().map(|x| -x).collect();
        neg.sort_by(f64::total_cmp);
        for (x, y) in a.real_parts().iter().zip(&neg) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn non_hermitian_spectrum_and_cap() {
        let cfg = LatticeConfig::new(16, 5.0, 1.0, 2.0).unwrap();
        let h = build_il_rotated_hamiltonian(&cfg, true).unwrap();
        let s = eigen_spectrum(&h).unwrap();
        assert_eq!(s.len(), 16);
        // trace is preserved
        let tr: C64 = h.entries.diag().iter().sum();
        let sum: C64 = s.eigenvalues().iter().sum();
        assert!((tr - sum).norm() < 1e-10);
        assert!(matches!(eigen_spectrum_capped(&h, 8), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn hermitian_spectra_are_real() {
        let cfg = LatticeConfig::new(64, 5.0, 1.0, -1.0).unwrap();
        let s = eigen_spectrum(&build_momentum_hamiltonian(&cfg, true).unwrap()).unwrap();
        let r = s.spectral_radius();
        assert!(s.eigenvalues().iter().all(|z| z.im.abs() <= 1e-10 * r));
    }

    #[test]
    fn icf_at_zero_time() {
        let cfg = LatticeConfig::new(16, 5.0, 1.0, 2.0).unwrap();
        let h = build_coordinate_hamiltonian(&cfg, true).unwrap();
        let s = eigen_spectrum(&h).unwrap();
        assert!((icf(&s, 0.0, TimeKind::Real, 0).unwrap() - 16.0).norm() < 1e-12);
        // trace identities against direct matrix powers
        let m = &h.entries;
        let m2: Array2<C64> = m.dot(m);
        let tr1: C64 = m.diag().iter().sum();
        let tr2: C64 = m2.diag().iter().sum();
        let i1 = icf(&s, 0.0, TimeKind::Real, 1).unwrap();
        let i2 = icf(&s, 0.0, TimeKind::Euclidean, 2).unwrap();
        assert!((i1 - tr1).norm() <= 1e-8 * tr1.norm());
        assert!((i2 - tr2).norm() <= 1e-8 * tr2.norm());
    }

    #[test]
    fn icf_guards() {
        let s = real_spec(&[-800.0, 1.0]);
        assert!(matches!(icf(&s, 1.0, TimeKind::Euclidean, 0), Err(Error::Overflow { .. })));
        assert!(icf(&s, -1.0, TimeKind::Euclidean, 0).is_err());
        assert!(icf(&s, 1.0, TimeKind::Real, 3).is_err());
        assert!(icf(&s, -1.0, TimeKind::Real, 0).is_ok());
    }

    #[test]
    fn difference_vanishes_at_zero() {
        let cfg = LatticeConfig::new(32, 5.0, 1.0, 2.0).unwrap();
        let a = eigen_spectrum(&build_coordinate_hamiltonian(&cfg, true).unwrap()).unwrap();
        let b = eigen_spectrum(&build_coordinate_hamiltonian(&cfg, false).unwrap()).unwrap();
        assert_eq!(icf_difference(&a, &b, 0.0, TimeKind::Euclidean, 0).unwrap(), C64::new(0.0, 0.0));
        assert!(correlator_difference(&a, &b, &[1.0, 0.5], TimeKind::Real, 0).is_err());
    }

    #[test]
    fn euclidean_difference_near_limit_at_tau_two() {
        let cfg = LatticeConfig::new(400, 10.0, 1.0, 2.0).unwrap();
        let a = eigen_spectrum(&build_coordinate_hamiltonian(&cfg, true).unwrap()).unwrap();
        let b = eigen_spectrum(&build_coordinate_hamiltonian(&cfg, false).unwrap()).unwrap();
        let d = icf_difference(&a, &b, 2.0, TimeKind::Euclidean, 0).unwrap();
        let p = ScatteringParams::new(1.0, 2.0).unwrap();
        let lim = icf_infinite_limit(2.0, TimeKind::Euclidean, &p).unwrap();
        assert!((d - lim).norm() <= 0.02, "{d} vs {lim}");
    }

    #[test]
    fn moment_is_minus_tau_derivative() {
        let cfg = LatticeConfig::new(200, 10.0, 1.0, 2.0).unwrap();
        let a = eigen_spectrum(&build_coordinate_hamiltonian(&cfg, true).unwrap()).unwrap();
        let b = eigen_spectrum(&build_coordinate_hamiltonian(&cfg, false).unwrap()).unwrap();
        let h = 1e-4;
        for &tau in &[1.0, 2.0, 3.0] {
            let m1 = icf_difference(&a, &b, tau, TimeKind::Euclidean, 1).unwrap();
            let up = icf_difference(&a, &b, tau + h, TimeKind::Euclidean, 0).unwrap();
            let dn = icf_difference(&a, &b, tau - h, TimeKind::Euclidean, 0).unwrap();
            let deriv = -(up - dn) / (2.0 * h);
            assert!((m1 - deriv).norm() <= 1e-4 * m1.norm(), "tau={tau}: {m1} vs {deriv}");
        }
    }

    #[test]
    fn resolvent_basics() {
        let s = real_spec(&[0.7]);
        assert!((resolvent_trace(&s, C64::new(1.7, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        assert!(matches!(
            resolvent_trace(&s, C64::new(0.7, 0.0)),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn free_box_resolvent_approaches_cot_form() {
        let e = C64::new(0.3, 0.1);
        let want = free_resolvent(e, 10.0, ResolventMode::Box, 1.0).unwrap();
        let mut prev = f64::INFINITY;
        for &n in &[64usize, 256, 1024] {
            let cfg = LatticeConfig::new(n, 10.0, 1.0, 0.0).unwrap();
            let s = eigen_spectrum(&build_momentum_hamiltonian(&cfg, false).unwrap()).unwrap();
            let got = resolvent_trace(&s, e).unwrap() / 10.0;
            let err = (got - want).norm();
            // modes beyond N/2 contribute about sum 2m L / (2 pi n)^2
            let tail = 2.0 * 10.0 / (2.0 * std::f64::consts::PI).powi(2) * 2.0 / (n as f64 / 2.0 - 1.0);
            assert!(err <= tail, "N={n}: err {err} tail {tail}");
            assert!(err < prev);
            prev = err;
        }
    }

    #[test]
    fn phase_cot_cases() {
        assert_eq!(phase_cot_from_resolvent(C64::new(0.0, -2.0)), f64::INFINITY);
        let d = 0.3f64;
        for &scale in &[1.5, -0.2] {
            let dc = C64::new(d.tan(), -1.0) * scale;
            assert!((phase_cot_from_resolvent(dc) - 1.0 / d.tan()).abs() < 1e-12);
            assert!((phase_angle_from_resolvent(dc) - d).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_coupling_scan_vanishes() {
        let cfg = LatticeConfig::new(64, 20.0, 1.0, 0.0).unwrap();
        for p in [Prescription::EPlusIEps { eps: 0.1 }, Prescription::IL] {
            let scan = scan_prescription(&cfg, p, &[0.2, 0.5, 1.0]).unwrap();
            assert!(scan.values.iter().all(|v| v.norm() == 0.0));
        }
    }

    #[test]
    fn small_box_warns() {
        let cfg = LatticeConfig::new(64, 10.0, 1.0, 2.0).unwrap();
        let scan = scan_prescription(&cfg, Prescription::EPlusIEps { eps: 0.1 }, &[0.5]).unwrap();
        assert_eq!(scan.warnings.len(), 1);
        assert!(scan_prescription(&cfg, Prescription::EPlusIEps { eps: 0.0 }, &[0.5]).is_err());
    }

    proptest! {
        #[test]
        fn schwarz_reflection(vals in proptest::collection::vec(-5.0f64..5.0, 1..30), re in -6.0f64..6.0, im in 0.01f64..3.0) {
            let s = real_spec(&vals);
            let e = C64::new(re, im);
            let a = resolvent_trace(&s, e.conj()).unwrap();
            let b = resolvent_trace(&s, e).unwrap().conj();
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
        }

        #[test]
        fn cot_of_scaled_identity(d in -1.5f64..1.5, scale in prop_oneof![-10.0f64..-0.01, 0.01f64..10.0]) {
            prop_assume!(d.abs() > 1e-3);
            let dc = C64::new(d.tan(), -1.0) * scale;
            prop_assert!((phase_cot_from_resolvent(dc) * d.tan() - 1.0).abs() <= 1e-9);
        }
    }
}
