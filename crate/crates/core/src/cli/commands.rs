//! Subcommand parameters and bodies. Every parameter struct doubles as the
//! clap flag set and the config-file / manifest schema.

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::config::{energy_grid, parse_grid, require, to_params, Params};
use super::output::Table;
use crate::analytic::{amplitudes, icf_infinite_limit, phase_shift_cot, ScatteringParams, TimeKind};
use crate::circuits::{icf_difference_estimate, Part, Shots};
use crate::field::{build_field_hamiltonian, compare_conventions, Convention, FieldLatticeConfig};
use crate::lattice::{build_coordinate_hamiltonian, build_momentum_hamiltonian, Basis, HamiltonianMatrix, LatticeConfig};
use crate::noise::{run_noise_sweep, Channel, NoiseModel, OverlapExperiment, Thermal};
use crate::spectral::{cot_relative_errors, correlator_difference, eigen_spectrum, icf_window_average, scan_prescription, Prescription, Spectrum};
use crate::{Error, Result};

/// What a subcommand hands back for writing.
#[derive(Debug)]
pub struct Report {
    pub table: Table,
    /// Parameters with defaults filled in.
    pub resolved: Params,
    pub seed: Option<u64>,
    pub warnings: Vec<String>,
    pub summary: Value,
}

impl Report {
    fn new<T: Serialize>(table: Table, resolved: &T) -> Self {
        Report { table, resolved: to_params(resolved), seed: None, warnings: vec![], summary: Value::Null }
    }
}

#[derive(Args, Serialize, Deserialize, Default, Debug, Clone, PartialEq)]
pub struct LatticeArgs {
    /// Box size.
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub l: Option<f64>,
    /// Grid points (even).
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: Option<usize>,
    /// Contact coupling.
    #[arg(long = "V0", allow_hyphen_values = true)]
    #[serde(rename = "V0")]
    pub v0: Option<f64>,
    /// Particle mass [default: 1].
    #[arg(long)]
    pub m: Option<f64>,
}

impl LatticeArgs {
    fn filled(&self, n: Option<usize>) -> Self {
        LatticeArgs { m: self.m.or(Some(1.0)), n: self.n.or(n), ..self.clone() }
    }

    fn config(&self) -> Result<LatticeConfig> {
        LatticeConfig::new(require(&self.n, "N")?, require(&self.l, "L")?, self.m.unwrap_or(1.0), require(&self.v0, "V0")?)
    }
}

fn scattering(cfg: &LatticeConfig) -> Result<ScatteringParams> {
    ScatteringParams::new(cfg.m, cfg.v0)
}

fn parse_basis(s: &Option<String>) -> Result<Basis> {
    match s.as_deref().unwrap_or("coordinate") {
        "coordinate" => Ok(Basis::Coordinate),
        "momentum" => Ok(Basis::Momentum),
        other => Err(Error::invalid("basis", format!("expected coordinate or momentum, got `{other}`"))),
    }
}

fn hamiltonian(cfg: &LatticeConfig, basis: Basis, interacting: bool) -> Result<HamiltonianMatrix> {
    match basis {
        Basis::Coordinate => build_coordinate_hamiltonian(cfg, interacting),
        Basis::Momentum => build_momentum_hamiltonian(cfg, interacting),
    }
}

fn spectra(cfg: &LatticeConfig, basis: Basis) -> Result<(Spectrum, Spectrum)> {
    let (a, b) = rayon::join(
        || eigen_spectrum(&hamiltonian(cfg, basis, true)?),
        || eigen_spectrum(&hamiltonian(cfg, basis, false)?),
    );
    Ok((a?, b?))
}

#[derive(Args, Serialize, Deserialize, Default, Debug, Clone, PartialEq)]
pub struct IcfEuclideanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lattice: LatticeArgs,
    /// Euclidean time grid `start:stop:count`.
    #[arg(long)]
    pub tau: Option<String>,
    /// Moment 0, 1 or 2 [default: 0].
    #[arg(long)]
    pub moment: Option<u32>,
    /// coordinate | momentum [default: coordinate].
    #[arg(long)]
    pub basis: Option<String>,
}

/// Analytic reference for moment `n`: `(-d/dtau)^n` of the closed form,
/// by central differences for `n > 0`.
fn euclidean_limit(tau: f64, moment: u32, p: &ScatteringParams) -> Result<f64> {
    let f = |x: f64| icf_infinite_limit(x, TimeKind::Euclidean, p).map(|z| z.re);
    let h = 1e-4 * tau.max(1e-3);
    match moment {
        0 => f(tau),
        1 => Ok(-(f(tau + h)? - f(tau - h)?) / (2.0 * h)),
        _ => Ok((f(tau + h)? - 2.0 * f(tau)? + f(tau - h)?) / (h * h)),
    }
}

pub fn icf_euclidean(a: &IcfEuclideanArgs) -> Result<Report> {
    let a = IcfEuclideanArgs {
        lattice: a.lattice.filled(None),
        moment: a.moment.or(Some(0)),
        basis: a.basis.clone().or(Some("coordinate".into())),
        ..a.clone()
    };
    let cfg = a.lattice.config()?;
    let grid = parse_grid(&require(&a.tau, "tau")?, "tau")?;
    let moment = a.moment.unwrap();
    if moment > 2 {
        return Err(Error::invalid("moment", format!("supported moments are 0, 1, 2; got {moment}")));
    }
    if grid.iter().any(|&t| t <= 0.0) {
        return Err(Error::invalid("tau", "Euclidean times must be positive"));
    }
    let basis = parse_basis(&a.basis)?;
    let p = scattering(&cfg)?;
    let (int, free) = spectra(&cfg, basis)?;
    let series = correlator_difference(&int, &free, &grid, TimeKind::Euclidean, moment)?;
    let mut t = Table::new(&["tau[time]", "dC[1]", "limit[1]", "abs_err[1]"]);
    for (tau, v) in grid.iter().zip(&series.values) {
        let lim = euclidean_limit(*tau, moment, &p)?;
        t.push(vec![*tau, v.re, lim, (v.re - lim).abs()]);
    }
    Ok(Report::new(t, &a))
}

#[derive(Args, Serialize, Deserialize, Default, Debug, Clone, PartialEq)]
pub struct IcfRealtimeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lattice: LatticeArgs,
    /// Real time grid `start:stop:count`.
    #[arg(long)]
    pub t: Option<String>,
    /// Optional averaging window width; adds time-averaged columns.
    #[arg(long)]
    pub window: Option<f64>,
    /// coordinate | momentum [default: coordinate].
    #[arg(long)]
    pub basis: Option<String>,
}

pub fn icf_realtime(a: &IcfRealtimeArgs) -> Result<Report> {
    let a = IcfRealtimeArgs {
        lattice: a.lattice.filled(None),
        basis: a.basis.clone().or(Some("coordinate".into())),
        ..a.clone()
    };
    let cfg = a.lattice.config()?;
    let grid = parse_grid(&require(&a.t, "t")?, "t")?;
    if grid.iter().any(|&t| t < 0.0) {
        return Err(Error::invalid("t", "times must be non-negative"));
    }
    let basis = parse_basis(&a.basis)?;
    let p = scattering(&cfg)?;
    let (int, free) = spectra(&cfg, basis)?;
    let series = correlator_difference(&int, &free, &grid, TimeKind::Real, 0)?;
    let mut headers = vec!["t[time]", "dC_re[1]", "dC_im[1]", "limit_re[1]", "limit_im[1]"];
    if a.window.is_some() {
        headers.extend(["avg_re[1]", "avg_im[1]"]);
    }
    let mut table = Table::new(&headers);
    for (t, v) in grid.iter().zip(&series.values) {
        let lim = icf_infinite_limit(*t, TimeKind::Real, &p)?;
        let mut row = vec![*t, v.re, v.im, lim.re, lim.im];
        if let Some(w) = a.window {
            let avg = icf_window_average(&int, *t, w)? - icf_window_average(&free, *t, w)?;
            row.extend([avg.re, avg.im]);
        }
        table.push(row);
    }
    Ok(Report::new(table, &a))
}

#[derive(Args, Serialize, Deserialize, Default, Debug, Clone, PartialEq)]
pub struct EpsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lattice: LatticeArgs,
    /// Imaginary part added to the energy.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub emin: Option<f64>,
    #[arg(long)]
    pub emax: Option<f64>,
    #[arg(long)]
    pub esteps: Option<usize>,
}

fn eps_scan(a: &EpsArgs) -> Result<(EpsArgs, LatticeConfig, crate::spectral::ResolventScan)> {
    let a = EpsArgs { lattice: a.lattice.filled(None), ..a.clone() };
    let cfg = a.lattice.config()?;
    let eps = require(&a.eps, "eps")?;
    let grid = energy_grid(a.emin, a.emax, a.esteps)?;
    scattering(&cfg)?;
    let scan = scan_prescription(&cfg, Prescription::EPlusIEps { eps }, &grid)?;
    Ok((a, cfg, scan))
}

pub fn resolvent_eps(a: &EpsArgs) -> Result<Report> {
    let (a, cfg, scan) = eps_scan(a)?;
    let p = scattering(&cfg)?;
    let mut t = Table::new(&[
        "E[energy]",
        "eps[energy]",
        "E_dC_re[1]",
        "E_dC_im[1]",
        "krein_re[1]",
        "krein_im[1]",
        "free_over_L_re[1/(energy*length)]",
        "free_over_L_im[1/(energy*length)]",
    ]);
    for ((z, v), f0) in scan.energies.iter().zip(&scan.e_values).zip(&scan.free_over_l) {
        // Krein: E Delta C~ = -E dlnT/dE at the same complex energy
        let k = -*z * amplitudes(*z, &p)?.dlnt_de;
        t.push(vec![z.re, z.im, v.re, v.im, k.re, k.im, f0.re, f0.im]);
    }
    let mut r = Report::new(t, &a);
    r.warnings = scan.warnings;
    Ok(r)
}

pub fn phase_eps(a: &EpsArgs) -> Result<Report> {
    let (a, cfg, scan) = eps_scan(a)?;
    let p = scattering(&cfg)?;
    let errs = cot_relative_errors(&scan, &p)?;
    let mut t = Table::new(&["E[energy]", "cot_phi[1]", "cot_phi_raw[1]", "cot_delta[1]", "rel_err[1]"]);
    for i in 0..scan.energies.len() {
        let e = scan.energies[i].re;
        t.push(vec![e, scan.cot_phi[i], scan.cot_phi_raw[i], phase_shift_cot(e, &p)?, errs[i]]);
    }
    let mut r = Report::new(t, &a);
    r.warnings = scan.warnings;
    r.summary = json!({ "max_rel_err": errs.iter().cloned().fold(0.0, f64::max) });
    Ok(r)
}

#[derive(Args, Serialize, Deserialize, Default, Debug, Clone, PartialEq)]
pub struct IlArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lattice: LatticeArgs,
    #[arg(long)]
    pub emin: Option<f64>,
    #[arg(long)]
    pub emax: Option<f64>,
    #[arg(long)]
    pub esteps: Option<usize>,
}

pub fn phase_il(a: &IlArgs) -> Result<Report> {
    let a = IlArgs { lattice: a.lattice.filled(None), ..a.clone() };
    let cfg = a.lattice.config()?;
    let grid = energy_grid(a.emin, a.emax, a.esteps)?;
    let p = scattering(&cfg)?;
    let scan = scan_prescription(&cfg, Prescription::IL, &grid)?;
    let errs = cot_relative_errors(&scan, &p)?;
    let mut t = Table::new(&["E[energy]", "cot_phi[1]", "cot_delta[1]", "rel_err[1]"]);
    for (i, e) in grid.iter().enumerate() {
        t.push(vec![*e, scan.cot_phi[i], phase_shift_cot(*e, &p)?, errs[i]]);
    }
    let mut r = Report::new(t, &a);
    r.warnings = scan.warnings;
    r.summary = json!({ "max_rel_err": errs.iter().cloned().fold(0.0, f64::max) });
    Ok(r)
}

#[derive(Args, Serialize, Deserialize, Default, Debug, Clone, PartialEq)]
pub struct QsimArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lattice: LatticeArgs,
    /// Time grid `start:stop:count`.
    #[arg(long)]
    pub t: Option<String>,
    /// Trotter step [default: 0.04].
    #[arg(long)]
    pub dt: Option<f64>,
    /// Ancilla readouts per Hadamard test; 0 for exact probabilities [default: 0].
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// coordinate | momentum [default: coordinate].
    #[arg(long)]
    pub basis: Option<String>,
}

fn shots_of(n: u64) -> Shots {
    if n == 0 {
        Shots::Exact
    } else {
        Shots::Count(n)
    }
}

fn positive(v: f64, key: &str) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::invalid(key, format!("must be positive, got {v}")))
    }
}

/// Trotter steps covering `t` at nominal step `dt`.
fn steps_for(t: f64, dt: f64) -> usize {
    ((t / dt).round() as usize).max(1)
}

pub fn qsim(a: &QsimArgs, n: usize) -> Result<Report> {
    if let Some(given) = a.lattice.n {
        if given != n {
            return Err(Error::invalid("N", format!("this experiment runs at N = {n}, got {given}")));
        }
    }
    let a = QsimArgs {
        lattice: a.lattice.filled(Some(n)),
        dt: a.dt.or(Some(0.04)),
        shots: a.shots.or(Some(0)),
        seed: a.seed.or(Some(0)),
        basis: a.basis.clone().or(Some("coordinate".into())),
        ..a.clone()
    };
    let cfg = a.lattice.config()?;
    let grid = parse_grid(&require(&a.t, "t")?, "t")?;
    if grid.iter().any(|&t| t < 0.0) {
        return Err(Error::invalid("t", "times must be non-negative"));
    }
    let dt = positive(a.dt.unwrap(), "dt")?;
    let basis = parse_basis(&a.basis)?;
    let shots = shots_of(a.shots.unwrap());
    let seed = a.seed.unwrap();
    let (int, free) = spectra(&cfg, basis)?;
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(i, &t)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let steps = steps_for(t, dt);
            let est = icf_difference_estimate(&cfg, basis, t, steps, shots, &mut rng)?;
            let exact = crate::spectral::icf_difference(&int, &free, t, TimeKind::Real, 0)?;
            Ok(vec![t, steps as f64, est.value.re, est.value.im, est.stderr.re, est.stderr.im, exact.re, exact.im])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&[
        "t[time]",
        "steps[1]",
        "dC_re[1]",
        "dC_im[1]",
        "stderr_re[1]",
        "stderr_im[1]",
        "exact_re[1]",
        "exact_im[1]",
    ]);
    rows.into_iter().for_each(|r| table.push(r));
    let mut r = Report::new(table, &a);
    r.seed = Some(seed);
    Ok(r)
}

#[derive(Args, Serialize, Deserialize, Default, Debug, Clone, PartialEq)]
pub struct NoiseArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lattice: LatticeArgs,
    /// Time grid `start:stop:count`.
    #[arg(long)]
    pub t: Option<String>,
    /// Trotter step [default: 0.04].
    #[arg(long)]
    pub dt: Option<f64>,
    /// coordinate | momentum [default: coordinate].
    #[arg(long)]
    pub basis: Option<String>,
    /// Basis state index of the overlap [default: 0].
    #[arg(long)]
    pub alpha: Option<usize>,
    /// re | im [default: re].
    #[arg(long)]
    pub part: Option<String>,
    /// Sweep one channel over its default grid: readout | depol1 | depol2 | thermal.
    #[arg(long)]
    pub channel: Option<String>,
    /// Preset: ideal | heron-median | eagle-median.
    #[arg(long)]
    pub noise: Option<String>,
    #[arg(long = "readout-p")]
    #[serde(rename = "readout-p")]
    pub readout_p: Option<f64>,
    #[arg(long)]
    pub depol1: Option<f64>,
    #[arg(long)]
    pub depol2: Option<f64>,
    /// Relaxation time in us.
    #[arg(long = "T1")]
    #[serde(rename = "T1")]
    pub t1: Option<f64>,
    /// Dephasing time in us.
    #[arg(long = "T2")]
    #[serde(rename = "T2")]
    pub t2: Option<f64>,
    /// Single-qubit gate length in ns.
    #[arg(long)]
    pub dur1: Option<f64>,
    /// Multi-qubit gate length in ns.
    #[arg(long)]
    pub dur2: Option<f64>,
    /// Repetitions per point [default: 100].
    #[arg(long)]
    pub repetitions: Option<usize>,
    /// Readouts per repetition; 0 for exact probabilities [default: 1000].
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

fn noise_grid(a: &NoiseArgs) -> Result<Vec<NoiseModel>> {
    let explicit = [a.readout_p, a.depol1, a.depol2, a.t1, a.t2, a.dur1, a.dur2].iter().any(Option::is_some);
    if let Some(ch) = &a.channel {
        if explicit || a.noise.is_some() {
            return Err(Error::invalid("channel", "a channel sweep takes no preset or explicit rates"));
        }
        return Ok(NoiseModel::default_grid(ch.parse::<Channel>()?));
    }
    let mut m = match &a.noise {
        Some(name) => NoiseModel::preset(name)?,
        None => NoiseModel::ideal(),
    };
    m.readout_p = a.readout_p.unwrap_or(m.readout_p);
    m.depol1 = a.depol1.unwrap_or(m.depol1);
    m.depol2 = a.depol2.unwrap_or(m.depol2);
    m.dur1 = a.dur1.unwrap_or(m.dur1);
    m.dur2 = a.dur2.unwrap_or(m.dur2);
    match (a.t1, a.t2) {
        (Some(t1), Some(t2)) => m.thermal = Some(Thermal { t1, t2 }),
        (None, None) => {}
        (Some(_), None) => return Err(Error::invalid("T2", "T1 given without T2")),
        (None, Some(_)) => return Err(Error::invalid("T1", "T2 given without T1")),
    }
    m.validate()?;
    Ok(vec![m])
}

pub fn noise_sweep(a: &NoiseArgs) -> Result<Report> {
    let a = NoiseArgs {
        lattice: a.lattice.filled(Some(4)),
        dt: a.dt.or(Some(0.04)),
        basis: a.basis.clone().or(Some("coordinate".into())),
        alpha: a.alpha.or(Some(0)),
        part: a.part.clone().or(Some("re".into())),
        repetitions: a.repetitions.or(Some(100)),
        shots: a.shots.or(Some(1000)),
        seed: a.seed.or(Some(0)),
        ..a.clone()
    };
    let cfg = a.lattice.config()?;
    let part = match a.part.as_deref() {
        Some("re") => Part::Re,
        Some("im") => Part::Im,
        other => return Err(Error::invalid("part", format!("expected re or im, got {other:?}"))),
    };
    let exp = OverlapExperiment {
        lattice: cfg,
        basis: parse_basis(&a.basis)?,
        alpha: a.alpha.unwrap(),
        part,
        dt: positive(a.dt.unwrap(), "dt")?,
        times: parse_grid(&require(&a.t, "t")?, "t")?,
    };
    let grid = noise_grid(&a)?;
    let seed = a.seed.unwrap();
    let sums = run_noise_sweep(&exp, &grid, a.repetitions.unwrap(), shots_of(a.shots.unwrap()), seed)?;
    let mut table = Table::new(&[
        "setting[1]",
        "readout_p[1]",
        "depol1[1]",
        "depol2[1]",
        "T1[us]",
        "T2[us]",
        "dur1[ns]",
        "dur2[ns]",
        "t[time]",
        "steps[1]",
        "two_qubit_gates[1]",
        "ideal[1]",
        "mean[1]",
        "sd[1]",
        "lo[1]",
        "hi[1]",
    ]);
    for (i, s) in sums.iter().enumerate() {
        let n = &s.noise;
        let (t1, t2) = n.thermal.map_or((f64::INFINITY, f64::INFINITY), |th| (th.t1, th.t2));
        for p in &s.points {
            table.push(vec![
                i as f64,
                n.readout_p,
                n.depol1,
                n.depol2,
                t1,
                t2,
                n.dur1,
                n.dur2,
                p.time,
                p.steps as f64,
                p.two_qubit_gates as f64,
                p.ideal,
                p.mean,
                p.sd,
                p.lo,
                p.hi,
            ]);
        }
    }
    let mut r = Report::new(table, &a);
    r.seed = Some(seed);
    r.summary = json!({ "settings": grid });
    Ok(r)
}

#[derive(Args, Serialize, Deserialize, Default, Debug, Clone, PartialEq)]
pub struct FieldArgs {
    /// Spatial sites [default: 1].
    #[arg(long = "Nx")]
    #[serde(rename = "Nx")]
    pub nx: Option<usize>,
    /// Spatial spacing; defaults to 1 for a single site, else L/(Nx-1).
    #[arg(long)]
    pub a: Option<f64>,
    /// Spatial box, used when `a` is not given.
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub l: Option<f64>,
    /// Field mass [default: 1].
    #[arg(long)]
    pub m: Option<f64>,
    /// Quartic coupling [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Field grid points, a power of two [default: 64].
    #[arg(long = "Nphi")]
    #[serde(rename = "Nphi")]
    pub nphi: Option<usize>,
    /// Field range [default: 12/sqrt(m)].
    #[arg(long = "phi-max")]
    #[serde(rename = "phi-max")]
    pub phi_max: Option<f64>,
    /// Levels to report [default: 10].
    #[arg(long)]
    pub levels: Option<usize>,
}

pub fn field_spectrum(a: &FieldArgs) -> Result<Report> {
    let nx = a.nx.unwrap_or(1);
    let m = a.m.unwrap_or(1.0);
    let spacing = match (a.a, a.l) {
        (Some(s), _) => s,
        (None, Some(l)) if nx >= 2 => l / (nx - 1) as f64,
        (None, Some(_)) => return Err(Error::invalid("L", "a single site takes `a`, not a box size")),
        (None, None) if nx == 1 => 1.0,
        (None, None) => return Err(Error::invalid("a", "give `a` or `L` for more than one site")),
    };
    let a = FieldArgs {
        nx: Some(nx),
        a: Some(spacing),
        l: None,
        m: Some(m),
        lambda: a.lambda.or(Some(0.0)),
        nphi: a.nphi.or(Some(64)),
        phi_max: a.phi_max.or(Some(FieldLatticeConfig::default_phi_max(m))),
        levels: a.levels.or(Some(10)),
    };
    let cfg = FieldLatticeConfig {
        nx,
        spacing,
        m,
        lambda: a.lambda.unwrap(),
        nphi: a.nphi.unwrap(),
        phi_max: a.phi_max.unwrap(),
    };
    cfg.validate()?;
    let levels = a.levels.unwrap();
    let diff = compare_conventions(&cfg, levels)?;
    let asym = build_field_hamiltonian(&cfg, Convention::Canonical)?.asymmetry();
    let mut t = Table::new(&["n[1]", "as_printed[energy]", "canonical[energy]", "oscillator[energy]"]);
    t.comments.push(format!(
        "convention diff: max_abs = {} (diagonal {}, off-diagonal {})",
        diff.max_abs, diff.diagonal_max_abs, diff.offdiagonal_max_abs
    ));
    for (n, (p, c)) in diff.as_printed_levels.iter().zip(&diff.canonical_levels).enumerate() {
        t.push(vec![n as f64, *p, *c, nx as f64 * spacing * m * (n as f64 + 0.5)]);
    }
    let mut r = Report::new(t, &a);
    r.summary = json!({ "convention_diff": diff, "canonical_asymmetry": asym });
    Ok(r)
}

/// Run a subcommand by name on merged parameters.
pub fn execute(name: &str, p: &Params) -> Result<Report> {
    use super::config::from_params;
    match name {
        "icf-euclidean" => icf_euclidean(&from_params(p)?),
        "icf-realtime" => icf_realtime(&from_params(p)?),
        "resolvent-eps" => resolvent_eps(&from_params(p)?),
        "phase-eps" => phase_eps(&from_params(p)?),
        "phase-il" => phase_il(&from_params(p)?),
        "qsim-single" => qsim(&from_params(p)?, 2),
        "qsim-two" => qsim(&from_params(p)?, 4),
        "noise-sweep" => noise_sweep(&from_params(p)?),
        "field-spectrum" => field_spectrum(&from_params(p)?),
        other => Err(Error::invalid("subcommand", format!("unknown subcommand `{other}`"))),
    }
}
