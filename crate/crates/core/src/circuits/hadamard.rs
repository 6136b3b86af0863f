//! Ancilla interference estimate of `<alpha|U|alpha>`.

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::evolution::trotter_step;
use super::gate::{Gate, GateKind};
use super::state::{Circuit, StateVector};
use crate::lattice::{Basis, LatticeConfig};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Re,
    Im,
}

/// Exact probabilities, or a finite number of ancilla readouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shots {
    Exact,
    Count(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HadamardEstimate {
    pub value: f64,
    pub stderr: f64,
    pub p0: f64,
    pub p1: f64,
}

/// Basis-state preparation and the ancilla opening: `X` on the set bits of
/// `alpha`, `H` on the ancilla (qubit `g`), then `S` for the imaginary part.
pub fn hadamard_prefix(g: usize, alpha: usize, part: Part) -> Result<Circuit> {
    if alpha >= 1 << g {
        return Err(Error::invalid("alpha", format!("basis index {alpha} outside {g} qubits")));
    }
    let mut c = Circuit::new(g + 1);
    for q in 0..g {
        if alpha >> q & 1 == 1 {
            c.push(Gate::single(GateKind::X, q))?;
        }
    }
    c.push(Gate::single(GateKind::H, g))?;
    if part == Part::Im {
        c.push(Gate::single(GateKind::S, g))?;
    }
    Ok(c)
}

/// Full test circuit: prefix, controlled `U`, closing `H` on the ancilla.
pub fn hadamard_circuit(u: &Circuit, alpha: usize, part: Part) -> Result<Circuit> {
    let g = u.width();
    let mut c = hadamard_prefix(g, alpha, part)?;
    c.append(&u.controlled(g)?)?;
    c.push(Gate::single(GateKind::H, g))?;
    Ok(c)
}

/// Turn the ancilla's `P(0)` into the estimator: `P0 - P1` for the real
/// part, `P1 - P0` for the imaginary part.
pub fn estimate_from_p0<R: Rng + ?Sized>(p0: f64, part: Part, shots: Shots, rng: &mut R) -> Result<HadamardEstimate> {
    let p0 = p0.clamp(0.0, 1.0);
    let (p0, stderr) = match shots {
        Shots::Exact => (p0, 0.0),
        Shots::Count(0) => return Err(Error::invalid("shots", "need at least one shot")),
        Shots::Count(n) => {
            let k = Binomial::new(n, p0).map_err(|e| Error::invalid("p0", e.to_string()))?.sample(rng);
            let p = k as f64 / n as f64;
            (p, 2.0 * (p * (1.0 - p) / n as f64).sqrt())
        }
    };
    let p1 = 1.0 - p0;
    let value = match part {
        Part::Re => p0 - p1,
        Part::Im => p1 - p0,
    };
    Ok(HadamardEstimate { value, stderr, p0, p1 })
}

pub fn hadamard_test<R: Rng + ?Sized>(
    u: &Circuit,
    alpha: usize,
    part: Part,
    shots: Shots,
    rng: &mut R,
) -> Result<HadamardEstimate> {
    let c = hadamard_circuit(u, alpha, part)?;
    let mut s = StateVector::basis(c.width(), 0)?;
    c.run(&mut s)?;
    estimate_from_p0(s.prob_zero(u.width()), part, shots, rng)
}

/// Sum of Hadamard-test estimates over the diagonal; `stderr` holds the
/// real and imaginary standard errors as its two components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEstimate {
    pub value: C64,
    pub stderr: C64,
}

impl std::ops::Sub for TraceEstimate {
    type Output = TraceEstimate;
    fn sub(self, o: TraceEstimate) -> TraceEstimate {
        TraceEstimate {
            value: self.value - o.value,
            stderr: C64::new(self.stderr.re.hypot(o.stderr.re), self.stderr.im.hypot(o.stderr.im)),
        }
    }
}

/// `Tr U = sum_alpha <alpha|U|alpha>` from `2N` Hadamard tests.
pub fn trace_estimate<R: Rng + ?Sized>(u: &Circuit, shots: Shots, rng: &mut R) -> Result<TraceEstimate> {
    let mut value = C64::new(0.0, 0.0);
    let (mut vre, mut vim) = (0.0, 0.0);
    for alpha in 0..1usize << u.width() {
        let re = hadamard_test(u, alpha, Part::Re, shots, rng)?;
        let im = hadamard_test(u, alpha, Part::Im, shots, rng)?;
        value += C64::new(re.value, im.value);
        vre += re.stderr * re.stderr;
        vim += im.stderr * im.stderr;
    }
    Ok(TraceEstimate { value, stderr: C64::new(vre.sqrt(), vim.sqrt()) })
}

/// `C(t)` of the Trotterized evolution.
pub fn icf_trace_estimate<R: Rng + ?Sized>(
    cfg: &LatticeConfig,
    basis: Basis,
    t: f64,
    steps: usize,
    shots: Shots,
    rng: &mut R,
) -> Result<TraceEstimate> {
    if steps == 0 {
        return Err(Error::invalid("steps", "need at least one Trotter step"));
    }
    let u = trotter_step(cfg, basis, t / steps as f64)?.repeated(steps);
    trace_estimate(&u, shots, rng)
}

/// `Delta C(t)`: interacting run minus the `V0 = 0` run.
pub fn icf_difference_estimate<R: Rng + ?Sized>(
    cfg: &LatticeConfig,
    basis: Basis,
    t: f64,
    steps: usize,
    shots: Shots,
    rng: &mut R,
) -> Result<TraceEstimate> {
    let a = icf_trace_estimate(cfg, basis, t, steps, shots, rng)?;
    let b = icf_trace_estimate(&cfg.free(), basis, t, steps, shots, rng)?;
    Ok(a - b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::evolution::trotter_evolution;
    use crate::lattice::build_coordinate_hamiltonian;
    use crate::linalg::unitary_exp;
    use crate::spectral::{eigen_spectrum, icf_difference, TimeKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn single(kind: GateKind) -> Circuit {
        let mut c = Circuit::new(1);
        c.push(Gate::single(kind, 0)).unwrap();
        c
    }

    #[test]
    fn identity_gives_one() {
        let u = Circuit::new(2);
        for a in 0..4 {
            let e = hadamard_test(&u, a, Part::Re, Shots::Exact, &mut rng()).unwrap();
            assert!((e.value - 1.0).abs() < 1e-15);
            assert!((e.p0 - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn z_and_s() {
        let e = hadamard_test(&single(GateKind::Z), 1, Part::Re, Shots::Exact, &mut rng()).unwrap();
        assert!((e.value + 1.0).abs() < 1e-15);
        // <1|S|1> = i
        let e = hadamard_test(&single(GateKind::S), 1, Part::Im, Shots::Exact, &mut rng()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-15);
        let e = hadamard_test(&single(GateKind::S), 1, Part::Re, Shots::Exact, &mut rng()).unwrap();
        assert!(e.value.abs() < 1e-15);
    }

    #[test]
    fn controlled_global_phase_is_visible() {
        for &th in &[0.3, 1.2, -2.5] {
            let mut u = Circuit::new(1);
            u.push(Gate::global_phase(th)).unwrap();
            let re = hadamard_test(&u, 0, Part::Re, Shots::Exact, &mut rng()).unwrap();
            let im = hadamard_test(&u, 0, Part::Im, Shots::Exact, &mut rng()).unwrap();
            assert!((re.value - th.cos()).abs() < 1e-14);
            assert!((im.value - th.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn exact_trace_matches_dense() {
        let c = LatticeConfig::new(4, 4.0, 1.0, 2.0).unwrap();
        let u = trotter_evolution(&c, Basis::Coordinate, 0.8, 20).unwrap();
        let tr: C64 = u.dense_matrix().unwrap().diag().iter().sum();
        let est = trace_estimate(&u, Shots::Exact, &mut rng()).unwrap();
        assert!((est.value - tr).norm() < 1e-12);
        let zero = icf_trace_estimate(&c, Basis::Coordinate, 0.0, 3, Shots::Exact, &mut rng()).unwrap();
        assert!((zero.value - 4.0).norm() < 1e-12);
    }

    #[test]
    fn single_qubit_difference_matches_spectrum() {
        let c = LatticeConfig::new(2, 4.0, 1.0, 2.0).unwrap();
        let a = eigen_spectrum(&build_coordinate_hamiltonian(&c, true).unwrap()).unwrap();
        let b = eigen_spectrum(&build_coordinate_hamiltonian(&c, false).unwrap()).unwrap();
        for k in 1..=5 {
            let t = 0.4 * k as f64;
            let want = icf_difference(&a, &b, t, TimeKind::Real, 0).unwrap();
            let got = icf_difference_estimate(&c, Basis::Coordinate, t, 10 * k, Shots::Exact, &mut rng()).unwrap();
            assert!((got.value - want).norm() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn two_qubit_overlap_tracks_exact_evolution() {
        let c = LatticeConfig::new(4, 4.0, 1.0, 2.0).unwrap();
        let h = build_coordinate_hamiltonian(&c, true).unwrap().entries;
        for k in [10usize, 25, 50] {
            let t = 0.04 * k as f64;
            let u = trotter_evolution(&c, Basis::Coordinate, t, k).unwrap();
            let re = hadamard_test(&u, 0, Part::Re, Shots::Exact, &mut rng()).unwrap().value;
            let im = hadamard_test(&u, 0, Part::Im, Shots::Exact, &mut rng()).unwrap().value;
            let exact = unitary_exp(&h, t).unwrap()[(0, 0)];
            assert!((C64::new(re, im) - exact).norm() < 1e-3, "t={t}");
        }
    }

    #[test]
    fn shot_mode() {
        let mut r = rng();
        assert!(estimate_from_p0(0.5, Part::Re, Shots::Count(0), &mut r).is_err());
        let e = estimate_from_p0(0.8, Part::Re, Shots::Count(100_000), &mut r).unwrap();
        assert!((e.value - 0.6).abs() < 5.0 * e.stderr);
        assert!(e.stderr > 0.0);
        let a = estimate_from_p0(0.3, Part::Im, Shots::Count(1000), &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = estimate_from_p0(0.3, Part::Im, Shots::Count(1000), &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
    }
}
