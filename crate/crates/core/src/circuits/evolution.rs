//! Time-evolution circuits for the split Hamiltonians.
//!
//! Coordinate basis: `H = H_a + H_b + H_v` with `H_a` the even bonds
//! `(2k, 2k+1)`, `H_b` the odd bonds including the wraparound, and `H_v` the
//! diagonal. Momentum basis: `H = H_1 + H_2` with `H_1` the kinetic diagonal
//! and `H_2` the constant contact matrix.

use ndarray::Array2;

use super::gate::{Gate, GateKind};
use super::pauli::{pauli_terms_h1, pauli_terms_hv, PauliTerm};
use super::state::Circuit;
use crate::lattice::{build_momentum_hamiltonian, Basis, LatticeConfig};
use crate::{Error, Result, C64};

/// Gates for `exp(-i theta Z_q1 Z_q2 ...)`: a CX ladder onto the highest
/// qubit, `RZ(2 theta)` there, and the mirrored ladder. An empty support is
/// a global phase.
pub fn z_string_exponential(qubits: &[usize], theta: f64) -> Vec<Gate> {
    if qubits.is_empty() {
        return vec![Gate::global_phase(-theta)];
    }
    let mut qs = qubits.to_vec();
    qs.sort_unstable();
    let ladder: Vec<Gate> = qs.windows(2).map(|w| Gate::cx(w[0], w[1])).collect();
    let mut gates = ladder.clone();
    gates.push(Gate::single(GateKind::RZ(2.0 * theta), *qs.last().unwrap()));
    gates.extend(ladder.into_iter().rev());
    gates
}

/// `exp(-i dt sum_k c_k Z_{S_k})` for commuting diagonal terms.
pub fn diagonal_evolution(terms: &[PauliTerm], dt: f64, width: usize) -> Result<Circuit> {
    let mut c = Circuit::new(width);
    for t in terms {
        if !t.string.is_diagonal() || t.coeff.im != 0.0 {
            return Err(Error::invalid("terms", format!("{} is not a real diagonal term", t.string)));
        }
        for g in z_string_exponential(&t.string.support(), t.coeff.re * dt) {
            c.push(g)?;
        }
    }
    Ok(c)
}

fn check_dt(dt: f64) -> Result<()> {
    if !dt.is_finite() {
        return Err(Error::invalid("dt", "time step must be finite"));
    }
    Ok(())
}

/// `+1 mod 2^G`: flip bit `q` when all lower bits are set, top bit first.
pub fn increment(g: usize) -> Result<Circuit> {
    let mut c = Circuit::new(g);
    for q in (1..g).rev() {
        c.push(Gate::mcx((0..q).collect(), q))?;
    }
    c.push(Gate::single(GateKind::X, 0))?;
    Ok(c)
}

pub fn decrement(g: usize) -> Result<Circuit> {
    Ok(increment(g)?.inverse())
}

/// `exp(-i H_a dt) = RX(-dt/(m a^2))` on qubit 0.
pub fn circuit_exp_ha(cfg: &LatticeConfig, dt: f64) -> Result<Circuit> {
    check_dt(dt)?;
    let g = cfg.qubits()?;
    let mut c = Circuit::new(g);
    c.push(Gate::single(GateKind::RX(-dt * cfg.kinetic_scale()), 0))?;
    Ok(c)
}

/// `exp(-i H_b dt)` as increment, `exp(-i H_a dt)`, decrement. On one qubit
/// the two bond sets coincide and this is `exp(-i H_a dt)` itself.
pub fn circuit_exp_hb(cfg: &LatticeConfig, dt: f64) -> Result<Circuit> {
    let g = cfg.qubits()?;
    let ha = circuit_exp_ha(cfg, dt)?;
    if g == 1 {
        return Ok(ha);
    }
    let mut c = increment(g)?;
    c.append(&ha)?;
    c.append(&decrement(g)?)?;
    Ok(c)
}

pub fn circuit_exp_hv(cfg: &LatticeConfig, dt: f64) -> Result<Circuit> {
    check_dt(dt)?;
    diagonal_evolution(&pauli_terms_hv(cfg)?, dt, cfg.qubits()?)
}

pub fn circuit_exp_h1(cfg: &LatticeConfig, dt: f64) -> Result<Circuit> {
    check_dt(dt)?;
    diagonal_evolution(&pauli_terms_h1(cfg)?, dt, cfg.qubits()?)
}

/// `exp(-i H_2 dt)` exactly: `H_2` is `N V0 / L` times the projector on the
/// uniform state, so conjugate a phase on `|0...0>` by Hadamards.
pub fn circuit_exp_h2(cfg: &LatticeConfig, dt: f64) -> Result<Circuit> {
    check_dt(dt)?;
    let g = cfg.qubits()?;
    let theta = -(cfg.n as f64) * cfg.v0 * dt / cfg.l;
    let mut c = Circuit::new(g);
    let layer = |c: &mut Circuit, k: GateKind| (0..g).try_for_each(|q| c.push(Gate::single(k, q)));
    layer(&mut c, GateKind::H)?;
    layer(&mut c, GateKind::X)?;
    c.push(Gate::mc_phase(theta, (0..g - 1).collect(), g - 1))?;
    layer(&mut c, GateKind::X)?;
    layer(&mut c, GateKind::H)?;
    Ok(c)
}

/// One first-order step. As operators the coordinate step is
/// `U_a U_b U_v` and the momentum step `U_1 U_2`, so the rightmost factor
/// is emitted first.
pub fn trotter_step(cfg: &LatticeConfig, basis: Basis, dt: f64) -> Result<Circuit> {
    check_dt(dt)?;
    let g = cfg.qubits()?;
    match basis {
        Basis::Coordinate if g == 1 => {
            // both bonds coincide on two sites, so the step is exact
            let mut c = Circuit::new(1);
            let k = cfg.kinetic_scale();
            c.push(Gate::global_phase(-(k + cfg.v0 / (2.0 * cfg.spacing())) * dt))?;
            c.push(Gate::single(GateKind::RX(-2.0 * dt * k), 0))?;
            Ok(c)
        }
        Basis::Coordinate => {
            let mut c = circuit_exp_hv(cfg, dt)?;
            c.append(&circuit_exp_hb(cfg, dt)?)?;
            c.append(&circuit_exp_ha(cfg, dt)?)?;
            Ok(c)
        }
        Basis::Momentum => {
            let mut c = circuit_exp_h2(cfg, dt)?;
            c.append(&circuit_exp_h1(cfg, dt)?)?;
            Ok(c)
        }
    }
}

pub fn trotter_evolution(cfg: &LatticeConfig, basis: Basis, t: f64, steps: usize) -> Result<Circuit> {
    if steps == 0 {
        return Err(Error::invalid("steps", "need at least one Trotter step"));
    }
    Ok(trotter_step(cfg, basis, t / steps as f64)?.repeated(steps))
}

/// Dense matrices of the split terms: `[H_a, H_b, H_v]` (coordinate) or
/// `[H_1, H_2]` (momentum).
pub fn split_terms(cfg: &LatticeConfig, basis: Basis) -> Result<Vec<Array2<C64>>> {
    cfg.validate()?;
    let n = cfg.n;
    match basis {
        Basis::Coordinate => {
            let hop = C64::new(-0.5 * cfg.kinetic_scale(), 0.0);
            let mut ha = Array2::zeros((n, n));
            let mut hb = Array2::zeros((n, n));
            for k in 0..n / 2 {
                let (i, j) = (2 * k, 2 * k + 1);
                ha[(i, j)] += hop;
                ha[(j, i)] += hop;
                let (i, j) = (2 * k + 1, (2 * k + 2) % n);
                hb[(i, j)] += hop;
                hb[(j, i)] += hop;
            }
            let full = crate::lattice::build_coordinate_hamiltonian(cfg, true)?.entries;
            let hv = Array2::from_diag(&full.diag().to_owned());
            Ok(vec![ha, hb, hv])
        }
        Basis::Momentum => {
            let h1 = build_momentum_hamiltonian(cfg, false)?.entries;
            let full = build_momentum_hamiltonian(cfg, true)?.entries;
            let h2 = &full - &h1;
            Ok(vec![h1, h2])
        }
    }
}
