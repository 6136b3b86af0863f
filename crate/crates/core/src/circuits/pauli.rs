use std::collections::BTreeMap;
use std::fmt;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::lattice::LatticeConfig;
use crate::{Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// `a b = phase * c`.
    pub fn mul(self, other: Pauli) -> (C64, Pauli) {
        use Pauli::*;
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        match (self, other) {
            (I, p) | (p, I) => (one, p),
            (a, b) if a == b => (one, I),
            (X, Y) => (i, Z),
            (Y, X) => (-i, Z),
            (Y, Z) => (i, X),
            (Z, Y) => (-i, X),
            (Z, X) => (i, Y),
            (X, Z) => (-i, Y),
            _ => unreachable!(),
        }
    }

    // (row bit, amplitude) of P|b>
    fn act(self, b: usize) -> (usize, C64) {
        match self {
            Pauli::I => (b, C64::new(1.0, 0.0)),
            Pauli::X => (1 - b, C64::new(1.0, 0.0)),
            Pauli::Y => (1 - b, if b == 0 { C64::new(0.0, 1.0) } else { C64::new(0.0, -1.0) }),
            Pauli::Z => (b, C64::new(if b == 0 { 1.0 } else { -1.0 }, 0.0)),
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Word over `{I, X, Y, Z}`; entry `q` acts on qubit `q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PauliString(pub Vec<Pauli>);

impl PauliString {
    pub fn identity(width: usize) -> Self {
        PauliString(vec![Pauli::I; width])
    }

    /// `Z` on every qubit in `qubits`, identity elsewhere.
    pub fn z_on(width: usize, qubits: &[usize]) -> Self {
        let mut s = Self::identity(width);
        for &q in qubits {
            s.0[q] = Pauli::Z;
        }
        s
    }

    pub fn x_on(width: usize, qubits: &[usize]) -> Self {
        let mut s = Self::identity(width);
        for &q in qubits {
            s.0[q] = Pauli::X;
        }
        s
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn is_diagonal(&self) -> bool {
        self.0.iter().all(|p| matches!(p, Pauli::I | Pauli::Z))
    }

    /// Qubits carrying a non-identity factor.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&q| self.0[q] != Pauli::I).collect()
    }

    pub fn mul(&self, other: &PauliString) -> (C64, PauliString) {
        assert_eq!(self.width(), other.width(), "Pauli width mismatch");
        let mut phase = C64::new(1.0, 0.0);
        let word = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                let (ph, p) = a.mul(b);
                phase *= ph;
                p
            })
            .collect();
        (phase, PauliString(word))
    }

    pub fn dense(&self) -> Array2<C64> {
        let dim = 1usize << self.width();
        let mut m = Array2::zeros((dim, dim));
        for j in 0..dim {
            let mut row = 0;
            let mut amp = C64::new(1.0, 0.0);
            for (q, p) in self.0.iter().enumerate() {
                let (b, a) = p.act((j >> q) & 1);
                row |= b << q;
                amp *= a;
            }
            m[(row, j)] = amp;
        }
        m
    }
}

/// Highest qubit on the left, as in tensor-product notation.
impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().rev().map(|p| p.letter()).collect();
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coeff: C64,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(coeff: f64, string: PauliString) -> Self {
        PauliTerm { coeff: C64::new(coeff, 0.0), string }
    }
}

/// Merge equal strings and drop coefficients below `1e-15` in magnitude.
pub fn simplify(terms: Vec<PauliTerm>) -> Vec<PauliTerm> {
    let mut acc: BTreeMap<PauliString, C64> = BTreeMap::new();
    for t in terms {
        *acc.entry(t.string).or_insert(C64::new(0.0, 0.0)) += t.coeff;
    }
    acc.into_iter()
        .filter(|(_, c)| c.norm() > 1e-15)
        .map(|(string, coeff)| PauliTerm { coeff, string })
        .collect()
}

/// Product of two Pauli sums, simplified.
pub fn multiply(a: &[PauliTerm], b: &[PauliTerm]) -> Vec<PauliTerm> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let (ph, s) = x.string.mul(&y.string);
            out.push(PauliTerm { coeff: x.coeff * y.coeff * ph, string: s });
        }
    }
    simplify(out)
}

pub fn scale(terms: &[PauliTerm], s: f64) -> Vec<PauliTerm> {
    terms.iter().map(|t| PauliTerm { coeff: t.coeff * s, string: t.string.clone() }).collect()
}

/// Dense matrix of a Pauli sum on `width` qubits.
pub fn to_dense(terms: &[PauliTerm], width: usize) -> Array2<C64> {
    let dim = 1usize << width;
    let mut m = Array2::zeros((dim, dim));
    for t in terms {
        assert_eq!(t.string.width(), width, "Pauli width mismatch");
        m = m + t.string.dense() * t.coeff;
    }
    m
}

/// Diagonal-plus-contact part `H_v`: the identity `1/(m a^2)` and the two
/// central sites `V0/(2a)`, written as Z strings. With `c = V0/(2a) / 2^(G-1)`,
/// strings with `I` on the top qubit and an even number of `Z` below carry
/// `+c`; strings with `Z` on top and an odd number below carry `-c`.
pub fn pauli_terms_hv(cfg: &LatticeConfig) -> Result<Vec<PauliTerm>> {
    let g = cfg.qubits()?;
    let mut terms = vec![PauliTerm::new(cfg.kinetic_scale(), PauliString::identity(g))];
    if cfg.v0 == 0.0 {
        return Ok(terms);
    }
    let c = cfg.v0 / (2.0 * cfg.spacing()) / (1u64 << (g - 1)) as f64;
    for subset in 0usize..(1 << (g - 1)) {
        let lower: Vec<usize> = (0..g - 1).filter(|q| subset >> q & 1 == 1).collect();
        let mut qs = lower.clone();
        if lower.len() % 2 == 0 {
            terms.push(PauliTerm::new(c, PauliString::z_on(g, &qs)));
        } else {
            qs.push(g - 1);
            terms.push(PauliTerm::new(-c, PauliString::z_on(g, &qs)));
        }
    }
    Ok(simplify(terms))
}

/// Constant of the `U^2` expansion, `(4^G + 2) / 12`.
pub fn h1_constant(g: usize) -> f64 {
    ((1u64 << (2 * g)) as f64 + 2.0) / 12.0
}

/// `U = diag(-N/2 + n)` as `-1/2 I - sum_b 2^b/2 Z_b`.
pub fn u_operator(g: usize) -> Vec<PauliTerm> {
    let mut t = vec![PauliTerm::new(-0.5, PauliString::identity(g))];
    for b in 0..g {
        t.push(PauliTerm::new(-((1u64 << b) as f64) / 2.0, PauliString::z_on(g, &[b])));
    }
    t
}

/// Momentum kinetic term `H_1 = (2 pi/L)^2/(2m) U^2` in closed form:
/// constant, single-Z and Z-pair insertions.
pub fn pauli_terms_h1(cfg: &LatticeConfig) -> Result<Vec<PauliTerm>> {
    let g = cfg.qubits()?;
    let s = (2.0 * std::f64::consts::PI / cfg.l).powi(2) / (2.0 * cfg.m);
    let mut terms = vec![PauliTerm::new(s * h1_constant(g), PauliString::identity(g))];
    for a in 0..g {
        terms.push(PauliTerm::new(s * (1u64 << a) as f64 / 2.0, PauliString::z_on(g, &[a])));
    }
    for a in 0..g {
        for b in 0..a {
            terms.push(PauliTerm::new(s * (1u64 << (a + b)) as f64 / 2.0, PauliString::z_on(g, &[a, b])));
        }
    }
    Ok(terms)
}

/// Contact term in momentum space, `H_2 = (V0/L)` times the all-ones
/// matrix: every X string with weight `V0/L`.
pub fn pauli_terms_h2(cfg: &LatticeConfig) -> Result<Vec<PauliTerm>> {
    let g = cfg.qubits()?;
    if cfg.v0 == 0.0 {
        return Ok(vec![]);
    }
    Ok((0usize..(1 << g))
        .map(|subset| {
            let qs: Vec<usize> = (0..g).filter(|q| subset >> q & 1 == 1).collect();
            PauliTerm::new(cfg.v0 / cfg.l, PauliString::x_on(g, &qs))
        })
        .collect())
}
