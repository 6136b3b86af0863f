use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relaxation times in microseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thermal {
    pub t1: f64,
    pub t2: f64,
}

/// Per-gate error rates and gate lengths. `thermal = None` switches
/// relaxation off; every other channel is off at zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub readout_p: f64,
    pub depol1: f64,
    pub depol2: f64,
    pub thermal: Option<Thermal>,
    /// Single-qubit gate length in ns.
    pub dur1: f64,
    /// Multi-qubit gate length in ns.
    pub dur2: f64,
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel::ideal()
    }
}

/// One channel family, as swept in isolation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Readout,
    Depol1,
    Depol2,
    Thermal,
}

impl std::str::FromStr for Channel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "readout" => Ok(Channel::Readout),
            "depol1" => Ok(Channel::Depol1),
            "depol2" => Ok(Channel::Depol2),
            "thermal" => Ok(Channel::Thermal),
            _ => Err(Error::invalid("channel", format!("unknown channel `{s}`"))),
        }
    }
}

impl NoiseModel {
    pub const fn ideal() -> Self {
        NoiseModel { readout_p: 0.0, depol1: 0.0, depol2: 0.0, thermal: None, dur1: 50.0, dur2: 250.0 }
    }

    /// Named presets: `ideal`, `heron-median`, `eagle-median`.
    pub fn preset(name: &str) -> Result<Self> {
        let thermal = Some(Thermal { t1: 250.0, t2: 150.0 });
        match name {
            "ideal" => Ok(NoiseModel::ideal()),
            "heron-median" => Ok(NoiseModel { readout_p: 0.01, depol1: 2e-4, depol2: 2e-3, thermal, ..NoiseModel::ideal() }),
            "eagle-median" => Ok(NoiseModel { readout_p: 0.02, depol1: 2e-4, depol2: 8e-3, thermal, ..NoiseModel::ideal() }),
            _ => Err(Error::invalid("noise", format!("unknown preset `{name}`"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (key, p) in [("depol1", self.depol1), ("depol2", self.depol2)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(key, format!("probability {p} outside [0, 1]")));
            }
        }
        if !(0.0..0.5).contains(&self.readout_p) {
            return Err(Error::invalid("readout_p", format!("{} outside [0, 0.5)", self.readout_p)));
        }
        for (key, d) in [("dur1", self.dur1), ("dur2", self.dur2)] {
            if !(d >= 0.0 && d.is_finite()) {
                return Err(Error::invalid(key, format!("duration {d} must be finite and non-negative")));
            }
        }
        if let Some(th) = self.thermal {
            if !(th.t1 > 0.0 && th.t2 > 0.0) {
                return Err(Error::invalid("T1", "relaxation times must be positive"));
            }
            if th.t2 > 2.0 * th.t1 {
                return Err(Error::invalid("T2", format!("T2 = {} exceeds 2*T1 = {}", th.t2, 2.0 * th.t1)));
            }
        }
        Ok(())
    }

    /// Keep one channel family, zero the rest.
    pub fn only(&self, channel: Channel) -> Self {
        let mut m = NoiseModel { dur1: self.dur1, dur2: self.dur2, ..NoiseModel::ideal() };
        match channel {
            Channel::Readout => m.readout_p = self.readout_p,
            Channel::Depol1 => m.depol1 = self.depol1,
            Channel::Depol2 => m.depol2 = self.depol2,
            Channel::Thermal => m.thermal = self.thermal,
        }
        m
    }

    /// Default single-channel sweep values.
    pub fn default_grid(channel: Channel) -> Vec<NoiseModel> {
        let base = NoiseModel::ideal();
        match channel {
            Channel::Readout => [1e-3, 5e-3, 1e-2, 5e-2].iter().map(|&p| NoiseModel { readout_p: p, ..base }).collect(),
            Channel::Depol1 => [1e-4, 5e-4, 1e-3].iter().map(|&p| NoiseModel { depol1: p, ..base }).collect(),
            Channel::Depol2 => [2.5e-3, 5e-3, 1e-2].iter().map(|&p| NoiseModel { depol2: p, ..base }).collect(),
            Channel::Thermal => {
                let mut v = vec![];
                for (t1, t2) in [(100.0, 50.0), (150.0, 100.0), (250.0, 150.0)] {
                    for dur2 in [100.0, 250.0, 500.0] {
                        v.push(NoiseModel { thermal: Some(Thermal { t1, t2 }), dur2, ..base });
                    }
                }
                v
            }
        }
    }

    /// Damping probability and total off-diagonal factor over `dur_ns`.
    pub(crate) fn relaxation(&self, dur_ns: f64) -> Option<(f64, f64)> {
        let th = self.thermal?;
        let d = dur_ns / 1000.0;
        Some((1.0 - (-d / th.t1).exp(), (-d / th.t2).exp()))
    }
}
