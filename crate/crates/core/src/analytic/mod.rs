//! Closed-form infinite-volume references for the contact interaction.

mod erfc;
mod scattering;

pub use erfc::{complex_erfc, complex_erfcx};
pub use scattering::{
    amplitudes, angle_from_cot, bound_state_energy, free_resolvent, icf_infinite_limit, phase_shift,
    phase_shift_cot, Amplitudes, ResolventMode, ScatteringParams, TimeKind,
};
