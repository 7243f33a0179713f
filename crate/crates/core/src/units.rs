//! Unit conventions and energy/frequency conversion.
//!
//! Energies are carried in meV and times in ns throughout the simulation
//! code. Every energy/frequency conversion in the crate goes through this
//! module so that the convention in use is visible at the call site.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Reduced Planck constant in meV·ns (CODATA 2018).
pub const HBAR_MEV_NS: f64 = 6.582_119_569e-4;

/// Planck constant in meV·s (CODATA 2018).
pub const PLANCK_MEV_S: f64 = 4.135_667_696e-12;

/// Reduced Planck constant in meV·s.
pub const HBAR_MEV_S: f64 = HBAR_MEV_NS * 1e-9;

pub const NS_PER_S: f64 = 1e9;

/// ħ in meV·ns at the requested precision.
pub fn hbar<T: Scalar>() -> T {
    T::lit(HBAR_MEV_NS)
}

/// How a "frequency" quoted in Hz relates to an evolution time.
///
/// `PlainFrequency` treats a rate `f` as cycles per second and writes gate
/// times as `π / f`. `Angular` uses `ω = 2π f` and writes `π / ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum FrequencyConvention {
    #[default]
    PlainFrequency,
    Angular,
}

impl FrequencyConvention {
    /// Time needed to accumulate a phase of `angle` radians at frequency `f_hz`.
    pub fn time_for_phase(self, angle: f64, f_hz: f64) -> f64 {
        match self {
            FrequencyConvention::PlainFrequency => angle / f_hz,
            FrequencyConvention::Angular => angle / (2.0 * std::f64::consts::PI * f_hz),
        }
    }

    pub fn other(self) -> Self {
        match self {
            FrequencyConvention::PlainFrequency => FrequencyConvention::Angular,
            FrequencyConvention::Angular => FrequencyConvention::PlainFrequency,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FrequencyConvention::PlainFrequency => "plain-frequency",
            FrequencyConvention::Angular => "angular",
        }
    }
}

/// E / h: energy in meV to frequency in Hz.
pub fn mev_to_hz(e_mev: f64) -> f64 {
    e_mev / PLANCK_MEV_S
}

/// f · h: frequency in Hz to energy in meV.
pub fn hz_to_mev(f_hz: f64) -> f64 {
    f_hz * PLANCK_MEV_S
}

/// E / ħ: energy in meV to angular frequency in rad/s.
pub fn mev_to_rad_per_s(e_mev: f64) -> f64 {
    e_mev / HBAR_MEV_S
}

/// Energy in meV to angular frequency in rad/ns.
pub fn mev_to_rad_per_ns(e_mev: f64) -> f64 {
    e_mev / HBAR_MEV_NS
}

pub fn seconds_to_ns(t_s: f64) -> f64 {
    t_s * NS_PER_S
}

pub fn ns_to_seconds(t_ns: f64) -> f64 {
    t_ns / NS_PER_S
}

/// Rate per second to rate per ns.
pub fn per_s_to_per_ns(rate: f64) -> f64 {
    rate / NS_PER_S
}
