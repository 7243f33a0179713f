use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Three working levels of one qubit plus the drive and cavity parameters.
///
/// All entries are in meV. The detunings are derived:
/// `δ₁ = E_ẽ - E_v - ω̃_L` and `δ₂ = E_ẽ - E_e - ω_C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelScheme {
    pub e_v: f64,
    pub e_e: f64,
    pub e_etilde: f64,
    /// Resonant single-qubit drive frequency.
    #[serde(rename = "omega_L")]
    pub omega_l: f64,
    /// Raman laser frequency.
    #[serde(rename = "omega_Ltilde")]
    pub omega_ltilde: f64,
    /// Cavity mode frequency.
    #[serde(rename = "omega_C")]
    pub omega_c: f64,
    #[serde(rename = "rabi_L")]
    pub rabi_l: f64,
    #[serde(rename = "rabi_Ltilde")]
    pub rabi_ltilde: f64,
    #[serde(rename = "rabi_C")]
    pub rabi_c: f64,
}

/// Default level energies (meV) used by [`LevelScheme::from_detunings`].
pub const DEFAULT_E_V: f64 = 0.0;
pub const DEFAULT_E_E: f64 = 1000.0;
pub const DEFAULT_E_ETILDE: f64 = 1010.0;

impl LevelScheme {
    /// Builds a scheme from detunings rather than laser/cavity frequencies,
    /// using the default level energies and a resonant single-qubit drive
    /// of zero strength.
    pub fn from_detunings(delta1: f64, delta2: f64, rabi_ltilde: f64, rabi_c: f64) -> Result<Self> {
        Self::with_levels(
            DEFAULT_E_V,
            DEFAULT_E_E,
            DEFAULT_E_ETILDE,
            delta1,
            delta2,
            rabi_ltilde,
            rabi_c,
        )
    }

    pub fn with_levels(
        e_v: f64,
        e_e: f64,
        e_etilde: f64,
        delta1: f64,
        delta2: f64,
        rabi_ltilde: f64,
        rabi_c: f64,
    ) -> Result<Self> {
        let s = Self {
            e_v,
            e_e,
            e_etilde,
            omega_l: e_e - e_v,
            omega_ltilde: e_etilde - e_v - delta1,
            omega_c: e_etilde - e_e - delta2,
            rabi_l: 0.0,
            rabi_ltilde,
            rabi_c,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn delta1(&self) -> f64 {
        self.e_etilde - self.e_v - self.omega_ltilde
    }

    pub fn delta2(&self) -> f64 {
        self.e_etilde - self.e_e - self.omega_c
    }

    /// Two-photon detuning `δ̃ = δ₂ - δ₁`.
    pub fn delta_tilde(&self) -> f64 {
        self.delta2() - self.delta1()
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("e_v", self.e_v),
            ("e_e", self.e_e),
            ("e_etilde", self.e_etilde),
            ("omega_L", self.omega_l),
            ("omega_Ltilde", self.omega_ltilde),
            ("omega_C", self.omega_c),
            ("rabi_L", self.rabi_l),
            ("rabi_Ltilde", self.rabi_ltilde),
            ("rabi_C", self.rabi_c),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::param(name, "must be finite"));
            }
        }
        if !(self.e_v < self.e_e && self.e_e < self.e_etilde) {
            return Err(Error::param("e_e", "levels must satisfy e_v < e_e < e_etilde"));
        }
        for (name, v) in [
            ("rabi_L", self.rabi_l),
            ("rabi_Ltilde", self.rabi_ltilde),
            ("rabi_C", self.rabi_c),
        ] {
            if v < 0.0 {
                return Err(Error::param(name, "coupling must be non-negative"));
            }
        }
        Ok(())
    }

    /// Checks that both one-photon detunings exceed the couplings they
    /// bridge by at least `limits.min_detuning_ratio`.
    pub fn check_regime(&self, limits: &RegimeLimits) -> Result<()> {
        let r = limits.min_detuning_ratio;
        let d1 = self.delta1().abs();
        let d2 = self.delta2().abs();
        if self.rabi_ltilde > 0.0 && d1 < r * self.rabi_ltilde {
            return Err(Error::Regime(format!(
                "|δ₁| = {d1:e} meV is less than {r} × Ω̃_L = {:e} meV",
                r * self.rabi_ltilde
            )));
        }
        if self.rabi_c > 0.0 && d2 < r * self.rabi_c {
            return Err(Error::Regime(format!(
                "|δ₂| = {d2:e} meV is less than {r} × Ω_C = {:e} meV",
                r * self.rabi_c
            )));
        }
        Ok(())
    }

    /// Two-photon coupling `Ω_eff = (Ω̃_L Ω_C / 2)(1/δ₁ + 1/δ₂)`.
    pub fn omega_eff(&self) -> Result<f64> {
        let d1 = self.delta1();
        let d2 = self.delta2();
        if d1 == 0.0 {
            return Err(Error::param("omega_Ltilde", "δ₁ = 0: the intermediate level is resonant"));
        }
        if d2 == 0.0 {
            return Err(Error::param("omega_C", "δ₂ = 0: the intermediate level is resonant"));
        }
        Ok(0.5 * self.rabi_ltilde * self.rabi_c * (1.0 / d1 + 1.0 / d2))
    }

    /// Reduction of this scheme to the effective two-level qubit.
    pub fn effective(&self) -> Result<EffectiveQubit> {
        Ok(EffectiveQubit {
            omega_eff: self.omega_eff()?,
            delta_tilde: self.delta_tilde(),
        })
    }
}

/// Thresholds for the regimes in which the eliminations are trusted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeLimits {
    /// Minimum `|δ| / Ω` for the one-photon detunings.
    pub min_detuning_ratio: f64,
    /// Minimum `δ̃ / Ω_eff` for eliminating the cavity mode.
    pub min_two_photon_ratio: f64,
}

impl Default for RegimeLimits {
    fn default() -> Self {
        Self {
            min_detuning_ratio: 5.0,
            min_two_photon_ratio: 3.0,
        }
    }
}

/// A qubit after eliminating `|ẽ⟩`: coupling to the cavity and two-photon
/// detuning, both in meV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EffectiveQubit {
    pub omega_eff: f64,
    pub delta_tilde: f64,
}

/// Hilbert-space shape of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemLayout {
    pub n_qubits: usize,
    pub levels_per_qubit: usize,
    /// Number of Fock states kept; 0 when the cavity has been eliminated.
    pub cavity_dim: usize,
}

pub const MAX_DIMENSION: usize = 64;

impl SystemLayout {
    pub fn new(n_qubits: usize, levels_per_qubit: usize, cavity_dim: usize) -> Result<Self> {
        let l = Self {
            n_qubits,
            levels_per_qubit,
            cavity_dim,
        };
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.n_qubits) {
            return Err(Error::param("n_qubits", "must be 1 or 2"));
        }
        if !(2..=3).contains(&self.levels_per_qubit) {
            return Err(Error::param("levels_per_qubit", "must be 2 or 3"));
        }
        let d = self.dimension();
        if d > MAX_DIMENSION {
            return Err(Error::Dimension(format!(
                "total dimension {d} exceeds the supported maximum {MAX_DIMENSION}"
            )));
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.levels_per_qubit.pow(self.n_qubits as u32) * self.cavity_dim.max(1)
    }

    /// Subsystem dimensions, qubits first then the cavity if present.
    pub fn dims(&self) -> Vec<usize> {
        let mut d = vec![self.levels_per_qubit; self.n_qubits];
        if self.cavity_dim > 0 {
            d.push(self.cavity_dim);
        }
        d
    }

    pub fn has_cavity(&self) -> bool {
        self.cavity_dim > 0
    }

    /// Human-readable label of a flat basis index, e.g. `ev_n0`.
    pub fn label(&self, idx: usize) -> String {
        let digits = crate::numerics::basis_digits(&self.dims(), idx);
        let mut s = String::new();
        for &k in &digits[..self.n_qubits] {
            s.push_str(match k {
                0 => "v",
                1 => "e",
                _ => "x",
            });
        }
        if self.has_cavity() {
            s.push_str(&format!("_n{}", digits[self.n_qubits]));
        }
        s
    }
}
