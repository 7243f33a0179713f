//! Order-of-magnitude chain from dot parameters to operation counts.
//!
//! ```text
//! γ      = t² / (Δ² + t²)
//! Ω_L    = √γ Ω̃_L
//! Ω_eff  = Ω̃_L Ω_C / δ₁          (δ₁ = δ₂ limit; or an override)
//! δ̃      = r Ω_eff
//! g_eff  = Ω_eff² / δ̃
//! τ_G¹   = π / Ω_L,  τ_G² = π / g_eff
//! τ_d    = τ̃_d / γ
//! ```
//!
//! Couplings are carried as frequencies in Hz (`f = E / h`). A time for
//! phase π is `π / f` under the plain-frequency convention and `π / (2πf)`
//! under the angular one; both are reported.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decoherence::{decay_time, gate_ratio};
use crate::dot_model::{diagonalize_pair, DotPairParams};
use crate::error::{Error, Result};
use crate::units::{hz_to_mev, mev_to_hz, FrequencyConvention};

/// Which set of reference values the report is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetSet {
    #[default]
    CoupledPair,
    SingleDot,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BudgetInputs {
    /// Tunnel coupling (meV).
    pub t: f64,
    /// Dot level separation Δ (meV).
    pub delta_pair: f64,
    /// Single-dot laser coupling (meV).
    #[serde(rename = "rabi_Ltilde")]
    pub rabi_ltilde: f64,
    /// Cavity coupling as a frequency (Hz).
    #[serde(rename = "rabi_C_freq")]
    pub rabi_c_freq: f64,
    /// Laser detuning from the intermediate level (meV).
    pub delta1: f64,
    pub delta_tilde_over_omega_eff: f64,
    /// Single-dot radiative lifetime (s).
    pub tau_d_intra: f64,
    pub convention: FrequencyConvention,
    /// Replaces the derived Ω_eff (Hz).
    pub omega_eff_override: Option<f64>,
    /// Replaces γ from the dot pair; 1 is the single-dot limit.
    pub gamma_override: Option<f64>,
    pub targets: TargetSet,
}

impl Default for BudgetInputs {
    fn default() -> Self {
        Self {
            t: 0.01,
            delta_pair: 10.0,
            rabi_ltilde: 0.1,
            rabi_c_freq: 300e6,
            delta1: 1.0,
            delta_tilde_over_omega_eff: 3.0,
            tau_d_intra: 1e-5,
            convention: FrequencyConvention::PlainFrequency,
            omega_eff_override: None,
            gamma_override: None,
            targets: TargetSet::CoupledPair,
        }
    }
}

/// Ω_eff assumed in the reference two-qubit estimate (Hz).
pub const REFERENCE_OMEGA_EFF_HZ: f64 = 30e3;

impl BudgetInputs {
    /// Reference inputs with Ω_eff pinned to 30 kHz.
    pub fn with_reference_override() -> Self {
        Self {
            omega_eff_override: Some(REFERENCE_OMEGA_EFF_HZ),
            ..Self::default()
        }
    }

    /// The same couplings on a single dot: γ = 1.
    pub fn single_dot() -> Self {
        Self {
            omega_eff_override: Some(REFERENCE_OMEGA_EFF_HZ),
            gamma_override: Some(1.0),
            targets: TargetSet::SingleDot,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("t", self.t),
            ("delta_pair", self.delta_pair),
            ("rabi_Ltilde", self.rabi_ltilde),
            ("rabi_C_freq", self.rabi_c_freq),
            ("delta1", self.delta1),
            ("delta_tilde_over_omega_eff", self.delta_tilde_over_omega_eff),
            ("tau_d_intra", self.tau_d_intra),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, "must be positive and finite"));
            }
        }
        if self.delta_tilde_over_omega_eff < 3.0 {
            return Err(Error::param(
                "delta_tilde_over_omega_eff",
                "must be at least 3 for the exchange coupling to hold",
            ));
        }
        if let Some(w) = self.omega_eff_override {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::param("omega_eff_override", "must be positive and finite"));
            }
        }
        if let Some(g) = self.gamma_override {
            if !(g > 0.0 && g <= 1.0) {
                return Err(Error::param("gamma_override", "must lie in (0, 1]"));
            }
        }
        Ok(())
    }
}

/// Reference value with the factor within which a computed value matches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub value: f64,
    pub factor: f64,
    pub claim: String,
}

impl Target {
    fn new(value: f64, factor: f64, claim: &str) -> Self {
        Self {
            value,
            factor,
            claim: claim.into(),
        }
    }

    pub fn matches(&self, x: f64) -> bool {
        x >= self.value / self.factor && x <= self.value * self.factor
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub formula: String,
    pub value: f64,
    pub unit: String,
    pub paper_target: Option<Target>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagKind {
    /// Ω_eff derived from the inputs is far from the reference value.
    OmegaEffGap,
    /// Ω_eff was supplied rather than derived.
    OmegaEffOverride,
    /// Ω_C enters unreduced although optical couplings scale with √γ.
    OmegaCUnreduced,
    /// The single-dot two-qubit count cannot be reached from these inputs.
    SingleDotTwoBitInconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flag {
    pub kind: FlagKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub inputs: BudgetInputs,
    pub gamma: f64,
    pub omega_l_mev: f64,
    pub omega_l_hz: f64,
    pub omega_eff_derived_hz: f64,
    pub omega_eff_hz: f64,
    pub omega_eff_mev: f64,
    pub delta_tilde_hz: f64,
    pub g_eff_hz: f64,
    pub g_eff_mev: f64,
    /// Under the selected convention (s).
    pub tau_g1: f64,
    pub tau_g2: f64,
    /// Under the other convention (s).
    pub tau_g1_alt: f64,
    pub tau_g2_alt: f64,
    pub tau_d: f64,
    pub n_one_bit: f64,
    pub n_two_bit: f64,
    pub quantities: Vec<Quantity>,
    pub flags: Vec<Flag>,
}

impl BudgetReport {
    pub fn quantity(&self, name: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.name == name)
    }

    pub fn has_flag(&self, kind: FlagKind) -> bool {
        self.flags.iter().any(|f| f.kind == kind)
    }
}

/// `γ = t² / (Δ² + t²)`, or the override.
pub fn budget_gamma(inputs: &BudgetInputs) -> Result<f64> {
    if let Some(g) = inputs.gamma_override {
        return Ok(g);
    }
    let pair = DotPairParams::from_detuning(inputs.t, inputs.delta_pair)?;
    Ok(diagonalize_pair(&pair)?.gamma_paper)
}

/// One-bit gate time (s) for a coupling of `rabi_mev`.
pub fn one_bit_gate_time(rabi_mev: f64, convention: FrequencyConvention) -> f64 {
    convention.time_for_phase(PI, mev_to_hz(rabi_mev))
}

fn targets_for(set: TargetSet, name: &str) -> Option<Target> {
    use TargetSet::*;
    Some(match (set, name) {
        (CoupledPair, "gamma") => Target::new(1e-6, 1.01, "γ = 1e-6"),
        (CoupledPair, "omega_L_meV") => Target::new(1e-4, 1.01, "Ω_L ~ 1e-4 meV"),
        (CoupledPair, "tau_g1") => Target::new(3e-7, 10.0, "hundreds of ns"),
        (CoupledPair, "omega_eff_derived") => Target::new(REFERENCE_OMEGA_EFF_HZ, 10.0, "Ω_eff ≃ 30 kHz"),
        (CoupledPair, "g_eff") => Target::new(1e4, 3.0, "g_eff ≃ 10 kHz"),
        (CoupledPair, "tau_g2") => Target::new(1e-3, 10.0, "~1e-3 s"),
        (CoupledPair, "tau_d") => Target::new(10.0, 10.0, "tens of seconds"),
        (CoupledPair, "n_one_bit") => Target::new(1e8, 10.0, "~1e8"),
        (CoupledPair, "n_two_bit") => Target::new(1e4, 10.0, "~1e4"),
        (SingleDot, "n_one_bit") => Target::new(1e5, 10.0, "~1e5"),
        (SingleDot, "n_two_bit") => Target::new(10.0, 10.0, "~10"),
        _ => return None,
    })
}

pub fn compute_budget(inputs: &BudgetInputs) -> Result<BudgetReport> {
    inputs.validate()?;
    let conv = inputs.convention;
    let gamma = budget_gamma(inputs)?;

    let omega_l_mev = gamma.sqrt() * inputs.rabi_ltilde;
    let omega_l_hz = mev_to_hz(omega_l_mev);
    let omega_eff_derived_hz = inputs.rabi_ltilde * inputs.rabi_c_freq / inputs.delta1;
    let omega_eff_hz = inputs.omega_eff_override.unwrap_or(omega_eff_derived_hz);
    let delta_tilde_hz = inputs.delta_tilde_over_omega_eff * omega_eff_hz;
    let g_eff_hz = omega_eff_hz * omega_eff_hz / delta_tilde_hz;

    let tau_g1 = conv.time_for_phase(PI, omega_l_hz);
    let tau_g2 = conv.time_for_phase(PI, g_eff_hz);
    let tau_g1_alt = conv.other().time_for_phase(PI, omega_l_hz);
    let tau_g2_alt = conv.other().time_for_phase(PI, g_eff_hz);
    let tau_d = decay_time(gamma, inputs.tau_d_intra)?;
    let n_one_bit = gate_ratio(tau_d, tau_g1)?;
    let n_two_bit = gate_ratio(tau_d, tau_g2)?;

    let tau_formula = match conv {
        FrequencyConvention::PlainFrequency => "π / f",
        FrequencyConvention::Angular => "π / (2π f)",
    };
    let tau_alt_formula = match conv {
        FrequencyConvention::PlainFrequency => "π / (2π f)",
        FrequencyConvention::Angular => "π / f",
    };
    let gamma_formula = if inputs.gamma_override.is_some() {
        "override"
    } else {
        "t² / (Δ² + t²)"
    };
    let eff_formula = if inputs.omega_eff_override.is_some() {
        "override"
    } else {
        "Ω̃_L Ω_C / δ₁"
    };

    let rows: Vec<(&str, String, f64, &str)> = vec![
        ("gamma", gamma_formula.into(), gamma, "1"),
        ("omega_L_meV", "√γ Ω̃_L".into(), omega_l_mev, "meV"),
        ("omega_L", "Ω_L / h".into(), omega_l_hz, "Hz"),
        ("omega_eff_derived", "Ω̃_L Ω_C / δ₁".into(), omega_eff_derived_hz, "Hz"),
        ("omega_eff", eff_formula.into(), omega_eff_hz, "Hz"),
        ("omega_eff_meV", "h Ω_eff".into(), hz_to_mev(omega_eff_hz), "meV"),
        ("delta_tilde", "r Ω_eff".into(), delta_tilde_hz, "Hz"),
        ("g_eff", "Ω_eff² / δ̃".into(), g_eff_hz, "Hz"),
        ("g_eff_meV", "h g_eff".into(), hz_to_mev(g_eff_hz), "meV"),
        ("tau_g1", format!("{tau_formula}, f = Ω_L"), tau_g1, "s"),
        ("tau_g1_alt", format!("{tau_alt_formula}, f = Ω_L"), tau_g1_alt, "s"),
        ("tau_g2", format!("{tau_formula}, f = g_eff"), tau_g2, "s"),
        ("tau_g2_alt", format!("{tau_alt_formula}, f = g_eff"), tau_g2_alt, "s"),
        ("tau_d", "τ̃_d / γ".into(), tau_d, "s"),
        ("n_one_bit", "τ_d / τ_G¹".into(), n_one_bit, "1"),
        ("n_two_bit", "τ_d / τ_G²".into(), n_two_bit, "1"),
    ];
    let quantities: Vec<Quantity> = rows
        .into_iter()
        .map(|(name, formula, value, unit)| {
            let paper_target = targets_for(inputs.targets, name);
            let matches = paper_target.as_ref().map(|t| t.matches(value));
            Quantity {
                name: name.into(),
                formula,
                value,
                unit: unit.into(),
                paper_target,
                matches,
            }
        })
        .collect();

    let mut flags = Vec::new();
    let derived_ratio = omega_eff_derived_hz / REFERENCE_OMEGA_EFF_HZ;
    if !(0.1..=10.0).contains(&derived_ratio) {
        flags.push(Flag {
            kind: FlagKind::OmegaEffGap,
            message: format!(
                "derived Ω_eff = {omega_eff_derived_hz:.4e} Hz is {derived_ratio:.3e} × the reference 30 kHz"
            ),
        });
    }
    if inputs.omega_eff_override.is_some() {
        flags.push(Flag {
            kind: FlagKind::OmegaEffOverride,
            message: format!(
                "Ω_eff = {omega_eff_hz:.4e} Hz is an input; the derived value is {omega_eff_derived_hz:.4e} Hz"
            ),
        });
    }
    if gamma < 1.0 {
        flags.push(Flag {
            kind: FlagKind::OmegaCUnreduced,
            message: format!(
                "Ω_C enters unreduced; scaling it by √γ would lower Ω_eff by {:.3e}",
                gamma.sqrt()
            ),
        });
    }
    if inputs.targets == TargetSet::SingleDot {
        let t = targets_for(TargetSet::SingleDot, "n_two_bit").expect("target defined");
        if !t.matches(n_two_bit) {
            flags.push(Flag {
                kind: FlagKind::SingleDotTwoBitInconsistent,
                message: format!(
                    "single-dot two-bit count is {n_two_bit:.3e}, not ~10: τ̃_d / τ_G² cannot reach it"
                ),
            });
        }
    }

    Ok(BudgetReport {
        inputs: inputs.clone(),
        gamma,
        omega_l_mev,
        omega_l_hz,
        omega_eff_derived_hz,
        omega_eff_hz,
        omega_eff_mev: hz_to_mev(omega_eff_hz),
        delta_tilde_hz,
        g_eff_hz,
        g_eff_mev: hz_to_mev(g_eff_hz),
        tau_g1,
        tau_g2,
        tau_g1_alt,
        tau_g2_alt,
        tau_d,
        n_one_bit,
        n_two_bit,
        quantities,
        flags,
    })
}

/// Gain of the one-bit gate ratio of a dot pair with mixing `gamma` over a
/// single dot with the same intra-dot couplings and lifetime.
pub fn one_bit_ratio_gain(gamma: f64, inputs: &BudgetInputs) -> Result<f64> {
    let ratio = |g: f64| -> Result<f64> {
        let tau_d = decay_time(g, inputs.tau_d_intra)?;
        let tau_g = one_bit_gate_time(g.sqrt() * inputs.rabi_ltilde, inputs.convention);
        gate_ratio(tau_d, tau_g)
    };
    Ok(ratio(gamma)? / ratio(1.0)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

pub fn emit_report(report: &BudgetReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Text => Ok(emit_text(report)),
    }
}

fn emit_csv(report: &BudgetReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let ser = |e: csv::Error| Error::Serialization(e.to_string());
    w.write_record(["name", "formula", "value", "unit", "paper_target", "match"])
        .map_err(ser)?;
    for q in &report.quantities {
        let target = q.paper_target.as_ref().map(|t| t.value.to_string()).unwrap_or_default();
        let m = q.matches.map(|m| m.to_string()).unwrap_or_default();
        w.write_record([&q.name, &q.formula, &q.value.to_string(), &q.unit, &target, &m])
            .map_err(ser)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

fn emit_text(report: &BudgetReport) -> String {
    let i = &report.inputs;
    let mut s = String::new();
    let _ = writeln!(s, "inputs");
    let _ = writeln!(s, "  t = {} meV, Δ = {} meV, Ω̃_L = {} meV, Ω_C = {:e} Hz", i.t, i.delta_pair, i.rabi_ltilde, i.rabi_c_freq);
    let _ = writeln!(s, "  δ₁ = {} meV, r = δ̃/Ω_eff = {}, τ̃_d = {:e} s", i.delta1, i.delta_tilde_over_omega_eff, i.tau_d_intra);
    let _ = writeln!(s, "  convention = {}", i.convention.as_str());
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "{:<18} {:<22} {:>12} {:<4} {:>10} {}",
        "quantity", "formula", "value", "unit", "target", "match"
    );
    for q in &report.quantities {
        let (target, m) = match (&q.paper_target, q.matches) {
            (Some(t), Some(m)) => (format!("{:.1e}", t.value), if m { "yes" } else { "NO" }),
            _ => (String::from("-"), ""),
        };
        let _ = writeln!(
            s,
            "{:<18} {:<22} {:>12.4e} {:<4} {:>10} {}",
            q.name, q.formula, q.value, q.unit, target, m
        );
    }
    if !report.flags.is_empty() {
        let _ = writeln!(s);
        for f in &report.flags {
            let _ = writeln!(s, "FLAG {}: {}", serde_json::to_value(f.kind).unwrap().as_str().unwrap(), f.message);
        }
    }
    s
}
