//! Numerical cross-checks between the rungs of the approximation ladder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::builders::{build_raman, exchange_coupling, jc_hamiltonian, xy_hamiltonian};
use crate::model::scheme::{EffectiveQubit, LevelScheme, RegimeLimits, SystemLayout};
use crate::numerics::{basis_digits, basis_index, ExactEvolution, QuantumState, TimeGrid};
use crate::operators::{E, E_TILDE, V};
use crate::units::HBAR_MEV_NS;

/// Result of evolving two rungs side by side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub comparison: String,
    pub t_end_ns: f64,
    pub n_samples: usize,
    /// Largest `|P_a(t) - P_b(t)|` over the compared basis states and grid.
    pub max_population_discrepancy: f64,
    /// Largest population outside the reduced model's space (`|ẽ⟩` for the
    /// Raman comparison, real photons for the cavity comparison).
    pub max_leakage: f64,
    pub leakage_kind: String,
    /// Coupling predicted by the reduced model (meV).
    pub predicted_coupling: f64,
    /// Coupling fitted from the full-model trajectory (meV), when a fit applies.
    pub fitted_coupling: Option<f64>,
}

impl ErrorReport {
    pub fn fit_relative_error(&self) -> Option<f64> {
        self.fitted_coupling
            .map(|f| (f - self.predicted_coupling).abs() / self.predicted_coupling.abs())
    }
}

/// One effective Rabi period `2πħ / (2Ω_eff)` of the Raman transition.
pub fn effective_rabi_period(scheme: &LevelScheme) -> Result<f64> {
    let w = scheme.omega_eff()?;
    if w == 0.0 {
        return Err(Error::param("rabi_Ltilde", "Ω_eff = 0 has no Rabi period"));
    }
    Ok(std::f64::consts::PI * HBAR_MEV_NS / w.abs())
}

/// One exchange period `πħ / g_eff`.
pub fn exchange_period(g_eff: f64) -> Result<f64> {
    if g_eff == 0.0 {
        return Err(Error::param("g_eff", "zero exchange has no period"));
    }
    Ok(std::f64::consts::PI * HBAR_MEV_NS / g_eff.abs())
}

/// Evolves the single-qubit Raman model and its cavity-coupled two-level reduction from
/// `|v, 0 photons⟩` and compares the populations of every `|v/e, n⟩`.
pub fn compare_raman_vs_jc(
    scheme: &LevelScheme,
    cavity_dim: usize,
    grid: &TimeGrid,
    limits: &RegimeLimits,
) -> Result<ErrorReport> {
    scheme.validate()?;
    scheme.check_regime(limits)?;
    grid.validate()?;
    let full = build_raman(&[*scheme], cavity_dim)?;
    let eff_qubit = scheme.effective()?;
    let reduced = jc_hamiltonian(&[eff_qubit], cavity_dim)?;

    let full_layout = SystemLayout::new(1, 3, cavity_dim)?;
    let red_layout = SystemLayout::new(1, 2, cavity_dim)?;
    let psi_full = QuantumState::basis(full_layout.dims(), &[V, 0])?;
    let psi_red = QuantumState::basis(red_layout.dims(), &[V, 0])?;

    let pf = ExactEvolution::new(&full)?.populations(psi_full.amplitudes(), grid);
    let pr = ExactEvolution::new(&reduced)?.populations(psi_red.amplitudes(), grid);

    let mut max_disc = 0.0f64;
    let mut max_leak = 0.0f64;
    for (full_t, red_t) in pf.iter().zip(&pr) {
        for (i, p_red) in red_t.iter().enumerate() {
            let d = basis_digits(&red_layout.dims(), i);
            let j = basis_index(&full_layout.dims(), &d)?;
            max_disc = max_disc.max((full_t[j] - p_red).abs());
        }
        let leak: f64 = (0..cavity_dim)
            .map(|n| full_t[basis_index(&full_layout.dims(), &[E_TILDE, n]).unwrap()])
            .sum();
        max_leak = max_leak.max(leak);
    }

    Ok(ErrorReport {
        comparison: "raman-jc".into(),
        t_end_ns: grid.t_end,
        n_samples: grid.n_steps + 1,
        max_population_discrepancy: max_disc,
        max_leakage: max_leak,
        leakage_kind: "intermediate-level population".into(),
        predicted_coupling: eff_qubit.omega_eff,
        fitted_coupling: None,
    })
}

/// Evolves the two-qubit cavity model and the XY exchange model from
/// `|ev⟩` (cavity in vacuum) and compares the `|ve⟩`, `|ev⟩` populations.
///
/// The exchange coupling is also fitted from the cavity-model swap curve
/// by least squares against `sin²(g t / ħ)`.
pub fn compare_jc_vs_xy(
    qubits: &[EffectiveQubit; 2],
    cavity_dim: usize,
    grid: &TimeGrid,
    limits: &RegimeLimits,
) -> Result<ErrorReport> {
    grid.validate()?;
    let g = exchange_coupling(&qubits[0], &qubits[1])?;
    let dt = qubits[0].delta_tilde;
    for (name, q) in ["j", "k"].iter().zip(qubits) {
        if dt.abs() < limits.min_two_photon_ratio * q.omega_eff.abs() {
            return Err(Error::Regime(format!(
                "qubit {name}: δ̃ = {dt:e} meV is below {} × Ω_eff = {:e} meV",
                limits.min_two_photon_ratio,
                limits.min_two_photon_ratio * q.omega_eff.abs()
            )));
        }
    }
    let full = jc_hamiltonian(qubits, cavity_dim)?;
    let reduced = xy_hamiltonian(g);

    let full_layout = SystemLayout::new(2, 2, cavity_dim)?;
    let fdims = full_layout.dims();
    let psi_full = QuantumState::basis(fdims.clone(), &[E, V, 0])?;
    let psi_red = QuantumState::basis(vec![2, 2], &[E, V])?;

    let pf = ExactEvolution::new(&full)?.populations(psi_full.amplitudes(), grid);
    let pr = ExactEvolution::new(&reduced)?.populations(psi_red.amplitudes(), grid);

    let ve_full = basis_index(&fdims, &[V, E, 0])?;
    let ev_full = basis_index(&fdims, &[E, V, 0])?;
    let (ve_red, ev_red) = (basis_index(&[2, 2], &[V, E])?, basis_index(&[2, 2], &[E, V])?);

    let mut max_disc = 0.0f64;
    let mut max_photon = 0.0f64;
    for (full_t, red_t) in pf.iter().zip(&pr) {
        max_disc = max_disc
            .max((full_t[ve_full] - red_t[ve_red]).abs())
            .max((full_t[ev_full] - red_t[ev_red]).abs());
        let photons: f64 = full_t
            .iter()
            .enumerate()
            .filter(|(i, _)| basis_digits(&fdims, *i)[2] > 0)
            .map(|(_, p)| p)
            .sum();
        max_photon = max_photon.max(photons);
    }

    let times = grid.times();
    let swap: Vec<f64> = pf.iter().map(|p| p[ve_full]).collect();
    let fitted = fit_swap_coupling(&times, &swap, g);

    Ok(ErrorReport {
        comparison: "jc-xy".into(),
        t_end_ns: grid.t_end,
        n_samples: grid.n_steps + 1,
        max_population_discrepancy: max_disc,
        max_leakage: max_photon,
        leakage_kind: "real-photon population".into(),
        predicted_coupling: g,
        fitted_coupling: fitted,
    })
}

fn swap_residual(times: &[f64], data: &[f64], g: f64) -> f64 {
    times
        .iter()
        .zip(data)
        .map(|(t, p)| {
            let model = (g * t / HBAR_MEV_NS).sin().powi(2);
            (model - p).powi(2)
        })
        .sum()
}

/// Least-squares fit of `sin²(g t / ħ)` for `g` in `[0.5, 1.5] × guess`.
fn fit_swap_coupling(times: &[f64], data: &[f64], guess: f64) -> Option<f64> {
    if guess == 0.0 || times.len() < 3 {
        return None;
    }
    let g0 = guess.abs();
    let n_scan = 400;
    let (lo, hi) = (0.5 * g0, 1.5 * g0);
    let step = (hi - lo) / n_scan as f64;
    let best = (0..=n_scan)
        .map(|k| lo + step * k as f64)
        .map(|g| (g, swap_residual(times, data, g)))
        .min_by(|a, b| a.1.total_cmp(&b.1))?;
    // golden-section refinement inside the bracketing scan cell
    let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    for _ in 0..80 {
        if swap_residual(times, data, c) < swap_residual(times, data, d) {
            b = d;
        } else {
            a = c;
        }
        c = b - phi * (b - a);
        d = a + phi * (b - a);
    }
    Some(0.5 * (a + b) * guess.signum())
}

/// Largest population change at any grid point when the cavity keeps one
/// more Fock state.
pub fn truncation_sensitivity(scheme: &LevelScheme, cavity_dim: usize, grid: &TimeGrid) -> Result<f64> {
    let run = |dim: usize| -> Result<Vec<Vec<f64>>> {
        let h = build_raman(&[*scheme], dim)?;
        let psi = QuantumState::basis(vec![3, dim], &[V, 0])?;
        Ok(ExactEvolution::new(&h)?.populations(psi.amplitudes(), grid))
    };
    let small = run(cavity_dim)?;
    let big = run(cavity_dim + 1)?;
    let mut worst = 0.0f64;
    for (ps, pb) in small.iter().zip(&big) {
        for level in 0..3 {
            for n in 0..cavity_dim {
                let a = ps[level * cavity_dim + n];
                let b = pb[level * (cavity_dim + 1) + n];
                worst = worst.max((a - b).abs());
            }
        }
    }
    Ok(worst)
}
