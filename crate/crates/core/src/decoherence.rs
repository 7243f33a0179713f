//! Spontaneous emission of the `|e⟩` level and its cost in gate fidelity.
//!
//! The only channel modelled by default is `σ⁻ = |v⟩⟨e|` at rate
//! `Γ = γ / τ̃_d`, with `τ̃_d` the lifetime of a direct (single-dot)
//! exciton. The `|ẽ⟩` level can be given its own `|v⟩⟨ẽ|` channel.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::Qubit;
use crate::model::SystemLayout;
use crate::numerics::{integrate_lindblad, propagator, Collapse, TimeGrid};
use crate::operators::{embed, E, E_TILDE, V};
use crate::units::NS_PER_S;
use crate::{ComplexMatrix, DensityMatrix};

/// Emission rate per ns for mixing weight `gamma` and single-dot lifetime
/// `tau_d_intra` in seconds.
pub fn emission_rate(gamma: f64, tau_d_intra: f64) -> Result<f64> {
    Ok(1.0 / (decay_time(gamma, tau_d_intra)? * NS_PER_S))
}

/// `τ_d = τ̃_d / γ` in seconds.
pub fn decay_time(gamma: f64, tau_d_intra: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::param("gamma", "must lie in (0, 1]"));
    }
    if !(tau_d_intra > 0.0 && tau_d_intra.is_finite()) {
        return Err(Error::param("tau_d_intra", "must be positive and finite"));
    }
    Ok(tau_d_intra / gamma)
}

/// Number of gate operations within one decay time, `τ_d / τ_G`.
pub fn gate_ratio(tau_d: f64, tau_g: f64) -> Result<f64> {
    if !(tau_d > 0.0 && tau_d.is_finite()) {
        return Err(Error::param("tau_d", "must be positive and finite"));
    }
    if !(tau_g > 0.0 && tau_g.is_finite()) {
        return Err(Error::param("tau_g", "must be positive and finite"));
    }
    Ok(tau_d / tau_g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayKind {
    /// `|v⟩⟨e|`
    #[default]
    Emission,
    /// `|v⟩⟨ẽ|`, three-level qubits only.
    Intermediate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayChannel {
    pub qubit: Qubit,
    #[serde(default)]
    pub kind: DecayKind,
    /// Per ns.
    pub rate: f64,
}

impl DecayChannel {
    pub fn emission(qubit: Qubit, rate: f64) -> Self {
        Self {
            qubit,
            kind: DecayKind::Emission,
            rate,
        }
    }

    pub fn collapse(&self, layout: &SystemLayout) -> Result<Collapse<f64>> {
        if !(self.rate >= 0.0 && self.rate.is_finite()) {
            return Err(Error::param("rate", "must be non-negative and finite"));
        }
        let site = match self.qubit {
            Qubit::J => 0,
            Qubit::K if layout.n_qubits == 2 => 1,
            Qubit::K => return Err(Error::param("qubit", "layout has a single qubit")),
        };
        let from = match self.kind {
            DecayKind::Emission => E,
            DecayKind::Intermediate if layout.levels_per_qubit == 3 => E_TILDE,
            DecayKind::Intermediate => {
                return Err(Error::param("kind", "intermediate decay needs three-level qubits"))
            }
        };
        let op = ComplexMatrix::outer_basis(layout.levels_per_qubit, V, from);
        Ok(Collapse::new(embed(&op, site, &layout.dims()), self.rate))
    }
}

#[derive(Debug, Clone)]
pub struct DecayOutcome {
    pub final_state: DensityMatrix,
    pub ideal_state: DensityMatrix,
    /// `tr(ρ_ideal ρ_final)`; equals `⟨ψ_ideal|ρ_final|ψ_ideal⟩` for pure input.
    pub fidelity: f64,
}

/// Evolves `rho0` under `h` for `duration` ns with the given decay channels
/// and compares against the closed-system result.
pub fn gate_under_decay(
    h: &ComplexMatrix,
    layout: &SystemLayout,
    channels: &[DecayChannel],
    duration: f64,
    rho0: &DensityMatrix,
    n_steps: usize,
) -> Result<DecayOutcome> {
    layout.validate()?;
    if rho0.dim() != layout.dimension() {
        return Err(Error::Dimension(format!(
            "state has dimension {}, layout {}",
            rho0.dim(),
            layout.dimension()
        )));
    }
    let collapse = channels
        .iter()
        .map(|c| c.collapse(layout))
        .collect::<Result<Vec<_>>>()?;
    let grid = TimeGrid::span(duration, n_steps)?;
    let final_state = integrate_lindblad(h, &collapse, rho0, &grid)?
        .pop()
        .expect("grid has at least one step");
    let ideal_state = rho0.evolve(&propagator(h, duration)?);
    let fidelity = (ideal_state.matrix() * final_state.matrix()).trace().re;
    Ok(DecayOutcome {
        final_state,
        ideal_state,
        fidelity,
    })
}

/// Fidelity of a fixed gate for each emission rate, with the same rate on
/// every qubit.
pub fn emission_sweep(
    h: &ComplexMatrix,
    layout: &SystemLayout,
    rates: &[f64],
    duration: f64,
    rho0: &DensityMatrix,
    n_steps: usize,
) -> Result<Vec<(f64, f64)>> {
    let qubits: &[Qubit] = if layout.n_qubits == 2 {
        &[Qubit::J, Qubit::K]
    } else {
        &[Qubit::J]
    };
    rates
        .iter()
        .map(|&rate| {
            let channels: Vec<_> = qubits.iter().map(|&q| DecayChannel::emission(q, rate)).collect();
            let out = gate_under_decay(h, layout, &channels, duration, rho0, n_steps)?;
            Ok((rate, out.fidelity))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_drive;
    use crate::numerics::CMatrix;
    use crate::units::HBAR_MEV_NS;
    use crate::QuantumState;
    use crate::C64;

    #[test]
    fn emission_rate_examples() {
        assert!((decay_time(1e-6, 1e-5).unwrap() - 10.0).abs() < 1e-12);
        assert_eq!(decay_time(1.0, 3e-5).unwrap(), 3e-5);
        assert!((decay_time(1e-6, 1e-4).unwrap() - 100.0).abs() < 1e-11);
        let r = emission_rate(1e-6, 1e-4).unwrap();
        assert!((r / 1e-11 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn emission_rate_rejects() {
        assert!(emission_rate(0.0, 1e-5).is_err());
        assert!(emission_rate(2.0, 1e-5).is_err());
        assert!(emission_rate(0.5, 0.0).is_err());
        assert!(emission_rate(0.5, -1.0).is_err());
    }

    #[test]
    fn gate_ratio_examples() {
        assert!((gate_ratio(10.0, 1e-3).unwrap() - 1e4).abs() < 1e-8);
        assert_eq!(gate_ratio(2.5, 2.5).unwrap(), 1.0);
        assert!(gate_ratio(0.0, 1.0).is_err());
        assert!(gate_ratio(1.0, -1.0).is_err());
    }

    fn pi_pulse() -> (ComplexMatrix, f64, SystemLayout, DensityMatrix) {
        let omega = 1e-4;
        let h = build_drive(omega).unwrap();
        let tau = std::f64::consts::PI * HBAR_MEV_NS / (2.0 * omega);
        let layout = SystemLayout::new(1, 2, 0).unwrap();
        let rho0 = QuantumState::basis(vec![2], &[V]).unwrap().to_density();
        (h, tau, layout, rho0)
    }

    #[test]
    fn closed_system_is_perfect() {
        let (h, tau, layout, rho0) = pi_pulse();
        let out = gate_under_decay(&h, &layout, &[], tau, &rho0, 200).unwrap();
        assert!((out.fidelity - 1.0).abs() < 1e-8);
        assert!((out.ideal_state.populations()[E] - 1.0).abs() < 1e-12);
    }

    /// `exp(L t)` for the Liouvillian in row-major vectorisation,
    /// `vec(AρB) = (A ⊗ Bᵀ) vec(ρ)`, by scaling and squaring a Taylor series.
    fn liouvillian_oracle(h: &ComplexMatrix, l: &ComplexMatrix, rate: f64, t: f64, rho: &ComplexMatrix) -> ComplexMatrix {
        let n = h.rows();
        let id = CMatrix::identity(n);
        let ldl = &l.adjoint() * l;
        let mi = C64::new(0.0, -1.0 / HBAR_MEV_NS);
        let mut sup = &h.kron(&id).scale(mi) - &id.kron(&h.transpose()).scale(mi);
        sup = &sup + &l.kron(&l.conj()).scale_real(rate);
        sup = &sup - &(&ldl.kron(&id) + &id.kron(&ldl.transpose())).scale_real(0.5 * rate);
        let a = sup.scale_real(t / 1024.0);
        let mut term = CMatrix::identity(n * n);
        let mut e = term.clone();
        for k in 1..30 {
            term = (&term * &a).scale_real(1.0 / k as f64);
            e = &e + &term;
        }
        for _ in 0..10 {
            e = &e * &e;
        }
        let v = e.mul_vec(rho.as_slice());
        CMatrix::from_vec(n, n, v).unwrap()
    }

    #[test]
    fn pi_pulse_under_emission() {
        let (h, tau, layout, rho0) = pi_pulse();
        let rate = 1e-3 / tau;
        let ch = DecayChannel::emission(Qubit::J, rate);
        let out = gate_under_decay(&h, &layout, &[ch], tau, &rho0, 400).unwrap();
        let infidelity = 1.0 - out.fidelity;
        assert!((1e-4..1e-2).contains(&infidelity));

        let l = ComplexMatrix::outer_basis(2, V, E);
        let exact = liouvillian_oracle(&h, &l, rate, tau, rho0.matrix());
        let oracle = 1.0 - exact[(E, E)].re;
        assert!((infidelity - oracle).abs() < 1e-10, "{infidelity:e} vs {oracle:e}");
        // frozen from the oracle above
        assert!((infidelity - 3.749_100_532e-4).abs() < 1e-12, "{infidelity:.10e}");
    }

    #[test]
    fn fidelity_monotone_in_rate() {
        let (h, tau, layout, rho0) = pi_pulse();
        let rates: Vec<f64> = [0.0, 1e-4, 1e-3, 1e-2, 1e-1].iter().map(|x| x / tau).collect();
        let sweep = emission_sweep(&h, &layout, &rates, tau, &rho0, 400).unwrap();
        for w in sweep.windows(2) {
            assert!(w[1].1 <= w[0].1);
        }
    }

    #[test]
    fn channel_validation() {
        let layout = SystemLayout::new(1, 2, 0).unwrap();
        assert!(DecayChannel::emission(Qubit::K, 1.0).collapse(&layout).is_err());
        assert!(DecayChannel::emission(Qubit::J, -1.0).collapse(&layout).is_err());
        let ch = DecayChannel {
            qubit: Qubit::J,
            kind: DecayKind::Intermediate,
            rate: 1.0,
        };
        assert!(ch.collapse(&layout).is_err());
        let three = SystemLayout::new(1, 3, 2).unwrap();
        let c = ch.collapse(&three).unwrap();
        // |v,n⟩⟨ẽ,n|
        assert_eq!(c.op[(1, 2 * 2 + 1)].re, 1.0);
    }
}
