//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::Instant;

use dotqubit_core::budget::{compute_budget, one_bit_ratio_gain, BudgetInputs, FlagKind};
use dotqubit_core::decoherence::{emission_sweep, DecayChannel};
use dotqubit_core::dot_model::diagonalize_pair;
use dotqubit_core::gates::{
    cnot, compile_cps, cps_target, search_variants, verify_sequence, Qubit, SearchSpace,
};
use dotqubit_core::model::{
    build_drive, compare_jc_vs_xy, compare_raman_vs_jc, effective_rabi_period, exchange_coupling,
    exchange_period, xy_hamiltonian, EffectiveQubit, LevelScheme, RegimeLimits, SystemLayout,
};
use dotqubit_core::numerics::{hermitian_eig, integrate_lindblad, TimeGrid};
use dotqubit_core::operators::{E, V};
use dotqubit_core::units::HBAR_MEV_NS;
use dotqubit_core::{ComplexMatrix, DotPairParams, QuantumState};

struct Outcome {
    pass: bool,
    detail: String,
}

fn within_factor(x: f64, target: f64, factor: f64) -> bool {
    x >= target / factor && x <= target * factor
}

fn mixing_factor() -> Outcome {
    let m = diagonalize_pair(&DotPairParams::from_detuning(0.01, 10.0).unwrap()).unwrap();
    let rel = (m.gamma_paper / 1e-6 - 1.0).abs();
    Outcome {
        pass: rel <= 1e-3,
        detail: format!("gamma = {:.6e} (rel. dev. {rel:.1e})", m.gamma_paper),
    }
}

fn weak_mixing_consistency() -> Outcome {
    let mut worst_gap = 0.0f64;
    let mut worst_eig = 0.0f64;
    let mut pass = true;
    for i in 0..10 {
        let delta = 0.1 * 100f64.powf(i as f64 / 9.0);
        for k in 0..10 {
            let ratio = 0.001 + (0.1 - 0.001) * k as f64 / 9.0;
            let p = DotPairParams::from_detuning(ratio * delta, delta).unwrap();
            let m = diagonalize_pair(&p).unwrap();
            let gap = (m.gamma_paper - m.gamma_exact).abs();
            let bound = 3.0 * ratio.powi(4);
            let e = hermitian_eig(&p.hamiltonian()).unwrap();
            let eig = (e.values[0] - m.e_minus).abs().max((e.values[1] - m.e_plus).abs());
            pass &= gap <= bound && eig <= 1e-12;
            worst_gap = worst_gap.max(gap / bound);
            worst_eig = worst_eig.max(eig);
        }
    }
    Outcome {
        pass,
        detail: format!(
            "100 points, max |Δγ| / 3(t/Δ)⁴ = {worst_gap:.3}, max eigenvalue error = {worst_eig:.1e}"
        ),
    }
}

fn cps_verification() -> Outcome {
    let start = Instant::now();
    let (seq, _) = compile_cps();
    let literal = verify_sequence(&seq, &cps_target()).unwrap();
    let signs = search_variants(&seq, &cps_target(), SearchSpace::Signs).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let a = literal.fidelity > 1.0 - 1e-10;
    let b = !a && signs.best.fidelity > 1.0 - 1e-10;

    let extended = search_variants(&seq, &cps_target(), SearchSpace::SignsAndHalfAngles).unwrap();
    Outcome {
        pass: (a || b) && elapsed < 1.0,
        detail: format!(
            "literal F = {:.6}; best of {} sign variants F = {:.6}; \
             outside the sign space, [{}] reaches F = {:.12} ({:.2} s)",
            literal.fidelity,
            signs.candidates(),
            signs.best.fidelity,
            extended.best.describe(),
            extended.best.fidelity,
            elapsed
        ),
    }
}

fn cnot_construction() -> Outcome {
    let r = cnot(&cps_target()).unwrap();
    let map: Vec<String> = r
        .truth_table
        .iter()
        .map(|t| format!("{}→{}", t.input, t.output.clone().unwrap_or("?".into())))
        .collect();
    Outcome {
        // a truth table up to one global phase, so per-state phases must agree
        pass: r.truth_table_ok && r.phases_uniform && r.warning.is_none(),
        detail: format!(
            "{}; per-state phases uniform: {}; full-matrix F vs CNOT = {:.3}; \
             with H_k U H_k⁻¹ instead, F = {:.12}",
            map.join(" "),
            r.phases_uniform,
            r.matrix_check.fidelity,
            r.reversed_check.fidelity
        ),
    }
}

fn raman_elimination() -> Outcome {
    let start = Instant::now();
    let run = |c: f64| {
        let s = LevelScheme::from_detunings(1.0, 1.0, c, c).unwrap();
        let grid = TimeGrid::span(effective_rabi_period(&s).unwrap(), 2000).unwrap();
        compare_raman_vs_jc(&s, 3, &grid, &RegimeLimits::default()).unwrap()
    };
    let full = run(0.02);
    let half = run(0.01);
    let gain = full.max_population_discrepancy / half.max_population_discrepancy;
    let elapsed = start.elapsed().as_secs_f64();
    Outcome {
        pass: full.max_population_discrepancy <= 5e-2
            && full.max_leakage <= 2e-3
            && gain >= 2.0
            && elapsed < 30.0,
        detail: format!(
            "discrepancy {:.3e}, leakage {:.3e}, halving gain {gain:.2} ({elapsed:.2} s)",
            full.max_population_discrepancy, full.max_leakage
        ),
    }
}

fn cavity_elimination() -> Outcome {
    let start = Instant::now();
    let q = EffectiveQubit {
        omega_eff: 1e-3,
        delta_tilde: 1e-2,
    };
    let g = exchange_coupling(&q, &q).unwrap();
    let grid = TimeGrid::span(2.0 * exchange_period(g).unwrap(), 4000).unwrap();
    let r = compare_jc_vs_xy(&[q, q], 3, &grid, &RegimeLimits::default()).unwrap();
    let period_err = r.fit_relative_error().unwrap();
    let photon_bound = 4.0 * (q.omega_eff / q.delta_tilde).powi(2);
    let elapsed = start.elapsed().as_secs_f64();
    Outcome {
        pass: period_err <= 0.1 && r.max_leakage <= photon_bound && elapsed < 60.0,
        detail: format!(
            "swap period error {:.2}%, photons {:.3e} (bound {photon_bound:.1e}) ({elapsed:.2} s)",
            100.0 * period_err,
            r.max_leakage
        ),
    }
}

fn budget_reproduction() -> Outcome {
    let r = compute_budget(&BudgetInputs::with_reference_override()).unwrap();
    let pass = within_factor(r.g_eff_hz, 1e4, 3.0)
        && within_factor(r.tau_g2, 1e-3, 10.0)
        && within_factor(r.tau_d, 10.0, 10.0)
        && within_factor(r.n_one_bit, 1e8, 10.0)
        && within_factor(r.n_two_bit, 1e4, 10.0);
    Outcome {
        pass,
        detail: format!(
            "g_eff = {:.3e} Hz, τ_G² = {:.3e} s, τ_d = {:.3e} s, n₁ = {:.3e}, n₂ = {:.3e}",
            r.g_eff_hz, r.tau_g2, r.tau_d, r.n_one_bit, r.n_two_bit
        ),
    }
}

fn budget_audit() -> Outcome {
    let r = compute_budget(&BudgetInputs::default()).unwrap();
    let rel = (r.omega_eff_hz / 30e6 - 1.0).abs();
    Outcome {
        pass: rel <= 0.01 && r.has_flag(FlagKind::OmegaEffGap),
        detail: format!(
            "Ω_eff = {:.4e} Hz, gap flag raised: {}",
            r.omega_eff_hz,
            r.has_flag(FlagKind::OmegaEffGap)
        ),
    }
}

fn single_dot_baseline() -> Outcome {
    let r = compute_budget(&BudgetInputs::single_dot()).unwrap();
    let flagged = r.has_flag(FlagKind::SingleDotTwoBitInconsistent);
    Outcome {
        pass: within_factor(r.n_one_bit, 1e5, 10.0) && flagged,
        detail: format!(
            "n₁ = {:.3e}, n₂ = {:.3e}, inconsistency flag raised: {flagged}",
            r.n_one_bit, r.n_two_bit
        ),
    }
}

fn open_system() -> Outcome {
    // trace drift over 10⁴ steps: exchange plus emission on both qubits
    let h = xy_hamiltonian(1e-3);
    let layout = SystemLayout::new(2, 2, 0).unwrap();
    let channels: Vec<_> = [Qubit::J, Qubit::K]
        .iter()
        .map(|&q| DecayChannel::emission(q, 0.05).collapse(&layout).unwrap())
        .collect();
    let rho0 = QuantumState::basis(vec![2, 2], &[E, V]).unwrap().to_density();
    let grid = TimeGrid::span(20.0, 10_000).unwrap();
    let traj = integrate_lindblad(&h, &channels, &rho0, &grid).unwrap();
    let drift = traj
        .iter()
        .map(|r| (r.trace().re - 1.0).abs().max(r.trace().im.abs()))
        .fold(0.0, f64::max);

    // pure decay
    let gamma = 0.3;
    let one = SystemLayout::new(1, 2, 0).unwrap();
    let ch = DecayChannel::emission(Qubit::J, gamma).collapse(&one).unwrap();
    let excited = QuantumState::basis(vec![2], &[E]).unwrap().to_density();
    let grid = TimeGrid::span(5.0 / gamma, 2000).unwrap();
    let traj = integrate_lindblad(&ComplexMatrix::zeros(2, 2), &[ch], &excited, &grid).unwrap();
    let decay_err = grid
        .times()
        .iter()
        .zip(&traj)
        .map(|(t, r)| {
            let exact = (-gamma * t).exp();
            (r.populations()[E] - exact).abs() / exact
        })
        .fold(0.0, f64::max);

    // fidelity against rate
    let omega = 1e-4;
    let tau = std::f64::consts::PI * HBAR_MEV_NS / (2.0 * omega);
    let rho_v = QuantumState::basis(vec![2], &[V]).unwrap().to_density();
    let rates: Vec<f64> = [0.0, 1e-4, 1e-3, 1e-2, 1e-1].iter().map(|x| x / tau).collect();
    let sweep = emission_sweep(&build_drive(omega).unwrap(), &one, &rates, tau, &rho_v, 400).unwrap();
    let monotone = sweep.windows(2).all(|w| w[1].1 <= w[0].1);

    Outcome {
        pass: drift < 1e-8 && decay_err < 1e-6 && monotone,
        detail: format!(
            "trace drift {drift:.1e}, decay rel. error {decay_err:.1e}, fidelity monotone: {monotone}"
        ),
    }
}

fn gate_ratio_identity() -> Outcome {
    let inputs = BudgetInputs::default();
    let mut worst = 0.0f64;
    for g in [1e-2, 1e-4, 1e-6] {
        let gain = one_bit_ratio_gain(g, &inputs).unwrap();
        worst = worst.max((gain * g.sqrt() - 1.0).abs());
    }
    Outcome {
        pass: worst <= 1e-12,
        detail: format!("max |ρ_pair/ρ_single · √γ - 1| = {worst:.1e}"),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("mixing factor", mixing_factor),
        ("weak-mixing consistency", weak_mixing_consistency),
        ("conditional phase verification", cps_verification),
        ("CNOT construction", cnot_construction),
        ("intermediate-level elimination", raman_elimination),
        ("cavity elimination", cavity_elimination),
        ("budget reproduction", budget_reproduction),
        ("budget dimensional audit", budget_audit),
        ("single-dot baseline", single_dot_baseline),
        ("open-system properties", open_system),
        ("gate-ratio identity", gate_ratio_identity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
