use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use dotqubit_core::budget::{compute_budget, emit_report, ReportFormat};
use dotqubit_core::decoherence::emission_sweep;
use dotqubit_core::dot_model::{diagonalize_pair, scaling_factors, DotPairParams};
use dotqubit_core::gates::{
    cnot_target, compile_cps, cps_sequence, cps_target, search_variants, verify_matrix,
    PulseSequence, SearchSpace,
};
use dotqubit_core::model::{
    build_drive, build_raman, compare_jc_vs_xy, compare_raman_vs_jc, effective_rabi_period,
    exchange_coupling, exchange_period, jc_hamiltonian, xy_hamiltonian, SystemLayout,
};
use dotqubit_core::numerics::{basis_digits, ExactEvolution, TimeGrid};
use dotqubit_core::operators::{E, E_TILDE, V};
use dotqubit_core::units::HBAR_MEV_NS;
use dotqubit_core::{ComplexMatrix, QuantumState};

use crate::{CliError, RunConfig};

/// 12 significant digits.
fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn to_json(v: &impl serde::Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)
        .map_err(|e| CliError::Core(dotqubit_core::Error::from(e)))?;
    s.push('\n');
    Ok(s)
}

pub(crate) fn spectrum(t: f64, delta: f64, as_json: bool) -> Result<String, CliError> {
    let p = DotPairParams::from_detuning(t, delta)?;
    let m = diagonalize_pair(&p)?;
    // undefined for t = 0, where nothing couples
    let scaling = scaling_factors(m.gamma_paper).ok();
    if as_json {
        return to_json(&json!({ "t": t, "delta": delta, "pair": m, "scaling": scaling }));
    }
    let mut s = String::new();
    let _ = writeln!(s, "t            {t} meV");
    let _ = writeln!(s, "delta        {delta} meV");
    let _ = writeln!(s, "e_minus      {} meV", num(m.e_minus));
    let _ = writeln!(s, "e_plus       {} meV", num(m.e_plus));
    let _ = writeln!(s, "gamma        {}", num(m.gamma_paper));
    let _ = writeln!(s, "gamma_exact  {}", num(m.gamma_exact));
    if let Some(r) = scaling {
        let _ = writeln!(s, "emission     x{}", num(r.emission_factor));
        let _ = writeln!(s, "coupling     x{}", num(r.coupling_factor));
        let _ = writeln!(s, "ratio gain   x{}", num(r.gate_ratio_gain));
    }
    if m.strong_coupling {
        let _ = writeln!(s, "warning: t/Δ above 0.3, weak-mixing formulas are unreliable");
    }
    Ok(s)
}

pub(crate) fn budget(cfg: &RunConfig, format: ReportFormat) -> Result<String, CliError> {
    let report = compute_budget(&cfg.budget)?;
    Ok(emit_report(&report, format)?)
}

fn matrix_rows(m: &ComplexMatrix) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    json!(rows)
}

pub(crate) fn verify_cps() -> Result<String, CliError> {
    let (seq, u) = compile_cps();
    let target = cps_target();
    let literal = verify_matrix(&u, &target)?;
    let mut searches = Vec::new();
    for space in [SearchSpace::Signs, SearchSpace::SignsAndHalfAngles] {
        let r = search_variants(&seq, &target, space)?;
        let exact = r.ranked.iter().filter(|v| v.fidelity > 1.0 - 1e-10).count();
        searches.push(json!({
            "space": space,
            "candidates": r.candidates(),
            "exact_variants": exact,
            "best": r.best,
            "best_description": r.best.describe(),
            "best_sequence": r.best_sequence,
            "report": r.report,
        }));
    }
    to_json(&json!({
        "sequence": seq,
        "matrix": matrix_rows(&u),
        "target": "diag(1, 1, 1, -1)",
        "literal": literal,
        "searches": searches,
    }))
}

fn read_sequence(path: Option<&Path>) -> Result<PulseSequence, CliError> {
    match path {
        None => Ok(cps_sequence()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            Ok(PulseSequence::from_json(&text)?)
        }
    }
}

pub(crate) fn compile(path: Option<&Path>) -> Result<String, CliError> {
    let seq = read_sequence(path)?;
    let u = seq.compile()?;
    to_json(&json!({
        "sequence": seq,
        "matrix": matrix_rows(&u),
        "unitarity_defect": u.unitarity_defect(),
    }))
}

pub(crate) fn search(
    path: Option<&Path>,
    space: SearchSpace,
    cnot: bool,
    top: usize,
) -> Result<String, CliError> {
    let seq = read_sequence(path)?;
    let target = if cnot { cnot_target() } else { cps_target() };
    let r = search_variants(&seq, &target, space)?;
    let ranked: Vec<Value> = r
        .ranked
        .iter()
        .take(top)
        .map(|v| json!({ "fidelity": v.fidelity, "variant": v.describe(), "factors": v.factors, "convention": v.convention }))
        .collect();
    to_json(&json!({
        "space": space,
        "target": if cnot { "cnot" } else { "cps" },
        "candidates": r.candidates(),
        "best": r.best.describe(),
        "best_sequence": r.best_sequence,
        "convention": r.best.convention,
        "report": r.report,
        "ranked": ranked,
    }))
}

pub(crate) fn cnot(literal: bool) -> Result<String, CliError> {
    let input = if literal { compile_cps().1 } else { cps_target() };
    let r = dotqubit_core::gates::cnot(&input)?;
    to_json(&json!({
        "input": if literal { "literal-sequence" } else { "ideal" },
        "matrix": matrix_rows(&r.matrix),
        "input_check": r.input_check,
        "warning": r.warning,
        "truth_table": r.truth_table,
        "truth_table_ok": r.truth_table_ok,
        "phases_uniform": r.phases_uniform,
        "matrix_check": r.matrix_check,
    }))
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Model {
    Raman,
    Jc,
    Xy,
}

pub(crate) fn evolve(cfg: &RunConfig, model: Model) -> Result<String, CliError> {
    let eff = [cfg.effective, cfg.effective];
    let (h, layout, initial, period) = match model {
        Model::Raman => (
            build_raman(&[cfg.scheme], cfg.cavity_dim)?,
            SystemLayout::new(1, 3, cfg.cavity_dim)?,
            vec![V, 0],
            effective_rabi_period(&cfg.scheme)?,
        ),
        Model::Jc => (
            jc_hamiltonian(&eff, cfg.cavity_dim)?,
            SystemLayout::new(2, 2, cfg.cavity_dim)?,
            vec![E, V, 0],
            exchange_period(exchange_coupling(&eff[0], &eff[1])?)?,
        ),
        Model::Xy => {
            let g = exchange_coupling(&eff[0], &eff[1])?;
            (xy_hamiltonian(g), SystemLayout::new(2, 2, 0)?, vec![E, V], exchange_period(g)?)
        }
    };
    let grid = match cfg.grid {
        Some(g) => g,
        None => TimeGrid::span(period, cfg.steps)?,
    };
    let psi = QuantumState::basis(layout.dims(), &initial)?;
    let pops = ExactEvolution::new(&h)?.populations(psi.amplitudes(), &grid);

    let dims = layout.dims();
    let leaks = |i: usize| -> bool {
        let d = basis_digits(&dims, i);
        match model {
            Model::Raman => d[0] == E_TILDE,
            Model::Jc => d[2] > 0,
            Model::Xy => false,
        }
    };
    let mut s = String::from("t_ns");
    for i in 0..layout.dimension() {
        let _ = write!(s, ",p_{}", layout.label(i));
    }
    s.push_str(",leakage\n");
    for (t, p) in grid.times().iter().zip(&pops) {
        s.push_str(&num(*t));
        let mut leak = 0.0;
        for (i, x) in p.iter().enumerate() {
            let _ = write!(s, ",{}", num(*x));
            if leaks(i) {
                leak += x;
            }
        }
        let _ = writeln!(s, ",{}", num(leak));
    }
    Ok(s)
}

pub(crate) fn compare(cfg: &RunConfig, jc_xy: bool) -> Result<String, CliError> {
    let report = if jc_xy {
        let eff = [cfg.effective, cfg.effective];
        let grid = match cfg.grid {
            Some(g) => g,
            None => TimeGrid::span(exchange_period(exchange_coupling(&eff[0], &eff[1])?)?, cfg.steps)?,
        };
        compare_jc_vs_xy(&eff, cfg.cavity_dim, &grid, &cfg.regime)?
    } else {
        let grid = match cfg.grid {
            Some(g) => g,
            None => TimeGrid::span(effective_rabi_period(&cfg.scheme)?, cfg.steps)?,
        };
        compare_raman_vs_jc(&cfg.scheme, cfg.cavity_dim, &grid, &cfg.regime)?
    };
    let mut v = serde_json::to_value(&report).map_err(|e| CliError::Core(e.into()))?;
    v["fit_relative_error"] = json!(report.fit_relative_error());
    to_json(&v)
}

pub(crate) fn decohere(cfg: &RunConfig) -> Result<String, CliError> {
    let o = &cfg.decohere;
    let h = build_drive(o.rabi_l)?;
    let tau = std::f64::consts::PI * HBAR_MEV_NS / (2.0 * o.rabi_l);
    let layout = SystemLayout::new(1, 2, 0)?;
    let rho0 = QuantumState::basis(vec![2], &[V])?.to_density();
    let rates: Vec<f64> = o.gamma_tau.iter().map(|x| x / tau).collect();
    let sweep = emission_sweep(&h, &layout, &rates, tau, &rho0, o.n_steps)?;
    let mut s = String::from("gamma_tau,rate_per_ns,fidelity,infidelity\n");
    for (gt, (rate, f)) in o.gamma_tau.iter().zip(sweep) {
        let _ = writeln!(s, "{},{},{},{}", num(*gt), num(rate), num(f), num(1.0 - f));
    }
    Ok(s)
}
