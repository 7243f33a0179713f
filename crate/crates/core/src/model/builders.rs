use crate::error::{Error, Result};
use crate::model::scheme::{EffectiveQubit, LevelScheme, SystemLayout};
use crate::numerics::CMatrix;
use crate::operators::{
    annihilation, creation, embed, embed_pair, number, projector, sigma_minus, sigma_plus, sigma_x,
    E, E_TILDE, V,
};
use crate::ComplexMatrix;

/// Resonant single-qubit drive `Ω_L (|e⟩⟨v| + |v⟩⟨e|) = Ω_L σˣ`.
///
/// No factor ½: a π pulse (full flip) takes `πħ / (2Ω_L)`.
pub fn build_drive(rabi_l: f64) -> Result<ComplexMatrix> {
    if !(rabi_l > 0.0) || !rabi_l.is_finite() {
        return Err(Error::param("rabi_L", "must be positive"));
    }
    Ok(sigma_x::<f64>().scale_real(rabi_l))
}

fn check_shared_cavity(schemes: &[LevelScheme]) -> Result<()> {
    if schemes.is_empty() || schemes.len() > 2 {
        return Err(Error::param("qubits", "one or two qubits are supported"));
    }
    for s in schemes {
        s.validate()?;
    }
    if let [a, b] = schemes {
        if (a.omega_c - b.omega_c).abs() > 1e-12 {
            return Err(Error::param(
                "omega_C",
                "both qubits must couple to the same cavity mode",
            ));
        }
    }
    Ok(())
}

/// Full Raman Hamiltonian on `3^n ⊗ cavity_dim`.
///
/// Each qubit contributes
/// `δ₁|ẽ⟩⟨ẽ| - δ̃|e⟩⟨e| + Ω̃_L(|ẽ⟩⟨v| + h.c.) + Ω_C(|ẽ⟩⟨e| a + |e⟩⟨ẽ| a†)`
/// in the frame described in the module docs.
pub fn build_raman(schemes: &[LevelScheme], cavity_dim: usize) -> Result<ComplexMatrix> {
    check_shared_cavity(schemes)?;
    if cavity_dim < 2 {
        return Err(Error::param("cavity_dim", "must keep at least two Fock states"));
    }
    let layout = SystemLayout::new(schemes.len(), 3, cavity_dim)?;
    let dims = layout.dims();
    let cav = schemes.len();
    let a = annihilation::<f64>(cavity_dim);

    let mut h = CMatrix::zeros(layout.dimension(), layout.dimension());
    for (q, s) in schemes.iter().enumerate() {
        let p_et = embed(&projector(3, E_TILDE), q, &dims);
        let p_e = embed(&projector(3, E), q, &dims);
        h = &h + &p_et.scale_real(s.delta1());
        h = &h + &p_e.scale_real(-s.delta_tilde());

        let up = CMatrix::outer_basis(3, E_TILDE, V);
        let laser = embed(&up, q, &dims);
        h = &h + &(&laser + &laser.adjoint()).scale_real(s.rabi_ltilde);

        let cav_term = embed_pair(&CMatrix::outer_basis(3, E_TILDE, E), q, &a, cav, &dims);
        h = &h + &(&cav_term + &cav_term.adjoint()).scale_real(s.rabi_c);
    }
    Ok(h)
}

/// Effective model: two-level qubits coupled to the cavity through
/// `Ω_eff (|e⟩⟨v| a† + |v⟩⟨e| a)` with `-δ̃ |e⟩⟨e|` on the diagonal.
pub fn build_effective_jc(schemes: &[LevelScheme], cavity_dim: usize) -> Result<ComplexMatrix> {
    check_shared_cavity(schemes)?;
    let qubits = schemes
        .iter()
        .map(LevelScheme::effective)
        .collect::<Result<Vec<_>>>()?;
    jc_hamiltonian(&qubits, cavity_dim)
}

pub fn jc_hamiltonian(qubits: &[EffectiveQubit], cavity_dim: usize) -> Result<ComplexMatrix> {
    if qubits.is_empty() || qubits.len() > 2 {
        return Err(Error::param("qubits", "one or two qubits are supported"));
    }
    if cavity_dim < 2 {
        return Err(Error::param("cavity_dim", "must keep at least two Fock states"));
    }
    let layout = SystemLayout::new(qubits.len(), 2, cavity_dim)?;
    let dims = layout.dims();
    let cav = qubits.len();
    let ad = creation::<f64>(cavity_dim);

    let mut h = CMatrix::zeros(layout.dimension(), layout.dimension());
    for (q, eq) in qubits.iter().enumerate() {
        h = &h + &embed(&projector(2, E), q, &dims).scale_real(-eq.delta_tilde);
        let raise = embed_pair(&sigma_plus(2), q, &ad, cav, &dims);
        h = &h + &(&raise + &raise.adjoint()).scale_real(eq.omega_eff);
    }
    Ok(h)
}

/// Exchange coupling `g_eff = Ω_eff^(j) Ω_eff^(k) / δ̃` for a resonant pair.
pub fn exchange_coupling(qubit_j: &EffectiveQubit, qubit_k: &EffectiveQubit) -> Result<f64> {
    let dt = qubit_j.delta_tilde;
    if (dt - qubit_k.delta_tilde).abs() > 1e-9 {
        return Err(Error::param(
            "delta_tilde",
            format!(
                "two-photon detunings differ ({:e} vs {:e} meV)",
                dt, qubit_k.delta_tilde
            ),
        ));
    }
    if dt == 0.0 {
        return Err(Error::param("delta_tilde", "δ̃ = 0: the cavity mode cannot be eliminated"));
    }
    Ok(qubit_j.omega_eff * qubit_k.omega_eff / dt)
}

/// XY exchange `g (σ_j⁺σ_k⁻ + σ_k⁺σ_j⁻)` on `{|vv⟩, |ve⟩, |ev⟩, |ee⟩}`.
pub fn xy_hamiltonian(g_eff: f64) -> ComplexMatrix {
    let dims = [2, 2];
    let hop = embed_pair(&sigma_plus::<f64>(2), 0, &sigma_minus(2), 1, &dims);
    (&hop + &hop.adjoint()).scale_real(g_eff)
}

pub fn build_xy(scheme_j: &LevelScheme, scheme_k: &LevelScheme) -> Result<ComplexMatrix> {
    check_shared_cavity(&[*scheme_j, *scheme_k])?;
    let g = exchange_coupling(&scheme_j.effective()?, &scheme_k.effective()?)?;
    Ok(xy_hamiltonian(g))
}

/// `Σ_q |e⟩⟨e|_q - a†a`, conserved by both the Raman and the effective
/// cavity Hamiltonians (each Raman event raises a qubit and adds a photon).
pub fn excitation_charge(layout: &SystemLayout) -> ComplexMatrix {
    let dims = layout.dims();
    let n = layout.dimension();
    let mut q = CMatrix::zeros(n, n);
    for site in 0..layout.n_qubits {
        q = &q + &embed(&projector(layout.levels_per_qubit, E), site, &dims);
    }
    if layout.has_cavity() {
        q = &q - &embed(&number(layout.cavity_dim), layout.n_qubits, &dims);
    }
    q
}

/// `Σ_q σᶻ_q` on the qubit register (no cavity).
pub fn total_sigma_z(n_qubits: usize) -> ComplexMatrix {
    let dims = vec![2; n_qubits];
    (0..n_qubits).fold(CMatrix::zeros(1 << n_qubits, 1 << n_qubits), |acc, q| {
        &acc + &embed(&crate::operators::sigma_z(), q, &dims)
    })
}
