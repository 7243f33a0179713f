use std::f64::consts::PI;

use dotqubit_core::model::{build_drive, build_raman, LevelScheme};
use dotqubit_core::numerics::propagator;
use dotqubit_core::units::HBAR_MEV_NS;
use dotqubit_core::{ComplexMatrix, C64};

/// Fixed-step RK4 on iħ dψ/dt = Hψ.
fn rk4_schrodinger(h: &ComplexMatrix, psi0: &[C64], t: f64, steps: usize) -> Vec<C64> {
    let dt = t / steps as f64;
    let f = |psi: &[C64]| -> Vec<C64> {
        h.mul_vec(psi)
            .into_iter()
            .map(|x| x * C64::new(0.0, -1.0 / HBAR_MEV_NS))
            .collect()
    };
    let axpy = |a: &[C64], s: f64, b: &[C64]| -> Vec<C64> {
        a.iter().zip(b).map(|(x, y)| x + y * s).collect()
    };
    let mut psi = psi0.to_vec();
    for _ in 0..steps {
        let k1 = f(&psi);
        let k2 = f(&axpy(&psi, dt / 2.0, &k1));
        let k3 = f(&axpy(&psi, dt / 2.0, &k2));
        let k4 = f(&axpy(&psi, dt, &k3));
        for i in 0..psi.len() {
            psi[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0);
        }
    }
    psi
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn rabi_drive_matches_integrator() {
    let omega = 0.01;
    let h = build_drive(omega).unwrap();
    let t = PI * HBAR_MEV_NS / (2.0 * omega);
    let psi0 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let exact = propagator(&h, t).unwrap().column(0);
    let oracle = rk4_schrodinger(&h, &psi0, t, 20_000);
    assert!(max_diff(&exact, &oracle) < 1e-8);
    // π pulse
    assert!((exact[1].norm_sqr() - 1.0).abs() < 1e-12);
}

#[test]
fn raman_hamiltonian_matches_integrator() {
    let s = LevelScheme::from_detunings(1.0, 1.0, 0.02, 0.02).unwrap();
    let h = build_raman(&[s], 3).unwrap();
    let n = h.rows();
    let mut psi0 = vec![C64::new(0.0, 0.0); n];
    psi0[0] = C64::new(1.0, 0.0);
    let t = 0.5;
    let exact = propagator(&h, t).unwrap().column(0);
    let oracle = rk4_schrodinger(&h, &psi0, t, 50_000);
    assert!(max_diff(&exact, &oracle) < 1e-8);
}
