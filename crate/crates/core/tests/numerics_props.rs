use dotqubit_core::numerics::{
    hermitian_eig, integrate_lindblad, propagator, CMatrix, Collapse, DensityMatrix,
    TimeGrid,
};
use dotqubit_core::{ComplexMatrix, QuantumState, C64};
use proptest::prelude::*;

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
        let a = CMatrix::from_fn(n, n, |i, j| C64::new(v[i * n + j].0, v[i * n + j].1));
        (&a + &a.adjoint()).scale_real(0.01)
    })
}

fn sized_hermitian() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=6).prop_flat_map(hermitian)
}

fn random_state(n: usize) -> impl Strategy<Value = QuantumState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_filter("non-zero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(move |v| {
            let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            let amps = v.iter().map(|(a, b)| C64::new(a / norm, b / norm)).collect();
            QuantumState::new(vec![n], amps).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn propagator_is_unitary(h in sized_hermitian(), t in 0.0f64..100.0) {
        let u = propagator(&h, t).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-10);
    }

    #[test]
    fn propagator_composes(h in sized_hermitian(), t1 in 0.0f64..50.0, t2 in 0.0f64..50.0) {
        let a = &propagator(&h, t1).unwrap() * &propagator(&h, t2).unwrap();
        let b = propagator(&h, t1 + t2).unwrap();
        prop_assert!(a.approx_eq(&b, 1e-10));
    }

    #[test]
    fn eigendecomposition_reconstructs(h in sized_hermitian()) {
        let e = hermitian_eig(&h).unwrap();
        let back = e.apply_fn(|x| C64::new(x, 0.0));
        prop_assert!(back.approx_eq(&h, 1e-12));
        prop_assert!(e.vectors.unitarity_defect() < 1e-12);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn kron_mixed_product(
        a in hermitian(2), b in hermitian(3), c in hermitian(2), d in hermitian(3)
    ) {
        let lhs = &a.kron(&b) * &c.kron(&d);
        let rhs = (&a * &c).kron(&(&b * &d));
        prop_assert!(lhs.approx_eq(&rhs, 1e-15));
    }

    #[test]
    fn lindblad_keeps_trace_and_hermiticity(
        h in hermitian(3),
        psi in random_state(3),
        rates in prop::collection::vec(0.0f64..0.5, 2),
    ) {
        let collapse = vec![
            Collapse::new(CMatrix::outer_basis(3, 0, 1), rates[0]),
            Collapse::new(CMatrix::outer_basis(3, 1, 2), rates[1]),
        ];
        // ‖H‖/ħ reaches ~90 rad/ns, so keep ω dt below ~0.1
        let grid = TimeGrid::span(1.0, 1000).unwrap();
        let traj = integrate_lindblad(&h, &collapse, &psi.to_density(), &grid).unwrap();
        for rho in &traj {
            prop_assert!((rho.trace().re - 1.0).abs() < 1e-10);
            prop_assert!(rho.matrix().hermiticity_defect() < 1e-12);
        }
    }

    #[test]
    fn single_precision_tracks_double(h in hermitian(3), t in 0.0f64..50.0) {
        let u64 = propagator(&h, t).unwrap();
        let u32 = propagator(&h.cast::<f32>(), t as f32).unwrap();
        prop_assert!(u32.cast::<f64>().approx_eq(&u64, 1e-3));
    }
}

#[test]
fn lindblad_on_eighteen_levels() {
    // three-level qubit ⊗ six Fock states
    let n = 18;
    let h = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(0.001 * i as f64, 0.0)
        } else if i + 1 == j || j + 1 == i {
            C64::new(0.002, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let collapse = vec![Collapse::new(CMatrix::outer_basis(n, 0, 5), 0.1)];
    let rho0 = DensityMatrix::maximally_mixed(vec![3, 6]).unwrap();
    let grid = TimeGrid::span(5.0, 100).unwrap();
    let traj = integrate_lindblad(&h, &collapse, &rho0, &grid).unwrap();
    let last = traj.last().unwrap();
    assert!((last.trace().re - 1.0).abs() < 1e-12);
    assert!(last.matrix().hermiticity_defect() < 1e-12);
    assert!(last.min_eigenvalue().unwrap() > -1e-10);
}
