//! Fixed-step fourth-order Runge-Kutta integration of the Lindblad master
//! equation
//!
//! ```text
//! dρ/dt = -(i/ħ)[H, ρ] + Σ_k Γ_k (L_k ρ L_k† - ½{L_k† L_k, ρ})
//! ```
//!
//! with `H` in meV, `t` in ns and `Γ_k` in 1/ns. The generator is rewritten
//! as `Kρ + ρK† + Σ Γ_k L_k ρ L_k†` with `K = -(i/ħ)H - ½ Σ Γ_k L_k†L_k`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::matrix::CMatrix;
use crate::numerics::propagate::TimeGrid;
use crate::numerics::state::DensityMatrix;
use crate::scalar::Scalar;
use crate::units::hbar;

/// Collapse operator `L` with rate `Γ` per ns.
#[derive(Debug, Clone)]
pub struct Collapse<T> {
    pub op: CMatrix<T>,
    pub rate: T,
}

impl<T: Scalar> Collapse<T> {
    pub fn new(op: CMatrix<T>, rate: T) -> Self {
        Self { op, rate }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LindbladOptions {
    /// RK4 steps per grid interval.
    pub substeps: usize,
    /// Diagonalise every recorded state to check positivity.
    pub check_positivity: bool,
}

impl Default for LindbladOptions {
    fn default() -> Self {
        Self {
            substeps: 1,
            check_positivity: true,
        }
    }
}

struct Generator<T> {
    k: CMatrix<T>,
    k_adj: CMatrix<T>,
    jumps: Vec<(CMatrix<T>, CMatrix<T>, T)>,
}

impl<T: Scalar> Generator<T> {
    fn new(h: &CMatrix<T>, collapse: &[Collapse<T>]) -> Self {
        let n = h.rows();
        let mut k = h.scale(Complex::new(T::zero(), -T::one() / hbar::<T>()));
        let mut jumps = Vec::with_capacity(collapse.len());
        for c in collapse {
            let ldag = c.op.adjoint();
            let ldl = &ldag * &c.op;
            k = &k - &ldl.scale_real(T::lit(0.5) * c.rate);
            if c.rate > T::zero() {
                jumps.push((c.op.clone(), ldag, c.rate));
            }
        }
        debug_assert_eq!(k.rows(), n);
        let k_adj = k.adjoint();
        Self { k, k_adj, jumps }
    }

    fn apply(&self, rho: &CMatrix<T>) -> CMatrix<T> {
        let mut out = &(&self.k * rho) + &(rho * &self.k_adj);
        for (l, ldag, rate) in &self.jumps {
            let term = &(l * rho) * ldag;
            out = &out + &term.scale_real(*rate);
        }
        out
    }

    fn rk4_step(&self, rho: &CMatrix<T>, dt: T) -> CMatrix<T> {
        let half = dt * T::lit(0.5);
        let k1 = self.apply(rho);
        let k2 = self.apply(&(rho + &k1.scale_real(half)));
        let k3 = self.apply(&(rho + &k2.scale_real(half)));
        let k4 = self.apply(&(rho + &k3.scale_real(dt)));
        let sum = &(&k1 + &k2.scale_real(T::lit(2.0))) + &(&k3.scale_real(T::lit(2.0)) + &k4);
        rho + &sum.scale_real(dt / T::lit(6.0))
    }
}

/// Integrates from `rho0` over `grid`, returning the state at every grid
/// point (`grid.n_steps + 1` entries, the initial state first).
pub fn integrate_lindblad<T: Scalar>(
    h: &CMatrix<T>,
    collapse: &[Collapse<T>],
    rho0: &DensityMatrix<T>,
    grid: &TimeGrid,
) -> Result<Vec<DensityMatrix<T>>> {
    integrate_lindblad_with(h, collapse, rho0, grid, LindbladOptions::default())
}

pub fn integrate_lindblad_with<T: Scalar>(
    h: &CMatrix<T>,
    collapse: &[Collapse<T>],
    rho0: &DensityMatrix<T>,
    grid: &TimeGrid,
    opts: LindbladOptions,
) -> Result<Vec<DensityMatrix<T>>> {
    h.require_hermitian()?;
    grid.validate()?;
    let n = rho0.dim();
    if h.rows() != n {
        return Err(Error::Dimension(format!(
            "Hamiltonian is {}x{}, state is {n}x{n}",
            h.rows(),
            h.cols()
        )));
    }
    for (i, c) in collapse.iter().enumerate() {
        if c.op.rows() != n || c.op.cols() != n {
            return Err(Error::Dimension(format!("collapse operator {i} has wrong dimension")));
        }
        if !(c.rate >= T::zero()) {
            return Err(Error::param(format!("collapse[{i}].rate"), "must be non-negative"));
        }
    }
    if opts.substeps == 0 {
        return Err(Error::param("substeps", "must be at least 1"));
    }

    let gen = Generator::new(h, collapse);
    let dt = T::lit(grid.dt() / opts.substeps as f64);
    let drift_tol = T::lit(T::DRIFT_TOL);
    let pos_tol = T::lit(T::POSITIVITY_TOL);
    let dims = rho0.dims().to_vec();

    let mut rho = rho0.matrix().clone();
    let mut out = Vec::with_capacity(grid.n_steps + 1);
    out.push(rho0.clone());
    for (step, t) in grid.times().into_iter().enumerate().skip(1) {
        for _ in 0..opts.substeps {
            rho = gen.rk4_step(&rho, dt);
        }
        let tr = rho.trace();
        let drift = (tr.re - T::one()).abs().max(tr.im.abs());
        if !(drift <= drift_tol) || !(rho.max_abs() <= T::one() + drift_tol) {
            return Err(Error::Unstable {
                t_ns: t,
                detail: format!("trace drift {:e} after step {step}", drift.to_f64_lossy()),
            });
        }
        let state = DensityMatrix::from_parts_unchecked(dims.clone(), rho.clone());
        if opts.check_positivity {
            let min = state.min_eigenvalue()?;
            if min < -pos_tol {
                return Err(Error::Unstable {
                    t_ns: t,
                    detail: format!("minimum eigenvalue {:e}", min.to_f64_lossy()),
                });
            }
        }
        out.push(state);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::propagate::propagator;
    use crate::numerics::state::QuantumState;

    type M = CMatrix<f64>;

    fn sigma_minus() -> M {
        // |v⟩⟨e| with |v⟩ = 0
        M::outer_basis(2, 0, 1)
    }

    #[test]
    fn closed_system_matches_propagator() {
        let h = M::from_real_rows(&[&[0.0, 0.01], &[0.01, 0.003]]);
        let psi = QuantumState::<f64>::basis(vec![2], &[0]).unwrap();
        let rho0 = psi.to_density();
        let grid = TimeGrid::span(0.2, 1000).unwrap();
        let traj = integrate_lindblad(&h, &[], &rho0, &grid).unwrap();
        let u = propagator(&h, 0.2).unwrap();
        let exact = rho0.evolve(&u);
        let diff = (traj.last().unwrap().matrix() - exact.matrix()).max_abs();
        assert!(diff < 1e-8, "{diff:e} {:?} {:?}", traj.last().unwrap().matrix(), exact.matrix());
    }

    #[test]
    fn exponential_decay() {
        let gamma = 0.5;
        let rho0 = QuantumState::<f64>::basis(vec![2], &[1]).unwrap().to_density();
        let grid = TimeGrid::span(2.0 / gamma, 400).unwrap();
        let traj = integrate_lindblad(
            &M::zeros(2, 2),
            &[Collapse::new(sigma_minus(), gamma)],
            &rho0,
            &grid,
        )
        .unwrap();
        for (k, t) in [(200usize, 1.0 / gamma), (400, 2.0 / gamma)] {
            let p = traj[k].populations()[1];
            assert!((p - (-gamma * t).exp()).abs() < 1e-6, "t={t}: {p}");
        }
    }

    #[test]
    fn maximally_mixed_is_fixed_point() {
        let h = M::from_real_rows(&[&[0.2, 0.1, 0.0], &[0.1, -0.1, 0.05], &[0.0, 0.05, 0.3]]);
        let rho0 = DensityMatrix::maximally_mixed(vec![3]).unwrap();
        let grid = TimeGrid::span(0.05, 50).unwrap();
        let traj = integrate_lindblad(&h, &[], &rho0, &grid).unwrap();
        for r in &traj {
            assert!(r.matrix().approx_eq(rho0.matrix(), 1e-10));
        }
    }

    #[test]
    fn oversized_step_is_reported() {
        let h = M::from_real_rows(&[&[0.0, 10.0], &[10.0, 0.0]]);
        let rho0 = QuantumState::<f64>::basis(vec![2], &[0]).unwrap().to_density();
        let grid = TimeGrid::span(10.0, 10).unwrap();
        let err = integrate_lindblad(&h, &[], &rho0, &grid).unwrap_err();
        assert!(matches!(err, Error::Unstable { .. }), "{err}");
        assert!(err.to_string().contains("smaller step"));
    }

    #[test]
    fn negative_rate_rejected() {
        let rho0 = QuantumState::<f64>::basis(vec![2], &[1]).unwrap().to_density();
        let grid = TimeGrid::span(1.0, 10).unwrap();
        let r = integrate_lindblad(&M::zeros(2, 2), &[Collapse::new(sigma_minus(), -1.0)], &rho0, &grid);
        assert!(r.is_err());
    }
}
