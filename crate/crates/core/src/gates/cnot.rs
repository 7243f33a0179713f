use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::pulse::{cps_target, rotation};
use crate::gates::verify::{verify_matrix, VerificationReport};
use crate::ComplexMatrix;

const BASIS: [&str; 4] = ["vv", "ve", "ev", "ee"];
const TRUTH_TOL: f64 = 1e-10;

/// Controlled-NOT with qubit j as control (active on `|e⟩`) and k as target.
pub fn cnot_target() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

/// `H_k = exp(iπσ_k^y/4)` on the second qubit.
pub fn hadamard_like_k() -> ComplexMatrix {
    let r = rotation([0.0, 1.0, 0.0], PI / 4.0).expect("unit axis");
    ComplexMatrix::identity(2).kron(&r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthRow {
    pub input: String,
    /// Basis state carrying essentially all the output weight, if any.
    pub output: Option<String>,
    pub expected: String,
    /// Phase of the output amplitude.
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CnotResult {
    pub matrix: ComplexMatrix,
    /// The supplied conditional-phase gate checked against `diag(1,1,1,-1)`.
    pub input_check: VerificationReport,
    pub warning: Option<String>,
    pub truth_table: Vec<TruthRow>,
    /// Every basis state lands on its CNOT image, each with its own phase.
    pub truth_table_ok: bool,
    /// All truth-table phases agree, so the matrix is CNOT up to one global phase.
    pub phases_uniform: bool,
    /// Full-matrix comparison with [`cnot_target`].
    pub matrix_check: VerificationReport,
    /// Same comparison for the opposite conjugation order, `H_k U_cps H_k⁻¹`.
    pub reversed_check: VerificationReport,
}

/// `H_k⁻¹ U_cps H_k`.
pub fn cnot(cps: &ComplexMatrix) -> Result<CnotResult> {
    if cps.rows() != 4 || cps.cols() != 4 {
        return Err(Error::Dimension(format!("expected a 4x4 gate, got {}x{}", cps.rows(), cps.cols())));
    }
    let input_check = verify_matrix(cps, &cps_target())?;
    let warning = (!input_check.passed).then(|| {
        format!(
            "input is not a verified conditional phase gate (fidelity {:.6}, max deviation {:.3e})",
            input_check.fidelity, input_check.max_deviation
        )
    });
    let h = hadamard_like_k();
    let m = &(&h.adjoint() * cps) * &h;

    let target = cnot_target();
    let mut truth_table = Vec::with_capacity(4);
    let mut ok = true;
    for (col, name) in BASIS.iter().enumerate() {
        let out = m.column(col);
        let expected = (0..4).find(|&r| target[(r, col)].re == 1.0).unwrap();
        let hit = (0..4).find(|&r| (out[r].norm() - 1.0).abs() < TRUTH_TOL);
        ok &= hit == Some(expected)
            && (0..4).filter(|&r| r != expected).all(|r| out[r].norm() < TRUTH_TOL);
        truth_table.push(TruthRow {
            input: name.to_string(),
            output: hit.map(|r| BASIS[r].to_string()),
            expected: BASIS[expected].to_string(),
            phase: out[expected].arg(),
        });
    }
    let p0 = truth_table[0].phase;
    let phases_uniform = ok
        && truth_table.iter().all(|r| {
            let d = (r.phase - p0).rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d) < TRUTH_TOL
        });

    let matrix_check = verify_matrix(&m, &target)?;
    let reversed = &(&h * cps) * &h.adjoint();
    let reversed_check = verify_matrix(&reversed, &target)?;
    Ok(CnotResult {
        matrix: m,
        input_check,
        warning,
        truth_table,
        truth_table_ok: ok,
        phases_uniform,
        matrix_check,
        reversed_check,
    })
}
