use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::sigma_dot;
use crate::{ComplexMatrix, C64};

const AXIS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Qubit {
    J,
    K,
}

impl Qubit {
    pub fn as_str(self) -> &'static str {
        match self {
            Qubit::J => "j",
            Qubit::K => "k",
        }
    }
}

/// Sign attached to the exchange propagator.
///
/// `Literal` is `exp(+iφ(σ⁺σ⁻ + h.c.))`; `Physical` is the forward evolution
/// `exp(-iH_xy t/ħ)` with `φ = g t/ħ`, i.e. the same matrix at `-φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JointConvention {
    #[default]
    Literal,
    Physical,
}

impl JointConvention {
    pub fn sign(self) -> f64 {
        match self {
            JointConvention::Literal => 1.0,
            JointConvention::Physical => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PulseStep {
    /// `exp(i angle n·σ)` on one qubit.
    Rotation { qubit: Qubit, axis: [f64; 3], angle: f64 },
    /// Exchange evolution by phase `phi`.
    Joint { phi: f64 },
    /// `exp(i theta)` times the identity.
    GlobalPhase { theta: f64 },
}

impl PulseStep {
    pub fn angle(&self) -> f64 {
        match *self {
            PulseStep::Rotation { angle, .. } => angle,
            PulseStep::Joint { phi } => phi,
            PulseStep::GlobalPhase { theta } => theta,
        }
    }

    /// Same step with its angle multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut s = *self;
        match &mut s {
            PulseStep::Rotation { angle, .. } => *angle *= factor,
            PulseStep::Joint { phi } => *phi *= factor,
            PulseStep::GlobalPhase { theta } => *theta *= factor,
        }
        s
    }

    pub fn validate(&self) -> Result<()> {
        if !self.angle().is_finite() {
            return Err(Error::param("angle", "must be finite"));
        }
        if let PulseStep::Rotation { axis, .. } = self {
            check_axis(*axis)?;
        }
        Ok(())
    }

    /// Two-qubit matrix of this step.
    pub fn matrix(&self, convention: JointConvention) -> Result<ComplexMatrix> {
        Ok(match *self {
            PulseStep::Rotation { qubit, axis, angle } => {
                let r = rotation(axis, angle)?;
                match qubit {
                    Qubit::J => r.kron(&ComplexMatrix::identity(2)),
                    Qubit::K => ComplexMatrix::identity(2).kron(&r),
                }
            }
            PulseStep::Joint { phi } => joint_evolution(convention.sign() * phi),
            PulseStep::GlobalPhase { theta } => {
                ComplexMatrix::identity(4).scale(C64::from_polar(1.0, theta))
            }
        })
    }
}

fn check_axis(axis: [f64; 3]) -> Result<()> {
    let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > AXIS_TOL {
        return Err(Error::param("axis", format!("must have unit norm, got {norm}")));
    }
    Ok(())
}

/// `exp(i angle n·σ) = cos(angle) I + i sin(angle) n·σ`.
pub fn rotation(axis: [f64; 3], angle: f64) -> Result<ComplexMatrix> {
    check_axis(axis)?;
    let (s, c) = angle.sin_cos();
    let id = ComplexMatrix::identity(2).scale_real(c);
    Ok(&id + &sigma_dot::<f64>(axis).scale(C64::new(0.0, s)))
}

/// Exchange propagator: identity on `|vv⟩`, `|ee⟩` and
/// `[[cos φ, i sin φ], [i sin φ, cos φ]]` on `{|ve⟩, |ev⟩}`.
pub fn joint_evolution(phi: f64) -> ComplexMatrix {
    let (s, c) = phi.sin_cos();
    let mut u = ComplexMatrix::identity(4);
    u[(1, 1)] = C64::new(c, 0.0);
    u[(2, 2)] = C64::new(c, 0.0);
    u[(1, 2)] = C64::new(0.0, s);
    u[(2, 1)] = C64::new(0.0, s);
    u
}

/// Ordered pulse steps. The written order is the matrix-product order, so
/// the last step acts first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseSequence {
    pub label: String,
    pub steps: Vec<PulseStep>,
}

impl PulseSequence {
    pub fn new(label: impl Into<String>, steps: Vec<PulseStep>) -> Result<Self> {
        let s = Self {
            label: label.into(),
            steps,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::param("steps", "sequence must not be empty"));
        }
        for (i, s) in self.steps.iter().enumerate() {
            s.validate()
                .map_err(|e| Error::param(format!("steps[{i}]"), e.to_string()))?;
        }
        Ok(())
    }

    pub fn compile(&self) -> Result<ComplexMatrix> {
        self.compile_with(JointConvention::Literal)
    }

    pub fn compile_with(&self, convention: JointConvention) -> Result<ComplexMatrix> {
        self.validate()?;
        self.steps.iter().try_fold(ComplexMatrix::identity(4), |acc, s| {
            Ok(&acc * &s.matrix(convention)?)
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let seq: Self = serde_json::from_str(s)?;
        seq.validate()?;
        Ok(seq)
    }
}

pub const N_J: [f64; 3] = [
    1.0 / 1.732_050_807_568_877_2,
    1.0 / 1.732_050_807_568_877_2,
    -1.0 / 1.732_050_807_568_877_2,
];
pub const N_K: [f64; 3] = [
    1.0 / 1.732_050_807_568_877_2,
    -1.0 / 1.732_050_807_568_877_2,
    1.0 / 1.732_050_807_568_877_2,
];
const X: [f64; 3] = [1.0, 0.0, 0.0];
const Y: [f64; 3] = [0.0, 1.0, 0.0];

/// The conditional-phase sequence as printed:
///
/// ```text
/// e^{iπ/4} e^{iπ n_j·σ_j/3} e^{iπ n_k·σ_k/3} U_jk(π/4) e^{-iπσ_j^y/2} U_jk(π/4) e^{-iπσ_j^x/2} e^{-iπσ_k^x/2}
/// ```
pub fn cps_sequence() -> PulseSequence {
    use PulseStep::*;
    let steps = vec![
        GlobalPhase { theta: PI / 4.0 },
        Rotation { qubit: Qubit::J, axis: N_J, angle: PI / 3.0 },
        Rotation { qubit: Qubit::K, axis: N_K, angle: PI / 3.0 },
        Joint { phi: PI / 4.0 },
        Rotation { qubit: Qubit::J, axis: Y, angle: -PI / 2.0 },
        Joint { phi: PI / 4.0 },
        Rotation { qubit: Qubit::J, axis: X, angle: -PI / 2.0 },
        Rotation { qubit: Qubit::K, axis: X, angle: -PI / 2.0 },
    ];
    PulseSequence {
        label: "cps-literal".into(),
        steps,
    }
}

/// Literal conditional-phase sequence and its composed matrix.
pub fn compile_cps() -> (PulseSequence, ComplexMatrix) {
    let seq = cps_sequence();
    let u = seq.compile().expect("built-in sequence is valid");
    (seq, u)
}

/// `diag(1, 1, 1, -1)` in the `{vv, ve, ev, ee}` basis.
pub fn cps_target() -> ComplexMatrix {
    ComplexMatrix::diag_real(&[1.0, 1.0, 1.0, -1.0])
}
