use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::pulse::{JointConvention, PulseSequence, PulseStep};
use crate::ComplexMatrix;

/// Largest entry-wise deviation, after removing the optimal global phase,
/// that still counts as a match.
pub const VERIFY_TOL: f64 = 1e-8;

/// `|tr(T† U)|² / d²`.
pub fn fidelity(target: &ComplexMatrix, u: &ComplexMatrix) -> Result<f64> {
    check_dims(target, u)?;
    let d = target.rows() as f64;
    Ok((&target.adjoint() * u).trace().norm_sqr() / (d * d))
}

fn check_dims(target: &ComplexMatrix, u: &ComplexMatrix) -> Result<()> {
    if !target.is_square() || target.rows() != u.rows() || target.cols() != u.cols() {
        return Err(Error::Dimension(format!(
            "target is {}x{}, gate is {}x{}",
            target.rows(),
            target.cols(),
            u.rows(),
            u.cols()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub fidelity: f64,
    /// `arg tr(T† U)`: `U ≈ e^{iθ} T`.
    pub optimal_phase: f64,
    pub max_deviation: f64,
    pub passed: bool,
    pub tolerance: f64,
}

pub fn verify_matrix(u: &ComplexMatrix, target: &ComplexMatrix) -> Result<VerificationReport> {
    check_dims(target, u)?;
    let tr = (&target.adjoint() * u).trace();
    let d = target.rows() as f64;
    let phase = tr.arg();
    let aligned = target.scale(crate::C64::from_polar(1.0, phase));
    let max_deviation = (u - &aligned).max_abs();
    Ok(VerificationReport {
        fidelity: tr.norm_sqr() / (d * d),
        optimal_phase: phase,
        max_deviation,
        passed: max_deviation <= VERIFY_TOL,
        tolerance: VERIFY_TOL,
    })
}

pub fn verify_sequence(seq: &PulseSequence, target: &ComplexMatrix) -> Result<VerificationReport> {
    verify_matrix(&seq.compile()?, target)
}

/// Which modifications of a base sequence the variant search may make.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchSpace {
    /// Flip the sign of any step's angle, and either exchange convention.
    #[default]
    Signs,
    /// As `Signs`, and additionally halve any single-qubit rotation angle
    /// (rotations written with spin-½ operators instead of Pauli matrices).
    SignsAndHalfAngles,
}

impl SearchSpace {
    fn factors(self, step: &PulseStep) -> &'static [f64] {
        match (self, step) {
            (SearchSpace::SignsAndHalfAngles, PulseStep::Rotation { .. }) => &[1.0, -1.0, 0.5, -0.5],
            _ => &[1.0, -1.0],
        }
    }
}

pub const MAX_SEARCH_STEPS: usize = 10;

/// One candidate of the variant search: per-step angle multipliers and the
/// exchange convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variant {
    pub factors: Vec<f64>,
    pub convention: JointConvention,
    pub fidelity: f64,
}

impl Variant {
    pub fn is_unmodified(&self) -> bool {
        self.convention == JointConvention::Literal && self.factors.iter().all(|&f| f == 1.0)
    }

    /// Describes the modified steps, e.g. `step 7 ×-0.5`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, &f)| f != 1.0)
            .map(|(i, f)| format!("step {i} ×{f}"))
            .collect();
        if self.convention != JointConvention::Literal {
            parts.push("physical exchange sign".into());
        }
        if parts.is_empty() {
            "unmodified".into()
        } else {
            parts.join(", ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub space: SearchSpace,
    pub best_sequence: PulseSequence,
    pub best: Variant,
    pub report: VerificationReport,
    /// Every candidate, by decreasing fidelity; ties (1e-12) keep enumeration order.
    pub ranked: Vec<Variant>,
}

impl SearchResult {
    pub fn candidates(&self) -> usize {
        self.ranked.len()
    }
}

/// Exhaustive search over angle modifications of `base` for the variant
/// closest to `target` up to global phase.
pub fn search_variants(
    base: &PulseSequence,
    target: &ComplexMatrix,
    space: SearchSpace,
) -> Result<SearchResult> {
    base.validate()?;
    if base.steps.len() > MAX_SEARCH_STEPS {
        return Err(Error::param(
            "steps",
            format!("search is limited to {MAX_SEARCH_STEPS} steps, got {}", base.steps.len()),
        ));
    }
    check_dims(target, &ComplexMatrix::identity(4))?;

    let conventions = [JointConvention::Literal, JointConvention::Physical];
    let options: Vec<&[f64]> = base.steps.iter().map(|s| space.factors(s)).collect();
    let mut ranked = Vec::new();
    for conv in conventions {
        // per-step matrices for every allowed factor
        let mats: Vec<Vec<ComplexMatrix>> = base
            .steps
            .iter()
            .zip(&options)
            .map(|(s, fs)| fs.iter().map(|&f| s.scaled(f).matrix(conv)).collect())
            .collect::<Result<_>>()?;
        let mut choice = vec![0usize; base.steps.len()];
        loop {
            let u = choice
                .iter()
                .enumerate()
                .fold(ComplexMatrix::identity(4), |acc, (i, &c)| &acc * &mats[i][c]);
            ranked.push(Variant {
                factors: choice.iter().zip(&options).map(|(&c, fs)| fs[c]).collect(),
                convention: conv,
                fidelity: fidelity(target, &u)?,
            });
            if !advance(&mut choice, &options) {
                break;
            }
        }
    }
    // fidelities within 1e-12 count as ties so the unmodified base wins them
    ranked.sort_by_key(|v| std::cmp::Reverse((v.fidelity * 1e12).round() as i64));
    let best = ranked[0].clone();
    let best_sequence = apply_variant(base, &best)?;
    let report = verify_matrix(&best_sequence.compile_with(best.convention)?, target)?;
    Ok(SearchResult {
        space,
        best_sequence,
        best,
        report,
        ranked,
    })
}

/// Odometer increment with the last step varying fastest.
fn advance(choice: &mut [usize], options: &[&[f64]]) -> bool {
    for i in (0..choice.len()).rev() {
        choice[i] += 1;
        if choice[i] < options[i].len() {
            return true;
        }
        choice[i] = 0;
    }
    false
}

/// `base` with the variant's angle factors applied. The convention is not
/// part of the sequence; compile with `variant.convention`.
pub fn apply_variant(base: &PulseSequence, variant: &Variant) -> Result<PulseSequence> {
    if variant.factors.len() != base.steps.len() {
        return Err(Error::Dimension("variant does not match sequence length".into()));
    }
    let steps = base
        .steps
        .iter()
        .zip(&variant.factors)
        .map(|(s, &f)| s.scaled(f))
        .collect();
    let label = if variant.is_unmodified() {
        base.label.clone()
    } else {
        format!("{}-variant", base.label)
    };
    PulseSequence::new(label, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::pulse::{compile_cps, cps_sequence, cps_target, Qubit};
    use std::f64::consts::PI;

    #[test]
    fn self_comparison() {
        let (seq, u) = compile_cps();
        let r = verify_sequence(&seq, &u).unwrap();
        assert!((r.fidelity - 1.0).abs() < 1e-12);
        assert!(r.passed);
    }

    #[test]
    fn cps_against_identity() {
        let f = fidelity(&cps_target(), &ComplexMatrix::identity(4)).unwrap();
        assert!((f - 0.25).abs() < 1e-15);
    }

    #[test]
    fn global_phase_is_quotiented() {
        let t = cps_target();
        let u = t.scale(crate::C64::from_polar(1.0, 0.7));
        let r = verify_matrix(&u, &t).unwrap();
        assert!(r.passed);
        assert!((r.optimal_phase - 0.7).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(fidelity(&ComplexMatrix::identity(2), &ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn literal_sequence_outcome() {
        let (_, u) = compile_cps();
        let r = verify_matrix(&u, &cps_target()).unwrap();
        assert!(!r.passed);
        assert!((r.fidelity - 0.25).abs() < 1e-12);
    }

    #[test]
    fn search_returns_base_when_matched() {
        let (seq, u) = compile_cps();
        let res = search_variants(&seq, &u, SearchSpace::Signs).unwrap();
        assert!(res.best.is_unmodified());
        assert!((res.best.fidelity - 1.0).abs() < 1e-12);
        assert_eq!(res.candidates(), 512);
    }

    #[test]
    fn search_recovers_negated_step() {
        let seq = cps_sequence();
        let mut flipped = seq.clone();
        flipped.steps[4] = flipped.steps[4].scaled(-1.0);
        let target = flipped.compile().unwrap();
        let res = search_variants(&seq, &target, SearchSpace::Signs).unwrap();
        assert!(res.report.passed);
        assert!(res.best.fidelity > 1.0 - 1e-10);
    }

    #[test]
    fn sign_search_on_literal_sequence() {
        let res = search_variants(&cps_sequence(), &cps_target(), SearchSpace::Signs).unwrap();
        assert!(res.best.fidelity < 1.0 - 1e-10);
    }

    #[test]
    fn half_angle_search_on_literal_sequence() {
        let res =
            search_variants(&cps_sequence(), &cps_target(), SearchSpace::SignsAndHalfAngles)
                .unwrap();
        assert_eq!(res.candidates(), 2 * 4usize.pow(5) * 2usize.pow(3));
        assert!(res.report.passed, "{}", res.best.describe());
    }

    #[test]
    fn search_limit() {
        let step = PulseStep::Rotation { qubit: Qubit::J, axis: [1.0, 0.0, 0.0], angle: PI };
        let seq = PulseSequence::new("long", vec![step; 11]).unwrap();
        assert!(search_variants(&seq, &cps_target(), SearchSpace::Signs).is_err());
    }
}
