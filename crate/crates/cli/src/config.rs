use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use dotqubit_core::budget::BudgetInputs;
use dotqubit_core::model::{EffectiveQubit, LevelScheme, RegimeLimits};
use dotqubit_core::numerics::TimeGrid;

use crate::CliError;

/// Everything a run can be configured with. Every section is optional in
/// the JSON document and falls back to the defaults below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub budget: BudgetInputs,
    /// Three-level scheme for Raman-model runs.
    pub scheme: LevelScheme,
    /// Both qubits after eliminating `|ẽ⟩`, for cavity and exchange runs.
    pub effective: EffectiveQubit,
    /// Fock states kept for the cavity.
    pub cavity_dim: usize,
    /// Overrides the model's default grid of one period.
    pub grid: Option<TimeGrid>,
    /// Grid steps when `grid` is absent.
    pub steps: usize,
    pub regime: RegimeLimits,
    pub decohere: DecohereOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DecohereOptions {
    /// Drive coupling of the π pulse (meV).
    pub rabi_l: f64,
    /// Emission rates as multiples of the inverse pulse length.
    pub gamma_tau: Vec<f64>,
    pub n_steps: usize,
}

impl Default for DecohereOptions {
    fn default() -> Self {
        Self {
            rabi_l: 1e-4,
            gamma_tau: vec![0.0, 1e-4, 1e-3, 1e-2, 1e-1],
            n_steps: 400,
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        let mut scheme =
            LevelScheme::from_detunings(1.0, 1.0, 0.02, 0.02).expect("default scheme is valid");
        scheme.rabi_l = 1e-4;
        Self {
            budget: BudgetInputs::default(),
            scheme,
            effective: EffectiveQubit {
                omega_eff: 1e-3,
                delta_tilde: 1e-2,
            },
            cavity_dim: 3,
            grid: None,
            steps: 400,
            regime: RegimeLimits::default(),
            decohere: DecohereOptions::default(),
        }
    }
}

impl RunConfig {
    /// Defaults, overlaid with the file (if any), overlaid with `key.path=value`
    /// assignments. Unknown keys anywhere are rejected.
    pub fn load(path: Option<&Path>, sets: &[String]) -> Result<Self, CliError> {
        let mut doc = serde_json::to_value(RunConfig::default()).expect("defaults serialise");
        if let Some(p) = path {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            let file: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            merge(&mut doc, file);
        }
        for s in sets {
            apply_set(&mut doc, s)?;
        }
        let cfg: RunConfig =
            serde_json::from_value(doc).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.budget.validate()?;
        self.scheme.validate()?;
        if let Some(g) = &self.grid {
            g.validate()?;
        }
        if self.steps == 0 {
            return Err(CliError::Usage("config: `steps` must be at least 1".into()));
        }
        if self.cavity_dim == 0 {
            return Err(CliError::Usage("config: `cavity_dim` must be at least 1".into()));
        }
        if self.decohere.n_steps == 0 {
            return Err(CliError::Usage("config: `decohere.n_steps` must be at least 1".into()));
        }
        if !(self.decohere.rabi_l > 0.0) {
            return Err(CliError::Usage("config: `decohere.rabi_l` must be positive".into()));
        }
        if let Some(x) = self.decohere.gamma_tau.iter().find(|x| !(**x >= 0.0)) {
            return Err(CliError::Usage(format!(
                "config: `decohere.gamma_tau` entries must be non-negative, got {x}"
            )));
        }
        Ok(())
    }
}

fn merge(base: &mut Value, over: Value) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) if slot.is_object() && v.is_object() => merge(slot, v),
                    _ => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (b, o) => *b = o,
    }
}

/// `a.b.c=value`, with `value` read as JSON and otherwise as a string.
fn apply_set(doc: &mut Value, assignment: &str) -> Result<(), CliError> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("--set expects key=value, got `{assignment}`")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut slot = doc;
    let keys: Vec<&str> = path.split('.').collect();
    for (i, key) in keys.iter().enumerate() {
        if key.is_empty() {
            return Err(CliError::Usage(format!("--set: empty key in `{path}`")));
        }
        let obj = match slot {
            Value::Object(m) => m,
            Value::Null => {
                *slot = Value::Object(Default::default());
                slot.as_object_mut().unwrap()
            }
            _ => {
                return Err(CliError::Usage(format!(
                    "--set: `{}` is not a section",
                    keys[..i].join(".")
                )))
            }
        };
        if i + 1 == keys.len() {
            obj.insert(key.to_string(), value);
            return Ok(());
        }
        slot = obj.entry(key.to_string()).or_insert(Value::Null);
    }
    Ok(())
}
