//! Runtime knobs: factorization budget, primality rounds, tactic and filter
//! ordering.  Loadable from a simple `key=value` file; callers overlay CLI
//! flags on top.

use std::path::Path;

use thiserror::Error;

use crate::arith::{DEFAULT_MR_ROUNDS, DEFAULT_RHO_BUDGET};
use crate::chains::TacticKind;
use crate::conditions::ConditionKind;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: expected key=value, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for {key}: {value:?}")]
    BadValue { line: usize, key: String, value: String },
}

#[derive(Debug, Clone)]
pub struct KitConfig {
    /// Iteration cap for Pollard rho across one factorization call.
    pub factor_budget: u64,
    /// Miller-Rabin rounds for probabilistic primality beyond 2^64.
    pub mr_rounds: u32,
    /// Order in which elimination tactics run.
    pub tactic_order: Vec<TacticKind>,
    /// Filter pipeline selection and order; None means the default pipeline.
    pub conditions: Option<Vec<ConditionKind>>,
    /// Use the seven-factor theorem directly, or six plus the chain engine.
    pub omega_mode: OmegaMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaMode {
    /// Require omega(N) >= 7, citing the theorem as a black box.
    SevenTheorem,
    /// Require omega(N) >= 6 and eliminate six-factor candidates through
    /// the chain engine, re-deriving the theorem instead of assuming it.
    SixPlusChains,
}

impl Default for KitConfig {
    fn default() -> Self {
        KitConfig {
            factor_budget: DEFAULT_RHO_BUDGET,
            mr_rounds: DEFAULT_MR_ROUNDS,
            tactic_order: TacticKind::default_order().to_vec(),
            conditions: None,
            omega_mode: OmegaMode::SevenTheorem,
        }
    }
}

impl KitConfig {
    /// Parse a `key=value` config file.  Blank lines and `#` comments are
    /// ignored.  Recognized keys: factor_budget, mr_rounds, tactic_order
    /// (comma-separated), conditions (comma-separated), omega_mode.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = KitConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let (key, value) = stripped.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line,
                text: raw.to_string(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |k: &str, v: &str| ConfigError::BadValue {
                line,
                key: k.to_string(),
                value: v.to_string(),
            };
            match key {
                "factor_budget" => {
                    cfg.factor_budget = value.parse().map_err(|_| bad(key, value))?;
                }
                "mr_rounds" => {
                    cfg.mr_rounds = value.parse().map_err(|_| bad(key, value))?;
                }
                "tactic_order" => {
                    cfg.tactic_order = value
                        .split(',')
                        .map(|t| TacticKind::parse(t.trim()).ok_or_else(|| bad(key, value)))
                        .collect::<Result<_, _>>()?;
                }
                "conditions" => {
                    cfg.conditions = Some(
                        value
                            .split(',')
                            .map(|c| ConditionKind::parse(c.trim()).ok_or_else(|| bad(key, value)))
                            .collect::<Result<_, _>>()?,
                    );
                }
                "omega_mode" => {
                    cfg.omega_mode = match value {
                        "seven" => OmegaMode::SevenTheorem,
                        "six-plus-chains" => OmegaMode::SixPlusChains,
                        _ => return Err(bad(key, value)),
                    };
                }
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })
                }
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_values() {
        let dir = std::env::temp_dir();
        let path = dir.join("solitary_kit_config_test.conf");
        std::fs::write(
            &path,
            "# comment\nfactor_budget = 1234\nmr_rounds=8\ntactic_order = fermat,squeeze\nomega_mode = six-plus-chains\n",
        )
        .unwrap();
        let cfg = KitConfig::from_file(&path).unwrap();
        assert_eq!(cfg.factor_budget, 1234);
        assert_eq!(cfg.mr_rounds, 8);
        assert_eq!(
            cfg.tactic_order,
            vec![TacticKind::Fermat, TacticKind::AbundancySqueeze]
        );
        assert_eq!(cfg.omega_mode, OmegaMode::SixPlusChains);
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn rejects_unknown_keys() {
        let dir = std::env::temp_dir();
        let path = dir.join("solitary_kit_config_bad.conf");
        std::fs::write(&path, "no_such_key=1\n").unwrap();
        assert!(matches!(
            KitConfig::from_file(&path),
            Err(ConfigError::UnknownKey { .. })
        ));
        std::fs::remove_file(&path).ok();
    }
}
