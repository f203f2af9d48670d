use serde::Serialize;

use crate::catkit::VarietyTag;
use crate::error::{Error, Result};
use crate::parse::field_name;
use crate::sample::SampleConfig;
use crate::scalars::is_square_free;

pub const DEFAULT_SEED: u64 = 42;

/// Everything a suite run depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    /// `d` for ℚ(√d); `None` is ℚ.
    pub field: Option<i64>,
    pub variety: VarietyTag,
    pub seed: u64,
    /// Overrides the suite's default case count.
    pub samples: Option<usize>,
    pub bounds: SampleConfig,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            field: None,
            variety: VarietyTag::AssocAlgebra,
            seed: DEFAULT_SEED,
            samples: None,
            bounds: SampleConfig::default(),
        }
    }
}

#[derive(Serialize)]
struct Echo {
    field: String,
    variety: VarietyTag,
    seed: u64,
    samples: Option<usize>,
    max_degree: usize,
    max_terms: usize,
    max_word_len: usize,
    max_gens: u32,
    exp_window: (i64, i64),
}

impl SessionConfig {
    pub fn with_seed(seed: u64) -> Self {
        SessionConfig { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(d) = self.field {
            if d == 1 || !is_square_free(d) {
                return Err(Error::InvalidField(format!("{d} is not a square-free integer other than 1")));
            }
        }
        if self.samples == Some(0) {
            return Err(Error::Precondition("samples must be at least 1".into()));
        }
        let b = &self.bounds;
        if b.max_gens == 0 || b.max_terms == 0 || b.max_word_len == 0 || b.exp_window.0 > b.exp_window.1 {
            return Err(Error::Precondition("sampling bounds must be non-empty".into()));
        }
        Ok(())
    }

    pub fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    /// The sampling bounds with the session's field.
    pub fn sample_config(&self) -> SampleConfig {
        SampleConfig {
            sqrt: self.field,
            ..self.bounds.clone()
        }
    }

    pub fn echo(&self) -> serde_json::Value {
        let b = &self.bounds;
        serde_json::to_value(Echo {
            field: field_name(self.field),
            variety: self.variety,
            seed: self.seed,
            samples: self.samples,
            max_degree: b.max_degree,
            max_terms: b.max_terms,
            max_word_len: b.max_word_len,
            max_gens: b.max_gens,
            exp_window: b.exp_window,
        })
        .expect("config serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SessionConfig::default().validate().is_ok());
        let bad_field = SessionConfig { field: Some(8), ..Default::default() };
        assert!(matches!(bad_field.validate(), Err(Error::InvalidField(_))));
        let no_samples = SessionConfig { samples: Some(0), ..Default::default() };
        assert!(no_samples.validate().is_err());
    }

    #[test]
    fn echo_names_the_field() {
        let cfg = SessionConfig { field: Some(2), ..Default::default() };
        assert_eq!(cfg.echo()["field"], "Q(sqrt 2)");
        assert_eq!(cfg.echo()["seed"], 42);
    }
}
