use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
}

/// Caps and seeds shared by every decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest matrix whose determinant is expanded symbolically.
    pub max_symbolic_det_size: usize,
    /// Random points tried before falling back to symbolic elimination.
    pub witness_attempt_budget: usize,
    /// Polynomial terms allowed during one symbolic elimination.
    pub term_budget: u64,
    pub seed: u64,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_symbolic_det_size: 14,
            witness_attempt_budget: 1000,
            term_budget: 10_000_000,
            seed: 0,
            output_format: OutputFormat::Human,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.max_symbolic_det_size == 0 {
            return Err(Error::InvalidParameter("max_symbolic_det_size must be positive".into()));
        }
        if self.witness_attempt_budget == 0 {
            return Err(Error::InvalidParameter("witness_attempt_budget must be positive".into()));
        }
        if self.term_budget == 0 {
            return Err(Error::InvalidParameter("term_budget must be positive".into()));
        }
        Ok(())
    }
}
