use crate::error::{BnError, Result};
use crate::network::TABLE_ARITY_CAP;

/// Caps on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest arity for which all 2^n states are enumerated.
    pub max_state_arity: usize,
    /// Largest arity for which all 3^n subspaces are enumerated.
    pub max_subspace_arity: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_state_arity: 20,
            max_subspace_arity: 14,
        }
    }
}

/// Hard ceiling for state enumeration regardless of configuration.
pub const STATE_ARITY_CEILING: usize = TABLE_ARITY_CAP;

/// Hard ceiling for subspace enumeration (3^18 bytes per table is already large).
pub const SUBSPACE_ARITY_CEILING: usize = 18;

impl Limits {
    pub(crate) fn check_states(&self, what: &'static str, arity: usize) -> Result<()> {
        let cap = self.max_state_arity.min(STATE_ARITY_CEILING);
        if arity > cap {
            return Err(BnError::Capacity { what, arity, cap });
        }
        Ok(())
    }

    pub(crate) fn check_subspaces(&self, what: &'static str, arity: usize) -> Result<()> {
        let cap = self.max_subspace_arity.min(SUBSPACE_ARITY_CEILING);
        if arity > cap {
            return Err(BnError::Capacity { what, arity, cap });
        }
        Ok(())
    }
}
