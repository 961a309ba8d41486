//! Size bounds for element scans and subgroup-lattice enumeration.

use crate::error::{GroupError, Result};

pub const DEFAULT_ELEMENT_BOUND: u64 = 1_000_000;
pub const DEFAULT_SUBGROUP_BOUND: u64 = 2000;

pub const ELEMENT_BOUND_ENV: &str = "EXTCLOSED_ELEMENT_BOUND";
pub const SUBGROUP_BOUND_ENV: &str = "EXTCLOSED_SUBGROUP_BOUND";

/// Bounds passed explicitly to every operation that enumerates elements or
/// subgroups. Two independent knobs: element scans run on large groups,
/// lattice enumeration only on small ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order whose elements may be enumerated.
    pub element_bound: u64,
    /// Largest group order whose full subgroup lattice may be enumerated.
    pub subgroup_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_bound: DEFAULT_ELEMENT_BOUND,
            subgroup_bound: DEFAULT_SUBGROUP_BOUND,
        }
    }
}

impl Limits {
    /// Defaults, overridden by `EXTCLOSED_ELEMENT_BOUND` / `EXTCLOSED_SUBGROUP_BOUND`.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Some(v) = read_env(ELEMENT_BOUND_ENV)? {
            limits.element_bound = v;
        }
        if let Some(v) = read_env(SUBGROUP_BOUND_ENV)? {
            limits.subgroup_bound = v;
        }
        Ok(limits)
    }

    pub(crate) fn check_elements(&self, what: &'static str, needed: u64) -> Result<()> {
        if needed > self.element_bound {
            return Err(GroupError::BoundExceeded {
                what,
                needed,
                bound: self.element_bound,
            });
        }
        Ok(())
    }

    pub(crate) fn check_lattice(&self, what: &'static str, needed: u64) -> Result<()> {
        if needed > self.subgroup_bound {
            return Err(GroupError::BoundExceeded {
                what,
                needed,
                bound: self.subgroup_bound,
            });
        }
        Ok(())
    }
}

fn read_env(name: &str) -> Result<Option<u64>> {
    match std::env::var(name) {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| GroupError::Parse(format!("{name}={s:?} is not a non-negative integer"))),
        Err(_) => Ok(None),
    }
}
