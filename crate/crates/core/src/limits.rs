use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size caps for the exponential parts of the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest carrier a product/function/module construction may produce.
    pub construct: usize,
    /// Largest carrier for operator search by morphism decomposition.
    pub search: usize,
    /// Largest carrier for the naive `n^n` operator filter.
    pub naive: usize,
    /// Largest heap whose truss products are enumerated.
    pub enumerate: usize,
    /// Largest truss whose canonical form is computed (`n!` relabelings).
    pub canonical: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { construct: 256, search: 6, naive: 4, enumerate: 4, canonical: 8 }
    }
}

pub(crate) fn ensure(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::SizeCapExceeded { size, cap })
    } else {
        Ok(())
    }
}
