//! Size guards for the dense representations.

use crate::error::{Error, Result};

/// Name of the environment variable that overrides every guard at once.
pub const MAX_N_ENV: &str = "CLIFSAT_MAX_N";

/// Upper bounds on the variable count accepted by each dense backend.
///
/// A truth table over `n` variables holds `2^n` entries and a Clifford
/// matrix `4^n`, so every backend refuses inputs above its limit instead of
/// trying to allocate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Bit-vector idempotents (`IdemSet`).
    pub idem_max_n: u32,
    /// Integer coefficient tables (`TableElem`, signed-sum reference checks).
    pub table_max_n: u32,
    /// Dense Clifford matrices.
    pub clifford_max_n: u32,
    /// Exhaustive enumeration oracle.
    pub oracle_max_n: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            idem_max_n: 26,
            table_max_n: 20,
            clifford_max_n: 7,
            oracle_max_n: 24,
        }
    }
}

impl Limits {
    /// Every guard set to the same value.
    pub fn uniform(max_n: u32) -> Self {
        Limits {
            idem_max_n: max_n,
            table_max_n: max_n,
            clifford_max_n: max_n,
            oracle_max_n: max_n,
        }
    }

    /// Defaults, unless `CLIFSAT_MAX_N` holds a valid integer.
    pub fn from_env() -> Self {
        match std::env::var(MAX_N_ENV) {
            Ok(v) => match v.trim().parse::<u32>() {
                Ok(n) => Limits::uniform(n),
                Err(_) => {
                    log::warn!("ignoring unparsable {MAX_N_ENV}={v:?}");
                    Limits::default()
                }
            },
            Err(_) => Limits::default(),
        }
    }
}

pub(crate) fn check(what: &'static str, n: u32, limit: u32) -> Result<()> {
    // 2^n must also fit the index type
    if n > limit || n >= usize::BITS - 1 {
        return Err(Error::GuardLimit { what, n, limit });
    }
    Ok(())
}
