//! Size limits shared by the group and cohomology layers.
//!
//! Defaults can be raised through the environment:
//! `MULTINORM_ORDER_CAP`, `MULTINORM_RANK_CAP`, `MULTINORM_DEGREE_CAP`.

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 10_000;
pub const DEFAULT_RANK_CAP: usize = 1 << 20;
/// Largest `|i|` for which a cochain space is built. Computing `H^i` needs
/// `C^{i+1}`, so cohomology is available for `|i| <= DEFAULT_DEGREE_CAP - 1`.
pub const DEFAULT_DEGREE_CAP: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub order: usize,
    pub rank: usize,
    pub degree: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { order: DEFAULT_ORDER_CAP, rank: DEFAULT_RANK_CAP, degree: DEFAULT_DEGREE_CAP }
    }
}

impl Caps {
    /// Defaults overridden by any of the environment variables that are set.
    pub fn from_env() -> Result<Caps> {
        let mut caps = Caps::default();
        if let Some(v) = read_var("MULTINORM_ORDER_CAP")? {
            caps.order = v;
        }
        if let Some(v) = read_var("MULTINORM_RANK_CAP")? {
            caps.rank = v;
        }
        if let Some(v) = read_var("MULTINORM_DEGREE_CAP")? {
            caps.degree = u32::try_from(v).map_err(|_| Error::InvalidInput("MULTINORM_DEGREE_CAP out of range".into()))?;
        }
        Ok(caps)
    }
}

fn read_var(name: &str) -> Result<Option<usize>> {
    match std::env::var(name) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidInput(format!("{name} must be a nonnegative integer, got `{s}`"))),
        Err(_) => Ok(None),
    }
}
