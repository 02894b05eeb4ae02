//! Solver caps, overridable through environment variables.
//!
//! | variable                  | default     | guards                         |
//! |---------------------------|-------------|--------------------------------|
//! | `AGREEABLE_RESAMPLE_CAP`  | 64          | randomized ordinal draws       |
//! | `AGREEABLE_BLOCK_CAP`     | 1000000     | covering-design block count    |
//! | `AGREEABLE_BRUTE_CAP`     | 24          | brute-force item count         |
//! | `AGREEABLE_DP_AGENT_CAP`  | 4           | dynamic-program agent count    |
//! | `AGREEABLE_DP_MEMORY_CAP` | 200000000   | dense-equivalent DP table size |

use std::str::FromStr;

use anyhow::{Context, Result};

use agreeable_core::additive::{DEFAULT_BRUTE_CAP, DEFAULT_DP_AGENT_CAP, DEFAULT_DP_MEMORY_CAP};
use agreeable_core::oracle::DEFAULT_BLOCK_CAP;
use agreeable_core::ordinal::DEFAULT_RESAMPLE_CAP;

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub resample: u32,
    pub blocks: u64,
    pub brute_items: u32,
    pub dp_agents: u32,
    pub dp_memory: u64,
}

fn from_env<T: FromStr>(name: &str, default: T) -> Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    match std::env::var(name) {
        Ok(raw) => raw
            .trim()
            .parse()
            .with_context(|| format!("bad value for {name}: {raw:?}")),
        Err(_) => Ok(default),
    }
}

impl Caps {
    pub fn from_env() -> Result<Self> {
        Ok(Caps {
            resample: from_env("AGREEABLE_RESAMPLE_CAP", DEFAULT_RESAMPLE_CAP)?,
            blocks: from_env("AGREEABLE_BLOCK_CAP", DEFAULT_BLOCK_CAP)?,
            brute_items: from_env("AGREEABLE_BRUTE_CAP", DEFAULT_BRUTE_CAP)?,
            dp_agents: from_env("AGREEABLE_DP_AGENT_CAP", DEFAULT_DP_AGENT_CAP)?,
            dp_memory: from_env("AGREEABLE_DP_MEMORY_CAP", DEFAULT_DP_MEMORY_CAP)?,
        })
    }
}
