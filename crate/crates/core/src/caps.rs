//! Enumeration caps shared by the checkers.

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "REGRETLAB_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest generated sigma-algebra, in events.
    pub sigma_events: usize,
    /// Largest number of plans a tree may induce.
    pub plans: usize,
    /// Menu subsets enumerated exhaustively before switching to seeded sampling.
    pub menu_subsets: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            sigma_events: 4096,
            plans: 20_000,
            menu_subsets: 1 << 12,
        }
    }
}

impl Caps {
    /// Parses `key=value` pairs separated by commas, e.g. `plans=50000,sigma=8192`.
    /// Unspecified keys keep their defaults.
    pub fn parse(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap entry `{part}` is not key=value")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cap value `{v}` is not an integer")))?;
            match k.trim() {
                "sigma" | "sigma_events" => caps.sigma_events = v,
                "plans" => caps.plans = v,
                "subsets" | "menu_subsets" => caps.menu_subsets = v,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }

    pub fn from_env() -> Result<Caps> {
        match std::env::var(ENV_VAR) {
            Ok(s) => Caps::parse(&s),
            Err(_) => Ok(Caps::default()),
        }
    }
}
