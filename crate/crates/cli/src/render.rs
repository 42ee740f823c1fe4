use lpa::ZSeed;
use serde::{Deserialize, Serialize};

use crate::context::Failure;

/// A seed as shown to users: all algebra as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedSeed {
    pub key: String,
    pub cluster: Vec<String>,
    pub exchange: Vec<String>,
    pub hats: Vec<String>,
    pub orbit: Option<String>,
}

pub fn render(seed: &ZSeed, orbit: Option<String>) -> RenderedSeed {
    let names = seed.table().cluster_names();
    RenderedSeed {
        key: seed.canonical_key().hex(),
        cluster: seed.cluster_strings(),
        exchange: seed.exchange_strings(names),
        hats: seed.hat_strings(names),
        orbit,
    }
}

/// 0-based slot from a 1-based number or an initial cluster name.
pub fn parse_slot(seed: &ZSeed, s: &str) -> Result<usize, Failure> {
    let rank = seed.rank();
    if let Ok(k) = s.parse::<usize>() {
        if (1..=rank).contains(&k) {
            return Ok(k - 1);
        }
        return Err(Failure::Usage(format!("slot {k} out of range 1..={rank}")));
    }
    seed.table()
        .cluster_names()
        .iter()
        .position(|n| n == s)
        .ok_or_else(|| Failure::Usage(format!("unknown slot {s:?}")))
}
