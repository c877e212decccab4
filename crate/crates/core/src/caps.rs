use serde::{Deserialize, Serialize};

/// Size limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest ring on which ideal lattices and ring predicates are enumerated.
    pub ring: u64,
    /// Largest module whose elements may be listed.
    pub elements: u128,
    /// Largest free module `R^k` handled by explicit (table-backend) sets.
    pub ambient: u128,
    /// Largest candidate space for brute-force searches.
    pub search: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ring: 64,
            elements: 4096,
            ambient: 1 << 16,
            search: 1 << 22,
        }
    }
}
