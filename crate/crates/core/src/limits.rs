//! Bounds for every brute-force search in the crate.

use crate::graph::DEFAULT_AUTOMORPHISM_VERTEX_BOUND;
use crate::groups::DEFAULT_HOM_SEARCH_BOUND;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count for graph automorphism enumeration.
    pub automorphism_vertices: usize,
    /// Candidate generator-image assignments per homomorphism search.
    pub hom_search: u128,
    /// Cochains visited when enumerating `H^1` or boundary data.
    pub enumeration: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            automorphism_vertices: DEFAULT_AUTOMORPHISM_VERTEX_BOUND,
            hom_search: DEFAULT_HOM_SEARCH_BOUND,
            enumeration: 10_000_000,
        }
    }
}

impl Limits {
    /// Same bound for every numeric search (vertex bound unchanged).
    pub fn with_search_bound(bound: u128) -> Self {
        Self {
            hom_search: bound,
            enumeration: bound,
            ..Self::default()
        }
    }
}
