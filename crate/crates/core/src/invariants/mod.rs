//! Exact integer invariants: independence number by branch and bound,
//! clique number, chromatic and clique-cover numbers by exact coloring,
//! adjacency spectrum, and small-n structural checks.

mod alpha;
mod coloring;
mod iso;
mod spectrum;

pub use alpha::{independence_number, AlphaResult, SearchOpts};
pub use coloring::{chromatic_number, clique_cover_number, ColorResult};
pub use iso::{
    are_isomorphic, automorphism_exists, check_edge_transitive, check_self_complementary,
    check_strongly_regular, check_vertex_transitive, IsoResult, Verdict,
};
pub use spectrum::{spectrum, Spectrum};

use crate::graph::{complement, Graph};
use serde::Serialize;

/// A verified independent set.
#[derive(Debug, Clone, Serialize)]
pub struct IndependentSetWitness {
    pub size: usize,
    pub vertices: Vec<usize>,
}

impl IndependentSetWitness {
    /// Re-verify pairwise non-adjacency in the target graph.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.vertices.len() != self.size {
            return false;
        }
        for (i, &u) in self.vertices.iter().enumerate() {
            if u >= g.n() {
                return false;
            }
            for &v in &self.vertices[i + 1..] {
                if u == v || g.adjacent(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Clique number via the independence number of the complement.
pub fn clique_number(g: &Graph, opts: &SearchOpts) -> AlphaResult {
    independence_number(&complement(g), opts)
}
