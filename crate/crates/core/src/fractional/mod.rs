//! Fractional graph invariants by exact-rational linear programming over
//! explicitly enumerated maximal cliques and independent sets.
//!
//! Only maximal sets enter the LPs: any feasible weighting constrained by a
//! non-maximal set is also constrained by a maximal superset, so the optima
//! agree (validated against an all-subsets oracle in the test suite). Each
//! invariant is computed from both its packing and covering formulation and
//! the two exact optima are required to coincide.

mod cliques;
pub mod simplex;

pub use cliques::{maximal_cliques, maximal_independent_sets, DEFAULT_ENUM_CAP};
pub use simplex::{LinearProgram, LpSolution, Sense};

use crate::bitset::{self, BitRow};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::graph::{complement, Graph};
use crate::invariants::{independence_number, SearchOpts};
use num_traits::{One, Zero};

/// Result of a fractional invariant computation: the exact optimum plus the
/// optimal weightings of both the vertex (packing) side and the set
/// (covering) side.
#[derive(Debug, Clone)]
pub struct FractionalResult {
    pub value: Rat,
    /// Packing side: one weight per vertex.
    pub vertex_weights: Vec<Rat>,
    /// Covering side: weight per enumerated set (parallel to `sets`).
    pub set_weights: Vec<Rat>,
    /// The sets the covering LP ranged over.
    pub sets: Vec<BitRow>,
}

impl FractionalResult {
    /// Covering weights serialized as {set: "p/q"} pairs with sorted vertex
    /// lists as keys.
    pub fn cover_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (set, w) in self.sets.iter().zip(&self.set_weights) {
            if w.is_zero() {
                continue;
            }
            let key = format!(
                "{{{}}}",
                bitset::to_vec(set)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            map.insert(key, serde_json::Value::String(w.to_string()));
        }
        serde_json::Value::Object(map)
    }
}

fn packing_lp(n: usize, sets: &[BitRow]) -> LinearProgram {
    LinearProgram {
        maximize: true,
        objective: vec![Rat::one(); n],
        rows: sets
            .iter()
            .map(|s| {
                let coeffs: Vec<Rat> = (0..n)
                    .map(|v| {
                        if bitset::get(s, v) {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect();
                (coeffs, Sense::Le, Rat::one())
            })
            .collect(),
    }
}

fn covering_lp(n: usize, sets: &[BitRow]) -> LinearProgram {
    LinearProgram {
        maximize: false,
        objective: vec![Rat::one(); sets.len()],
        rows: (0..n)
            .map(|v| {
                let coeffs: Vec<Rat> = sets
                    .iter()
                    .map(|s| {
                        if bitset::get(s, v) {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect();
                (coeffs, Sense::Ge, Rat::one())
            })
            .collect(),
    }
}

fn solve_pair(g: &Graph, sets: Vec<BitRow>) -> Result<FractionalResult> {
    let n = g.n();
    if n == 0 {
        return Ok(FractionalResult {
            value: Rat::zero(),
            vertex_weights: Vec::new(),
            set_weights: Vec::new(),
            sets,
        });
    }
    let primal = simplex::solve(&packing_lp(n, &sets))?;
    let dual = simplex::solve(&covering_lp(n, &sets))?;
    if primal.value != dual.value {
        return Err(Error::NoConvergence(format!(
            "exact LP strong duality violated: packing {} vs covering {}",
            primal.value, dual.value
        )));
    }
    Ok(FractionalResult {
        value: primal.value,
        vertex_weights: primal.x,
        set_weights: dual.x,
        sets,
    })
}

/// Fractional independence number: the packing LP over maximal cliques,
/// verified against its covering dual (fractional clique cover).
pub fn fractional_independence_number(g: &Graph, enum_cap: usize) -> Result<FractionalResult> {
    let cliques = maximal_cliques(g, enum_cap)?;
    solve_pair(g, cliques)
}

/// Fractional chromatic number: the covering LP over maximal independent
/// sets, verified against its packing dual (fractional clique number).
pub fn fractional_chromatic_number(g: &Graph, enum_cap: usize) -> Result<FractionalResult> {
    let sets = maximal_independent_sets(g, enum_cap)?;
    solve_pair(g, sets)
}

/// Universality evidence: the verdict together with both compared values.
#[derive(Debug, Clone)]
pub struct UniversalityEvidence {
    pub universal: bool,
    pub alpha: usize,
    pub alpha_fractional: Rat,
}

/// A graph is universal exactly when its independence number equals its
/// fractional independence number.
pub fn is_universal(g: &Graph, enum_cap: usize, opts: &SearchOpts) -> Result<UniversalityEvidence> {
    let alpha = independence_number(g, opts);
    if !alpha.optimal {
        return Err(Error::NoConvergence(
            "independence number search timed out; cannot decide universality".into(),
        ));
    }
    let af = fractional_independence_number(g, enum_cap)?;
    let universal = Rat::from_integer(alpha.size.into()) == af.value;
    Ok(UniversalityEvidence {
        universal,
        alpha: alpha.size,
        alpha_fractional: af.value,
    })
}

/// chi_f(g) computed through the complement identity; used as a cross-check
/// against the direct covering formulation.
pub fn fractional_chromatic_via_complement(g: &Graph, enum_cap: usize) -> Result<Rat> {
    Ok(fractional_independence_number(&complement(g), enum_cap)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::families;
    use crate::graph::{strong_product, Caps};

    fn alpha_f(g: &Graph) -> Rat {
        fractional_independence_number(g, DEFAULT_ENUM_CAP)
            .unwrap()
            .value
    }

    fn chi_f(g: &Graph) -> Rat {
        fractional_chromatic_number(g, DEFAULT_ENUM_CAP)
            .unwrap()
            .value
    }

    #[test]
    fn known_fractional_values() {
        let caps = Caps::default();
        let c5 = families::make_cycle(5, &caps).unwrap();
        assert_eq!(alpha_f(&c5), rat(5, 2));
        assert_eq!(chi_f(&c5), rat(5, 2));

        let petersen = families::make_kneser(5, 2, &caps).unwrap();
        assert_eq!(alpha_f(&petersen), rat_int(5));
        assert_eq!(chi_f(&petersen), rat(5, 2));

        let p4 = families::make_path(4, &caps).unwrap();
        assert_eq!(alpha_f(&p4), rat_int(2));

        let k7 = families::make_complete(7, &caps).unwrap();
        assert_eq!(chi_f(&k7), rat_int(7));
    }

    #[test]
    fn chi_f_matches_complement_route() {
        let caps = Caps::default();
        for g in [
            families::make_cycle(5, &caps).unwrap(),
            families::make_kneser(5, 2, &caps).unwrap(),
            families::make_tadpole(3, 4, &caps).unwrap(),
            families::make_paley(9, &caps).unwrap(),
        ] {
            assert_eq!(
                chi_f(&g),
                fractional_chromatic_via_complement(&g, DEFAULT_ENUM_CAP).unwrap()
            );
        }
    }

    #[test]
    fn universality() {
        let caps = Caps::default();
        let opts = SearchOpts::default();
        for l in 1..=12u64 {
            let p = families::make_path(l, &caps).unwrap();
            assert!(
                is_universal(&p, DEFAULT_ENUM_CAP, &opts).unwrap().universal,
                "path {l}"
            );
        }
        let c6 = families::make_cycle(6, &caps).unwrap();
        assert!(is_universal(&c6, DEFAULT_ENUM_CAP, &opts).unwrap().universal);
        let petersen = families::make_kneser(5, 2, &caps).unwrap();
        let ev = is_universal(&petersen, DEFAULT_ENUM_CAP, &opts).unwrap();
        assert!(!ev.universal);
        assert_eq!(ev.alpha, 4);
        assert_eq!(ev.alpha_fractional, rat_int(5));
    }

    #[test]
    fn multiplicativity_and_mixed_bound() {
        let caps = Caps::default();
        let opts = SearchOpts::default();
        let c5 = families::make_cycle(5, &caps).unwrap();
        let p4 = families::make_path(4, &caps).unwrap();
        let pairs = [(&c5, &c5), (&c5, &p4), (&p4, &p4)];
        for (g, h) in pairs {
            let prod = strong_product(g, h, &caps).unwrap();
            assert_eq!(alpha_f(&prod), alpha_f(g) * alpha_f(h));
            // alpha(g x h) <= alpha_f(g) * alpha(h)
            let a_prod = independence_number(&prod, &opts).size;
            let a_h = independence_number(h, &opts).size;
            assert!(Rat::from_integer(a_prod.into()) <= alpha_f(g) * rat_int(a_h as i64));
        }
    }

    #[test]
    fn vertex_transitive_equality() {
        // alpha_f = n / omega for vertex-transitive graphs
        let caps = Caps::default();
        let opts = SearchOpts::default();
        for g in [
            families::make_cycle(5, &caps).unwrap(),
            families::make_cycle(7, &caps).unwrap(),
            families::make_kneser(5, 2, &caps).unwrap(),
            families::make_paley(13, &caps).unwrap(),
        ] {
            assert!(g.props().vertex_transitive);
            let omega = crate::invariants::clique_number(&g, &opts).size;
            assert_eq!(
                alpha_f(&g),
                rat(g.n() as i64, omega as i64),
                "graph on {} vertices",
                g.n()
            );
        }
    }

    #[test]
    fn maximality_is_sufficient() {
        // LP over maximal cliques == LP over all nonempty cliques (n <= 12)
        let caps = Caps::default();
        for g in [
            families::make_cycle(5, &caps).unwrap(),
            families::make_tadpole(3, 4, &caps).unwrap(),
            families::make_kneser(4, 2, &caps).unwrap(),
            families::make_complete(5, &caps).unwrap(),
            families::make_paley(9, &caps).unwrap(),
        ] {
            let n = g.n();
            assert!(n <= 12);
            let mut all_cliques = Vec::new();
            'subsets: for set in 1u64..(1 << n) {
                let members: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
                for (i, &u) in members.iter().enumerate() {
                    for &v in &members[i + 1..] {
                        if !g.adjacent(u, v) {
                            continue 'subsets;
                        }
                    }
                }
                let mut row = bitset::zero_row(n);
                for &v in &members {
                    bitset::set(&mut row, v);
                }
                all_cliques.push(row);
            }
            let via_all = simplex::solve(&packing_lp(n, &all_cliques)).unwrap().value;
            assert_eq!(via_all, alpha_f(&g));
        }
    }

    #[test]
    fn cover_weights_are_a_fractional_cover() {
        let g = families::make_cycle(5, &Caps::default()).unwrap();
        let r = fractional_independence_number(&g, DEFAULT_ENUM_CAP).unwrap();
        // every vertex covered with total weight >= 1
        for v in 0..g.n() {
            let total: Rat = r
                .sets
                .iter()
                .zip(&r.set_weights)
                .filter(|(s, _)| bitset::get(s, v))
                .map(|(_, w)| w.clone())
                .sum();
            assert!(total >= Rat::one());
        }
        let json = r.cover_json();
        assert!(json.is_object());
    }
}
