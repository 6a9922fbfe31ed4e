//! Maximum independent set by branch and bound.
//!
//! The search runs as a maximum-clique search on the complement with a
//! greedy-coloring upper bound (a clique cover of the residual graph in the
//! original's terms). Branching follows the color order with ties broken by
//! lowest vertex index, so results are deterministic across platforms. A
//! configurable time budget turns the exact search into a certified
//! lower-bound search: on expiry the incumbent is returned with
//! `optimal: false`.

use super::IndependentSetWitness;
use crate::bitset::{self, BitRow};
use crate::graph::{complement, Graph};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Default)]
pub struct SearchOpts {
    /// Wall-clock budget; `None` means run to optimality.
    pub budget: Option<Duration>,
}

impl SearchOpts {
    pub fn with_budget(budget: Duration) -> Self {
        SearchOpts {
            budget: Some(budget),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AlphaResult {
    pub size: usize,
    pub witness: IndependentSetWitness,
    /// False when the time budget expired first; the witness is then still a
    /// valid lower bound.
    pub optimal: bool,
}

/// Exact independence number with witness.
pub fn independence_number(g: &Graph, opts: &SearchOpts) -> AlphaResult {
    if g.n() == 0 {
        return AlphaResult {
            size: 0,
            witness: IndependentSetWitness {
                size: 0,
                vertices: Vec::new(),
            },
            optimal: true,
        };
    }
    let comp = complement(g);
    let (size, clique, optimal) = max_clique(&comp, opts);
    let mut vertices: Vec<usize> = clique;
    vertices.sort_unstable();
    let witness = IndependentSetWitness {
        size,
        vertices,
    };
    debug_assert!(witness.verify(g));
    AlphaResult {
        size,
        witness,
        optimal,
    }
}

struct Searcher<'a> {
    rows: &'a [BitRow],
    n: usize,
    best: Vec<usize>,
    current: Vec<usize>,
    deadline: Option<Instant>,
    nodes: u64,
    expired: bool,
}

/// Maximum clique on `g` with a greedy-coloring bound.
fn max_clique(g: &Graph, opts: &SearchOpts) -> (usize, Vec<usize>, bool) {
    let n = g.n();
    let mut s = Searcher {
        rows: g.rows(),
        n,
        best: greedy_clique(g),
        current: Vec::new(),
        deadline: opts.budget.map(|b| Instant::now() + b),
        nodes: 0,
        expired: false,
    };
    let mut p = bitset::full_row(n);
    p.truncate(bitset::words_for(n));
    s.expand(&p);
    let size = s.best.len();
    (size, s.best, !s.expired)
}

/// Deterministic greedy clique for the initial incumbent: repeatedly take
/// the candidate with the most candidate neighbors (lowest index on ties).
fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut p = bitset::full_row(n);
    p.truncate(bitset::words_for(n));
    let mut clique = Vec::new();
    while !bitset::is_empty(&p) {
        // most candidate neighbors; ascending iteration keeps the lowest
        // index on ties
        let mut best: Option<(usize, usize)> = None;
        for v in bitset::iter_ones(&p) {
            let deg = bitset::count(&bitset::and(&p, g.row(v)));
            if best.map(|(bd, _)| deg > bd).unwrap_or(true) {
                best = Some((deg, v));
            }
        }
        let (_, v) = best.unwrap();
        clique.push(v);
        bitset::and_assign(&mut p, g.row(v));
    }
    clique.sort_unstable();
    clique
}

impl<'a> Searcher<'a> {
    fn time_up(&mut self) -> bool {
        if self.expired {
            return true;
        }
        self.nodes += 1;
        if self.nodes % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.expired = true;
                }
            }
        }
        self.expired
    }

    fn expand(&mut self, p: &BitRow) {
        if self.time_up() {
            return;
        }
        if bitset::is_empty(p) {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        // greedy coloring of the candidate set in ascending vertex order;
        // color classes are independent sets of the residual graph
        let members: Vec<usize> = bitset::to_vec(p);
        let mut color_of = vec![0usize; members.len()];
        let mut class_rows: Vec<BitRow> = Vec::new();
        for (idx, &v) in members.iter().enumerate() {
            let mut c = 0;
            loop {
                if c == class_rows.len() {
                    class_rows.push(bitset::zero_row(self.n));
                }
                if !bitset::intersects(&class_rows[c], &self.rows[v]) {
                    bitset::set(&mut class_rows[c], v);
                    color_of[idx] = c + 1;
                    break;
                }
                c += 1;
            }
        }
        // process in color order descending, ties by descending index order
        // of appearance (classic Tomita scheme)
        let mut order: Vec<usize> = (0..members.len()).collect();
        order.sort_by_key(|&i| (color_of[i], members[i]));
        let mut p = p.clone();
        for &i in order.iter().rev() {
            let v = members[i];
            if !bitset::get(&p, v) {
                continue;
            }
            if self.current.len() + color_of[i] <= self.best.len() {
                return; // every remaining vertex has color <= this one
            }
            bitset::clear(&mut p, v);
            self.current.push(v);
            let next = bitset::and(&p, &self.rows[v]);
            self.expand(&next);
            self.current.pop();
            if self.expired {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::{strong_power, Caps};

    fn alpha(g: &Graph) -> usize {
        independence_number(g, &SearchOpts::default()).size
    }

    /// Exhaustive 2^n oracle for small graphs.
    pub fn alpha_brute_force(g: &Graph) -> usize {
        let n = g.n();
        assert!(n <= 24);
        let masks: Vec<u64> = (0..n)
            .map(|v| {
                let mut m = 0u64;
                for u in g.neighbors(v) {
                    m |= 1 << u;
                }
                m
            })
            .collect();
        let mut best = 0;
        for set in 0u64..(1 << n) {
            if set.count_ones() as usize <= best {
                continue;
            }
            let mut ok = true;
            let mut s = set;
            while s != 0 {
                let v = s.trailing_zeros() as usize;
                s &= s - 1;
                if masks[v] & set != 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                best = set.count_ones() as usize;
            }
        }
        best
    }

    #[test]
    fn known_values() {
        let caps = Caps::default();
        let petersen = families::make_kneser(5, 2, &caps).unwrap();
        assert_eq!(alpha(&petersen), 4);
        let t56 = families::make_tadpole(5, 6, &caps).unwrap();
        assert_eq!(alpha(&t56), 5);
        let e7 = families::make_empty(7, &caps).unwrap();
        assert_eq!(alpha(&e7), 7);
        let k9 = families::make_complete(9, &caps).unwrap();
        assert_eq!(alpha(&k9), 1);
    }

    #[test]
    fn witness_is_verified() {
        let caps = Caps::default();
        let g = families::make_kneser(5, 2, &caps).unwrap();
        let r = independence_number(&g, &SearchOpts::default());
        assert!(r.witness.verify(&g));
        assert_eq!(r.witness.size, 4);
        assert!(r.optimal);
    }

    #[test]
    fn odd_cycle_squares() {
        // alpha(C_{2k+1}^2) = k^2 + floor(k/2)
        let caps = Caps::default();
        for k in 2..=4u64 {
            let c = families::make_cycle(2 * k + 1, &caps).unwrap();
            let c2 = strong_power(&c, 2, &caps).unwrap();
            assert_eq!(alpha(&c2) as u64, k * k + k / 2);
        }
    }

    #[test]
    fn matches_brute_force_small() {
        let caps = Caps::default();
        for g in [
            families::make_cycle(7, &caps).unwrap(),
            families::make_kneser(5, 2, &caps).unwrap(),
            families::make_paley(13, &caps).unwrap(),
            families::make_tadpole(5, 4, &caps).unwrap(),
            families::make_path(9, &caps).unwrap(),
        ] {
            assert_eq!(alpha(&g), alpha_brute_force(&g));
        }
    }
}
