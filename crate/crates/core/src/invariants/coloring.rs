//! Exact graph coloring by iterative deepening over the color count with a
//! DSATUR-ordered backtracking feasibility search.

use super::{clique_number, SearchOpts};
use crate::error::{Error, Result};
use crate::graph::{complement, Graph};

#[derive(Debug, Clone)]
pub struct ColorResult {
    pub count: usize,
    /// Color classes as vertex lists (a partition into independent sets).
    pub classes: Vec<Vec<usize>>,
}

/// Exact chromatic number; `cap` bounds the order of graphs accepted for
/// exact search (default 64 at the call sites).
pub fn chromatic_number(g: &Graph, cap: usize, opts: &SearchOpts) -> Result<ColorResult> {
    if g.n() > cap {
        return Err(Error::resource(
            "chromatic number order",
            cap as u64,
            g.n() as u64,
        ));
    }
    if g.n() == 0 {
        return Ok(ColorResult {
            count: 0,
            classes: Vec::new(),
        });
    }
    let lower = clique_number(g, opts).size;
    let (upper, greedy) = greedy_coloring(g);
    for k in lower..upper {
        if let Some(assign) = k_colorable(g, k) {
            return Ok(ColorResult {
                count: k,
                classes: classes_from(&assign, k),
            });
        }
    }
    Ok(ColorResult {
        count: upper,
        classes: classes_from(&greedy, upper),
    })
}

/// Clique-cover number: chromatic number of the complement; the classes are
/// cliques of `g` covering every vertex.
pub fn clique_cover_number(g: &Graph, cap: usize, opts: &SearchOpts) -> Result<ColorResult> {
    chromatic_number(&complement(g), cap, opts)
}

fn classes_from(assign: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); k];
    for (v, &c) in assign.iter().enumerate() {
        classes[c].push(v);
    }
    classes.retain(|c| !c.is_empty());
    classes
}

/// Greedy coloring in descending-degree order; returns (count, assignment).
fn greedy_coloring(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut assign = vec![usize::MAX; n];
    let mut used = 0;
    for &v in &order {
        let mut taken = vec![false; used + 1];
        for u in g.neighbors(v) {
            if assign[u] != usize::MAX && assign[u] < taken.len() {
                taken[assign[u]] = true;
            }
        }
        let c = (0..).find(|&c| c >= taken.len() || !taken[c]).unwrap();
        assign[v] = c;
        used = used.max(c + 1);
    }
    (used, assign)
}

/// DSATUR-ordered backtracking: is g properly k-colorable? New colors are
/// introduced in order, which prunes color permutations.
fn k_colorable(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if k == 0 {
        return if n == 0 { Some(Vec::new()) } else { None };
    }
    let mut assign = vec![usize::MAX; n];
    let mut max_used = 0usize;
    fn solve(
        g: &Graph,
        k: usize,
        assign: &mut Vec<usize>,
        max_used: &mut usize,
        colored: usize,
    ) -> bool {
        let n = g.n();
        if colored == n {
            return true;
        }
        // DSATUR: highest saturation, ties by degree then index
        let mut best = usize::MAX;
        let mut best_key = (0usize, 0usize);
        for v in 0..n {
            if assign[v] != usize::MAX {
                continue;
            }
            let mut seen = vec![false; k];
            let mut sat = 0;
            for u in g.neighbors(v) {
                if assign[u] != usize::MAX && !seen[assign[u]] {
                    seen[assign[u]] = true;
                    sat += 1;
                }
            }
            let key = (sat, g.degree(v));
            if best == usize::MAX || key > best_key {
                best = v;
                best_key = key;
            }
        }
        let v = best;
        let mut forbidden = vec![false; k];
        for u in g.neighbors(v) {
            if assign[u] != usize::MAX {
                forbidden[assign[u]] = true;
            }
        }
        let limit = (*max_used + 1).min(k);
        for c in 0..limit {
            if forbidden[c] {
                continue;
            }
            assign[v] = c;
            let saved = *max_used;
            *max_used = (*max_used).max(c + 1);
            if solve(g, k, assign, max_used, colored + 1) {
                return true;
            }
            *max_used = saved;
            assign[v] = usize::MAX;
        }
        false
    }
    if solve(g, k, &mut assign, &mut max_used, 0) {
        Some(assign)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Caps;

    fn chi(g: &Graph) -> usize {
        chromatic_number(g, 64, &SearchOpts::default()).unwrap().count
    }

    #[test]
    fn odd_cycle_needs_three() {
        let caps = Caps::default();
        assert_eq!(chi(&families::make_cycle(5, &caps).unwrap()), 3);
        assert_eq!(chi(&families::make_cycle(6, &caps).unwrap()), 2);
    }

    #[test]
    fn kneser_5_2_is_three_chromatic() {
        let g = families::make_kneser(5, 2, &Caps::default()).unwrap();
        assert_eq!(chi(&g), 3);
    }

    #[test]
    fn tadpole_clique_cover() {
        // clique cover of T(3, l) is 1 + ceil(l/2)
        let caps = Caps::default();
        let g = families::make_tadpole(3, 4, &caps).unwrap();
        let r = clique_cover_number(&g, 64, &SearchOpts::default()).unwrap();
        assert_eq!(r.count, 3);
        // classes form a partition into cliques of g
        let mut seen = vec![false; g.n()];
        for class in &r.classes {
            for (i, &u) in class.iter().enumerate() {
                assert!(!seen[u]);
                seen[u] = true;
                for &v in &class[i + 1..] {
                    assert!(g.adjacent(u, v));
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn complete_graph() {
        let g = families::make_complete(7, &Caps::default()).unwrap();
        assert_eq!(chi(&g), 7);
    }
}
