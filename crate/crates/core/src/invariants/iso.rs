//! Small-n structural checks: graph isomorphism with an explicit bijection
//! witness, vertex- and edge-transitivity via automorphism search, strong
//! regularity, and self-complementarity.
//!
//! The searches are backtracking with iterated neighbor-color refinement and
//! are capped (default n <= 24); above the cap they return `Undecided`.

use crate::graph::{complement, Graph};
use std::collections::BTreeMap;

/// Tri-state answer for capped decision procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }
}

#[derive(Debug, Clone)]
pub enum IsoResult {
    /// `mapping[v]` in h corresponds to `v` in g.
    Isomorphic(Vec<usize>),
    NotIsomorphic,
    Undecided,
}

/// Default order cap for the backtracking searches.
pub const DEFAULT_ISO_CAP: usize = 24;

pub fn are_isomorphic(g: &Graph, h: &Graph, cap: usize) -> IsoResult {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return IsoResult::NotIsomorphic;
    }
    if g.n() > cap {
        return IsoResult::Undecided;
    }
    match find_isomorphism(g, h, &[]) {
        Some(map) => IsoResult::Isomorphic(map),
        None => IsoResult::NotIsomorphic,
    }
}

/// Does an isomorphism g -> h exist honoring the forced vertex pairs?
pub fn automorphism_exists(g: &Graph, forced: &[(usize, usize)]) -> bool {
    find_isomorphism(g, g, forced).is_some()
}

/// Iterated neighbor-color refinement over both graphs with a shared color
/// dictionary; returns per-vertex colors, or None when the color histograms
/// separate the graphs.
fn refine(g: &Graph, h: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    fn refine_one(
        graph: &Graph,
        colors: &[usize],
        dict: &mut BTreeMap<(usize, Vec<usize>), usize>,
    ) -> Vec<usize> {
        (0..graph.n())
            .map(|v| {
                let mut ns: Vec<usize> = graph.neighbors(v).iter().map(|&u| colors[u]).collect();
                ns.sort_unstable();
                let len = dict.len();
                *dict.entry((colors[v], ns)).or_insert(len)
            })
            .collect()
    }
    let mut cg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut ch: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    for _ in 0..g.n() {
        let mut dict: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let ng = refine_one(g, &cg, &mut dict);
        let nh = refine_one(h, &ch, &mut dict);
        let mut hist_g: BTreeMap<usize, usize> = BTreeMap::new();
        let mut hist_h: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &ng {
            *hist_g.entry(c).or_insert(0) += 1;
        }
        for &c in &nh {
            *hist_h.entry(c).or_insert(0) += 1;
        }
        if hist_g != hist_h {
            return None;
        }
        let stable = ng == cg && nh == ch;
        cg = ng;
        ch = nh;
        if stable {
            break;
        }
    }
    Some((cg, ch))
}

fn find_isomorphism(g: &Graph, h: &Graph, forced: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let (cg, ch) = refine(g, h)?;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(a, b) in forced {
        if cg[a] != ch[b] {
            return None;
        }
        if map[a] != usize::MAX || used[b] {
            if map[a] == b {
                continue;
            }
            return None;
        }
        map[a] = b;
        used[b] = true;
    }
    // consistency among forced pairs
    for &(a, _) in forced {
        for &(a2, _) in forced {
            if g.adjacent(a, a2) != h.adjacent(map[a], map[a2]) {
                return None;
            }
        }
    }
    // assignment order: smallest color class first, then by connectivity to
    // already-mapped vertices
    let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &cg {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| map[v] == usize::MAX).collect();
    order.sort_by_key(|&v| (class_size[&cg[v]], v));
    if assign(g, h, &cg, &ch, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    idx: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    'cand: for b in 0..h.n() {
        if used[b] || ch[b] != cg[v] {
            continue;
        }
        for a in 0..g.n() {
            if map[a] != usize::MAX && g.adjacent(v, a) != h.adjacent(b, map[a]) {
                continue 'cand;
            }
        }
        map[v] = b;
        used[b] = true;
        if assign(g, h, cg, ch, order, idx + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[b] = false;
    }
    false
}

/// Is there an automorphism moving any vertex to any other? Sets no flags
/// itself; callers update the graph when verified.
pub fn check_vertex_transitive(g: &Graph, cap: usize) -> Verdict {
    if g.n() > cap {
        return Verdict::Undecided;
    }
    if g.n() <= 1 {
        return Verdict::Yes;
    }
    let d0 = g.degree(0);
    if (1..g.n()).any(|v| g.degree(v) != d0) {
        return Verdict::No;
    }
    for j in 1..g.n() {
        if !automorphism_exists(g, &[(0, j)]) {
            return Verdict::No;
        }
    }
    Verdict::Yes
}

/// Is there an automorphism mapping any edge onto any other (as sets)?
pub fn check_edge_transitive(g: &Graph, cap: usize) -> Verdict {
    if g.n() > cap {
        return Verdict::Undecided;
    }
    let edges = g.edges();
    let Some(&(a0, b0)) = edges.first() else {
        return Verdict::Yes; // no edges
    };
    for &(a, b) in &edges[1..] {
        if !automorphism_exists(g, &[(a0, a), (b0, b)])
            && !automorphism_exists(g, &[(a0, b), (b0, a)])
        {
            return Verdict::No;
        }
    }
    Verdict::Yes
}

/// Is g isomorphic to its complement?
pub fn check_self_complementary(g: &Graph, cap: usize) -> Verdict {
    match are_isomorphic(g, &complement(g), cap) {
        IsoResult::Isomorphic(_) => Verdict::Yes,
        IsoResult::NotIsomorphic => Verdict::No,
        IsoResult::Undecided => Verdict::Undecided,
    }
}

/// Exact strong-regularity check; returns (n, d, lambda, mu) when the graph
/// is strongly regular (connected-parameter conventions are not enforced).
pub fn check_strongly_regular(g: &Graph) -> Option<(usize, usize, usize, usize)> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let d = g.degree(0);
    if (1..n).any(|v| g.degree(v) != d) {
        return None;
    }
    let mut lambda: Option<usize> = None;
    let mut mu: Option<usize> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let common = crate::bitset::count(&crate::bitset::and(g.row(i), g.row(j)));
            if g.adjacent(i, j) {
                match lambda {
                    None => lambda = Some(common),
                    Some(l) if l == common => {}
                    _ => return None,
                }
            } else {
                match mu {
                    None => mu = Some(common),
                    Some(m) if m == common => {}
                    _ => return None,
                }
            }
        }
    }
    Some((n, d, lambda.unwrap_or(0), mu.unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Caps;

    #[test]
    fn c5_is_self_complementary_with_witness() {
        let caps = Caps::default();
        let c5 = families::make_cycle(5, &caps).unwrap();
        match are_isomorphic(&c5, &complement(&c5), DEFAULT_ISO_CAP) {
            IsoResult::Isomorphic(map) => {
                let cc = complement(&c5);
                for i in 0..5 {
                    for j in 0..5 {
                        if i != j {
                            assert_eq!(c5.adjacent(i, j), cc.adjacent(map[i], map[j]));
                        }
                    }
                }
            }
            other => panic!("expected isomorphism, got {other:?}"),
        }
        let p4 = families::make_path(4, &caps).unwrap();
        assert!(check_self_complementary(&p4, DEFAULT_ISO_CAP).is_yes());
    }

    #[test]
    fn different_cycles_are_not_isomorphic() {
        let caps = Caps::default();
        let c5 = families::make_cycle(5, &caps).unwrap();
        let c6 = families::make_cycle(6, &caps).unwrap();
        assert!(matches!(
            are_isomorphic(&c5, &c6, DEFAULT_ISO_CAP),
            IsoResult::NotIsomorphic
        ));
    }

    #[test]
    fn transitivity_checks() {
        let caps = Caps::default();
        let petersen = families::make_kneser(5, 2, &caps).unwrap();
        assert!(check_vertex_transitive(&petersen, DEFAULT_ISO_CAP).is_yes());
        assert!(check_edge_transitive(&petersen, DEFAULT_ISO_CAP).is_yes());

        let t56 = families::make_tadpole(5, 6, &caps).unwrap();
        assert_eq!(check_vertex_transitive(&t56, DEFAULT_ISO_CAP), Verdict::No);

        let k1 = families::make_complete(1, &caps).unwrap();
        assert!(check_vertex_transitive(&k1, DEFAULT_ISO_CAP).is_yes());

        let big = families::make_cycle(30, &caps).unwrap();
        assert_eq!(
            check_vertex_transitive(&big, DEFAULT_ISO_CAP),
            Verdict::Undecided
        );
    }

    #[test]
    fn strongly_regular_parameters() {
        let caps = Caps::default();
        let paley13 = families::make_paley(13, &caps).unwrap();
        assert_eq!(check_strongly_regular(&paley13), Some((13, 6, 2, 3)));
        let petersen = families::make_kneser(5, 2, &caps).unwrap();
        assert_eq!(check_strongly_regular(&petersen), Some((10, 3, 0, 1)));
        let t = families::make_tadpole(5, 2, &caps).unwrap();
        assert_eq!(check_strongly_regular(&t), None);
    }
}
