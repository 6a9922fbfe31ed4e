//! Maximal clique and maximal independent set enumeration by
//! Bron–Kerbosch with pivoting.

use crate::bitset::{self, BitRow};
use crate::error::{Error, Result};
use crate::graph::{complement, Graph};

/// Default cap on the number of enumerated sets.
pub const DEFAULT_ENUM_CAP: usize = 200_000;

/// All maximal cliques as bit rows, in lexicographic set order.
pub fn maximal_cliques(g: &Graph, cap: usize) -> Result<Vec<BitRow>> {
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let r = bitset::zero_row(n);
    let p = bitset::full_row(n);
    let x = bitset::zero_row(n);
    bron_kerbosch(g, r, p, x, cap, &mut out)?;
    out.sort_by(|a, b| bitset::cmp_sets(a, b));
    Ok(out)
}

/// All maximal independent sets: maximal cliques of the complement.
pub fn maximal_independent_sets(g: &Graph, cap: usize) -> Result<Vec<BitRow>> {
    maximal_cliques(&complement(g), cap)
}

fn bron_kerbosch(
    g: &Graph,
    r: BitRow,
    mut p: BitRow,
    mut x: BitRow,
    cap: usize,
    out: &mut Vec<BitRow>,
) -> Result<()> {
    if bitset::is_empty(&p) && bitset::is_empty(&x) {
        if out.len() >= cap {
            return Err(Error::resource(
                "maximal set enumeration",
                cap as u64,
                out.len() as u64 + 1,
            ));
        }
        out.push(r);
        return Ok(());
    }
    // pivot: vertex of P ∪ X with the most neighbors in P (lowest index on
    // ties, by ascending iteration)
    let mut pivot: Option<(usize, usize)> = None;
    for u in bitset::iter_ones(&p).chain(bitset::iter_ones(&x)) {
        let cnt = bitset::count(&bitset::and(&p, g.row(u)));
        if pivot.map(|(bc, _)| cnt > bc).unwrap_or(true) {
            pivot = Some((cnt, u));
        }
    }
    let (_, u) = pivot.unwrap();
    let mut candidates = p.clone();
    bitset::and_not_assign(&mut candidates, g.row(u));
    for v in bitset::to_vec(&candidates) {
        let mut r2 = r.clone();
        bitset::set(&mut r2, v);
        let p2 = bitset::and(&p, g.row(v));
        let x2 = bitset::and(&x, g.row(v));
        bron_kerbosch(g, r2, p2, x2, cap, out)?;
        bitset::clear(&mut p, v);
        bitset::set(&mut x, v);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Caps;

    /// Brute-force maximal cliques for n <= 20: every clique subset that no
    /// vertex extends.
    fn maximal_cliques_brute(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        assert!(n <= 20);
        let mut out = Vec::new();
        'subsets: for set in 1u64..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if !g.adjacent(u, v) {
                        continue 'subsets;
                    }
                }
            }
            // maximal?
            for v in 0..n {
                if set >> v & 1 == 0 && members.iter().all(|&u| g.adjacent(u, v)) {
                    continue 'subsets;
                }
            }
            out.push(members);
        }
        out.sort();
        out
    }

    #[test]
    fn c5_maximal_independent_sets() {
        let g = families::make_cycle(5, &Caps::default()).unwrap();
        let sets = maximal_independent_sets(&g, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| bitset::count(s) == 2));
    }

    #[test]
    fn complete_graph_single_clique() {
        let g = families::make_complete(6, &Caps::default()).unwrap();
        let cliques = maximal_cliques(&g, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(cliques.len(), 1);
        assert_eq!(bitset::count(&cliques[0]), 6);
    }

    #[test]
    fn petersen_matches_brute_force() {
        let g = families::make_kneser(5, 2, &Caps::default()).unwrap();
        let fast: Vec<Vec<usize>> = maximal_cliques(&g, DEFAULT_ENUM_CAP)
            .unwrap()
            .iter()
            .map(|s| bitset::to_vec(s))
            .collect();
        let brute = maximal_cliques_brute(&g);
        assert_eq!(fast, brute);
        // triangle-free: the maximal cliques are exactly the 15 edges
        assert_eq!(fast.len(), 15);
        assert!(fast.iter().all(|c| c.len() == 2));

        let mis: Vec<Vec<usize>> = maximal_independent_sets(&g, DEFAULT_ENUM_CAP)
            .unwrap()
            .iter()
            .map(|s| bitset::to_vec(s))
            .collect();
        let brute_mis = maximal_cliques_brute(&complement(&g));
        assert_eq!(mis, brute_mis);
    }

    #[test]
    fn cap_is_enforced() {
        let g = families::make_cycle(12, &Caps::default()).unwrap();
        let err = maximal_independent_sets(&g, 3).unwrap_err();
        assert!(err.is_resource());
    }
}
