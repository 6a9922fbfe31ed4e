//! Explicit independent set of size C(2k, k) n^k in (G + co G)^(2k).
//!
//! The vertices of the 2k-th strong power of G + co(G) are 2k-tuples over
//! the 2n base vertices (first the G copy, then the complement copy). The
//! set consists of the balanced tuples: exactly k coordinates from each
//! copy, where the i-th G-coordinate from the left and the i-th
//! complement-coordinate from the left name the same base vertex. Any two
//! such tuples differ either in copy pattern (giving a non-edge across
//! copies at some position) or in a paired coordinate, where an edge in G
//! pairs with a non-edge in the complement.

use crate::error::Result;
use crate::graph::{complement, disjoint_union, strong_power, Caps, Graph};
use crate::invariants::IndependentSetWitness;

#[derive(Debug, Clone)]
pub struct AlonSet {
    /// Vertex indices in (g + co g)^(2k) under row-major power indexing.
    pub witness: IndependentSetWitness,
    pub k: u64,
    /// True when the product graph was materialized and pairwise
    /// non-adjacency was checked bit by bit.
    pub verified: bool,
}

fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Build the set; verification materializes the 2k-th power when it fits
/// under the product cap, otherwise the witness is returned unverified.
pub fn alon_independent_set(g: &Graph, k: u64, caps: &Caps) -> Result<AlonSet> {
    assert!(k >= 1);
    let n = g.n();
    let base_order = 2 * n;
    let tuple_len = (2 * k) as usize;

    // enumerate position subsets of size k in lexicographic order
    let mut positions: Vec<usize> = (0..k as usize).collect();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    loop {
        let in_g = {
            let mut mask = vec![false; tuple_len];
            for &p in &positions {
                mask[p] = true;
            }
            mask
        };
        // values: one base vertex per paired coordinate
        let mut values = vec![0usize; k as usize];
        loop {
            let mut tuple = vec![0usize; tuple_len];
            let mut gi = 0usize;
            let mut hi = 0usize;
            for (pos, &is_g) in in_g.iter().enumerate() {
                if is_g {
                    tuple[pos] = values[gi];
                    gi += 1;
                } else {
                    tuple[pos] = n + values[hi];
                    hi += 1;
                }
            }
            tuples.push(tuple);
            // odometer over values
            let mut idx = k as usize;
            loop {
                if idx == 0 {
                    break;
                }
                idx -= 1;
                values[idx] += 1;
                if values[idx] < n {
                    break;
                }
                values[idx] = 0;
                if idx == 0 {
                    idx = usize::MAX;
                    break;
                }
            }
            if idx == usize::MAX {
                break;
            }
        }
        // next position combination
        let mut i = k as i64 - 1;
        while i >= 0 && positions[i as usize] == tuple_len - k as usize + i as usize {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        positions[i as usize] += 1;
        for j in (i as usize + 1)..k as usize {
            positions[j] = positions[j - 1] + 1;
        }
    }
    let expected = binomial(2 * k, k) * (n as u128).pow(k as u32);
    debug_assert_eq!(tuples.len() as u128, expected);

    // row-major index of each tuple in the iterated strong power
    let mut indices: Vec<usize> = tuples
        .iter()
        .map(|t| t.iter().fold(0usize, |acc, &v| acc * base_order + v))
        .collect();
    indices.sort_unstable();

    let full_order = (base_order as u128).pow(tuple_len as u32);
    let verified = if full_order <= caps.product as u128 {
        let base = disjoint_union(g, &complement(g));
        let power = strong_power(&base, 2 * k, caps)?;
        let ok = indices.iter().enumerate().all(|(i, &u)| {
            indices[i + 1..]
                .iter()
                .all(|&v| !power.adjacent(u, v))
        });
        if !ok {
            return Err(crate::error::Error::Invalid(
                "constructed set is not independent".into(),
            ));
        }
        true
    } else {
        false
    };
    Ok(AlonSet {
        witness: IndependentSetWitness {
            size: indices.len(),
            vertices: indices,
        },
        k,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn c5_doubling() {
        let caps = Caps::default();
        let c5 = families::make_cycle(5, &caps).unwrap();
        let set = alon_independent_set(&c5, 1, &caps).unwrap();
        assert_eq!(set.witness.size, 2 * 5);
        assert!(set.verified);
    }

    #[test]
    fn k1_with_k_two() {
        let caps = Caps::default();
        let k1 = families::make_complete(1, &caps).unwrap();
        let set = alon_independent_set(&k1, 2, &caps).unwrap();
        // C(4,2) * 1 = 6
        assert_eq!(set.witness.size, 6);
        assert!(set.verified);
    }

    #[test]
    fn k2_verified_in_sixteen_vertices() {
        let caps = Caps::default();
        let k2 = families::make_complete(2, &caps).unwrap();
        let set = alon_independent_set(&k2, 1, &caps).unwrap();
        assert_eq!(set.witness.size, 4);
        assert!(set.verified);
        // cross-check: alpha of the materialized square is at least 4
        let base = disjoint_union(&k2, &complement(&k2));
        let power = strong_power(&base, 2, &caps).unwrap();
        let alpha =
            crate::invariants::independence_number(&power, &Default::default());
        assert!(alpha.size >= 4);
    }

    #[test]
    fn unverified_when_capped() {
        let caps = Caps {
            construction: 5000,
            product: 50,
        };
        let c5 = families::make_cycle(5, &caps).unwrap();
        let set = alon_independent_set(&c5, 1, &caps).unwrap();
        assert_eq!(set.witness.size, 10);
        assert!(!set.verified);
    }
}
