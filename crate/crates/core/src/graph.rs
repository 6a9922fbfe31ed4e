//! Immutable simple undirected graphs with bitset adjacency rows.

use crate::bitset::{self, BitRow};
use crate::error::{Error, Result};
use crate::families::GraphAtom;
use serde::{Deserialize, Serialize};

/// Resource caps for graph construction. These are configuration values, not
/// constants; the defaults bound family constructors at 5000 vertices and
/// strong products at 20000.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub construction: usize,
    pub product: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            construction: 5000,
            product: 20000,
        }
    }
}

/// Structural property flags. A flag is set only when the property is
/// guaranteed by construction or has been verified by an explicit check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Props {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub self_complementary: bool,
    pub perfect: bool,
    pub universal: bool,
    pub regular: Option<usize>,
    /// (n, d, lambda, mu) parameters when known strongly regular.
    pub strongly_regular: Option<(usize, usize, usize, usize)>,
}

/// An immutable simple undirected graph.
///
/// Adjacency is stored as one bit row per vertex; rows are kept symmetric
/// with a zero diagonal. Vertex indices are 0-based everywhere; labels carry
/// the paper-facing (1-based or structured) names where a constructor
/// defines them.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<BitRow>,
    labels: Option<Vec<String>>,
    props: Props,
    /// Constructor provenance, when the graph came from a family constructor.
    family: Option<GraphAtom>,
    /// Property names asserted by an input file; echoed, never trusted.
    asserted: Vec<String>,
}

impl Graph {
    /// Build a graph from an edge list. Ignored: self-loops are rejected,
    /// duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let words = bitset::words_for(n);
        let mut rows = vec![vec![0u64; words]; n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::domain(format!(
                    "edge ({i},{j}) out of range for n={n}"
                )));
            }
            if i == j {
                return Err(Error::domain(format!("self-loop at vertex {i}")));
            }
            bitset::set(&mut rows[i], j);
            bitset::set(&mut rows[j], i);
        }
        Ok(Graph {
            n,
            words,
            rows,
            labels: None,
            props: Props::default(),
            family: None,
            asserted: Vec::new(),
        })
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<BitRow>) -> Graph {
        let words = bitset::words_for(n);
        debug_assert!(rows.iter().all(|r| r.len() == words));
        let g = Graph {
            n,
            words,
            rows,
            labels: None,
            props: Props::default(),
            family: None,
            asserted: Vec::new(),
        };
        debug_assert!(g.check_well_formed().is_ok());
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| bitset::count(r)).sum::<usize>() / 2
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v]
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        bitset::get(&self.rows[i], j)
    }

    pub fn degree(&self, v: usize) -> usize {
        bitset::count(&self.rows[v])
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bitset::to_vec(&self.rows[v])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in bitset::iter_ones(&self.rows[i]) {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn props(&self) -> &Props {
        &self.props
    }

    pub fn props_mut(&mut self) -> &mut Props {
        &mut self.props
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub fn family(&self) -> Option<&GraphAtom> {
        self.family.as_ref()
    }

    pub fn set_family(&mut self, fam: GraphAtom) {
        self.family = Some(fam);
    }

    pub fn asserted_props(&self) -> &[String] {
        &self.asserted
    }

    pub fn set_asserted_props(&mut self, asserted: Vec<String>) {
        self.asserted = asserted;
    }

    /// Is every vertex of degree `d`? Sets the flag when true.
    pub fn verify_regular(&mut self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.degree(0);
        if (1..self.n).all(|v| self.degree(v) == d) {
            self.props.regular = Some(d);
            Some(d)
        } else {
            None
        }
    }

    /// Bit-level well-formedness: symmetric adjacency, zero diagonal, no
    /// stray bits past `n`, and soundness of the `Regular` flag.
    pub fn check_well_formed(&self) -> Result<()> {
        for i in 0..self.n {
            if bitset::get(&self.rows[i], i) {
                return Err(Error::Invalid(format!("self-loop at {i}")));
            }
            for j in bitset::iter_ones(&self.rows[i]) {
                if j >= self.n {
                    return Err(Error::Invalid(format!("stray bit {j} in row {i}")));
                }
                if !bitset::get(&self.rows[j], i) {
                    return Err(Error::Invalid(format!("asymmetric edge ({i},{j})")));
                }
            }
        }
        if let Some(d) = self.props.regular {
            if (0..self.n).any(|v| self.degree(v) != d) {
                return Err(Error::Invalid("regular flag is unsound".into()));
            }
        }
        Ok(())
    }

    /// Bit-exact equality of vertex count and adjacency (labels and flags
    /// are not compared).
    pub fn same_adjacency(&self, other: &Graph) -> bool {
        self.n == other.n && self.rows == other.rows
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut comp = Vec::new();
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in bitset::iter_ones(&self.rows[v]) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Induced subgraph on the given (sorted, distinct) vertices.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut g = Graph::from_edges(k, &[]).unwrap();
        for (a, &va) in vertices.iter().enumerate() {
            for (b, &vb) in vertices.iter().enumerate().skip(a + 1) {
                if self.adjacent(va, vb) {
                    bitset::set(&mut g.rows[a], b);
                    bitset::set(&mut g.rows[b], a);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| labels[v].clone()).collect());
        }
        g
    }
}

/// Edge complement. An involution: `complement(complement(g))` is bit-exact
/// `g`. Property flags that survive complementation (self-complementary,
/// vertex-transitive) are carried over; regularity maps to `n-1-d`.
pub fn complement(g: &Graph) -> Graph {
    let n = g.n;
    let mut rows = Vec::with_capacity(n);
    let full = bitset::full_row(n);
    for i in 0..n {
        let mut row: BitRow = g.rows[i].iter().zip(&full).map(|(a, f)| !a & f).collect();
        bitset::clear(&mut row, i);
        rows.push(row);
    }
    let mut out = Graph::from_rows(n, rows);
    out.props.self_complementary = g.props.self_complementary;
    out.props.vertex_transitive = g.props.vertex_transitive;
    out.props.regular = g.props.regular.map(|d| n - 1 - d);
    out.family = Some(match &g.family {
        Some(GraphAtom::Complement(inner)) => (**inner).clone(),
        Some(f) => GraphAtom::Complement(Box::new(f.clone())),
        None => return out_without_family(out),
    });
    out
}

fn out_without_family(mut g: Graph) -> Graph {
    g.family = None;
    g
}

/// Disjoint union. The second operand's vertices are offset by `g.n()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let n = g.n + h.n;
    let words = bitset::words_for(n);
    let mut rows = Vec::with_capacity(n);
    for i in 0..g.n {
        let mut row = vec![0u64; words];
        bitset::or_shifted(&mut row, &g.rows[i], g.n, 0);
        rows.push(row);
    }
    for j in 0..h.n {
        let mut row = vec![0u64; words];
        bitset::or_shifted(&mut row, &h.rows[j], h.n, g.n);
        rows.push(row);
    }
    let mut out = Graph::from_rows(n, rows);
    if let (Some(a), Some(b)) = (&g.labels, &h.labels) {
        let mut labels = a.clone();
        labels.extend(b.iter().cloned());
        out.labels = Some(labels);
    }
    out
}

/// Strong product. Vertex `(a, b)` sits at index `a * h.n() + b` (row-major),
/// so results are reproducible across runs and platforms. Two product
/// vertices are adjacent when each coordinate pair is equal or adjacent and
/// the vertices are distinct, which makes the row of `(a, b)` the tensor of
/// the closed neighborhoods of `a` and `b` minus the vertex itself.
pub fn strong_product(g: &Graph, h: &Graph, caps: &Caps) -> Result<Graph> {
    let n = g
        .n
        .checked_mul(h.n)
        .ok_or_else(|| Error::Overflow("product order".into()))?;
    if n > caps.product {
        return Err(Error::resource(
            "strong product order",
            caps.product as u64,
            n as u64,
        ));
    }
    let words = bitset::words_for(n);
    // closed neighborhood rows of h, reused per b
    let mut h_closed: Vec<BitRow> = Vec::with_capacity(h.n);
    for b in 0..h.n {
        let mut row = h.rows[b].clone();
        bitset::set(&mut row, b);
        h_closed.push(row);
    }
    let mut rows = Vec::with_capacity(n);
    for a in 0..g.n {
        let mut g_closed = g.rows[a].clone();
        bitset::set(&mut g_closed, a);
        let g_neighbors: Vec<usize> = bitset::iter_ones(&g_closed).collect();
        for b in 0..h.n {
            let mut row = vec![0u64; words];
            for &c in &g_neighbors {
                bitset::or_shifted(&mut row, &h_closed[b], h.n, c * h.n);
            }
            bitset::clear(&mut row, a * h.n + b);
            rows.push(row);
        }
    }
    let mut out = Graph::from_rows(n, rows);
    // degree law: deg(a,b) = (deg a + 1)(deg b + 1) - 1
    if let (Some(dg), Some(dh)) = (g.props.regular, h.props.regular) {
        out.props.regular = Some((dg + 1) * (dh + 1) - 1);
    }
    Ok(out)
}

/// Iterated strong product; `strong_power(g, 1)` returns a clone of `g`.
pub fn strong_power(g: &Graph, k: u64, caps: &Caps) -> Result<Graph> {
    if k == 0 {
        return Err(Error::domain("strong power requires exponent >= 1"));
    }
    let mut acc = g.clone();
    for _ in 1..k {
        acc = strong_product(&acc, g, caps)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn complement_is_involution() {
        let g = families::make_kneser(5, 2, &Caps::default()).unwrap();
        let gc = complement(&g);
        let gcc = complement(&gc);
        assert!(g.same_adjacency(&gcc));
        assert_eq!(gc.props().regular, Some(10 - 1 - 3));
    }

    #[test]
    fn union_counts_add() {
        let c5 = families::make_cycle(5, &Caps::default()).unwrap();
        let k1 = families::make_complete(1, &Caps::default()).unwrap();
        let u = disjoint_union(&c5, &k1);
        assert_eq!(u.n(), 6);
        assert_eq!(u.edge_count(), 5);
        let e2 = disjoint_union(&k1, &k1);
        assert_eq!(e2.n(), 2);
        assert_eq!(e2.edge_count(), 0);
    }

    #[test]
    fn strong_product_order_and_degree_law() {
        let caps = Caps::default();
        let c5 = families::make_cycle(5, &caps).unwrap();
        let p = strong_product(&c5, &c5, &caps).unwrap();
        assert_eq!(p.n(), 25);
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(p.degree(a * 5 + b), (2 + 1) * (2 + 1) - 1);
            }
        }
        p.check_well_formed().unwrap();
        let k1 = families::make_complete(1, &caps).unwrap();
        let q = strong_product(&c5, &k1, &caps).unwrap();
        assert!(q.same_adjacency(&c5));
    }

    #[test]
    fn strong_product_commutes_up_to_index_permutation() {
        let caps = Caps::default();
        let g = families::make_cycle(4, &caps).unwrap();
        let h = families::make_path(3, &caps).unwrap();
        let gh = strong_product(&g, &h, &caps).unwrap();
        let hg = strong_product(&h, &g, &caps).unwrap();
        for a in 0..g.n() {
            for b in 0..h.n() {
                for c in 0..g.n() {
                    for d in 0..h.n() {
                        assert_eq!(
                            gh.adjacent(a * h.n() + b, c * h.n() + d),
                            hg.adjacent(b * g.n() + a, d * g.n() + c)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn strong_power_identity_and_cap() {
        let caps = Caps {
            construction: 5000,
            product: 100,
        };
        let c5 = families::make_cycle(5, &caps).unwrap();
        let p1 = strong_power(&c5, 1, &caps).unwrap();
        assert!(p1.same_adjacency(&c5));
        let err = strong_power(&c5, 4, &caps).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn induced_and_components() {
        let caps = Caps::default();
        let c5 = families::make_cycle(5, &caps).unwrap();
        let k3 = families::make_complete(3, &caps).unwrap();
        let u = disjoint_union(&c5, &k3);
        let comps = u.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], vec![0, 1, 2, 3, 4]);
        let sub = u.induced(&comps[1]);
        assert!(sub.same_adjacency(&k3));
    }
}
