//! Structured graph families and their constructors.

use crate::bitset;
use crate::error::{Error, Result};
use crate::gf::{prime_power, Gf};
use crate::graph::{complement, Caps, Graph};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A named graph family instance. Doubles as constructor provenance on
/// [`Graph`] and as the atom type of the expression language.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphAtom {
    Complete(u64),
    Empty(u64),
    Path(u64),
    Cycle(u64),
    Kneser(u64, u64),
    QKneser(u64, u64, u64),
    Tadpole(u64, u64),
    Paley(u64),
    CompleteMultipartite(Vec<u64>),
    /// A graph loaded from a file; the string is the file reference.
    Custom(String),
    Complement(Box<GraphAtom>),
}

impl GraphAtom {
    /// Canonical name; also the assignment key in numeric evaluation. Two
    /// syntactically identical atoms are the same variable.
    pub fn name(&self) -> String {
        match self {
            GraphAtom::Complete(n) => format!("K{n}"),
            GraphAtom::Empty(n) => format!("E{n}"),
            GraphAtom::Path(n) => format!("P{n}"),
            GraphAtom::Cycle(n) => format!("C{n}"),
            GraphAtom::Kneser(n, r) => format!("KG({n},{r})"),
            GraphAtom::QKneser(n, k, q) => format!("QK({n},{k},{q})"),
            GraphAtom::Tadpole(k, l) => format!("T({k},{l})"),
            GraphAtom::Paley(q) => format!("Paley({q})"),
            GraphAtom::CompleteMultipartite(parts) => {
                let body: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                format!("KM({})", body.join(","))
            }
            GraphAtom::Custom(file) => format!("@{file}"),
            GraphAtom::Complement(inner) => format!("co({})", inner.name()),
        }
    }

    /// Validate parameter domains without building the graph.
    pub fn validate(&self) -> Result<()> {
        match self {
            GraphAtom::Complete(n) | GraphAtom::Empty(n) | GraphAtom::Path(n) => {
                if *n == 0 {
                    return Err(Error::domain(format!("{} requires n >= 1", self.name())));
                }
            }
            GraphAtom::Cycle(k) => {
                if *k < 3 {
                    return Err(Error::domain("cycle requires k >= 3"));
                }
            }
            GraphAtom::Kneser(n, r) => {
                if *r == 0 || r > n {
                    return Err(Error::domain("Kneser graph requires 1 <= r <= n"));
                }
            }
            GraphAtom::QKneser(n, k, q) => {
                if prime_power(*q).is_none() {
                    return Err(Error::domain(format!("{q} is not a prime power")));
                }
                if *k == 0 || *n < 2 * k {
                    return Err(Error::domain("q-Kneser graph requires n >= 2k >= 2"));
                }
            }
            GraphAtom::Tadpole(k, _) => {
                if *k < 3 {
                    return Err(Error::domain("tadpole requires cycle length k >= 3"));
                }
            }
            GraphAtom::Paley(q) => {
                if prime_power(*q).is_none() {
                    return Err(Error::domain(format!("{q} is not a prime power")));
                }
                if q % 4 != 1 {
                    return Err(Error::domain(format!(
                        "Paley graph requires q = 1 mod 4, got {q}"
                    )));
                }
            }
            GraphAtom::CompleteMultipartite(parts) => {
                if parts.is_empty() || parts.iter().any(|&p| p == 0) {
                    return Err(Error::domain(
                        "complete multipartite requires nonempty positive parts",
                    ));
                }
            }
            GraphAtom::Custom(_) => {}
            GraphAtom::Complement(inner) => inner.validate()?,
        }
        Ok(())
    }
}

impl fmt::Display for GraphAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn check_order(n: u64, caps: &Caps) -> Result<usize> {
    if n > caps.construction as u64 {
        return Err(Error::resource(
            "graph order",
            caps.construction as u64,
            n,
        ));
    }
    Ok(n as usize)
}

/// Complete graph K_n.
pub fn make_complete(n: u64, caps: &Caps) -> Result<Graph> {
    GraphAtom::Complete(n).validate()?;
    let n = check_order(n, caps)?;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    let mut g = Graph::from_edges(n, &edges)?;
    g.props_mut().regular = Some(n - 1);
    g.props_mut().vertex_transitive = true;
    g.props_mut().edge_transitive = true;
    g.props_mut().perfect = true;
    if n == 1 {
        g.props_mut().self_complementary = true;
        g.props_mut().universal = true;
    }
    g.set_family(GraphAtom::Complete(n as u64));
    Ok(g)
}

/// Empty graph on n vertices.
pub fn make_empty(n: u64, caps: &Caps) -> Result<Graph> {
    GraphAtom::Empty(n).validate()?;
    let n = check_order(n, caps)?;
    let mut g = Graph::from_edges(n, &[])?;
    g.props_mut().regular = Some(0);
    g.props_mut().vertex_transitive = true;
    g.props_mut().edge_transitive = true;
    g.props_mut().perfect = true;
    g.props_mut().universal = true;
    if n == 1 {
        g.props_mut().self_complementary = true;
    }
    g.set_family(GraphAtom::Empty(n as u64));
    Ok(g)
}

/// Path graph on n vertices (n-1 edges).
pub fn make_path(n: u64, caps: &Caps) -> Result<Graph> {
    GraphAtom::Path(n).validate()?;
    let n = check_order(n, caps)?;
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    let mut g = Graph::from_edges(n, &edges)?;
    g.props_mut().perfect = true;
    g.props_mut().universal = true;
    if n == 4 {
        g.props_mut().self_complementary = true;
    }
    g.set_family(GraphAtom::Path(n as u64));
    Ok(g)
}

/// Cycle graph C_k, k >= 3.
pub fn make_cycle(k: u64, caps: &Caps) -> Result<Graph> {
    GraphAtom::Cycle(k).validate()?;
    let n = check_order(k, caps)?;
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut g = Graph::from_edges(n, &edges)?;
    g.props_mut().regular = Some(2);
    g.props_mut().vertex_transitive = true;
    g.props_mut().edge_transitive = true;
    if n == 5 {
        g.props_mut().self_complementary = true;
    }
    if n % 2 == 0 || n == 3 {
        g.props_mut().perfect = true;
    }
    if n % 2 == 0 {
        g.props_mut().universal = true;
    }
    g.set_family(GraphAtom::Cycle(k));
    Ok(g)
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

/// Kneser graph KG(n, r): vertices are the r-subsets of {1..n}, adjacent
/// when disjoint. Labels record the subsets 1-based.
pub fn make_kneser(n: u64, r: u64, caps: &Caps) -> Result<Graph> {
    GraphAtom::Kneser(n, r).validate()?;
    let order = binomial(n, r);
    if order > caps.construction as u128 {
        return Err(Error::resource(
            "graph order",
            caps.construction as u64,
            order.min(u64::MAX as u128) as u64,
        ));
    }
    // enumerate r-subsets in lexicographic order as bit masks
    let mut subsets: Vec<Vec<u64>> = Vec::with_capacity(order as usize);
    let mut current: Vec<u64> = (0..r).collect();
    loop {
        let mut mask = bitset::zero_row(n as usize);
        for &e in &current {
            bitset::set(&mut mask, e as usize);
        }
        subsets.push(mask);
        // next combination
        let mut i = r as i64 - 1;
        while i >= 0 && current[i as usize] == n - r + i as u64 {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        current[i as usize] += 1;
        for j in (i as usize + 1)..r as usize {
            current[j] = current[j - 1] + 1;
        }
    }
    let order = subsets.len();
    let mut edges = Vec::new();
    for i in 0..order {
        for j in (i + 1)..order {
            if !bitset::intersects(&subsets[i], &subsets[j]) {
                edges.push((i, j));
            }
        }
    }
    let mut g = Graph::from_edges(order, &edges)?;
    let labels: Vec<String> = subsets
        .iter()
        .map(|m| {
            let elems: Vec<String> = bitset::iter_ones(m).map(|e| (e + 1).to_string()).collect();
            format!("{{{}}}", elems.join(","))
        })
        .collect();
    g.set_labels(labels);
    g.props_mut().vertex_transitive = true;
    g.props_mut().edge_transitive = true;
    g.verify_regular();
    if r == 1 {
        g.props_mut().perfect = true;
    }
    g.set_family(GraphAtom::Kneser(n, r));
    Ok(g)
}

/// Gaussian (q-binomial) coefficient: the number of k-dimensional subspaces
/// of an n-dimensional space over GF(q).
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let q = q as u128;
    for i in 0..k {
        num *= q.pow(n as u32) - q.pow(i as u32);
        den *= q.pow(k as u32) - q.pow(i as u32);
    }
    num / den
}

/// q-Kneser graph: vertices are the k-dimensional subspaces of GF(q)^n,
/// adjacent when the intersection is trivial. Subspaces are enumerated by
/// their reduced-row-echelon bases with pivot column sets in lexicographic
/// order, so vertex numbering is deterministic.
pub fn make_q_kneser(n: u64, k: u64, q: u64, caps: &Caps) -> Result<Graph> {
    GraphAtom::QKneser(n, k, q).validate()?;
    let order = gaussian_binomial(n, k, q);
    if order > caps.construction as u128 {
        return Err(Error::resource(
            "graph order",
            caps.construction as u64,
            order.min(u64::MAX as u128) as u64,
        ));
    }
    let field = Gf::new(q)?;
    let subspaces = enumerate_rref(n as usize, k as usize, &field);
    debug_assert_eq!(subspaces.len() as u128, order);
    let m = subspaces.len();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if trivial_intersection(&subspaces[i], &subspaces[j], n as usize, &field) {
                edges.push((i, j));
            }
        }
    }
    let mut g = Graph::from_edges(m, &edges)?;
    let labels: Vec<String> = subspaces
        .iter()
        .map(|basis| {
            let rows: Vec<String> = basis
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join("")
                })
                .collect();
            format!("[{}]", rows.join(";"))
        })
        .collect();
    g.set_labels(labels);
    g.props_mut().vertex_transitive = true;
    g.props_mut().edge_transitive = true;
    let expected_degree = (q as u128).pow((k * k) as u32) * gaussian_binomial(n - k, k, q);
    match g.verify_regular() {
        Some(d) if d as u128 == expected_degree => {}
        other => {
            return Err(Error::Invalid(format!(
                "q-Kneser degree {other:?} does not match the expected {expected_degree}"
            )))
        }
    }
    g.set_family(GraphAtom::QKneser(n, k, q));
    Ok(g)
}

/// All k x n reduced-row-echelon matrices of rank k over the field, pivot
/// column sets in lexicographic order, free entries in odometer order.
fn enumerate_rref(n: usize, k: usize, field: &Gf) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free positions: row i, column j where j > pivots[i] and j is not a pivot
        let mut free_pos = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in (p + 1)..n {
                if !pivots.contains(&j) {
                    free_pos.push((i, j));
                }
            }
        }
        let total = (field.q as u128).pow(free_pos.len() as u32);
        let mut counter: u128 = 0;
        while counter < total {
            let mut mat = vec![vec![0u64; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                mat[i][p] = 1;
            }
            let mut c = counter;
            for &(i, j) in &free_pos {
                mat[i][j] = (c % field.q as u128) as u64;
                c /= field.q as u128;
            }
            out.push(mat);
            counter += 1;
        }
        // next pivot combination in lexicographic order
        let mut i = k as i64 - 1;
        while i >= 0 && pivots[i as usize] == n - k + i as usize {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        pivots[i as usize] += 1;
        for j in (i as usize + 1)..k {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    out
}

/// Do the row spaces of two k x n bases intersect only in zero? True when
/// the stacked 2k x n matrix has rank 2k.
fn trivial_intersection(a: &[Vec<u64>], b: &[Vec<u64>], n: usize, field: &Gf) -> bool {
    let mut rows: Vec<Vec<u64>> = a.iter().chain(b.iter()).cloned().collect();
    let mut rank = 0;
    for col in 0..n {
        // find a pivot row
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]);
        for c in col..n {
            rows[rank][c] = field.mul(rows[rank][c], inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in col..n {
                    let sub = field.mul(factor, rows[rank][c]);
                    rows[r][c] = field.sub(rows[r][c], sub);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank == a.len() + b.len()
}

/// Tadpole graph T(k, l): a k-cycle joined by a bridge edge to a path on l
/// vertices. T(k, 0) is bit-exactly C_k. Cycle vertices come first
/// (0..k, cycle order), then the path (k..k+l) with the bridge at (0, k).
pub fn make_tadpole(k: u64, l: u64, caps: &Caps) -> Result<Graph> {
    GraphAtom::Tadpole(k, l).validate()?;
    if l == 0 {
        let mut g = make_cycle(k, caps)?;
        g.set_family(GraphAtom::Tadpole(k, 0));
        return Ok(g);
    }
    let n = check_order(k + l, caps)?;
    let k = k as usize;
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    edges.push((0, k));
    for i in 0..(l as usize - 1) {
        edges.push((k + i, k + i + 1));
    }
    let mut g = Graph::from_edges(n, &edges)?;
    g.set_family(GraphAtom::Tadpole(k as u64, l));
    Ok(g)
}

/// Paley graph P(q) for a prime power q = 1 mod 4: vertices are the field
/// elements, adjacent when their difference is a nonzero square.
pub fn make_paley(q: u64, caps: &Caps) -> Result<Graph> {
    GraphAtom::Paley(q).validate()?;
    let n = check_order(q, caps)?;
    let field = Gf::new(q)?;
    let squares = field.nonzero_squares();
    let is_square = {
        let mut v = vec![false; n];
        for &s in &squares {
            v[s as usize] = true;
        }
        v
    };
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if is_square[field.sub(a as u64, b as u64) as usize] {
                edges.push((a, b));
            }
        }
    }
    let mut g = Graph::from_edges(n, &edges)?;
    g.set_labels((0..n).map(|v| v.to_string()).collect());
    g.props_mut().self_complementary = true;
    g.props_mut().vertex_transitive = true;
    g.props_mut().edge_transitive = true;
    g.props_mut().regular = Some((q as usize - 1) / 2);
    g.props_mut().strongly_regular = Some((
        n,
        (q as usize - 1) / 2,
        (q as usize - 5) / 4,
        (q as usize - 1) / 4,
    ));
    match g.verify_regular() {
        Some(d) if d == (q as usize - 1) / 2 => {}
        other => {
            return Err(Error::Invalid(format!(
                "Paley degree {other:?} does not match (q-1)/2"
            )))
        }
    }
    g.set_family(GraphAtom::Paley(q));
    Ok(g)
}

/// Complete multipartite graph with the given part sizes.
pub fn make_complete_multipartite(parts: &[u64], caps: &Caps) -> Result<Graph> {
    GraphAtom::CompleteMultipartite(parts.to_vec()).validate()?;
    let total: u64 = parts.iter().sum();
    let n = check_order(total, caps)?;
    let mut part_of = vec![0usize; n];
    let mut v = 0;
    for (p, &size) in parts.iter().enumerate() {
        for _ in 0..size {
            part_of[v] = p;
            v += 1;
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if part_of[i] != part_of[j] {
                edges.push((i, j));
            }
        }
    }
    let mut g = Graph::from_edges(n, &edges)?;
    g.props_mut().perfect = true;
    g.set_family(GraphAtom::CompleteMultipartite(parts.to_vec()));
    Ok(g)
}

/// Build the graph for an atom. `Custom` atoms are loaded relative to the
/// current directory via graph I/O.
pub fn build_atom(atom: &GraphAtom, caps: &Caps) -> Result<Graph> {
    match atom {
        GraphAtom::Complete(n) => make_complete(*n, caps),
        GraphAtom::Empty(n) => make_empty(*n, caps),
        GraphAtom::Path(n) => make_path(*n, caps),
        GraphAtom::Cycle(k) => make_cycle(*k, caps),
        GraphAtom::Kneser(n, r) => make_kneser(*n, *r, caps),
        GraphAtom::QKneser(n, k, q) => make_q_kneser(*n, *k, *q, caps),
        GraphAtom::Tadpole(k, l) => make_tadpole(*k, *l, caps),
        GraphAtom::Paley(q) => make_paley(*q, caps),
        GraphAtom::CompleteMultipartite(parts) => make_complete_multipartite(parts, caps),
        GraphAtom::Custom(file) => {
            let mut g = crate::io::load_graph(std::path::Path::new(file))?;
            if g.n() > caps.construction {
                return Err(Error::resource(
                    "graph order",
                    caps.construction as u64,
                    g.n() as u64,
                ));
            }
            g.set_family(GraphAtom::Custom(file.clone()));
            Ok(g)
        }
        GraphAtom::Complement(inner) => {
            let g = build_atom(inner, caps)?;
            Ok(complement(&g))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn cycles() {
        let c3 = make_cycle(3, &caps()).unwrap();
        assert_eq!((c3.n(), c3.edge_count()), (3, 3));
        let c5 = make_cycle(5, &caps()).unwrap();
        assert!(c5.props().self_complementary);
        let c4 = make_cycle(4, &caps()).unwrap();
        assert_eq!(c4.n(), 4);
        assert!(make_cycle(2, &caps()).is_err());
    }

    #[test]
    fn petersen_counts() {
        let g = make_kneser(5, 2, &caps()).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.props().regular, Some(3));
        assert_eq!(g.labels().unwrap()[0], "{1,2}");
    }

    #[test]
    fn kneser_n_one_is_complete() {
        let g = make_kneser(6, 1, &caps()).unwrap();
        let k6 = make_complete(6, &caps()).unwrap();
        assert!(g.same_adjacency(&k6));
    }

    #[test]
    fn kneser_4_2_is_perfect_matching() {
        let g = make_kneser(4, 2, &caps()).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.props().regular, Some(1));
    }

    #[test]
    fn q_kneser_orders_and_degrees() {
        let g = make_q_kneser(4, 2, 2, &caps()).unwrap();
        assert_eq!(g.n() as u128, gaussian_binomial(4, 2, 2));
        assert_eq!(g.n(), 35);
        assert_eq!(g.props().regular, Some(16));

        let g = make_q_kneser(2, 1, 2, &caps()).unwrap();
        let k3 = make_complete(3, &caps()).unwrap();
        assert!(g.same_adjacency(&k3));

        for q in [2u64, 3, 4] {
            let g = make_q_kneser(3, 1, q, &caps()).unwrap();
            assert_eq!(g.n() as u64, q * q + q + 1);
            let kn = make_complete(q * q + q + 1, &caps()).unwrap();
            assert!(g.same_adjacency(&kn));
        }
        assert!(make_q_kneser(4, 2, 6, &caps()).is_err());
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(2, 1, 3), 4);
        assert_eq!(gaussian_binomial(1, 0, 5), 1);
    }

    #[test]
    fn tadpoles() {
        let t = make_tadpole(5, 6, &caps()).unwrap();
        assert_eq!((t.n(), t.edge_count()), (11, 11));
        let mut degs: Vec<usize> = (0..t.n()).map(|v| t.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs[0], 1);
        assert_eq!(degs[t.n() - 1], 3);
        assert!(degs[1..t.n() - 1].iter().all(|&d| d == 2));

        let t0 = make_tadpole(5, 0, &caps()).unwrap();
        let c5 = make_cycle(5, &caps()).unwrap();
        assert!(t0.same_adjacency(&c5));

        let t31 = make_tadpole(3, 1, &caps()).unwrap();
        assert_eq!((t31.n(), t31.edge_count()), (4, 4));
        assert!(make_tadpole(2, 1, &caps()).is_err());
    }

    #[test]
    fn paley_graphs() {
        let p5 = make_paley(5, &caps()).unwrap();
        let c5 = make_cycle(5, &caps()).unwrap();
        // squares mod 5 are {1,4}: edges join i to i+-1, exactly the 5-cycle
        assert!(p5.same_adjacency(&c5));

        let p13 = make_paley(13, &caps()).unwrap();
        assert_eq!(p13.props().regular, Some(6));
        assert_eq!(p13.n(), 13);

        let p9 = make_paley(9, &caps()).unwrap();
        assert_eq!(p9.props().regular, Some(4));
        assert_eq!(p9.n(), 9);

        assert!(make_paley(7, &caps()).is_err());
        assert!(make_paley(12, &caps()).is_err());
    }

    #[test]
    fn multipartite() {
        let g = make_complete_multipartite(&[2, 3], &caps()).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn atom_names_round_trip_info() {
        assert_eq!(GraphAtom::Kneser(5, 2).name(), "KG(5,2)");
        assert_eq!(
            GraphAtom::Complement(Box::new(GraphAtom::Cycle(5))).name(),
            "co(C5)"
        );
    }
}
