//! Adjacency spectrum via the dense Jacobi eigensolver.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{jacobi_eigen, SymMatrix};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    /// Eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// max |A v - lambda v| over all returned eigenpairs.
    pub residual: f64,
}

impl Spectrum {
    pub fn largest(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Second-largest eigenvalue.
    pub fn second(&self) -> Option<f64> {
        self.eigenvalues.get(1).copied()
    }
}

/// Full eigenvalue list of the adjacency matrix; `cap` bounds the accepted
/// order (default 4096 at call sites).
pub fn spectrum(g: &Graph, cap: usize) -> Result<Spectrum> {
    if g.n() > cap {
        return Err(Error::resource("spectrum order", cap as u64, g.n() as u64));
    }
    let n = g.n();
    let mut a = SymMatrix::zeros(n);
    for (i, j) in g.edges() {
        a.set(i, j, 1.0);
    }
    let e = jacobi_eigen(&a);
    Ok(Spectrum {
        eigenvalues: e.values,
        residual: e.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Caps;

    #[test]
    fn petersen_spectrum() {
        let g = families::make_kneser(5, 2, &Caps::default()).unwrap();
        let s = spectrum(&g, 4096).unwrap();
        assert!(s.residual <= 1e-9 * g.n() as f64);
        let expect = [3.0, 1.0, 1.0, 1.0, 1.0, 1.0, -2.0, -2.0, -2.0, -2.0];
        for (got, want) in s.eigenvalues.iter().zip(expect) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
        // trace is zero
        let sum: f64 = s.eigenvalues.iter().sum();
        assert!(sum.abs() < 1e-9);
    }

    #[test]
    fn cycle_spectrum_matches_circulant_closed_form() {
        // eigenvalues of C_k are 2 cos(2 pi j / k)
        let g = families::make_cycle(5, &Caps::default()).unwrap();
        let s = spectrum(&g, 4096).unwrap();
        let mut expect: Vec<f64> = (0..5)
            .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / 5.0).cos())
            .collect();
        expect.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (got, want) in s.eigenvalues.iter().zip(expect) {
            assert!((got - want).abs() < 1e-9);
        }
        assert!((s.largest() - 2.0).abs() < 1e-9);
        assert!((s.smallest() - 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-9);
    }

    #[test]
    fn q_kneser_extremes() {
        let g = families::make_q_kneser(4, 2, 2, &Caps::default()).unwrap();
        let s = spectrum(&g, 4096).unwrap();
        assert!((s.largest() - 16.0).abs() < 1e-8);
        assert!((s.smallest() + 4.0).abs() < 1e-8);
        assert!(s.residual <= 1e-9 * g.n() as f64);
    }

    #[test]
    fn regular_graph_largest_eigenvalue_is_degree() {
        let g = families::make_paley(13, &Caps::default()).unwrap();
        let s = spectrum(&g, 4096).unwrap();
        assert!((s.largest() - 6.0).abs() < 1e-9);
    }
}
