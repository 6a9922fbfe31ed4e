//! Dense symmetric eigensolver by cyclic Jacobi rotations.
//!
//! Chosen over tridiagonalization for implementation simplicity and
//! deterministic, bit-stable behavior at the sizes this crate needs
//! (n <= 4096 by configuration, a few hundred in practice).

/// Row-major dense symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }
}

/// Eigenvalues (descending) and the orthogonal eigenvector matrix
/// (column k belongs to eigenvalue k), plus the achieved residual
/// max_k ||A v_k - lambda_k v_k||_inf.
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// Row-major n x n; column k is the k-th eigenvector.
    pub vectors: Vec<f64>,
    pub residual: f64,
}

/// Cyclic Jacobi with an off-diagonal sweep target of 1e-12 relative to the
/// Frobenius norm.
pub fn jacobi_eigen(a: &SymMatrix) -> EigenDecomposition {
    let n = a.n;
    let mut m = a.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    if n > 0 {
        let fro: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt();
        let target = 1e-12 * fro.max(1.0);
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    off += m[i * n + j] * m[i * n + j];
                }
            }
            if off.sqrt() <= target {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let app = m[p * n + p];
                    let aqq = m[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (1.0 + theta * theta).sqrt())
                    } else {
                        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // rotate rows/cols p and q
                    for k in 0..n {
                        let akp = m[k * n + p];
                        let akq = m[k * n + q];
                        m[k * n + p] = c * akp - s * akq;
                        m[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = m[p * n + k];
                        let aqk = m[q * n + k];
                        m[p * n + k] = c * apk - s * aqk;
                        m[q * n + k] = s * apk + c * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[y * n + y].partial_cmp(&m[x * n + x]).unwrap());
    let values: Vec<f64> = order.iter().map(|&k| m[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + new_col] = v[row * n + old_col];
        }
    }
    // residual against the original matrix
    let mut residual = 0.0f64;
    for (col, &lambda) in values.iter().enumerate() {
        for row in 0..n {
            let mut av = 0.0;
            for k in 0..n {
                av += a.data[row * n + k] * vectors[k * n + col];
            }
            residual = residual.max((av - lambda * vectors[row * n + col]).abs());
        }
    }
    EigenDecomposition {
        values,
        vectors,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let mut a = SymMatrix::zeros(3);
        a.set(0, 0, 2.0);
        a.set(1, 1, -1.0);
        a.set(2, 2, 5.0);
        let e = jacobi_eigen(&a);
        assert_eq!(e.values, vec![5.0, 2.0, -1.0]);
        assert!(e.residual < 1e-12);
    }

    #[test]
    fn two_by_two() {
        let mut a = SymMatrix::zeros(2);
        a.set(0, 1, 1.0);
        let e = jacobi_eigen(&a);
        assert!((e.values[0] - 1.0).abs() < 1e-12);
        assert!((e.values[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonality_of_eigenvectors() {
        // path graph P4 adjacency
        let mut a = SymMatrix::zeros(4);
        a.set(0, 1, 1.0);
        a.set(1, 2, 1.0);
        a.set(2, 3, 1.0);
        let e = jacobi_eigen(&a);
        for i in 0..4 {
            for j in 0..4 {
                let dot: f64 = (0..4).map(|k| e.vectors[k * 4 + i] * e.vectors[k * 4 + j]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-10);
            }
        }
        // eigenvalues of P4: +-(1+sqrt5)/2, +-(sqrt5-1)/2
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((e.values[0] - phi).abs() < 1e-10);
        assert!((e.values[3] + phi).abs() < 1e-10);
    }
}
