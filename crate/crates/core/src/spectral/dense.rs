//! Dense symmetric eigensolver (cyclic Jacobi) used as an independent check
//! on the power iteration. Intended for matrices of a few dozen rows.

use crate::graph::BipartiteGraph;

use super::Scalar;

/// Row-major `(a+b) x (a+b)` adjacency matrix, X-vertices first.
pub fn adjacency_matrix<F: Scalar>(g: &BipartiteGraph) -> Vec<F> {
    let (a, b) = g.part_sizes();
    let dim = a + b;
    let mut m = vec![F::zero(); dim * dim];
    for (i, j) in g.edges() {
        m[i * dim + a + j] = F::one();
        m[(a + j) * dim + i] = F::one();
    }
    m
}

/// Row-major `D + A`, X-vertices first.
pub fn signless_laplacian_matrix<F: Scalar>(g: &BipartiteGraph) -> Vec<F> {
    let (a, b) = g.part_sizes();
    let dim = a + b;
    let mut m = adjacency_matrix::<F>(g);
    for i in 0..a {
        m[i * dim + i] = F::from_usize(g.x_degree(i)).unwrap();
    }
    for j in 0..b {
        m[(a + j) * dim + a + j] = F::from_usize(g.y_degree(j)).unwrap();
    }
    m
}

/// Row-major `B B^T` for the biadjacency block `B` (X-rows).
pub fn gram_matrix<F: Scalar>(g: &BipartiteGraph) -> Vec<F> {
    let a = g.x_count();
    let mut m = vec![F::zero(); a * a];
    for i in 0..a {
        for k in 0..a {
            let common = (g.x_row(i) & g.x_row(k)).count_ones() as usize;
            m[i * a + k] = F::from_usize(common).unwrap();
        }
    }
    m
}

/// All eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues<F: Scalar>(matrix: &[F], dim: usize) -> Vec<F> {
    assert_eq!(matrix.len(), dim * dim);
    let mut a = matrix.to_vec();
    let eps = F::epsilon();
    let two = F::one() + F::one();
    for _sweep in 0..100 {
        let mut off = F::zero();
        let mut total = F::zero();
        for p in 0..dim {
            for q in 0..dim {
                let v = a[p * dim + q] * a[p * dim + q];
                total = total + v;
                if p != q {
                    off = off + v;
                }
            }
        }
        if off <= eps * eps * total {
            break;
        }
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = a[p * dim + q];
                if apq == F::zero() {
                    continue;
                }
                let theta = (a[q * dim + q] - a[p * dim + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + F::one()).sqrt());
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                for k in 0..dim {
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    a[k * dim + p] = c * akp - s * akq;
                    a[k * dim + q] = s * akp + c * akq;
                }
                for k in 0..dim {
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    a[p * dim + k] = c * apk - s * aqk;
                    a[q * dim + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<F> = (0..dim).map(|i| a[i * dim + i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    eig
}

pub fn largest_eigenvalue<F: Scalar>(matrix: &[F], dim: usize) -> F {
    symmetric_eigenvalues(matrix, dim).last().copied().unwrap_or_else(F::zero)
}

/// `rho(G)` from a full Jacobi decomposition of the adjacency matrix.
pub fn dense_spectral_radius<F: Scalar>(g: &BipartiteGraph) -> F {
    let dim = g.x_count() + g.y_count();
    largest_eigenvalue(&adjacency_matrix::<F>(g), dim)
}

/// `q(G)` from a full Jacobi decomposition of `D + A`.
pub fn dense_signless_radius<F: Scalar>(g: &BipartiteGraph) -> F {
    let dim = g.x_count() + g.y_count();
    largest_eigenvalue(&signless_laplacian_matrix::<F>(g), dim)
}
