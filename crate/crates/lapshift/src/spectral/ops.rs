//! Normalized adjacency and Laplacian matrices.
//!
//! With `Abar` the adjacency including loop weights on the diagonal and `D`
//! the weighted degrees, the normalized adjacency is
//! `D^{-1/2} Abar D^{-1/2}` and the normalized Laplacian is `I` minus that.
//! Both require strictly positive degrees; a zero-degree node is reported by
//! index so callers know which node needs a self-loop first.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rewire::{rewire, RewireConfig};

fn inv_sqrt_degrees(d: &[f64]) -> Result<Vec<f64>> {
    d.iter()
        .enumerate()
        .map(|(i, &x)| {
            if x <= 0.0 {
                Err(Error::ZeroDegree(i))
            } else {
                Ok(1.0 / x.sqrt())
            }
        })
        .collect()
}

/// `D^{-1/2} Abar D^{-1/2}` with loop weights on the diagonal and degrees
/// including loop weight. Symmetric by construction.
pub fn normalized_adjacency(g: &Graph) -> Result<Array2<f64>> {
    let n = g.node_count();
    let s = inv_sqrt_degrees(&g.degrees())?;
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        let lw = g.loop_weight(i);
        if lw != 0.0 {
            m[[i, i]] = lw * s[i] * s[i];
        }
    }
    for &(u, v, w) in g.edges() {
        let x = w * s[u] * s[v];
        m[[u, v]] = x;
        m[[v, u]] = x;
    }
    Ok(m)
}

/// `I - D^{-1/2} Abar D^{-1/2}`.
pub fn normalized_laplacian(g: &Graph) -> Result<Array2<f64>> {
    let mut m = normalized_adjacency(g)?;
    for i in 0..g.node_count() {
        m[[i, i]] = 1.0 - m[[i, i]];
        for j in 0..g.node_count() {
            if i != j {
                m[[i, j]] = -m[[i, j]];
            }
        }
    }
    Ok(m)
}

/// Normalized Laplacian of the rewired graph `rewire(g, cfg)`.
pub fn normalized_laplacian_rewired(g: &Graph, cfg: &RewireConfig) -> Result<Array2<f64>> {
    normalized_laplacian(&rewire(g, cfg)?)
}

/// Normalized adjacency of the rewired graph `rewire(g, cfg)`.
pub fn normalized_adjacency_rewired(g: &Graph, cfg: &RewireConfig) -> Result<Array2<f64>> {
    normalized_adjacency(&rewire(g, cfg)?)
}

/// Normalized adjacency of the loop-free structure: loop weights are ignored
/// in both the matrix and the degrees. This is the base operator whose
/// smallest eigenvalue drives the rewiring bounds.
pub fn base_normalized_adjacency(g: &Graph) -> Result<Array2<f64>> {
    let n = g.node_count();
    let s = inv_sqrt_degrees(&g.edge_degrees())?;
    let mut m = Array2::zeros((n, n));
    for &(u, v, w) in g.edges() {
        let x = w * s[u] * s[v];
        m[[u, v]] = x;
        m[[v, u]] = x;
    }
    Ok(m)
}

/// Which degree augmentation to sandwich the loop-free adjacency with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeAugmentation {
    /// `D + alpha*I`
    SelfLoop(f64),
    /// `(1+gamma)D + I`
    ParallelEdge(f64),
}

/// `Dt^{-1/2} A Dt^{-1/2}` where `A` is the loop-free adjacency and `Dt` the
/// augmented degree matrix. The extremal eigenvalues of this operator are
/// what the degree-ratio bounds constrain.
pub fn augmented_normalized_adjacency(g: &Graph, aug: DegreeAugmentation) -> Result<Array2<f64>> {
    let n = g.node_count();
    let d = g.edge_degrees();
    let dt: Vec<f64> = match aug {
        DegreeAugmentation::SelfLoop(alpha) => d.iter().map(|&x| x + alpha).collect(),
        DegreeAugmentation::ParallelEdge(gamma) => {
            d.iter().map(|&x| (1.0 + gamma) * x + 1.0).collect()
        }
    };
    let s = inv_sqrt_degrees(&dt)?;
    let mut m = Array2::zeros((n, n));
    for &(u, v, w) in g.edges() {
        let x = w * s[u] * s[v];
        m[[u, v]] = x;
        m[[v, u]] = x;
    }
    Ok(m)
}

/// Unnormalized Laplacian `D - Abar`. Loop weights cancel between the degree
/// and the diagonal, so this never depends on self-loops and needs no
/// positive-degree precondition.
pub fn laplacian(g: &Graph) -> Array2<f64> {
    let n = g.node_count();
    let mut m = Array2::zeros((n, n));
    for &(u, v, w) in g.edges() {
        m[[u, v]] -= w;
        m[[v, u]] -= w;
        m[[u, u]] += w;
        m[[v, v]] += w;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewire::add_self_loops;

    fn k2() -> Graph {
        Graph::from_pairs(2, [(0, 1)]).unwrap()
    }

    fn k3() -> Graph {
        Graph::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn k2_with_loop_is_averaging() {
        let g = add_self_loops(&k2(), 1.0).unwrap();
        let m = normalized_adjacency(&g).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[[i, j]] - 0.5).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn k3_with_loop_is_uniform_third() {
        let g = add_self_loops(&k3(), 1.0).unwrap();
        let m = normalized_adjacency(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((m[[i, j]] - 1.0 / 3.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn single_node_with_loop() {
        let mut g = Graph::new(1);
        g.add_loop_weight(0, 1.0).unwrap();
        let m = normalized_adjacency(&g).unwrap();
        assert_eq!(m[[0, 0]], 1.0);
        let l = normalized_laplacian(&g).unwrap();
        assert_eq!(l[[0, 0]], 0.0);
    }

    #[test]
    fn zero_degree_node_is_named() {
        let g = Graph::from_pairs(3, [(0, 1)]).unwrap();
        let err = normalized_adjacency(&g).unwrap_err();
        assert!(matches!(err, Error::ZeroDegree(2)));
    }

    #[test]
    fn laplacian_ignores_loops() {
        let g = k3();
        let with_loops = add_self_loops(&g, 5.0).unwrap();
        assert_eq!(laplacian(&g), laplacian(&with_loops));
        let l = laplacian(&g);
        for i in 0..3 {
            assert_eq!(l[[i, i]], 2.0);
            for j in 0..3 {
                if i != j {
                    assert_eq!(l[[i, j]], -1.0);
                }
            }
        }
    }

    #[test]
    fn normalized_matrices_are_symmetric() {
        let g = Graph::from_edges(4, [(0, 1, 2.0), (1, 2, 0.5), (2, 3, 1.0), (0, 3, 3.0)]).unwrap();
        let g = add_self_loops(&g, 0.7).unwrap();
        let m = normalized_adjacency(&g).unwrap();
        let l = normalized_laplacian(&g).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((m[[i, j]] - m[[j, i]]).abs() < 1e-14);
                assert!((l[[i, j]] - l[[j, i]]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn base_operator_ignores_loop_mass() {
        let g = k3();
        let looped = add_self_loops(&g, 3.0).unwrap();
        assert_eq!(
            base_normalized_adjacency(&g).unwrap(),
            base_normalized_adjacency(&looped).unwrap()
        );
    }

    #[test]
    fn augmented_operator_on_path() {
        // path 0-1-2, alpha=1: degrees (1,2,1) -> augmented (2,3,2),
        // off-diagonal entries 1/sqrt(6)
        let g = Graph::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        let m = augmented_normalized_adjacency(&g, DegreeAugmentation::SelfLoop(1.0)).unwrap();
        let x = 1.0 / 6.0f64.sqrt();
        assert!((m[[0, 1]] - x).abs() < 1e-15);
        assert!((m[[1, 2]] - x).abs() < 1e-15);
        assert_eq!(m[[0, 0]], 0.0);
    }
}
