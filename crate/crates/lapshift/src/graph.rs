//! Undirected weighted graphs with separately tracked self-loop mass.
//!
//! A [`Graph`] stores each undirected edge `(u, v, w)` once with `u < v`;
//! self-loops never live in the edge set but in a per-node `loop_weight`
//! vector. The degree of a node is the sum of its incident edge weights plus
//! its loop weight, which is exactly the row sum of the adjacency matrix with
//! loop weights on the diagonal.
//!
//! The edge-list text format is one edge per line, `u v` or `u v w`
//! (whitespace separated, weight defaults to 1), with `#`-prefixed comment
//! lines and blank lines ignored. Duplicate lines merge by summing weights.
//! A line with equal endpoints `u u w` adds `w` to node `u`'s loop weight, so
//! rewired graphs round-trip through the format.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default epsilon for the `-ln(x + eps)` log-scaled statistics.
pub const DEFAULT_LOG_EPSILON: f64 = 1e-12;

/// Undirected weighted graph. Invariants: every stored edge has `u < v` and
/// appears once; weights and loop weights are finite and nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    loop_weight: Vec<f64>,
}

impl Graph {
    /// Empty graph on `n` nodes.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            loop_weight: vec![0.0; n],
        }
    }

    /// Builds a graph from an edge iterator. Endpoints may come in either
    /// order; duplicates merge by summing weights; `(u, u, w)` adds loop
    /// weight. Errors on out-of-range nodes or negative/non-finite weights.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        let mut loops = vec![0.0; n];
        for (u, v, w) in edges {
            let hi = u.max(v);
            if hi >= n {
                return Err(Error::NodeOutOfRange { node: hi, n });
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::NegativeWeight { u, v, weight: w });
            }
            if u == v {
                loops[u] += w;
            } else {
                *merged.entry((u.min(v), u.max(v))).or_insert(0.0) += w;
            }
        }
        Ok(Graph {
            n,
            edges: merged.into_iter().map(|((u, v), w)| (u, v, w)).collect(),
            loop_weight: loops,
        })
    }

    /// Unweighted convenience constructor: every edge gets weight 1.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, pairs.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of distinct undirected edges (loops excluded).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v, weight)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn loop_weight(&self, node: usize) -> f64 {
        self.loop_weight[node]
    }

    pub fn loop_weights(&self) -> &[f64] {
        &self.loop_weight
    }

    /// Adds `w` to the loop weight of `node`.
    pub fn add_loop_weight(&mut self, node: usize, w: f64) -> Result<()> {
        if node >= self.n {
            return Err(Error::NodeOutOfRange { node, n: self.n });
        }
        if !w.is_finite() || w < 0.0 {
            return Err(Error::NegativeWeight {
                u: node,
                v: node,
                weight: w,
            });
        }
        self.loop_weight[node] += w;
        Ok(())
    }

    /// Weighted degree: incident edge weights plus loop weight.
    pub fn degree(&self, node: usize) -> f64 {
        self.degrees()[node]
    }

    /// Weighted degrees of all nodes.
    pub fn degrees(&self) -> Vec<f64> {
        let mut d = self.loop_weight.clone();
        for &(u, v, w) in &self.edges {
            d[u] += w;
            d[v] += w;
        }
        d
    }

    /// Degrees counting only edges, not loop weight. This is the degree
    /// vector of the un-rewired structure.
    pub fn edge_degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for &(u, v, w) in &self.edges {
            d[u] += w;
            d[v] += w;
        }
        d
    }

    /// Dense adjacency matrix with loop weights on the diagonal.
    pub fn adjacency_matrix(&self) -> ndarray::Array2<f64> {
        let mut a = ndarray::Array2::zeros((self.n, self.n));
        for i in 0..self.n {
            a[[i, i]] = self.loop_weight[i];
        }
        for &(u, v, w) in &self.edges {
            a[[u, v]] += w;
            a[[v, u]] += w;
        }
        a
    }

    /// If every node has the same weighted degree (within `1e-9`) and no
    /// loop weight, returns that common degree.
    pub fn regular_degree(&self) -> Option<f64> {
        if self.n == 0 || self.loop_weight.iter().any(|&w| w != 0.0) {
            return None;
        }
        let d = self.degrees();
        let k = d[0];
        if d.iter().all(|&x| (x - k).abs() <= 1e-9) {
            Some(k)
        } else {
            None
        }
    }

    /// Applies a node relabeling: node `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                what: "permutation",
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::InvalidConfig(format!(
                    "not a permutation of 0..{}",
                    self.n
                )));
            }
            seen[p] = true;
        }
        let mut g = Graph::from_edges(
            self.n,
            self.edges.iter().map(|&(u, v, w)| (perm[u], perm[v], w)),
        )?;
        for i in 0..self.n {
            g.loop_weight[perm[i]] = self.loop_weight[i];
        }
        Ok(g)
    }

    /// Writes the edge-list text format. Loop weights appear as `i i w`
    /// lines; weights equal to 1 are omitted.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# nodes: {}", self.n)?;
        for &(u, v, w) in &self.edges {
            if w == 1.0 {
                writeln!(out, "{} {}", u, v)?;
            } else {
                writeln!(out, "{} {} {}", u, v, w)?;
            }
        }
        for (i, &w) in self.loop_weight.iter().enumerate() {
            if w != 0.0 {
                writeln!(out, "{} {} {}", i, i, w)?;
            }
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("write to Vec");
        String::from_utf8(buf).expect("edge list is ASCII")
    }
}

/// Parses the edge-list text format. The node count is the largest of
/// `max id + 1`, a `# nodes: <count>` header if present, and `n_hint`;
/// the header is what lets trailing isolated nodes survive a round trip.
pub fn load_edge_list<R: BufRead>(reader: R, n_hint: Option<usize>) -> Result<Graph> {
    let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut loops: BTreeMap<usize, f64> = BTreeMap::new();
    let mut max_id: Option<usize> = None;
    let mut header_n = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(count) = rest.trim().strip_prefix("nodes:") {
                    if let Ok(k) = count.trim().parse::<usize>() {
                        header_n = header_n.max(k);
                    }
                }
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected `u v` or `u v w`, got {} fields", fields.len()),
            });
        }
        let u: usize = fields[0].parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid node id `{}`", fields[0]),
        })?;
        let v: usize = fields[1].parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid node id `{}`", fields[1]),
        })?;
        let w: f64 = match fields.get(2) {
            None => 1.0,
            Some(tok) => tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid weight `{}`", tok),
            })?,
        };
        if !w.is_finite() || w < 0.0 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("weight must be finite and nonnegative, got {}", w),
            });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        if u == v {
            *loops.entry(u).or_insert(0.0) += w;
        } else {
            *merged.entry((u.min(v), u.max(v))).or_insert(0.0) += w;
        }
    }

    let needed = max_id.map_or(0, |m| m + 1);
    let n = n_hint.unwrap_or(0).max(header_n).max(needed);
    let mut g = Graph {
        n,
        edges: merged.into_iter().map(|((u, v), w)| (u, v, w)).collect(),
        loop_weight: vec![0.0; n],
    };
    for (i, w) in loops {
        g.loop_weight[i] = w;
    }
    Ok(g)
}

/// Reads an edge list from a file path.
pub fn load_edge_list_path(path: &std::path::Path, n_hint: Option<usize>) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    load_edge_list(std::io::BufReader::new(file), n_hint)
}

/// Component label per node plus the component count. Labels are assigned in
/// order of first appearance by node index, so node 0 always has label 0.
pub fn connected_components(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.node_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v, _) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if label[v] == usize::MAX {
                    label[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

pub fn is_connected(g: &Graph) -> bool {
    g.node_count() <= 1 || connected_components(g).1 == 1
}

/// Size/density statistics in raw and log-scaled form.
///
/// `density = 2m / (n(n-1))` and `avg_degree = 2m / n` count distinct edges
/// (`m`), not weight mass. The log-scaled variants are `-ln(x + epsilon)`.
/// A node is isolated when its weighted degree (edges plus loop weight) is 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub n: usize,
    pub m: usize,
    pub isolated_count: usize,
    /// Percentage of nodes that are isolated, in [0, 100].
    pub isolated_pct: f64,
    pub density: f64,
    pub avg_degree: f64,
    pub log_density: f64,
    pub log_avg_degree: f64,
    pub epsilon: f64,
}

/// Computes [`GraphMetrics`] with the given log epsilon.
pub fn compute_metrics(g: &Graph, epsilon: f64) -> GraphMetrics {
    let n = g.node_count();
    let m = g.edge_count();
    let isolated_count = g.degrees().iter().filter(|&&d| d == 0.0).count();
    let density = if n <= 1 {
        0.0
    } else {
        2.0 * m as f64 / (n as f64 * (n as f64 - 1.0))
    };
    let avg_degree = if n == 0 { 0.0 } else { 2.0 * m as f64 / n as f64 };
    GraphMetrics {
        n,
        m,
        isolated_count,
        isolated_pct: if n == 0 {
            0.0
        } else {
            100.0 * isolated_count as f64 / n as f64
        },
        density,
        avg_degree,
        log_density: -(density + epsilon).ln(),
        log_avg_degree: -(avg_degree + epsilon).ln(),
        epsilon,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k3() -> Graph {
        Graph::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn single_edge_loads() {
        let g = load_edge_list("0 1\n".as_bytes(), None).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edges(), &[(0, 1, 1.0)]);
    }

    #[test]
    fn duplicates_merge_by_summing() {
        let g = load_edge_list("0 1 2\n1 0 3\n".as_bytes(), None).unwrap();
        assert_eq!(g.edges(), &[(0, 1, 5.0)]);
    }

    #[test]
    fn comments_blanks_and_weights() {
        let text = "# triangle\n\n0 1\n1 2 2.5\n0 2\n";
        let g = load_edge_list(text.as_bytes(), None).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(1), 3.5);
    }

    #[test]
    fn equal_endpoints_become_loop_weight() {
        let g = load_edge_list("0 1\n1 1 0.5\n".as_bytes(), None).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.loop_weight(1), 0.5);
        assert_eq!(g.degree(1), 1.5);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = load_edge_list("0 1\nnope 2\n".as_bytes(), None).unwrap_err();
        assert!(err.to_string().starts_with("line 2:"), "{err}");
        let err = load_edge_list("0 1 2 3\n".as_bytes(), None).unwrap_err();
        assert!(err.to_string().contains("4 fields"), "{err}");
        let err = load_edge_list("0 1 -2\n".as_bytes(), None).unwrap_err();
        assert!(err.to_string().starts_with("line 1:"), "{err}");
    }

    #[test]
    fn n_hint_only_raises() {
        let g = load_edge_list("0 1\n".as_bytes(), Some(5)).unwrap();
        assert_eq!(g.node_count(), 5);
        let g = load_edge_list("0 4\n".as_bytes(), Some(2)).unwrap();
        assert_eq!(g.node_count(), 5);
    }

    #[test]
    fn edge_list_round_trips() {
        let mut g = Graph::from_edges(4, [(0, 1, 1.0), (2, 3, 2.0)]).unwrap();
        g.add_loop_weight(1, 3.0).unwrap();
        let text = g.to_edge_list_string();
        let back = load_edge_list(text.as_bytes(), Some(4)).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 3, 1.0)]),
            Err(Error::NodeOutOfRange { node: 3, n: 2 })
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 1, -1.0)]),
            Err(Error::NegativeWeight { .. })
        ));
    }

    #[test]
    fn triangle_metrics() {
        let m = compute_metrics(&k3(), DEFAULT_LOG_EPSILON);
        assert_eq!(m.n, 3);
        assert_eq!(m.m, 3);
        assert_eq!(m.density, 1.0);
        assert_eq!(m.avg_degree, 2.0);
        assert_eq!(m.isolated_count, 0);
        assert!((m.log_density - -(1.0f64 + 1e-12).ln()).abs() < 1e-15);
    }

    #[test]
    fn path_metrics() {
        let g = Graph::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        let m = compute_metrics(&g, DEFAULT_LOG_EPSILON);
        assert!((m.density - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.avg_degree - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn single_node_density_is_zero() {
        let m = compute_metrics(&Graph::new(1), DEFAULT_LOG_EPSILON);
        assert_eq!(m.density, 0.0);
        assert_eq!(m.avg_degree, 0.0);
        assert_eq!(m.isolated_count, 1);
        assert_eq!(m.isolated_pct, 100.0);
    }

    #[test]
    fn isolated_share_matches_hand_count() {
        // 183 nodes, 87 of them isolated: the share prints as 47.5%.
        let edges: Vec<(usize, usize)> = (0..48).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = Graph::from_pairs(183, edges).unwrap();
        let m = compute_metrics(&g, DEFAULT_LOG_EPSILON);
        assert_eq!(m.isolated_count, 87);
        assert_eq!(format!("{:.1}", m.isolated_pct), "47.5");
    }

    #[test]
    fn components_labels_are_canonical() {
        let (labels, count) = connected_components(&k3());
        assert_eq!((labels, count), (vec![0, 0, 0], 1));

        let g = Graph::from_pairs(4, [(0, 1), (2, 3)]).unwrap();
        let (labels, count) = connected_components(&g);
        assert_eq!((labels, count), (vec![0, 0, 1, 1], 2));

        let g = Graph::new(3);
        let (labels, count) = connected_components(&g);
        assert_eq!((labels, count), (vec![0, 1, 2], 3));
    }

    #[test]
    fn regular_degree_detects_regularity() {
        assert_eq!(k3().regular_degree(), Some(2.0));
        let path = Graph::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.regular_degree(), None);
        let mut looped = k3();
        looped.add_loop_weight(0, 1.0).unwrap();
        assert_eq!(looped.regular_degree(), None);
    }

    #[test]
    fn permuted_relabels_consistently() {
        let g = Graph::from_edges(3, [(0, 1, 2.0), (1, 2, 3.0)]).unwrap();
        let p = g.permuted(&[2, 0, 1]).unwrap();
        // old (0,1,2.0) -> (2,0); old (1,2,3.0) -> (0,1)
        assert_eq!(p.edges(), &[(0, 1, 3.0), (0, 2, 2.0)]);
        assert!(g.permuted(&[0, 0, 1]).is_err());
    }

    proptest! {
        #[test]
        fn degree_sum_is_twice_edge_weight_plus_loops(
            n in 1usize..12,
            raw in proptest::collection::vec((0usize..12, 0usize..12, 0.0f64..5.0), 0..30),
        ) {
            let edges: Vec<_> = raw
                .into_iter()
                .map(|(u, v, w)| (u % n, v % n, w))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let total_w: f64 = g.edges().iter().map(|e| e.2).sum();
            let total_loops: f64 = g.loop_weights().iter().sum();
            let deg_sum: f64 = g.degrees().iter().sum();
            prop_assert!((deg_sum - (2.0 * total_w + total_loops)).abs() < 1e-9);
        }

        #[test]
        fn metrics_are_permutation_invariant(
            n in 2usize..10,
            raw in proptest::collection::vec((0usize..10, 0usize..10), 0..20),
            seed in 0u64..1000,
        ) {
            let edges: Vec<_> = raw.into_iter().map(|(u, v)| (u % n, v % n)).collect();
            let g = Graph::from_pairs(n, edges).unwrap();
            // cheap seeded permutation
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = g.permuted(&perm).unwrap();
            let a = compute_metrics(&g, DEFAULT_LOG_EPSILON);
            let b = compute_metrics(&h, DEFAULT_LOG_EPSILON);
            prop_assert_eq!(a, b);
            prop_assert_eq!(connected_components(&g).1, connected_components(&h).1);
        }

        #[test]
        fn components_match_reachability_closure(
            n in 1usize..8,
            raw in proptest::collection::vec((0usize..8, 0usize..8), 0..16),
        ) {
            let edges: Vec<_> = raw.into_iter().map(|(u, v)| (u % n, v % n)).collect();
            let g = Graph::from_pairs(n, edges).unwrap();
            // independent oracle: boolean transitive closure
            let mut reach = vec![vec![false; n]; n];
            for i in 0..n { reach[i][i] = true; }
            for &(u, v, _) in g.edges() {
                reach[u][v] = true;
                reach[v][u] = true;
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if reach[i][k] && reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
            let (labels, count) = connected_components(&g);
            let mut max_label = 0;
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(labels[i] == labels[j], reach[i][j]);
                }
                max_label = max_label.max(labels[i]);
            }
            prop_assert_eq!(count, max_label + 1);
        }
    }
}
