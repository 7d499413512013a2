//! Seeded random and structured graph generators.
//!
//! Randomness is derived per node pair, not per draw order: each unordered
//! pair gets its own ChaCha stream indexed by the pair's triangular number,
//! all seeded from the caller's seed. The edge set therefore depends only on
//! `(seed, n, parameters)`, never on iteration order or platform, and the
//! subgraph induced by the first `m` nodes of a generation at size `n`
//! equals the generation at size `m` with the same seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Stream index of the unordered pair `u < v` in the triangular layout.
fn pair_stream(u: usize, v: usize) -> u64 {
    debug_assert!(u < v);
    (v as u64) * (v as u64 - 1) / 2 + u as u64
}

/// Bernoulli draw for one pair on its own stream.
fn pair_coin(seed: u64, u: usize, v: usize, p: f64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(pair_stream(u, v));
    rng.random::<f64>() < p
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability { name, value: p });
    }
    Ok(())
}

/// Samples an Erdos-Renyi graph `G(n, p)`: every unordered pair becomes an
/// edge independently with probability `p`.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability("p", p)?;
    let mut pairs = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if pair_coin(seed, u, v, p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_pairs(n, pairs)
}

/// Builds the circulant graph on `n` nodes connecting each node `i` to
/// `i + o (mod n)` for every offset `o`.
///
/// Offsets must lie in `1..=n/2`; duplicates and the wrap-around doubling at
/// `o = n/2` collapse because the edge set is deduplicated. The result is
/// regular with degree `2 * |offsets|`, minus one when `n` is even and
/// `n/2` is among the offsets.
pub fn gen_circulant(n: usize, offsets: &[usize]) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidConfig(format!(
            "circulant needs at least 3 nodes, got {n}"
        )));
    }
    if offsets.is_empty() {
        return Err(Error::InvalidConfig("no circulant offsets given".to_string()));
    }
    let mut pairs = std::collections::BTreeSet::new();
    for &o in offsets {
        if o == 0 || o > n / 2 {
            return Err(Error::InvalidConfig(format!(
                "circulant offset {o} outside 1..={}",
                n / 2
            )));
        }
        for i in 0..n {
            let j = (i + o) % n;
            pairs.insert((i.min(j), i.max(j)));
        }
    }
    Graph::from_pairs(n, pairs)
}

/// Samples a planted-partition graph: `classes` balanced groups, edge
/// probability `p_in` inside a group and `p_out` across groups.
///
/// Node `i` belongs to class `(i * classes) / n`, which splits `0..n` into
/// contiguous blocks whose sizes differ by at most one. Returns the graph
/// and the class labels.
pub fn gen_planted_partition(
    n: usize,
    classes: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<(Graph, Vec<usize>)> {
    check_probability("p_in", p_in)?;
    check_probability("p_out", p_out)?;
    if classes == 0 || classes > n {
        return Err(Error::InvalidConfig(format!(
            "need 1..={n} classes for {n} nodes, got {classes}"
        )));
    }
    let labels: Vec<usize> = (0..n).map(|i| i * classes / n).collect();
    let mut pairs = Vec::new();
    for v in 1..n {
        for u in 0..v {
            let p = if labels[u] == labels[v] { p_in } else { p_out };
            if pair_coin(seed, u, v, p) {
                pairs.push((u, v));
            }
        }
    }
    Ok((Graph::from_pairs(n, pairs)?, labels))
}

/// A generator request, as accepted on the command line and in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum GenSpec {
    /// Erdos-Renyi `G(n, p)`.
    Er { n: usize, p: f64 },
    /// Circulant graph with the given offsets.
    Circulant { n: usize, offsets: Vec<usize> },
    /// Balanced planted partition.
    Planted {
        n: usize,
        classes: usize,
        p_in: f64,
        p_out: f64,
    },
}

/// Output of [`generate`]: the graph plus labels when the model has them.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub labels: Option<Vec<usize>>,
}

/// Runs a generator request. The seed is ignored by deterministic models.
pub fn generate(spec: &GenSpec, seed: u64) -> Result<Generated> {
    match spec {
        GenSpec::Er { n, p } => Ok(Generated {
            graph: gen_erdos_renyi(*n, *p, seed)?,
            labels: None,
        }),
        GenSpec::Circulant { n, offsets } => Ok(Generated {
            graph: gen_circulant(*n, offsets)?,
            labels: None,
        }),
        GenSpec::Planted {
            n,
            classes,
            p_in,
            p_out,
        } => {
            let (graph, labels) = gen_planted_partition(*n, *classes, *p_in, *p_out, seed)?;
            Ok(Generated {
                graph,
                labels: Some(labels),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn extreme_probabilities_give_complete_and_empty_graphs() {
        let g = gen_erdos_renyi(4, 1.0, 7).unwrap();
        assert_eq!(g.edge_count(), 6);
        let g = gen_erdos_renyi(4, 0.0, 7).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn same_seed_reproduces_different_seed_varies() {
        let a = gen_erdos_renyi(20, 0.5, 123).unwrap();
        let b = gen_erdos_renyi(20, 0.5, 123).unwrap();
        assert_eq!(a.edges(), b.edges());
        let c = gen_erdos_renyi(20, 0.5, 124).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn prefix_nodes_induce_the_smaller_generation() {
        // Pair streams depend only on the pair, so growing n must not
        // disturb edges among earlier nodes.
        let small = gen_erdos_renyi(5, 0.4, 99).unwrap();
        let large = gen_erdos_renyi(12, 0.4, 99).unwrap();
        let restricted: Vec<_> = large
            .edges()
            .iter()
            .filter(|&&(u, v, _)| u < 5 && v < 5)
            .cloned()
            .collect();
        assert_eq!(small.edges(), restricted.as_slice());
    }

    #[test]
    fn edge_frequency_tracks_probability() {
        let mut hits = 0usize;
        for seed in 0..400u64 {
            if gen_erdos_renyi(2, 0.5, seed).unwrap().edge_count() == 1 {
                hits += 1;
            }
        }
        let freq = hits as f64 / 400.0;
        assert!((0.40..=0.60).contains(&freq), "frequency {freq}");
    }

    #[test]
    fn midsize_generation_lands_in_plausible_edge_range() {
        for seed in [1u64, 2, 3, 4, 5] {
            let m = gen_erdos_renyi(10, 0.5, seed).unwrap().edge_count();
            assert!((5..=40).contains(&m), "seed {seed}: {m} edges");
        }
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(matches!(
            gen_erdos_renyi(5, 1.5, 0),
            Err(Error::InvalidProbability { name: "p", .. })
        ));
        assert!(gen_erdos_renyi(5, -0.1, 0).is_err());
    }

    #[test]
    fn single_offset_circulant_is_a_ring() {
        let g = gen_circulant(6, &[1]).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.regular_degree(), Some(2.0));
        assert!(crate::graph::is_connected(&g));
    }

    #[test]
    fn half_n_offset_halves_the_degree() {
        // On C4 the offset 2 pairs opposite nodes once, so {1, 2} gives K4.
        let g = gen_circulant(4, &[1, 2]).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.regular_degree(), Some(3.0));
    }

    #[test]
    fn two_offsets_on_five_nodes_complete_the_graph() {
        let g = gen_circulant(5, &[1, 2]).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.regular_degree(), Some(4.0));
    }

    #[test]
    fn circulant_rejects_bad_offsets() {
        assert!(gen_circulant(6, &[]).is_err());
        assert!(gen_circulant(6, &[0]).is_err());
        assert!(gen_circulant(6, &[4]).is_err());
        assert!(gen_circulant(2, &[1]).is_err());
    }

    #[test]
    fn pure_within_class_partition_splits_into_cliques() {
        let (g, labels) = gen_planted_partition(4, 2, 1.0, 0.0, 5).unwrap();
        assert_eq!(labels, vec![0, 0, 1, 1]);
        assert_eq!(g.edges(), &[(0, 1, 1.0), (2, 3, 1.0)]);
        let (_, count) = crate::graph::connected_components(&g);
        assert_eq!(count, 2);
    }

    #[test]
    fn homophilous_partition_favors_within_class_edges() {
        let (g, labels) = gen_planted_partition(40, 2, 0.9, 0.05, 11).unwrap();
        let (mut within, mut across) = (0usize, 0usize);
        for &(u, v, _) in g.edges() {
            if labels[u] == labels[v] {
                within += 1;
            } else {
                across += 1;
            }
        }
        // 190 within-pairs at 0.9 vs 400 across-pairs at 0.05: the within
        // count should dominate by a wide margin.
        assert!(within > 4 * across, "within {within}, across {across}");
    }

    #[test]
    fn partition_rejects_bad_class_counts() {
        assert!(gen_planted_partition(4, 0, 0.5, 0.5, 0).is_err());
        assert!(gen_planted_partition(4, 5, 0.5, 0.5, 0).is_err());
    }

    #[test]
    fn spec_round_trips_through_json_and_dispatches() {
        let spec = GenSpec::Er { n: 6, p: 0.5 };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"model\":\"er\""));
        assert_eq!(serde_json::from_str::<GenSpec>(&json).unwrap(), spec);

        let direct = gen_erdos_renyi(6, 0.5, 42).unwrap();
        let via_spec = generate(&spec, 42).unwrap();
        assert_eq!(direct.edges(), via_spec.graph.edges());
        assert!(via_spec.labels.is_none());

        let planted = GenSpec::Planted {
            n: 8,
            classes: 2,
            p_in: 0.8,
            p_out: 0.1,
        };
        let out = generate(&planted, 1).unwrap();
        assert_eq!(out.labels.as_ref().unwrap().len(), 8);
    }

    proptest! {
        #[test]
        fn labels_are_balanced_blocks(n in 1usize..60, classes in 1usize..8) {
            prop_assume!(classes <= n);
            let (_, labels) = gen_planted_partition(n, classes, 0.0, 0.0, 0).unwrap();
            let mut counts = vec![0usize; classes];
            for (i, &c) in labels.iter().enumerate() {
                prop_assert!(c < classes);
                counts[c] += 1;
                if i > 0 {
                    prop_assert!(labels[i - 1] <= c);
                }
            }
            let lo = counts.iter().min().unwrap();
            let hi = counts.iter().max().unwrap();
            prop_assert!(hi - lo <= 1);
        }

        #[test]
        fn growing_p_only_adds_edges(seed in 0u64..50) {
            // Each pair reuses its draw across p, so raising p can only
            // turn more pairs on: the edge sets are nested.
            let a = gen_erdos_renyi(9, 0.3, seed).unwrap();
            let b = gen_erdos_renyi(9, 0.7, seed).unwrap();
            prop_assert!(a.edge_count() <= b.edge_count());
            for &(u, v, _) in a.edges() {
                prop_assert!(b.edges().iter().any(|&(x, y, _)| (x, y) == (u, v)));
            }
        }
    }
}
