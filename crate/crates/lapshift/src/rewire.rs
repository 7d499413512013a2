//! Graph rewiring by self-loop addition and parallel-edge duplication.
//!
//! Two operators, freely composable:
//!
//! * self-loops, strength `alpha`: adds `alpha` to every node's loop weight,
//!   turning the adjacency into `A + alpha*I` and every degree into
//!   `d + alpha`;
//! * parallel edges, multiplicity `gamma`: scales every edge weight by
//!   `gamma + 1` (each edge gains `gamma` parallel copies), leaving loop
//!   weights alone.
//!
//! [`rewire`] applies parallel edges first, then self-loops, so on a
//! loop-free graph the result has adjacency `(gamma+1)A + alpha*I`. Both
//! operators are pure: they return a new graph and never mutate the input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A rewiring configuration. `(0, 0)` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewireConfig {
    pub alpha: f64,
    pub gamma: f64,
}

impl RewireConfig {
    pub fn new(alpha: f64, gamma: f64) -> Result<Self> {
        check_nonnegative("alpha", alpha)?;
        check_nonnegative("gamma", gamma)?;
        Ok(RewireConfig { alpha, gamma })
    }

    pub fn identity() -> Self {
        RewireConfig {
            alpha: 0.0,
            gamma: 0.0,
        }
    }

    /// Self-loops only: adjacency `A + alpha*I`.
    pub fn self_loops(alpha: f64) -> Result<Self> {
        Self::new(alpha, 0.0)
    }

    /// Parallel edges plus one self-loop: adjacency `(gamma+1)A + I`.
    pub fn parallel_edges(gamma: f64) -> Result<Self> {
        Self::new(1.0, gamma)
    }

    pub fn is_identity(&self) -> bool {
        self.alpha == 0.0 && self.gamma == 0.0
    }
}

impl Default for RewireConfig {
    fn default() -> Self {
        Self::identity()
    }
}

fn check_nonnegative(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::NegativeParameter { name, value });
    }
    Ok(())
}

/// Returns a copy of `g` with `alpha` added to every loop weight.
pub fn add_self_loops(g: &Graph, alpha: f64) -> Result<Graph> {
    check_nonnegative("alpha", alpha)?;
    let mut out = g.clone();
    if alpha > 0.0 {
        for i in 0..g.node_count() {
            out.add_loop_weight(i, alpha)?;
        }
    }
    Ok(out)
}

/// Returns a copy of `g` with every edge weight multiplied by `gamma + 1`.
pub fn add_parallel_edges(g: &Graph, gamma: f64) -> Result<Graph> {
    check_nonnegative("gamma", gamma)?;
    if gamma == 0.0 {
        return Ok(g.clone());
    }
    let scale = gamma + 1.0;
    let mut out = Graph::from_edges(
        g.node_count(),
        g.edges().iter().map(|&(u, v, w)| (u, v, w * scale)),
    )?;
    for i in 0..g.node_count() {
        let w = g.loop_weight(i);
        if w > 0.0 {
            out.add_loop_weight(i, w)?;
        }
    }
    Ok(out)
}

/// Applies a full configuration: parallel edges first, then self-loops.
pub fn rewire(g: &Graph, cfg: &RewireConfig) -> Result<Graph> {
    add_self_loops(&add_parallel_edges(g, cfg.gamma)?, cfg.alpha)
}
