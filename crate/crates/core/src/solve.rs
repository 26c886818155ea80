//! Exact computation of the forcing number and total forcing number by
//! cardinality-ascending subset search, exhaustive enumeration of all
//! minimum TF-sets, and an independent path-cover oracle for trees.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::forcing::{closure, induces_isolate_free, ClosureResult};
use crate::graph::{Graph, GraphError};
use crate::set::VertexSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("order {order} exceeds the solver bound {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("no total forcing set exists for a graph of order {0}")]
    NoTotalForcingSet(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Tuning knobs for the subset search. The defaults match the production
/// behavior; sweeps that check the leaf lower bound itself disable
/// `leaf_lower_bound` so the checked inequality is not assumed by the
/// search.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Order cap for `forcing_number`.
    pub max_order_forcing: usize,
    /// Order cap for `total_forcing_number`.
    pub max_order_total: usize,
    /// Order cap for `all_minimum_tf_sets`.
    pub max_order_exhaustive: usize,
    /// Pin every strong support vertex and all but the lowest-indexed leaf
    /// of each into candidate TF-sets. Sound for total forcing only: every
    /// TF-set contains the strong supports and all but at most one leaf
    /// neighbor of each, and leaves under one support are interchangeable.
    pub mandatory_pruning: bool,
    /// Start the TF search at the leaf count when the input is a tree.
    pub leaf_lower_bound: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_order_forcing: 24,
            max_order_total: 20,
            max_order_exhaustive: 12,
            mandatory_pruning: true,
            leaf_lower_bound: true,
        }
    }
}

impl SolverConfig {
    /// Configuration for theorem sweeps: keeps the Observation-2 pruning
    /// but drops the leaf-count starting cardinality, so sweeps checking
    /// that bound start from scratch.
    pub fn unassuming() -> Self {
        SolverConfig {
            leaf_lower_bound: false,
            ..SolverConfig::default()
        }
    }
}

/// An exact optimum with one witness and its replayable certificate.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub value: usize,
    pub witness: VertexSet,
    pub certificate: ClosureResult,
    /// All optimal witness sets, when exhaustive enumeration was requested.
    pub exhausted: Option<Vec<VertexSet>>,
}

/// Visits k-subsets of `0..pool_len` in lexicographic order as index
/// slices, without allocating per subset.
fn for_each_combination<F>(pool_len: usize, k: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if k > pool_len {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx)?;
        // Advance: rightmost index that can still move right.
        let mut i = k;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            if idx[i] != i + pool_len - k {
                break;
            }
            if i == 0 {
                return ControlFlow::Continue(());
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Minimum forcing number of a connected graph, by exhaustive search over
/// ascending cardinalities.
pub fn forcing_number(g: &Graph) -> Result<SolveResult, SolveError> {
    forcing_number_with(g, &SolverConfig::default())
}

pub fn forcing_number_with(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    let n = g.order();
    if n > cfg.max_order_forcing {
        return Err(SolveError::TooLarge {
            order: n,
            limit: cfg.max_order_forcing,
        });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let pool: Vec<usize> = g.vertices().collect();
    let start = if n == 0 { 0 } else { 1 };
    for k in start..=n {
        if let Some(result) = search_at_cardinality(g, &[], &pool, k, false) {
            return Ok(result);
        }
    }
    unreachable!("S = V is always a forcing set");
}

/// Minimum total forcing number of a connected isolate-free graph.
pub fn total_forcing_number(g: &Graph) -> Result<SolveResult, SolveError> {
    total_forcing_number_with(g, &SolverConfig::default())
}

pub fn total_forcing_number_with(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    let n = g.order();
    if n > cfg.max_order_total {
        return Err(SolveError::TooLarge {
            order: n,
            limit: cfg.max_order_total,
        });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    if n < 2 {
        // A lone vertex is isolated in any induced subgraph.
        return Err(SolveError::NoTotalForcingSet(n));
    }
    let stats = g.stats();
    let mut mandatory: Vec<usize> = Vec::new();
    if cfg.mandatory_pruning {
        for v in stats.strong_supports.iter() {
            mandatory.push(v);
            let leaf_nbrs: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| stats.leaves.contains(u))
                .collect();
            // All but the lowest-indexed leaf are pinned; the survivor is
            // the orbit representative left to the completion search.
            mandatory.extend_from_slice(&leaf_nbrs[1..]);
        }
        mandatory.sort_unstable();
    }
    let pool: Vec<usize> = g.vertices().filter(|v| !mandatory.contains(v)).collect();
    let mut start = 2.max(mandatory.len());
    if cfg.leaf_lower_bound && g.is_tree() {
        start = start.max(stats.leaf_count);
    }
    for k in start.min(n)..=n {
        if let Some(result) = search_at_cardinality(g, &mandatory, &pool, k, true) {
            return Ok(result);
        }
    }
    unreachable!("S = V is a TF-set of a connected graph of order >= 2");
}

/// Tries every candidate of cardinality `k` that extends `mandatory` with
/// vertices from `pool`, in lexicographic order; returns the first hit.
fn search_at_cardinality(
    g: &Graph,
    mandatory: &[usize],
    pool: &[usize],
    k: usize,
    total: bool,
) -> Option<SolveResult> {
    if k < mandatory.len() || k - mandatory.len() > pool.len() {
        return None;
    }
    let mut found = None;
    let base = VertexSet::from_indices(g.order(), mandatory.iter().copied());
    let _ = for_each_combination(pool.len(), k - mandatory.len(), |combo| {
        let mut s = base.clone();
        for &i in combo {
            s.insert(pool[i]);
        }
        if total && !induces_isolate_free(g, &s) {
            return ControlFlow::Continue(());
        }
        let cert = closure(g, &s);
        if cert.complete {
            found = Some(SolveResult {
                value: k,
                witness: s,
                certificate: cert,
                exhausted: None,
            });
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    found
}

/// Exhaustive total forcing solve: the optimum together with every
/// optimal witness set, found by unpruned brute force so the result is
/// independent of the production search.
pub fn total_forcing_exhaustive_with(
    g: &Graph,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    let n = g.order();
    if n > cfg.max_order_exhaustive {
        return Err(SolveError::TooLarge {
            order: n,
            limit: cfg.max_order_exhaustive,
        });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    if n < 2 {
        return Err(SolveError::NoTotalForcingSet(n));
    }
    for k in 2..=n {
        let mut hits = Vec::new();
        let _ = for_each_combination(n, k, |combo| {
            let s = VertexSet::from_indices(n, combo.iter().copied());
            if induces_isolate_free(g, &s) && closure(g, &s).complete {
                hits.push(s);
            }
            ControlFlow::Continue(())
        });
        if !hits.is_empty() {
            let witness = hits[0].clone();
            let certificate = closure(g, &witness);
            return Ok(SolveResult {
                value: k,
                witness,
                certificate,
                exhausted: Some(hits),
            });
        }
    }
    unreachable!("S = V is a TF-set of a connected graph of order >= 2");
}

/// Every minimum TF-set, deduplicated, in lexicographic order.
pub fn all_minimum_tf_sets(g: &Graph) -> Result<Vec<VertexSet>, SolveError> {
    all_minimum_tf_sets_with(g, &SolverConfig::default())
}

pub fn all_minimum_tf_sets_with(
    g: &Graph,
    cfg: &SolverConfig,
) -> Result<Vec<VertexSet>, SolveError> {
    Ok(total_forcing_exhaustive_with(g, cfg)?
        .exhausted
        .expect("exhaustive solve fills the witness list"))
}

/// Size of a minimum vertex-disjoint path cover of a tree, by the greedy
/// leaf-up merge. Serves as an independent cross-check of
/// `forcing_number` on trees; it is validated against the exhaustive
/// solver in tests before being trusted at larger orders.
pub fn tree_forcing_oracle(t: &Graph) -> Result<usize, SolveError> {
    if !t.is_tree() || t.order() == 0 {
        return Err(SolveError::Graph(GraphError::NotATree));
    }
    let n = t.order();
    if n == 1 {
        return Ok(1);
    }
    // Iterative post-order from vertex 0.
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &u in t.neighbors(v) {
            if parent[u] == usize::MAX {
                parent[u] = v;
                stack.push(u);
            }
        }
    }
    let mut paths = 0usize;
    let mut open = vec![false; n]; // v is an extendable endpoint of its path
    for &v in order.iter().rev() {
        let open_children = t
            .neighbors(v)
            .iter()
            .filter(|&&u| parent[u] == v && open[u])
            .count();
        match open_children {
            0 => {
                paths += 1;
                open[v] = true;
            }
            1 => {
                open[v] = true;
            }
            _ => {
                // Join two child paths through v; the rest stay as they are.
                paths -= 1;
                open[v] = false;
            }
        }
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::validate_certificate;

    #[test]
    fn forcing_number_of_paths_is_one() {
        for n in 2..=9 {
            let r = forcing_number(&Graph::path(n)).unwrap();
            assert_eq!(r.value, 1);
            assert!(validate_certificate(
                &Graph::path(n),
                &r.witness,
                &r.certificate.sequence
            ));
        }
    }

    #[test]
    fn forcing_number_of_stars() {
        for delta in 3..=6 {
            let g = Graph::star(delta);
            assert_eq!(forcing_number(&g).unwrap().value, delta - 1);
        }
    }

    #[test]
    fn total_forcing_point_values() {
        for n in 2..=8 {
            assert_eq!(total_forcing_number(&Graph::path(n)).unwrap().value, 2);
        }
        for delta in 2..=6 {
            assert_eq!(total_forcing_number(&Graph::star(delta)).unwrap().value, delta);
        }
        assert_eq!(
            total_forcing_number(&Graph::double_star(2, 2)).unwrap().value,
            4
        );
    }

    #[test]
    fn pruning_does_not_change_values() {
        let configs = [
            SolverConfig::default(),
            SolverConfig::unassuming(),
            SolverConfig {
                mandatory_pruning: false,
                leaf_lower_bound: false,
                ..SolverConfig::default()
            },
        ];
        for g in [
            Graph::double_star(2, 3),
            Graph::spider(&[2, 2, 1]),
            Graph::star(4),
            Graph::path(7),
        ] {
            let values: Vec<usize> = configs
                .iter()
                .map(|c| total_forcing_number_with(&g, c).unwrap().value)
                .collect();
            assert!(values.windows(2).all(|w| w[0] == w[1]), "{:?}", values);
        }
    }

    #[test]
    fn exhaustive_minimum_tf_sets() {
        let p3 = Graph::path(3);
        let sets = all_minimum_tf_sets(&p3).unwrap();
        let lists: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        assert_eq!(lists, vec![vec![0, 1], vec![1, 2]]);

        let k13 = Graph::star(3);
        let sets = all_minimum_tf_sets(&k13).unwrap();
        assert_eq!(sets.len(), 3);
        assert!(sets.iter().all(|s| s.contains(0) && s.len() == 3));

        let p2 = Graph::path(2);
        let sets = all_minimum_tf_sets(&p2).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].to_vec(), vec![0, 1]);
    }

    #[test]
    fn oracle_point_values() {
        assert_eq!(tree_forcing_oracle(&Graph::path(7)).unwrap(), 1);
        assert_eq!(tree_forcing_oracle(&Graph::star(3)).unwrap(), 2);
        // Two strong supports, two pendant leaves each, joined by an edge.
        let gap2 = Graph::new(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(tree_forcing_oracle(&gap2).unwrap(), 2);
    }

    #[test]
    fn bounds_and_connectivity_are_enforced() {
        let big = Graph::path(25);
        assert!(matches!(
            forcing_number(&big),
            Err(SolveError::TooLarge { .. })
        ));
        let disconnected = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(forcing_number(&disconnected), Err(SolveError::Disconnected)));
        assert!(matches!(
            total_forcing_number(&disconnected),
            Err(SolveError::Disconnected)
        ));
        assert!(matches!(
            tree_forcing_oracle(&disconnected),
            Err(SolveError::Graph(GraphError::NotATree))
        ));
    }

    #[test]
    fn complete_graph_total_forcing() {
        for n in 3..=6 {
            assert_eq!(total_forcing_number(&Graph::complete(n)).unwrap().value, n - 1);
        }
    }

    #[test]
    fn two_block_star_partition_tree() {
        // Two degree-3 strong supports joined through a shared vertex:
        // order 7, maximum degree 3, total forcing number (2*7+1)/3 = 5.
        let t = Graph::new(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        assert_eq!(total_forcing_number(&t).unwrap().value, 5);
        assert_eq!(forcing_number(&t).unwrap().value, 3);
    }
}
