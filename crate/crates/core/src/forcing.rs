//! The dynamic coloring propagation.
//!
//! Starting from an initial colored set, any colored vertex with exactly
//! one non-colored neighbor forces that neighbor to become colored; the
//! closure is the fixpoint of this rule. A forcing set colors the whole
//! vertex set; a total forcing set additionally induces a subgraph
//! without isolated vertices.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::Graph;
use crate::set::VertexSet;

/// Outcome of running the forcing process to its fixpoint.
///
/// The sequence lists the applied forces in order; at the moment each
/// `(forcer, forced)` step fires, `forcer` is colored and `forced` is its
/// unique non-colored neighbor.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub final_colored: VertexSet,
    pub sequence: Vec<(usize, usize)>,
    pub complete: bool,
}

/// Runs the forcing process from `s` until no vertex can force.
///
/// Ties are broken by always playing the lowest-indexed eligible forcer,
/// so the certificate sequence is reproducible byte for byte.
pub fn closure(g: &Graph, s: &VertexSet) -> ClosureResult {
    let n = g.order();
    let mut colored = vec![false; n];
    let mut colored_count = 0;
    for v in s.iter() {
        colored[v] = true;
        colored_count += 1;
    }
    let mut uncolored_nbrs: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&u| !colored[u]).count())
        .collect();
    let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
    for v in 0..n {
        if colored[v] && uncolored_nbrs[v] == 1 {
            heap.push(Reverse(v));
        }
    }
    let mut sequence = Vec::new();
    while let Some(Reverse(v)) = heap.pop() {
        if uncolored_nbrs[v] != 1 {
            continue; // stale entry: the neighbor was forced by someone else
        }
        let u = *g
            .neighbors(v)
            .iter()
            .find(|&&u| !colored[u])
            .expect("count says one uncolored neighbor");
        sequence.push((v, u));
        colored[u] = true;
        colored_count += 1;
        for &w in g.neighbors(u) {
            uncolored_nbrs[w] -= 1;
            if colored[w] && uncolored_nbrs[w] == 1 {
                heap.push(Reverse(w));
            }
        }
        if uncolored_nbrs[u] == 1 {
            heap.push(Reverse(u));
        }
    }
    let mut final_colored = VertexSet::empty(n);
    for v in 0..n {
        if colored[v] {
            final_colored.insert(v);
        }
    }
    ClosureResult {
        final_colored,
        sequence,
        complete: colored_count == n,
    }
}

/// Does the forcing process started from `s` color all of the graph?
pub fn is_forcing_set(g: &Graph, s: &VertexSet) -> bool {
    closure(g, s).complete
}

/// Does `s` induce a subgraph without isolated vertices?
/// Vacuously true for the empty set.
pub fn induces_isolate_free(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|v| g.neighbors(v).iter().any(|&u| s.contains(u)))
}

pub fn is_total_forcing_set(g: &Graph, s: &VertexSet) -> bool {
    is_forcing_set(g, s) && induces_isolate_free(g, s)
}

/// Replays a forcing sequence from `s`, checking that every step forces
/// the unique non-colored neighbor of a colored vertex and that the
/// replay ends with every vertex colored.
pub fn validate_certificate(g: &Graph, s: &VertexSet, seq: &[(usize, usize)]) -> bool {
    let n = g.order();
    let mut colored = vec![false; n];
    let mut colored_count = 0;
    for v in s.iter() {
        colored[v] = true;
        colored_count += 1;
    }
    for &(forcer, forced) in seq {
        if forcer >= n || forced >= n || !colored[forcer] || colored[forced] {
            return false;
        }
        let uncolored: Vec<usize> = g
            .neighbors(forcer)
            .iter()
            .copied()
            .filter(|&u| !colored[u])
            .collect();
        if uncolored != [forced] {
            return false;
        }
        colored[forced] = true;
        colored_count += 1;
    }
    colored_count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(n: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, members.iter().copied())
    }

    #[test]
    fn chain_propagation() {
        let p4 = Graph::path(4);
        let r = closure(&p4, &vs(4, &[0, 1]));
        assert!(r.complete);
        assert_eq!(r.sequence, vec![(1, 2), (2, 3)]);
        assert_eq!(r.final_colored, VertexSet::full(4));
    }

    #[test]
    fn stalled_star() {
        let k13 = Graph::star(3);
        let r = closure(&k13, &vs(4, &[0, 1]));
        assert!(!r.complete);
        assert!(r.sequence.is_empty());
    }

    #[test]
    fn path_middle_stalls_end_forces() {
        let p3 = Graph::path(3);
        assert!(!closure(&p3, &vs(3, &[1])).complete);
        let r = closure(&p3, &vs(3, &[0]));
        assert!(r.complete);
        assert_eq!(r.sequence, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn forcing_set_examples() {
        for n in 2..=8 {
            assert!(is_forcing_set(&Graph::path(n), &vs(n, &[0])));
            assert!(is_forcing_set(&Graph::path(n), &VertexSet::full(n)));
        }
        // A single leaf of S(2,2) stalls at its support vertex.
        let ds = Graph::double_star(2, 2);
        assert!(!is_forcing_set(&ds, &vs(6, &[2])));
    }

    #[test]
    fn isolate_free_examples() {
        let p4 = Graph::path(4);
        assert!(induces_isolate_free(&p4, &vs(4, &[1, 2])));
        assert!(!induces_isolate_free(&p4, &vs(4, &[0, 2])));
        for v in 0..4 {
            assert!(!induces_isolate_free(&p4, &vs(4, &[v])));
        }
        assert!(induces_isolate_free(&p4, &VertexSet::empty(4)));
    }

    #[test]
    fn total_forcing_examples() {
        for n in 2..=8 {
            assert!(is_total_forcing_set(&Graph::path(n), &vs(n, &[0, 1])));
        }
        assert!(!is_total_forcing_set(&Graph::path(4), &vs(4, &[0])));
        let k13 = Graph::star(3);
        assert!(is_total_forcing_set(&k13, &vs(4, &[0, 1, 2])));
        // The empty set is not a TF-set of a non-empty graph.
        assert!(!is_total_forcing_set(&k13, &VertexSet::empty(4)));
    }

    #[test]
    fn certificate_validation() {
        let p3 = Graph::path(3);
        let s = vs(3, &[0]);
        assert!(validate_certificate(&p3, &s, &[(0, 1), (1, 2)]));
        assert!(!validate_certificate(&p3, &s, &[(1, 2), (0, 1)]));
        assert!(!validate_certificate(&p3, &s, &[(0, 1)]));
    }

    #[test]
    fn complete_closures_validate() {
        let g = Graph::spider(&[2, 1, 3]);
        let n = g.order();
        let s = vs(n, &[0, 1]);
        let r = closure(&g, &s);
        if r.complete {
            assert!(validate_certificate(&g, &s, &r.sequence));
        }
    }

    #[test]
    fn whole_vertex_set_is_total_forcing_when_isolate_free() {
        for g in [
            Graph::path(5),
            Graph::star(4),
            Graph::complete(4),
            Graph::double_star(2, 3),
        ] {
            assert!(is_total_forcing_set(&g, &VertexSet::full(g.order())));
        }
    }
}
