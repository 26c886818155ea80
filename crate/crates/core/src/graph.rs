//! Undirected simple graphs over dense vertex indices, structural
//! statistics, and the edit operations used by the tree reductions
//! (subdivision, trim contraction).

use std::collections::VecDeque;

use thiserror::Error;

use crate::set::VertexSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} not present")]
    EdgeNotPresent(usize, usize),
    #[error("edge {0}-{1} is not trim-contractible")]
    NotTrimContractible(usize, usize),
    #[error("graph is not a non-trivial tree")]
    NotATree,
}

/// An undirected simple graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, so equal graphs compare equal and all
/// edge iteration is deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a validated graph from an explicit edge list.
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); order];
        let mut m = 0;
        for &(u, v) in edges {
            for &x in &[u, v] {
                if x >= order {
                    return Err(GraphError::IndexOutOfRange {
                        index: x,
                        order,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, m })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(|l| l.len()).collect();
        d.sort_unstable();
        d
    }

    // --- standard constructions -------------------------------------------

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    /// The star `K_{1,k}`: center 0, leaves `1..=k`.
    pub fn star(k: usize) -> Graph {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::new(k + 1, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    /// The double star `S(r,s)`: centers 0 and 1, with `r` and `s` leaves.
    pub fn double_star(r: usize, s: usize) -> Graph {
        let mut edges = vec![(0, 1)];
        for i in 0..r {
            edges.push((0, 2 + i));
        }
        for i in 0..s {
            edges.push((1, 2 + r + i));
        }
        Graph::new(2 + r + s, &edges).unwrap()
    }

    /// A spider with the given leg lengths: vertex 0 is the branch vertex,
    /// each leg a path hanging from it.
    pub fn spider(legs: &[usize]) -> Graph {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::new(next, &edges).unwrap()
    }

    // --- connectivity and shape tests -------------------------------------

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.m == self.order() - 1 && self.is_connected()
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && self.adj.iter().all(|l| l.len() <= 2)
    }

    /// A star in the sense of `K_{1,k}`: a non-trivial tree with at most one
    /// non-leaf vertex. `P_2` counts as `K_{1,1}`.
    pub fn is_star(&self) -> bool {
        self.is_tree()
            && self.order() >= 2
            && self.adj.iter().filter(|l| l.len() != 1).count() <= 1
    }

    /// BFS distances from `src`; unreachable vertices are `None`.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(dist[u].unwrap() + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Structural statistics: degree extremes, leaf/support structure and
    /// diameter (absent when disconnected or empty).
    pub fn stats(&self) -> GraphStats {
        let n = self.order();
        let mut leaves = VertexSet::empty(n);
        let mut supports = VertexSet::empty(n);
        let mut strong_supports = VertexSet::empty(n);
        for v in 0..n {
            if self.degree(v) == 1 {
                leaves.insert(v);
            }
        }
        for v in 0..n {
            let leaf_nbrs = self.adj[v].iter().filter(|&&u| leaves.contains(u)).count();
            if leaf_nbrs >= 1 {
                supports.insert(v);
            }
            if leaf_nbrs >= 2 {
                strong_supports.insert(v);
            }
        }
        let mut diameter = None;
        if n > 0 && self.is_connected() {
            let mut best = 0;
            for v in 0..n {
                for d in self.bfs_distances(v).into_iter().flatten() {
                    best = best.max(d);
                }
            }
            diameter = Some(best);
        }
        GraphStats {
            max_degree: self.adj.iter().map(|l| l.len()).max().unwrap_or(0),
            min_degree: self.adj.iter().map(|l| l.len()).min().unwrap_or(0),
            leaf_count: leaves.len(),
            leaves,
            supports,
            strong_supports,
            diameter,
        }
    }

    // --- edit operations ---------------------------------------------------

    /// Replaces the edge `e` by a path through `t` new internal vertices
    /// (labeled `n..n+t`). `t = 0` returns an identical copy.
    pub fn subdivide_edge(&self, e: (usize, usize), t: usize) -> Result<Graph, GraphError> {
        let (u, v) = e;
        if !self.has_edge(u, v) {
            return Err(GraphError::EdgeNotPresent(u.min(v), u.max(v)));
        }
        if t == 0 {
            return Ok(self.clone());
        }
        let n = self.order();
        let mut edges: Vec<(usize, usize)> =
            self.edges().filter(|&(a, b)| (a, b) != (u.min(v), u.max(v))).collect();
        let mut prev = u;
        for i in 0..t {
            edges.push((prev, n + i));
            prev = n + i;
        }
        edges.push((prev, v));
        Graph::new(n + t, &edges)
    }

    /// Contracts the edge `e = xy` where one endpoint has degree exactly 2
    /// and the other degree at most 2. The merged vertex keeps the lower
    /// index; indices above the removed one shift down by one.
    pub fn contract_trim_edge(&self, e: (usize, usize)) -> Result<Graph, GraphError> {
        let (x, y) = e;
        if !self.has_edge(x, y) {
            return Err(GraphError::EdgeNotPresent(x.min(y), x.max(y)));
        }
        let (dx, dy) = (self.degree(x), self.degree(y));
        let contractible =
            (dx == 2 && dy <= 2) || (dy == 2 && dx <= 2);
        if !contractible {
            return Err(GraphError::NotTrimContractible(x.min(y), x.max(y)));
        }
        let keep = x.min(y);
        let gone = x.max(y);
        let relabel = |v: usize| if v > gone { v - 1 } else { v };
        let mut edges = Vec::with_capacity(self.m);
        for (a, b) in self.edges() {
            if (a, b) == (keep, gone) {
                continue;
            }
            let a2 = if a == gone { keep } else { a };
            let b2 = if b == gone { keep } else { b };
            let (a2, b2) = (relabel(a2), relabel(b2));
            let pair = (a2.min(b2), a2.max(b2));
            if !edges.contains(&pair) {
                edges.push(pair);
            }
        }
        Graph::new(self.order() - 1, &edges)
    }

    /// The trimmed tree: the fixpoint of `contract_trim_edge`.
    ///
    /// Computed by thread analysis in one pass instead of iterated
    /// contraction: a path collapses to `P_2`; otherwise every maximal run
    /// of degree-2 vertices between two branch vertices keeps exactly one
    /// internal vertex, and every run ending in a leaf becomes a pendant
    /// edge.
    pub fn trim(&self) -> Result<Graph, GraphError> {
        if self.order() < 2 || !self.is_tree() {
            return Err(GraphError::NotATree);
        }
        if self.is_path() {
            return Ok(Graph::path(2));
        }
        let n = self.order();
        // Kept vertices: everything of degree != 2, plus one representative
        // internal vertex per branch-to-branch thread.
        let mut kept = vec![false; n];
        for v in 0..n {
            if self.degree(v) != 2 {
                kept[v] = true;
            }
        }
        let mut new_edges: Vec<(usize, usize)> = Vec::new();
        let mut extra_kept: Vec<usize> = Vec::new();
        let mut seen_thread = vec![false; n]; // marks internal vertices already walked
        for a in 0..n {
            if self.degree(a) == 2 {
                continue;
            }
            for &first in &self.adj[a] {
                // Walk the thread a - first - ... - b.
                let mut prev = a;
                let mut cur = first;
                let mut internal = Vec::new();
                while self.degree(cur) == 2 {
                    internal.push(cur);
                    let next = *self.adj[cur].iter().find(|&&w| w != prev).unwrap();
                    prev = cur;
                    cur = next;
                }
                let b = cur;
                if internal.is_empty() {
                    // Direct edge between two kept vertices; record once.
                    if a < b {
                        new_edges.push((a, b));
                    }
                    continue;
                }
                if seen_thread[internal[0]] {
                    continue; // already handled from the other end
                }
                for &w in &internal {
                    seen_thread[w] = true;
                }
                if self.degree(b) == 1 || self.degree(a) == 1 {
                    // Branch-to-leaf thread: collapse to a pendant edge.
                    new_edges.push((a.min(b), a.max(b)));
                } else {
                    // Branch-to-branch: keep the minimum-index internal vertex.
                    let w = *internal.iter().min().unwrap();
                    extra_kept.push(w);
                    new_edges.push((a.min(w), a.max(w)));
                    new_edges.push((b.min(w), b.max(w)));
                }
            }
        }
        for w in extra_kept {
            kept[w] = true;
        }
        // Compact labels.
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if kept[v] {
                label[v] = next;
                next += 1;
            }
        }
        let edges: Vec<(usize, usize)> = new_edges
            .iter()
            .map(|&(u, v)| (label[u], label[v]))
            .collect();
        Graph::new(next, &edges)
    }

    /// Deletes a set of vertices and compacts the labels of the rest.
    /// Returns the reduced graph and the old-to-new label map
    /// (`None` for deleted vertices).
    pub(crate) fn remove_vertices(&self, gone: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let n = self.order();
        let mut is_gone = vec![false; n];
        for &v in gone {
            is_gone[v] = true;
        }
        let mut label = vec![None; n];
        let mut next = 0;
        for v in 0..n {
            if !is_gone[v] {
                label[v] = Some(next);
                next += 1;
            }
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter(|&(u, v)| !is_gone[u] && !is_gone[v])
            .map(|(u, v)| (label[u].unwrap(), label[v].unwrap()))
            .collect();
        (Graph::new(next, &edges).unwrap(), label)
    }

    /// Appends `extra` fresh vertices (labeled `n..n+extra`) and the given
    /// additional edges.
    pub(crate) fn with_added(&self, extra: usize, added: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges: Vec<(usize, usize)> = self.edges().collect();
        edges.extend_from_slice(added);
        Graph::new(self.order() + extra, &edges)
    }
}

/// Degree and leaf structure of a graph.
#[derive(Clone, Debug)]
pub struct GraphStats {
    pub max_degree: usize,
    pub min_degree: usize,
    pub leaf_count: usize,
    pub leaves: VertexSet,
    pub supports: VertexSet,
    pub strong_supports: VertexSet,
    /// Edge-count diameter; `None` when the graph is disconnected or empty.
    pub diameter: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_validates() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!((g.order(), g.size()), (2, 1));
        let s = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(s.degree(0), 3);
        assert_eq!(Graph::new(3, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::IndexOutOfRange { index: 2, order: 2 })
        );
    }

    #[test]
    fn stats_on_path() {
        let st = Graph::path(3).stats();
        assert_eq!(st.max_degree, 2);
        assert_eq!(st.min_degree, 1);
        assert_eq!(st.leaf_count, 2);
        assert_eq!(st.diameter, Some(2));
    }

    #[test]
    fn stats_on_double_star() {
        // Both centers of S(2,2) are strong support vertices.
        let st = Graph::double_star(2, 2).stats();
        assert_eq!(st.strong_supports.to_vec(), vec![0, 1]);
        assert_eq!(st.leaf_count, 4);
        assert_eq!(st.diameter, Some(3));
    }

    #[test]
    fn stats_on_star() {
        let st = Graph::star(3).stats();
        assert_eq!(st.strong_supports.to_vec(), vec![0]);
        assert_eq!(st.leaf_count, 3);
    }

    #[test]
    fn tree_recognition() {
        assert!(Graph::path(5).is_tree());
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!c4.is_tree());
        let two_edges = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_tree());
        assert!(two_edges.stats().diameter.is_none());
    }

    #[test]
    fn subdivision() {
        let p2 = Graph::path(2);
        assert!(p2.subdivide_edge((0, 1), 1).unwrap().is_path());
        assert_eq!(p2.subdivide_edge((0, 1), 1).unwrap().order(), 3);
        assert_eq!(p2.subdivide_edge((0, 1), 3).unwrap().order(), 5);
        assert!(p2.subdivide_edge((0, 1), 3).unwrap().is_path());
        assert_eq!(p2.subdivide_edge((0, 1), 0).unwrap(), p2);
        assert_eq!(
            p2.subdivide_edge((1, 0), 2).unwrap().degree_sequence(),
            vec![1, 1, 2, 2]
        );
        assert_eq!(
            Graph::path(3).subdivide_edge((0, 2), 1),
            Err(GraphError::EdgeNotPresent(0, 2))
        );
        // Subdividing a pendant edge of K_{1,3} twice gives the spider with
        // legs (3,1,1): degree sequence 1,1,1,2,2,3.
        let spider = Graph::star(3).subdivide_edge((0, 1), 2).unwrap();
        assert_eq!(spider.degree_sequence(), vec![1, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn contraction() {
        let p3 = Graph::path(3);
        let c = p3.contract_trim_edge((1, 2)).unwrap();
        assert_eq!(c, Graph::path(2));
        assert_eq!(
            Graph::star(3).contract_trim_edge((0, 1)),
            Err(GraphError::NotTrimContractible(0, 1))
        );
        // P_4's central edge has both endpoints of degree 2.
        let p4 = Graph::path(4);
        assert!(p4.contract_trim_edge((1, 2)).unwrap().is_path());
        assert_eq!(p4.contract_trim_edge((1, 2)).unwrap().order(), 3);
    }

    #[test]
    fn trim_examples() {
        assert_eq!(Graph::path(9).trim().unwrap(), Graph::path(2));
        let spider = Graph::spider(&[2, 2, 2]);
        let t = spider.trim().unwrap();
        assert_eq!(t.degree_sequence(), vec![1, 1, 1, 3]);
        // S(2,2) has no contractible edge: trim is the identity.
        let ds = Graph::double_star(2, 2);
        assert_eq!(ds.trim().unwrap(), ds);
        assert_eq!(Graph::path(1).trim(), Err(GraphError::NotATree));
    }

    #[test]
    fn trim_keeps_one_internal_vertex_between_branches() {
        // Two branch vertices joined by a long thread, each with two legs
        // of length 2: trim keeps exactly one middle vertex and shortens
        // the legs to pendant edges.
        let mut edges = vec![];
        // branch 0 and branch 1 joined via 2,3,4
        edges.extend([(0, 2), (2, 3), (3, 4), (4, 1)]);
        // legs on 0: 5-6, 7-8; legs on 1: 9-10, 11-12
        edges.extend([(0, 5), (5, 6), (0, 7), (7, 8)]);
        edges.extend([(1, 9), (9, 10), (1, 11), (11, 12)]);
        let g = Graph::new(13, &edges).unwrap();
        let t = g.trim().unwrap();
        assert_eq!(t.order(), 7);
        assert_eq!(t.degree_sequence(), vec![1, 1, 1, 1, 2, 3, 3]);
        assert_eq!(t.stats().leaf_count, g.stats().leaf_count);
    }
}
