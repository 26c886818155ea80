//! Exhaustive generation of non-isomorphic free trees, plus a labeled-tree
//! oracle for validating the generator.
//!
//! Rooted trees are generated as canonical level sequences with the
//! classic successor rule (each rooted tree exactly once, in decreasing
//! lexicographic order); a rooted tree is emitted as a free tree when its
//! sequence is the canonical one rooted at the tree's centroid, so every
//! free tree appears exactly once and in a stable order.

use thiserror::Error;

use crate::graph::Graph;

/// Order cap for the free-tree stream; reflects downstream solver cost.
pub const MAX_FREE_TREE_ORDER: usize = 18;
/// Order cap for the labeled-tree oracle (`n^(n-2)` decodings).
pub const MAX_PRUFER_ORDER: usize = 9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("order {n} exceeds the enumeration bound {max}")]
    TooLarge { n: usize, max: usize },
    #[error("order {n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("shard {index} is not valid for shard count {count}")]
    BadShard { index: usize, count: usize },
}

/// Streams every free tree of order `n` exactly once up to isomorphism.
pub fn free_trees(n: usize) -> Result<FreeTrees, EnumError> {
    free_trees_shard(n, 0, 1)
}

/// The `index`-th of `count` round-robin shards of `free_trees(n)`.
pub fn free_trees_shard(n: usize, index: usize, count: usize) -> Result<FreeTrees, EnumError> {
    if n < 1 {
        return Err(EnumError::TooSmall { n, min: 1 });
    }
    if n > MAX_FREE_TREE_ORDER {
        return Err(EnumError::TooLarge {
            n,
            max: MAX_FREE_TREE_ORDER,
        });
    }
    if count == 0 || index >= count {
        return Err(EnumError::BadShard { index, count });
    }
    Ok(FreeTrees {
        levels: LevelSequences::new(n),
        emitted: 0,
        shard_index: index,
        shard_count: count,
    })
}

pub struct FreeTrees {
    levels: LevelSequences,
    emitted: usize,
    shard_index: usize,
    shard_count: usize,
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            let seq = self.levels.next()?;
            if !is_centroid_canonical(seq) {
                continue;
            }
            let position = self.emitted;
            self.emitted += 1;
            if position % self.shard_count == self.shard_index {
                return Some(graph_from_levels(seq));
            }
        }
    }
}

/// Canonical level sequences of rooted trees of order `n`, in decreasing
/// lexicographic order (root has level 0).
struct LevelSequences {
    seq: Vec<usize>,
    started: bool,
    done: bool,
}

impl LevelSequences {
    fn new(n: usize) -> LevelSequences {
        LevelSequences {
            seq: (0..n).collect(),
            started: false,
            done: false,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.seq);
        }
        // Successor rule: find the last level > 1, drop it by repeating the
        // pattern that starts at its most recent potential parent.
        let p = match (0..self.seq.len()).rev().find(|&i| self.seq[i] > 1) {
            Some(p) => p,
            None => {
                self.done = true;
                return None;
            }
        };
        let q = (0..p).rev().find(|&i| self.seq[i] == self.seq[p] - 1).unwrap();
        let d = p - q;
        for i in p..self.seq.len() {
            self.seq[i] = self.seq[i - d];
        }
        Some(&self.seq)
    }
}

/// Parent of each position in a level sequence: the most recent earlier
/// position one level up. Root is position 0.
fn parents_from_levels(seq: &[usize]) -> Vec<usize> {
    let mut parent = vec![0; seq.len()];
    for i in 1..seq.len() {
        parent[i] = (0..i).rev().find(|&j| seq[j] == seq[i] - 1).unwrap();
    }
    parent
}

fn graph_from_levels(seq: &[usize]) -> Graph {
    let parent = parents_from_levels(seq);
    let edges: Vec<(usize, usize)> = (1..seq.len()).map(|i| (parent[i], i)).collect();
    Graph::new(seq.len(), &edges).unwrap()
}

/// Does this canonical rooted sequence represent its free tree's canonical
/// rooting, i.e. the lexicographically largest sequence rooted at a centroid?
fn is_centroid_canonical(seq: &[usize]) -> bool {
    let n = seq.len();
    if n <= 2 {
        return true;
    }
    let parent = parents_from_levels(seq);
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 1..n {
        children[parent[i]].push(i);
    }
    // Subtree sizes (children always follow parents in a level sequence).
    let mut size = vec![1usize; n];
    for i in (1..n).rev() {
        size[parent[i]] += size[i];
    }
    let mut best = usize::MAX;
    let mut centroids = Vec::new();
    for v in 0..n {
        let mut worst = n - size[v];
        for &c in &children[v] {
            worst = worst.max(size[c]);
        }
        if worst < best {
            best = worst;
            centroids.clear();
        }
        if worst == best {
            centroids.push(v);
        }
    }
    let canonical = centroids
        .iter()
        .map(|&c| canonical_levels_from(&children, &parent, c))
        .max()
        .unwrap();
    canonical == seq
}

/// Canonical level sequence of the tree rooted at `root`: child subtree
/// sequences concatenated in non-increasing lexicographic order. The
/// original rooting is ignored, so `root` may be any vertex.
fn canonical_levels_from(children: &[Vec<usize>], _parent: &[usize], root: usize) -> Vec<usize> {
    let n = children.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for &c in &children[v] {
            adj[v].push(c);
            adj[c].push(v);
        }
    }
    fn encode(v: usize, from: Option<usize>, level: usize, adj: &[Vec<usize>]) -> Vec<usize> {
        let mut subs: Vec<Vec<usize>> = adj[v]
            .iter()
            .filter(|&&u| Some(u) != from)
            .map(|&u| encode(u, Some(v), level + 1, adj))
            .collect();
        subs.sort_by(|a, b| b.cmp(a));
        let mut out = vec![level];
        for s in subs {
            out.extend(s);
        }
        out
    }
    encode(root, None, 0, &adj)
}

/// All `n^(n-2)` labeled trees of order `n`, by decoding every sequence.
pub fn labeled_trees_prufer(n: usize) -> Result<LabeledTrees, EnumError> {
    if n < 2 {
        return Err(EnumError::TooSmall { n, min: 2 });
    }
    if n > MAX_PRUFER_ORDER {
        return Err(EnumError::TooLarge {
            n,
            max: MAX_PRUFER_ORDER,
        });
    }
    Ok(LabeledTrees {
        n,
        seq: vec![0; n.saturating_sub(2)],
        done: false,
    })
}

pub struct LabeledTrees {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

impl Iterator for LabeledTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        let g = decode_prufer(self.n, &self.seq);
        // Odometer step over [0, n)^(n-2).
        let mut i = self.seq.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.seq[i] += 1;
            if self.seq[i] < self.n {
                break;
            }
            self.seq[i] = 0;
        }
        Some(g)
    }
}

fn decode_prufer(n: usize, seq: &[usize]) -> Graph {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let mut degree = vec![1usize; n];
    for &a in seq {
        degree[a] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &a in seq {
        let Reverse(u) = leaves.pop().unwrap();
        degree[u] -= 1;
        degree[a] -= 1;
        edges.push((u, a));
        if degree[a] == 1 {
            leaves.push(Reverse(a));
        }
    }
    let Reverse(u) = leaves.pop().unwrap();
    let Reverse(v) = leaves.pop().unwrap();
    edges.push((u, v));
    Graph::new(n, &edges).unwrap()
}

/// Number of rooted trees of each order up to `n` (index 0 unused).
fn rooted_tree_counts(n: usize) -> Vec<u64> {
    let mut a = vec![0u64; n + 1];
    if n >= 1 {
        a[1] = 1;
    }
    for m in 2..=n {
        let mut total = 0u64;
        for k in 1..m {
            let mut weight = 0u64;
            let mut d = 1;
            while d <= k {
                if k % d == 0 {
                    weight += d as u64 * a[d];
                }
                d += 1;
            }
            total += weight * a[m - k];
        }
        a[m] = total / (m as u64 - 1);
    }
    a
}

/// Number of free trees of order `n`, by the dissimilarity identity on
/// rooted tree counts. Used as an arithmetic cross-check of the generator.
pub fn free_tree_count(n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let a = rooted_tree_counts(n);
    if n == 1 {
        return 1;
    }
    let mut pairs = 0u64;
    for i in 1..n {
        pairs += a[i] * a[n - i];
    }
    if n.is_multiple_of(2) {
        pairs -= a[n / 2];
    }
    a[n] - pairs / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use std::collections::HashSet;

    #[test]
    fn small_free_tree_counts() {
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            assert_eq!(free_trees(n).unwrap().count(), want, "order {}", n);
            assert_eq!(free_tree_count(n), want as u64, "count formula, order {}", n);
        }
    }

    #[test]
    fn emitted_trees_are_distinct_trees() {
        for n in 1..=9 {
            let mut codes = HashSet::new();
            for t in free_trees(n).unwrap() {
                assert!(t.is_tree());
                assert_eq!(t.order(), n);
                assert!(codes.insert(canonical_code(&t).unwrap()));
            }
        }
    }

    #[test]
    fn prufer_matches_free_enumeration() {
        for n in 2..=7 {
            let mut classes = HashSet::new();
            let mut labeled = 0usize;
            for t in labeled_trees_prufer(n).unwrap() {
                assert!(t.is_tree());
                labeled += 1;
                classes.insert(canonical_code(&t).unwrap());
            }
            assert_eq!(labeled, (n as u64).pow(n as u32 - 2) as usize);
            assert_eq!(classes.len(), free_trees(n).unwrap().count());
        }
    }

    #[test]
    fn shards_partition_the_stream() {
        let n = 8;
        let all: Vec<_> = free_trees(n)
            .unwrap()
            .map(|t| canonical_code(&t).unwrap())
            .collect();
        for count in [2, 3, 5] {
            let mut merged = Vec::new();
            for index in 0..count {
                for t in free_trees_shard(n, index, count).unwrap() {
                    merged.push(canonical_code(&t).unwrap());
                }
            }
            merged.sort();
            let mut sorted_all = all.clone();
            sorted_all.sort();
            assert_eq!(merged, sorted_all);
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(free_trees(19), Err(EnumError::TooLarge { .. })));
        assert!(matches!(free_trees(0), Err(EnumError::TooSmall { .. })));
        assert!(matches!(
            labeled_trees_prufer(10),
            Err(EnumError::TooLarge { .. })
        ));
        assert!(matches!(
            free_trees_shard(5, 3, 3),
            Err(EnumError::BadShard { .. })
        ));
    }

    #[test]
    fn prufer_tiny_orders() {
        assert_eq!(labeled_trees_prufer(2).unwrap().count(), 1);
        assert_eq!(labeled_trees_prufer(3).unwrap().count(), 3);
        let mut classes = HashSet::new();
        for t in labeled_trees_prufer(3).unwrap() {
            classes.insert(canonical_code(&t).unwrap());
        }
        assert_eq!(classes.len(), 1);
    }
}
