//! Canonical codes for free trees.
//!
//! The code is the classic rooted encoding with sorted child codes,
//! rooted at the tree's center. Bicentral trees are encoded from both
//! centers and the lexicographically smaller string wins, so two trees
//! share a code exactly when they are isomorphic.

use crate::graph::{Graph, GraphError};

/// A label-invariant identifier of a free tree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCode(Vec<u8>);

impl TreeCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Debug for TreeCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TreeCode({})", String::from_utf8_lossy(&self.0))
    }
}

impl std::fmt::Display for TreeCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", String::from_utf8_lossy(&self.0))
    }
}

/// The 1- or 2-element set of centers (vertices of minimum eccentricity),
/// found by peeling leaves level by level.
pub fn tree_centers(g: &Graph) -> Result<Vec<usize>, GraphError> {
    if !g.is_tree() || g.order() == 0 {
        return Err(GraphError::NotATree);
    }
    let n = g.order();
    if n <= 2 {
        return Ok((0..n).collect());
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            degree[v] = 0;
            for &u in g.neighbors(v) {
                if degree[u] > 1 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    Ok(layer)
}

fn rooted_code(g: &Graph, root: usize) -> Vec<u8> {
    // Iterative post-order so deep paths cannot overflow the stack.
    let n = g.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &u in g.neighbors(v) {
            if parent[u] == usize::MAX {
                parent[u] = v;
                stack.push(u);
            }
        }
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut children: Vec<Vec<u8>> = g
            .neighbors(v)
            .iter()
            .filter(|&&u| parent[u] == v && u != root)
            .map(|&u| std::mem::take(&mut codes[u]))
            .collect();
        children.sort();
        let mut code = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        for c in children {
            code.extend_from_slice(&c);
        }
        code.push(b')');
        codes[v] = code;
    }
    std::mem::take(&mut codes[root])
}

/// Canonical code of a free tree; equal codes characterize isomorphism.
pub fn canonical_code(g: &Graph) -> Result<TreeCode, GraphError> {
    let centers = tree_centers(g)?;
    let code = centers
        .iter()
        .map(|&c| rooted_code(g, c))
        .min()
        .expect("non-empty tree has a center");
    Ok(TreeCode(code))
}

/// Canonical code of a rooted tree (sorted child codes, fixed root).
pub fn rooted_canonical_code(g: &Graph, root: usize) -> Result<TreeCode, GraphError> {
    if !g.is_tree() || g.order() == 0 {
        return Err(GraphError::NotATree);
    }
    Ok(TreeCode(rooted_code(g, root)))
}
