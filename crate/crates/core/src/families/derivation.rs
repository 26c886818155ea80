//! Recognizer for the family of trees generated from `P_2` by the five
//! growth operations (the trees whose total forcing number equals their
//! leaf count).
//!
//! Membership is decided by complete backtracking over inverse
//! operations, memoizing failures by canonical code, so the recognizer
//! depends only on the operation definitions and never on the solver.
//! The returned certificate is a forward step sequence that replays from
//! `P_2` to a tree isomorphic to the input.

use std::collections::HashSet;

use crate::canon::{canonical_code, TreeCode};
use crate::graph::{Graph, GraphError};

use super::ops::{apply_operation, OpStep};
use super::FamilyError;

/// One undo step recorded while reducing toward `P_2`.
struct Reduction {
    /// The forward operation, with parameters in the reduced tree's labels.
    step: OpStep,
    /// Vertices removed from the larger tree, ordered exactly as the
    /// forward operation re-adds them.
    removed: Vec<usize>,
    /// Label map from the larger tree to the reduced one.
    relabel: Vec<Option<usize>>,
}

enum Candidate {
    /// Suppress a degree-2 vertex (undoes a subdivision).
    UndoSubdivide { w: usize },
    /// Remove one leaf of a support with at least three leaf neighbors.
    UndoPendant { support: usize, leaf: usize },
    /// Remove the two leaves of a degree-3 vertex whose third neighbor
    /// keeps a leaf of its own (undoes growing a leaf into a cherry).
    UndoTwinLeaves { link: usize },
    /// Remove an attached `P_3` whose center hangs off a branch vertex.
    UndoPathCenter { y: usize },
    /// Remove the six-vertex subdivided-star gadget.
    UndoStarGadget {
        near: usize,
        mid: usize,
        far: usize,
    },
}

/// Recognizes membership, returning a replayable derivation from `P_2`.
pub fn recognize_f(t: &Graph) -> Result<Option<Vec<OpStep>>, FamilyError> {
    if !t.is_tree() || t.order() == 0 {
        return Err(FamilyError::Graph(GraphError::NotATree));
    }
    if t.order() < 2 {
        return Ok(None);
    }
    let mut memo: HashSet<TreeCode> = HashSet::new();
    let chain = match search(t, &mut memo) {
        Some(chain) => chain,
        None => return Ok(None),
    };
    // Replay forward from P_2. `psi` carries the isomorphism from the
    // current reduced tree's labels to the replay tree's labels, so each
    // recorded step can be translated before it is applied.
    let mut replay = Graph::path(2);
    let mut psi: Vec<usize> = vec![0, 1];
    let mut steps = Vec::with_capacity(chain.len());
    for red in chain.iter().rev() {
        let step = translate(&red.step, &psi);
        let before = replay.order();
        replay = apply_operation(&replay, &step)?;
        let mut next_psi = vec![usize::MAX; red.relabel.len()];
        for (v, mapped) in red.relabel.iter().enumerate() {
            if let Some(r) = mapped {
                next_psi[v] = psi[*r];
            }
        }
        for (j, &orig) in red.removed.iter().enumerate() {
            next_psi[orig] = before + j;
        }
        psi = next_psi;
        steps.push(step);
    }
    debug_assert_eq!(
        canonical_code(&replay).unwrap(),
        canonical_code(t).unwrap(),
        "certificate replay must rebuild the input up to isomorphism"
    );
    Ok(Some(steps))
}

fn translate(step: &OpStep, psi: &[usize]) -> OpStep {
    match *step {
        OpStep::SubdivideEdge { edge: (u, v) } => OpStep::SubdivideEdge {
            edge: (psi[u], psi[v]),
        },
        OpStep::AddPendant { link } => OpStep::AddPendant { link: psi[link] },
        OpStep::GrowTwinLeaves { link } => OpStep::GrowTwinLeaves { link: psi[link] },
        OpStep::AttachPathCenter { link } => OpStep::AttachPathCenter { link: psi[link] },
        OpStep::AttachSubdividedStar { link } => OpStep::AttachSubdividedStar { link: psi[link] },
    }
}

/// Depth-first search over inverse operations; returns the reduction
/// chain outermost-first, or `None` with the tree's code memoized as a
/// non-member.
fn search(g: &Graph, memo: &mut HashSet<TreeCode>) -> Option<Vec<Reduction>> {
    if g.order() == 2 {
        return Some(Vec::new());
    }
    let code = canonical_code(g).expect("reductions stay trees");
    if memo.contains(&code) {
        return None;
    }
    for cand in candidates(g) {
        let (next, red) = reduce(g, &cand);
        if let Some(chain) = search(&next, memo) {
            let mut full = Vec::with_capacity(chain.len() + 1);
            full.push(red);
            full.extend(chain);
            return Some(full);
        }
    }
    memo.insert(code);
    None
}

/// Every way the tree could have arisen as the last step of a derivation.
fn candidates(g: &Graph) -> Vec<Candidate> {
    let stats = g.stats();
    let mut out = Vec::new();
    for w in g.vertices() {
        if g.degree(w) == 2 {
            let (u, v) = (g.neighbors(w)[0], g.neighbors(w)[1]);
            // Degrees of u and v are unchanged by suppressing w, so this
            // tests the forward precondition on the reduced tree.
            if g.degree(u).min(g.degree(v)) <= 2 {
                out.push(Candidate::UndoSubdivide { w });
            }
        }
    }
    for s in stats.supports.iter() {
        let leaves: Vec<usize> = g
            .neighbors(s)
            .iter()
            .copied()
            .filter(|&u| stats.leaves.contains(u))
            .collect();
        if leaves.len() >= 3 {
            // Leaves under one support are interchangeable; trying the
            // lowest one covers them all.
            out.push(Candidate::UndoPendant {
                support: s,
                leaf: leaves[0],
            });
        }
    }
    for v in g.vertices() {
        if g.degree(v) != 3 {
            continue;
        }
        let leaves: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| stats.leaves.contains(u))
            .collect();
        if leaves.len() != 2 {
            continue;
        }
        let w = *g
            .neighbors(v)
            .iter()
            .find(|&&u| !stats.leaves.contains(u))
            .unwrap();
        if g.neighbors(w).iter().any(|&u| stats.leaves.contains(u)) {
            // After the two leaves go, v becomes a leaf of w and w still
            // has another leaf, so w is a strong support there.
            out.push(Candidate::UndoTwinLeaves { link: v });
        }
        if g.degree(w) >= 3 {
            out.push(Candidate::UndoPathCenter { y: v });
        }
    }
    for mid in g.vertices() {
        if g.degree(mid) != 2 {
            continue;
        }
        let (a, b) = (g.neighbors(mid)[0], g.neighbors(mid)[1]);
        if g.degree(a) != 3 || g.degree(b) != 3 {
            continue;
        }
        for (near, far) in [(a, b), (b, a)] {
            let far_leaves = g
                .neighbors(far)
                .iter()
                .filter(|&&u| u != mid && stats.leaves.contains(u))
                .count();
            if far_leaves != 2 {
                continue;
            }
            let near_others: Vec<usize> = g
                .neighbors(near)
                .iter()
                .copied()
                .filter(|&u| u != mid)
                .collect();
            let near_leaf = near_others.iter().filter(|&&u| stats.leaves.contains(u)).count();
            let link = near_others
                .iter()
                .copied()
                .find(|&u| !stats.leaves.contains(u));
            if near_leaf == 1 {
                if let Some(link) = link {
                    if g.degree(link) >= 3 {
                        out.push(Candidate::UndoStarGadget { near, mid, far });
                    }
                }
            }
        }
    }
    out
}

fn reduce(g: &Graph, cand: &Candidate) -> (Graph, Reduction) {
    let stats = g.stats();
    match *cand {
        Candidate::UndoSubdivide { w } => {
            let (u, v) = (g.neighbors(w)[0], g.neighbors(w)[1]);
            let (h, relabel) = g.remove_vertices(&[w]);
            let (u2, v2) = (relabel[u].unwrap(), relabel[v].unwrap());
            let next = h.with_added(0, &[(u2, v2)]).expect("no triangle in a tree");
            (
                next,
                Reduction {
                    step: OpStep::SubdivideEdge { edge: (u2, v2) },
                    removed: vec![w],
                    relabel,
                },
            )
        }
        Candidate::UndoPendant { support, leaf } => {
            let (next, relabel) = g.remove_vertices(&[leaf]);
            (
                next,
                Reduction {
                    step: OpStep::AddPendant {
                        link: relabel[support].unwrap(),
                    },
                    removed: vec![leaf],
                    relabel,
                },
            )
        }
        Candidate::UndoTwinLeaves { link } => {
            let leaves: Vec<usize> = g
                .neighbors(link)
                .iter()
                .copied()
                .filter(|&u| stats.leaves.contains(u))
                .collect();
            let (next, relabel) = g.remove_vertices(&leaves);
            (
                next,
                Reduction {
                    step: OpStep::GrowTwinLeaves {
                        link: relabel[link].unwrap(),
                    },
                    removed: leaves,
                    relabel,
                },
            )
        }
        Candidate::UndoPathCenter { y } => {
            let leaves: Vec<usize> = g
                .neighbors(y)
                .iter()
                .copied()
                .filter(|&u| stats.leaves.contains(u))
                .collect();
            let link = *g
                .neighbors(y)
                .iter()
                .find(|&&u| !stats.leaves.contains(u))
                .unwrap();
            // Removal order matches the forward layout: center, then ends.
            let removed = vec![y, leaves[0], leaves[1]];
            let (next, relabel) = g.remove_vertices(&removed);
            (
                next,
                Reduction {
                    step: OpStep::AttachPathCenter {
                        link: relabel[link].unwrap(),
                    },
                    removed,
                    relabel,
                },
            )
        }
        Candidate::UndoStarGadget { near, mid, far } => {
            let near_leaf = *g
                .neighbors(near)
                .iter()
                .find(|&&u| u != mid && stats.leaves.contains(u))
                .unwrap();
            let link = *g
                .neighbors(near)
                .iter()
                .find(|&&u| u != mid && !stats.leaves.contains(u))
                .unwrap();
            let far_leaves: Vec<usize> = g
                .neighbors(far)
                .iter()
                .copied()
                .filter(|&u| u != mid)
                .collect();
            let removed = vec![near, near_leaf, mid, far, far_leaves[0], far_leaves[1]];
            let (next, relabel) = g.remove_vertices(&removed);
            (
                next,
                Reduction {
                    step: OpStep::AttachSubdividedStar {
                        link: relabel[link].unwrap(),
                    },
                    removed,
                    relabel,
                },
            )
        }
    }
}
