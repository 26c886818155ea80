//! The star-partition family: trees of maximum degree Δ whose vertex set
//! splits into one `K_{1,Δ}` block and `k-1` further `K_{1,Δ-1}` blocks,
//! each centered at an independent strong support vertex of degree Δ.
//! These are exactly the trees attaining `F_t(T) = ((Δ-1)n + 1)/Δ`.

use serde::Serialize;

use crate::graph::Graph;
use crate::set::VertexSet;

use super::FamilyError;

/// A certified star partition: `centers[i]` is the central vertex of
/// `blocks[i]`, `blocks[0]` induces `K_{1,delta}` and every later block
/// induces `K_{1,delta-1}`.
#[derive(Clone, Debug, Serialize)]
pub struct StarPartition {
    pub delta: usize,
    pub centers: Vec<usize>,
    pub blocks: Vec<VertexSet>,
}

impl StarPartition {
    /// Checks every defining condition of the family against `t`.
    pub fn validate(&self, t: &Graph) -> Result<(), FamilyError> {
        let bad = |msg: String| Err(FamilyError::InvalidPartition(msg));
        if !t.is_tree() {
            return Err(FamilyError::Graph(crate::graph::GraphError::NotATree));
        }
        let n = t.order();
        let k = self.centers.len();
        if k == 0 || k != self.blocks.len() {
            return bad("centers and blocks must be non-empty and aligned".into());
        }
        let delta = self.delta;
        if t.stats().max_degree != delta {
            return bad(format!("tree has maximum degree {}, not {delta}", t.stats().max_degree));
        }
        // Blocks partition V(t).
        let mut seen = VertexSet::empty(n);
        let mut total = 0;
        for b in &self.blocks {
            if b.capacity() != n || !b.intersection(&seen).is_empty() {
                return bad("blocks overlap or have wrong capacity".into());
            }
            total += b.len();
            seen = seen.union(b);
        }
        if total != n {
            return bad("blocks do not cover the vertex set".into());
        }
        let stats = t.stats();
        for (i, (&c, block)) in self.centers.iter().zip(&self.blocks).enumerate() {
            let want = if i == 0 { delta + 1 } else { delta };
            if block.len() != want {
                return bad(format!("block {i} has {} vertices, expected {want}", block.len()));
            }
            if !block.contains(c) {
                return bad(format!("center {c} is outside its block"));
            }
            // Induced star: every other block member is adjacent to the center.
            for v in block.iter() {
                if v != c && !t.has_edge(c, v) {
                    return bad(format!("block member {v} is not adjacent to center {c}"));
                }
            }
            if t.degree(c) != delta {
                return bad(format!("center {c} has degree {} in the tree, expected {delta}", t.degree(c)));
            }
            if !stats.strong_supports.contains(c) {
                return bad(format!("center {c} is not a strong support vertex"));
            }
        }
        for &a in &self.centers {
            for &b in &self.centers {
                if a < b && t.has_edge(a, b) {
                    return bad(format!("centers {a} and {b} are adjacent"));
                }
            }
        }
        Ok(())
    }
}

/// Recognizes membership in the star-partition family, returning a
/// validated partition when one exists.
///
/// The candidate centers are forced: every leaf's support vertex must be
/// its block's center, and every center is a strong support vertex, so
/// the center set is exactly the strong support set. What remains is to
/// assign each non-center to an adjacent center so that one block reaches
/// `delta` members and the rest `delta - 1`.
pub fn recognize_t_delta(t: &Graph) -> Result<Option<StarPartition>, FamilyError> {
    if !t.is_tree() || t.order() == 0 {
        return Err(FamilyError::Graph(crate::graph::GraphError::NotATree));
    }
    let n = t.order();
    if n < 3 {
        return Ok(None);
    }
    let stats = t.stats();
    let delta = stats.max_degree;
    let centers: Vec<usize> = stats.strong_supports.to_vec();
    let k = centers.len();
    if k == 0
        || n != k * delta + 1
        || centers.iter().any(|&c| t.degree(c) != delta)
    {
        return Ok(None);
    }
    for &a in &centers {
        for &b in &centers {
            if a < b && t.has_edge(a, b) {
                return Ok(None);
            }
        }
    }
    let center_index: Vec<Option<usize>> = {
        let mut idx = vec![None; n];
        for (i, &c) in centers.iter().enumerate() {
            idx[c] = Some(i);
        }
        idx
    };
    // Non-centers with their adjacent-center choices, fewest choices first.
    let mut members: Vec<(usize, Vec<usize>)> = Vec::new();
    for v in 0..n {
        if center_index[v].is_some() {
            continue;
        }
        let choices: Vec<usize> = t
            .neighbors(v)
            .iter()
            .filter_map(|&u| center_index[u])
            .collect();
        if choices.is_empty() {
            return Ok(None);
        }
        members.push((v, choices));
    }
    members.sort_by_key(|(v, cs)| (cs.len(), *v));
    // Each block may hold at most `delta` members; the totals then force
    // exactly one block of `delta` and the rest `delta - 1`.
    let mut loads = vec![0usize; k];
    let mut assigned = vec![usize::MAX; members.len()];
    if !assign_members(&members, 0, delta, &mut loads, &mut assigned) {
        return Ok(None);
    }
    let mut blocks: Vec<VertexSet> = centers
        .iter()
        .map(|&c| VertexSet::from_indices(n, [c]))
        .collect();
    for (slot, &(v, _)) in members.iter().enumerate() {
        blocks[assigned[slot]].insert(v);
    }
    // Put the K_{1,delta} block first.
    let big = loads.iter().position(|&l| l == delta).expect("one full block");
    let mut order: Vec<usize> = (0..k).collect();
    order.swap(0, big);
    let partition = StarPartition {
        delta,
        centers: order.iter().map(|&i| centers[i]).collect(),
        blocks: order.iter().map(|&i| blocks[i].clone()).collect(),
    };
    partition
        .validate(t)
        .expect("search result satisfies the family conditions");
    Ok(Some(partition))
}

fn assign_members(
    members: &[(usize, Vec<usize>)],
    pos: usize,
    delta: usize,
    loads: &mut Vec<usize>,
    assigned: &mut Vec<usize>,
) -> bool {
    if pos == members.len() {
        return loads.iter().filter(|&&l| l == delta).count() == 1
            && loads.iter().all(|&l| l == delta || l == delta - 1);
    }
    for &c in &members[pos].1 {
        if loads[c] < delta {
            loads[c] += 1;
            assigned[pos] = c;
            if assign_members(members, pos + 1, delta, loads, assigned) {
                return true;
            }
            loads[c] -= 1;
        }
    }
    false
}

/// An attachment plan for the generator: for each of the `k-1` later
/// blocks, the block and member slot its center links to.
type Plan = Vec<(usize, usize)>;

fn member_count(block: usize, delta: usize) -> usize {
    if block == 0 {
        delta
    } else {
        delta - 1
    }
}

fn enumerate_plans(delta: usize, k: usize) -> Result<Vec<Plan>, FamilyError> {
    if delta < 2 || k == 0 {
        return Err(FamilyError::InvalidParameters(format!(
            "need delta >= 2 and k >= 1, got delta={delta}, k={k}"
        )));
    }
    if k == 1 {
        return Ok(vec![vec![]]);
    }
    if delta == 2 {
        // Two independent degree-2 strong supports cannot coexist in a tree
        // of order 2k+1; the family with delta = 2 is just P_3.
        return Err(FamilyError::InvalidParameters(
            "delta = 2 admits only k = 1".into(),
        ));
    }
    let mut plans = Vec::new();
    let mut current: Plan = Vec::new();
    extend_plan(delta, k, &mut current, &mut plans);
    Ok(plans)
}

fn extend_plan(delta: usize, k: usize, current: &mut Plan, out: &mut Vec<Plan>) {
    let block = current.len() + 1; // the block whose center attaches next
    if block == k {
        if plan_is_valid(delta, k, current) {
            out.push(current.clone());
        }
        return;
    }
    for target in 0..k {
        if target == block {
            continue;
        }
        for slot in 0..member_count(target, delta) {
            current.push((target, slot));
            extend_plan(delta, k, current, out);
            current.pop();
        }
    }
}

fn plan_is_valid(delta: usize, k: usize, plan: &Plan) -> bool {
    // The block links must form a tree on the k blocks.
    let mut reach = vec![false; k];
    reach[0] = true;
    loop {
        let mut grew = false;
        for (i, &(target, _)) in plan.iter().enumerate() {
            let block = i + 1;
            if reach[block] != reach[target] {
                reach[block] = true;
                reach[target] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    if !reach.iter().all(|&r| r) {
        return false;
    }
    // Slot loads: a member of degree 1 + load must stay within delta, and
    // each block needs at least two untouched members so its center stays
    // a strong support.
    let mut load = std::collections::BTreeMap::<(usize, usize), usize>::new();
    for &(target, slot) in plan {
        *load.entry((target, slot)).or_insert(0) += 1;
    }
    if load.values().any(|&l| l > delta - 1) {
        return false;
    }
    for block in 0..k {
        let touched = load.keys().filter(|&&(b, _)| b == block).count();
        if member_count(block, delta) - touched < 2 {
            return false;
        }
    }
    true
}

/// Number of valid attachment plans for the given parameters.
pub fn t_delta_plan_count(delta: usize, k: usize) -> Result<usize, FamilyError> {
    Ok(enumerate_plans(delta, k)?.len())
}

/// Builds the family member selected by `plan_index` among the valid
/// attachment plans, together with its certifying partition.
pub fn generate_t_delta(
    delta: usize,
    k: usize,
    plan_index: usize,
) -> Result<(Graph, StarPartition), FamilyError> {
    let plans = enumerate_plans(delta, k)?;
    let plan = plans.get(plan_index).ok_or_else(|| {
        FamilyError::InvalidParameters(format!(
            "plan index {plan_index} out of range: delta={delta}, k={k} has {} plans",
            plans.len()
        ))
    })?;
    Ok(build_from_plan(delta, k, plan))
}

/// Builds every family member for the given parameters, one per valid
/// attachment plan (isomorphic duplicates are possible; deduplicate by
/// canonical code when needed).
pub fn generate_all_t_delta(delta: usize, k: usize) -> Result<Vec<(Graph, StarPartition)>, FamilyError> {
    Ok(enumerate_plans(delta, k)?
        .iter()
        .map(|p| build_from_plan(delta, k, p))
        .collect())
}

fn build_from_plan(delta: usize, k: usize, plan: &Plan) -> (Graph, StarPartition) {
    let n = k * delta + 1;
    let center_of = |block: usize| -> usize {
        if block == 0 {
            0
        } else {
            delta + 1 + (block - 1) * delta
        }
    };
    let member_of = |block: usize, slot: usize| -> usize { center_of(block) + 1 + slot };
    let mut edges = Vec::new();
    for block in 0..k {
        for slot in 0..member_count(block, delta) {
            edges.push((center_of(block), member_of(block, slot)));
        }
    }
    for (i, &(target, slot)) in plan.iter().enumerate() {
        edges.push((center_of(i + 1), member_of(target, slot)));
    }
    let g = Graph::new(n, &edges).expect("plan construction is simple");
    let blocks: Vec<VertexSet> = (0..k)
        .map(|b| {
            VertexSet::from_indices(
                n,
                std::iter::once(center_of(b))
                    .chain((0..member_count(b, delta)).map(|s| member_of(b, s))),
            )
        })
        .collect();
    let partition = StarPartition {
        delta,
        centers: (0..k).map(center_of).collect(),
        blocks,
    };
    (g, partition)
}

/// The minimum TF-set this family prescribes: every vertex except the
/// lowest-indexed leaf neighbor of each block center. Its size is
/// `k(delta-1) + 1`.
pub fn prescribed_min_tf_set(t: &Graph, p: &StarPartition) -> Result<VertexSet, FamilyError> {
    p.validate(t)?;
    let stats = t.stats();
    let mut s = VertexSet::full(t.order());
    for &c in &p.centers {
        let dropped = t
            .neighbors(c)
            .iter()
            .copied()
            .find(|&u| stats.leaves.contains(u))
            .expect("validated centers are strong supports");
        s.remove(dropped);
    }
    Ok(s)
}
