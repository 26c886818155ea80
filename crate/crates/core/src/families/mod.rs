//! Constructive generators, recognizers and certificates for the three
//! extremal tree families:
//!
//! * star-partition trees attaining the upper bound
//!   `F_t(T) = ((Δ-1)n + 1)/Δ` (see [`stars`]),
//! * trees with `F_t(T)` equal to the leaf count, generated from `P_2` by
//!   five growth operations (see [`ops`] and [`derivation`]),
//! * trees with `F_t(T) = F(T) + 1`: paths and trees trimming to a star,
//! * and the caterpillar construction realizing an arbitrary gap
//!   `F_t - F = k`.

mod derivation;
mod ops;
mod stars;

pub use derivation::recognize_f;
pub use ops::{applicable_steps, apply_operation, OpStep};
pub use stars::{
    generate_all_t_delta, generate_t_delta, prescribed_min_tf_set, recognize_t_delta,
    t_delta_plan_count, StarPartition,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("operation {op} precondition violated: {reason}")]
    PreconditionViolated { op: &'static str, reason: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid star partition: {0}")]
    InvalidPartition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which shape certifies membership in the family of trees with
/// `F_t = F + 1`: a path, or a tree whose trimmed tree is a star with at
/// least three leaves (a subdivided star).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HTag {
    #[serde(rename = "path")]
    Path,
    #[serde(rename = "star-trim")]
    StarTrim,
}

/// Recognizes membership in the family of trees with `F_t = F + 1`.
pub fn recognize_h(t: &Graph) -> Result<Option<HTag>, FamilyError> {
    if !t.is_tree() || t.order() < 2 {
        return Err(FamilyError::Graph(GraphError::NotATree));
    }
    if t.is_path() {
        return Ok(Some(HTag::Path));
    }
    let trimmed = t.trim()?;
    let st = trimmed.stats();
    if trimmed.is_star() && st.leaf_count >= 3 {
        return Ok(Some(HTag::StarTrim));
    }
    Ok(None)
}

/// The gap construction: a spine path of `k` vertices with two pendant
/// leaves on each spine vertex, of order `3k`. Its total forcing number is
/// `2k` while its forcing number is `k`.
pub fn gap_tree(k: usize) -> Result<Graph, FamilyError> {
    if k == 0 {
        return Err(FamilyError::InvalidParameters(
            "gap construction needs k >= 1".into(),
        ));
    }
    let mut edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
    for i in 0..k {
        edges.push((i, k + 2 * i));
        edges.push((i, k + 2 * i + 1));
    }
    Ok(Graph::new(3 * k, &edges)?)
}

/// Constructive evidence of family membership, as emitted by the
/// recognizers.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "family", content = "evidence")]
pub enum FamilyCertificate {
    #[serde(rename = "Tdelta")]
    StarPartition(StarPartition),
    #[serde(rename = "F")]
    Operations(Vec<OpStep>),
    #[serde(rename = "H")]
    PathOrSpider(HTag),
}
