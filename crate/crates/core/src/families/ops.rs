//! The five growth operations that generate the family of trees whose
//! total forcing number equals their leaf count, starting from `P_2`.
//!
//! Certificates serialize each step as `{op, link, params}` with op tags
//! `"O1"`..`"O5"`; the tags are part of the certificate wire format.

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::Graph;

use super::FamilyError;

/// One growth step. New vertices are always appended after the existing
/// ones, in the order documented on each variant, so certificates replay
/// deterministically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpStep {
    /// O1: subdivide the edge once; at least one endpoint must have degree
    /// at most 2. Adds the subdivision vertex `n`.
    SubdivideEdge { edge: (usize, usize) },
    /// O2: add a pendant edge at a strong support vertex. Adds leaf `n`.
    AddPendant { link: usize },
    /// O3: add two pendant edges to a leaf whose neighbor is a strong
    /// support vertex. Adds leaves `n`, `n+1`.
    GrowTwinLeaves { link: usize },
    /// O4: attach a `P_3` by its central vertex to a vertex of degree at
    /// least 2. Adds the path center `n` and its two leaves `n+1`, `n+2`.
    AttachPathCenter { link: usize },
    /// O5: attach a `K_{1,3}` with one edge subdivided twice, joining its
    /// degree-2 support vertex to a vertex of degree at least 2. Adds the
    /// near support `n`, its leaf `n+1`, the middle vertex `n+2`, the far
    /// star center `n+3` and its two leaves `n+4`, `n+5`.
    AttachSubdividedStar { link: usize },
}

impl OpStep {
    pub fn tag(&self) -> &'static str {
        match self {
            OpStep::SubdivideEdge { .. } => "O1",
            OpStep::AddPendant { .. } => "O2",
            OpStep::GrowTwinLeaves { .. } => "O3",
            OpStep::AttachPathCenter { .. } => "O4",
            OpStep::AttachSubdividedStar { .. } => "O5",
        }
    }

    /// How many vertices the step adds.
    pub fn growth(&self) -> usize {
        match self {
            OpStep::SubdivideEdge { .. } | OpStep::AddPendant { .. } => 1,
            OpStep::GrowTwinLeaves { .. } => 2,
            OpStep::AttachPathCenter { .. } => 3,
            OpStep::AttachSubdividedStar { .. } => 6,
        }
    }
}

impl Serialize for OpStep {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("OpStep", 3)?;
        s.serialize_field("op", self.tag())?;
        match *self {
            OpStep::SubdivideEdge { edge: (u, v) } => {
                s.serialize_field("link", &u)?;
                s.serialize_field("params", &vec![u, v])?;
            }
            OpStep::AddPendant { link }
            | OpStep::GrowTwinLeaves { link }
            | OpStep::AttachPathCenter { link }
            | OpStep::AttachSubdividedStar { link } => {
                s.serialize_field("link", &link)?;
                s.serialize_field("params", &Vec::<usize>::new())?;
            }
        }
        s.end()
    }
}

impl<'de> Deserialize<'de> for OpStep {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct StepVisitor;
        impl<'de> Visitor<'de> for StepVisitor {
            type Value = OpStep;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an object {op, link, params}")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<OpStep, A::Error> {
                let mut op: Option<String> = None;
                let mut link: Option<usize> = None;
                let mut params: Option<Vec<usize>> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "op" => op = Some(map.next_value()?),
                        "link" => link = Some(map.next_value()?),
                        "params" => params = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["op", "link", "params"])),
                    }
                }
                let op = op.ok_or_else(|| de::Error::missing_field("op"))?;
                let link = link.ok_or_else(|| de::Error::missing_field("link"))?;
                let params = params.unwrap_or_default();
                match op.as_str() {
                    "O1" => {
                        if params.len() != 2 {
                            return Err(de::Error::custom("O1 takes an edge parameter [u, v]"));
                        }
                        Ok(OpStep::SubdivideEdge {
                            edge: (params[0], params[1]),
                        })
                    }
                    "O2" => Ok(OpStep::AddPendant { link }),
                    "O3" => Ok(OpStep::GrowTwinLeaves { link }),
                    "O4" => Ok(OpStep::AttachPathCenter { link }),
                    "O5" => Ok(OpStep::AttachSubdividedStar { link }),
                    other => Err(de::Error::custom(format!("unknown operation tag {other}"))),
                }
            }
        }
        deserializer.deserialize_struct("OpStep", &["op", "link", "params"], StepVisitor)
    }
}

fn violated(op: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::PreconditionViolated {
        op,
        reason: reason.into(),
    }
}

/// Applies one growth step to a tree, checking its precondition.
pub fn apply_operation(t: &Graph, step: &OpStep) -> Result<Graph, FamilyError> {
    if !t.is_tree() || t.order() < 2 {
        return Err(FamilyError::Graph(crate::graph::GraphError::NotATree));
    }
    let n = t.order();
    let stats = t.stats();
    let check_vertex = |v: usize, op: &'static str| {
        if v >= n {
            Err(violated(op, format!("vertex {v} out of range")))
        } else {
            Ok(())
        }
    };
    match *step {
        OpStep::SubdivideEdge { edge: (u, v) } => {
            check_vertex(u, "O1")?;
            check_vertex(v, "O1")?;
            if !t.has_edge(u, v) {
                return Err(violated("O1", format!("edge {u}-{v} not present")));
            }
            if t.degree(u).min(t.degree(v)) > 2 {
                return Err(violated(
                    "O1",
                    format!("neither endpoint of {u}-{v} has degree at most 2"),
                ));
            }
            Ok(t.subdivide_edge((u, v), 1)?)
        }
        OpStep::AddPendant { link } => {
            check_vertex(link, "O2")?;
            if !stats.strong_supports.contains(link) {
                return Err(violated("O2", format!("vertex {link} is not a strong support vertex")));
            }
            Ok(t.with_added(1, &[(link, n)])?)
        }
        OpStep::GrowTwinLeaves { link } => {
            check_vertex(link, "O3")?;
            if t.degree(link) != 1 {
                return Err(violated("O3", format!("vertex {link} is not a leaf")));
            }
            let support = t.neighbors(link)[0];
            if !stats.strong_supports.contains(support) {
                return Err(violated(
                    "O3",
                    format!("the neighbor {support} of leaf {link} is not a strong support vertex"),
                ));
            }
            Ok(t.with_added(2, &[(link, n), (link, n + 1)])?)
        }
        OpStep::AttachPathCenter { link } => {
            check_vertex(link, "O4")?;
            if t.degree(link) < 2 {
                return Err(violated("O4", format!("vertex {link} has degree below 2")));
            }
            Ok(t.with_added(3, &[(link, n), (n, n + 1), (n, n + 2)])?)
        }
        OpStep::AttachSubdividedStar { link } => {
            check_vertex(link, "O5")?;
            if t.degree(link) < 2 {
                return Err(violated("O5", format!("vertex {link} has degree below 2")));
            }
            Ok(t.with_added(
                6,
                &[
                    (link, n),
                    (n, n + 1),
                    (n, n + 2),
                    (n + 2, n + 3),
                    (n + 3, n + 4),
                    (n + 3, n + 5),
                ],
            )?)
        }
    }
}

/// Every step whose precondition holds on `t`, in a fixed deterministic
/// order. Used for randomized family generation.
pub fn applicable_steps(t: &Graph) -> Vec<OpStep> {
    let mut steps = Vec::new();
    if !t.is_tree() || t.order() < 2 {
        return steps;
    }
    let stats = t.stats();
    for (u, v) in t.edges() {
        if t.degree(u).min(t.degree(v)) <= 2 {
            steps.push(OpStep::SubdivideEdge { edge: (u, v) });
        }
    }
    for v in stats.strong_supports.iter() {
        steps.push(OpStep::AddPendant { link: v });
    }
    for v in stats.leaves.iter() {
        if stats.strong_supports.contains(t.neighbors(v)[0]) {
            steps.push(OpStep::GrowTwinLeaves { link: v });
        }
    }
    for v in t.vertices() {
        if t.degree(v) >= 2 {
            steps.push(OpStep::AttachPathCenter { link: v });
            steps.push(OpStep::AttachSubdividedStar { link: v });
        }
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;

    #[test]
    fn subdivide_p2_gives_p3() {
        let t = apply_operation(&Graph::path(2), &OpStep::SubdivideEdge { edge: (0, 1) }).unwrap();
        assert!(t.is_path());
        assert_eq!(t.order(), 3);
    }

    #[test]
    fn double_star_from_p2_via_o1_then_o4() {
        let p3 = apply_operation(&Graph::path(2), &OpStep::SubdivideEdge { edge: (0, 1) }).unwrap();
        // The subdivision vertex 2 is the center of the new P_3.
        let t = apply_operation(&p3, &OpStep::AttachPathCenter { link: 2 }).unwrap();
        assert_eq!(
            canonical_code(&t).unwrap(),
            canonical_code(&Graph::double_star(2, 2)).unwrap()
        );
    }

    #[test]
    fn o2_requires_strong_support() {
        let err = apply_operation(&Graph::path(2), &OpStep::AddPendant { link: 0 });
        assert!(matches!(
            err,
            Err(FamilyError::PreconditionViolated { op: "O2", .. })
        ));
        let t = apply_operation(&Graph::star(2), &OpStep::AddPendant { link: 0 }).unwrap();
        assert_eq!(canonical_code(&t).unwrap(), canonical_code(&Graph::star(3)).unwrap());
    }

    #[test]
    fn o3_grows_leaf_of_strong_support() {
        let t = apply_operation(&Graph::star(3), &OpStep::GrowTwinLeaves { link: 1 }).unwrap();
        assert_eq!(t.order(), 6);
        assert_eq!(t.degree(1), 3);
        let err = apply_operation(&Graph::path(4), &OpStep::GrowTwinLeaves { link: 0 });
        assert!(err.is_err());
    }

    #[test]
    fn o5_gadget_shape() {
        let base = Graph::path(3);
        let t = apply_operation(&base, &OpStep::AttachSubdividedStar { link: 1 }).unwrap();
        assert_eq!(t.order(), 9);
        assert!(t.is_tree());
        assert_eq!(t.degree(3), 3); // near support
        assert_eq!(t.degree(5), 2); // middle vertex
        assert_eq!(t.degree(6), 3); // far star center
    }

    #[test]
    fn step_json_round_trip() {
        let steps = vec![
            OpStep::SubdivideEdge { edge: (0, 1) },
            OpStep::AddPendant { link: 2 },
            OpStep::AttachSubdividedStar { link: 7 },
        ];
        let json = serde_json::to_string(&steps).unwrap();
        assert!(json.contains("\"op\":\"O1\""));
        let back: Vec<OpStep> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, steps);
    }
}
