//! Text and JSON interchange formats.
//!
//! * Edge-list records: first line `n m`, then `m` lines `u v`, records
//!   separated by blank lines. Writing emits edges sorted by `(min, max)`
//!   so output is byte-deterministic.
//! * Parent arrays: one tree per line, space-separated parent indices
//!   with the root marked `-1`.
//! * DOT export for visual inspection.
//! * Forcing certificates as JSON: `{graph, initial, steps}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forcing;
use crate::graph::{Graph, GraphError};
use crate::set::VertexSet;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_fields<T: std::str::FromStr>(text: &str, line: usize) -> Result<Vec<T>, IoError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<T>().map_err(|_| IoError::Parse {
                line,
                message: format!("cannot parse `{tok}` as an integer"),
            })
        })
        .collect()
}

/// Parses every edge-list record in the input.
pub fn parse_edge_list(input: &str) -> Result<Vec<Graph>, IoError> {
    let mut graphs = Vec::new();
    let mut lines = input.lines().enumerate().peekable();
    loop {
        while lines.peek().is_some_and(|(_, l)| l.trim().is_empty()) {
            lines.next();
        }
        let Some((idx, header)) = lines.next() else {
            break;
        };
        let header_line = idx + 1;
        let nums: Vec<usize> = parse_fields(header, header_line)?;
        if nums.len() != 2 {
            return Err(IoError::Parse {
                line: header_line,
                message: "expected record header `n m`".into(),
            });
        }
        let (n, m) = (nums[0], nums[1]);
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let Some((idx, text)) = lines.next() else {
                return Err(IoError::Parse {
                    line: header_line,
                    message: format!("record promises {m} edges but the input ended"),
                });
            };
            let edge_line = idx + 1;
            let pair: Vec<usize> = parse_fields(text, edge_line)?;
            if pair.len() != 2 {
                return Err(IoError::Parse {
                    line: edge_line,
                    message: "expected an edge line `u v`".into(),
                });
            }
            edges.push((pair[0], pair[1]));
        }
        graphs.push(Graph::new(n, &edges)?);
    }
    Ok(graphs)
}

/// One edge-list record, edges sorted by `(min, max)`.
pub fn write_edge_list_record(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Multiple records separated by blank lines.
pub fn write_edge_list(graphs: &[Graph]) -> String {
    graphs
        .iter()
        .map(write_edge_list_record)
        .collect::<Vec<_>>()
        .join("\n")
}

/// DOT text for visual inspection; edge order is deterministic.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph g {\n");
    for v in g.vertices() {
        if g.degree(v) == 0 {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// Encodes a tree as a parent array rooted at vertex 0 (BFS parents).
pub fn write_parent_array(g: &Graph) -> Result<String, IoError> {
    if !g.is_tree() || g.order() == 0 {
        return Err(IoError::Graph(GraphError::NotATree));
    }
    let n = g.order();
    let mut parent: Vec<isize> = vec![isize::MIN; n];
    parent[0] = -1;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if parent[v] == isize::MIN {
                parent[v] = u as isize;
                queue.push_back(v);
            }
        }
    }
    Ok(parent
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" "))
}

/// Decodes one parent-array line into a tree.
pub fn parse_parent_array_line(text: &str, line: usize) -> Result<Graph, IoError> {
    let parents: Vec<isize> = parse_fields(text, line)?;
    let n = parents.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut roots = 0;
    for (v, &p) in parents.iter().enumerate() {
        if p == -1 {
            roots += 1;
        } else if p < 0 || p as usize >= n {
            return Err(IoError::Parse {
                line,
                message: format!("parent {p} of vertex {v} out of range"),
            });
        } else {
            edges.push((p as usize, v));
        }
    }
    if roots != 1 {
        return Err(IoError::Parse {
            line,
            message: format!("expected exactly one root (-1), found {roots}"),
        });
    }
    let g = Graph::new(n, &edges)?;
    if !g.is_tree() {
        return Err(IoError::Parse {
            line,
            message: "parent array does not encode a tree".into(),
        });
    }
    Ok(g)
}

/// Parses every non-blank line of parent-array text.
pub fn parse_parent_arrays(input: &str) -> Result<Vec<Graph>, IoError> {
    input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(idx, l)| parse_parent_array_line(l, idx + 1))
        .collect()
}

/// Inline graph record used inside JSON certificates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphRecord {
    pub fn from_graph(g: &Graph) -> GraphRecord {
        GraphRecord {
            n: g.order(),
            edges: g.edges().collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        Graph::new(self.n, &self.edges)
    }
}

/// A replayable forcing certificate: the graph, the sorted initial
/// colored set, and the forcing steps in order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ForcingCertificate {
    pub graph: GraphRecord,
    pub initial: Vec<usize>,
    pub steps: Vec<(usize, usize)>,
}

impl ForcingCertificate {
    pub fn new(g: &Graph, initial: &VertexSet, steps: &[(usize, usize)]) -> ForcingCertificate {
        ForcingCertificate {
            graph: GraphRecord::from_graph(g),
            initial: initial.to_vec(),
            steps: steps.to_vec(),
        }
    }

    /// Rebuilds the graph and replays the steps.
    pub fn validate(&self) -> Result<bool, GraphError> {
        let g = self.graph.to_graph()?;
        let s = VertexSet::from_indices(g.order(), self.initial.iter().copied());
        Ok(forcing::validate_certificate(&g, &s, &self.steps))
    }
}
