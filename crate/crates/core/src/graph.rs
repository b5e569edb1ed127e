//! Directed graph container and edge-list file format.
//!
//! An edge `u -> v` records that node `u` subscribes to node `v`'s state.
//! Both adjacency directions are stored so that "who watches v" lookups are
//! O(in-degree) during simulation. Graphs are immutable once built; all
//! invariants (ids in range, no self-loops, no parallel edges) are enforced
//! at construction time.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

/// Node identifier; nodes of an `n`-node graph are exactly `0..n-1`.
pub type NodeId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("node id {id} out of range for {nodes} nodes")]
    IdOutOfRange { id: u64, nodes: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge-list line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Immutable directed graph with no self-loops or parallel edges.
///
/// Adjacency lists are kept sorted, which makes edge lookup a binary search
/// and neighbourhood intersections a linear merge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    out_adj: Vec<Vec<NodeId>>,
    in_adj: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl DirectedGraph {
    /// Build a graph from per-node out-neighbour lists, validating all
    /// invariants. List order is irrelevant; lists are sorted internally.
    pub fn from_out_lists(out_lists: Vec<Vec<NodeId>>) -> Result<Self, GraphError> {
        let n = out_lists.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut out_adj = out_lists;
        let mut edge_count = 0usize;
        for (u, targets) in out_adj.iter_mut().enumerate() {
            targets.sort_unstable();
            for (i, &v) in targets.iter().enumerate() {
                if v as usize >= n {
                    return Err(GraphError::IdOutOfRange {
                        id: v as u64,
                        nodes: n,
                    });
                }
                if v as usize == u {
                    return Err(GraphError::SelfLoop(v));
                }
                if i > 0 && targets[i - 1] == v {
                    return Err(GraphError::DuplicateEdge(u as NodeId, v));
                }
            }
            edge_count += targets.len();
        }
        let mut in_adj = vec![Vec::new(); n];
        for (u, targets) in out_adj.iter().enumerate() {
            for &v in targets {
                in_adj[v as usize].push(u as NodeId);
            }
        }
        // in-lists are filled in ascending source order, so already sorted
        Ok(Self {
            out_adj,
            in_adj,
            edge_count,
        })
    }

    /// Build a graph from an explicit edge list.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut out_lists = vec![Vec::new(); n];
        for (u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::IdOutOfRange { id: u as u64, nodes: n });
            }
            out_lists[u as usize].push(v);
        }
        Self::from_out_lists(out_lists)
    }

    pub fn node_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Nodes that `u` subscribes to, ascending.
    pub fn out_neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.out_adj[u as usize]
    }

    /// Nodes that subscribe to `v`, ascending.
    pub fn in_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.in_adj[v as usize]
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.out_adj[u as usize].len()
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_adj[v as usize].len()
    }

    pub fn total_degree(&self, v: NodeId) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.out_adj[u as usize].binary_search(&v).is_ok()
    }

    /// All edges in (source, then target) ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, targets)| targets.iter().map(move |&v| (u as NodeId, v)))
    }

    /// Serialise to the edge-list text format: a `# nodes=<n>` header line,
    /// then one `<u> <v>` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::with_capacity(16 + self.edge_count * 8);
        let _ = writeln!(s, "# nodes={}", self.node_count());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Parse the edge-list text format, validating all graph invariants.
    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| GraphError::Malformed {
            line: 1,
            reason: "empty input".into(),
        })?;
        let n: usize = header
            .strip_prefix("# nodes=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| GraphError::Malformed {
                line: 1,
                reason: "expected header `# nodes=<n>`".into(),
            })?;
        let mut edges = Vec::new();
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split(' ');
            let parse = |s: Option<&str>| -> Option<NodeId> { s.and_then(|x| x.parse().ok()) };
            let (u, v) = match (parse(parts.next()), parse(parts.next()), parts.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(GraphError::Malformed {
                        line: idx + 1,
                        reason: "expected `<u> <v>`".into(),
                    })
                }
            };
            edges.push((u, v));
        }
        Self::from_edges(n, edges)
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<(), GraphError> {
        fs::write(path, self.to_edge_list())?;
        Ok(())
    }

    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Self, GraphError> {
        Self::from_edge_list(&fs::read_to_string(path)?)
    }
}
