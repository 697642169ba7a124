//! Simple undirected graphs: construction, edge-list file I/O, topology
//! generators and derived statistics.
//!
//! Graphs are immutable once built and safe to share across concurrent
//! simulation runs. Node IDs are arbitrary `u64` values; adjacency lists are
//! kept sorted so that every traversal in the crate is deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Node identifier. IDs need not be contiguous.
pub type NodeId = u64;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: malformed edge {content:?} (expected \"u v\")")]
    Parse { line: usize, content: String },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("duplicate node id {0}")]
    DuplicateNode(NodeId),
    #[error("edge endpoint {0} is not a declared node")]
    UnknownEndpoint(NodeId),
    #[error("topology {kind} requires at least {min} nodes, got {got}")]
    TooFewNodes {
        kind: &'static str,
        min: u64,
        got: u64,
    },
    #[error("geometric radius must be positive, got {0}")]
    BadRadius(f64),
    #[error("edge probability must be in [0, 1], got {0}")]
    BadEdgeProb(f64),
}

/// An immutable simple undirected graph.
///
/// Invariants (enforced at construction, re-checkable via [`Graph::validate`]):
/// adjacency is symmetric, there are no self-loops or duplicate edges, and
/// node IDs are unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<NodeId, Vec<NodeId>>,
    edge_count: u64,
}

impl Graph {
    /// Builds a graph from an explicit node set and edge list. Nodes that
    /// appear in no edge are kept (isolated).
    pub fn from_parts(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        let mut adj: BTreeMap<NodeId, BTreeSet<NodeId>> = BTreeMap::new();
        for id in nodes {
            if adj.insert(id, BTreeSet::new()).is_some() {
                return Err(GraphError::DuplicateNode(id));
            }
        }
        let mut edge_count = 0u64;
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !adj.contains_key(&u) {
                return Err(GraphError::UnknownEndpoint(u));
            }
            if !adj.contains_key(&v) {
                return Err(GraphError::UnknownEndpoint(v));
            }
            if !adj.get_mut(&u).unwrap().insert(v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj.get_mut(&v).unwrap().insert(u);
            edge_count += 1;
        }
        let adj = adj
            .into_iter()
            .map(|(id, ns)| (id, ns.into_iter().collect()))
            .collect();
        Ok(Graph { adj, edge_count })
    }

    /// Builds a graph whose node set is exactly the endpoints of `edges`.
    pub fn from_edges(
        edges: impl IntoIterator<Item = (NodeId, NodeId)> + Clone,
    ) -> Result<Self, GraphError> {
        let nodes: BTreeSet<NodeId> = edges
            .clone()
            .into_iter()
            .flat_map(|(u, v)| [u, v])
            .collect();
        Self::from_parts(nodes, edges)
    }

    pub fn node_count(&self) -> u64 {
        self.adj.len() as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.adj.contains_key(&id)
    }

    /// Iterates node IDs in ascending order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.keys().copied()
    }

    /// Smallest node ID. Panics on an empty graph.
    pub fn min_node_id(&self) -> NodeId {
        *self.adj.keys().next().expect("empty graph")
    }

    /// Sorted neighbor list of `v`. Panics if `v` is not a node.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("unknown node {v}"))
    }

    pub fn degree(&self, v: NodeId) -> u64 {
        self.neighbors(v).len() as u64
    }

    pub fn max_degree(&self) -> u64 {
        self.adj.values().map(|ns| ns.len() as u64).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj
            .get(&u)
            .is_some_and(|ns| ns.binary_search(&v).is_ok())
    }

    /// Iterates edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.iter().flat_map(|(&u, ns)| {
            ns.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        bfs_distances(self, self.min_node_id()).len() as u64 == self.node_count()
    }

    /// Re-checks the structural invariants over every adjacency entry.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut half_edges = 0u64;
        for (&u, ns) in &self.adj {
            let mut prev: Option<NodeId> = None;
            for &v in ns {
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if prev == Some(v) {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
                if prev.is_some_and(|p| p > v) {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
                if !self.adj.get(&v).is_some_and(|m| m.binary_search(&u).is_ok()) {
                    return Err(GraphError::UnknownEndpoint(v));
                }
                prev = Some(v);
                half_edges += 1;
            }
        }
        debug_assert_eq!(half_edges, 2 * self.edge_count);
        Ok(())
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.node_count();
        let connected = self.is_connected();
        let diameter = if connected {
            Some(
                self.nodes()
                    .map(|v| {
                        bfs_distances(self, v)
                            .values()
                            .copied()
                            .max()
                            .unwrap_or(0)
                    })
                    .max()
                    .unwrap_or(0),
            )
        } else {
            None
        };
        GraphStats {
            node_count: n,
            edge_count: self.edge_count,
            max_degree: self.max_degree(),
            is_connected: connected,
            diameter,
        }
    }
}

/// Derived graph statistics. `diameter` is a hop count and is present
/// exactly when the graph is connected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub node_count: u64,
    pub edge_count: u64,
    pub max_degree: u64,
    pub is_connected: bool,
    pub diameter: Option<u64>,
}

/// Hop distances from `src` to every reachable node.
pub fn bfs_distances(g: &Graph, src: NodeId) -> BTreeMap<NodeId, u64> {
    let mut dist = BTreeMap::new();
    dist.insert(src, 0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for &v in g.neighbors(u) {
            if !dist.contains_key(&v) {
                dist.insert(v, d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Topology generator specification.
///
/// The random kinds draw from a ChaCha8 stream seeded with the 64-bit seed,
/// so a given spec always yields the same edge set (see the README for the
/// exact sampling order).
#[derive(Debug, Clone, PartialEq)]
pub enum TopologySpec {
    Path { n: u64 },
    Cycle { n: u64 },
    Star { n: u64 },
    Complete { n: u64 },
    RandomGeometric { n: u64, radius: f64, seed: u64 },
    RandomGnp { n: u64, edge_prob: f64, seed: u64 },
    FromFile { path: PathBuf },
}

/// Builds the graph described by `spec`. Pure: identical specs produce
/// bit-identical graphs.
pub fn generate(spec: &TopologySpec) -> Result<Graph, GraphError> {
    match *spec {
        TopologySpec::Path { n } => {
            require_nodes("path", 2, n)?;
            Graph::from_parts(0..n, (0..n - 1).map(|i| (i, i + 1)))
        }
        TopologySpec::Cycle { n } => {
            require_nodes("cycle", 3, n)?;
            Graph::from_parts(0..n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        TopologySpec::Star { n } => {
            require_nodes("star", 2, n)?;
            Graph::from_parts(0..n, (1..n).map(|i| (0, i)))
        }
        TopologySpec::Complete { n } => {
            require_nodes("complete", 2, n)?;
            Graph::from_parts(0..n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        TopologySpec::RandomGeometric { n, radius, seed } => {
            require_nodes("random_geometric", 2, n)?;
            if !(radius > 0.0) {
                return Err(GraphError::BadRadius(radius));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // One (x, y) pair per node, drawn in node order.
            let pts: Vec<(f64, f64)> = (0..n)
                .map(|_| (rng.gen::<f64>(), rng.gen::<f64>()))
                .collect();
            let r2 = radius * radius;
            let mut edges = Vec::new();
            for u in 0..n as usize {
                for v in u + 1..n as usize {
                    let dx = pts[u].0 - pts[v].0;
                    let dy = pts[u].1 - pts[v].1;
                    if dx * dx + dy * dy <= r2 {
                        edges.push((u as NodeId, v as NodeId));
                    }
                }
            }
            Graph::from_parts(0..n, edges)
        }
        TopologySpec::RandomGnp { n, edge_prob, seed } => {
            require_nodes("random_gnp", 2, n)?;
            if !(0.0..=1.0).contains(&edge_prob) {
                return Err(GraphError::BadEdgeProb(edge_prob));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // One uniform draw per pair, pairs visited in lexicographic order.
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen::<f64>() < edge_prob {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_parts(0..n, edges)
        }
        TopologySpec::FromFile { ref path } => load_edge_list(path),
    }
}

fn require_nodes(kind: &'static str, min: u64, got: u64) -> Result<(), GraphError> {
    if got < min {
        Err(GraphError::TooFewNodes { kind, min, got })
    } else {
        Ok(())
    }
}

/// Parses edge-list text: one `"u v"` edge per line, `#` lines are comments,
/// blank lines are ignored. Duplicate edges (in either orientation) and
/// self-loops are rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let edge = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => a.parse::<NodeId>().ok().zip(b.parse::<NodeId>().ok()),
            _ => None,
        };
        match edge {
            Some((u, v)) => edges.push((u, v)),
            None => {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    content: raw.to_string(),
                })
            }
        }
    }
    Graph::from_edges(edges)
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// Renders the edge list as text: edges in ascending `(u, v)` order with
/// `u < v`, one per line, LF-terminated.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    Ok(std::fs::write(path, write_edge_list(g))?)
}
