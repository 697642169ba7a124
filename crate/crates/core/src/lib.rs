//! Deterministic round-synchronous simulation of distributed vertex cover
//! algorithms on undirected graphs.
//!
//! The crate is organized around five pieces:
//!
//! * [`graph`] — immutable simple undirected graphs, edge-list file I/O,
//!   topology generators and derived stats.
//! * [`kernel`] — the round-synchronous message-passing executor: messages
//!   sent in round `r` are delivered at the start of round `r + 1`, handlers
//!   run in ascending node-ID order, and every run is a pure function of its
//!   inputs (graph, program, config).
//! * [`programs`] — the three vertex cover node programs (degree-threshold
//!   greedy, mutual-request matching, BFS-tree levels) plus their pure
//!   decision functions.
//! * [`oracle`] — exact minimum vertex cover solvers (exhaustive enumeration
//!   and branch-and-bound), cover validity checking and approximation-ratio
//!   reporting.
//! * [`report`] — side-by-side comparison of all three algorithms against
//!   the exact optimum, rendered as CSV, JSON or a plain-text table.

pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod programs;
pub mod report;

pub use graph::{
    bfs_distances, generate, load_edge_list, parse_edge_list, save_edge_list, write_edge_list,
    Graph, GraphError, GraphStats, NodeId, TopologySpec,
};
pub use kernel::{
    deliver_order, run, Envelope, Message, MessageKind, NodeProgram, NodeView, ProgramError,
    SimConfig, SimError, SimResult, TraceEntry, TraceLevel,
};
pub use oracle::{
    approximation_report, is_vertex_cover, min_vertex_cover_bnb, min_vertex_cover_enumerate,
    ApproxReport, OracleError, OracleResult, SolveMethod,
};
pub use programs::bfs::{bfs_cover_decision, BfsProgram};
pub use programs::greedy::{greedy_threshold, GreedyMode, GreedyProgram};
pub use programs::matching::{select_match_target, MatchingProgram, NeighborDegree};
pub use report::{compare, Algorithm, CompareError, CompareRow};
