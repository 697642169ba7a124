//! Round-synchronous message-passing executor.
//!
//! Execution proceeds in global rounds. Every envelope sent in round `r` is
//! delivered at the start of round `r + 1`; within a round each node's
//! handler runs exactly once, in ascending node-ID order, over an inbox
//! sorted by [`deliver_order`]. A run ends at quiescence (no envelopes in
//! flight and every node terminated) or errors out when `max_rounds` is
//! exhausted. Given the same graph, program and config, a run is fully
//! deterministic, trace included.
//!
//! Reliability timers and acknowledgements are modeled as a reliable
//! synchronous channel: ACK envelopes are never materialized or counted. A
//! broadcast to `d` neighbors counts as `d` unicast messages.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::oracle;
use crate::programs::greedy::GreedyMode;

/// Wire payload. The variants double as the per-kind counting buckets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Message {
    /// Sender has left the residual graph (joined the cover or matched).
    Drop,
    /// Sender's degree. A payload of 0 is read as a drop notification.
    Degree(u64),
    /// Matching handshake: sender proposes to pair with the receiver.
    MatchRequest,
    /// BFS tree construction: sender's level, flooded outward from the sink.
    Infrastructure(u64),
    /// BFS level advertisement to neighbors after the tree is built.
    Level(u64),
}

/// Message kind tag. The tag order (declaration order) is the tiebreak used
/// by [`deliver_order`].
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum MessageKind {
    Drop,
    Degree,
    MatchRequest,
    Infrastructure,
    Level,
}

impl MessageKind {
    pub const ALL: [MessageKind; 5] = [
        MessageKind::Drop,
        MessageKind::Degree,
        MessageKind::MatchRequest,
        MessageKind::Infrastructure,
        MessageKind::Level,
    ];
}

impl Message {
    pub fn kind(&self) -> MessageKind {
        match self {
            Message::Drop => MessageKind::Drop,
            Message::Degree(_) => MessageKind::Degree,
            Message::MatchRequest => MessageKind::MatchRequest,
            Message::Infrastructure(_) => MessageKind::Infrastructure,
            Message::Level(_) => MessageKind::Level,
        }
    }

    /// Numeric payload, when the kind carries one.
    pub fn payload(&self) -> Option<u64> {
        match *self {
            Message::Degree(d) => Some(d),
            Message::Infrastructure(l) | Message::Level(l) => Some(l),
            Message::Drop | Message::MatchRequest => None,
        }
    }
}

/// An in-flight message. `dst` is always a graph neighbor of `src`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub src: NodeId,
    pub dst: NodeId,
    pub msg: Message,
    pub send_round: u64,
}

/// One traced envelope in the export schema: `round` is the round the
/// envelope was sent; delivery always happens at `round + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub round: u64,
    pub src: NodeId,
    pub dst: NodeId,
    pub kind: MessageKind,
    pub payload: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceLevel {
    #[default]
    Off,
    Counts,
    Full,
}

/// Simulation parameters shared by all programs. Fields a given program does
/// not use are ignored by it.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Hard round guard; exceeding it is a [`SimError::NonTermination`].
    pub max_rounds: u64,
    /// BFS sink override; defaults to the minimum node ID.
    pub sink: Option<NodeId>,
    pub greedy_mode: GreedyMode,
    /// Reserved; ACKs are modeled away and must not be counted.
    pub count_acks: bool,
    pub trace_level: TraceLevel,
}

impl SimConfig {
    /// Config with the empirical termination guard `max_rounds = 4 n`.
    pub fn for_graph(g: &Graph) -> Self {
        SimConfig {
            max_rounds: (4 * g.node_count()).max(4),
            sink: None,
            greedy_mode: GreedyMode::default(),
            count_acks: false,
            trace_level: TraceLevel::Off,
        }
    }
}

/// Everything a node is allowed to know about the network: its own ID, its
/// neighbor list, and the global maximum degree.
#[derive(Debug, Clone, Copy)]
pub struct NodeView<'a> {
    pub id: NodeId,
    pub neighbors: &'a [NodeId],
    pub max_degree: u64,
}

impl NodeView<'_> {
    pub fn degree(&self) -> u64 {
        self.neighbors.len() as u64
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("node {node}: {reason}")]
pub struct ProgramError {
    pub node: NodeId,
    pub reason: String,
}

impl ProgramError {
    pub fn new(node: NodeId, reason: impl Into<String>) -> Self {
        ProgramError {
            node,
            reason: reason.into(),
        }
    }
}

/// A distributed algorithm expressed as a per-node state transducer:
/// `(state, inbox) -> (state, outbox, terminated?)`. Nodes share no state;
/// all interaction flows through the kernel.
pub trait NodeProgram {
    type State;

    /// Builds the node's initial state and any round-0 messages.
    fn init(&self, view: &NodeView<'_>) -> (Self::State, Vec<(NodeId, Message)>);

    /// Handles one round. `net_quiet` is true when no envelope was in flight
    /// at the start of the round (the whole network was silent last round);
    /// it stands in for the "all messaging has finished" timers of the
    /// modeled radio protocols.
    fn step(
        &self,
        state: &mut Self::State,
        view: &NodeView<'_>,
        round: u64,
        net_quiet: bool,
        inbox: &[(NodeId, Message)],
    ) -> Result<Vec<(NodeId, Message)>, ProgramError>;

    /// True once the node has finished local work for good.
    fn terminated(&self, state: &Self::State) -> bool;

    /// The node's final membership decision.
    fn in_cover(&self, state: &Self::State) -> bool;
}

/// Outcome of one simulation run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimResult {
    pub cover: BTreeSet<NodeId>,
    pub message_counts: BTreeMap<MessageKind, u64>,
    pub total_messages: u64,
    pub rounds_executed: u64,
    pub is_valid_cover: bool,
    /// Populated only at `TraceLevel::Full`; ordered by send round, then by
    /// sender execution order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceEntry>,
}

impl SimResult {
    /// Trace as JSON lines, one envelope object per line.
    pub fn trace_jsonl(&self) -> String {
        let mut out = String::new();
        for entry in &self.trace {
            out.push_str(&serde_json::to_string(entry).expect("trace entry serializes"));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("simulation did not quiesce within {max_rounds} rounds")]
    NonTermination {
        max_rounds: u64,
        partial: Box<SimResult>,
    },
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error("node {src} sent to {dst}, which is not one of its neighbors")]
    IllegalSend { src: NodeId, dst: NodeId },
    #[error("ACK counting is reserved and not implemented")]
    AcksNotModeled,
    #[error("max_rounds must be at least 1")]
    BadMaxRounds,
}

/// Fixes delivery order within one inbox: stable sort by sender ID, then by
/// message kind tag. This pins down the nondeterminism real radio timing
/// would otherwise introduce.
pub fn deliver_order(mut inbox: Vec<Envelope>) -> Vec<Envelope> {
    inbox.sort_by_key(|e| (e.src, e.msg.kind()));
    inbox
}

/// Executes `program` on `g` until quiescence.
///
/// Rounds run as: deliver all envelopes sent last round, step every node in
/// ascending ID order, collect the new envelopes. The result (trace
/// included) is a pure function of `(g, program, cfg)`.
pub fn run<P: NodeProgram>(g: &Graph, program: &P, cfg: &SimConfig) -> Result<SimResult, SimError> {
    if cfg.max_rounds < 1 {
        return Err(SimError::BadMaxRounds);
    }
    if cfg.count_acks {
        return Err(SimError::AcksNotModeled);
    }

    let max_degree = g.max_degree();
    let ids: Vec<NodeId> = g.nodes().collect();
    let view_of = |id: NodeId| NodeView {
        id,
        neighbors: g.neighbors(id),
        max_degree,
    };

    let mut counts: BTreeMap<MessageKind, u64> =
        MessageKind::ALL.iter().map(|&k| (k, 0)).collect();
    let mut trace: Vec<TraceEntry> = Vec::new();
    let mut inflight: Vec<Envelope> = Vec::new();

    let record = |outbox: Vec<(NodeId, Message)>,
                      src: NodeId,
                      round: u64,
                      inflight: &mut Vec<Envelope>,
                      counts: &mut BTreeMap<MessageKind, u64>,
                      trace: &mut Vec<TraceEntry>|
     -> Result<(), SimError> {
        for (dst, msg) in outbox {
            if g.neighbors(src).binary_search(&dst).is_err() {
                return Err(SimError::IllegalSend { src, dst });
            }
            *counts.get_mut(&msg.kind()).unwrap() += 1;
            if cfg.trace_level == TraceLevel::Full {
                trace.push(TraceEntry {
                    round,
                    src,
                    dst,
                    kind: msg.kind(),
                    payload: msg.payload(),
                });
            }
            inflight.push(Envelope {
                src,
                dst,
                msg,
                send_round: round,
            });
        }
        Ok(())
    };

    // Round 0: initialize every node; initial sends carry send_round 0.
    let mut states: BTreeMap<NodeId, P::State> = BTreeMap::new();
    for &id in &ids {
        let (state, outbox) = program.init(&view_of(id));
        record(outbox, id, 0, &mut inflight, &mut counts, &mut trace)?;
        states.insert(id, state);
    }

    let finish = |states: &BTreeMap<NodeId, P::State>,
                  counts: BTreeMap<MessageKind, u64>,
                  trace: Vec<TraceEntry>,
                  rounds_executed: u64| {
        let cover: BTreeSet<NodeId> = states
            .iter()
            .filter(|(_, s)| program.in_cover(s))
            .map(|(&id, _)| id)
            .collect();
        let total_messages = counts.values().sum();
        let is_valid_cover =
            oracle::is_vertex_cover(g, &cover).expect("cover drawn from graph nodes");
        SimResult {
            cover,
            message_counts: counts,
            total_messages,
            rounds_executed,
            is_valid_cover,
            trace,
        }
    };

    let mut rounds_executed = 0;
    for round in 1..=cfg.max_rounds {
        let all_done = states.values().all(|s| program.terminated(s));
        if inflight.is_empty() && all_done {
            return Ok(finish(&states, counts, trace, rounds_executed));
        }
        let net_quiet = inflight.is_empty();

        let mut inboxes: BTreeMap<NodeId, Vec<Envelope>> = BTreeMap::new();
        for env in std::mem::take(&mut inflight) {
            debug_assert_eq!(env.send_round + 1, round);
            inboxes.entry(env.dst).or_default().push(env);
        }

        for &id in &ids {
            let inbox: Vec<(NodeId, Message)> = deliver_order(inboxes.remove(&id).unwrap_or_default())
                .into_iter()
                .map(|e| (e.src, e.msg))
                .collect();
            let state = states.get_mut(&id).unwrap();
            let outbox = program.step(state, &view_of(id), round, net_quiet, &inbox)?;
            record(outbox, id, round, &mut inflight, &mut counts, &mut trace)?;
        }
        rounds_executed = round;
    }

    let all_done = states.values().all(|s| program.terminated(s));
    if inflight.is_empty() && all_done {
        return Ok(finish(&states, counts, trace, rounds_executed));
    }
    Err(SimError::NonTermination {
        max_rounds: cfg.max_rounds,
        partial: Box::new(finish(&states, counts, trace, rounds_executed)),
    })
}
