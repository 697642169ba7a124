//! Vertex cover from a BFS tree rooted at a sink node.
//!
//! Three phases, separated by network quiescence (the stand-in for the
//! "long enough for all messaging" timers):
//!
//! 1. **Flooding** — the sink sends `Infrastructure(0)` to its neighbors;
//!    a node that learns a strictly better level adopts it, records the
//!    sender as its parent and forwards `Infrastructure(level)` to everyone
//!    but the sender.
//! 2. **Advertising** — once no infrastructure messages are in flight,
//!    every node sends `Level(my_level)` to all of its neighbors.
//! 3. **Deciding** — with all neighbor levels known, even-level nodes join
//!    the cover; an odd-level node joins exactly when some odd-level
//!    neighbor has a lower ID.
//!
//! Every even–even and even–odd edge is covered by the even rule and every
//! odd–odd edge by the higher-ID rule, so the cover is valid on any
//! connected graph.

use std::collections::BTreeMap;

use crate::graph::{Graph, NodeId};
use crate::kernel::{Message, NodeProgram, NodeView, ProgramError, SimConfig};

/// Cover membership rule applied once levels are known: even levels are in;
/// odd levels are in exactly when an odd-level neighbor with a lower ID
/// exists.
pub fn bfs_cover_decision(
    my_level: u64,
    my_id: NodeId,
    neighbor_levels: &BTreeMap<NodeId, u64>,
) -> bool {
    if my_level % 2 == 0 {
        return true;
    }
    neighbor_levels
        .iter()
        .any(|(&id, &level)| level % 2 == 1 && id < my_id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfsPhase {
    Flooding,
    Advertising,
    Deciding,
    Done,
}

#[derive(Debug, Clone)]
pub struct BfsState {
    my_level: Option<u64>,
    my_parent: Option<NodeId>,
    neighbor_levels: BTreeMap<NodeId, u64>,
    phase: BfsPhase,
    in_cover: bool,
}

impl BfsState {
    pub fn my_level(&self) -> Option<u64> {
        self.my_level
    }

    pub fn my_parent(&self) -> Option<NodeId> {
        self.my_parent
    }
}

pub struct BfsProgram {
    sink: NodeId,
}

impl BfsProgram {
    /// `sink` defaults to the minimum node ID when not given.
    pub fn new(g: &Graph, sink: Option<NodeId>) -> Result<Self, ProgramError> {
        let sink = sink.unwrap_or_else(|| g.min_node_id());
        if !g.contains(sink) {
            return Err(ProgramError::new(sink, "sink is not a node of the graph"));
        }
        Ok(BfsProgram { sink })
    }

    pub fn from_config(g: &Graph, cfg: &SimConfig) -> Result<Self, ProgramError> {
        Self::new(g, cfg.sink)
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }
}

impl NodeProgram for BfsProgram {
    type State = BfsState;

    fn init(&self, view: &NodeView<'_>) -> (BfsState, Vec<(NodeId, Message)>) {
        let is_sink = view.id == self.sink;
        let state = BfsState {
            my_level: is_sink.then_some(0),
            my_parent: None,
            neighbor_levels: BTreeMap::new(),
            phase: BfsPhase::Flooding,
            in_cover: false,
        };
        let outbox = if is_sink {
            view.neighbors
                .iter()
                .map(|&n| (n, Message::Infrastructure(0)))
                .collect()
        } else {
            vec![]
        };
        (state, outbox)
    }

    fn step(
        &self,
        state: &mut BfsState,
        view: &NodeView<'_>,
        _round: u64,
        net_quiet: bool,
        inbox: &[(NodeId, Message)],
    ) -> Result<Vec<(NodeId, Message)>, ProgramError> {
        let mut outbox: Vec<(NodeId, Message)> = Vec::new();

        for &(src, msg) in inbox {
            match msg {
                Message::Infrastructure(level) => {
                    // Adopt on any strict improvement and re-flood.
                    if state.my_level.is_none_or(|mine| mine > level + 1) {
                        let mine = level + 1;
                        state.my_level = Some(mine);
                        state.my_parent = Some(src);
                        outbox.extend(
                            view.neighbors
                                .iter()
                                .filter(|&&n| n != src)
                                .map(|&n| (n, Message::Infrastructure(mine))),
                        );
                    }
                }
                Message::Level(level) => {
                    state.neighbor_levels.insert(src, level);
                }
                _ => {
                    return Err(ProgramError::new(
                        view.id,
                        format!("unexpected message {msg:?}"),
                    ))
                }
            }
        }

        if net_quiet {
            match state.phase {
                BfsPhase::Flooding => {
                    let Some(level) = state.my_level else {
                        return Err(ProgramError::new(
                            view.id,
                            format!("unreachable from sink {} (graph disconnected?)", self.sink),
                        ));
                    };
                    outbox.extend(view.neighbors.iter().map(|&n| (n, Message::Level(level))));
                    state.phase = BfsPhase::Advertising;
                }
                BfsPhase::Advertising => {
                    state.phase = BfsPhase::Deciding;
                    let level = state.my_level.expect("level set before advertising");
                    for &n in view.neighbors {
                        if !state.neighbor_levels.contains_key(&n) {
                            return Err(ProgramError::new(
                                view.id,
                                format!("no level heard from neighbor {n}"),
                            ));
                        }
                    }
                    state.in_cover = bfs_cover_decision(level, view.id, &state.neighbor_levels);
                    state.phase = BfsPhase::Done;
                }
                BfsPhase::Deciding | BfsPhase::Done => {}
            }
        }
        Ok(outbox)
    }

    fn terminated(&self, state: &BfsState) -> bool {
        state.phase == BfsPhase::Done
    }

    fn in_cover(&self, state: &BfsState) -> bool {
        state.in_cover
    }
}
