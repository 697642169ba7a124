//! Vertex cover via greedy mutual-request matching.
//!
//! Round zero: every node broadcasts its degree. Afterwards, whenever the
//! network falls quiet, every live node sends a `MatchRequest` to its
//! lowest-degree active neighbor (ties to the lowest ID). Two nodes that
//! request each other in the same round form a match: both zero their
//! degree, broadcast `Drop` to their active neighbors and stop. Matches made
//! in round 1 put only the endpoint with the higher original degree into the
//! cover (ties to the higher ID); matches in later rounds put both endpoints
//! in. A node whose active neighborhood empties out terminates without ever
//! joining.
//!
//! Drop notifications are sent only for a node's own departure; third-party
//! drops are never relayed, which keeps the drop traffic within O(|E|).
//! The resulting cover can be invalid (a round-1 loser may leave edges
//! behind); validity is measured and reported, never patched up.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::NodeId;
use crate::kernel::{Message, NodeProgram, NodeView, ProgramError};

/// A neighbor's degree as advertised in round zero (`original`) and as
/// currently believed (`current`, zeroed when the neighbor drops).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborDegree {
    pub original: u64,
    pub current: u64,
}

/// Picks the match-request target: the active neighbor with the least
/// current degree, ties broken toward the lowest ID. (Sorting by descending
/// degree with descending-ID ties and taking the last element — the sorted
/// adjacency list formulation — selects the same node.) Returns `None` when
/// no neighbor is active.
pub fn select_match_target(
    neighbor_degrees: &BTreeMap<NodeId, NeighborDegree>,
    actives: &BTreeSet<NodeId>,
) -> Option<NodeId> {
    actives
        .iter()
        .copied()
        .min_by_key(|id| {
            let deg = neighbor_degrees
                .get(id)
                .expect("active neighbor has a degree entry")
                .current;
            (deg, *id)
        })
}

#[derive(Debug, Clone)]
pub struct MatchingState {
    neighbor_degrees: BTreeMap<NodeId, NeighborDegree>,
    active: BTreeSet<NodeId>,
    my_original_degree: u64,
    round: u64,
    requested: Option<NodeId>,
    matched_with: Option<NodeId>,
    in_cover: bool,
    done: bool,
}

impl MatchingState {
    pub fn my_degree(&self) -> u64 {
        if self.matched_with.is_some() {
            0
        } else {
            self.active.len() as u64
        }
    }

    pub fn matched_with(&self) -> Option<NodeId> {
        self.matched_with
    }

    fn drop_sender(&mut self, src: NodeId) {
        self.active.remove(&src);
        self.neighbor_degrees.remove(&src);
    }
}

#[derive(Default)]
pub struct MatchingProgram;

impl MatchingProgram {
    pub fn new() -> Self {
        MatchingProgram
    }
}

impl NodeProgram for MatchingProgram {
    type State = MatchingState;

    fn init(&self, view: &NodeView<'_>) -> (MatchingState, Vec<(NodeId, Message)>) {
        let degree = view.degree();
        let state = MatchingState {
            neighbor_degrees: BTreeMap::new(),
            active: view.neighbors.iter().copied().collect(),
            my_original_degree: degree,
            round: 0,
            requested: None,
            matched_with: None,
            in_cover: false,
            done: degree == 0,
        };
        let outbox = view
            .neighbors
            .iter()
            .map(|&n| (n, Message::Degree(degree)))
            .collect();
        (state, outbox)
    }

    fn step(
        &self,
        state: &mut MatchingState,
        view: &NodeView<'_>,
        _round: u64,
        net_quiet: bool,
        inbox: &[(NodeId, Message)],
    ) -> Result<Vec<(NodeId, Message)>, ProgramError> {
        let mut outbox: Vec<(NodeId, Message)> = Vec::new();

        for &(src, msg) in inbox {
            match msg {
                Message::Drop => state.drop_sender(src),
                Message::Degree(0) => state.drop_sender(src),
                Message::Degree(d) => {
                    state
                        .neighbor_degrees
                        .entry(src)
                        .and_modify(|e| e.current = d)
                        .or_insert(NeighborDegree {
                            original: d,
                            current: d,
                        });
                }
                Message::MatchRequest => {
                    if state.done || state.requested != Some(src) {
                        continue; // not mutual; the sender will retry
                    }
                    let partner = state
                        .neighbor_degrees
                        .get(&src)
                        .copied()
                        .ok_or_else(|| {
                            ProgramError::new(view.id, format!("no degree entry for {src}"))
                        })?;
                    state.matched_with = Some(src);
                    state.in_cover = if state.round == 1 {
                        // Only the heavier endpoint joins; ties to higher ID.
                        state.my_original_degree > partner.original
                            || (state.my_original_degree == partner.original && view.id > src)
                    } else {
                        true
                    };
                    // Own degree hits zero: tell every still-active neighbor.
                    outbox.extend(state.active.iter().map(|&n| (n, Message::Drop)));
                    state.active.clear();
                    state.done = true;
                }
                _ => {
                    return Err(ProgramError::new(
                        view.id,
                        format!("unexpected message {msg:?}"),
                    ))
                }
            }
        }

        if state.done {
            return Ok(outbox);
        }
        if state.active.is_empty() {
            // Degree reached zero through neighbor drops; nothing left to
            // notify (anyone still tracking us has already dropped).
            state.done = true;
            return Ok(outbox);
        }
        if net_quiet {
            state.round += 1;
            let target = select_match_target(&state.neighbor_degrees, &state.active)
                .expect("active set is nonempty");
            state.requested = Some(target);
            outbox.push((target, Message::MatchRequest));
        }
        Ok(outbox)
    }

    fn terminated(&self, state: &MatchingState) -> bool {
        state.done
    }

    fn in_cover(&self, state: &MatchingState) -> bool {
        state.in_cover
    }
}
