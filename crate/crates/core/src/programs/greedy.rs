//! Degree-threshold greedy vertex cover.
//!
//! Every node knows the global maximum degree Δ. In round `R = 1, 2, ...` a
//! node still in the residual graph compares its residual degree against the
//! threshold `Δ / 2^R`; nodes above the threshold join the cover, notify
//! their active neighbors with a `Drop`, and stop. Receiving a `Drop`
//! removes the sender from the residual view. All arithmetic on thresholds
//! and round bounds is exact — no floating point anywhere in the decisions.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::graph::NodeId;
use crate::kernel::{Message, NodeProgram, NodeView, ProgramError, SimConfig};

/// Threshold discipline for the greedy program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GreedyMode {
    /// Strict `degree > Δ/2^R` test, rounds `R = 1..⌊log2 Δ⌋`. Can produce
    /// an invalid cover (e.g. two degree-1 nodes sharing an edge never pass
    /// a strict test), which is reported, not repaired.
    #[default]
    Faithful,
    /// Non-strict `degree ≥ Δ/2^R` test over rounds `R = 1..⌈log2 Δ⌉+1`.
    /// The final threshold is at most 1/2, so for every uncovered edge both
    /// endpoints join; the cover is always valid.
    Safe,
}

/// The exact threshold `Δ / 2^round` for the greedy degree test.
///
/// `round` must be in `1..=63` and `delta >= 1`; both hold for every round
/// the program can reach on a representable graph.
pub fn greedy_threshold(delta: u64, round: u64) -> Ratio<u64> {
    assert!(round >= 1, "round counter starts at 1");
    assert!(round <= 63, "threshold round out of range");
    assert!(delta >= 1, "threshold is only consulted when edges exist");
    Ratio::new(delta, 1u64 << round)
}

fn floor_log2(x: u64) -> u64 {
    u64::from(x.ilog2())
}

fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        u64::from((x - 1).ilog2()) + 1
    }
}

#[derive(Debug, Clone)]
pub struct GreedyState {
    active: BTreeSet<NodeId>,
    round: u64,
    in_cover: bool,
    done: bool,
}

impl GreedyState {
    /// Residual degree: the number of neighbors still in the graph.
    pub fn my_degree(&self) -> u64 {
        self.active.len() as u64
    }
}

pub struct GreedyProgram {
    mode: GreedyMode,
}

impl GreedyProgram {
    pub fn new(mode: GreedyMode) -> Self {
        GreedyProgram { mode }
    }

    pub fn from_config(cfg: &SimConfig) -> Self {
        Self::new(cfg.greedy_mode)
    }

    /// True when the node should stop without testing: the round counter has
    /// moved past the last decision round for this mode.
    fn past_last_round(&self, round: u64, delta: u64) -> bool {
        match self.mode {
            // R > log2(Δ)  ⇔  2^R > Δ, exactly.
            GreedyMode::Faithful => delta == 0 || (round < 64 && (1u64 << round) > delta),
            GreedyMode::Safe => delta == 0 || round > ceil_log2(delta) + 1,
        }
    }

    fn passes_threshold(&self, degree: u64, delta: u64, round: u64) -> bool {
        let threshold = greedy_threshold(delta, round);
        let degree = Ratio::from_integer(degree);
        match self.mode {
            GreedyMode::Faithful => degree > threshold,
            GreedyMode::Safe => degree >= threshold,
        }
    }
}

impl NodeProgram for GreedyProgram {
    type State = GreedyState;

    fn init(&self, view: &NodeView<'_>) -> (GreedyState, Vec<(NodeId, Message)>) {
        let state = GreedyState {
            active: view.neighbors.iter().copied().collect(),
            round: 0,
            in_cover: false,
            done: false,
        };
        (state, vec![])
    }

    fn step(
        &self,
        state: &mut GreedyState,
        view: &NodeView<'_>,
        _round: u64,
        _net_quiet: bool,
        inbox: &[(NodeId, Message)],
    ) -> Result<Vec<(NodeId, Message)>, ProgramError> {
        for &(src, msg) in inbox {
            if msg == Message::Drop {
                state.active.remove(&src);
            }
        }
        if state.done {
            return Ok(vec![]);
        }

        state.round += 1;
        let delta = view.max_degree;
        if self.past_last_round(state.round, delta) {
            state.done = true;
            return Ok(vec![]);
        }
        if self.passes_threshold(state.my_degree(), delta, state.round) {
            state.in_cover = true;
            state.done = true;
            let outbox = state
                .active
                .iter()
                .map(|&n| (n, Message::Drop))
                .collect();
            state.active.clear();
            return Ok(outbox);
        }
        Ok(vec![])
    }

    fn terminated(&self, state: &GreedyState) -> bool {
        state.done
    }

    fn in_cover(&self, state: &GreedyState) -> bool {
        state.in_cover
    }
}

/// Largest round in which any node may still run the threshold test.
pub fn last_decision_round(mode: GreedyMode, delta: u64) -> u64 {
    if delta == 0 {
        return 0;
    }
    match mode {
        GreedyMode::Faithful => floor_log2(delta),
        GreedyMode::Safe => ceil_log2(delta) + 1,
    }
}
