//! The three vertex cover node programs.
//!
//! Each program implements [`crate::kernel::NodeProgram`] and is built from
//! pure decision functions that are unit-testable without the kernel.

pub mod bfs;
pub mod greedy;
pub mod matching;
