//! Desk-scale simulators for elementary cellular automata, Conway's Game of
//! Life, Langton's ant and enumerative Turing machines, together with the
//! checks that pin down their observable behavior.

pub mod analysis;
pub mod ant;
pub mod candidates;
pub mod eca;
pub mod eturing;
pub mod grid;
pub mod life;
