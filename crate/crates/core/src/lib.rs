//! Shortest-path solvers on weighted graphs by two coupled methods:
//! stochastic/mean-field ant-colony optimization and deterministic
//! memristive-network dynamics under Kirchhoff's laws.
//!
//! The crate is `no_std` (alloc required). All IO, file formats, and the
//! experiment runner live in the companion `memaco-cli` crate.
//!
//! Module map:
//! - [`graph`]: problem instances plus the classical oracles that certify
//!   the two physics-inspired solvers.
//! - [`aco`]: discrete stochastic ant colonies on arbitrary graphs and the
//!   deterministic mean-field ODE form for parallel-path instances.
//! - [`memnet`]: memristive device models, circuit compilation, DC solves,
//!   coupled time stepping, and path readout from device states.
//! - [`trajectory`]: the time-indexed record both engines emit.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod aco;
pub mod graph;
mod linalg;
pub mod memnet;
pub mod trajectory;

pub use graph::{Graph, GraphError, Path};
pub use trajectory::Trajectory;
