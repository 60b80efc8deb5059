//! Time-indexed record of per-edge state produced by both engines.

use alloc::vec::Vec;

/// Sampled evolution of a run: one row per sample, the index column holding
/// either time in seconds (ODE and circuit engines) or the ant count
/// (discrete colonies). `edge_states` carries pheromone levels or device
/// states in edge-id order; the branch columns are filled by the circuit
/// engine only and stay empty for ACO runs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub index: Vec<f64>,
    pub edge_states: Vec<Vec<f64>>,
    pub branch_currents: Vec<Vec<f64>>,
    pub branch_conductances: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn sample_count(&self) -> usize {
        self.index.len()
    }

    /// Per-edge state at the last recorded sample.
    pub fn final_edge_states(&self) -> &[f64] {
        self.edge_states
            .last()
            .expect("trajectory holds at least the initial sample")
    }

    pub fn push_states(&mut self, index: f64, states: Vec<f64>) {
        self.index.push(index);
        self.edge_states.push(states);
    }

    /// Sample with the circuit-only columns filled in.
    pub fn push_circuit_sample(
        &mut self,
        index: f64,
        states: Vec<f64>,
        currents: Vec<f64>,
        conductances: Vec<f64>,
    ) {
        self.index.push(index);
        self.edge_states.push(states);
        self.branch_currents.push(currents);
        self.branch_conductances.push(conductances);
    }
}
