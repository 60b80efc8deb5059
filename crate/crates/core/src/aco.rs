//! Ant-colony optimization in the two forms the solvers use: a discrete
//! stochastic colony on arbitrary graphs, and the deterministic mean-field
//! ODE limit for parallel-path instances, together with its closed-form
//! steady state.

use alloc::vec;
use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::graph::{Graph, Path};
use crate::trajectory::Trajectory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AcoError {
    #[error("invalid colony parameters: {0}")]
    InvalidParams(&'static str),
    #[error("every neighboring node is forbidden")]
    NoAllowableMove,
    #[error("non-finite transition weight (check exponents against zero pheromone)")]
    NonFiniteWeight,
    #[error("pheromone state became non-finite near t={t} (reduce the time step)")]
    StateBlowup { t: u64 },
    #[error("closed-form steady state requires both exponents equal to 1")]
    UnsupportedExponents,
    #[error("closed-form steady state requires a nonzero evaporation rate")]
    ZeroEvaporation,
}

/// Colony parameters shared by the discrete and mean-field forms.
///
/// `injection_rate` (ants per unit time) only enters the mean-field ODEs;
/// the discrete colony releases ants one at a time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcoParams {
    /// Pheromone exponent.
    pub alpha: f64,
    /// Visibility (inverse-length) exponent.
    pub beta: f64,
    /// Pheromone fraction lost per update, in [0, 1].
    pub evaporation: f64,
    /// Deposit constant: a completed path of length L receives deposit/L.
    pub deposit: f64,
    /// Ant injection rate of the mean-field form. Zero freezes the dynamics.
    pub injection_rate: f64,
    /// Initial pheromone level on every edge (> 0).
    pub initial_pheromone: f64,
}

impl AcoParams {
    pub fn validate(&self) -> Result<(), AcoError> {
        let all_finite = [
            self.alpha,
            self.beta,
            self.evaporation,
            self.deposit,
            self.injection_rate,
            self.initial_pheromone,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !all_finite {
            return Err(AcoError::InvalidParams("parameters must be finite"));
        }
        if !(0.0..=1.0).contains(&self.evaporation) {
            return Err(AcoError::InvalidParams("evaporation must lie in [0, 1]"));
        }
        if self.deposit < 0.0 {
            return Err(AcoError::InvalidParams("deposit must be nonnegative"));
        }
        if self.injection_rate < 0.0 {
            return Err(AcoError::InvalidParams("injection rate must be nonnegative"));
        }
        if self.initial_pheromone <= 0.0 {
            return Err(AcoError::InvalidParams("initial pheromone must be positive"));
        }
        Ok(())
    }
}

/// Per-edge pheromone levels, indexed by edge id. Levels stay nonnegative
/// under every update this module performs.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneState {
    levels: Vec<f64>,
}

impl PheromoneState {
    /// Uniform initial state with `level` on each of `edge_count` edges.
    pub fn uniform(edge_count: usize, level: f64) -> Self {
        assert!(level >= 0.0, "pheromone level must be nonnegative");
        PheromoneState {
            levels: vec![level; edge_count],
        }
    }

    pub fn from_levels(levels: Vec<f64>) -> Self {
        assert!(
            levels.iter().all(|&t| t >= 0.0 && t.is_finite()),
            "pheromone levels must be finite and nonnegative"
        );
        PheromoneState { levels }
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn level(&self, edge: usize) -> f64 {
        self.levels[edge]
    }
}

/// One ant's fate: it either completed a simple source-to-target path or
/// dead-ended and was discarded.
#[derive(Debug, Clone, PartialEq)]
pub enum AntOutcome {
    Completed(Path),
    Discarded,
}

impl AntOutcome {
    pub fn path(&self) -> Option<&Path> {
        match self {
            AntOutcome::Completed(p) => Some(p),
            AntOutcome::Discarded => None,
        }
    }
}

/// Run sizes and seeding for a stochastic colony.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColonyRunSpec {
    /// Ants released sequentially within one realization.
    pub ants: usize,
    /// Independent realizations averaged together.
    pub realizations: usize,
    /// Master seed; realization r draws from stream r of this seed.
    pub seed: u64,
    /// Ant-count stride between recorded samples.
    pub record_every: usize,
}

impl ColonyRunSpec {
    pub fn validate(&self) -> Result<(), AcoError> {
        if self.ants == 0 || self.realizations == 0 || self.record_every == 0 {
            return Err(AcoError::InvalidParams("counts must be at least 1"));
        }
        Ok(())
    }
}

fn pow_fast(base: f64, exponent: f64) -> f64 {
    if exponent == 1.0 {
        base
    } else if exponent == 0.0 {
        1.0
    } else {
        libm::pow(base, exponent)
    }
}

/// Move distribution for an ant at `node`: probabilities proportional to
/// tau^alpha * (1/length)^beta over incident edges whose far endpoint is
/// not forbidden, normalized to sum to one.
///
/// When every allowable edge carries zero weight (total pheromone loss) the
/// distribution degenerates to uniform over the allowable edges, so walks
/// can still proceed.
pub fn transition_probabilities(
    g: &Graph,
    pheromone: &PheromoneState,
    params: &AcoParams,
    node: usize,
    forbidden: &[bool],
) -> Result<Vec<(usize, f64)>, AcoError> {
    assert_eq!(forbidden.len(), g.node_count(), "one flag per node");
    assert_eq!(
        pheromone.levels.len(),
        g.edge_count(),
        "one pheromone level per edge"
    );
    params.validate()?;

    let mut weighted: Vec<(usize, f64)> = Vec::new();
    let mut total = 0.0;
    for &eid in g.incident_edges(node) {
        let edge = g.edge(eid);
        if forbidden[edge.other(node)] {
            continue;
        }
        let weight =
            pow_fast(pheromone.level(eid), params.alpha) * pow_fast(1.0 / edge.length, params.beta);
        if !weight.is_finite() {
            return Err(AcoError::NonFiniteWeight);
        }
        total += weight;
        weighted.push((eid, weight));
    }
    if weighted.is_empty() {
        return Err(AcoError::NoAllowableMove);
    }
    if total <= 0.0 {
        let uniform = 1.0 / weighted.len() as f64;
        for entry in &mut weighted {
            entry.1 = uniform;
        }
    } else {
        for entry in &mut weighted {
            entry.1 /= total;
        }
    }
    Ok(weighted)
}

/// One pheromone update: every edge loses the evaporation fraction, and the
/// edges of `completed_path` (when an ant got through) additionally gain
/// deposit / path-length. A discarded ant still triggers evaporation, so
/// the update count equals the ant count.
pub fn deposit_and_evaporate(
    pheromone: &mut PheromoneState,
    completed_path: Option<&Path>,
    params: &AcoParams,
) {
    let keep = 1.0 - params.evaporation;
    for level in &mut pheromone.levels {
        *level *= keep;
    }
    if let Some(path) = completed_path {
        let gain = params.deposit / path.total_length();
        for &eid in path.edge_ids() {
            pheromone.levels[eid] += gain;
        }
    }
    debug_assert!(pheromone.levels.iter().all(|&t| t >= 0.0));
}

fn unit_uniform(rng: &mut impl RngCore) -> f64 {
    // 53 random bits -> [0, 1); owned here so streams stay bit-stable.
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Releases one ant on a node-tabu random walk from the source. The walk
/// samples each move from [`transition_probabilities`] with every visited
/// node forbidden; reaching the target completes a path, while a dead end
/// discards the ant (no backtracking).
pub fn run_ant(
    g: &Graph,
    pheromone: &PheromoneState,
    params: &AcoParams,
    rng: &mut impl RngCore,
) -> AntOutcome {
    let mut visited = vec![false; g.node_count()];
    let mut node = g.source();
    visited[node] = true;
    let mut edges = Vec::new();
    while node != g.target() {
        let moves = match transition_probabilities(g, pheromone, params, node, &visited) {
            Ok(moves) => moves,
            Err(AcoError::NoAllowableMove) => return AntOutcome::Discarded,
            Err(err) => panic!("invalid colony inputs: {err}"),
        };
        let draw = unit_uniform(rng);
        let mut cumulative = 0.0;
        let mut chosen = None;
        let mut last_positive = None;
        for &(eid, p) in &moves {
            if p > 0.0 {
                last_positive = Some(eid);
            }
            cumulative += p;
            if draw < cumulative {
                chosen = Some(eid);
                break;
            }
        }
        let eid = chosen
            .or(last_positive)
            .expect("normalized distribution has a positive entry");
        node = g.edge(eid).other(node);
        visited[node] = true;
        edges.push(eid);
    }
    let path = Path::from_edges(g, edges).expect("tabu walk yields a simple path");
    AntOutcome::Completed(path)
}

fn realization_rng(seed: u64, realization: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(realization as u64);
    rng
}

/// Runs one realization: pheromone starts uniform at the configured initial
/// level, `spec.ants` ants are released sequentially with an update after
/// each, and the per-edge levels are recorded at ant counts 0, stride, 2x
/// stride, ..., plus the final ant when the stride does not divide it.
pub fn run_colony_realization(
    g: &Graph,
    params: &AcoParams,
    spec: &ColonyRunSpec,
    realization: usize,
) -> Result<Trajectory, AcoError> {
    params.validate()?;
    spec.validate()?;
    let mut rng = realization_rng(spec.seed, realization);
    let mut pheromone = PheromoneState::uniform(g.edge_count(), params.initial_pheromone);
    let mut trajectory = Trajectory::default();
    trajectory.push_states(0.0, pheromone.levels().to_vec());
    for ant in 1..=spec.ants {
        let outcome = run_ant(g, &pheromone, params, &mut rng);
        deposit_and_evaporate(&mut pheromone, outcome.path(), params);
        if ant % spec.record_every == 0 || ant == spec.ants {
            trajectory.push_states(ant as f64, pheromone.levels().to_vec());
        }
    }
    Ok(trajectory)
}

/// Ensemble mean of [`run_colony_realization`] over all realizations:
/// the pointwise average pheromone trajectory. A pure function of its
/// arguments; identical inputs reproduce identical bits.
pub fn run_colony(g: &Graph, params: &AcoParams, spec: &ColonyRunSpec) -> Result<Trajectory, AcoError> {
    params.validate()?;
    spec.validate()?;
    let mut mean: Option<Trajectory> = None;
    for r in 0..spec.realizations {
        let t = run_colony_realization(g, params, spec, r)?;
        match &mut mean {
            None => mean = Some(t),
            Some(acc) => {
                debug_assert_eq!(acc.index, t.index);
                for (sum_row, row) in acc.edge_states.iter_mut().zip(&t.edge_states) {
                    for (sum, value) in sum_row.iter_mut().zip(row) {
                        *sum += value;
                    }
                }
            }
        }
    }
    let mut mean = mean.expect("at least one realization");
    let scale = 1.0 / spec.realizations as f64;
    for row in &mut mean.edge_states {
        for value in row {
            *value *= scale;
        }
    }
    Ok(mean)
}

fn mean_field_rhs(tau: &[f64], lengths: &[f64], params: &AcoParams, out: &mut [f64]) {
    let mut total = 0.0;
    for (i, &t) in tau.iter().enumerate() {
        let level = if t > 0.0 { t } else { 0.0 };
        out[i] = pow_fast(level, params.alpha) * pow_fast(1.0 / lengths[i], params.beta);
        total += out[i];
    }
    let relax = params.injection_rate * params.evaporation;
    let feed = params.injection_rate * params.deposit;
    for i in 0..tau.len() {
        let share = if total > 0.0 {
            out[i] / total
        } else {
            1.0 / tau.len() as f64
        };
        out[i] = -relax * tau[i] + share * feed / lengths[i];
    }
}

/// Integrates the mean-field pheromone ODEs for a bundle of parallel paths
/// with the given lengths: d(tau_i)/dt = -rate*evap*tau_i + p_i*rate*Q/L_i,
/// with p_i the transition probabilities over the bundle. Classical
/// fixed-step fourth-order integration from the uniform initial level;
/// samples are recorded every `record_every` steps plus the final step.
pub fn integrate_parallel_paths(
    lengths: &[f64],
    params: &AcoParams,
    t_end: f64,
    dt: f64,
    record_every: usize,
) -> Result<Trajectory, AcoError> {
    params.validate()?;
    if lengths.is_empty() {
        return Err(AcoError::InvalidParams("at least one path length"));
    }
    if lengths.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
        return Err(AcoError::InvalidParams("path lengths must be positive"));
    }
    if !(dt > 0.0) || !dt.is_finite() || !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(AcoError::InvalidParams("need dt > 0 and t_end >= 0"));
    }
    if record_every == 0 {
        return Err(AcoError::InvalidParams("record stride must be at least 1"));
    }

    let k = lengths.len();
    let steps = libm::round(t_end / dt) as u64;
    let mut tau = vec![params.initial_pheromone; k];
    let mut trajectory = Trajectory::default();
    trajectory.push_states(0.0, tau.clone());

    let mut k1 = vec![0.0; k];
    let mut k2 = vec![0.0; k];
    let mut k3 = vec![0.0; k];
    let mut k4 = vec![0.0; k];
    let mut stage = vec![0.0; k];

    for step in 1..=steps {
        mean_field_rhs(&tau, lengths, params, &mut k1);
        for i in 0..k {
            stage[i] = tau[i] + 0.5 * dt * k1[i];
        }
        mean_field_rhs(&stage, lengths, params, &mut k2);
        for i in 0..k {
            stage[i] = tau[i] + 0.5 * dt * k2[i];
        }
        mean_field_rhs(&stage, lengths, params, &mut k3);
        for i in 0..k {
            stage[i] = tau[i] + dt * k3[i];
        }
        mean_field_rhs(&stage, lengths, params, &mut k4);
        for i in 0..k {
            tau[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            // Guard the power law against a tiny negative overshoot.
            if tau[i] < 0.0 {
                tau[i] = 0.0;
            }
        }
        if tau.iter().any(|t| !t.is_finite()) {
            return Err(AcoError::StateBlowup { t: step });
        }
        if step % record_every as u64 == 0 || step == steps {
            trajectory.push_states(step as f64 * dt, tau.clone());
        }
    }
    Ok(trajectory)
}

/// Closed-form steady state of the two-path mean-field dynamics with unit
/// exponents: the winning path holds deposit / (length * evaporation) and
/// the losing path decays to zero.
pub fn two_path_steady_state(params: &AcoParams, l1: f64) -> Result<(f64, f64), AcoError> {
    params.validate()?;
    if params.alpha != 1.0 || params.beta != 1.0 {
        return Err(AcoError::UnsupportedExponents);
    }
    if params.evaporation == 0.0 {
        return Err(AcoError::ZeroEvaporation);
    }
    if !(l1 > 0.0) {
        return Err(AcoError::InvalidParams("path length must be positive"));
    }
    Ok((params.deposit / (l1 * params.evaporation), 0.0))
}
