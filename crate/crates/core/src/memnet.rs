//! Memristive-network engine: compiles a length-weighted graph into a
//! circuit of identical adaptive two-terminal devices, solves the DC
//! operating point under a constant current injected across the terminals,
//! and integrates the device-state dynamics that make the network relax
//! onto its shortest source-target path.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use libm::{fabs, round, sqrt};
use thiserror::Error;

use crate::graph::{greedy_walk_by_weight, Graph, Path};
use crate::linalg;
use crate::trajectory::Trajectory;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetError {
    #[error("invalid device parameters: {0}")]
    InvalidDevice(&'static str),
    #[error("injected current must be finite and nonnegative")]
    InvalidInjection,
    #[error("device state {x} outside [0, 1]")]
    StateOutOfRange { x: f64 },
    #[error("edge {edge} has non-integer length; chain compilation needs unit segments")]
    NonIntegerLengthInChainMode { edge: usize },
    #[error("node {0} is not connected to the terminals")]
    DisconnectedNode(String),
    #[error("conductance matrix is singular")]
    SingularSystem,
    #[error("device states became non-finite at step {step} (reduce the time step)")]
    StateBlowup { step: u64 },
    #[error("need dt > 0, t_end >= 0 and a positive record stride")]
    InvalidTimeGrid,
    #[error("closed form requires a nonzero relaxation rate")]
    ZeroRelaxation,
    #[error("closed form applies to threshold-free devices only")]
    UnsupportedThreshold,
    #[error("readout fraction must lie strictly between 0 and 1")]
    InvalidTheta,
    #[error("device states do not single out a source-target path")]
    NoPathExtractable,
}

/// Parameters shared by every device in a network. Conductance interpolates
/// between `sigma_off` (x = 0) and `sigma_on` (x = 1); the internal state
/// grows with the current through the device and decays on its own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceParams {
    /// Conductance at x = 1, in siemens.
    pub sigma_on: f64,
    /// Conductance at x = 0, in siemens. Must stay below `sigma_on`.
    pub sigma_off: f64,
    /// State growth per unit current, in 1/(s A).
    pub drive: f64,
    /// Spontaneous state decay rate, in 1/s.
    pub relaxation: f64,
    /// Current magnitude below which the state only decays, in amperes.
    /// Zero gives the threshold-free device.
    pub threshold: f64,
}

impl DeviceParams {
    pub fn validate(&self) -> Result<(), NetError> {
        let finite = [
            self.sigma_on,
            self.sigma_off,
            self.drive,
            self.relaxation,
            self.threshold,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(NetError::InvalidDevice("parameters must be finite"));
        }
        if !(self.sigma_off > 0.0) {
            return Err(NetError::InvalidDevice("sigma_off must be positive"));
        }
        if !(self.sigma_on > self.sigma_off) {
            return Err(NetError::InvalidDevice("sigma_on must exceed sigma_off"));
        }
        if !(self.drive > 0.0) {
            return Err(NetError::InvalidDevice("drive must be positive"));
        }
        if self.relaxation < 0.0 {
            return Err(NetError::InvalidDevice("relaxation must be nonnegative"));
        }
        if self.threshold < 0.0 {
            return Err(NetError::InvalidDevice("threshold must be nonnegative"));
        }
        Ok(())
    }

    /// Ratio of on to off conductance; the span of the normalized
    /// conductance sigma(x) / sigma_off is [1, ratio].
    pub fn conductance_ratio(&self) -> f64 {
        self.sigma_on / self.sigma_off
    }
}

fn conductance_unchecked(p: &DeviceParams, x: f64) -> f64 {
    p.sigma_on * x + p.sigma_off * (1.0 - x)
}

/// Device conductance at state `x`, linear between the off and on values.
pub fn conductance(p: &DeviceParams, x: f64) -> Result<f64, NetError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(NetError::StateOutOfRange { x });
    }
    Ok(conductance_unchecked(p, x))
}

/// Rate of change of the device state at state `x` carrying `current`.
/// Sub-threshold currents leave only the decay term; above threshold the
/// state is driven by the excess magnitude, signed with the current. A zero
/// threshold reduces this to plain drive minus decay.
pub fn state_derivative(p: &DeviceParams, x: f64, current: f64) -> f64 {
    let magnitude = fabs(current);
    if magnitude < p.threshold {
        -p.relaxation * x
    } else {
        let sign = if current > 0.0 {
            1.0
        } else if current < 0.0 {
            -1.0
        } else {
            0.0
        };
        sign * p.drive * (magnitude - p.threshold) - p.relaxation * x
    }
}

/// How a length-n edge becomes circuitry: `Chain` expands it into n unit
/// devices in series (integer lengths only), `Lumped` models the whole edge
/// as one device scaled down by n, which admits any positive real length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompileMode {
    Chain,
    Lumped,
}

/// One circuit branch holding a single device. Current is positive from
/// `from` to `to`; `series` is the length the branch stands for, so its
/// conductance is sigma(x) / series. `edge` points back at the graph edge
/// the branch belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub from: usize,
    pub to: usize,
    pub series: f64,
    pub edge: usize,
}

/// A compiled circuit: the original graph, its branches, and the constant
/// current `injection` fed into the source terminal and drawn from the
/// target terminal (the voltage reference).
#[derive(Debug, Clone)]
pub struct Network {
    graph: Graph,
    device: DeviceParams,
    injection: f64,
    node_count: usize,
    branches: Vec<Branch>,
    edge_branches: Vec<Vec<usize>>,
    // Node -> row in the reduced conductance system; the grounded target
    // terminal has no row.
    sys_index: Vec<Option<usize>>,
}

impl Network {
    /// Compiles `g` into a circuit. Branches are oriented so positive
    /// current flows away from the source side: the endpoint closer to the
    /// source (by hop count, then farther from the target, then smaller
    /// node index) becomes `from`. Every node must be reachable from the
    /// terminals, otherwise the DC system would be singular.
    pub fn compile(
        g: &Graph,
        device: DeviceParams,
        mode: CompileMode,
        injection: f64,
    ) -> Result<Network, NetError> {
        device.validate()?;
        if !injection.is_finite() || injection < 0.0 {
            return Err(NetError::InvalidInjection);
        }
        let hops_a = g.hops_from(g.source());
        let hops_b = g.hops_from(g.target());
        for node in 0..g.node_count() {
            if hops_a[node] == usize::MAX {
                return Err(NetError::DisconnectedNode(String::from(g.node_name(node))));
            }
        }

        let source_side = |u: usize, v: usize| -> (usize, usize) {
            let key = |n: usize| (hops_a[n], usize::MAX - hops_b[n], n);
            if key(u) <= key(v) {
                (u, v)
            } else {
                (v, u)
            }
        };

        let mut node_count = g.node_count();
        let mut branches = Vec::new();
        let mut edge_branches = vec![Vec::new(); g.edge_count()];
        for (eid, edge) in g.edges().iter().enumerate() {
            let (a_side, b_side) = source_side(edge.u, edge.v);
            match mode {
                CompileMode::Lumped => {
                    edge_branches[eid].push(branches.len());
                    branches.push(Branch {
                        from: a_side,
                        to: b_side,
                        series: edge.length,
                        edge: eid,
                    });
                }
                CompileMode::Chain => {
                    let units = round(edge.length);
                    if fabs(edge.length - units) > 1e-9 || units < 1.0 {
                        return Err(NetError::NonIntegerLengthInChainMode { edge: eid });
                    }
                    let units = units as usize;
                    let mut prev = a_side;
                    for k in 1..=units {
                        let next = if k == units {
                            b_side
                        } else {
                            node_count += 1;
                            node_count - 1
                        };
                        edge_branches[eid].push(branches.len());
                        branches.push(Branch {
                            from: prev,
                            to: next,
                            series: 1.0,
                            edge: eid,
                        });
                        prev = next;
                    }
                }
            }
        }

        let mut sys_index = vec![None; node_count];
        let mut next_row = 0;
        for node in 0..node_count {
            if node != g.target() {
                sys_index[node] = Some(next_row);
                next_row += 1;
            }
        }

        Ok(Network {
            graph: g.clone(),
            device,
            injection,
            node_count,
            branches,
            edge_branches,
            sys_index,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn device(&self) -> &DeviceParams {
        &self.device
    }

    pub fn injection(&self) -> f64 {
        self.injection
    }

    /// Node count including the internal nodes chain compilation adds.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    /// Branch indices belonging to each graph edge, in edge-id order.
    pub fn edge_branches(&self, edge: usize) -> &[usize] {
        &self.edge_branches[edge]
    }

    /// Fresh device states: everything off.
    pub fn initial_states(&self) -> Vec<f64> {
        vec![0.0; self.branches.len()]
    }

    /// Per-edge state: the mean over the edge's branches. Chain segments of
    /// one edge see the same current and stay equal, so the mean is the
    /// common value there.
    pub fn edge_states(&self, branch_states: &[f64]) -> Vec<f64> {
        assert_eq!(branch_states.len(), self.branches.len());
        self.edge_branches
            .iter()
            .map(|members| {
                members.iter().map(|&b| branch_states[b]).sum::<f64>() / members.len() as f64
            })
            .collect()
    }

    /// Per-edge device conductance over the off value, from per-edge
    /// states as a trajectory records them. Spans [1, on/off ratio].
    pub fn normalized_edge_conductances(
        &self,
        edge_states: &[f64],
    ) -> Result<Vec<f64>, NetError> {
        assert_eq!(edge_states.len(), self.graph.edge_count());
        edge_states
            .iter()
            .map(|&x| Ok(conductance(&self.device, x)? / self.device.sigma_off))
            .collect()
    }
}

/// DC solution at one instant: voltages per node (target terminal at zero),
/// and current plus conductance per branch.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatingPoint {
    pub node_voltages: Vec<f64>,
    pub branch_currents: Vec<f64>,
    pub branch_conductances: Vec<f64>,
}

impl OperatingPoint {
    /// Net current leaving each node minus the expected terminal exchange;
    /// every entry of a valid solution is numerically zero.
    pub fn kcl_residuals(&self, net: &Network) -> Vec<f64> {
        let mut residual = vec![0.0; net.node_count()];
        for (b, branch) in net.branches().iter().enumerate() {
            residual[branch.from] += self.branch_currents[b];
            residual[branch.to] -= self.branch_currents[b];
        }
        residual[net.graph().source()] -= net.injection();
        residual[net.graph().target()] += net.injection();
        residual
    }

    /// Total power burned in the branches, sum of I^2 / g. Matches the
    /// injected power I0 * V(source) for a valid solution.
    pub fn dissipated_power(&self) -> f64 {
        self.branch_currents
            .iter()
            .zip(&self.branch_conductances)
            .map(|(i, g)| i * i / g)
            .sum()
    }

    /// Voltage across the terminals (the target is the zero reference).
    pub fn terminal_voltage(&self, net: &Network) -> f64 {
        self.node_voltages[net.graph().source()]
    }
}

/// Scratch buffers for repeated DC solves over one network.
struct DcScratch {
    matrix: Vec<f64>,
    rhs: Vec<f64>,
    voltages: Vec<f64>,
    currents: Vec<f64>,
    conductances: Vec<f64>,
}

impl DcScratch {
    fn new(net: &Network) -> Self {
        let n = net.node_count() - 1;
        DcScratch {
            matrix: vec![0.0; n * n],
            rhs: vec![0.0; n],
            voltages: vec![0.0; net.node_count()],
            currents: vec![0.0; net.branch_count()],
            conductances: vec![0.0; net.branch_count()],
        }
    }

    /// Solves the reduced nodal system at the given (already clamped)
    /// states, leaving voltages, currents and conductances in the buffers.
    fn solve(&mut self, net: &Network, states: &[f64]) -> Result<(), NetError> {
        let n = net.node_count() - 1;
        self.matrix.fill(0.0);
        self.rhs.fill(0.0);
        for (b, branch) in net.branches().iter().enumerate() {
            let g = conductance_unchecked(&net.device, states[b]) / branch.series;
            self.conductances[b] = g;
            let fi = net.sys_index[branch.from];
            let ti = net.sys_index[branch.to];
            if let Some(i) = fi {
                self.matrix[i * n + i] += g;
            }
            if let Some(j) = ti {
                self.matrix[j * n + j] += g;
            }
            if let (Some(i), Some(j)) = (fi, ti) {
                self.matrix[i * n + j] -= g;
                self.matrix[j * n + i] -= g;
            }
        }
        let source_row = net.sys_index[net.graph().source()].expect("source is never the ground");
        self.rhs[source_row] += net.injection();
        linalg::solve_in_place(&mut self.matrix, &mut self.rhs, n)
            .map_err(|_| NetError::SingularSystem)?;
        for node in 0..net.node_count() {
            self.voltages[node] = match net.sys_index[node] {
                Some(row) => self.rhs[row],
                None => 0.0,
            };
        }
        for (b, branch) in net.branches().iter().enumerate() {
            self.currents[b] =
                self.conductances[b] * (self.voltages[branch.from] - self.voltages[branch.to]);
        }
        Ok(())
    }
}

/// Operating point of `net` with the devices frozen at `states`.
pub fn solve_dc(net: &Network, states: &[f64]) -> Result<OperatingPoint, NetError> {
    assert_eq!(states.len(), net.branch_count(), "one state per branch");
    for &x in states {
        if !(0.0..=1.0).contains(&x) {
            return Err(NetError::StateOutOfRange { x });
        }
    }
    let mut scratch = DcScratch::new(net);
    scratch.solve(net, states)?;
    let op = OperatingPoint {
        node_voltages: scratch.voltages,
        branch_currents: scratch.currents,
        branch_conductances: scratch.conductances,
    };
    debug_assert!(
        op.kcl_residuals(net)
            .iter()
            .all(|r| fabs(*r) <= 1e-10 * (net.injection() + 1e-300)),
        "current conservation violated"
    );
    Ok(op)
}

/// Fixed-step fourth-order stepper. Each stage re-solves the DC system at
/// the stage states, so the currents feeding the state derivatives always
/// satisfy the circuit laws.
struct Stepper<'n> {
    net: &'n Network,
    scratch: DcScratch,
    k: [Vec<f64>; 4],
    stage: Vec<f64>,
}

impl<'n> Stepper<'n> {
    fn new(net: &'n Network) -> Self {
        let m = net.branch_count();
        Stepper {
            net,
            scratch: DcScratch::new(net),
            k: [vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m]],
            stage: vec![0.0; m],
        }
    }

    /// Derivatives at (possibly off-grid) stage states. States are clamped
    /// to [0, 1] for evaluation, and the derivative is zeroed where it
    /// points out of the box so saturated devices stay put.
    fn derivatives(&mut self, states: &[f64], slot: usize) -> Result<(), NetError> {
        for (dst, &x) in self.stage.iter_mut().zip(states) {
            *dst = x.clamp(0.0, 1.0);
        }
        // Borrow dance: solve reads self.stage via a temporary move.
        let stage = core::mem::take(&mut self.stage);
        let solved = self.scratch.solve(self.net, &stage);
        self.stage = stage;
        solved?;
        for b in 0..self.net.branch_count() {
            let x = self.stage[b];
            let mut d = state_derivative(&self.net.device, x, self.scratch.currents[b]);
            if (x <= 0.0 && d < 0.0) || (x >= 1.0 && d > 0.0) {
                d = 0.0;
            }
            self.k[slot][b] = d;
        }
        Ok(())
    }

    /// Advances `states` by one step of size `dt` in place.
    fn step(&mut self, states: &mut [f64], dt: f64, step_index: u64) -> Result<(), NetError> {
        let m = states.len();
        self.derivatives(states, 0)?;
        let mut probe = vec![0.0; m];
        for b in 0..m {
            probe[b] = states[b] + 0.5 * dt * self.k[0][b];
        }
        self.derivatives(&probe, 1)?;
        for b in 0..m {
            probe[b] = states[b] + 0.5 * dt * self.k[1][b];
        }
        self.derivatives(&probe, 2)?;
        for b in 0..m {
            probe[b] = states[b] + dt * self.k[2][b];
        }
        self.derivatives(&probe, 3)?;
        for b in 0..m {
            let next = states[b]
                + dt / 6.0 * (self.k[0][b] + 2.0 * self.k[1][b] + 2.0 * self.k[2][b] + self.k[3][b]);
            if !next.is_finite() {
                return Err(NetError::StateBlowup { step: step_index });
            }
            states[b] = next.clamp(0.0, 1.0);
        }
        Ok(())
    }
}

/// One integration step of size `dt` from `states`; the pure single-shot
/// form of the stepper [`simulate`] runs in a loop.
pub fn step(net: &Network, states: &[f64], dt: f64) -> Result<Vec<f64>, NetError> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(NetError::InvalidTimeGrid);
    }
    for &x in states {
        if !(0.0..=1.0).contains(&x) {
            return Err(NetError::StateOutOfRange { x });
        }
    }
    let mut next = states.to_vec();
    Stepper::new(net).step(&mut next, dt, 1)?;
    Ok(next)
}

fn record(net: &Network, scratch: &mut DcScratch, t: f64, states: &[f64], out: &mut Trajectory) -> Result<(), NetError> {
    scratch.solve(net, states)?;
    out.push_circuit_sample(
        t,
        net.edge_states(states),
        scratch.currents.clone(),
        scratch.conductances.clone(),
    );
    Ok(())
}

/// Integrates the network from the all-off state over [0, t_end] with a
/// fixed step, recording step 0, every `record_every`-th step, and the
/// final step.
pub fn simulate(
    net: &Network,
    t_end: f64,
    dt: f64,
    record_every: usize,
) -> Result<Trajectory, NetError> {
    if !(dt > 0.0) || !dt.is_finite() || !(t_end >= 0.0) || !t_end.is_finite() || record_every == 0
    {
        return Err(NetError::InvalidTimeGrid);
    }
    let steps = round(t_end / dt) as u64;
    let mut states = net.initial_states();
    let mut stepper = Stepper::new(net);
    let mut trajectory = Trajectory::default();
    record(net, &mut stepper.scratch, 0.0, &states, &mut trajectory)?;
    for i in 1..=steps {
        stepper.step(&mut states, dt, i)?;
        if i % record_every as u64 == 0 || i == steps {
            record(net, &mut stepper.scratch, i as f64 * dt, &states, &mut trajectory)?;
        }
    }
    Ok(trajectory)
}

/// Like [`simulate`] but stops once the motion stalls: when the largest
/// per-step state change divided by dt drops below `derivative_tol`. Runs
/// at most until `max_t`. The flag reports whether the tolerance was met.
pub fn simulate_until_steady(
    net: &Network,
    dt: f64,
    record_every: usize,
    derivative_tol: f64,
    max_t: f64,
) -> Result<(Trajectory, bool), NetError> {
    if !(dt > 0.0) || !dt.is_finite() || !(max_t >= 0.0) || record_every == 0 || !(derivative_tol > 0.0)
    {
        return Err(NetError::InvalidTimeGrid);
    }
    let steps = round(max_t / dt) as u64;
    let mut states = net.initial_states();
    let mut previous = states.clone();
    let mut stepper = Stepper::new(net);
    let mut trajectory = Trajectory::default();
    record(net, &mut stepper.scratch, 0.0, &states, &mut trajectory)?;
    let mut steady = false;
    for i in 1..=steps {
        previous.copy_from_slice(&states);
        stepper.step(&mut states, dt, i)?;
        let mut largest = 0.0f64;
        for (now, before) in states.iter().zip(&previous) {
            largest = largest.max(fabs(now - before));
        }
        steady = largest / dt < derivative_tol;
        if steady || i % record_every as u64 == 0 || i == steps {
            record(net, &mut stepper.scratch, i as f64 * dt, &states, &mut trajectory)?;
        }
        if steady {
            break;
        }
    }
    Ok((trajectory, steady))
}

/// Steady state of the two-path unit-length network with threshold-free
/// devices: normalized conductances and device states for the short
/// (winning) and long (losing) path, ordered short first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPathSteadyState {
    /// sigma / sigma_off for each path's devices.
    pub normalized: [f64; 2],
    /// Device states recovered from the normalized conductances.
    pub states: [f64; 2],
    /// The dimensionless group drive * injection * (ratio - 1) that fixes
    /// the operating point together with the relaxation rate.
    pub drive_constant: f64,
}

/// Closed-form steady state of the network built from [`two_path_graph`]
/// with unit and double length, one unit device per unit length (equal
/// chain segments collapse onto one equation per path).
///
/// [`two_path_graph`]: crate::graph::two_path_graph
pub fn two_path_steady_state(
    device: &DeviceParams,
    injection: f64,
) -> Result<TwoPathSteadyState, NetError> {
    device.validate()?;
    if !injection.is_finite() || injection < 0.0 {
        return Err(NetError::InvalidInjection);
    }
    if device.relaxation == 0.0 {
        return Err(NetError::ZeroRelaxation);
    }
    if device.threshold != 0.0 {
        return Err(NetError::UnsupportedThreshold);
    }
    let ratio = device.conductance_ratio();
    let c = device.drive * injection * (ratio - 1.0);
    let g = device.relaxation;
    let disc = sqrt(c * c + 2.0 * c * g + 9.0 * g * g);
    let short = (c - g + disc) / (2.0 * g);
    let long = (c + 5.0 * g - disc) / (2.0 * g);
    let to_state = |sigma_norm: f64| (sigma_norm - 1.0) / (ratio - 1.0);
    Ok(TwoPathSteadyState {
        normalized: [short, long],
        states: [to_state(short), to_state(long)],
        drive_constant: c,
    })
}

/// Simple source-target paths using only `allowed` edges, collected up to
/// `cap` of them.
fn masked_paths(g: &Graph, allowed: &[bool], cap: usize) -> Vec<Vec<usize>> {
    fn dfs(
        g: &Graph,
        allowed: &[bool],
        cap: usize,
        node: usize,
        visited: &mut Vec<bool>,
        walk: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if found.len() >= cap {
            return;
        }
        if node == g.target() {
            found.push(walk.clone());
            return;
        }
        for &eid in g.incident_edges(node) {
            if !allowed[eid] {
                continue;
            }
            let next = g.edge(eid).other(node);
            if visited[next] {
                continue;
            }
            visited[next] = true;
            walk.push(eid);
            dfs(g, allowed, cap, next, visited, walk, found);
            walk.pop();
            visited[next] = false;
        }
    }
    let mut visited = vec![false; g.node_count()];
    visited[g.source()] = true;
    let mut walk = Vec::new();
    let mut found = Vec::new();
    dfs(g, allowed, cap, g.source(), &mut visited, &mut walk, &mut found);
    found
}

/// Extracts the answer path from final per-edge states: keep the edges with
/// state at least `theta` times the maximum, and if they span exactly one
/// source-target path, that is the answer. Otherwise fall back to a greedy
/// state-descent walk; failure of both means the run did not settle onto a
/// single path.
pub fn read_solution(net: &Network, edge_states: &[f64], theta: f64) -> Result<Path, NetError> {
    let g = net.graph();
    assert_eq!(edge_states.len(), g.edge_count(), "one state per edge");
    if !(theta > 0.0 && theta < 1.0) {
        return Err(NetError::InvalidTheta);
    }
    let mut max_state = 0.0f64;
    for &x in edge_states {
        max_state = max_state.max(x);
    }
    let allowed: Vec<bool> = edge_states.iter().map(|&x| x >= theta * max_state).collect();
    let mut candidates = masked_paths(g, &allowed, 2);
    if candidates.len() == 1 {
        let edges = candidates.pop().expect("checked length");
        return Ok(Path::from_edges(g, edges).expect("masked walk is simple"));
    }
    greedy_walk_by_weight(g, edge_states).ok_or(NetError::NoPathExtractable)
}

/// The seven-node benchmark instance: a two-hop left arm against two
/// three-hop right arms between the terminals, all unit-length edges. At
/// the fresh state the right side carries more total current (4/7 of the
/// injection) than the left arm (3/7), yet the left arm's per-device
/// current is the largest, so the dynamics still pick the shortest path.
pub fn preset_multipath_graph() -> Graph {
    Graph::build(
        &[
            ("A", "C", 1.0),
            ("C", "B", 1.0),
            ("A", "D", 1.0),
            ("D", "E", 1.0),
            ("E", "B", 1.0),
            ("A", "F", 1.0),
            ("F", "G", 1.0),
            ("G", "B", 1.0),
        ],
        "A",
        "B",
    )
    .expect("static edge list is well formed")
}
