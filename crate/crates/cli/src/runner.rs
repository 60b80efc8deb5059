//! Executes a validated experiment: runs the selected engine(s), extracts
//! each engine's answer path, compares against the shortest-path oracle,
//! and writes the trajectory CSVs plus `summary.json` and the resolved
//! config echo.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use serde_json::json;
use thiserror::Error;

use memaco_core::aco::{self, AcoError};
use memaco_core::graph::{greedy_walk_by_weight, shortest_path_oracle, Graph};
use memaco_core::memnet::{self, NetError, Network};
use memaco_core::Trajectory;

use crate::config::{EngineChoice, ResolvedConfig};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("io failure: {0}")]
    Io(#[from] io::Error),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("readout failure: {0}")]
    Readout(String),
}

impl RunError {
    /// Process exit code for this failure under the documented contract.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Io(_) => 1,
            RunError::Numerical(_) => 4,
            RunError::Readout(_) => 5,
        }
    }
}

fn aco_failure(e: AcoError) -> RunError {
    RunError::Numerical(e.to_string())
}

fn net_failure(e: NetError) -> RunError {
    match e {
        NetError::NoPathExtractable => RunError::Readout(e.to_string()),
        other => RunError::Numerical(other.to_string()),
    }
}

enum EngineKind {
    Aco,
    Circuit,
}

/// One engine's completed run.
pub struct EngineRun {
    pub key: String,
    pub path: Vec<usize>,
    pub agrees: bool,
    trajectory: Trajectory,
    kind: EngineKind,
}

pub struct RunOutcome {
    pub all_agree: bool,
    pub oracle_path: Vec<usize>,
    pub engine_reports: Vec<(String, Vec<usize>, bool)>,
    pub files: Vec<PathBuf>,
}

/// Runs the experiment and writes all artifacts into `out_dir`. Engines
/// execute before any file is touched, so a failed run leaves nothing
/// behind.
pub fn run_experiment(cfg: &ResolvedConfig, out_dir: &FsPath) -> Result<RunOutcome, RunError> {
    let start = Instant::now();
    let g = cfg.graph_instance();
    let oracle = shortest_path_oracle(&g);
    let oracle_edges = oracle.edge_ids().to_vec();

    let mut runs: Vec<EngineRun> = Vec::new();
    match cfg.engine {
        EngineChoice::AcoDiscrete => runs.push(run_discrete(cfg, &g, &oracle_edges)?),
        EngineChoice::AcoContinuous => runs.push(run_continuous(cfg, &g, &oracle_edges)?),
        EngineChoice::Memnet => runs.extend(run_circuits(cfg, &g, &oracle_edges)?),
        EngineChoice::Compare => {
            // The mean-field form is exact on parallel bundles; anything
            // else gets the stochastic colony.
            if g.all_edges_connect_terminals() {
                runs.push(run_continuous(cfg, &g, &oracle_edges)?);
            } else {
                runs.push(run_discrete(cfg, &g, &oracle_edges)?);
            }
            runs.extend(run_circuits(cfg, &g, &oracle_edges)?);
        }
    }

    fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();

    let config_path = out_dir.join("config_resolved.json");
    let mut config_json =
        serde_json::to_string_pretty(cfg).expect("config serialization cannot fail");
    config_json.push('\n');
    fs::write(&config_path, config_json)?;
    files.push(config_path);

    for run in &runs {
        let csv_path = out_dir.join(format!("trajectory_{}.csv", run.key));
        match run.kind {
            EngineKind::Aco => write_aco_csv(&csv_path, &run.trajectory)?,
            EngineKind::Circuit => write_circuit_csv(&csv_path, &run.trajectory)?,
        }
        files.push(csv_path);
    }

    let mut summary: BTreeMap<String, serde_json::Value> = BTreeMap::new();
    for run in &runs {
        summary.insert(
            run.key.clone(),
            json!({
                "path": run.path,
                "final_state": run.trajectory.final_edge_states(),
                "agrees_with_oracle": run.agrees,
            }),
        );
    }
    summary.insert("oracle_path".to_string(), json!(oracle_edges));
    summary.insert(
        "duration_s".to_string(),
        json!(start.elapsed().as_secs_f64()),
    );
    let summary_path = out_dir.join("summary.json");
    let mut summary_json =
        serde_json::to_string_pretty(&summary).expect("summary serialization cannot fail");
    summary_json.push('\n');
    fs::write(&summary_path, summary_json)?;
    files.push(summary_path);

    Ok(RunOutcome {
        all_agree: runs.iter().all(|r| r.agrees),
        oracle_path: oracle_edges,
        engine_reports: runs
            .into_iter()
            .map(|r| (r.key, r.path, r.agrees))
            .collect(),
        files,
    })
}

fn run_discrete(
    cfg: &ResolvedConfig,
    g: &Graph,
    oracle: &[usize],
) -> Result<EngineRun, RunError> {
    let block = cfg.aco.as_ref().expect("validated: aco block present");
    let trajectory = aco::run_colony(g, &block.params(), &block.colony_spec(cfg.seed))
        .map_err(aco_failure)?;
    let path = greedy_walk_by_weight(g, trajectory.final_edge_states())
        .ok_or_else(|| RunError::Readout("pheromone levels single out no path".to_string()))?;
    let edges = path.edge_ids().to_vec();
    Ok(EngineRun {
        key: "aco_discrete".to_string(),
        agrees: edges == oracle,
        path: edges,
        trajectory,
        kind: EngineKind::Aco,
    })
}

fn run_continuous(
    cfg: &ResolvedConfig,
    g: &Graph,
    oracle: &[usize],
) -> Result<EngineRun, RunError> {
    let block = cfg.aco.as_ref().expect("validated: aco block present");
    let lengths: Vec<f64> = g.edges().iter().map(|e| e.length).collect();
    let trajectory = aco::integrate_parallel_paths(
        &lengths,
        &block.params(),
        block.t_end,
        block.dt,
        block.record_every,
    )
    .map_err(aco_failure)?;
    let path = greedy_walk_by_weight(g, trajectory.final_edge_states())
        .ok_or_else(|| RunError::Readout("pheromone levels single out no path".to_string()))?;
    let edges = path.edge_ids().to_vec();
    Ok(EngineRun {
        key: "aco_continuous".to_string(),
        agrees: edges == oracle,
        path: edges,
        trajectory,
        kind: EngineKind::Aco,
    })
}

fn run_circuits(
    cfg: &ResolvedConfig,
    g: &Graph,
    oracle: &[usize],
) -> Result<Vec<EngineRun>, RunError> {
    let block = cfg.memnet.as_ref().expect("validated: memnet block present");
    let mut runs = Vec::new();
    for (key, threshold) in block.runs() {
        let net = Network::compile(g, block.device(threshold), block.mode.into(), block.i0)
            .map_err(net_failure)?;
        let trajectory =
            memnet::simulate(&net, block.t_end, block.dt, block.record_every).map_err(net_failure)?;
        let path = memnet::read_solution(&net, trajectory.final_edge_states(), block.theta)
            .map_err(net_failure)?;
        let edges = path.edge_ids().to_vec();
        runs.push(EngineRun {
            key,
            agrees: edges == oracle,
            path: edges,
            trajectory,
            kind: EngineKind::Circuit,
        });
    }
    Ok(runs)
}

// Exponential formatting keeps tiny levels compact and round-trippable;
// plain Display would print hundreds of digits for denormals.

fn write_aco_csv(path: &FsPath, t: &Trajectory) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let edges = t.edge_states.first().map_or(0, Vec::len);
    write!(w, "t_or_ant_index")?;
    for e in 0..edges {
        write!(w, ",tau_e{e}")?;
    }
    writeln!(w)?;
    for (index, row) in t.index.iter().zip(&t.edge_states) {
        write!(w, "{index:e}")?;
        for value in row {
            write!(w, ",{value:e}")?;
        }
        writeln!(w)?;
    }
    w.flush()
}

fn write_circuit_csv(path: &FsPath, t: &Trajectory) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let edges = t.edge_states.first().map_or(0, Vec::len);
    let branches = t.branch_currents.first().map_or(0, Vec::len);
    write!(w, "t")?;
    for e in 0..edges {
        write!(w, ",x_e{e}")?;
    }
    for b in 0..branches {
        write!(w, ",I_b{b}")?;
    }
    for b in 0..branches {
        write!(w, ",sigma_b{b}")?;
    }
    writeln!(w)?;
    for (i, index) in t.index.iter().enumerate() {
        write!(w, "{index:e}")?;
        for value in &t.edge_states[i] {
            write!(w, ",{value:e}")?;
        }
        for value in &t.branch_currents[i] {
            write!(w, ",{value:e}")?;
        }
        for value in &t.branch_conductances[i] {
            write!(w, ",{value:e}")?;
        }
        writeln!(w)?;
    }
    w.flush()
}
