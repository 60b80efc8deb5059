//! Experiment configuration: JSON schema, embedded presets, defaults, and
//! validation that names the offending field.

use memaco_core::aco::{AcoParams, ColonyRunSpec};
use memaco_core::graph::Graph;
use memaco_core::memnet::{CompileMode, DeviceParams, NetError, Network};
use serde::{Deserialize, Serialize};
use std::fs;
use thiserror::Error;

pub const PRESETS: [&str; 3] = ["fig2_two_path", "fig4_multipath", "fig6_threshold"];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("unknown preset {0:?} (available: fig2_two_path, fig4_multipath, fig6_threshold)")]
    UnknownPreset(String),
    #[error("invalid config at {field}: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Validation {
        field: field.into(),
        message: message.into(),
    }
}

fn require<T>(value: Option<T>, field: &str) -> Result<T, ConfigError> {
    value.ok_or_else(|| invalid(field, "required field is missing"))
}

/// Inline graph description, also used to echo resolved configs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSchema {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String, f64)>,
    pub source: String,
    pub target: String,
}

pub fn build_graph(schema: &GraphSchema) -> Result<Graph, ConfigError> {
    let nodes: Vec<&str> = schema.nodes.iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str, f64)> = schema
        .edges
        .iter()
        .map(|(u, v, l)| (u.as_str(), v.as_str(), *l))
        .collect();
    Graph::with_nodes(&nodes, &edges, &schema.source, &schema.target)
        .map_err(|e| invalid("graph", e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineChoice {
    AcoDiscrete,
    AcoContinuous,
    Memnet,
    Compare,
}

impl EngineChoice {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "aco_discrete" => Ok(Self::AcoDiscrete),
            "aco_continuous" => Ok(Self::AcoContinuous),
            "memnet" => Ok(Self::Memnet),
            "compare" => Ok(Self::Compare),
            other => Err(invalid(
                "engine",
                format!(
                    "unknown engine {other:?} (expected aco_discrete, aco_continuous, memnet or compare)"
                ),
            )),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::AcoDiscrete => "aco_discrete",
            Self::AcoContinuous => "aco_continuous",
            Self::Memnet => "memnet",
            Self::Compare => "compare",
        }
    }

    pub fn needs_aco(&self) -> bool {
        matches!(self, Self::AcoDiscrete | Self::AcoContinuous | Self::Compare)
    }

    pub fn needs_memnet(&self) -> bool {
        matches!(self, Self::Memnet | Self::Compare)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeChoice {
    Chain,
    Lumped,
}

impl From<ModeChoice> for CompileMode {
    fn from(m: ModeChoice) -> CompileMode {
        match m {
            ModeChoice::Chain => CompileMode::Chain,
            ModeChoice::Lumped => CompileMode::Lumped,
        }
    }
}

/// Colony and mean-field parameters with run sizes and the time grid of
/// the mean-field form.
#[derive(Debug, Clone, Serialize)]
pub struct AcoBlock {
    pub alpha: f64,
    pub beta: f64,
    pub evaporation: f64,
    pub deposit: f64,
    pub injection_rate: f64,
    pub initial_pheromone: f64,
    pub ants: usize,
    pub realizations: usize,
    pub record_every: usize,
    pub dt: f64,
    pub t_end: f64,
}

impl AcoBlock {
    pub fn params(&self) -> AcoParams {
        AcoParams {
            alpha: self.alpha,
            beta: self.beta,
            evaporation: self.evaporation,
            deposit: self.deposit,
            injection_rate: self.injection_rate,
            initial_pheromone: self.initial_pheromone,
        }
    }

    pub fn colony_spec(&self, seed: u64) -> ColonyRunSpec {
        ColonyRunSpec {
            ants: self.ants,
            realizations: self.realizations,
            seed,
            record_every: self.record_every,
        }
    }
}

/// Device parameters, the injected current, the compilation mode, the time
/// grid, and the readout fraction. `i_t_sweep` replaces `threshold` with
/// one run per listed value.
#[derive(Debug, Clone, Serialize)]
pub struct MemnetBlock {
    pub sigma_on: f64,
    pub sigma_off: f64,
    pub drive: f64,
    pub relaxation: f64,
    pub threshold: f64,
    pub i0: f64,
    pub theta: f64,
    pub mode: ModeChoice,
    pub dt: f64,
    pub t_end: f64,
    pub record_every: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_t_sweep: Option<Vec<f64>>,
}

impl MemnetBlock {
    pub fn device(&self, threshold: f64) -> DeviceParams {
        DeviceParams {
            sigma_on: self.sigma_on,
            sigma_off: self.sigma_off,
            drive: self.drive,
            relaxation: self.relaxation,
            threshold,
        }
    }

    /// The circuit runs this block asks for: `(engine key, threshold)`.
    pub fn runs(&self) -> Vec<(String, f64)> {
        match &self.i_t_sweep {
            None => vec![("memnet".to_string(), self.threshold)],
            Some(values) => values
                .iter()
                .map(|&it| (format!("memnet_it{it}"), it))
                .collect(),
        }
    }
}

/// A fully validated experiment: every default filled in, the graph
/// buildable, parameter blocks consistent with the selected engine.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub graph: GraphSchema,
    pub engine: EngineChoice,
    pub seed: u64,
    pub out_dir: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aco: Option<AcoBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub memnet: Option<MemnetBlock>,
}

/// Command-line overrides applied on top of a loaded config.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub engine: Option<String>,
    pub seed: Option<u64>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
}

impl ResolvedConfig {
    pub fn apply_overrides(mut self, o: &Overrides) -> Result<Self, ConfigError> {
        if let Some(engine) = &o.engine {
            self.engine = EngineChoice::parse(engine)?;
        }
        if let Some(seed) = o.seed {
            self.seed = seed;
        }
        if self.engine.needs_aco() {
            if let Some(block) = &mut self.aco {
                if let Some(dt) = o.dt {
                    block.dt = dt;
                }
                if let Some(t_end) = o.t_end {
                    block.t_end = t_end;
                }
            }
        }
        if self.engine.needs_memnet() {
            if let Some(block) = &mut self.memnet {
                if let Some(dt) = o.dt {
                    block.dt = dt;
                }
                if let Some(t_end) = o.t_end {
                    block.t_end = t_end;
                }
            }
        }
        validate(&self)?;
        Ok(self)
    }

    /// The graph this experiment runs on. Only valid configs exist, so the
    /// build cannot fail here.
    pub fn graph_instance(&self) -> Graph {
        build_graph(&self.graph).expect("config was validated")
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    graph: RawGraphSource,
    #[serde(default)]
    engine: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    out_dir: Option<String>,
    #[serde(default)]
    aco: Option<RawAco>,
    #[serde(default)]
    memnet: Option<RawMemnet>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawGraphSource {
    Preset(String),
    Inline(GraphSchema),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAco {
    #[serde(default)]
    alpha: Option<f64>,
    #[serde(default)]
    beta: Option<f64>,
    #[serde(default)]
    evaporation: Option<f64>,
    #[serde(default)]
    deposit: Option<f64>,
    #[serde(default)]
    injection_rate: Option<f64>,
    #[serde(default)]
    initial_pheromone: Option<f64>,
    #[serde(default)]
    ants: Option<usize>,
    #[serde(default)]
    realizations: Option<usize>,
    #[serde(default)]
    record_every: Option<usize>,
    #[serde(default)]
    dt: Option<f64>,
    #[serde(default)]
    t_end: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMemnet {
    #[serde(default)]
    sigma_on: Option<f64>,
    #[serde(default)]
    sigma_off: Option<f64>,
    #[serde(default)]
    drive: Option<f64>,
    #[serde(default)]
    relaxation: Option<f64>,
    #[serde(default)]
    threshold: Option<f64>,
    #[serde(default)]
    i0: Option<f64>,
    #[serde(default)]
    theta: Option<f64>,
    #[serde(default)]
    mode: Option<String>,
    #[serde(default)]
    dt: Option<f64>,
    #[serde(default)]
    t_end: Option<f64>,
    #[serde(default)]
    record_every: Option<usize>,
    #[serde(default)]
    i_t_sweep: Option<Vec<f64>>,
}

/// Loads a named preset or a JSON config file and returns the validated,
/// fully defaulted experiment. Sources containing a dot or a path
/// separator are treated as file paths, anything else as a preset name.
pub fn load(source: &str) -> Result<ResolvedConfig, ConfigError> {
    if PRESETS.contains(&source) {
        let cfg = preset(source);
        validate(&cfg)?;
        return Ok(cfg);
    }
    if source.contains('.') || source.contains('/') || source.contains('\\') {
        let text = fs::read_to_string(source)
            .map_err(|e| ConfigError::Parse(format!("cannot read {source}: {e}")))?;
        let raw: RawConfig =
            serde_json::from_str(&text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        let cfg = resolve(raw)?;
        validate(&cfg)?;
        Ok(cfg)
    } else {
        Err(ConfigError::UnknownPreset(source.to_string()))
    }
}

fn resolve(raw: RawConfig) -> Result<ResolvedConfig, ConfigError> {
    let graph = match raw.graph {
        RawGraphSource::Inline(schema) => schema,
        RawGraphSource::Preset(name) => match name.as_str() {
            "fig2_two_path" => two_path_schema(),
            "fig4_multipath" | "fig6_threshold" => multipath_schema(),
            other => {
                return Err(invalid(
                    "graph",
                    format!("unknown graph preset {other:?}"),
                ))
            }
        },
    };
    let g = build_graph(&graph)?;
    let engine = match raw.engine {
        Some(s) => EngineChoice::parse(&s)?,
        None => EngineChoice::Compare,
    };
    let aco = raw.aco.map(resolve_aco).transpose()?;
    let memnet = raw.memnet.map(|m| resolve_memnet(m, &g)).transpose()?;
    Ok(ResolvedConfig {
        graph,
        engine,
        seed: raw.seed.unwrap_or(42),
        out_dir: raw.out_dir.unwrap_or_else(|| "out".to_string()),
        aco,
        memnet,
    })
}

fn resolve_aco(raw: RawAco) -> Result<AcoBlock, ConfigError> {
    Ok(AcoBlock {
        alpha: raw.alpha.unwrap_or(1.0),
        beta: raw.beta.unwrap_or(1.0),
        evaporation: require(raw.evaporation, "aco.evaporation")?,
        deposit: require(raw.deposit, "aco.deposit")?,
        injection_rate: raw.injection_rate.unwrap_or(1.0),
        initial_pheromone: require(raw.initial_pheromone, "aco.initial_pheromone")?,
        ants: raw.ants.unwrap_or(1000),
        realizations: raw.realizations.unwrap_or(1000),
        record_every: raw.record_every.unwrap_or(10),
        dt: raw.dt.unwrap_or(1e-2),
        t_end: raw.t_end.unwrap_or(200.0),
    })
}

fn resolve_memnet(raw: RawMemnet, g: &Graph) -> Result<MemnetBlock, ConfigError> {
    let mode = match raw.mode.as_deref() {
        None | Some("auto") => {
            let integral = g
                .edges()
                .iter()
                .all(|e| (e.length - e.length.round()).abs() <= 1e-9 && e.length >= 1.0);
            if integral {
                ModeChoice::Chain
            } else {
                ModeChoice::Lumped
            }
        }
        Some("chain") => ModeChoice::Chain,
        Some("lumped") => ModeChoice::Lumped,
        Some(other) => {
            return Err(invalid(
                "memnet.mode",
                format!("unknown mode {other:?} (expected auto, chain or lumped)"),
            ))
        }
    };
    Ok(MemnetBlock {
        sigma_on: require(raw.sigma_on, "memnet.sigma_on")?,
        sigma_off: require(raw.sigma_off, "memnet.sigma_off")?,
        drive: require(raw.drive, "memnet.drive")?,
        relaxation: require(raw.relaxation, "memnet.relaxation")?,
        threshold: raw.threshold.unwrap_or(0.0),
        i0: require(raw.i0, "memnet.i0")?,
        theta: raw.theta.unwrap_or(0.5),
        mode,
        dt: raw.dt.unwrap_or(1e-3),
        t_end: raw.t_end.unwrap_or(200.0),
        record_every: raw.record_every.unwrap_or(100),
        i_t_sweep: raw.i_t_sweep,
    })
}

fn check_time_grid(dt: f64, t_end: f64, record_every: usize, prefix: &str) -> Result<(), ConfigError> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(invalid(&format!("{prefix}.dt"), "must be positive and finite"));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(invalid(
            &format!("{prefix}.t_end"),
            "must be nonnegative and finite",
        ));
    }
    if record_every == 0 {
        return Err(invalid(
            &format!("{prefix}.record_every"),
            "must be at least 1",
        ));
    }
    Ok(())
}

fn validate(cfg: &ResolvedConfig) -> Result<(), ConfigError> {
    let g = build_graph(&cfg.graph)?;
    if cfg.engine.needs_aco() {
        let block = cfg
            .aco
            .as_ref()
            .ok_or_else(|| invalid("aco", "parameter block required for the selected engine"))?;
        block
            .params()
            .validate()
            .map_err(|e| invalid("aco", e.to_string()))?;
        check_time_grid(block.dt, block.t_end, block.record_every, "aco")?;
        if block.ants == 0 {
            return Err(invalid("aco.ants", "must be at least 1"));
        }
        if block.realizations == 0 {
            return Err(invalid("aco.realizations", "must be at least 1"));
        }
        if cfg.engine == EngineChoice::AcoContinuous && !g.all_edges_connect_terminals() {
            return Err(invalid(
                "engine",
                "aco_continuous applies only when every edge joins the two terminals",
            ));
        }
    }
    if cfg.engine.needs_memnet() {
        let block = cfg
            .memnet
            .as_ref()
            .ok_or_else(|| invalid("memnet", "parameter block required for the selected engine"))?;
        if !block.i0.is_finite() || block.i0 < 0.0 {
            return Err(invalid("memnet.i0", "must be finite and nonnegative"));
        }
        block
            .device(block.threshold)
            .validate()
            .map_err(|e| invalid("memnet", e.to_string()))?;
        if !(block.theta > 0.0 && block.theta < 1.0) {
            return Err(invalid("memnet.theta", "must lie strictly between 0 and 1"));
        }
        check_time_grid(block.dt, block.t_end, block.record_every, "memnet")?;
        if let Some(sweep) = &block.i_t_sweep {
            if sweep.is_empty() {
                return Err(invalid("memnet.i_t_sweep", "must list at least one value"));
            }
            if sweep.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(invalid(
                    "memnet.i_t_sweep",
                    "values must be finite and nonnegative",
                ));
            }
        }
        // Dry-run compilation catches mode/graph mismatches (fractional
        // lengths in chain mode, nodes hanging off the circuit).
        Network::compile(&g, block.device(block.threshold), block.mode.into(), block.i0).map_err(
            |e| match e {
                NetError::NonIntegerLengthInChainMode { .. } => {
                    invalid("memnet.mode", e.to_string())
                }
                NetError::DisconnectedNode(_) => invalid("graph", e.to_string()),
                other => invalid("memnet", other.to_string()),
            },
        )?;
    }
    Ok(())
}

fn two_path_schema() -> GraphSchema {
    GraphSchema {
        nodes: vec!["A".into(), "B".into()],
        edges: vec![
            ("A".into(), "B".into(), 1.0),
            ("A".into(), "B".into(), 2.0),
        ],
        source: "A".into(),
        target: "B".into(),
    }
}

fn multipath_schema() -> GraphSchema {
    GraphSchema {
        nodes: vec![
            "A".into(),
            "C".into(),
            "B".into(),
            "D".into(),
            "E".into(),
            "F".into(),
            "G".into(),
        ],
        edges: vec![
            ("A".into(), "C".into(), 1.0),
            ("C".into(), "B".into(), 1.0),
            ("A".into(), "D".into(), 1.0),
            ("D".into(), "E".into(), 1.0),
            ("E".into(), "B".into(), 1.0),
            ("A".into(), "F".into(), 1.0),
            ("F".into(), "G".into(), 1.0),
            ("G".into(), "B".into(), 1.0),
        ],
        source: "A".into(),
        target: "B".into(),
    }
}

fn fig_device_block(i0: f64) -> MemnetBlock {
    MemnetBlock {
        sigma_on: 0.01,
        sigma_off: 1e-5,
        drive: 1.0,
        relaxation: 0.1,
        threshold: 0.0,
        i0,
        theta: 0.5,
        mode: ModeChoice::Chain,
        dt: 1e-3,
        t_end: 200.0,
        record_every: 100,
        i_t_sweep: None,
    }
}

/// The embedded benchmark presets.
///
/// * `fig2_two_path`: unit vs double length in parallel; both engine
///   families have closed-form steady states here.
/// * `fig4_multipath`: the seven-node instance where the losing arms
///   initially carry the larger total current.
/// * `fig6_threshold`: the same instance swept over two threshold
///   currents, circuit engine only.
pub fn preset(name: &str) -> ResolvedConfig {
    match name {
        "fig2_two_path" => ResolvedConfig {
            graph: two_path_schema(),
            engine: EngineChoice::Compare,
            seed: 42,
            out_dir: "out".to_string(),
            aco: Some(AcoBlock {
                alpha: 1.0,
                beta: 1.0,
                evaporation: 0.1,
                deposit: 1.0,
                injection_rate: 1.0,
                initial_pheromone: 0.5,
                ants: 1000,
                realizations: 1000,
                record_every: 10,
                dt: 1e-2,
                t_end: 200.0,
            }),
            memnet: Some(fig_device_block(0.09)),
        },
        "fig4_multipath" => ResolvedConfig {
            graph: multipath_schema(),
            engine: EngineChoice::Compare,
            seed: 42,
            out_dir: "out".to_string(),
            aco: Some(AcoBlock {
                alpha: 1.0,
                beta: 1.0,
                evaporation: 0.05,
                deposit: 0.1,
                injection_rate: 1.0,
                initial_pheromone: 0.5,
                ants: 1000,
                realizations: 1000,
                record_every: 10,
                dt: 1e-2,
                t_end: 200.0,
            }),
            memnet: Some(fig_device_block(0.1)),
        },
        "fig6_threshold" => {
            let mut block = fig_device_block(0.1);
            block.i_t_sweep = Some(vec![0.005, 0.03]);
            ResolvedConfig {
                graph: multipath_schema(),
                engine: EngineChoice::Memnet,
                seed: 42,
                out_dir: "out".to_string(),
                aco: None,
                memnet: Some(block),
            }
        }
        other => unreachable!("preset names are checked by load: {other}"),
    }
}
