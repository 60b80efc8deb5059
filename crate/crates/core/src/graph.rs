//! Problem instances (weighted undirected graphs with two terminals) and
//! the classical shortest-path oracles used to certify solver output.
//!
//! Edges carry dense integer ids in insertion order; all per-edge state
//! vectors elsewhere in the crate are indexed by those ids. Graphs are
//! immutable after construction and safe to share across threads.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index} has non-positive length")]
    NonPositiveLength { index: usize },
    #[error("edge {index} is a self-loop on node '{node}'")]
    SelfLoop { index: usize, node: String },
    #[error("source and target are both node '{0}'")]
    IdenticalTerminals(String),
    #[error("terminal '{0}' is not in the node list")]
    UnknownTerminal(String),
    #[error("edge endpoint '{0}' is not in the node list")]
    UnknownNode(String),
    #[error("node '{0}' appears twice in the node list")]
    DuplicateNode(String),
    #[error("no path connects the source to the target")]
    DisconnectedTerminals,
    #[error("more than {budget} simple paths between the terminals")]
    PathBudgetExceeded { budget: usize },
    #[error("invalid path: {0}")]
    InvalidPath(&'static str),
}

/// An undirected edge between two node indices with a positive length.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

impl Edge {
    pub fn touches(&self, node: usize) -> bool {
        self.u == node || self.v == node
    }

    /// The endpoint opposite `node`. Panics if the edge does not touch `node`.
    pub fn other(&self, node: usize) -> usize {
        if node == self.u {
            self.v
        } else {
            assert_eq!(node, self.v, "edge does not touch node {node}");
            self.u
        }
    }
}

/// A weighted undirected graph with designated source/target terminals.
///
/// Invariants enforced at construction: every length > 0, no self-loops,
/// distinct terminals present in the node list, and the terminals connected.
/// Parallel edges are permitted and keep distinct ids.
#[derive(Debug, Clone)]
pub struct Graph {
    nodes: Vec<String>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
    source: usize,
    target: usize,
}

impl Graph {
    /// Builds a graph from an edge list, deriving the node list from edge
    /// endpoints in order of first appearance. A terminal that appears in
    /// no edge is kept as an isolated node, so the construction fails with
    /// `DisconnectedTerminals` rather than `UnknownTerminal`.
    pub fn build(
        edges: &[(&str, &str, f64)],
        source: &str,
        target: &str,
    ) -> Result<Self, GraphError> {
        let mut names: Vec<String> = Vec::new();
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
            if let Some(&i) = index.get(name) {
                return i;
            }
            let i = names.len();
            names.push(name.to_string());
            index.insert(name.to_string(), i);
            i
        };
        let mut edge_list = Vec::with_capacity(edges.len());
        for &(u, v, length) in edges {
            let u = intern(u, &mut names);
            let v = intern(v, &mut names);
            edge_list.push(Edge { u, v, length });
        }
        let source = intern(source, &mut names);
        let target = intern(target, &mut names);
        Self::from_indexed(names, edge_list, source, target)
    }

    /// Builds a graph from an explicit node list. Unlike [`Graph::build`],
    /// terminals and edge endpoints must name listed nodes.
    pub fn with_nodes(
        nodes: &[&str],
        edges: &[(&str, &str, f64)],
        source: &str,
        target: &str,
    ) -> Result<Self, GraphError> {
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, &name) in nodes.iter().enumerate() {
            if index.insert(name, i).is_some() {
                return Err(GraphError::DuplicateNode(name.to_string()));
            }
        }
        let lookup_node = |name: &str| -> Result<usize, GraphError> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::UnknownNode(name.to_string()))
        };
        let lookup_terminal = |name: &str| -> Result<usize, GraphError> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::UnknownTerminal(name.to_string()))
        };
        let mut edge_list = Vec::with_capacity(edges.len());
        for &(u, v, length) in edges {
            edge_list.push(Edge {
                u: lookup_node(u)?,
                v: lookup_node(v)?,
                length,
            });
        }
        let source = lookup_terminal(source)?;
        let target = lookup_terminal(target)?;
        let names = nodes.iter().map(|s| s.to_string()).collect();
        Self::from_indexed(names, edge_list, source, target)
    }

    fn from_indexed(
        nodes: Vec<String>,
        edges: Vec<Edge>,
        source: usize,
        target: usize,
    ) -> Result<Self, GraphError> {
        for (index, e) in edges.iter().enumerate() {
            if !(e.length > 0.0) || !e.length.is_finite() {
                return Err(GraphError::NonPositiveLength { index });
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop {
                    index,
                    node: nodes[e.u].clone(),
                });
            }
        }
        if source == target {
            return Err(GraphError::IdenticalTerminals(nodes[source].clone()));
        }
        let mut incidence = vec![Vec::new(); nodes.len()];
        for (id, e) in edges.iter().enumerate() {
            incidence[e.u].push(id);
            incidence[e.v].push(id);
        }
        let g = Graph {
            nodes,
            edges,
            incidence,
            source,
            target,
        };
        if g.hops_from(source)[target] == usize::MAX {
            return Err(GraphError::DisconnectedTerminals);
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_name(&self, node: usize) -> &str {
        &self.nodes[node]
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge ids incident to `node`, in insertion order.
    pub fn incident_edges(&self, node: usize) -> &[usize] {
        &self.incidence[node]
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// True when every edge joins the two terminals directly, i.e. the graph
    /// is a bundle of parallel source-target edges. The mean-field ACO form
    /// applies exactly to these instances.
    pub fn all_edges_connect_terminals(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.touches(self.source) && e.touches(self.target))
    }

    /// Unweighted hop count from `start` to every node (`usize::MAX` when
    /// unreachable). Used for connectivity checks and branch orientation.
    pub fn hops_from(&self, start: usize) -> Vec<usize> {
        let mut hops = vec![usize::MAX; self.nodes.len()];
        hops[start] = 0;
        let mut frontier = vec![start];
        while let Some(node) = frontier.pop() {
            for &eid in &self.incidence[node] {
                let next = self.edges[eid].other(node);
                let cand = hops[node] + 1;
                if cand < hops[next] {
                    hops[next] = cand;
                    frontier.push(next);
                }
            }
        }
        hops
    }

    /// Weighted shortest distance from `start` to every node, with the
    /// predecessor edge chosen during relaxation (smaller edge id wins ties).
    fn dijkstra(&self, start: usize) -> (Vec<f64>, Vec<Option<usize>>) {
        let n = self.nodes.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut done = vec![false; n];
        dist[start] = 0.0;
        for _ in 0..n {
            let mut current = None;
            let mut best = f64::INFINITY;
            for v in 0..n {
                if !done[v] && dist[v] < best {
                    best = dist[v];
                    current = Some(v);
                }
            }
            let Some(u) = current else { break };
            done[u] = true;
            for &eid in &self.incidence[u] {
                let e = &self.edges[eid];
                let v = e.other(u);
                let cand = dist[u] + e.length;
                if cand < dist[v] || (cand == dist[v] && Some(eid) < pred[v]) {
                    dist[v] = cand;
                    pred[v] = Some(eid);
                }
            }
        }
        (dist, pred)
    }
}

/// A simple source-to-target path, stored as an ordered edge-id list with
/// its total length. Constructed only through validation, so consecutive
/// edges share a node, no node repeats, and the endpoints are the terminals.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    edges: Vec<usize>,
    total_length: f64,
}

impl Path {
    /// Validates an edge-id sequence as a simple source-to-target path.
    pub fn from_edges(g: &Graph, edges: Vec<usize>) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::InvalidPath("empty edge list"));
        }
        let mut visited = vec![false; g.node_count()];
        let mut node = g.source();
        visited[node] = true;
        let mut total_length = 0.0;
        for &eid in &edges {
            let e = g
                .edges()
                .get(eid)
                .ok_or(GraphError::InvalidPath("unknown edge id"))?;
            if !e.touches(node) {
                return Err(GraphError::InvalidPath("consecutive edges do not share a node"));
            }
            node = e.other(node);
            if visited[node] {
                return Err(GraphError::InvalidPath("node visited twice"));
            }
            visited[node] = true;
            total_length += e.length;
        }
        if node != g.target() {
            return Err(GraphError::InvalidPath("path does not end at the target"));
        }
        Ok(Path {
            edges,
            total_length,
        })
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edges
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    /// Lexicographic comparison key (length first, then edge ids).
    fn sort_key<'a>(&'a self) -> (f64, &'a [usize]) {
        (self.total_length, &self.edges)
    }
}

/// Returns a minimum-total-length simple path from source to target.
///
/// Among equal-length shortest paths the lexicographically smallest edge-id
/// sequence wins. The tie-break is computed by a greedy descent over exact
/// distance sums, so it is guaranteed whenever length arithmetic is exact
/// (integer-valued lengths in particular); with irrational rounding the
/// result falls back to the Dijkstra predecessor chain.
pub fn shortest_path_oracle(g: &Graph) -> Path {
    let (dist_s, pred) = g.dijkstra(g.source());
    let (dist_t, _) = g.dijkstra(g.target());
    let total = dist_s[g.target()];
    debug_assert!(total.is_finite(), "graph invariant: terminals connected");

    let mut node = g.source();
    let mut walked = 0.0;
    let mut visited = vec![false; g.node_count()];
    visited[node] = true;
    let mut edges = Vec::new();
    while node != g.target() {
        let mut chosen = None;
        for &eid in g.incident_edges(node) {
            let e = g.edge(eid);
            let next = e.other(node);
            if visited[next] {
                continue;
            }
            if walked + e.length + dist_t[next] == total && chosen.map_or(true, |c| eid < c) {
                chosen = Some(eid);
            }
        }
        let Some(eid) = chosen else {
            // Exact sums unavailable (rounding); use the predecessor chain.
            return predecessor_path(g, &pred);
        };
        let e = g.edge(eid);
        walked += e.length;
        node = e.other(node);
        visited[node] = true;
        edges.push(eid);
    }
    Path::from_edges(g, edges).expect("greedy shortest-path walk is simple by construction")
}

fn predecessor_path(g: &Graph, pred: &[Option<usize>]) -> Path {
    let mut edges = Vec::new();
    let mut node = g.target();
    while node != g.source() {
        let eid = pred[node].expect("graph invariant: terminals connected");
        edges.push(eid);
        node = g.edge(eid).other(node);
    }
    edges.reverse();
    Path::from_edges(g, edges).expect("predecessor chain is simple by construction")
}

/// Enumerates every simple source-to-target path, sorted by total length
/// and then by edge-id sequence. Fails with `PathBudgetExceeded` as soon as
/// the count would pass `max_paths`.
pub fn enumerate_simple_paths(g: &Graph, max_paths: usize) -> Result<Vec<Path>, GraphError> {
    let mut found: Vec<Path> = Vec::new();
    let mut visited = vec![false; g.node_count()];
    visited[g.source()] = true;
    let mut stack: Vec<usize> = Vec::new();
    dfs_paths(g, g.source(), &mut visited, &mut stack, max_paths, &mut found)?;
    found.sort_by(|a, b| {
        a.sort_key()
            .partial_cmp(&b.sort_key())
            .expect("path lengths are finite")
    });
    Ok(found)
}

fn dfs_paths(
    g: &Graph,
    node: usize,
    visited: &mut Vec<bool>,
    stack: &mut Vec<usize>,
    max_paths: usize,
    found: &mut Vec<Path>,
) -> Result<(), GraphError> {
    if node == g.target() {
        if found.len() == max_paths {
            return Err(GraphError::PathBudgetExceeded { budget: max_paths });
        }
        let path = Path::from_edges(g, stack.clone())
            .expect("DFS stack is a simple source-target path");
        found.push(path);
        return Ok(());
    }
    for &eid in g.incident_edges(node) {
        let next = g.edge(eid).other(node);
        if visited[next] {
            continue;
        }
        visited[next] = true;
        stack.push(eid);
        dfs_paths(g, next, visited, stack, max_paths, found)?;
        stack.pop();
        visited[next] = false;
    }
    Ok(())
}

/// Greedy readout walk: from the source, repeatedly take the incident edge
/// of maximal `weight` that leads to an unvisited node (ties: lowest edge
/// id). Returns `None` when the walk dead-ends before the target.
pub fn greedy_walk_by_weight(g: &Graph, weight: &[f64]) -> Option<Path> {
    assert_eq!(weight.len(), g.edge_count(), "one weight per edge");
    let mut node = g.source();
    let mut visited = vec![false; g.node_count()];
    visited[node] = true;
    let mut edges = Vec::new();
    while node != g.target() {
        let mut chosen: Option<usize> = None;
        for &eid in g.incident_edges(node) {
            if visited[g.edge(eid).other(node)] {
                continue;
            }
            match chosen {
                Some(best) if weight[eid] <= weight[best] => {}
                _ => chosen = Some(eid),
            }
        }
        let eid = chosen?;
        node = g.edge(eid).other(node);
        visited[node] = true;
        edges.push(eid);
    }
    Some(Path::from_edges(g, edges).expect("greedy walk is simple by construction"))
}

/// The two-terminal instance with a pair of parallel edges of lengths
/// `l1` and `l2` between `A` and `B`.
pub fn two_path_graph(l1: f64, l2: f64) -> Graph {
    Graph::build(&[("A", "B", l1), ("A", "B", l2)], "A", "B")
        .expect("two-path instance is always valid")
}
