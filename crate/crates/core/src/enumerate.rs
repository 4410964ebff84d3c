//! Exhaustive enumeration of isomorphism classes by canonical edge
//! augmentation, and the cospectral-mate search built on it.
//!
//! The tree starts at the edgeless graph on `n` vertices and adds one edge
//! per level. A child `H = G + e` is accepted iff deleting the canonical edge
//! of `H` gives a graph isomorphic to `G`. Since that canonical parent is an
//! isomorphism invariant of `H`, every class has exactly one parent class;
//! the children of a single parent are deduplicated by canonical form. The
//! canonical edge is chosen among the edges maximising a cheap invariant
//! (endpoint degrees, then common neighbours), which lets most rejected
//! children fail before any canonical labelling is computed.
//!
//! Intermediate nodes are pruned only when no descendant can satisfy the
//! leaf constraints: a graph with `r` edges still to add cannot end up
//! connected with more than `r + 1` components, and cannot reach minimum
//! degree `d` if its total degree deficit exceeds `2r`.

use std::collections::HashSet;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_form, canonical_labeling, CanonicalForm};
use crate::charpoly::char_poly;
use crate::friendship::{build_friendship, radius_ceil, ZeroTriangles};
use crate::graph::Graph;
use crate::graph6::to_graph6_string;

pub const DEFAULT_MAX_VERTICES: usize = 11;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("{n} vertices exceeds the feasibility cap of {cap}; raise the cap explicitly to go further")]
    TooManyVertices { n: usize, cap: usize },
    #[error("{m} edges is more than the {max} vertex pairs available")]
    TooManyEdges { m: usize, max: usize },
    #[error("enumeration needs at least one vertex")]
    NoVertices,
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Friendship(#[from] ZeroTriangles),
}

/// Which graphs to enumerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationTask {
    pub n_vertices: usize,
    pub n_edges: usize,
    pub connected_only: bool,
    /// Keep only graphs whose minimum degree equals this.
    pub min_degree_filter: Option<usize>,
    /// With `min_degree_filter`, keep only graphs having at least this many
    /// vertices of minimum degree.
    pub min_degree_multiplicity: Option<usize>,
}

impl EnumerationTask {
    pub fn new(n_vertices: usize, n_edges: usize) -> Self {
        EnumerationTask {
            n_vertices,
            n_edges,
            connected_only: false,
            min_degree_filter: None,
            min_degree_multiplicity: None,
        }
    }

    pub fn connected(mut self, yes: bool) -> Self {
        self.connected_only = yes;
        self
    }

    pub fn min_degree(mut self, d: usize) -> Self {
        self.min_degree_filter = Some(d);
        self
    }

    pub fn min_degree_multiplicity(mut self, k: usize) -> Self {
        self.min_degree_multiplicity = Some(k);
        self
    }

    /// Whether a graph with the task's vertex and edge count is wanted.
    pub fn accepts(&self, g: &Graph) -> bool {
        if self.connected_only && g.component_count() != 1 {
            return false;
        }
        if let Some(d) = self.min_degree_filter {
            if g.min_degree() != d {
                return false;
            }
            if let Some(k) = self.min_degree_multiplicity {
                if (0..g.n_vertices()).filter(|&v| g.degree(v) == d).count() < k {
                    return false;
                }
            }
        }
        true
    }

    /// Whether some supergraph with `remaining` more edges can be accepted.
    fn may_complete(&self, g: &Graph, remaining: usize) -> bool {
        if self.connected_only && g.component_count() > remaining + 1 {
            return false;
        }
        if let Some(d) = self.min_degree_filter {
            let n = g.n_vertices();
            let deficit: usize = (0..n).map(|v| d.saturating_sub(g.degree(v))).sum();
            if deficit > 2 * remaining {
                return false;
            }
            let low = (0..n).filter(|&v| g.degree(v) <= d).count();
            if low == 0 || low < self.min_degree_multiplicity.unwrap_or(0) {
                return false;
            }
        }
        true
    }

    fn validate(&self, config: &EnumerationConfig) -> Result<(), EnumerateError> {
        let n = self.n_vertices;
        if n == 0 {
            return Err(EnumerateError::NoVertices);
        }
        if n > config.max_vertices {
            return Err(EnumerateError::TooManyVertices { n, cap: config.max_vertices });
        }
        let max = n * (n - 1) / 2;
        if self.n_edges > max {
            return Err(EnumerateError::TooManyEdges { m: self.n_edges, max });
        }
        Ok(())
    }
}

/// How to run an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    pub max_vertices: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { jobs: 1, max_vertices: DEFAULT_MAX_VERTICES }
    }
}

impl EnumerationConfig {
    pub fn with_jobs(jobs: usize) -> Self {
        EnumerationConfig { jobs: jobs.max(1), ..Default::default() }
    }
}

struct Node {
    graph: Graph,
    form: CanonicalForm,
}

type EdgeKey = (usize, usize, usize);

#[inline]
fn edge_key(g: &Graph, u: usize, v: usize) -> EdgeKey {
    let (du, dv) = (g.degree(u), g.degree(v));
    (du.max(dv), du.min(dv), g.common_neighbors(u, v))
}

struct Engine<'t> {
    task: &'t EnumerationTask,
}

impl Engine<'_> {
    /// Accepted children of `node`, which has `level` edges.
    fn children(&self, node: &Node, level: usize) -> Vec<Node> {
        let g = &node.graph;
        let n = g.n_vertices();
        let is_leaf = level + 1 == self.task.n_edges;
        let remaining = self.task.n_edges - level - 1;
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        let mut out = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if g.has_edge(u, v) {
                    continue;
                }
                let h = g.with_edge(u, v);
                let wanted = if is_leaf { self.task.accepts(&h) } else { self.task.may_complete(&h, remaining) };
                if !wanted {
                    continue;
                }
                let key = edge_key(&h, u, v);
                if h.edges().any(|(a, b)| edge_key(&h, a, b) > key) {
                    continue;
                }
                let lab = canonical_labeling(&h);
                let (a, b) = h
                    .edges()
                    .filter(|&(a, b)| edge_key(&h, a, b) == key)
                    .min_by_key(|&(a, b)| {
                        let (pa, pb) = (lab.position_of(a), lab.position_of(b));
                        (pa.min(pb), pa.max(pb))
                    })
                    .unwrap();
                let accepted = (a, b) == (u, v) || canonical_form(&h.without_edge(a, b)) == node.form;
                if accepted && seen.insert(lab.form.clone()) {
                    out.push(Node { graph: h, form: lab.form });
                }
            }
        }
        out
    }

    fn dfs<F: FnMut(&Graph)>(&self, node: &Node, level: usize, visit: &mut F) -> u64 {
        if level == self.task.n_edges {
            visit(&node.graph);
            return 1;
        }
        self.children(node, level).iter().map(|c| self.dfs(c, level + 1, visit)).sum()
    }

    fn root(&self) -> Node {
        let graph = Graph::empty(self.task.n_vertices);
        let form = canonical_form(&graph);
        Node { graph, form }
    }
}

/// Visits one representative of every isomorphism class matching `task`.
/// Returns the number of classes visited.
///
/// With `config.jobs > 1` the callback runs concurrently on worker threads
/// and in no particular order; the set of visited graphs (as labelled
/// graphs, not only as classes) does not depend on the worker count.
pub fn enumerate_graphs<F>(task: &EnumerationTask, config: &EnumerationConfig, visit: F) -> Result<u64, EnumerateError>
where
    F: Fn(&Graph) + Sync,
{
    task.validate(config)?;
    let engine = Engine { task };
    let root = engine.root();
    if task.n_edges == 0 {
        let ok = task.accepts(&root.graph);
        if ok {
            visit(&root.graph);
        }
        return Ok(ok as u64);
    }
    if config.jobs <= 1 {
        return Ok(engine.dfs(&root, 0, &mut |g| visit(g)));
    }
    // breadth-first until there is enough independent work to share out
    let mut frontier = vec![root];
    let mut level = 0;
    while level < task.n_edges && frontier.len() < 64 * config.jobs {
        frontier = frontier.iter().flat_map(|node| engine.children(node, level)).collect();
        level += 1;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| EnumerateError::Pool(e.to_string()))?;
    let count = pool.install(|| frontier.par_iter().map(|node| engine.dfs(node, level, &mut |g| visit(g))).sum());
    Ok(count)
}

/// Collects every visited graph, sorted by canonical form.
pub fn collect_graphs(task: &EnumerationTask, config: &EnumerationConfig) -> Result<Vec<Graph>, EnumerateError> {
    let found = Mutex::new(Vec::new());
    enumerate_graphs(task, config, |g| found.lock().unwrap().push((canonical_form(g), g.clone())))?;
    let mut found = found.into_inner().unwrap();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found.into_iter().map(|(_, g)| g).collect())
}

/// Outcome of a cospectral-mate search.
#[derive(Clone, Debug)]
pub struct MateReport {
    pub target: Graph,
    /// Cospectral with the target, not isomorphic to it, pairwise
    /// non-isomorphic, sorted by canonical form.
    pub mates: Vec<Graph>,
    pub search_space_size: u64,
    pub elapsed: Duration,
    pub task: EnumerationTask,
}

#[derive(Serialize)]
struct MateReportJson<'a> {
    schema: u32,
    target_graph6: String,
    mates_graph6: Vec<String>,
    search_space_size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
    task: &'a EnumerationTask,
}

impl MateReport {
    pub fn to_json(&self, timing: bool) -> serde_json::Value {
        serde_json::to_value(MateReportJson {
            schema: 1,
            target_graph6: to_graph6_string(&self.target),
            mates_graph6: self.mates.iter().map(to_graph6_string).collect(),
            search_space_size: self.search_space_size,
            elapsed_ms: timing.then_some(self.elapsed.as_millis()),
            task: &self.task,
        })
        .expect("report serialises")
    }
}

/// Searches every class with the target's vertex and edge counts.
pub fn find_cospectral_mates(
    target: &Graph,
    connected_only: bool,
    config: &EnumerationConfig,
) -> Result<MateReport, EnumerateError> {
    let task = EnumerationTask::new(target.n_vertices(), target.edge_count()).connected(connected_only);
    find_cospectral_mates_in(target, &task, config)
}

/// As [`find_cospectral_mates`] over an explicit task, which must carry the
/// target's vertex and edge counts.
pub fn find_cospectral_mates_in(
    target: &Graph,
    task: &EnumerationTask,
    config: &EnumerationConfig,
) -> Result<MateReport, EnumerateError> {
    assert_eq!((task.n_vertices, task.n_edges), (target.n_vertices(), target.edge_count()));
    let start = Instant::now();
    let poly = char_poly(target);
    let triangles = target.triangle_count();
    let target_form = canonical_form(target);
    let mates = Mutex::new(Vec::new());
    let searched = enumerate_graphs(task, config, |g| {
        if g.triangle_count() != triangles || char_poly(g) != poly {
            return;
        }
        let form = canonical_form(g);
        if form != target_form {
            mates.lock().unwrap().push((form, g.clone()));
        }
    })?;
    let mut mates = mates.into_inner().unwrap();
    mates.sort_by(|a, b| a.0.cmp(&b.0));
    mates.dedup_by(|a, b| a.0 == b.0);
    Ok(MateReport {
        target: target.clone(),
        mates: mates.into_iter().map(|(_, g)| g).collect(),
        search_space_size: searched,
        elapsed: start.elapsed(),
        task: task.clone(),
    })
}

/// Exhaustive check that `F_n` has no cospectral mate with the same vertex
/// and edge counts.
pub fn verify_ds(n: usize, connected_only: bool, config: &EnumerationConfig) -> Result<MateReport, EnumerateError> {
    let target = build_friendship(n)?;
    find_cospectral_mates(&target, connected_only, config)
}

/// Connected search restricted to graphs meeting the minimum-degree lemma:
/// minimum degree 2 attained by at least `1 + ceil(radius(F_n))` vertices.
/// Presupposes the lemma, so it is never a substitute for [`verify_ds`].
pub fn verify_ds_assuming_lemma(n: usize, config: &EnumerationConfig) -> Result<MateReport, EnumerateError> {
    let target = build_friendship(n)?;
    let task = EnumerationTask::new(target.n_vertices(), target.edge_count())
        .connected(true)
        .min_degree(2)
        .min_degree_multiplicity(1 + radius_ceil(n)?);
    find_cospectral_mates_in(&target, &task, config)
}
