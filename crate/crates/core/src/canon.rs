//! Canonical labelling by partition refinement and backtracking.
//!
//! The search tree follows the usual individualise-refine scheme: refine the
//! ordered partition to an equitable one, individualise each vertex of the
//! first smallest non-trivial cell, recurse until the partition is discrete.
//! Every discrete leaf yields a relabelled adjacency matrix; the smallest one
//! is the canonical form. Two leaves with the same matrix give an
//! automorphism, which is used both to jump back to the point where the two
//! leaf paths diverge and to skip children in the same orbit of the
//! pointwise stabiliser of the current path.
//!
//! There is no fixed vertex limit: the packed rows grow with `n`. Search cost
//! is driven by symmetry rather than size; graphs with large automorphism
//! groups (friendship graphs up to `F_64`, 129 vertices) are handled through
//! automorphism pruning.

use std::collections::VecDeque;

use crate::graph::{bits, words_for, Graph};

/// A relabelling-invariant key: the adjacency rows of the canonically
/// relabelled graph. Equal keys iff isomorphic graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Key bytes: vertex count (little-endian u64) followed by the rows.
    pub fn bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 * (1 + self.rows.len()));
        out.extend_from_slice(&(self.n as u64).to_le_bytes());
        for w in &self.rows {
            out.extend_from_slice(&w.to_be_bytes());
        }
        out
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        let words = words_for(self.n);
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in bits(&self.rows[u * words..(u + 1) * words]) {
                if v > u {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, &edges).expect("canonical rows describe a simple graph")
    }
}

/// Result of a canonical labelling run.
#[derive(Clone, Debug)]
pub struct CanonicalLabeling {
    pub form: CanonicalForm,
    /// `order[p]` is the vertex placed at canonical position `p`.
    order: Vec<usize>,
    /// Inverse of `order`.
    position: Vec<usize>,
    generators: Vec<Vec<usize>>,
}

impl CanonicalLabeling {
    pub fn position_of(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn vertex_at(&self, p: usize) -> usize {
        self.order[p]
    }

    /// Automorphisms discovered during the search, as vertex maps. They
    /// generate a subgroup of the automorphism group (usually all of it).
    pub fn automorphisms(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Orbits of the group generated by [`Self::automorphisms`], as a
    /// representative per vertex.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.position.len());
        for g in &self.generators {
            for (v, &w) in g.iter().enumerate() {
                uf.union(v, w);
            }
        }
        (0..self.position.len()).map(|v| uf.find(v)).collect()
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

pub fn canonical_labeling(g: &Graph) -> CanonicalLabeling {
    let n = g.n_vertices();
    let mut root = Partition::unit(n);
    root.refine(g, (0..n.min(1)).collect());
    let mut search = Search { g, first: None, best: None, generators: Vec::new() };
    let mut path = Vec::new();
    search.descend(root, &mut path);
    let best = search.best.expect("search reaches at least one leaf");
    let mut position = vec![0; n];
    for (p, &v) in best.order.iter().enumerate() {
        position[v] = p;
    }
    CanonicalLabeling {
        form: CanonicalForm { n, rows: best.cert },
        order: best.order,
        position,
        generators: search.generators,
    }
}

/// Isomorphism test by canonical-form equality, after cheap invariants.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n_vertices() != b.n_vertices() || a.edge_count() != b.edge_count() {
        return false;
    }
    if a.degree_sequence().sorted_desc() != b.degree_sequence().sorted_desc() {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

/// Ordered partition of the vertex set. Cells are contiguous runs of `lab`
/// and are identified by their start position.
#[derive(Clone, Debug)]
struct Partition {
    lab: Vec<usize>,
    /// Cell length, meaningful only at cell starts.
    len: Vec<usize>,
    /// Start of the cell holding each vertex.
    cell_of: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        let mut len = vec![0; n];
        if n > 0 {
            len[0] = n;
        }
        Partition { lab: (0..n).collect(), len, cell_of: vec![0; n], cells: n.min(1) }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// First cell of minimum size among the non-singletons.
    fn target_cell(&self) -> usize {
        let n = self.lab.len();
        let mut best = None;
        let mut c = 0;
        while c < n {
            let l = self.len[c];
            if l > 1 && best.is_none_or(|(_, bl)| l < bl) {
                best = Some((c, l));
            }
            c += l;
        }
        best.expect("non-discrete partition has a non-singleton cell").0
    }

    /// Splits `v` off the front of its cell; returns the new singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let c = self.cell_of[v];
        let l = self.len[c];
        debug_assert!(l > 1);
        let i = self.lab[c..c + l].iter().position(|&x| x == v).unwrap() + c;
        self.lab.swap(c, i);
        self.len[c] = 1;
        self.len[c + 1] = l - 1;
        for &x in &self.lab[c + 1..c + l] {
            self.cell_of[x] = c + 1;
        }
        self.cells += 1;
        c
    }

    /// Refines until every cell is equitable with respect to every splitter
    /// taken from the queue. Only positions and neighbour counts steer the
    /// process, so the result commutes with relabelling.
    fn refine(&mut self, g: &Graph, initial: Vec<usize>) {
        let n = self.lab.len();
        let words = g.words_per_row();
        let mut queued = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::with_capacity(n);
        for s in initial {
            queued[s] = true;
            queue.push_back(s);
        }
        let mut splitter = vec![0u64; words];
        let mut count = vec![0usize; n];
        while let Some(s) = queue.pop_front() {
            queued[s] = false;
            if self.is_discrete() {
                break;
            }
            splitter.iter_mut().for_each(|w| *w = 0);
            for &v in &self.lab[s..s + self.len[s]] {
                splitter[v / 64] |= 1 << (v % 64);
            }
            let mut c = 0;
            while c < n {
                let l = self.len[c];
                let end = c + l;
                if l > 1 {
                    let mut uniform = true;
                    let mut first = None;
                    for &v in &self.lab[c..end] {
                        let k: usize = g.row(v).iter().zip(&splitter).map(|(a, b)| (a & b).count_ones() as usize).sum();
                        count[v] = k;
                        match first {
                            None => first = Some(k),
                            Some(f) if f != k => uniform = false,
                            _ => {}
                        }
                    }
                    if !uniform {
                        self.lab[c..end].sort_unstable_by_key(|&v| count[v]);
                        let mut f = c;
                        while f < end {
                            let k = count[self.lab[f]];
                            let mut e = f + 1;
                            while e < end && count[self.lab[e]] == k {
                                e += 1;
                            }
                            self.len[f] = e - f;
                            for &v in &self.lab[f..e] {
                                self.cell_of[v] = f;
                            }
                            if f != c {
                                self.cells += 1;
                            }
                            if !queued[f] {
                                queued[f] = true;
                                queue.push_back(f);
                            }
                            f = e;
                        }
                    }
                }
                c = end;
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Leaf {
    order: Vec<usize>,
    cert: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'g> {
    g: &'g Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn descend(&mut self, part: Partition, path: &mut Vec<usize>) -> Option<usize> {
        if part.is_discrete() {
            return self.leaf(part.lab, path);
        }
        let depth = path.len();
        let start = part.target_cell();
        let candidates: Vec<usize> = part.lab[start..start + part.len[start]].to_vec();
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, UnionFind)> = None;
        for &w in &candidates {
            if !explored.is_empty() && !self.generators.is_empty() {
                let stale = orbits.as_ref().is_none_or(|(seen, _)| *seen != self.generators.len());
                if stale {
                    orbits = Some((self.generators.len(), self.stabilizer_orbits(path)));
                }
                let uf = &mut orbits.as_mut().unwrap().1;
                if explored.iter().any(|&x| uf.find(x) == uf.find(w)) {
                    continue;
                }
            }
            explored.push(w);
            let mut child = part.clone();
            let s = child.individualize(w);
            child.refine(self.g, vec![s]);
            path.push(w);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn stabilizer_orbits(&self, path: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.g.n_vertices());
        for gen in &self.generators {
            if path.iter().all(|&p| gen[p] == p) {
                for (v, &w) in gen.iter().enumerate() {
                    uf.union(v, w);
                }
            }
        }
        uf
    }

    fn leaf(&mut self, order: Vec<usize>, path: &[usize]) -> Option<usize> {
        let cert = certificate(self.g, &order);
        let Some(first) = &self.first else {
            let leaf = Leaf { order, cert, path: path.to_vec() };
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };
        let best = self.best.as_ref().unwrap();
        let matched = if cert == first.cert {
            Some(first)
        } else if cert == best.cert {
            Some(best)
        } else {
            None
        };
        if let Some(other) = matched {
            let n = order.len();
            let mut gen = vec![0; n];
            for p in 0..n {
                gen[other.order[p]] = order[p];
            }
            let level = other.path.iter().zip(path).take_while(|(a, b)| a == b).count();
            if gen.iter().enumerate().any(|(v, &w)| v != w) {
                self.generators.push(gen);
            }
            return Some(level);
        }
        if cert < best.cert {
            self.best = Some(Leaf { order, cert, path: path.to_vec() });
        }
        None
    }
}

/// Rows of the graph relabelled so that `order[p]` becomes vertex `p`.
fn certificate(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let words = g.words_per_row();
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let mut rows = vec![0u64; n * words];
    for (p, &v) in order.iter().enumerate() {
        let row = &mut rows[p * words..(p + 1) * words];
        for u in g.neighbors(v) {
            let q = position[u];
            row[q / 64] |= 1 << (q % 64);
        }
    }
    rows
}

#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index wins so representatives are deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
