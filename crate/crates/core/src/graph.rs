//! Simple undirected graphs stored as bit-packed adjacency rows.
//!
//! Row `v` is a run of `words_per_row` machine words whose set bits are the
//! neighbours of `v`. The matrix is kept symmetric with a zero diagonal; the
//! only way to mutate one is through [`GraphBuilder`].

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("operation requires at least one vertex")]
    Empty,
    #[error("permutation of length {got} does not match {expected} vertices")]
    BadPermutation { expected: usize, got: usize },
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs collapse; a pair
    /// with equal endpoints or an endpoint `>= n` is rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.insert(u, v);
            }
        }
        b.build()
    }

    /// The cycle `C_n`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            b.insert(u, (u + 1) % n);
        }
        b.build()
    }

    pub fn path(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for u in 1..n {
            b.insert(u - 1, u);
        }
        b.build()
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Graph {
        let mut b = GraphBuilder::new(leaves + 1);
        for v in 1..=leaves {
            b.insert(0, v);
        }
        b.build()
    }

    pub fn petersen() -> Graph {
        let mut b = GraphBuilder::new(10);
        for i in 0..5 {
            b.insert(i, (i + 1) % 5);
            b.insert(i, i + 5);
            b.insert(5 + i, 5 + (i + 2) % 5);
        }
        b.build()
    }

    #[inline]
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        let total: u32 = self.rows.iter().map(|w| w.count_ones()).sum();
        total as usize / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Bit-packed neighbourhood of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    /// Edges as `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence((0..self.n).map(|v| self.degree(v)).collect())
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of common neighbours of `u` and `v`.
    #[inline]
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u).iter().zip(self.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Unordered triples inducing a triangle.
    pub fn triangle_count(&self) -> usize {
        // each triangle is counted once per edge
        let per_edge: usize = self.edges().map(|(u, v)| self.common_neighbors(u, v)).sum();
        per_edge / 3
    }

    /// Breadth-first search from vertex 0.
    pub fn is_connected(&self) -> Result<bool, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(self.component_count() == 1)
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Places `other` on the index range after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut b = GraphBuilder::new(self.n + other.n);
        for (u, v) in self.edges() {
            b.insert(u, v);
        }
        for (u, v) in other.edges() {
            b.insert(self.n + u, self.n + v);
        }
        b.build()
    }

    /// `copies` disjoint copies of `self`.
    pub fn repeat(&self, copies: usize) -> Graph {
        (0..copies).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }

    /// The graph whose vertex `perm[v]` plays the role of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::BadPermutation { expected: self.n, got: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::BadPermutation { expected: self.n, got: perm.len() });
            }
        }
        let mut b = GraphBuilder::new(self.n);
        for (u, v) in self.edges() {
            b.insert(perm[u], perm[v]);
        }
        Ok(b.build())
    }

    pub(crate) fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.set(u, v, true);
        g
    }

    pub(crate) fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.set(u, v, false);
        g
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        debug_assert!(u != v && u < self.n && v < self.n);
        for (a, b) in [(u, v), (v, u)] {
            let w = &mut self.rows[a * self.words + b / 64];
            if on {
                *w |= 1 << (b % 64);
            } else {
                *w &= !(1 << (b % 64));
            }
        }
    }

    /// Dense 0/1 adjacency matrix in row-major order.
    pub fn adjacency_f64(&self) -> Vec<f64> {
        let mut a = vec![0.0; self.n * self.n];
        for (u, v) in self.edges() {
            a[u * self.n + v] = 1.0;
            a[v * self.n + u] = 1.0;
        }
        a
    }

    fn check_invariants(&self) {
        for u in 0..self.n {
            assert!(!self.has_edge(u, u), "self-loop at {u}");
            for v in self.neighbors(u) {
                assert!(v < self.n && self.has_edge(v, u), "asymmetric adjacency at ({u}, {v})");
            }
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Iterates the set bits of a packed bitset.
pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Mutable staging area for a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    graph: Graph,
}

impl GraphBuilder {
    pub fn new(n: usize) -> GraphBuilder {
        let words = words_for(n);
        GraphBuilder { graph: Graph { n, words, rows: vec![0; n * words] } }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self, GraphError> {
        let n = self.graph.n;
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.graph.set(u, v, true);
        Ok(self)
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        self.graph.set(u, v, true);
    }

    pub fn build(self) -> Graph {
        self.graph.check_invariants();
        self.graph
    }
}

/// Vertex degrees indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn min(&self) -> Option<usize> {
        self.0.iter().copied().min()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.iter().copied().max()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn count(&self, degree: usize) -> usize {
        self.0.iter().filter(|&&d| d == degree).count()
    }

    /// Non-increasing copy of the degrees.
    pub fn sorted_desc(&self) -> Vec<usize> {
        let mut d = self.0.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Distinct degrees with multiplicities, ascending.
    pub fn histogram(&self) -> Vec<(usize, usize)> {
        let mut d = self.0.clone();
        d.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for x in d {
            match out.last_mut() {
                Some((deg, c)) if *deg == x => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.histogram().iter().rev().map(|(d, c)| format!("{d}x{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
