//! Finite undirected graphs with loops.
//!
//! Vertices are `0..n` internally; every external form (JSON, display,
//! certificates) uses `1..=n`.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {{{0}, {1}}} has an endpoint outside 1..={2}")]
    OutOfRange(usize, usize, usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    Duplicate(usize, usize),
}

/// Unordered pair `{a, b}` with `a <= b`; `a == b` is a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    pub fn new(i: usize, j: usize) -> Self {
        Edge { a: i.min(j), b: i.max(j) }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a + 1, self.b + 1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
    neighbors: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.edges.iter().map(Edge::to_string).collect();
        write!(f, "Graph(n={}, [{}])", self.n, e.join(", "))
    }
}

impl Graph {
    /// Builds a graph from 0-based endpoint pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(GraphError::OutOfRange(i + 1, j + 1, n));
            }
            if !set.insert(Edge::new(i, j)) {
                return Err(GraphError::Duplicate(i.min(j) + 1, i.max(j) + 1));
            }
        }
        Ok(Self::from_set(n, set))
    }

    /// Builds a graph from 1-based endpoint pairs.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if let Some(&(i, j)) = edges.iter().find(|(i, j)| *i == 0 || *j == 0) {
            return Err(GraphError::OutOfRange(i, j, n));
        }
        Self::new(n, edges.iter().map(|&(i, j)| (i - 1, j - 1)))
    }

    fn from_set(n: usize, edges: BTreeSet<Edge>) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        for e in &edges {
            if !e.is_loop() {
                neighbors[e.a].push(e.b);
                neighbors[e.b].push(e.a);
            }
        }
        for nb in neighbors.iter_mut() {
            nb.sort_unstable();
        }
        Graph { n, edges, neighbors }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_set(n, BTreeSet::new())
    }

    /// `C_n`: the `n`-cycle; `C_1` is a single looped vertex and `C_2` a single edge.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 1, "cycle needs at least one vertex");
        let set = (0..n).map(|k| Edge::new(k, (k + 1) % n)).collect();
        Self::from_set(n, set)
    }

    /// Complete graph without loops.
    pub fn complete(n: usize) -> Self {
        let set = (0..n).flat_map(|i| (i + 1..n).map(move |j| Edge::new(i, j))).collect();
        Self::from_set(n, set)
    }

    /// Perfect matching `{1,2}, {3,4}, …` on `2p` vertices.
    pub fn matching(p: usize) -> Self {
        let set = (0..p).map(|k| Edge::new(2 * k, 2 * k + 1)).collect();
        Self::from_set(2 * p, set)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&Edge::new(i, j))
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.has_edge(i, i)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Neighbours other than `v` itself, sorted.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Vertices adjacent to `v`, counting `v` itself when it carries a loop.
    pub fn adjacent(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let own = self.has_loop(v).then_some(v);
        own.into_iter().chain(self.neighbors[v].iter().copied())
    }

    /// Vertex is touched by no edge at all (loops included).
    pub fn is_isolated(&self, v: usize) -> bool {
        self.neighbors[v].is_empty() && !self.has_loop(v)
    }

    /// Connected components, each sorted, ordered by lowest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.neighbors[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A component is bipartite when it has a proper 2-colouring; a loop
    /// rules that out.
    pub fn is_bipartite_component(&self, comp: &[usize]) -> bool {
        let mut colour = vec![None; self.n];
        for &s in comp {
            if self.has_loop(s) {
                return false;
            }
        }
        colour[comp[0]] = Some(false);
        let mut queue = VecDeque::from([comp[0]]);
        while let Some(v) = queue.pop_front() {
            let c = colour[v].expect("queued vertices are coloured");
            for &w in &self.neighbors[v] {
                match colour[w] {
                    None => {
                        colour[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }

    pub fn bipartite_component_count(&self) -> usize {
        self.components().iter().filter(|c| self.is_bipartite_component(c)).count()
    }

    /// Image under the vertex map `v ↦ perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let set = self.edges.iter().map(|e| Edge::new(perm[e.a], perm[e.b])).collect();
        Self::from_set(self.n, set)
    }

    /// Disjoint union, vertices of `other` shifted after those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let set = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|e| Edge::new(e.a + shift, e.b + shift)))
            .collect();
        Self::from_set(self.n + other.n, set)
    }

    /// Vertex pairs in the fixed order used by [`Graph::encoding`].
    pub fn pair_order(n: usize, loops: bool) -> Vec<Edge> {
        (0..n)
            .flat_map(|i| (i..n).filter(move |&j| loops || j != i).map(move |j| Edge::new(i, j)))
            .collect()
    }

    /// Bitmask over [`Graph::pair_order`]; `None` if a loop is present when
    /// `loops` is false.
    pub fn encoding(&self, loops: bool) -> Option<u64> {
        let order = Self::pair_order(self.n, loops);
        assert!(order.len() <= 64, "encoding supports at most 64 vertex pairs");
        let mut bits = 0u64;
        for e in &self.edges {
            let pos = order.iter().position(|o| o == e)?;
            bits |= 1 << pos;
        }
        Some(bits)
    }

    pub fn from_encoding(n: usize, bits: u64, loops: bool) -> Graph {
        let order = Self::pair_order(n, loops);
        let set = order.into_iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, e)| e).collect();
        Self::from_set(n, set)
    }

    /// All labeled graphs on `n` vertices (with or without loops).
    pub fn enumerate(n: usize, loops: bool) -> impl Iterator<Item = Graph> {
        let pairs = Self::pair_order(n, loops).len();
        assert!(pairs < 64, "too many vertex pairs to enumerate");
        (0..1u64 << pairs).map(move |bits| Self::from_encoding(n, bits, loops))
    }
}

/// JSON form: `{"n": int, "edges": [[i, j], ...]}` with 1-based `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n, edges: g.edges.iter().map(|e| [e.a + 1, e.b + 1]).collect() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;
    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        let pairs: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_one_based(j.n, &pairs)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Graph::try_from(GraphJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
