//! Cochain complex `C^0 → C^1` of a finite graph, with coefficients in the
//! multiplicative group of nonzero rationals or in `Z/2`.
//!
//! The differential of a vertex function `g` is `dg({i, j}) = g(i) ⋆ g(j)`,
//! so loops receive `g(i)²` over the rationals and `0` over `Z/2`. Two edge
//! functions are cohomologous when they differ by such a coboundary, which
//! for Gram data means they describe the same point set up to rescaling of
//! the chosen lift.

use crate::forms::SymMatrix;
use crate::graph::{Edge, Graph};
use crate::rational::{self, JsonRational, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("cochains live on different graphs")]
    GraphMismatch,
    #[error("edge {0} has no value")]
    MissingEdge(Edge),
    #[error("{0} is not an edge of the graph")]
    UnknownEdge(Edge),
    #[error("value on {0} is not a unit of the coefficient group")]
    NotAUnit(Edge),
    #[error("expected {expected} vertex values, got {got}")]
    VertexCount { expected: usize, got: usize },
    #[error("malformed edge key {0:?}")]
    BadKey(String),
}

/// Abelian coefficient group, written multiplicatively.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn identity() -> Self;
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_unit(&self) -> bool;
}

/// `Z/2`; `Z2(true)` is the nontrivial element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Z2(pub bool);

impl Coefficient for Z2 {
    fn identity() -> Self {
        Z2(false)
    }
    fn op(&self, other: &Self) -> Self {
        Z2(self.0 ^ other.0)
    }
    fn inverse(&self) -> Self {
        *self
    }
    fn is_unit(&self) -> bool {
        true
    }
}

/// Nonzero rationals under multiplication.
impl Coefficient for Rational {
    fn identity() -> Self {
        Rational::one()
    }
    fn op(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Self {
        self.recip()
    }
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
}

/// Coefficients for dimension counts: the additive reals or `Z/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Real,
    Z2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain0<G> {
    graph: Graph,
    values: Vec<G>,
}

impl<G: Coefficient> Cochain0<G> {
    pub fn new(graph: &Graph, values: Vec<G>) -> Result<Self, CohomologyError> {
        if values.len() != graph.n() {
            return Err(CohomologyError::VertexCount { expected: graph.n(), got: values.len() });
        }
        Ok(Cochain0 { graph: graph.clone(), values })
    }

    pub fn constant(graph: &Graph, v: G) -> Self {
        Cochain0 { graph: graph.clone(), values: vec![v; graph.n()] }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn values(&self) -> &[G] {
        &self.values
    }

    pub fn get(&self, v: usize) -> &G {
        &self.values[v]
    }

    /// Coboundary `dg`.
    pub fn differential(&self) -> Cochain1<G> {
        differential(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain1<G> {
    graph: Graph,
    values: BTreeMap<Edge, G>,
}

impl<G: Coefficient> Cochain1<G> {
    pub fn new(graph: &Graph, values: BTreeMap<Edge, G>) -> Result<Self, CohomologyError> {
        for e in graph.edges() {
            match values.get(e) {
                None => return Err(CohomologyError::MissingEdge(*e)),
                Some(v) if !v.is_unit() => return Err(CohomologyError::NotAUnit(*e)),
                Some(_) => {}
            }
        }
        if let Some(e) = values.keys().find(|e| !graph.has_edge(e.endpoints().0, e.endpoints().1)) {
            return Err(CohomologyError::UnknownEdge(*e));
        }
        Ok(Cochain1 { graph: graph.clone(), values })
    }

    pub fn from_fn(graph: &Graph, mut f: impl FnMut(Edge) -> G) -> Result<Self, CohomologyError> {
        let values = graph.edges().map(|&e| (e, f(e))).collect();
        Self::new(graph, values)
    }

    pub fn constant(graph: &Graph, v: G) -> Self {
        Self::from_fn(graph, |_| v.clone()).expect("constant value must be a unit")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn get(&self, e: &Edge) -> &G {
        &self.values[e]
    }

    pub fn value(&self, i: usize, j: usize) -> Option<&G> {
        self.values.get(&Edge::new(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &G)> + '_ {
        self.values.iter()
    }

    /// Pointwise product.
    pub fn op(&self, other: &Self) -> Result<Self, CohomologyError> {
        if self.graph != other.graph {
            return Err(CohomologyError::GraphMismatch);
        }
        let values = self.values.iter().map(|(e, v)| (*e, v.op(&other.values[e]))).collect();
        Ok(Cochain1 { graph: self.graph.clone(), values })
    }

    pub fn inverse(&self) -> Self {
        let values = self.values.iter().map(|(e, v)| (*e, v.inverse())).collect();
        Cochain1 { graph: self.graph.clone(), values }
    }

    /// Gauge action `f · dg`.
    pub fn gauge(&self, g: &Cochain0<G>) -> Result<Self, CohomologyError> {
        self.op(&differential(g))
    }

    /// Replaces the value on one edge.
    pub fn with_value(&self, e: Edge, v: G) -> Result<Self, CohomologyError> {
        if !self.values.contains_key(&e) {
            return Err(CohomologyError::UnknownEdge(e));
        }
        if !v.is_unit() {
            return Err(CohomologyError::NotAUnit(e));
        }
        let mut out = self.clone();
        out.values.insert(e, v);
        Ok(out)
    }
}

pub fn differential<G: Coefficient>(g: &Cochain0<G>) -> Cochain1<G> {
    let values = g
        .graph
        .edges()
        .map(|e| {
            let (i, j) = e.endpoints();
            (*e, g.values[i].op(&g.values[j]))
        })
        .collect();
    Cochain1 { graph: g.graph.clone(), values }
}

/// `dim H^0`: bipartite components over the reals, all components over `Z/2`.
pub fn h0_dimension(graph: &Graph, coefficients: Coefficients) -> usize {
    match coefficients {
        Coefficients::Real => graph.bipartite_component_count(),
        Coefficients::Z2 => graph.components().len(),
    }
}

/// `dim H^1 = |A| - |S| + dim H^0`.
pub fn h1_dimension(graph: &Graph, coefficients: Coefficients) -> usize {
    graph.edge_count() + h0_dimension(graph, coefficients) - graph.n()
}

/// Breadth-first spanning forest with its fundamental cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    /// Tree edge leading to each non-root vertex.
    pub parent: Vec<Option<(usize, Edge)>>,
    pub depth: Vec<usize>,
    /// Component root of each vertex.
    pub root: Vec<usize>,
    pub roots: Vec<usize>,
    pub tree_edges: BTreeSet<Edge>,
    /// One cycle per non-forest edge; that edge comes first in its cycle.
    pub cycles: Vec<Vec<Edge>>,
}

impl CycleBasis {
    fn path_to_root(&self, mut v: usize) -> Vec<(usize, Edge)> {
        let mut out = Vec::new();
        while let Some((p, e)) = self.parent[v] {
            out.push((v, e));
            v = p;
        }
        out
    }

    pub fn is_tree_edge(&self, e: &Edge) -> bool {
        self.tree_edges.contains(e)
    }

    pub fn non_tree_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.cycles.iter().map(|c| c[0])
    }
}

/// Deterministic: BFS from the lowest vertex of each component, neighbours in
/// increasing order, non-forest edges in lexicographic order.
pub fn cycle_basis(graph: &Graph) -> CycleBasis {
    let n = graph.n();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut root = vec![usize::MAX; n];
    let mut roots = Vec::new();
    let mut tree_edges = BTreeSet::new();
    for s in 0..n {
        if root[s] != usize::MAX {
            continue;
        }
        roots.push(s);
        root[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in graph.neighbors(v) {
                if root[w] == usize::MAX {
                    root[w] = s;
                    depth[w] = depth[v] + 1;
                    let e = Edge::new(v, w);
                    parent[w] = Some((v, e));
                    tree_edges.insert(e);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut basis = CycleBasis { parent, depth, root, roots, tree_edges, cycles: Vec::new() };
    let mut cycles = Vec::new();
    for e in graph.edges() {
        if basis.tree_edges.contains(e) {
            continue;
        }
        let (i, j) = e.endpoints();
        let mut cycle = vec![*e];
        if i != j {
            let pi = basis.path_to_root(i);
            let pj = basis.path_to_root(j);
            // strip the common tail above the lowest common ancestor
            let common = pi.iter().rev().zip(pj.iter().rev()).take_while(|(a, b)| a == b).count();
            cycle.extend(pi[..pi.len() - common].iter().map(|(_, e)| *e));
            cycle.extend(pj[..pj.len() - common].iter().rev().map(|(_, e)| *e));
        }
        cycles.push(cycle);
    }
    basis.cycles = cycles;
    basis
}

/// Decides whether `f = dg`; on success returns the witness `g` obtained by
/// propagating along the spanning forest from `g(root) = 0`.
pub fn is_sign_coboundary(f: &Cochain1<Z2>) -> Option<Cochain0<Z2>> {
    let graph = f.graph();
    let basis = cycle_basis(graph);
    for cycle in &basis.cycles {
        if cycle[0].is_loop() && f.get(&cycle[0]).0 {
            return None;
        }
        let sum = cycle.iter().fold(Z2(false), |acc, e| acc.op(f.get(e)));
        if sum.0 {
            return None;
        }
    }
    let mut values = vec![Z2(false); graph.n()];
    let mut order: Vec<usize> = (0..graph.n()).collect();
    order.sort_by_key(|&v| basis.depth[v]);
    for v in order {
        if let Some((p, e)) = basis.parent[v] {
            values[v] = values[p].op(f.get(&e));
        }
    }
    let g = Cochain0 { graph: graph.clone(), values };
    debug_assert_eq!(differential(&g), *f);
    Some(g)
}

/// Edgewise sign: positive ↦ 0, negative ↦ 1.
pub fn restrict_sign_part(f: &Cochain1<Rational>) -> Cochain1<Z2> {
    let values = f.values.iter().map(|(e, v)| (*e, Z2(v.is_negative()))).collect();
    Cochain1 { graph: f.graph.clone(), values }
}

/// Symmetric matrix with `-f({i, j})` at `(i, j)` on edges and zero elsewhere.
pub fn mat(f: &Cochain1<Rational>) -> SymMatrix {
    let mut m = SymMatrix::zeros(f.graph.n());
    for (e, v) in &f.values {
        let (i, j) = e.endpoints();
        m.set(i, j, -v);
    }
    m
}

/// Gauge `g` relating two cohomologous rational cochains, in split form
/// `g(v) = c_v · t_C^{ε_v}` where `t_C² = r_C` for the component `C` of `v`.
/// When every `r_C` is a rational square the gauge is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeWitness {
    pub coefficient: Vec<Rational>,
    pub exponent: Vec<i8>,
    pub component: Vec<usize>,
    pub t_squared: Vec<Rational>,
}

impl GaugeWitness {
    /// `g` as rationals, when each `t_C` can be taken rational.
    pub fn rational_gauge(&self) -> Option<Vec<Rational>> {
        let roots: Option<Vec<Rational>> = self.t_squared.iter().map(rational::sqrt_exact).collect();
        let roots = roots?;
        Some(
            self.coefficient
                .iter()
                .zip(&self.exponent)
                .zip(&self.component)
                .map(|((c, &eps), &comp)| if eps > 0 { c * &roots[comp] } else { c / &roots[comp] })
                .collect(),
        )
    }

    /// Exact check that `f2 = f1 · dg` edge by edge, without square roots.
    pub fn verify(&self, f1: &Cochain1<Rational>, f2: &Cochain1<Rational>) -> bool {
        if f1.graph != f2.graph || self.coefficient.len() != f1.graph.n() {
            return false;
        }
        if self.t_squared.iter().any(|r| !r.is_positive()) {
            return false;
        }
        f1.graph.edges().all(|e| {
            let (i, j) = e.endpoints();
            let mut g = &self.coefficient[i] * &self.coefficient[j];
            let r = &self.t_squared[self.component[i]];
            match self.exponent[i] + self.exponent[j] {
                2 => g *= r,
                -2 => g /= r,
                _ => {}
            }
            g * f1.get(e) == *f2.get(e)
        })
    }
}

/// Decides `[f1] = [f2]` in `H^1(G, Q*)`, i.e. whether `f2 = f1 · dg` for a
/// nonzero real gauge `g`, returning such a gauge.
///
/// Along the spanning forest every `g(v)` is forced to be `c_v · t^{ε_v}`
/// with `ε_v = (-1)^{depth}` and `t = g(root)`. A closing edge between
/// vertices of equal parity pins `t²`; one of opposite parity pins a
/// rational number exactly.
pub fn classes_equal(
    f1: &Cochain1<Rational>,
    f2: &Cochain1<Rational>,
) -> Result<Option<GaugeWitness>, CohomologyError> {
    if f1.graph != f2.graph {
        return Err(CohomologyError::GraphMismatch);
    }
    let graph = &f1.graph;
    let n = graph.n();
    let basis = cycle_basis(graph);
    let ratio = |e: &Edge| f2.get(e) / f1.get(e);

    let mut coefficient = vec![Rational::one(); n];
    let mut exponent = vec![1i8; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| basis.depth[v]);
    for &v in &order {
        if let Some((p, e)) = basis.parent[v] {
            coefficient[v] = ratio(&e) / &coefficient[p];
            exponent[v] = -exponent[p];
        }
    }
    let component: Vec<usize> = (0..n)
        .map(|v| basis.roots.iter().position(|&r| r == basis.root[v]).expect("every vertex has a root"))
        .collect();
    let mut t_squared: Vec<Option<Rational>> = vec![None; basis.roots.len()];
    for e in basis.non_tree_edges() {
        let (i, j) = e.endpoints();
        let c = &coefficient[i] * &coefficient[j];
        let h = ratio(&e);
        let required = match exponent[i] + exponent[j] {
            0 => {
                if c != h {
                    return Ok(None);
                }
                continue;
            }
            2 => h / c,
            _ => c / h,
        };
        if !required.is_positive() {
            return Ok(None);
        }
        let slot = &mut t_squared[component[i]];
        match slot {
            Some(r) if *r != required => return Ok(None),
            Some(_) => {}
            None => *slot = Some(required),
        }
    }
    let witness = GaugeWitness {
        coefficient,
        exponent,
        component,
        t_squared: t_squared.into_iter().map(|r| r.unwrap_or_else(Rational::one)).collect(),
    };
    debug_assert!(witness.verify(f1, f2));
    Ok(Some(witness))
}

/// JSON form of a rational 1-cochain: graph fields plus `"values": {"i-j": "p/q"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub values: BTreeMap<String, JsonRational>,
}

impl From<&Cochain1<Rational>> for CochainJson {
    fn from(f: &Cochain1<Rational>) -> Self {
        let g = crate::graph::GraphJson::from(&f.graph);
        let values = f.values.iter().map(|(e, v)| (e.to_string(), JsonRational(v.clone()))).collect();
        CochainJson { n: g.n, edges: g.edges, values }
    }
}

impl CochainJson {
    pub fn into_cochain(self) -> Result<Cochain1<Rational>, Box<dyn std::error::Error + Send + Sync>> {
        let graph = Graph::try_from(crate::graph::GraphJson { n: self.n, edges: self.edges })?;
        let mut values = BTreeMap::new();
        for (k, v) in self.values {
            let (a, b) = k.split_once('-').ok_or_else(|| CohomologyError::BadKey(k.clone()))?;
            let parse = |s: &str| s.trim().parse::<usize>().ok().filter(|&x| x >= 1);
            let (Some(i), Some(j)) = (parse(a), parse(b)) else {
                return Err(CohomologyError::BadKey(k).into());
            };
            values.insert(Edge::new(i - 1, j - 1), v.0);
        }
        Ok(Cochain1::new(&graph, values)?)
    }
}
