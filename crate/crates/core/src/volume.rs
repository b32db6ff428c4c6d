//! Volume finiteness of the convex hull of a simplex.
//!
//! The hull has infinite volume iff the Gram graph has a non-empty stable
//! set `I` (no internal edges, no loops) with `|I| >= |∂I|`. Equivalently,
//! some nonzero `p` in the cone `P = {p : p_i + p_j <= 0 on every edge}` has
//! `Σ p_k >= 0`, and such a `p` can be taken in `{-1, 0, 1}^n`.
//!
//! Three independent deciders live here: a branch-and-bound search over
//! stable sets, an exhaustive search over integer weight vectors, and an
//! exact LP test that `σ < 0` on `P \ {0}`, through the slices `P ∩ {σ = ±1}`.

use crate::graph::Graph;
use crate::lp::{self, Optimum};
use crate::rational::{int, Rational};
use crate::simplex::MarkedSimplex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

pub const STABLE_SEARCH_LIMIT: usize = 30;
pub const WEIGHT_ORACLE_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VolumeError {
    #[error("{what} supports at most {limit} vertices, got {n}")]
    Capacity { what: &'static str, n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableSetCertificate {
    pub inner: Vec<usize>,
    pub boundary: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightCertificate {
    pub weights: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeVerdict {
    pub finite: bool,
    pub stable: Option<StableSetCertificate>,
    pub weights: Option<WeightCertificate>,
}

impl VolumeVerdict {
    pub fn finite() -> Self {
        VolumeVerdict { finite: true, stable: None, weights: None }
    }

    fn infinite(stable: StableSetCertificate, weights: WeightCertificate) -> Self {
        VolumeVerdict { finite: false, stable: Some(stable), weights: Some(weights) }
    }
}

/// Vertices outside `set` adjacent to a member of `set`.
pub fn boundary(graph: &Graph, set: &[usize]) -> Vec<usize> {
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    let out: BTreeSet<usize> =
        set.iter().flat_map(|&v| graph.neighbors(v).iter().copied()).filter(|u| !inside.contains(u)).collect();
    out.into_iter().collect()
}

/// `+1` on `I`, `-1` on `∂I`, `0` elsewhere.
pub fn weights_from_stable_set(graph: &Graph, inner: &[usize]) -> WeightCertificate {
    let mut w = vec![0i8; graph.n()];
    for &v in inner {
        w[v] = 1;
    }
    for v in boundary(graph, inner) {
        w[v] = -1;
    }
    WeightCertificate { weights: w }
}

/// `I = {k : p_k = 1}` for a weight certificate.
pub fn stable_set_from_weights(graph: &Graph, w: &WeightCertificate) -> StableSetCertificate {
    let inner: Vec<usize> = (0..graph.n()).filter(|&k| w.weights[k] == 1).collect();
    let boundary = boundary(graph, &inner);
    StableSetCertificate { inner, boundary }
}

/// Re-checks a stable-set certificate against a raw edge list (0-based, loops as `(i, i)`).
pub fn verify_stable_certificate(n: usize, edges: &[(usize, usize)], cert: &StableSetCertificate) -> Result<(), String> {
    if cert.inner.is_empty() {
        return Err("stable set is empty".into());
    }
    if cert.inner.iter().chain(&cert.boundary).any(|&v| v >= n) {
        return Err("vertex out of range".into());
    }
    let inner: BTreeSet<usize> = cert.inner.iter().copied().collect();
    let mut bd = BTreeSet::new();
    for &(a, b) in edges {
        match (inner.contains(&a), inner.contains(&b)) {
            (true, true) => return Err(format!("edge {}-{} lies inside the stable set", a + 1, b + 1)),
            (true, false) => {
                bd.insert(b);
            }
            (false, true) => {
                bd.insert(a);
            }
            (false, false) => {}
        }
    }
    let claimed: BTreeSet<usize> = cert.boundary.iter().copied().collect();
    if bd != claimed {
        return Err("boundary does not match the neighbourhood of the stable set".into());
    }
    if inner.len() < bd.len() {
        return Err(format!("|I| = {} < |∂I| = {}", inner.len(), bd.len()));
    }
    Ok(())
}

/// Re-checks a weight certificate against a raw edge list (0-based, loops as `(i, i)`).
pub fn verify_weight_certificate(n: usize, edges: &[(usize, usize)], cert: &WeightCertificate) -> Result<(), String> {
    let w = &cert.weights;
    if w.len() != n {
        return Err("weight vector has the wrong length".into());
    }
    if w.iter().any(|&x| !(-1..=1).contains(&x)) {
        return Err("weights must lie in {-1, 0, 1}".into());
    }
    if w.iter().all(|&x| x == 0) {
        return Err("weight vector is zero".into());
    }
    for &(a, b) in edges {
        if i32::from(w[a]) + i32::from(w[b]) > 0 {
            return Err(format!("constraint on edge {}-{} violated", a + 1, b + 1));
        }
    }
    let sigma: i32 = w.iter().map(|&x| i32::from(x)).sum();
    if sigma < 0 {
        return Err(format!("weight sum {sigma} is negative"));
    }
    Ok(())
}

fn raw_edges(graph: &Graph) -> Vec<(usize, usize)> {
    graph.edges().map(|e| e.endpoints()).collect()
}

/// Both certificates of an infinite verdict pass their verifiers and agree.
pub fn verify_verdict(graph: &Graph, verdict: &VolumeVerdict) -> Result<(), String> {
    let edges = raw_edges(graph);
    match (verdict.finite, &verdict.stable, &verdict.weights) {
        (true, None, None) => Ok(()),
        (false, Some(s), Some(w)) => {
            verify_stable_certificate(graph.n(), &edges, s)?;
            verify_weight_certificate(graph.n(), &edges, w)?;
            verify_weight_certificate(graph.n(), &edges, &weights_from_stable_set(graph, &s.inner))
        }
        _ => Err("certificates present iff the verdict is infinite".into()),
    }
}

struct StableSearch {
    n: usize,
    adj: Vec<u64>,
    loops: u64,
    best: Option<(u64, u64)>,
}

impl StableSearch {
    fn better(&self, inner: u64, bd: u64) -> bool {
        let Some((bi, bb)) = self.best else {
            return true;
        };
        let key = |i: u64, b: u64| (i.count_ones(), i.count_ones() as i64 - b.count_ones() as i64);
        let (k_new, k_old) = (key(inner, bd), key(bi, bb));
        // lexicographically smallest vertex list wins ties
        k_new > k_old || (k_new == k_old && inner.reverse_bits() > bi.reverse_bits())
    }

    /// Vertices `>= v` not yet excluded remain candidates.
    fn go(&mut self, v: usize, inner: u64, bd: u64) {
        let candidates = (v..self.n).filter(|&u| (bd | self.loops) >> u & 1 == 0).count() as u32;
        let size = inner.count_ones();
        if size + candidates < bd.count_ones() {
            return;
        }
        if let Some((bi, _)) = self.best {
            if size + candidates < bi.count_ones() {
                return;
            }
        }
        if size > 0 && size >= bd.count_ones() && self.better(inner, bd) {
            self.best = Some((inner, bd));
        }
        if v == self.n {
            return;
        }
        if (bd | self.loops) >> v & 1 == 0 {
            let nb = (bd | self.adj[v]) & !(inner | 1 << v);
            self.go(v + 1, inner | 1 << v, nb);
        }
        self.go(v + 1, inner, bd);
    }
}

/// Stable-set decision on a graph.
///
/// When infinite, the reported stable set has maximal cardinality among all
/// witnesses, then maximal `|I| - |∂I|`, then is lexicographically smallest.
pub fn decide_graph(graph: &Graph) -> Result<VolumeVerdict, VolumeError> {
    let n = graph.n();
    if n > STABLE_SEARCH_LIMIT {
        return Err(VolumeError::Capacity { what: "stable-set search", n, limit: STABLE_SEARCH_LIMIT });
    }
    let adj = (0..n).map(|v| graph.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    let loops = (0..n).filter(|&v| graph.has_loop(v)).fold(0u64, |m, v| m | 1 << v);
    let mut search = StableSearch { n, adj, loops, best: None };
    search.go(0, 0, 0);
    Ok(match search.best {
        None => VolumeVerdict::finite(),
        Some((inner, _)) => {
            let inner: Vec<usize> = (0..n).filter(|&v| inner >> v & 1 == 1).collect();
            let weights = weights_from_stable_set(graph, &inner);
            let boundary = boundary(graph, &inner);
            VolumeVerdict::infinite(StableSetCertificate { inner, boundary }, weights)
        }
    })
}

pub fn decide_finiteness(s: &MarkedSimplex) -> Result<VolumeVerdict, VolumeError> {
    decide_graph(&s.graph())
}

/// Exhaustive search over `{-1, 0, 1}^n`: a nonzero vector in the cone with
/// nonnegative sum. Partial assignments are cut as soon as an edge between
/// assigned vertices is violated or the sum can no longer reach zero.
pub fn weight_oracle_graph(graph: &Graph) -> Result<VolumeVerdict, VolumeError> {
    let n = graph.n();
    if n > WEIGHT_ORACLE_LIMIT {
        return Err(VolumeError::Capacity { what: "weight oracle", n, limit: WEIGHT_ORACLE_LIMIT });
    }
    // constraints checked when the later endpoint is assigned
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b) in raw_edges(graph) {
        back[a.max(b)].push(a.min(b));
    }
    fn go(k: usize, w: &mut Vec<i8>, sum: i32, back: &[Vec<usize>]) -> bool {
        let n = back.len();
        if sum + ((n - k) as i32) < 0 {
            return false;
        }
        if k == n {
            return sum >= 0 && w.iter().any(|&x| x != 0);
        }
        for x in [-1i8, 0, 1] {
            w[k] = x;
            if back[k].iter().all(|&j| w[j] + x <= 0) && go(k + 1, w, sum + i32::from(x), back) {
                return true;
            }
        }
        w[k] = 0;
        false
    }
    let mut w = vec![0i8; n];
    if !go(0, &mut w, 0, &back) {
        return Ok(VolumeVerdict::finite());
    }
    let weights = WeightCertificate { weights: w };
    let stable = stable_set_from_weights(graph, &weights);
    Ok(VolumeVerdict::infinite(stable, weights))
}

pub fn brute_force_weight_oracle(s: &MarkedSimplex) -> Result<VolumeVerdict, VolumeError> {
    weight_oracle_graph(&s.graph())
}

/// Exact LP test that `{p ∈ P : Σ p = -1}` is bounded and `{p ∈ P : Σ p = 1}`
/// is empty, i.e. `Σ p < 0` on `P \ {0}`.
///
/// Variables `p = p⁺ - p⁻` and one slack per edge. Inside the slice every
/// coordinate is bounded below once all are bounded above, so it suffices to
/// maximize each `p_k`. The second slice only matters for a single vertex
/// without loop, where the first one is a point.
pub fn slice_bounded_graph(graph: &Graph) -> bool {
    let n = graph.n();
    let edges = raw_edges(graph);
    let m = edges.len();
    let vars = 2 * n + m;
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (r, &(i, j)) in edges.iter().enumerate() {
        let mut row = vec![Rational::zero(); vars];
        row[i] += int(1);
        row[j] += int(1);
        row[n + i] -= int(1);
        row[n + j] -= int(1);
        row[2 * n + r] = Rational::one();
        a.push(row);
    }
    let mut sum = vec![Rational::zero(); vars];
    for k in 0..n {
        sum[k] = Rational::one();
        sum[n + k] = -Rational::one();
    }
    a.push(sum);
    let mut b = vec![Rational::zero(); m + 1];
    b[m] = Rational::one();
    if lp::find_feasible(&a, &b).is_some() {
        return false;
    }
    b[m] = -Rational::one();
    let basis = lp::feasible_basis(&a, &b).expect("the uniform point -1/n lies in the slice");
    (0..n).all(|k| {
        let mut c = vec![Rational::zero(); vars];
        c[k] = Rational::one();
        c[n + k] = -Rational::one();
        matches!(basis.maximize(&c), Optimum::Bounded { .. })
    })
}

pub fn cone_slice_bounded(s: &MarkedSimplex) -> bool {
    slice_bounded_graph(&s.graph())
}

/// JSON form: `{"finite", "stable_set", "boundary", "weights"}`, 1-based vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub finite: bool,
    pub stable_set: Option<Vec<usize>>,
    pub boundary: Option<Vec<usize>>,
    pub weights: Option<Vec<i8>>,
}

impl From<&VolumeVerdict> for VerdictJson {
    fn from(v: &VolumeVerdict) -> Self {
        let one_based = |s: &[usize]| s.iter().map(|v| v + 1).collect();
        VerdictJson {
            finite: v.finite,
            stable_set: v.stable.as_ref().map(|c| one_based(&c.inner)),
            boundary: v.stable.as_ref().map(|c| one_based(&c.boundary)),
            weights: v.weights.as_ref().map(|w| w.weights.clone()),
        }
    }
}
