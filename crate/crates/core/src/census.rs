//! Permutations along edges, cycle classes, and small-graph censuses.
//!
//! A nonzero term in the Leibniz expansion of `det Mat(f)` is a permutation
//! `σ` with every `{k, σ(k)}` an edge. Conversely each such `σ` splits the
//! graph into cycles whose classes have known signatures, and letting the
//! remaining edges degenerate realizes their sum.

use crate::cohomology::{self, Cochain1, GaugeWitness};
use crate::forms::{self, Signature, SymMatrix};
use crate::graph::{Edge, Graph, GraphJson};
use crate::rational::{frac, int, Rational};
use crate::simplex::{realize_from_cochain, MarkedSimplex};
use crate::volume::{self, VerdictJson, VolumeVerdict};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

pub const PERMUTATION_LIMIT: usize = 10;
pub const UNMARKED_LIMIT: usize = 7;
pub const SAMPLES_PER_GRAPH: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("{what} supports at most {limit} vertices, got {n}")]
    Capacity { what: &'static str, n: usize, limit: usize },
    #[error("{0} is not a permutation along the edges of the graph")]
    NotAdjacent(String),
    #[error("census supports n <= 5 with loops and n = 6 without, got n = {0}")]
    CensusSize(usize),
}

/// `+1` for even permutations, `-1` for odd ones.
pub fn parity(perm: &[usize]) -> i8 {
    let cycles = cycle_type(perm).lengths.len();
    if (perm.len() - cycles) % 2 == 0 { 1 } else { -1 }
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&v| v < perm.len() && !std::mem::replace(&mut seen[v], true))
}

pub fn is_adjacency_permutation(graph: &Graph, perm: &[usize]) -> bool {
    perm.len() == graph.n() && is_permutation(perm) && perm.iter().enumerate().all(|(k, &v)| graph.has_edge(k, v))
}

fn check_capacity(graph: &Graph) -> Result<(), CensusError> {
    if graph.n() > PERMUTATION_LIMIT {
        return Err(CensusError::Capacity { what: "permutation search", n: graph.n(), limit: PERMUTATION_LIMIT });
    }
    Ok(())
}

/// Depth-first over `σ(0), σ(1), …` in increasing order; `visit` returns
/// `true` to stop.
fn search(graph: &Graph, mut visit: impl FnMut(&[usize]) -> bool) {
    fn go(graph: &Graph, k: usize, perm: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == graph.n() {
            return visit(perm);
        }
        let mut options: Vec<usize> = graph.adjacent(k).collect();
        options.sort_unstable();
        for v in options {
            if used[v] {
                continue;
            }
            used[v] = true;
            perm.push(v);
            if go(graph, k + 1, perm, used, visit) {
                return true;
            }
            perm.pop();
            used[v] = false;
        }
        false
    }
    let mut used = vec![false; graph.n()];
    go(graph, 0, &mut Vec::new(), &mut used, &mut visit);
}

/// First permutation (in lexicographic order of images) moving every vertex
/// to an adjacent one, with the requested parity when given.
pub fn adjacency_permutation(graph: &Graph, required_parity: Option<i8>) -> Result<Option<Vec<usize>>, CensusError> {
    check_capacity(graph)?;
    let mut found = None;
    search(graph, |perm| {
        if required_parity.is_none_or(|p| parity(perm) == p) {
            found = Some(perm.to_vec());
            true
        } else {
            false
        }
    });
    Ok(found)
}

pub fn adjacency_permutations(graph: &Graph) -> Result<Vec<Vec<usize>>, CensusError> {
    check_capacity(graph)?;
    let mut all = Vec::new();
    search(graph, |perm| {
        all.push(perm.to_vec());
        false
    });
    Ok(all)
}

/// Cycle lengths of a permutation, fixed points as cycles of length one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    /// Non-increasing.
    pub lengths: Vec<usize>,
}

impl CycleType {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        assert!(lengths.iter().all(|&l| l > 0), "cycle lengths are positive");
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { lengths }
    }

    pub fn n(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn count(&self, k: usize) -> usize {
        self.lengths.iter().filter(|&&l| l == k).count()
    }
}

/// Cycles of `perm`, each starting at its smallest vertex, ordered by that vertex.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            c.push(v);
            v = perm[v];
        }
        out.push(c);
    }
    out
}

pub fn cycle_type(perm: &[usize]) -> CycleType {
    CycleType::new(cycles(perm).iter().map(Vec::len).collect())
}

/// `2p = n - l₁ - Σ_{k ≡ 1 [4], k >= 5} l_k + Σ_{k ≡ 3 [4]} l_k`, `q = n - p`,
/// with `l₁` the number of fixed points.
pub fn signature_from_cycle_type(ct: &CycleType) -> Signature {
    let n = ct.n() as i64;
    let twice_p = ct.lengths.iter().fold(n, |acc, &k| match k % 4 {
        1 => acc - 1,
        3 => acc + 1,
        _ => acc,
    });
    debug_assert!(twice_p >= 0 && twice_p % 2 == 0);
    let p = (twice_p / 2) as usize;
    Signature::nondegenerate(p, ct.n() - p)
}

/// Representative edge values around a cycle of length `k`: all one, except
/// a two on the first edge when `k ≡ 0 [4]` so the class is nonzero.
fn cycle_values(k: usize) -> Vec<Rational> {
    let mut v = vec![int(1); k.max(1)];
    if k >= 4 && k % 4 == 0 {
        v[0] = int(2);
    }
    v
}

/// Gram matrix `Mat` of the cycle representative on the vertices of `cycle`
/// (in the order given), placed in an `n × n` matrix.
fn add_cycle(m: &mut SymMatrix, cycle: &[usize]) {
    let k = cycle.len();
    let values = cycle_values(k);
    match k {
        1 => m.set(cycle[0], cycle[0], -values[0].clone()),
        2 => m.set(cycle[0], cycle[1], -values[0].clone()),
        _ => {
            for (i, v) in values.iter().enumerate() {
                m.set(cycle[i], cycle[(i + 1) % k], -v.clone());
            }
        }
    }
}

/// Block-diagonal Gram matrix realizing a cycle type with nonzero cycle classes.
pub fn cycle_type_matrix(ct: &CycleType) -> SymMatrix {
    let mut m = SymMatrix::zeros(ct.n());
    let mut start = 0;
    for &k in &ct.lengths {
        let cycle: Vec<usize> = (start..start + k).collect();
        add_cycle(&mut m, &cycle);
        start += k;
    }
    m
}

/// Cycle types of permutations of `n` points (partitions of `n`).
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            out.push(CycleType::new(cur.clone()));
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    /// `H^1` is a single point.
    Unique,
    /// The zero class of a one-dimensional `H^1`.
    Zero,
    /// Every nonzero class of a one-dimensional `H^1`.
    NonZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassStratum {
    pub kind: ClassKind,
    pub signature: Signature,
    /// Values of the representative on the cycle edges `{k, k+1}`.
    pub representative: Vec<crate::rational::JsonRational>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleClassTable {
    pub n: usize,
    pub h1_dimension: usize,
    pub strata: Vec<ClassStratum>,
}

fn cycle_matrix(values: &[Rational]) -> SymMatrix {
    let f = Cochain1::from_fn(&Graph::cycle(values.len()), |e| {
        let (a, b) = e.endpoints();
        // the edge {k, k+1} carries values[k]; {0, n-1} closes the cycle
        let k = if b == a + 1 { a } else { b };
        values[k].clone()
    })
    .expect("cycle edges");
    cohomology::mat(&f)
}

/// Classes of `H^1(C_n, R)` and their signatures, each checked on a representative.
pub fn cycle_class_table(n: usize) -> CycleClassTable {
    assert!(n >= 1);
    let h1 = cohomology::h1_dimension(&Graph::cycle(n), cohomology::Coefficients::Real);
    let ones = vec![int(1); n];
    let mut twisted = ones.clone();
    twisted[0] = int(2);
    let half = n / 2;
    let expected: Vec<(ClassKind, Signature, Vec<Rational>)> = match (n, n % 4) {
        (1, _) => vec![(ClassKind::Unique, Signature::nondegenerate(0, 1), ones)],
        (2, _) => vec![(ClassKind::Unique, Signature::nondegenerate(1, 1), ones)],
        (_, 0) => vec![
            (ClassKind::Zero, Signature::new(half - 1, half - 1, 2), ones),
            (ClassKind::NonZero, Signature::nondegenerate(half, half), twisted),
        ],
        (_, 1) => vec![(ClassKind::Unique, Signature::nondegenerate(half, half + 1), ones)],
        (_, 2) => vec![
            (ClassKind::Zero, Signature::nondegenerate(half, half), ones),
            (ClassKind::NonZero, Signature::nondegenerate(half, half), twisted),
        ],
        _ => vec![(ClassKind::Unique, Signature::nondegenerate(half + 1, half), ones)],
    };
    let strata = expected
        .into_iter()
        .map(|(kind, signature, values)| {
            let verified = cycle_matrix(&values).signature() == signature;
            let representative = values.into_iter().map(crate::rational::JsonRational).collect();
            ClassStratum { kind, signature, representative, verified }
        })
        .collect();
    CycleClassTable { n, h1_dimension: h1, strata }
}

/// Outcome of realizing a graph near the cycle classes picked out by `σ`.
#[derive(Debug, Clone)]
pub struct Perturbation {
    pub signature: Signature,
    pub expected: Signature,
    pub simplex: Option<MarkedSimplex>,
}

impl Perturbation {
    pub fn matches(&self) -> bool {
        self.signature == self.expected
    }

    pub fn is_degenerate(&self) -> bool {
        self.signature.is_degenerate()
    }
}

/// Cochain equal to the cycle representatives on the edges `{k, σ(k)}` and to
/// `epsilon` on every other edge, together with its realization.
pub fn perturbation_cochain(graph: &Graph, sigma: &[usize], epsilon: &Rational) -> Result<Cochain1<Rational>, CensusError> {
    if !is_adjacency_permutation(graph, sigma) {
        return Err(CensusError::NotAdjacent(format!("{sigma:?}")));
    }
    let mut m = SymMatrix::zeros(graph.n());
    for c in cycles(sigma) {
        add_cycle(&mut m, &c);
    }
    Ok(Cochain1::from_fn(graph, |e| {
        let (a, b) = e.endpoints();
        let v = m.get(a, b);
        if v.is_zero() { epsilon.clone() } else { -v.clone() }
    })
    .expect("graph edges"))
}

pub fn perturbation_realize(graph: &Graph, sigma: &[usize], epsilon: &Rational) -> Result<Perturbation, CensusError> {
    let f = perturbation_cochain(graph, sigma, epsilon)?;
    let signature = cohomology::mat(&f).signature();
    let expected = signature_from_cycle_type(&cycle_type(sigma));
    let simplex = if signature.is_degenerate() { None } else { realize_from_cochain(&f).ok() };
    Ok(Perturbation { signature, expected, simplex })
}

/// `min |∂I| - |I|` over non-empty stable sets, by plain subset enumeration.
pub fn min_boundary_surplus(graph: &Graph) -> Option<i64> {
    let n = graph.n();
    assert!(n <= 20);
    (1u32..1 << n)
        .filter_map(|mask| {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let stable = set.iter().all(|&a| set.iter().all(|&b| !graph.has_edge(a, b)));
            stable.then(|| volume::boundary(graph, &set).len() as i64 - set.len() as i64)
        })
        .min()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H22Row {
    pub graph: GraphJson,
    pub passes_filter: bool,
    pub finite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H22Report {
    pub graphs: usize,
    pub passing_filter: usize,
    pub finite: usize,
    pub counterexamples: Vec<GraphJson>,
    /// Graphs passing the filter whose stable sets all have `|∂I| > |I|`.
    pub strict_boundary: usize,
}

/// Loopless graphs on 5 labeled vertices: which admit an even permutation along
/// edges without fixed points (necessarily a 5-cycle), and their verdicts.
pub fn h22_ideal_census() -> (H22Report, Vec<H22Row>) {
    let rows: Vec<(H22Row, bool)> = Graph::enumerate(5, false)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|g| {
            let sigma = adjacency_permutation(g, Some(1)).expect("n = 5");
            let passes = sigma.is_some();
            let finite = volume::decide_graph(g).expect("n = 5").finite;
            let strict = passes && min_boundary_surplus(g).is_none_or(|s| s > 0);
            (H22Row { graph: GraphJson::from(g), passes_filter: passes, finite }, strict)
        })
        .collect();
    let report = H22Report {
        graphs: rows.len(),
        passing_filter: rows.iter().filter(|r| r.0.passes_filter).count(),
        finite: rows.iter().filter(|r| r.0.finite).count(),
        counterexamples: rows.iter().filter(|r| r.0.passes_filter && !r.0.finite).map(|r| r.0.graph.clone()).collect(),
        strict_boundary: rows.iter().filter(|r| r.1).count(),
    };
    (report, rows.into_iter().map(|r| r.0).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parities {
    pub even: bool,
    pub odd: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub encoding: u64,
    pub graph: GraphJson,
    pub adjacency_permutations: Parities,
    pub predicted_signatures: Vec<[usize; 2]>,
    pub realized_signatures: Vec<[usize; 2]>,
    pub verdict: VerdictJson,
}

const SAMPLE_VALUES: [(i64, i64); 5] = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)];

/// Signatures of invertible `Mat(f)` over sampled cochains `f`, values drawn from
/// `{1, 1/2, 2, 1/3, 3}`.
pub fn sampled_signatures(graph: &Graph, samples: usize, seed: u64) -> BTreeSet<Signature> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Edge> = graph.edges().copied().collect();
    (0..samples)
        .filter_map(|_| {
            let f = Cochain1::from_fn(graph, |_| {
                let &(a, b) = SAMPLE_VALUES.choose(&mut rng).expect("non-empty");
                frac(a, b)
            })
            .expect("graph edges");
            debug_assert_eq!(f.iter().count(), edges.len());
            let s = forms::signature(&cohomology::mat(&f));
            (!s.is_degenerate()).then_some(s)
        })
        .collect()
}

pub fn census_row(graph: &Graph, loops: bool, seed: u64) -> Result<CensusRow, CensusError> {
    let perms = adjacency_permutations(graph)?;
    let even = perms.iter().any(|p| parity(p) == 1);
    let odd = perms.iter().any(|p| parity(p) == -1);
    let predicted: BTreeSet<[usize; 2]> = perms
        .iter()
        .map(|p| signature_from_cycle_type(&cycle_type(p)))
        .map(|s| [s.pos, s.neg])
        .collect();
    let encoding = graph.encoding(loops).expect("graph matches the enumeration");
    let realized = sampled_signatures(graph, SAMPLES_PER_GRAPH, seed ^ encoding.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let verdict: VolumeVerdict = volume::decide_graph(graph).expect("small graph");
    Ok(CensusRow {
        encoding,
        graph: GraphJson::from(graph),
        adjacency_permutations: Parities { even, odd },
        predicted_signatures: predicted.into_iter().collect(),
        realized_signatures: realized.into_iter().map(|s| [s.pos, s.neg]).collect(),
        verdict: VerdictJson::from(&verdict),
    })
}

/// Every labeled graph on `n` vertices (loops allowed for `n <= 5`), ordered by encoding.
pub fn census(n: usize, seed: u64) -> Result<Vec<CensusRow>, CensusError> {
    let loops = match n {
        1..=5 => true,
        6 => false,
        _ => return Err(CensusError::CensusSize(n)),
    };
    let graphs: Vec<Graph> = Graph::enumerate(n, loops).collect();
    graphs.par_iter().map(|g| census_row(g, loops, seed)).collect()
}

/// Row invariant: each realized signature `(p, q)` has an adjacency
/// permutation of parity `(-1)^p`.
pub fn row_consistent(row: &CensusRow) -> bool {
    row.realized_signatures.iter().all(|&[p, _]| {
        if p % 2 == 0 { row.adjacency_permutations.even } else { row.adjacency_permutations.odd }
    })
}

fn relabeled(s: &MarkedSimplex, iota: &[usize]) -> SymMatrix {
    // entry (i, j) of the result is entry (ι(i), ι(j)) of `s`
    SymMatrix::from_fn(s.n(), |i, j| s.gram().get(iota[i], iota[j]).clone())
}

/// Isometry up to relabeling: a bijection `ι` with `G(a) ≅ G(b)` via `ι` and
/// `c(a) = ι* c(b)`, found by brute force over graph isomorphisms.
pub fn unmarked_isometric(a: &MarkedSimplex, b: &MarkedSimplex) -> Result<Option<(Vec<usize>, GaugeWitness)>, CensusError> {
    let n = a.n();
    if n > UNMARKED_LIMIT {
        return Err(CensusError::Capacity { what: "unmarked isometry", n, limit: UNMARKED_LIMIT });
    }
    if b.n() != n {
        return Ok(None);
    }
    let (ga, gb) = (a.graph(), b.graph());
    let degree = |g: &Graph, v: usize| (g.neighbors(v).len(), g.has_loop(v));
    fn go(
        k: usize,
        iota: &mut Vec<usize>,
        used: &mut [bool],
        ga: &Graph,
        gb: &Graph,
        fits: &dyn Fn(usize, usize) -> bool,
        found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if k == ga.n() {
            return found(iota);
        }
        for v in 0..ga.n() {
            if used[v] || !fits(k, v) {
                continue;
            }
            // adjacency to earlier vertices must be preserved
            if !(0..k).all(|j| ga.has_edge(j, k) == gb.has_edge(iota[j], v)) || ga.has_loop(k) != gb.has_loop(v) {
                continue;
            }
            used[v] = true;
            iota.push(v);
            if go(k + 1, iota, used, ga, gb, fits, found) {
                return true;
            }
            iota.pop();
            used[v] = false;
        }
        false
    }
    let fits = |k: usize, v: usize| degree(&ga, k) == degree(&gb, v);
    let mut result = None;
    let mut used = vec![false; n];
    go(0, &mut Vec::new(), &mut used, &ga, &gb, &fits, &mut |iota: &[usize]| {
        let Ok(pulled) = MarkedSimplex::from_gram(relabeled(b, iota)) else {
            return false;
        };
        match crate::simplex::isometric(a, &pulled) {
            Some(w) => {
                result = Some((iota.to_vec(), w));
                true
            }
            None => false,
        }
    });
    Ok(result)
}
