//! Marked point sets and simplices of pseudo-hyperbolic space.
//!
//! A point set is stored through the Gram matrix `gram[i][j] = b(x_i, x_j)`
//! of a chosen lift. Note the sign: the Gram cocycle carries `-gram[i][j]`
//! on each edge, so a positive lift has a positive cocycle.
//!
//! Coordinates are only needed for extremality and for the origin test of
//! positive lifts. A set built from a Gram matrix alone is realized with
//! linearly independent lift vectors (rows of the inverse diagonalizing
//! congruence), which is the unique realization up to isometry whenever the
//! Gram matrix is invertible. Sets built from explicit vectors keep them.

use crate::cohomology::{
    self, h0_dimension, is_sign_coboundary, Cochain1, Coefficients, GaugeWitness, Z2,
};
use crate::dense::{self, DenseMatrix};
use crate::forms::{FormsError, Signature, SymMatrix};
use crate::graph::{Edge, Graph};
use crate::lp;
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NoPositiveLift {
    #[error("point {} has positive self-product and lies outside the closure of H^{{p,q}}", .0 + 1)]
    PositiveSelfProduct(usize),
    #[error("the sign class of the Gram cocycle is not trivial")]
    SignObstruction,
    #[error("the origin lies in the convex hull of the lift")]
    OriginInHull,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("Gram matrix is degenerate with signature {0}")]
    NotASimplex(Signature),
    #[error("no positive lift: {0}")]
    NoPositiveLift(#[from] NoPositiveLift),
    #[error("cochain value on {0} is not positive")]
    NonPositiveValue(Edge),
    #[error("declared (p, q) = ({p}, {q}) but the Gram matrix has signature {found}")]
    SignatureMismatch { p: usize, q: usize, found: Signature },
    #[error("Gram form has no negative direction")]
    NoNegativeDirection,
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error("lift vectors: {0}")]
    BadVectors(String),
    #[error("{0}")]
    Invalid(String),
}

/// Rational lift vectors in coordinates where the ambient form is `diag(form)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftVectors {
    form: Vec<Rational>,
    vectors: Vec<Vec<Rational>>,
}

impl LiftVectors {
    pub fn new(form: Vec<Rational>, vectors: Vec<Vec<Rational>>) -> Result<Self, SimplexError> {
        if form.iter().any(Zero::is_zero) {
            return Err(SimplexError::BadVectors("ambient form must be non-degenerate".into()));
        }
        Self::new_unchecked_form(form, vectors)
    }

    fn new_unchecked_form(form: Vec<Rational>, vectors: Vec<Vec<Rational>>) -> Result<Self, SimplexError> {
        if vectors.is_empty() {
            return Err(SimplexError::BadVectors("at least one vector is required".into()));
        }
        if let Some(k) = vectors.iter().position(|v| v.len() != form.len()) {
            return Err(SimplexError::BadVectors(format!("vector {} has the wrong dimension", k + 1)));
        }
        if let Some(k) = vectors.iter().position(|v| v.iter().all(Zero::is_zero)) {
            return Err(SimplexError::BadVectors(format!("vector {} is zero", k + 1)));
        }
        Ok(LiftVectors { form, vectors })
    }

    /// Vectors of `R^{p,q+1}` with the form `diag(+1 ×p, -1 ×(q+1))`.
    pub fn standard(p: usize, q: usize, vectors: Vec<Vec<Rational>>) -> Result<Self, SimplexError> {
        let form = (0..p + q + 1).map(|k| if k < p { Rational::one() } else { -Rational::one() }).collect();
        Self::new(form, vectors)
    }

    /// Independent realization of a Gram matrix: `gram = X · diag(d) · Xᵀ`.
    pub fn from_gram(gram: &SymMatrix) -> Self {
        let d = gram.diagonalize();
        let x = dense::inverse(&d.transform).expect("congruence transform is invertible");
        LiftVectors { form: d.diagonal, vectors: x }
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn form(&self) -> &[Rational] {
        &self.form
    }

    pub fn product(&self, i: usize, j: usize) -> Rational {
        self.vectors[i]
            .iter()
            .zip(&self.vectors[j])
            .zip(&self.form)
            .fold(Rational::zero(), |acc, ((a, b), f)| acc + a * b * f)
    }

    pub fn gram(&self) -> SymMatrix {
        SymMatrix::from_fn(self.vectors.len(), |i, j| self.product(i, j))
    }

    fn scaled(&self, signs: &[i8]) -> LiftVectors {
        let vectors = self
            .vectors
            .iter()
            .zip(signs)
            .map(|(v, &s)| if s < 0 { v.iter().map(|x| -x).collect() } else { v.clone() })
            .collect();
        LiftVectors { form: self.form.clone(), vectors }
    }

    /// Matrix whose columns are the lift vectors.
    fn columns(&self) -> DenseMatrix {
        dense::transpose(&self.vectors)
    }
}

/// A finite marked subset of `P(R^{p,q+1})` with a chosen lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPointSet {
    gram: SymMatrix,
    vectors: Option<LiftVectors>,
}

impl MarkedPointSet {
    pub fn from_gram(gram: SymMatrix) -> Self {
        assert!(gram.n() >= 1, "a point set needs at least one point");
        MarkedPointSet { gram, vectors: None }
    }

    pub fn from_vectors(vectors: LiftVectors) -> Self {
        MarkedPointSet { gram: vectors.gram(), vectors: Some(vectors) }
    }

    pub fn gram(&self) -> &SymMatrix {
        &self.gram
    }

    pub fn n(&self) -> usize {
        self.gram.n()
    }

    /// Signature of the Gram matrix, i.e. of the span of the lift.
    pub fn ambient_signature(&self) -> Signature {
        self.gram.signature()
    }

    pub fn lift_vectors(&self) -> LiftVectors {
        self.vectors.clone().unwrap_or_else(|| LiftVectors::from_gram(&self.gram))
    }

    pub fn explicit_vectors(&self) -> Option<&LiftVectors> {
        self.vectors.as_ref()
    }

    /// Flips the lift of every point with a negative sign.
    pub fn with_signs(&self, signs: &[i8]) -> MarkedPointSet {
        let d: Vec<Rational> = signs.iter().map(|&s| Rational::from_integer(s.into())).collect();
        MarkedPointSet { gram: self.gram.congruent_by_diagonal(&d), vectors: self.vectors.as_ref().map(|v| v.scaled(signs)) }
    }

    /// Rescales the lift of point `i` by `g[i]`.
    pub fn rescaled(&self, g: &[Rational]) -> MarkedPointSet {
        let vectors = self.vectors.as_ref().map(|lv| LiftVectors {
            form: lv.form.clone(),
            vectors: lv.vectors.iter().zip(g).map(|(v, s)| v.iter().map(|x| x * s).collect()).collect(),
        });
        MarkedPointSet { gram: self.gram.congruent_by_diagonal(g), vectors }
    }
}

/// Gram graph: edge `{i, j}` (loops included) iff `gram[i][j] != 0`.
pub fn gram_graph(ps: &MarkedPointSet) -> Graph {
    let g = ps.gram();
    let n = g.n();
    let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(i, j)| !g.get(i, j).is_zero());
    Graph::new(n, pairs).expect("pairs are distinct and in range")
}

/// Gram cocycle: `-gram[i][j]` on every edge of the Gram graph.
pub fn gram_cocycle(ps: &MarkedPointSet) -> Cochain1<Rational> {
    let graph = gram_graph(ps);
    Cochain1::from_fn(&graph, |e| {
        let (i, j) = e.endpoints();
        -ps.gram().get(i, j)
    })
    .expect("Gram graph edges carry nonzero entries")
}

/// No point carries a loop, i.e. every lift vector is isotropic.
pub fn is_ideal(ps: &MarkedPointSet) -> bool {
    (0..ps.n()).all(|i| ps.gram().get(i, i).is_zero())
}

fn lex_positive(v: &[Rational]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_positive)
}

/// Some `t >= 0` with `Σ t = 1` and `Σ t_i y_i = 0`.
fn origin_in_hull(vectors: &LiftVectors) -> bool {
    let mut a = vectors.columns();
    a.push(vec![Rational::one(); vectors.vectors.len()]);
    let mut b = vec![Rational::zero(); a.len()];
    *b.last_mut().expect("non-empty") = Rational::one();
    lp::find_feasible(&a, &b).is_some()
}

/// Signs `ε` such that rescaling the lift by `ε` makes every Gram entry
/// `<= 0` and keeps the origin out of the convex hull of the lift.
///
/// Obstructions: a positive self-product, or a nontrivial sign class of the
/// Gram cocycle. Isolated points are flipped so that their lift vector is
/// lexicographically positive.
pub fn find_positive_lift(ps: &MarkedPointSet) -> Result<Vec<i8>, NoPositiveLift> {
    let gram = ps.gram();
    if let Some(i) = (0..ps.n()).find(|&i| gram.get(i, i).is_positive()) {
        return Err(NoPositiveLift::PositiveSelfProduct(i));
    }
    let sign_part = cohomology::restrict_sign_part(&gram_cocycle(ps));
    let witness = is_sign_coboundary(&sign_part).ok_or(NoPositiveLift::SignObstruction)?;
    let mut signs: Vec<i8> = witness.values().iter().map(|z: &Z2| if z.0 { -1 } else { 1 }).collect();
    let graph = sign_part.graph();
    let vectors = ps.lift_vectors();
    for (v, s) in signs.iter_mut().enumerate() {
        if graph.is_isolated(v) && !lex_positive(&vectors.vectors[v]) {
            *s = -*s;
        }
    }
    if origin_in_hull(&vectors.scaled(&signs)) {
        return Err(NoPositiveLift::OriginInHull);
    }
    Ok(signs)
}

/// Admits a positive lift and every point is extremal in its convex hull.
pub fn is_polytope(ps: &MarkedPointSet) -> bool {
    let Ok(signs) = find_positive_lift(ps) else {
        return false;
    };
    let lift = ps.lift_vectors().scaled(&signs);
    let cols = lift.columns();
    (0..ps.n()).all(|i| {
        // is y_i a nonnegative combination of the other vectors?
        let a: DenseMatrix = cols.iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect()).collect();
        if ps.n() == 1 {
            return true;
        }
        lp::find_feasible(&a, &lift.vectors[i]).is_none()
    })
}

/// `n = p + q + 1` points spanning `R^{p,q+1}` with a positive lift.
pub fn is_simplex(ps: &MarkedPointSet, p: usize, q: usize) -> bool {
    ps.n() == p + q + 1
        && ps.ambient_signature() == Signature::nondegenerate(p, q + 1)
        && find_positive_lift(ps).is_ok()
}

/// Simplex of `H^{p,q}`, stored with its positive lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSimplex {
    points: MarkedPointSet,
    p: usize,
    q: usize,
}

impl MarkedSimplex {
    /// Normalizes the lift to a positive one and reads `(p, q)` from the
    /// signature `(p, q+1)` of the Gram matrix.
    pub fn from_point_set(ps: MarkedPointSet) -> Result<Self, SimplexError> {
        let sig = ps.ambient_signature();
        if sig.is_degenerate() {
            return Err(SimplexError::NotASimplex(sig));
        }
        if sig.neg == 0 {
            return Err(SimplexError::NoNegativeDirection);
        }
        let signs = find_positive_lift(&ps)?;
        Ok(MarkedSimplex { points: ps.with_signs(&signs), p: sig.pos, q: sig.neg - 1 })
    }

    pub fn from_gram(gram: SymMatrix) -> Result<Self, SimplexError> {
        Self::from_point_set(MarkedPointSet::from_gram(gram))
    }

    /// As [`MarkedSimplex::from_gram`], also checking the declared `(p, q)`.
    pub fn with_signature(gram: SymMatrix, p: usize, q: usize) -> Result<Self, SimplexError> {
        let s = Self::from_gram(gram)?;
        if (s.p, s.q) != (p, q) {
            return Err(SimplexError::SignatureMismatch { p, q, found: s.gram().signature() });
        }
        Ok(s)
    }

    pub fn points(&self) -> &MarkedPointSet {
        &self.points
    }

    pub fn gram(&self) -> &SymMatrix {
        self.points.gram()
    }

    pub fn n(&self) -> usize {
        self.points.n()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn graph(&self) -> Graph {
        gram_graph(&self.points)
    }

    pub fn cocycle(&self) -> Cochain1<Rational> {
        gram_cocycle(&self.points)
    }

    pub fn is_ideal(&self) -> bool {
        is_ideal(&self.points)
    }

    /// Orthogonal sum of two simplices: `H^{p,q} ⊕ H^{p',q'}` lands in `H^{p+p', q+q'+1}`.
    pub fn product(&self, other: &MarkedSimplex) -> Result<MarkedSimplex, SimplexError> {
        MarkedSimplex::from_gram(self.gram().block_sum(other.gram()))
    }
}

/// Simplex with Gram matrix `Mat(f)` for a positive cochain `f`, lifted by
/// the canonical basis.
pub fn realize_from_cochain(f: &Cochain1<Rational>) -> Result<MarkedSimplex, SimplexError> {
    if let Some((e, _)) = f.iter().find(|(_, v)| !v.is_positive()) {
        return Err(SimplexError::NonPositiveValue(*e));
    }
    let gram = cohomology::mat(f);
    let sig = gram.signature();
    if sig.is_degenerate() {
        return Err(SimplexError::NotASimplex(sig));
    }
    MarkedSimplex::from_gram(gram)
}

/// Marked isometry with the identity marking: same labeled Gram graph and
/// cohomologous Gram cocycles. The witness is the gauge relating them.
pub fn isometric(a: &MarkedSimplex, b: &MarkedSimplex) -> Option<GaugeWitness> {
    if a.n() != b.n() || a.graph() != b.graph() {
        return None;
    }
    cohomology::classes_equal(&a.cocycle(), &b.cocycle()).ok().flatten()
}

/// `2^(dim H^0(G, R) - 1)` convex hulls; `1` when no component is bipartite.
pub fn convex_hull_count(ps: &MarkedPointSet) -> Result<u64, NoPositiveLift> {
    find_positive_lift(ps)?;
    let h0 = h0_dimension(&gram_graph(ps), Coefficients::Real);
    Ok(if h0 == 0 { 1 } else { 1u64 << (h0 - 1) })
}

/// JSON form `{"p": int, "q": int, "gram": matrix}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplexJson {
    pub p: usize,
    pub q: usize,
    pub gram: SymMatrix,
}

impl From<&MarkedSimplex> for SimplexJson {
    fn from(s: &MarkedSimplex) -> Self {
        SimplexJson { p: s.p, q: s.q, gram: s.gram().clone() }
    }
}

impl TryFrom<SimplexJson> for MarkedSimplex {
    type Error = SimplexError;
    fn try_from(j: SimplexJson) -> Result<Self, SimplexError> {
        MarkedSimplex::with_signature(j.gram, j.p, j.q)
    }
}
