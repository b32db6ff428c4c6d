//! Named simplices: ideal simplices of H^p, crowns, the lightlike pentagon,
//! and orthogonal-sum constructions of infinite-volume simplices.

use crate::cohomology::Cochain1;
use crate::forms::{Signature, SymMatrix};
use crate::graph::Graph;
use crate::rational::{frac, int, Rational};
use crate::simplex::{realize_from_cochain, LiftVectors, MarkedPointSet, MarkedSimplex, SimplexError};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// Seed used by [`NamedExample::IdealInfinite`] when built from its name.
pub const IDEAL_SEARCH_SEED: u64 = 0x1DEA1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedExample {
    IdealHp(usize),
    Crown(usize),
    Pentagon,
    H22NonIdeal,
    NonIdealInfinite { p: usize, q: usize },
    IdealInfinite { p: usize, q: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NamedError {
    #[error("unknown example {0:?}; expected ideal-hp:P, crown:P, pentagon, h22-nonideal, nonideal-infinite:P:Q or ideal-infinite:P:Q")]
    Unknown(String),
    #[error("invalid parameters for {0}")]
    BadParameters(String),
    #[error("no ideal simplex found after {0} attempts")]
    SearchExhausted(usize),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

impl fmt::Display for NamedExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedExample::IdealHp(p) => write!(f, "ideal-hp:{p}"),
            NamedExample::Crown(p) => write!(f, "crown:{p}"),
            NamedExample::Pentagon => f.write_str("pentagon"),
            NamedExample::H22NonIdeal => f.write_str("h22-nonideal"),
            NamedExample::NonIdealInfinite { p, q } => write!(f, "nonideal-infinite:{p}:{q}"),
            NamedExample::IdealInfinite { p, q } => write!(f, "ideal-infinite:{p}:{q}"),
        }
    }
}

impl FromStr for NamedExample {
    type Err = NamedError;
    fn from_str(s: &str) -> Result<Self, NamedError> {
        let unknown = || NamedError::Unknown(s.to_string());
        let mut parts = s.trim().split(':');
        let head = parts.next().unwrap_or_default().replace('_', "-").to_ascii_lowercase();
        let args: Vec<usize> = parts.map(|a| a.parse().map_err(|_| unknown())).collect::<Result<_, _>>()?;
        let named = match (head.as_str(), args.as_slice()) {
            ("ideal-hp", &[p]) => NamedExample::IdealHp(p),
            ("crown", &[p]) => NamedExample::Crown(p),
            ("pentagon", &[]) => NamedExample::Pentagon,
            ("h22-nonideal" | "h22-nonideal-infinite", &[]) => NamedExample::H22NonIdeal,
            ("nonideal-infinite", &[p, q]) => NamedExample::NonIdealInfinite { p, q },
            ("ideal-infinite", &[p, q]) => NamedExample::IdealInfinite { p, q },
            _ => return Err(unknown()),
        };
        Ok(named)
    }
}

impl NamedExample {
    pub fn build(&self) -> Result<MarkedSimplex, NamedError> {
        let bad = || NamedError::BadParameters(self.to_string());
        match *self {
            NamedExample::IdealHp(p) if p >= 1 => Ok(ideal_hp(p)),
            NamedExample::Crown(p) if p >= 1 => Ok(crown(p)),
            NamedExample::Pentagon => Ok(pentagon()),
            NamedExample::H22NonIdeal => Ok(h22_nonideal_infinite()),
            NamedExample::NonIdealInfinite { p, q } if p >= 1 && q >= 1 => nonideal_infinite(p, q),
            NamedExample::IdealInfinite { p, q } if p >= 3 && q >= 1 => ideal_infinite(p, q, IDEAL_SEARCH_SEED),
            _ => Err(bad()),
        }
    }
}

/// Ideal simplex of H^p: all-ones Gram cocycle on the loopless complete graph.
pub fn ideal_hp(p: usize) -> MarkedSimplex {
    assert!(p >= 1);
    realize_from_cochain(&Cochain1::constant(&Graph::complete(p + 1), int(1))).expect("ideal simplex of H^p")
}

/// The p-crown: `2p` isotropic points, each paired with exactly one other.
pub fn crown(p: usize) -> MarkedSimplex {
    assert!(p >= 1);
    realize_from_cochain(&Cochain1::constant(&Graph::matching(p), int(1))).expect("p-crown")
}

/// Lightlike pentagon of H^{2,2}.
pub fn pentagon() -> MarkedSimplex {
    realize_from_cochain(&Cochain1::constant(&Graph::cycle(5), int(1))).expect("lightlike pentagon")
}

/// A single point of H^{0,0}.
pub fn point() -> MarkedSimplex {
    MarkedSimplex::from_gram(SymMatrix::diagonal(&[int(-1)])).expect("a point")
}

pub fn product(a: &MarkedSimplex, b: &MarkedSimplex) -> MarkedSimplex {
    a.product(b).expect("orthogonal sum of simplices is a simplex")
}

/// Non-ideal infinite simplex of H^{2,2}: two disjoint edges and one loop.
pub fn h22_nonideal_infinite() -> MarkedSimplex {
    product(&crown(1), &product(&crown(1), &point()))
}

fn points(k: usize) -> Option<MarkedSimplex> {
    (k > 0).then(|| MarkedSimplex::from_gram(SymMatrix::diagonal(&vec![int(-1); k])).expect("points"))
}

/// Non-ideal simplex of H^{a-1, b-1} (Gram signature `(a, b)`), `b >= 1`.
fn nonideal_factor(a: usize, b: usize) -> Result<MarkedSimplex, SimplexError> {
    if a == 0 {
        return Ok(points(b).expect("b >= 1"));
    }
    let mut gram = ideal_hp(a).gram().clone();
    if b == 1 {
        gram.set(0, 0, frac(-1, 2));
    }
    let head = MarkedSimplex::with_signature(gram, a, 0)?;
    match points(b - 1) {
        Some(tail) => head.product(&tail),
        None => Ok(head),
    }
}

/// Non-ideal simplex of infinite volume in H^{p,q}, `p, q >= 1`: the ideal
/// simplex of H^{1,0} summed with a non-ideal simplex of H^{p-1,q-1}.
pub fn nonideal_infinite(p: usize, q: usize) -> Result<MarkedSimplex, NamedError> {
    if p == 0 || q == 0 {
        return Err(NamedError::BadParameters(format!("nonideal-infinite:{p}:{q}")));
    }
    let rest = nonideal_factor(p - 1, q)?;
    let s = crown(1).product(&rest)?;
    debug_assert_eq!((s.p(), s.q()), (p, q));
    Ok(s)
}

fn random_rational<R: Rng>(rng: &mut R, span: i64, den: i64) -> Rational {
    frac(rng.gen_range(-span..=span), rng.gen_range(1..=den))
}

/// Rational point of the unit sphere of `R^m`, by inverse stereographic projection of `w`.
fn unit_vector(w: &[Rational]) -> Vec<Rational> {
    let s = w.iter().fold(Rational::zero(), |acc, x| acc + x * x);
    let d = Rational::one() + &s;
    let mut v: Vec<Rational> = w.iter().map(|x| int(2) * x / &d).collect();
    v.push((Rational::one() - s) / d);
    v
}

/// Ideal simplex of H^{a-1, b-1} near a configuration of ideal points of H^{a-1}.
///
/// Points are `(u, v)` with `u` a random unit vector of `R^a` and `v` a unit
/// vector of `R^b` close to the last basis vector, so every point is isotropic
/// and pairwise products are close to `u_i · u_j - 1 < 0`. Candidates are
/// rejected until the Gram matrix is invertible with signature `(a, b)` and
/// strictly negative off the diagonal.
pub fn random_ideal_factor(a: usize, b: usize, seed: u64, attempts: usize) -> Result<MarkedSimplex, NamedError> {
    assert!(a >= 2 && b >= 1);
    let n = a + b;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let vectors: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                let wu: Vec<Rational> = (0..a - 1).map(|_| random_rational(&mut rng, 4, 3)).collect();
                let wv: Vec<Rational> = (0..b - 1).map(|_| random_rational(&mut rng, 1, 1) / int(16)).collect();
                let mut x = unit_vector(&wu);
                x.extend(unit_vector(&wv));
                x
            })
            .collect();
        let lift = LiftVectors::standard(a, b - 1, vectors)?;
        let ps = MarkedPointSet::from_vectors(lift);
        let g = ps.gram();
        let negative = (0..n).all(|i| (0..n).all(|j| i == j || g.get(i, j).is_negative()));
        if negative && ps.ambient_signature() == Signature::nondegenerate(a, b) {
            if let Ok(s) = MarkedSimplex::from_point_set(ps) {
                return Ok(s);
            }
        }
    }
    Err(NamedError::SearchExhausted(attempts))
}

/// Ideal simplex of infinite volume in H^{p,q}, `p >= 3, q >= 1`.
pub fn ideal_infinite(p: usize, q: usize, seed: u64) -> Result<MarkedSimplex, NamedError> {
    if p < 3 || q == 0 {
        return Err(NamedError::BadParameters(format!("ideal-infinite:{p}:{q}")));
    }
    let rest = random_ideal_factor(p - 1, q, seed, 10_000)?;
    Ok(crown(1).product(&rest)?)
}
