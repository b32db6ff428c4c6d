//! Monte Carlo estimates of truncated volumes.
//!
//! For a positive lift `x_1..x_n` with Gram matrix `G`, the hull volume is
//! `n |det α| vol{t > 0 : f(t) <= 1}` with `f(t) = -tᵀ G t` and
//! `|det α| = sqrt(|det G|)`. Truncating to the box `(0, R]^n` gives a finite
//! quantity whose growth in `R` mirrors finiteness of the hull volume. The
//! region `Δ = {t > 0 : t_i t_j <= 1 on every edge}` has the same finiteness.
//!
//! Sampling is radial: writing `t = r s` with `s` uniform on the standard
//! simplex, a star-shaped region with radial extent `ρ(s)` has volume
//! `E[ρ(s)^n] / n!`. Both regions are star-shaped around the origin. A uniform
//! box sampler is kept as a cross-check; it is hopeless once the region is a
//! tiny fraction of the box.
//!
//! Samples are split into fixed chunks. Chunk `k` draws from the ChaCha8
//! stream `k` of the seed, so the result does not depend on how chunks are
//! scheduled across threads; chunk sums are reduced in chunk order.

use crate::forms::SymMatrix;
use crate::graph::Graph;
use crate::rational::to_f64;
use crate::simplex::MarkedSimplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    #[error("truncation radius must be a positive finite number, got {0}")]
    BadRadius(f64),
    #[error("sample count must be positive")]
    NoSamples,
    #[error("lower exponential cutoff must be a positive finite number, got {0}")]
    BadCutoff(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    Radial,
    Box,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    #[serde(rename = "R")]
    pub radius: f64,
    pub samples: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub seed: u64,
}

impl VolumeEstimate {
    /// `|a - b| / sqrt(se_a² + se_b²)`.
    pub fn z_score(&self, other: &VolumeEstimate) -> f64 {
        let se = self.std_error.hypot(other.std_error);
        if se == 0.0 {
            if self.estimate == other.estimate { 0.0 } else { f64::INFINITY }
        } else {
            (self.estimate - other.estimate).abs() / se
        }
    }
}

fn check(radius: f64, samples: u64) -> Result<(), EstimateError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(EstimateError::BadRadius(radius));
    }
    if samples == 0 {
        return Err(EstimateError::NoSamples);
    }
    Ok(())
}

/// Mean and standard error of `value` over `samples` draws, each a function of
/// an RNG positioned at its chunk's stream.
fn sample_mean<F>(samples: u64, seed: u64, value: F) -> (f64, f64)
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let sums: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let len = CHUNK.min(samples - k * CHUNK);
            (0..len).fold((0.0, 0.0), |(s, s2), _| {
                let v = value(&mut rng);
                (s + v, s2 + v * v)
            })
        })
        .collect();
    let (s, s2) = sums.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let n = samples as f64;
    let mean = s / n;
    let var = if samples > 1 { ((s2 - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
    (mean, (var / n).sqrt())
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn simplex_point(rng: &mut ChaCha8Rng, s: &mut [f64]) {
    let mut total = 0.0;
    for x in s.iter_mut() {
        let e: f64 = rng.sample(Exp1);
        *x = e;
        total += e;
    }
    for x in s.iter_mut() {
        *x /= total;
    }
}

/// Volume of a star-shaped region inside `(0, R]^n` given its radial extent.
fn radial_volume<F>(n: usize, radius: f64, samples: u64, seed: u64, extent: F) -> (f64, f64)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let scale = 1.0 / factorial(n);
    let (m, se) = sample_mean(samples, seed, |rng| {
        let mut s = vec![0.0; n];
        simplex_point(rng, &mut s);
        let top = s.iter().cloned().fold(0.0, f64::max);
        let r = extent(&s).min(radius / top);
        r.powi(n as i32)
    });
    (m * scale, se * scale)
}

fn box_volume<F>(n: usize, radius: f64, samples: u64, seed: u64, inside: F) -> (f64, f64)
where
    F: Fn(&[f64]) -> bool + Sync,
{
    let scale = radius.powi(n as i32);
    let (m, se) = sample_mean(samples, seed, |rng| {
        // (0, R]: 1 - U with U in [0, 1)
        let t: Vec<f64> = (0..n).map(|_| radius * (1.0 - rng.gen::<f64>())).collect();
        if inside(&t) { 1.0 } else { 0.0 }
    });
    (m * scale, se * scale)
}

/// `-b` as floating-point coefficients: `c[i][j] = -gram[i][j]`.
fn coefficients(gram: &SymMatrix) -> Vec<Vec<f64>> {
    let n = gram.n();
    (0..n).map(|i| (0..n).map(|j| -to_f64(gram.get(i, j))).collect()).collect()
}

fn quadratic(c: &[Vec<f64>], t: &[f64]) -> f64 {
    c.iter().zip(t).map(|(row, ti)| ti * row.iter().zip(t).map(|(a, b)| a * b).sum::<f64>()).sum()
}

fn graph_pairs(graph: &Graph) -> Vec<(usize, usize)> {
    graph.edges().map(|e| e.endpoints()).collect()
}

fn in_delta(pairs: &[(usize, usize)], t: &[f64]) -> bool {
    pairs.iter().all(|&(i, j)| t[i] * t[j] <= 1.0)
}

fn delta_extent(pairs: &[(usize, usize)], s: &[f64]) -> f64 {
    pairs.iter().map(|&(i, j)| (s[i] * s[j]).sqrt().recip()).fold(f64::INFINITY, f64::min)
}

/// Raw `vol{t ∈ (0, R]^n : -tᵀ G t <= 1}` for a Gram matrix `G`.
pub fn f_region_volume(
    gram: &SymMatrix,
    radius: f64,
    samples: u64,
    seed: u64,
    sampler: Sampler,
) -> Result<(f64, f64), EstimateError> {
    check(radius, samples)?;
    let c = coefficients(gram);
    let n = gram.n();
    Ok(match sampler {
        Sampler::Radial => radial_volume(n, radius, samples, seed, |s| {
            let f = quadratic(&c, s);
            if f > 0.0 { f.sqrt().recip() } else { f64::INFINITY }
        }),
        Sampler::Box => box_volume(n, radius, samples, seed, |t| quadratic(&c, t) <= 1.0),
    })
}

/// `n |det α| vol{t ∈ (0, R]^n : f(t) <= 1}`: the hull volume truncated at `R`.
pub fn mc_volume_estimate(s: &MarkedSimplex, radius: f64, samples: u64, seed: u64) -> Result<VolumeEstimate, EstimateError> {
    mc_volume_estimate_with(s, radius, samples, seed, Sampler::Radial)
}

pub fn mc_volume_estimate_with(
    s: &MarkedSimplex,
    radius: f64,
    samples: u64,
    seed: u64,
    sampler: Sampler,
) -> Result<VolumeEstimate, EstimateError> {
    let (v, se) = f_region_volume(s.gram(), radius, samples, seed, sampler)?;
    let factor = s.n() as f64 * to_f64(&s.gram().determinant()).abs().sqrt();
    Ok(VolumeEstimate { radius, samples, estimate: factor * v, std_error: factor * se, seed })
}

/// `vol(Δ ∩ (0, R]^n)` for the graph of `s`.
pub fn delta_region_estimate(s: &MarkedSimplex, radius: f64, samples: u64, seed: u64) -> Result<VolumeEstimate, EstimateError> {
    delta_graph_estimate(&s.graph(), radius, samples, seed, Sampler::Radial)
}

pub fn delta_graph_estimate(
    graph: &Graph,
    radius: f64,
    samples: u64,
    seed: u64,
    sampler: Sampler,
) -> Result<VolumeEstimate, EstimateError> {
    check(radius, samples)?;
    let pairs = graph_pairs(graph);
    let (estimate, std_error) = match sampler {
        Sampler::Radial => radial_volume(graph.n(), radius, samples, seed, |s| delta_extent(&pairs, s)),
        Sampler::Box => box_volume(graph.n(), radius, samples, seed, |t| in_delta(&pairs, t)),
    };
    Ok(VolumeEstimate { radius, samples, estimate, std_error, seed })
}

/// `∫ e^{σ(p)}` over `P ∩ [-L, log R]^n`, i.e. `vol(Δ ∩ [e^{-L}, R]^n)` in
/// exponential coordinates, by uniform sampling of the box of `p`.
pub fn delta_exponential_estimate(
    graph: &Graph,
    radius: f64,
    lower_cutoff: f64,
    samples: u64,
    seed: u64,
) -> Result<VolumeEstimate, EstimateError> {
    check(radius, samples)?;
    if !(lower_cutoff.is_finite() && lower_cutoff > 0.0) {
        return Err(EstimateError::BadCutoff(lower_cutoff));
    }
    let (lo, hi) = (-lower_cutoff, radius.ln());
    if hi <= lo {
        return Ok(VolumeEstimate { radius, samples, estimate: 0.0, std_error: 0.0, seed });
    }
    let pairs = graph_pairs(graph);
    let n = graph.n();
    let width = hi - lo;
    let (m, se) = sample_mean(samples, seed, |rng| {
        let p: Vec<f64> = (0..n).map(|_| lo + width * rng.gen::<f64>()).collect();
        if pairs.iter().all(|&(i, j)| p[i] + p[j] <= 0.0) {
            p.iter().sum::<f64>().exp()
        } else {
            0.0
        }
    });
    let scale = width.powi(n as i32);
    Ok(VolumeEstimate { radius, samples, estimate: m * scale, std_error: se * scale, seed })
}

/// Scales `(a, b)` with `a·Δ ⊂ {f <= 1} ⊂ b·Δ`.
///
/// With `c = -G` on the edges, `C₁ = min c` and `K = Σ_loops c_ii + 2 Σ_{i<j} c_ij`,
/// the bound `C₁ g <= f <= K g` for `g(t) = max t_i t_j` over edges gives
/// `a = K^{-1/2}` and `b = C₁^{-1/2}`, since `g` is quadratic.
pub fn sandwich_scales(s: &MarkedSimplex) -> Option<(f64, f64)> {
    let g = s.gram();
    let values: Vec<(bool, f64)> = s.graph().edges().map(|e| {
        let (i, j) = e.endpoints();
        (e.is_loop(), -to_f64(g.get(i, j)))
    }).collect();
    if values.is_empty() {
        return None;
    }
    let c1 = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let k: f64 = values.iter().map(|&(l, c)| if l { c } else { 2.0 * c }).sum();
    Some((k.sqrt().recip(), c1.sqrt().recip()))
}

/// `vol(λΔ ∩ (0, R]^n) = λ^n vol(Δ ∩ (0, R/λ]^n)`.
pub fn scaled_delta_estimate(graph: &Graph, lambda: f64, radius: f64, samples: u64, seed: u64) -> Result<VolumeEstimate, EstimateError> {
    let e = delta_graph_estimate(graph, radius / lambda, samples, seed, Sampler::Radial)?;
    let k = lambda.powi(graph.n() as i32);
    Ok(VolumeEstimate { radius, estimate: e.estimate * k, std_error: e.std_error * k, ..e })
}
