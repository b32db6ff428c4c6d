//! Geodesic simplices of pseudo-hyperbolic space `H^{p,q}` in exact arithmetic.
//!
//! A simplex is stored through its Gram matrix. From it the crate derives the
//! Gram graph and cocycle, decides isometry by twisted graph cohomology, and
//! decides whether the convex hull has finite volume by a stable-set
//! criterion, cross-checked by a weight oracle, an LP and Monte Carlo.

pub mod census;
pub mod cli;
pub mod cohomology;
pub mod dense;
pub mod estimate;
pub mod forms;
pub mod graph;
pub mod lp;
pub mod named;
pub mod rational;
pub mod simplex;
pub mod volume;
