//! Computation on metrized graphs: finite weighted graphs whose edges are
//! genuine line segments, carrying a path metric.
//!
//! The crate models a metrized graph by a weighted graph (vertex names plus
//! edges with positive lengths) and provides the analytic toolkit built on
//! top of that model:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | models, refinement, point addressing, path metric |
//! | [`calculus`] | piecewise-polynomial functions, measures, the measure-valued Laplacian |
//! | [`matrix`] | the Kirchhoff (Laplacian) matrix, grounded solves, affine approximation |
//! | [`potential`] | the j-function, effective resistance, current flows |
//! | [`reduction`] | series/parallel reduction and the deleted-edge resistance |
//! | [`canonical`] | the canonical measure, Foster/cycle-rank sums, the tau invariant |
//! | [`spectral`] | eigenfunctions anchored at a point mass, generalized Fourier expansions |
//!
//! Everything is pure and immutable after construction: values can be shared
//! freely across threads. The crate is `no_std`-compatible (`alloc` required;
//! disable the default `std` feature and enable `libm` instead).
//!
//! ```
//! use std::sync::Arc;
//! use metgraph::WeightedGraph;
//! use metgraph::canonical::{canonical_measure, tau};
//! use metgraph::potential::effective_resistance;
//!
//! // a circle of length 1, modelled with three arcs
//! let g = Arc::new(WeightedGraph::build(
//!     &["A", "B", "C"],
//!     &[("e1", "A", "B", 1.0 / 3.0),
//!       ("e2", "B", "C", 1.0 / 3.0),
//!       ("e3", "C", "A", 1.0 / 3.0)],
//! )?);
//!
//! // arcs of length 1/3 and 2/3 in parallel
//! let r = effective_resistance(&g, g.vertex_point(0), g.vertex_point(1));
//! assert!((r - 2.0 / 9.0).abs() < 1e-12);
//!
//! // the canonical measure always has total mass one
//! assert!((canonical_measure(&g).total_mass() - 1.0).abs() < 1e-12);
//!
//! // the tau invariant of a unit circle is 1/12, independent of the anchor
//! assert!((tau(&g, g.point(1, 0.2)?) - 1.0 / 12.0).abs() < 1e-12);
//! # Ok::<(), metgraph::GraphError>(())
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("metgraph needs either the `std` feature or the `libm` feature");

extern crate alloc;

pub mod calculus;
pub mod canonical;
pub mod graph;
pub mod matrix;
pub mod potential;
pub mod reduction;
pub mod spectral;

mod linalg;
mod num;
mod poly;

pub use calculus::{CalculusError, Direction, GraphMeasure, PiecewisePolyFunction, Sense};
pub use canonical::ResistanceProfile;
pub use graph::{GraphError, GraphPoint, Refinement, WeightedGraph};
pub use matrix::{LaplacianMatrix, SolveError, VertexFunction};
pub use potential::{Potential, PotentialError, PotentialSolution};
pub use reduction::{ReductionError, Resistance, TwoTerminalNetwork};
pub use spectral::{FourierCoefficients, SpectralError, Spectrum};
