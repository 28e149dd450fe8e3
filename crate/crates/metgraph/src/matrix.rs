//! The combinatorial Laplacian (Kirchhoff) matrix of a model and its
//! correspondence with the measure-valued Laplacian on piecewise-affine
//! functions: for the vector `f̂` of vertex values, `Δf = Σ_i [Qf̂]_i δ_{v_i}`.
//!
//! [`solve_grounded`] inverts `Q` on the mass-zero subspace by Dirichlet
//! grounding: the ground vertex's row and column are deleted, the remaining
//! symmetric positive definite system is solved directly, and the ground
//! value is pinned to zero.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::calculus::PiecewisePolyFunction;
use crate::graph::{Refinement, WeightedGraph};
use crate::linalg::{cholesky_solve, Matrix};
use crate::poly::Poly;

/// Post-solve residual bound `‖Qf̂ − c‖_∞` asserted by [`solve_grounded`].
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Atoms produced by [`discrete_laplacian`] below this magnitude are dropped.
const MASS_DROP_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum SolveError {
    /// The prescribed atom masses do not sum to zero.
    MassNotZero { total: f64 },
    /// The grounded system is not positive definite. Unreachable for a
    /// validated (connected) graph; signals a disconnected model.
    SingularSystem,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::MassNotZero { total } => {
                write!(f, "measure has nonzero total mass {total:e}")
            }
            SolveError::SingularSystem => write!(f, "grounded system is singular"),
        }
    }
}

impl core::error::Error for SolveError {}

/// The Laplacian matrix `Q` of a model: `Q_ij = -1/L_ij` for adjacent
/// vertices, row sums zero on the diagonal. Symmetric positive semidefinite
/// with one-dimensional kernel spanned by the constant vector.
#[derive(Clone, Debug)]
pub struct LaplacianMatrix {
    graph: Arc<WeightedGraph>,
    inner: Matrix,
}

impl LaplacianMatrix {
    pub fn new(graph: &Arc<WeightedGraph>) -> Self {
        let n = graph.vertex_count();
        let mut inner = Matrix::zeros(n);
        for edge in graph.edges() {
            let w = 1.0 / edge.length;
            inner.add(edge.u, edge.u, w);
            inner.add(edge.v, edge.v, w);
            inner.add(edge.u, edge.v, -w);
            inner.add(edge.v, edge.u, -w);
        }
        LaplacianMatrix {
            graph: Arc::clone(graph),
            inner,
        }
    }

    pub fn graph(&self) -> &Arc<WeightedGraph> {
        &self.graph
    }

    pub fn size(&self) -> usize {
        self.inner.size()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.inner.get(i, j)
    }

    /// `Q x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.inner.mul_vec(x)
    }
}

/// A function on the vertices of a model.
#[derive(Clone, Debug)]
pub struct VertexFunction {
    graph: Arc<WeightedGraph>,
    values: Vec<f64>,
}

impl VertexFunction {
    pub fn new(graph: Arc<WeightedGraph>, values: Vec<f64>) -> Self {
        assert_eq!(
            values.len(),
            graph.vertex_count(),
            "one value per vertex required"
        );
        VertexFunction { graph, values }
    }

    pub fn graph(&self) -> &Arc<WeightedGraph> {
        &self.graph
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    /// The unique piecewise-affine function agreeing with these values at
    /// the vertices: linear interpolation along every edge.
    pub fn interpolate_affine(&self) -> PiecewisePolyFunction {
        let parts = self
            .graph
            .edges()
            .iter()
            .map(|edge| {
                let a = self.values[edge.u];
                let b = self.values[edge.v];
                Poly::linear(a, (b - a) / edge.length)
            })
            .collect();
        PiecewisePolyFunction::from_parts(Arc::clone(&self.graph), parts)
    }
}

/// The atoms `[Qf̂]_i δ_{v_i}` of the Laplacian of the affine interpolation
/// of `f`, as (vertex, mass) pairs with zero masses dropped.
pub fn discrete_laplacian(f: &VertexFunction) -> Vec<(usize, f64)> {
    let q = LaplacianMatrix::new(f.graph());
    q.apply(f.values())
        .into_iter()
        .enumerate()
        .filter(|(_, m)| m.abs() > MASS_DROP_TOL)
        .collect()
}

/// Solves `Δf = Σ c_i δ_{v_i}` for a piecewise-affine `f` with `f(ground) = 0`.
///
/// Atom locations must be vertices and masses must sum to (numerically)
/// zero; the solution is unique. The returned values satisfy
/// `‖Qf̂ − c‖_∞ <` [`RESIDUAL_TOL`], asserted.
pub fn solve_grounded(
    graph: &Arc<WeightedGraph>,
    atoms: &[(usize, f64)],
    ground: usize,
) -> Result<VertexFunction, SolveError> {
    let n = graph.vertex_count();
    let mut rhs = vec![0.0f64; n];
    for &(v, mass) in atoms {
        assert!(v < n, "atom must sit at a vertex");
        rhs[v] += mass;
    }
    let total: f64 = rhs.iter().sum();
    if total.abs() > RESIDUAL_TOL {
        return Err(SolveError::MassNotZero { total });
    }

    let q = LaplacianMatrix::new(graph);
    // Delete the ground row/column; the remainder is positive definite.
    let keep: Vec<usize> = (0..n).filter(|&v| v != ground).collect();
    let reduced = Matrix::from_fn(keep.len(), |i, j| q.entry(keep[i], keep[j]));
    let reduced_rhs: Vec<f64> = keep.iter().map(|&v| rhs[v]).collect();
    let solution = cholesky_solve(&reduced, &reduced_rhs).ok_or(SolveError::SingularSystem)?;

    let mut values = vec![0.0f64; n];
    for (slot, &v) in keep.iter().enumerate() {
        values[v] = solution[slot];
    }
    let residual = q
        .apply(&values)
        .iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(
        residual < RESIDUAL_TOL,
        "grounded solve residual {residual:e} exceeds {RESIDUAL_TOL:e}"
    );
    Ok(VertexFunction::new(Arc::clone(graph), values))
}

/// The piecewise-affine approximation `f_N`: each edge is split into `n`
/// equal parts and `f` is interpolated linearly between its values at the
/// vertices of the refined model. Returns the approximation together with
/// the refinement it lives on.
pub fn affine_approximation(
    f: &PiecewisePolyFunction,
    n: usize,
) -> (PiecewisePolyFunction, Refinement) {
    assert!(n >= 1);
    let splits = vec![n; f.graph().edge_count()];
    let refinement = Refinement::uniform(f.graph(), &splits);
    let fine = refinement.fine();
    let fine_f = refinement.transfer(f);
    let values: Vec<f64> = (0..fine.vertex_count())
        .map(|v| fine_f.vertex_value(v))
        .collect();
    let approx = VertexFunction::new(Arc::clone(fine), values).interpolate_affine();
    (approx, refinement)
}
