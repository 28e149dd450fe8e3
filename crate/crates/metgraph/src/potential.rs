//! Electrical potential theory on a metrized graph: the j-function,
//! effective resistance, and current flows.
//!
//! `j_z(x, y)` is the potential at `x` when one unit of current enters the
//! network at `y` and exits at the grounded point `z`; it is the unique
//! piecewise-affine function with `Δ_x j = δ_y − δ_z` and `j(z) = 0`. The
//! effective resistance is `r(x, y) = j_y(x, x)`.
//!
//! Queries at interior points are handled by refining the model at the
//! query points and solving the grounded Kirchhoff system there; results
//! are reported back in the original model's coordinates.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::calculus::{GraphMeasure, PiecewisePolyFunction};
use crate::graph::{GraphPoint, Refinement, WeightedGraph};
use crate::matrix::{solve_grounded, SolveError};

#[derive(Clone, Debug, PartialEq)]
pub enum PotentialError {
    /// Current must enter and exit at distinct points.
    SourceEqualsSink,
    /// The prescribed measure does not have total mass zero.
    MassNotZero { total: f64 },
}

impl fmt::Display for PotentialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialError::SourceEqualsSink => write!(f, "source and sink coincide"),
            PotentialError::MassNotZero { total } => {
                write!(f, "measure has nonzero total mass {total:e}")
            }
        }
    }
}

impl core::error::Error for PotentialError {}

/// A grounded piecewise-affine potential, living on the model refined at
/// its defining points. Values can be queried in original coordinates.
#[derive(Clone, Debug)]
pub struct Potential {
    refinement: Refinement,
    func: PiecewisePolyFunction,
}

impl Potential {
    /// Solves `Δf = Σ c_i δ_{p_i}`, `f(ground) = 0` by refining at the atom
    /// locations and the ground and solving the grounded vertex system.
    fn solve(
        graph: &Arc<WeightedGraph>,
        atoms: &[(GraphPoint, f64)],
        ground: GraphPoint,
    ) -> Result<Potential, SolveError> {
        let mut points: Vec<GraphPoint> = atoms.iter().map(|&(p, _)| p).collect();
        points.push(ground);
        let refinement = Refinement::at_points(graph, &points);
        let fine = refinement.fine();
        let vertex_atoms: Vec<(usize, f64)> = atoms
            .iter()
            .map(|&(p, mass)| {
                let v = fine
                    .point_vertex(refinement.map_point(p))
                    .expect("atom point was made a vertex");
                (v, mass)
            })
            .collect();
        let ground_vertex = fine
            .point_vertex(refinement.map_point(ground))
            .expect("ground point was made a vertex");
        let values = solve_grounded(fine, &vertex_atoms, ground_vertex)?;
        Ok(Potential {
            func: values.interpolate_affine(),
            refinement,
        })
    }

    /// The model the potential was solved on (the refined graph).
    pub fn fine(&self) -> &Arc<WeightedGraph> {
        self.refinement.fine()
    }

    pub fn refinement(&self) -> &Refinement {
        &self.refinement
    }

    /// The piecewise-affine solution on the refined model.
    pub fn function(&self) -> &PiecewisePolyFunction {
        &self.func
    }

    /// Value at a point given in original-model coordinates.
    pub fn value(&self, p: GraphPoint) -> f64 {
        self.func.evaluate(self.refinement.map_point(p))
    }
}

/// The j-function `j_z(·, y)`: the unique piecewise-affine function with
/// `Δ_x j = δ_y − δ_z` and `j(z) = 0`. For `y = z` it is identically zero.
pub fn j_function(graph: &Arc<WeightedGraph>, y: GraphPoint, z: GraphPoint) -> Potential {
    Potential::solve(graph, &[(y, 1.0), (z, -1.0)], z)
        .expect("unit dipole has mass zero and connected models solve")
}

/// `j_z(x, y)` as a number.
pub fn j_value(graph: &Arc<WeightedGraph>, x: GraphPoint, y: GraphPoint, z: GraphPoint) -> f64 {
    j_function(graph, y, z).value(x)
}

/// Effective resistance `r(x, y) = j_y(x, x)`: the voltage drop between `x`
/// and `y` under a unit current. Zero when the points coincide.
pub fn effective_resistance(graph: &Arc<WeightedGraph>, x: GraphPoint, y: GraphPoint) -> f64 {
    if graph.points_eq(x, y) {
        return 0.0;
    }
    j_function(graph, x, y).value(x)
}

/// Solves the discrete Poisson problem `Δf = ν`, `f(z) = 0` for a discrete
/// measure `ν = Σ c_i δ_{p_i}` of total mass zero.
pub fn solve_measure_poisson(
    graph: &Arc<WeightedGraph>,
    atoms: &[(GraphPoint, f64)],
    z: GraphPoint,
) -> Result<Potential, PotentialError> {
    let total: f64 = atoms.iter().map(|&(_, m)| m).sum();
    if total.abs() > crate::matrix::RESIDUAL_TOL {
        return Err(PotentialError::MassNotZero { total });
    }
    match Potential::solve(graph, atoms, z) {
        Ok(p) => Ok(p),
        Err(SolveError::MassNotZero { total }) => Err(PotentialError::MassNotZero { total }),
        Err(SolveError::SingularSystem) => {
            unreachable!("validated graphs are connected, the grounded system is SPD")
        }
    }
}

/// A steady current flow: `I` units enter at `a` and exit at `b`, with the
/// potential normalized to zero at a chosen ground.
#[derive(Clone, Debug)]
pub struct PotentialSolution {
    potential: Potential,
    source: GraphPoint,
    sink: GraphPoint,
    amps: f64,
}

/// Solves for the electric potential of the flow `I·δ_a − I·δ_b` with
/// `φ(ground) = 0`, i.e. `φ = I·(j_g(·,a) − j_g(·,b))`.
pub fn solve_current(
    graph: &Arc<WeightedGraph>,
    a: GraphPoint,
    b: GraphPoint,
    amps: f64,
    ground: GraphPoint,
) -> Result<PotentialSolution, PotentialError> {
    if graph.points_eq(a, b) {
        return Err(PotentialError::SourceEqualsSink);
    }
    let potential =
        Potential::solve(graph, &[(a, amps), (b, -amps)], ground).expect("dipole has mass zero");
    // Δφ must reproduce I·δ_a − I·δ_b on the refined model.
    let fine = potential.fine().clone();
    let expected = GraphMeasure::discrete(
        fine.clone(),
        alloc::vec![
            (potential.refinement.map_point(a), amps),
            (potential.refinement.map_point(b), -amps),
        ],
    );
    let tol = 1e-9 * amps.abs().max(1.0);
    assert!(
        potential.func.laplacian().approx_eq(&expected, tol),
        "current solution violates Δφ = I·δ_a − I·δ_b"
    );
    assert!(potential.value(ground).abs() <= tol);
    Ok(PotentialSolution {
        source: potential.refinement.map_point(a),
        sink: potential.refinement.map_point(b),
        potential,
        amps,
    })
}

impl PotentialSolution {
    /// The refined model the flow lives on.
    pub fn fine(&self) -> &Arc<WeightedGraph> {
        self.potential.fine()
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    /// Source location in refined-model coordinates.
    pub fn source(&self) -> GraphPoint {
        self.source
    }

    /// Sink location in refined-model coordinates.
    pub fn sink(&self) -> GraphPoint {
        self.sink
    }

    pub fn amps(&self) -> f64 {
        self.amps
    }

    /// The current `i_e = −φ'_e` across a refined-model edge, with respect
    /// to the edge's stored orientation.
    pub fn current_on_edge(&self, e: usize) -> f64 {
        -self
            .potential
            .func
            .coefficients(e)
            .get(1)
            .copied()
            .unwrap_or(0.0)
    }
}
