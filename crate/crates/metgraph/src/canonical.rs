//! The canonical measure of a metrized graph and the identities that come
//! with it.
//!
//! The canonical measure is the total-mass-one measure
//!
//! ```text
//! μ_can = Σ_p (1 − n_p/2) δ_p + Σ_e dx|_e / (R_e + L_e)
//! ```
//!
//! (valences `n_p`, deleted-edge resistances `R_e`, with `1/(L_e + ∞) = 0`
//! on bridges). It equals `½ Δ_x r(x, y) + δ_y` for every choice of `y`;
//! integrating `r(e)/L_e` over edges against it yields Foster's theorem
//! `Σ_e r(e)/L_e = #V − 1` and the cycle-rank identity
//! `Σ_e L_e/(R_e + L_e) = #E − #V + 1`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::calculus::{GraphMeasure, PiecewisePolyFunction};
use crate::graph::{GraphPoint, Refinement, WeightedGraph};
use crate::poly::Poly;
use crate::potential;
use crate::reduction;

/// The canonical measure: atoms `1 − n_p/2` at the vertices (zero-mass
/// atoms at valence-2 vertices are dropped) plus the constant density
/// `1/(R_e + L_e)` along each edge.
pub fn canonical_measure(graph: &Arc<WeightedGraph>) -> GraphMeasure {
    let atoms = (0..graph.vertex_count())
        .map(|v| (graph.vertex_point(v), 1.0 - graph.valence(v) as f64 / 2.0))
        .collect();
    let densities = (0..graph.edge_count())
        .map(|e| {
            let c = reduction::edge_deleted_resistance(graph, e)
                .series_conductance(graph.edge(e).length);
            if c == 0.0 {
                Poly::zero()
            } else {
                Poly::constant(c)
            }
        })
        .collect();
    GraphMeasure::assemble(Arc::clone(graph), atoms, densities)
}

/// Foster's sum `Σ_e r(e)/L_e`, where `r(e)` is the effective resistance
/// between the endpoints of `e` on the full graph. Equals `#V − 1`.
pub fn foster_sum(graph: &Arc<WeightedGraph>) -> f64 {
    graph
        .edges()
        .iter()
        .map(|edge| {
            let r = potential::effective_resistance(
                graph,
                graph.vertex_point(edge.u),
                graph.vertex_point(edge.v),
            );
            r / edge.length
        })
        .sum()
}

/// The cycle-rank sum `Σ_e L_e/(R_e + L_e)` (bridge terms vanish).
/// Equals `#E − #V + 1`, the number of independent cycles.
pub fn cycle_rank_sum(graph: &Arc<WeightedGraph>) -> f64 {
    graph
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            edge.length
                * reduction::edge_deleted_resistance(graph, e).series_conductance(edge.length)
        })
        .sum()
}

/// The resistance profile `r(·, y)` reconstructed as a piecewise-quadratic
/// function on the model refined at `y`.
///
/// On each refined edge the profile is the quadratic through three exact
/// resistance evaluations (the two endpoints and the midpoint); since
/// `r(·, y)` is exactly quadratic per segment, the fit reproduces it.
#[derive(Clone, Debug)]
pub struct ResistanceProfile {
    refinement: Refinement,
    func: PiecewisePolyFunction,
    anchor: GraphPoint,
}

impl ResistanceProfile {
    pub fn new(graph: &Arc<WeightedGraph>, y: GraphPoint) -> Self {
        let refinement = Refinement::at_points(graph, &[y]);
        let fine = refinement.fine().clone();
        let anchor = refinement.map_point(y);
        let vertex_r: Vec<f64> = (0..fine.vertex_count())
            .map(|v| potential::effective_resistance(&fine, fine.vertex_point(v), anchor))
            .collect();
        let parts = fine
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| {
                let l = edge.length;
                let r0 = vertex_r[edge.u];
                let r1 = vertex_r[edge.v];
                let mid = fine.point(e, 0.5 * l).expect("midpoint lies on the edge");
                let rm = potential::effective_resistance(&fine, mid, anchor);
                // quadratic through (0, r0), (l/2, rm), (l, r1)
                let c1 = (4.0 * rm - 3.0 * r0 - r1) / l;
                let c2 = (2.0 * r0 + 2.0 * r1 - 4.0 * rm) / (l * l);
                Poly::new(alloc::vec![r0, c1, c2])
            })
            .collect();
        let func = PiecewisePolyFunction::from_parts(fine, parts);
        ResistanceProfile {
            refinement,
            func,
            anchor,
        }
    }

    /// The refined model the profile lives on.
    pub fn fine(&self) -> &Arc<WeightedGraph> {
        self.refinement.fine()
    }

    pub fn refinement(&self) -> &Refinement {
        &self.refinement
    }

    /// `r(·, y)` as a piecewise-quadratic function on the refined model.
    pub fn function(&self) -> &PiecewisePolyFunction {
        &self.func
    }

    /// The anchor `y` in refined-model coordinates.
    pub fn anchor(&self) -> GraphPoint {
        self.anchor
    }

    /// `r(p, y)` in original coordinates.
    pub fn value(&self, p: GraphPoint) -> f64 {
        self.func.evaluate(self.refinement.map_point(p))
    }
}

/// The invariant `τ(Γ) = ½ ∫ r(x, y) dμ_can(x)`, independent of `y`.
///
/// Computed in closed form: the quadratic resistance profile is integrated
/// exactly against the canonical measure of the refined model.
pub fn tau(graph: &Arc<WeightedGraph>, y: GraphPoint) -> f64 {
    let profile = ResistanceProfile::new(graph, y);
    let mu = canonical_measure(profile.fine());
    0.5 * mu
        .integrate(profile.function())
        .expect("profile and measure share the refined model")
}
