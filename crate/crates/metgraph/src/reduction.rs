//! Two-terminal resistance by series/parallel reduction, the deleted-edge
//! resistance `R_e`, and the explicit per-segment resistance formula.
//!
//! The reducer is an independent oracle for [`crate::potential`]: it never
//! touches the linear solver, applying only the two circuit transforms
//! (series: resistances add; parallel: conductances add) on an internal
//! multigraph. Networks that the two rules cannot collapse report
//! [`ReductionError::NotSeriesParallel`], signalling callers to fall back
//! to the solver.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{GraphPoint, Refinement, WeightedGraph};
use crate::potential;

/// A resistance value that may be infinite. Arithmetic follows the circuit
/// conventions exactly: `x + ∞ = ∞` and `1/(L + ∞) = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Resistance {
    Finite(f64),
    Infinite,
}

impl Resistance {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Resistance::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            Resistance::Finite(r) => Some(r),
            Resistance::Infinite => None,
        }
    }

    /// `1 / (length + R)`, exactly zero for infinite `R`.
    pub fn series_conductance(&self, length: f64) -> f64 {
        match *self {
            Resistance::Finite(r) => 1.0 / (length + r),
            Resistance::Infinite => 0.0,
        }
    }

    /// The parallel combination with a wire of the given length:
    /// `L·R/(L + R)`, which is `L` itself for infinite `R`.
    pub fn parallel_with(&self, length: f64) -> f64 {
        match *self {
            Resistance::Finite(r) => length * r / (length + r),
            Resistance::Infinite => length,
        }
    }
}

impl fmt::Display for Resistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resistance::Finite(r) => write!(f, "{r}"),
            Resistance::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ReductionError {
    /// The two terminals coincide.
    TerminalsEqual,
    /// Series and parallel transforms alone cannot collapse the network.
    NotSeriesParallel,
    /// The offset lies outside the edge.
    OffsetOutOfRange {
        edge: alloc::string::String,
        offset: f64,
    },
    /// The named vertex is not an endpoint of the edge.
    NotAnEndpoint {
        edge: alloc::string::String,
        vertex: alloc::string::String,
    },
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::TerminalsEqual => write!(f, "terminals coincide"),
            ReductionError::NotSeriesParallel => {
                write!(f, "network is not series-parallel reducible")
            }
            ReductionError::OffsetOutOfRange { edge, offset } => {
                write!(f, "offset {offset} lies outside edge `{edge}`")
            }
            ReductionError::NotAnEndpoint { edge, vertex } => {
                write!(f, "vertex `{vertex}` is not an endpoint of edge `{edge}`")
            }
        }
    }
}

impl core::error::Error for ReductionError {}

/// `R_e`: the effective resistance between the endpoints of `e` measured on
/// the graph with the open interior of `e` deleted; infinite for bridges.
pub fn edge_deleted_resistance(graph: &Arc<WeightedGraph>, e: usize) -> Resistance {
    if graph.is_bridge(e) {
        return Resistance::Infinite;
    }
    let removed = graph.edge(e);
    let vertices: Vec<&str> = (0..graph.vertex_count())
        .map(|v| graph.vertex_name(v))
        .collect();
    let edges: Vec<(&str, &str, &str, f64)> = graph
        .edges()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != e)
        .map(|(_, edge)| {
            (
                edge.id.as_str(),
                graph.vertex_name(edge.u),
                graph.vertex_name(edge.v),
                edge.length,
            )
        })
        .collect();
    let complement = Arc::new(
        WeightedGraph::build(&vertices, &edges)
            .expect("deleting a non-bridge keeps the model valid"),
    );
    let r = potential::effective_resistance(
        &complement,
        complement.vertex_point(removed.u),
        complement.vertex_point(removed.v),
    );
    Resistance::Finite(r)
}

/// `r(e)`: effective resistance between the endpoints of `e` on the full
/// graph, via the parallel law `r(e) = L_e·R_e/(L_e + R_e)`.
pub fn edge_resistance(graph: &Arc<WeightedGraph>, e: usize) -> f64 {
    edge_deleted_resistance(graph, e).parallel_with(graph.edge(e).length)
}

/// Resistance between the point at stored offset `t` on `e` and the
/// endpoint `toward`, from the per-segment formula
/// `r = d − d²/(L_e + R_e)` with `d` the arclength distance from `toward`
/// (the quadratic term vanishes for bridges).
pub fn resistance_on_segment(
    graph: &Arc<WeightedGraph>,
    e: usize,
    t: f64,
    toward: usize,
) -> Result<f64, ReductionError> {
    let edge = graph.edge(e);
    if !(0.0..=edge.length).contains(&t) {
        return Err(ReductionError::OffsetOutOfRange {
            edge: edge.id.clone(),
            offset: t,
        });
    }
    let d = if toward == edge.u {
        t
    } else if toward == edge.v {
        edge.length - t
    } else {
        return Err(ReductionError::NotAnEndpoint {
            edge: edge.id.clone(),
            vertex: alloc::string::String::from(graph.vertex_name(toward)),
        });
    };
    let inv = edge_deleted_resistance(graph, e).series_conductance(edge.length);
    Ok(d - d * d * inv)
}

/// A graph with a distinguished pair of distinct terminals.
#[derive(Clone, Debug)]
pub struct TwoTerminalNetwork {
    graph: Arc<WeightedGraph>,
    x: GraphPoint,
    y: GraphPoint,
}

impl TwoTerminalNetwork {
    pub fn new(
        graph: Arc<WeightedGraph>,
        x: GraphPoint,
        y: GraphPoint,
    ) -> Result<Self, ReductionError> {
        if graph.points_eq(x, y) {
            return Err(ReductionError::TerminalsEqual);
        }
        Ok(TwoTerminalNetwork { graph, x, y })
    }

    pub fn graph(&self) -> &Arc<WeightedGraph> {
        &self.graph
    }

    pub fn terminals(&self) -> (GraphPoint, GraphPoint) {
        (self.x, self.y)
    }
}

/// Edges of the working multigraph; killed entries stay in place so scans
/// remain deterministic by index.
#[derive(Clone, Copy)]
struct WorkEdge {
    u: usize,
    v: usize,
    r: f64,
    alive: bool,
}

/// Terminal resistance via exhaustive series/parallel reduction.
///
/// Each pass first merges the lowest-indexed parallel pair (conductances
/// add), then eliminates the lowest-indexed non-terminal vertex of degree
/// two (resistances add). Succeeds when a single edge joining the terminals
/// remains; anything else is [`ReductionError::NotSeriesParallel`].
pub fn series_parallel_resistance(net: &TwoTerminalNetwork) -> Result<f64, ReductionError> {
    let refinement = Refinement::at_points(&net.graph, &[net.x, net.y]);
    let fine = refinement.fine();
    let term_x = fine
        .point_vertex(refinement.map_point(net.x))
        .expect("terminal was made a vertex");
    let term_y = fine
        .point_vertex(refinement.map_point(net.y))
        .expect("terminal was made a vertex");

    let mut edges: Vec<WorkEdge> = fine
        .edges()
        .iter()
        .map(|e| WorkEdge {
            u: e.u,
            v: e.v,
            r: e.length,
            alive: true,
        })
        .collect();
    let n = fine.vertex_count();
    let is_terminal = |v: usize| v == term_x || v == term_y;

    loop {
        // Parallel merge: first alive pair with the same endpoint set.
        let mut merged = false;
        'parallel: for i in 0..edges.len() {
            if !edges[i].alive {
                continue;
            }
            for j in i + 1..edges.len() {
                if !edges[j].alive {
                    continue;
                }
                let same = (edges[i].u == edges[j].u && edges[i].v == edges[j].v)
                    || (edges[i].u == edges[j].v && edges[i].v == edges[j].u);
                if same {
                    edges[i].r = edges[i].r * edges[j].r / (edges[i].r + edges[j].r);
                    edges[j].alive = false;
                    merged = true;
                    break 'parallel;
                }
            }
        }
        if merged {
            continue;
        }

        // Series elimination: first non-terminal vertex of degree two.
        let mut eliminated = false;
        for p in 0..n {
            if is_terminal(p) {
                continue;
            }
            let incident: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.alive && (e.u == p || e.v == p))
                .map(|(k, _)| k)
                .collect();
            if incident.len() != 2 {
                continue;
            }
            let (i, j) = (incident[0], incident[1]);
            let a = if edges[i].u == p {
                edges[i].v
            } else {
                edges[i].u
            };
            let b = if edges[j].u == p {
                edges[j].v
            } else {
                edges[j].u
            };
            // Two edges between the same pair would have been merged above.
            debug_assert_ne!(a, b);
            edges[i] = WorkEdge {
                u: a,
                v: b,
                r: edges[i].r + edges[j].r,
                alive: true,
            };
            edges[j].alive = false;
            eliminated = true;
            break;
        }
        if !eliminated {
            break;
        }
    }

    let alive: Vec<&WorkEdge> = edges.iter().filter(|e| e.alive).collect();
    match alive.as_slice() {
        [only]
            if (only.u == term_x && only.v == term_y) || (only.u == term_y && only.v == term_x) =>
        {
            Ok(only.r)
        }
        _ => Err(ReductionError::NotSeriesParallel),
    }
}
