//! Weighted-graph models of metrized graphs.
//!
//! A [`WeightedGraph`] is a finite connected graph with named vertices and
//! edges carrying positive lengths; it stands for the metric space obtained
//! by gluing a line segment of the given length along each edge. Loops and
//! multiple edges are rejected: a circle, for example, must be modelled with
//! at least three vertices. Models differing only by subdivision describe
//! the same metrized graph, and [`Refinement`] moves points and functions
//! between such models.
//!
//! Every value here is immutable after construction and all operations are
//! pure, so sharing across threads needs no synchronization.

use alloc::collections::BinaryHeap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

/// Default tolerance for structural equality of points (arclength units).
pub const POINT_TOL: f64 = 1e-12;

/// One edge of a model: endpoints by vertex index plus a positive length.
/// The arclength coordinate `t ∈ [0, length]` runs from `u` to `v` in the
/// order the endpoints were declared.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

impl Edge {
    /// The endpoint opposite to `vertex`, if `vertex` is an endpoint.
    pub fn opposite(&self, vertex: usize) -> Option<usize> {
        if vertex == self.u {
            Some(self.v)
        } else if vertex == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

/// A location on the metrized graph: an edge index plus an arclength offset
/// from the edge's first endpoint.
///
/// Points are canonicalized on construction (see [`WeightedGraph::point`]):
/// an offset within tolerance of `0` or of the edge length snaps exactly to
/// the endpoint, and endpoint locations are rewritten to the vertex's single
/// canonical representation, chosen as the lexicographically smallest
/// incident `(edge id, endpoint)` pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphPoint {
    pub edge: usize,
    pub t: f64,
}

/// Errors from model construction and point addressing. Each names the
/// offending element.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphError {
    DuplicateName { name: String },
    UnknownVertex { edge: String, vertex: String },
    LoopEdge { edge: String },
    MultiEdge { edge: String },
    NonpositiveLength { edge: String },
    NoVertices,
    Disconnected,
    OffsetOutOfRange { edge: String, offset: f64 },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateName { name } => write!(f, "duplicate name `{name}`"),
            GraphError::UnknownVertex { edge, vertex } => {
                write!(f, "edge `{edge}` references unknown vertex `{vertex}`")
            }
            GraphError::LoopEdge { edge } => write!(f, "edge `{edge}` is a loop"),
            GraphError::MultiEdge { edge } => {
                write!(f, "edge `{edge}` duplicates an existing endpoint pair")
            }
            GraphError::NonpositiveLength { edge } => {
                write!(f, "edge `{edge}` has non-positive length")
            }
            GraphError::NoVertices => write!(f, "graph has no vertices"),
            GraphError::Disconnected => write!(f, "graph is not connected"),
            GraphError::OffsetOutOfRange { edge, offset } => {
                write!(f, "offset {offset} lies outside edge `{edge}`")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// A validated model of a metrized graph.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    /// Incident edge indices per vertex, ascending.
    incident: Vec<Vec<usize>>,
    /// Canonical point representation per vertex.
    canon: Vec<GraphPoint>,
    point_tol: f64,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl WeightedGraph {
    /// Builds and validates a model from vertex names and edge descriptors
    /// `(id, u, v, length)`.
    pub fn build(vertices: &[&str], edges: &[(&str, &str, &str, f64)]) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(GraphError::DuplicateName { name: name.clone() });
            }
        }
        let index_of = |name: &str| names.iter().position(|n| n == name);
        let mut built: Vec<Edge> = Vec::with_capacity(edges.len());
        for &(id, u, v, length) in edges {
            if built.iter().any(|e| e.id == id) || names.iter().any(|n| n == id) {
                return Err(GraphError::DuplicateName {
                    name: id.to_string(),
                });
            }
            let ui = index_of(u).ok_or_else(|| GraphError::UnknownVertex {
                edge: id.to_string(),
                vertex: u.to_string(),
            })?;
            let vi = index_of(v).ok_or_else(|| GraphError::UnknownVertex {
                edge: id.to_string(),
                vertex: v.to_string(),
            })?;
            if ui == vi {
                return Err(GraphError::LoopEdge {
                    edge: id.to_string(),
                });
            }
            if built
                .iter()
                .any(|e| (e.u, e.v) == (ui, vi) || (e.u, e.v) == (vi, ui))
            {
                return Err(GraphError::MultiEdge {
                    edge: id.to_string(),
                });
            }
            if length <= 0.0 || !length.is_finite() {
                return Err(GraphError::NonpositiveLength {
                    edge: id.to_string(),
                });
            }
            built.push(Edge {
                id: id.to_string(),
                u: ui,
                v: vi,
                length,
            });
        }
        let g = Self::assemble(names, built, POINT_TOL);
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Internal constructor for graphs already known to be structurally
    /// valid (used by refinement, which never introduces violations).
    fn assemble(vertices: Vec<String>, edges: Vec<Edge>, point_tol: f64) -> Self {
        let mut incident = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            incident[e.u].push(k);
            incident[e.v].push(k);
        }
        let canon = (0..vertices.len())
            .map(|p| {
                let best = incident[p]
                    .iter()
                    .copied()
                    .min_by(|&a, &b| edges[a].id.cmp(&edges[b].id));
                match best {
                    Some(e) if edges[e].u == p => GraphPoint { edge: e, t: 0.0 },
                    Some(e) => GraphPoint {
                        edge: e,
                        t: edges[e].length,
                    },
                    // Isolated vertices only occur in invalid graphs, which
                    // `build` rejects before this representation is used.
                    None => GraphPoint {
                        edge: usize::MAX,
                        t: 0.0,
                    },
                }
            })
            .collect();
        WeightedGraph {
            vertices,
            edges,
            incident,
            canon,
            point_tol,
        }
    }

    /// Returns a copy using `tol` for point snapping and point equality.
    pub fn with_point_tolerance(mut self, tol: f64) -> Self {
        self.point_tol = tol;
        self
    }

    pub fn point_tolerance(&self) -> f64 {
        self.point_tol
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|n| n == name)
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Edge indices incident to `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Number of directions leaving `v`.
    pub fn valence(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Independent cycles: `#E − #V + 1` for a connected graph.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// The canonical point sitting at vertex `v`.
    pub fn vertex_point(&self, v: usize) -> GraphPoint {
        self.canon[v]
    }

    /// Canonicalizes a location on edge `e` at offset `t`, snapping offsets
    /// within the point tolerance of an endpoint onto the vertex.
    pub fn point(&self, e: usize, t: f64) -> Result<GraphPoint, GraphError> {
        let edge = &self.edges[e];
        if !(-self.point_tol..=edge.length + self.point_tol).contains(&t) || !t.is_finite() {
            return Err(GraphError::OffsetOutOfRange {
                edge: edge.id.clone(),
                offset: t,
            });
        }
        if t.abs() <= self.point_tol {
            Ok(self.canon[edge.u])
        } else if (t - edge.length).abs() <= self.point_tol {
            Ok(self.canon[edge.v])
        } else {
            Ok(GraphPoint { edge: e, t })
        }
    }

    /// The vertex a canonical point sits at, if any.
    pub fn point_vertex(&self, p: GraphPoint) -> Option<usize> {
        let edge = &self.edges[p.edge];
        if p.t == 0.0 {
            Some(edge.u)
        } else if p.t == edge.length {
            Some(edge.v)
        } else {
            None
        }
    }

    /// Structural equality of canonical points, within the point tolerance.
    pub fn points_eq(&self, a: GraphPoint, b: GraphPoint) -> bool {
        a.edge == b.edge && (a.t - b.t).abs() <= self.point_tol
    }

    fn is_connected(&self) -> bool {
        self.reachable_from(0, usize::MAX).iter().all(|&r| r)
    }

    /// DFS reachability over all edges except `skip` (pass `usize::MAX` to
    /// keep every edge).
    fn reachable_from(&self, start: usize, skip: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        if self.vertices.is_empty() {
            return seen;
        }
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.incident[v] {
                if e == skip {
                    continue;
                }
                let w = self.edges[e].opposite(v).unwrap();
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// True iff removing the open interior of `e` disconnects the graph.
    pub fn is_bridge(&self, e: usize) -> bool {
        !self.reachable_from(0, e).iter().all(|&r| r)
    }

    /// Shortest-path distances from vertex `start` to every vertex.
    pub fn vertex_distances(&self, start: usize) -> Vec<f64> {
        #[derive(PartialEq)]
        struct Entry(f64, usize);
        impl Eq for Entry {}
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> core::cmp::Ordering {
                // reversed: BinaryHeap is a max-heap
                other.0.total_cmp(&self.0)
            }
        }
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }

        let mut dist = vec![f64::INFINITY; self.vertices.len()];
        dist[start] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Entry(0.0, start));
        while let Some(Entry(d, v)) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &e in &self.incident[v] {
                let w = self.edges[e].opposite(v).unwrap();
                let nd = d + self.edges[e].length;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(Entry(nd, w));
                }
            }
        }
        dist
    }

    /// Smallest unused counter for generated `_v<n>`/`_e<n>` names.
    fn generated_name_floor(&self) -> usize {
        let mut floor = 0usize;
        let scan = |name: &str, floor: &mut usize| {
            if let Some(rest) = name.strip_prefix("_v").or_else(|| name.strip_prefix("_e")) {
                if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                    if let Ok(n) = rest.parse::<usize>() {
                        *floor = (*floor).max(n + 1);
                    }
                }
            }
        };
        for n in &self.vertices {
            scan(n, &mut floor);
        }
        for e in &self.edges {
            scan(&e.id, &mut floor);
        }
        floor
    }
}

/// Splits one edge at an interior point, producing the refined model and the
/// point remapping. Subdividing at a vertex returns the model unchanged.
pub fn subdivide_at(graph: &Arc<WeightedGraph>, p: GraphPoint) -> Refinement {
    Refinement::at_points(graph, &[p])
}

/// Length of the shortest path between two points of the metrized graph,
/// computed on the model refined at the two query points.
pub fn path_distance(graph: &Arc<WeightedGraph>, x: GraphPoint, y: GraphPoint) -> f64 {
    let refinement = Refinement::at_points(graph, &[x, y]);
    let fine = refinement.fine();
    let xv = fine
        .point_vertex(refinement.map_point(x))
        .expect("query point was made a vertex");
    let yv = fine
        .point_vertex(refinement.map_point(y))
        .expect("query point was made a vertex");
    fine.vertex_distances(xv)[yv]
}

/// A model refinement: the base graph, the refined (`fine`) graph obtained
/// by subdividing edges, and the bookkeeping to move points and coordinates
/// between the two. Refinement preserves total length by construction.
#[derive(Clone, Debug)]
pub struct Refinement {
    base: Arc<WeightedGraph>,
    fine: Arc<WeightedGraph>,
    /// base vertex index -> fine vertex index (identity prefix).
    vertex_map: Vec<usize>,
    /// Per base edge: the ordered fine pieces as (fine edge index, offset of
    /// the piece's start in base coordinates).
    pieces: Vec<Vec<(usize, f64)>>,
    /// Per fine edge: (base edge index, start offset in base coordinates).
    origin: Vec<(usize, f64)>,
}

impl Refinement {
    /// Refines `base` by cutting each edge at the given interior offsets.
    /// Offsets are sorted and deduplicated; cuts within the point tolerance
    /// of an endpoint or of each other are dropped.
    pub fn new(base: &Arc<WeightedGraph>, cuts: &[Vec<f64>]) -> Self {
        assert_eq!(cuts.len(), base.edge_count(), "one cut list per edge");
        let tol = base.point_tolerance();
        let mut vertices = base.vertices.clone();
        let mut counter = base.generated_name_floor();
        let mut edges: Vec<Edge> = Vec::new();
        let mut pieces: Vec<Vec<(usize, f64)>> = Vec::with_capacity(base.edge_count());
        let mut origin: Vec<(usize, f64)> = Vec::new();

        for (ei, edge) in base.edges.iter().enumerate() {
            let mut offs: Vec<f64> = cuts[ei]
                .iter()
                .copied()
                .filter(|&t| t > tol && t < edge.length - tol)
                .collect();
            offs.sort_by(f64::total_cmp);
            offs.dedup_by(|a, b| (*a - *b).abs() <= tol);

            if offs.is_empty() {
                let fe = edges.len();
                edges.push(edge.clone());
                origin.push((ei, 0.0));
                pieces.push(vec![(fe, 0.0)]);
                continue;
            }

            let mut chain = Vec::with_capacity(offs.len() + 1);
            let mut prev_vertex = edge.u;
            let mut prev_off = 0.0;
            for &t in &offs {
                let new_vertex = vertices.len();
                vertices.push(format!("_v{counter}"));
                let fe = edges.len();
                edges.push(Edge {
                    id: format!("_e{counter}"),
                    u: prev_vertex,
                    v: new_vertex,
                    length: t - prev_off,
                });
                counter += 1;
                origin.push((ei, prev_off));
                chain.push((fe, prev_off));
                prev_vertex = new_vertex;
                prev_off = t;
            }
            let fe = edges.len();
            edges.push(Edge {
                id: format!("_e{counter}"),
                u: prev_vertex,
                v: edge.v,
                length: edge.length - prev_off,
            });
            counter += 1;
            origin.push((ei, prev_off));
            chain.push((fe, prev_off));
            pieces.push(chain);
        }

        let vertex_map = (0..base.vertex_count()).collect();
        let fine = Arc::new(WeightedGraph::assemble(vertices, edges, tol));
        Refinement {
            base: Arc::clone(base),
            fine,
            vertex_map,
            pieces,
            origin,
        }
    }

    /// Refines so that every listed point becomes a vertex.
    pub fn at_points(base: &Arc<WeightedGraph>, points: &[GraphPoint]) -> Self {
        let mut cuts = vec![Vec::new(); base.edge_count()];
        for &p in points {
            if base.point_vertex(p).is_none() {
                cuts[p.edge].push(p.t);
            }
        }
        Refinement::new(base, &cuts)
    }

    /// Splits every edge into `splits[e]` equal parts.
    pub fn uniform(base: &Arc<WeightedGraph>, splits: &[usize]) -> Self {
        let cuts: Vec<Vec<f64>> = base
            .edges
            .iter()
            .zip(splits)
            .map(|(edge, &m)| (1..m).map(|i| edge.length * i as f64 / m as f64).collect())
            .collect();
        Refinement::new(base, &cuts)
    }

    pub fn base(&self) -> &Arc<WeightedGraph> {
        &self.base
    }

    pub fn fine(&self) -> &Arc<WeightedGraph> {
        &self.fine
    }

    /// Fine vertex corresponding to a base vertex.
    pub fn map_vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    /// Translates a base-model point into fine-model coordinates.
    pub fn map_point(&self, p: GraphPoint) -> GraphPoint {
        if let Some(v) = self.base.point_vertex(p) {
            return self.fine.vertex_point(self.vertex_map[v]);
        }
        let chain = &self.pieces[p.edge];
        // last piece whose start is <= t (within tolerance)
        let mut idx = 0;
        for (k, &(_, start)) in chain.iter().enumerate() {
            if start <= p.t + self.base.point_tolerance() {
                idx = k;
            } else {
                break;
            }
        }
        let (fe, start) = chain[idx];
        let local = (p.t - start).clamp(0.0, self.fine.edge(fe).length);
        self.fine
            .point(fe, local)
            .expect("mapped offset stays within the piece")
    }

    /// The base edge a fine edge came from and the fine edge's starting
    /// offset in base coordinates.
    pub fn fine_edge_origin(&self, fine_edge: usize) -> (usize, f64) {
        self.origin[fine_edge]
    }

    /// Translates a fine-model point back to base-model coordinates.
    pub fn unmap_point(&self, p: GraphPoint) -> GraphPoint {
        if let Some(v) = self.fine.point_vertex(p) {
            if v < self.vertex_map.len() {
                return self.base.vertex_point(v);
            }
        }
        let (be, start) = self.origin[p.edge];
        self.base
            .point(be, start + p.t)
            .expect("fine offset stays within the base edge")
    }
}
