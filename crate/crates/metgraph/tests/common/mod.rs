//! Shared test support: a deterministic PRNG and random model generators.

#![allow(dead_code)]

use std::sync::Arc;

use metgraph::graph::{GraphPoint, WeightedGraph};

/// splitmix64; deterministic across platforms, no dependencies.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut x = self.0;
        x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
        x ^ (x >> 31)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// A random connected graph: a spanning tree plus extra non-parallel edges.
/// Vertex count in 2..=max_vertices, edge lengths in [0.2, 2.0].
pub fn random_connected_graph(
    rng: &mut Rng,
    max_vertices: usize,
    max_extra: usize,
) -> Arc<WeightedGraph> {
    let n = 2 + rng.below(max_vertices - 1);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for i in 1..n {
        let parent = rng.below(i);
        edges.push((parent, i, rng.range(0.2, 2.0)));
    }
    let extra = rng.below(max_extra + 1);
    for _ in 0..extra {
        let a = rng.below(n);
        let b = rng.below(n);
        if a == b {
            continue;
        }
        if edges
            .iter()
            .any(|&(u, v, _)| (u, v) == (a, b) || (u, v) == (b, a))
        {
            continue;
        }
        edges.push((a, b, rng.range(0.2, 2.0)));
    }
    build_named(&names, &edges)
}

fn build_named(names: &[String], edges: &[(usize, usize, f64)]) -> Arc<WeightedGraph> {
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ids: Vec<String> = (0..edges.len()).map(|k| format!("e{k}")).collect();
    let tuples: Vec<(&str, &str, &str, f64)> = edges
        .iter()
        .enumerate()
        .map(|(k, &(u, v, l))| (ids[k].as_str(), name_refs[u], name_refs[v], l))
        .collect();
    Arc::new(WeightedGraph::build(&name_refs, &tuples).expect("generated model is valid"))
}

/// A random point: with probability ~1/3 a vertex, otherwise interior.
pub fn random_point(rng: &mut Rng, g: &Arc<WeightedGraph>) -> GraphPoint {
    if rng.below(3) == 0 {
        g.vertex_point(rng.below(g.vertex_count()))
    } else {
        let e = rng.below(g.edge_count());
        let t = g.edge(e).length * rng.range(0.05, 0.95);
        g.point(e, t).unwrap()
    }
}

/// A random continuous piecewise-polynomial function of degree <= max_degree
/// (>= 1): a random affine interpolation plus, per edge, a bubble that
/// vanishes at both endpoints.
pub fn random_function(
    rng: &mut Rng,
    g: &Arc<WeightedGraph>,
    max_degree: usize,
) -> metgraph::PiecewisePolyFunction {
    use metgraph::VertexFunction;
    let values: Vec<f64> = (0..g.vertex_count())
        .map(|_| rng.range(-2.0, 2.0))
        .collect();
    let affine = VertexFunction::new(Arc::clone(g), values).interpolate_affine();
    if max_degree <= 1 {
        return affine;
    }
    let coeffs: Vec<Vec<f64>> = (0..g.edge_count())
        .map(|e| {
            let l = g.edge(e).length;
            let base = affine.coefficients(e);
            let (b0, b1) = (
                base.first().copied().unwrap_or(0.0),
                base.get(1).copied().unwrap_or(0.0),
            );
            // bubble: t(L - t) * (c0 + c1 t + c2 t^2), truncated to degree
            let c0 = rng.range(-1.0, 1.0);
            let c1 = if max_degree >= 3 {
                rng.range(-1.0, 1.0)
            } else {
                0.0
            };
            let c2 = if max_degree >= 4 {
                rng.range(-1.0, 1.0)
            } else {
                0.0
            };
            // t(L-t)(c0 + c1 t + c2 t^2)
            // = c0 L t + (c1 L - c0) t^2 + (c2 L - c1) t^3 - c2 t^4
            vec![b0, b1 + c0 * l, c1 * l - c0, c2 * l - c1, -c2]
        })
        .collect();
    metgraph::PiecewisePolyFunction::new(Arc::clone(g), coeffs).expect("bubble sum is continuous")
}

/// A random two-terminal series-parallel network together with its
/// terminals. Built by recursive series/parallel composition; single-edge
/// parallel branches are pre-split so the model never carries multi-edges.
pub fn random_series_parallel(rng: &mut Rng, depth: usize) -> (Arc<WeightedGraph>, usize, usize) {
    struct Builder {
        names: Vec<String>,
        edges: Vec<(usize, usize, f64)>,
    }
    impl Builder {
        fn fresh_vertex(&mut self) -> usize {
            let v = self.names.len();
            self.names.push(format!("v{v}"));
            v
        }
    }

    // Returns true when the branch it just built is a single edge.
    fn gen(b: &mut Builder, rng: &mut Rng, s: usize, t: usize, depth: usize) -> bool {
        if depth == 0 || rng.below(4) == 0 {
            b.edges.push((s, t, rng.range(0.2, 2.0)));
            return true;
        }
        match rng.below(2) {
            0 => {
                // series: s - m - t
                let m = b.fresh_vertex();
                gen(b, rng, s, m, depth - 1);
                gen(b, rng, m, t, depth - 1);
                false
            }
            _ => {
                // parallel: two branches between s and t; split single-edge
                // branches to avoid multi-edges in the model
                for _ in 0..2 {
                    let mark = b.edges.len();
                    let single = gen(b, rng, s, t, depth - 1);
                    if single {
                        let (u, v, l) = b.edges[mark];
                        let m = b.fresh_vertex();
                        b.edges[mark] = (u, m, l / 2.0);
                        b.edges.push((m, v, l / 2.0));
                    }
                }
                false
            }
        }
    }

    let mut b = Builder {
        names: vec!["s".into(), "t".into()],
        edges: Vec::new(),
    };
    let single = gen(&mut b, rng, 0, 1, depth);
    if single {
        // keep at least two edges so terminals differ from a bare segment
        let (u, v, l) = b.edges[0];
        let m = b.fresh_vertex();
        b.edges[0] = (u, m, l / 2.0);
        b.edges.push((m, v, l / 2.0));
    }
    let g = build_named(&b.names, &b.edges);
    (g, 0, 1)
}

/// Complete graph on `n` vertices with unit lengths.
pub fn complete_graph(n: usize) -> Arc<WeightedGraph> {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, 1.0));
        }
    }
    build_named(&names, &edges)
}

pub fn segment(length: f64) -> Arc<WeightedGraph> {
    Arc::new(WeightedGraph::build(&["A", "B"], &[("e", "A", "B", length)]).unwrap())
}

pub fn circle3() -> Arc<WeightedGraph> {
    Arc::new(
        WeightedGraph::build(
            &["A", "B", "C"],
            &[
                ("e1", "A", "B", 1.0 / 3.0),
                ("e2", "B", "C", 1.0 / 3.0),
                ("e3", "C", "A", 1.0 / 3.0),
            ],
        )
        .unwrap(),
    )
}

pub fn star() -> Arc<WeightedGraph> {
    Arc::new(
        WeightedGraph::build(
            &["P", "Q", "R", "S"],
            &[
                ("PQ", "P", "Q", 0.5),
                ("QS", "Q", "S", 0.5),
                ("RQ", "R", "Q", 1.0),
            ],
        )
        .unwrap(),
    )
}

/// Theta graph: two junctions joined by three arcs (each modelled with an
/// interior vertex so the model stays simple).
pub fn theta() -> Arc<WeightedGraph> {
    Arc::new(
        WeightedGraph::build(
            &["L", "R", "m1", "m2", "m3"],
            &[
                ("a1", "L", "m1", 0.5),
                ("a2", "m1", "R", 0.5),
                ("b1", "L", "m2", 0.6),
                ("b2", "m2", "R", 0.6),
                ("c1", "L", "m3", 0.4),
                ("c2", "m3", "R", 0.4),
            ],
        )
        .unwrap(),
    )
}

/// Lollipop: a circle with a tail hanging off it.
pub fn lollipop() -> Arc<WeightedGraph> {
    Arc::new(
        WeightedGraph::build(
            &["A", "B", "C", "T"],
            &[
                ("c1", "A", "B", 0.4),
                ("c2", "B", "C", 0.4),
                ("c3", "C", "A", 0.4),
                ("tail", "A", "T", 0.5),
            ],
        )
        .unwrap(),
    )
}
