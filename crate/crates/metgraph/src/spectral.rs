//! Eigenfunctions of the Laplacian with respect to a unit point mass, and
//! the generalized Fourier expansions built from them.
//!
//! An eigenfunction with respect to `μ = δ_z` is a nonzero `φ` with
//! `φ(z) = 0` and `Δφ = λ φ dx − C δ_z`; on the interval `[0, 1]` anchored
//! at `z = 0` these are `√2·sin(πnx/2)` for odd `n`, with eigenvalues
//! `π²n²/4`. The module discretizes: every edge is subdivided into equal
//! parts no longer than a mesh step `h` (after making `z` a vertex), the
//! Kirchhoff matrix of the fine model is paired with the lumped mass matrix,
//! and the grounded generalized eigenproblem `Q φ = λ M φ` is solved
//! densely. Eigenvalues converge at order `h²`.
//!
//! Expansions follow `f = a₀ + Σ aₙ φₙ` with `a₀ = f(z)` and
//! `aₙ = ∫ (f − a₀) φₙ dx`; the j-function obeys the spectral identity
//! `j_z(x, y) = Σ φₙ(x)φₙ(y)/λₙ`, whose interval case at `z = 0` is the
//! series `min{x,y} = 8 Σ_{n odd} sin(πnx/2)sin(πny/2)/(π²n²)`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::calculus::PiecewisePolyFunction;
use crate::graph::{GraphPoint, Refinement, WeightedGraph};
use crate::linalg::{symmetric_eigen, Matrix};
use crate::matrix::LaplacianMatrix;

#[cfg(not(feature = "std"))]
use crate::num::FloatExt as _;

/// Default mesh step (per unit of edge length).
pub const DEFAULT_STEP: f64 = 1.0 / 200.0;
/// Default number of eigenpairs.
pub const DEFAULT_TERMS: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub enum SpectralError {
    /// More eigenpairs were requested than the grounded fine model carries.
    MeshTooCoarse { requested: usize, available: usize },
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::MeshTooCoarse {
                requested,
                available,
            } => write!(
                f,
                "requested {requested} eigenpairs but the grounded mesh has only {available} \
                 degrees of freedom; shrink the step or request fewer terms"
            ),
        }
    }
}

impl core::error::Error for SpectralError {}

/// The leading eigenpairs of the Laplacian with respect to `δ_z` on a fine
/// model, ascending by eigenvalue.
///
/// Eigenvectors are vertex-value vectors on the fine model, normalized so
/// the discrete `∫ φ² dx` (lumped mass inner product) is one, vanishing at
/// the anchor, with the sign fixed so the first nonzero entry — vertices
/// ordered by distance from the anchor — is positive.
#[derive(Clone, Debug)]
pub struct Spectrum {
    refinement: Refinement,
    anchor: usize,
    step: f64,
    mass: Vec<f64>,
    pairs: Vec<(f64, Vec<f64>)>,
}

/// Discretizes the graph (anchor first, then equal parts of length at most
/// `h` per edge) and returns the `k` smallest eigenpairs of the grounded
/// generalized problem `Q φ = λ M φ`.
pub fn compute_spectrum(
    graph: &Arc<WeightedGraph>,
    z: GraphPoint,
    h: f64,
    k: usize,
) -> Result<Spectrum, SpectralError> {
    assert!(h > 0.0, "mesh step must be positive");
    assert!(k >= 1, "at least one eigenpair must be requested");

    // Cuts per edge: the anchor offset (when interior) plus uniform
    // subdivision of the resulting sub-segments into parts of length <= h.
    let cuts: Vec<Vec<f64>> = (0..graph.edge_count())
        .map(|e| {
            let length = graph.edge(e).length;
            let mut stops = vec![0.0];
            if z.edge == e && graph.point_vertex(z).is_none() {
                stops.push(z.t);
            }
            stops.push(length);
            let mut cut = Vec::new();
            for pair in stops.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                let parts = ((b - a) / h).ceil().max(1.0) as usize;
                for i in 0..=parts {
                    let t = a + (b - a) * i as f64 / parts as f64;
                    if t > 0.0 && t < length {
                        cut.push(t);
                    }
                }
            }
            cut
        })
        .collect();
    let refinement = Refinement::new(graph, &cuts);
    let fine = refinement.fine().clone();
    let anchor = fine
        .point_vertex(refinement.map_point(z))
        .expect("anchor was made a vertex");

    let n = fine.vertex_count();
    let mut mass = vec![0.0f64; n];
    for edge in fine.edges() {
        mass[edge.u] += 0.5 * edge.length;
        mass[edge.v] += 0.5 * edge.length;
    }

    let keep: Vec<usize> = (0..n).filter(|&v| v != anchor).collect();
    if k > keep.len() {
        return Err(SpectralError::MeshTooCoarse {
            requested: k,
            available: keep.len(),
        });
    }

    // Symmetric reduction M^{-1/2} Q M^{-1/2} on the grounded subspace; the
    // lumped mass matrix is diagonal positive, so this is exact.
    let q = LaplacianMatrix::new(&fine);
    let reduced = Matrix::from_fn(keep.len(), |i, j| {
        q.entry(keep[i], keep[j]) / (mass[keep[i]] * mass[keep[j]]).sqrt()
    });
    let eig = symmetric_eigen(&reduced);

    // Sign convention: vertices ordered by distance from the anchor (ties by
    // index); the first entry exceeding the noise floor is made positive.
    // On the interval anchored at 0 this reproduces the classical signs of
    // √2 sin(πnx/2).
    let mut sign_order: Vec<usize> = (0..n).collect();
    let dist = fine.vertex_distances(anchor);
    sign_order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));

    let pairs = (0..k)
        .map(|idx| {
            let lambda = eig.values[idx];
            let psi = &eig.vectors[idx];
            let mut phi = vec![0.0f64; n];
            for (slot, &v) in keep.iter().enumerate() {
                phi[v] = psi[slot] / mass[v].sqrt();
            }
            // M-normalize (the reduction already gives unit psi, this guards
            // against eigensolver drift) and fix the sign convention.
            let norm: f64 = phi
                .iter()
                .zip(&mass)
                .map(|(p, m)| m * p * p)
                .sum::<f64>()
                .sqrt();
            let peak = phi.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            let leading = sign_order
                .iter()
                .map(|&v| phi[v])
                .find(|p| p.abs() > 1e-9 * peak)
                .unwrap_or(1.0);
            let factor = if leading < 0.0 { -1.0 } else { 1.0 } / norm;
            for p in &mut phi {
                *p *= factor;
            }
            (lambda, phi)
        })
        .collect::<Vec<_>>();

    assert!(
        pairs.first().map(|(l, _)| *l > 0.0).unwrap_or(true),
        "grounded eigenvalues must be positive"
    );

    Ok(Spectrum {
        refinement,
        anchor,
        step: h,
        mass,
        pairs,
    })
}

impl Spectrum {
    /// Number of eigenpairs held.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The n-th eigenvalue (0-based, ascending).
    pub fn eigenvalue(&self, n: usize) -> f64 {
        self.pairs[n].0
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|(l, _)| *l)
    }

    /// The n-th eigenvector as vertex values on the fine model.
    pub fn eigenvector(&self, n: usize) -> &[f64] {
        &self.pairs[n].1
    }

    pub fn base(&self) -> &Arc<WeightedGraph> {
        self.refinement.base()
    }

    pub fn fine(&self) -> &Arc<WeightedGraph> {
        self.refinement.fine()
    }

    pub fn refinement(&self) -> &Refinement {
        &self.refinement
    }

    /// Fine-model vertex index of the anchor `z`.
    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Lumped vertex masses of the fine model (`M_ii`).
    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// `φₙ` at a base-model point, linearly interpolated inside fine
    /// segments.
    pub fn eigenfunction_value(&self, n: usize, p: GraphPoint) -> f64 {
        let fp = self.refinement.map_point(p);
        let phi = self.eigenvector(n);
        match self.fine().point_vertex(fp) {
            Some(v) => phi[v],
            None => {
                let edge = self.fine().edge(fp.edge);
                let s = fp.t / edge.length;
                phi[edge.u] * (1.0 - s) + phi[edge.v] * s
            }
        }
    }

    /// The discrete `∫ f g dx` in the lumped mass inner product, for vertex
    /// vectors on the fine model.
    pub fn mass_inner(&self, f: &[f64], g: &[f64]) -> f64 {
        f.iter()
            .zip(g)
            .zip(&self.mass)
            .map(|((a, b), m)| a * b * m)
            .sum()
    }

    /// The coupling constant `C = λ ∫ φ dx` of the eigenpair: together with
    /// `λ` it pins down the defining equation `Δφ = λ φ dx − C δ_z`.
    pub fn coupling_constant(&self, n: usize) -> f64 {
        let ones = vec![1.0; self.mass.len()];
        self.eigenvalue(n) * self.mass_inner(self.eigenvector(n), &ones)
    }

    /// `‖Q φₙ − λₙ M φₙ‖_∞` on the grounded subspace (rows other than the
    /// anchor; the anchor row absorbs the `−C δ_z` term).
    pub fn residual(&self, n: usize) -> f64 {
        let q = LaplacianMatrix::new(self.fine());
        let (lambda, phi) = &self.pairs[n];
        let qphi = q.apply(phi);
        qphi.iter()
            .enumerate()
            .filter(|(v, _)| *v != self.anchor)
            .map(|(v, qv)| (qv - lambda * self.mass[v] * phi[v]).abs())
            .fold(0.0f64, f64::max)
    }
}

/// Generalized Fourier coefficients of a function with respect to a
/// spectrum: `a₀ = f(z)` and `aₙ = ∫ (f − a₀) φₙ dx` in the lumped inner
/// product.
#[derive(Clone, Debug)]
pub struct FourierCoefficients {
    pub a0: f64,
    pub terms: Vec<f64>,
}

pub fn fourier_coefficients(spectrum: &Spectrum, f: &PiecewisePolyFunction) -> FourierCoefficients {
    let fine_f = spectrum.refinement().transfer(f);
    let values: Vec<f64> = (0..spectrum.fine().vertex_count())
        .map(|v| fine_f.vertex_value(v))
        .collect();
    let a0 = values[spectrum.anchor()];
    let centered: Vec<f64> = values.iter().map(|v| v - a0).collect();
    let terms = (0..spectrum.len())
        .map(|n| spectrum.mass_inner(&centered, spectrum.eigenvector(n)))
        .collect();
    FourierCoefficients { a0, terms }
}

/// The truncated series `a₀ + Σ aₙ φₙ(x)` at a base-model point.
pub fn reconstruct(spectrum: &Spectrum, coefficients: &FourierCoefficients, x: GraphPoint) -> f64 {
    coefficients.a0
        + coefficients
            .terms
            .iter()
            .enumerate()
            .map(|(n, a)| a * spectrum.eigenfunction_value(n, x))
            .sum::<f64>()
}

/// The spectral j-function partial sum `Σ φₙ(x)φₙ(y)/λₙ`, which converges
/// to `j_z(x, y)`.
pub fn j_spectral(spectrum: &Spectrum, x: GraphPoint, y: GraphPoint) -> f64 {
    (0..spectrum.len())
        .map(|n| {
            spectrum.eigenfunction_value(n, x) * spectrum.eigenfunction_value(n, y)
                / spectrum.eigenvalue(n)
        })
        .sum()
}

/// Analytic partial sum of `8 Σ_{n odd} sin(πnx/2) sin(πny/2) / (π²n²)`
/// over the first `odd_terms` odd integers, together with its deviation
/// from `min{x, y}`. No discretization is involved.
pub fn verify_min_identity(x: f64, y: f64, odd_terms: usize) -> (f64, f64) {
    use core::f64::consts::PI;
    let mut sum = 0.0;
    for j in 0..odd_terms {
        let n = (2 * j + 1) as f64;
        sum += (0.5 * PI * n * x).sin() * (0.5 * PI * n * y).sin() / (n * n);
    }
    sum *= 8.0 / (PI * PI);
    (sum, (sum - x.min(y)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn interval() -> Arc<WeightedGraph> {
        Arc::new(WeightedGraph::build(&["A", "B"], &[("e", "A", "B", 1.0)]).unwrap())
    }

    fn interval_spectrum(h: f64, k: usize) -> Spectrum {
        let g = interval();
        let z = g.vertex_point(0);
        compute_spectrum(&g, z, h, k).unwrap()
    }

    #[test]
    fn interval_eigenvalues_match_odd_quarter_squares() {
        // λ_n = π²n²/4 for n = 1, 3, 5 with relative error below 1e-3
        let spec = interval_spectrum(1.0 / 200.0, 3);
        for (i, n) in [1.0f64, 3.0, 5.0].iter().enumerate() {
            let exact = PI * PI * n * n / 4.0;
            let rel = (spec.eigenvalue(i) - exact).abs() / exact;
            assert!(rel < 1e-3, "λ_{n}: rel error {rel}");
        }
        assert!(spec.eigenvalues().all(|l| l > 0.0));
    }

    #[test]
    fn interval_ground_mode_matches_sine() {
        // φ₁ ≈ √2 sin(πx/2) pointwise
        let spec = interval_spectrum(1.0 / 200.0, 1);
        let g = spec.base().clone();
        let mut sup = 0.0f64;
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            let p = g.point(0, t).unwrap();
            let approx = spec.eigenfunction_value(0, p);
            let exact = (2.0f64).sqrt() * (0.5 * PI * t).sin();
            sup = sup.max((approx - exact).abs());
        }
        assert!(sup < 5e-3, "sup error {sup}");
    }

    #[test]
    fn eigenvectors_are_mass_orthonormal() {
        let spec = interval_spectrum(1.0 / 100.0, 6);
        for i in 0..spec.len() {
            for j in 0..spec.len() {
                let dot = spec.mass_inner(spec.eigenvector(i), spec.eigenvector(j));
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-6, "({i},{j}): {dot}");
            }
        }
    }

    #[test]
    fn eigen_residuals_are_tiny() {
        let spec = interval_spectrum(1.0 / 100.0, 5);
        for n in 0..spec.len() {
            assert!(
                spec.residual(n) < 1e-8,
                "residual({n}) = {}",
                spec.residual(n)
            );
        }
    }

    #[test]
    fn anchor_values_vanish() {
        let g = interval();
        let z = g.point(0, 0.3).unwrap();
        let spec = compute_spectrum(&g, z, 1.0 / 50.0, 4).unwrap();
        for n in 0..spec.len() {
            assert_eq!(spec.eigenvector(n)[spec.anchor()], 0.0);
            assert!(spec.eigenfunction_value(n, z).abs() < 1e-12);
        }
    }

    #[test]
    fn mesh_too_coarse_is_reported() {
        let g = interval();
        let z = g.vertex_point(0);
        let err = compute_spectrum(&g, z, 0.5, 5).unwrap_err();
        assert!(matches!(err, SpectralError::MeshTooCoarse { .. }));
    }

    #[test]
    fn fourier_coefficients_of_kink() {
        // f = min(x, y0) on [0,1] anchored at 0: a_n ≈ 4√2/(π²n²)·sin(πny0/2)
        let g = interval();
        let y0 = 0.7;
        let f = {
            // model the kink by splitting the edge at y0
            let refinement = Refinement::at_points(&g, &[g.point(0, y0).unwrap()]);
            let fine = refinement.fine().clone();
            let parts: Vec<Vec<f64>> = (0..fine.edge_count())
                .map(|e| {
                    let (_, start) = refinement.fine_edge_origin(e);
                    if start < y0 {
                        vec![start, 1.0]
                    } else {
                        vec![y0]
                    }
                })
                .collect();
            (fine, parts)
        };
        let fine_graph = f.0.clone();
        let func = PiecewisePolyFunction::new(fine_graph.clone(), f.1).unwrap();
        let z = fine_graph.vertex_point(0);
        let spec = compute_spectrum(&fine_graph, z, 1.0 / 200.0, 5).unwrap();
        let coeffs = fourier_coefficients(&spec, &func);
        assert!(coeffs.a0.abs() < 1e-12);
        for (i, a) in coeffs.terms.iter().enumerate() {
            let n = (2 * i + 1) as f64;
            let exact = 4.0 * (2.0f64).sqrt() / (PI * PI * n * n) * (0.5 * PI * n * y0).sin();
            let rel = (a - exact).abs() / exact.abs();
            assert!(rel < 1e-2, "a_{n}: {a} vs {exact} (rel {rel})");
        }
    }

    #[test]
    fn fourier_coefficients_of_identity_function() {
        // f = x matches the y0 = 1 case of the kink formula
        let g = interval();
        let f = PiecewisePolyFunction::new(g.clone(), vec![vec![0.0, 1.0]]).unwrap();
        let spec = compute_spectrum(&g, g.vertex_point(0), 1.0 / 200.0, 4).unwrap();
        let coeffs = fourier_coefficients(&spec, &f);
        for (i, a) in coeffs.terms.iter().enumerate() {
            let n = (2 * i + 1) as f64;
            let exact = 4.0 * (2.0f64).sqrt() / (PI * PI * n * n) * (0.5 * PI * n).sin();
            assert!((a - exact).abs() / exact.abs() < 1e-2);
        }
        // constant functions have a0 = c and vanishing coefficients
        let c = PiecewisePolyFunction::constant(g, 2.5);
        let cc = fourier_coefficients(&spec, &c);
        assert_eq!(cc.a0, 2.5);
        assert!(cc.terms.iter().all(|a| a.abs() < 1e-12));
    }

    #[test]
    fn reconstruction_approximates_the_function() {
        let g = interval();
        let y0 = 0.7;
        let refinement = Refinement::at_points(&g, &[g.point(0, y0).unwrap()]);
        let fine = refinement.fine().clone();
        let parts: Vec<Vec<f64>> = (0..fine.edge_count())
            .map(|e| {
                let (_, start) = refinement.fine_edge_origin(e);
                if start < y0 {
                    vec![start, 1.0]
                } else {
                    vec![y0]
                }
            })
            .collect();
        let func = PiecewisePolyFunction::new(fine.clone(), parts).unwrap();
        let z = fine.vertex_point(0);
        let spec = compute_spectrum(&fine, z, 1.0 / 200.0, 99).unwrap();
        let coeffs = fourier_coefficients(&spec, &func);
        let x = fine.point(0, 0.3).unwrap();
        let value = reconstruct(&spec, &coeffs, x);
        assert!((value - 0.3).abs() < 5e-3, "got {value}");
        // at the anchor the series collapses to a0
        assert_eq!(reconstruct(&spec, &coeffs, z), coeffs.a0);
    }

    #[test]
    fn reconstruction_error_shrinks_with_more_terms() {
        let g = interval();
        let f = PiecewisePolyFunction::new(g.clone(), vec![vec![0.0, 1.0]]).unwrap();
        let z = g.vertex_point(0);
        let spec = compute_spectrum(&g, z, 1.0 / 200.0, 99).unwrap();
        let coeffs = fourier_coefficients(&spec, &f);
        let sup_error = |k: usize| {
            let truncated = FourierCoefficients {
                a0: coeffs.a0,
                terms: coeffs.terms[..k].to_vec(),
            };
            let mut sup = 0.0f64;
            for i in 0..=50 {
                let t = i as f64 / 50.0;
                let p = g.point(0, t).unwrap();
                sup = sup.max((reconstruct(&spec, &truncated, p) - t).abs());
            }
            sup
        };
        let errs = [sup_error(9), sup_error(33), sup_error(99)];
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    }

    #[test]
    fn spectral_j_identity_on_interval() {
        // j_0(x, y) = min(x, y); partial sums at x = y are nondecreasing
        let g = interval();
        let z = g.vertex_point(0);
        let spec = compute_spectrum(&g, z, 1.0 / 200.0, 150).unwrap();
        let x = g.point(0, 0.4).unwrap();
        let y = g.point(0, 0.8).unwrap();
        let approx = j_spectral(&spec, x, y);
        assert!((approx - 0.4).abs() < 5e-3, "got {approx}");
        // x at the anchor kills every term
        assert_eq!(j_spectral(&spec, z, y), 0.0);
        // monotone partial sums at x = y
        let mut last = 0.0;
        for k in [10usize, 40, 150] {
            let partial: f64 = (0..k)
                .map(|n| {
                    let v = spec.eigenfunction_value(n, x);
                    v * v / spec.eigenvalue(n)
                })
                .sum();
            assert!(partial >= last - 1e-12);
            last = partial;
        }
    }

    #[test]
    fn min_identity_partial_sums() {
        // corner case: the sum at (1,1) converges to 1
        let (sum, err) = verify_min_identity(1.0, 1.0, 999);
        assert!((sum - 1.0).abs() < 5e-3, "sum {sum}");
        assert!(err < 5e-3);
        // x = 0 kills every term
        let (sum, err) = verify_min_identity(0.0, 0.77, 100);
        assert_eq!(sum, 0.0);
        assert_eq!(err, 0.0);
        // generic point
        let (sum, err) = verify_min_identity(0.3, 0.7, 2001);
        assert!((sum - 0.3).abs() < 2e-3, "sum {sum}");
        assert!(err < 2e-3);
    }

    #[test]
    fn eigenvalues_converge_at_second_order() {
        // λ(h) − λ(h/2) should shrink ~4x per halving on the interval
        let g = interval();
        let z = g.vertex_point(0);
        let levels: Vec<f64> = [1.0 / 25.0, 1.0 / 50.0, 1.0 / 100.0]
            .iter()
            .map(|&h| compute_spectrum(&g, z, h, 1).unwrap().eigenvalue(0))
            .collect();
        let d1 = (levels[0] - levels[1]).abs();
        let d2 = (levels[1] - levels[2]).abs();
        let ratio = d1 / d2;
        assert!((2.8..5.2).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn coupling_constant_matches_dirichlet_identity() {
        // C = λ ∫ φ dx; for the interval ground mode, the exact value is
        // λ₁ · ∫ √2 sin(πx/2) dx = (π²/4)(2√2/π) = π√2/2
        let spec = interval_spectrum(1.0 / 200.0, 1);
        let c = spec.coupling_constant(0);
        let exact = PI * (2.0f64).sqrt() / 2.0;
        assert!((c - exact).abs() / exact < 1e-3, "C = {c} vs {exact}");
    }
}
