//! Dense univariate polynomials in an edge's arclength coordinate.
//!
//! Coefficients are stored in ascending powers with trailing exact zeros
//! trimmed, so the zero polynomial has no coefficients at all. Degrees stay
//! tiny (functions are capped at degree 4, products at degree 8), so the
//! naive algorithms are the right ones.

use alloc::vec::Vec;

#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(alloc::vec![c])
    }

    pub fn linear(c0: f64, c1: f64) -> Self {
        Poly::new(alloc::vec![c0, c1])
    }

    /// Degree of the trimmed representation; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Exact integral over `[0, length]` via the antiderivative.
    pub fn integral(&self, length: f64) -> f64 {
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * length + c / (k as f64 + 1.0);
        }
        acc * length
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = alloc::vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn scale(&self, factor: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Composition with a coordinate shift: returns `q(t) = p(t + offset)`.
    pub fn shift(&self, offset: f64) -> Poly {
        let n = self.coeffs.len();
        let mut out = alloc::vec![0.0; n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            // expand c * (t + offset)^k
            let mut binom = 1.0;
            let mut pow = 1.0;
            for j in (0..=k).rev() {
                out[j] += c * binom * pow;
                if j > 0 {
                    binom = binom * j as f64 / (k - j + 1) as f64;
                    pow *= offset;
                }
            }
        }
        Poly::new(out)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= tol)
    }

    /// True when every coefficient above `deg` is below `tol` in magnitude.
    pub fn degree_at_most(&self, deg: usize, tol: f64) -> bool {
        self.coeffs.iter().skip(deg + 1).all(|c| c.abs() <= tol)
    }
}
