//! Dense complex linear algebra shared by every other module.
//!
//! Matrices are plain `nalgebra` dynamic matrices. This module adds the
//! tolerance policy, the JSON wire format, and the handful of decompositions
//! the tripotent calculus needs (Hermitian eigen-clusters, thin SVD,
//! kernels and subspace intersections).

mod decomp;
mod subspace;

pub use decomp::{
    hermitian_eigendecomposition, operator_norm, pseudo_inverse, singular_value_decomposition,
    EigenCluster, SingularTriples,
};
pub use subspace::{kernel, subspace_intersection, Subspace};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type RealMatrix = DMatrix<f64>;
pub type ComplexVector = DVector<Complex64>;
pub type RealVector = DVector<f64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Numerical thresholds used by every comparison in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    /// Frobenius-norm threshold for "equals zero".
    pub eps_zero: f64,
    /// Radius within which eigenvalues (and singular values) are merged.
    pub eps_eigen: f64,
    /// Singular values below this are treated as zero.
    pub eps_rank: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            eps_zero: 1e-9,
            eps_eigen: 1e-6,
            eps_rank: 1e-8,
        }
    }
}

impl ToleranceProfile {
    pub fn new(eps_zero: f64, eps_eigen: f64, eps_rank: f64) -> Result<Self> {
        let profile = Self {
            eps_zero,
            eps_eigen,
            eps_rank,
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Default profile with `eps_zero` replaced.
    pub fn with_eps_zero(eps_zero: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(eps_zero, d.eps_eigen, d.eps_rank)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("eps_zero", self.eps_zero),
            ("eps_eigen", self.eps_eigen),
            ("eps_rank", self.eps_rank),
        ] {
            if !(value > 0.0 && value <= 1e-3) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} = {value} must lie in (0, 1e-3]"
                )));
            }
        }
        Ok(())
    }

    /// Threshold for identities certified after a solve or a composition.
    pub fn certify(&self) -> f64 {
        10.0 * self.eps_zero
    }
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Matrix unit `E_ij` (zero-based indices).
pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    m[(i, j)] = ONE;
    m
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn from_real_rows(rows: usize, cols: usize, entries: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_row_iterator(rows, cols, entries.iter().map(|&x| c(x, 0.0)))
}

pub fn diag(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for (i, &v) in values.iter().enumerate() {
        m[(i, i)] = c(v, 0.0);
    }
    m
}

pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    (a - b).norm()
}

pub fn approx_eq(a: &ComplexMatrix, b: &ComplexMatrix, tol: &ToleranceProfile) -> bool {
    frobenius_distance(a, b) <= tol.eps_zero
}

pub fn hermitian_deviation(a: &ComplexMatrix) -> f64 {
    if !a.is_square() {
        return f64::INFINITY;
    }
    (a - a.adjoint()).norm()
}

/// Hermitian idempotent within `eps_zero`.
pub fn is_projection(p: &ComplexMatrix, tol: &ToleranceProfile) -> bool {
    p.is_square() && hermitian_deviation(p) <= tol.eps_zero && (p * p - p).norm() <= tol.eps_zero
}

pub fn is_finite(a: &ComplexMatrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// `true` when `p ≤ q` as projections, i.e. `pq = p`.
pub fn projection_leq(p: &ComplexMatrix, q: &ComplexMatrix, tol: &ToleranceProfile) -> bool {
    (p * q - p).norm() <= tol.eps_zero
}

/// Wire format `{"rows": m, "cols": n, "re": [[...]], "im": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        let (rows, cols) = m.shape();
        let re = (0..rows)
            .map(|i| (0..cols).map(|j| m[(i, j)].re).collect())
            .collect();
        let im = (0..rows)
            .map(|i| (0..cols).map(|j| m[(i, j)].im).collect())
            .collect();
        Self { rows, cols, re, im }
    }
}

impl TryFrom<&MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(json: &MatrixJson) -> Result<Self> {
        let shape_ok = json.re.len() == json.rows
            && json.im.len() == json.rows
            && json.re.iter().all(|r| r.len() == json.cols)
            && json.im.iter().all(|r| r.len() == json.cols);
        if !shape_ok {
            return Err(Error::Parse(format!(
                "matrix payload does not match declared shape {}x{}",
                json.rows, json.cols
            )));
        }
        let m = ComplexMatrix::from_fn(json.rows, json.cols, |i, j| c(json.re[i][j], json.im[i][j]));
        if !is_finite(&m) {
            return Err(Error::Parse("matrix contains non-finite entries".into()));
        }
        Ok(m)
    }
}

pub fn matrix_to_json(m: &ComplexMatrix) -> serde_json::Value {
    serde_json::to_value(MatrixJson::from(m)).expect("matrix json is always serializable")
}

pub fn matrix_from_json(value: &serde_json::Value) -> Result<ComplexMatrix> {
    let json: MatrixJson =
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    ComplexMatrix::try_from(&json)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_profile_is_valid() {
        ToleranceProfile::default().validate().unwrap();
        assert!(ToleranceProfile::new(0.0, 1e-6, 1e-8).is_err());
        assert!(ToleranceProfile::new(1e-9, 1e-2, 1e-8).is_err());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let m = ComplexMatrix::from_fn(2, 3, |i, j| c(0.1 * i as f64 + 1.0 / 3.0, -(j as f64) / 7.0));
        let text = serde_json::to_string(&MatrixJson::from(&m)).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        let m2 = ComplexMatrix::try_from(&back).unwrap();
        for (a, b) in m.iter().zip(m2.iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn json_rejects_ragged_rows() {
        let bad = serde_json::json!({"rows": 2, "cols": 2, "re": [[1.0, 0.0], [0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]});
        assert!(matrix_from_json(&bad).is_err());
    }

    #[test]
    fn projection_predicates() {
        let tol = ToleranceProfile::default();
        assert!(is_projection(&unit(2, 2, 0, 0), &tol));
        assert!(!is_projection(&unit(2, 2, 0, 1), &tol));
        assert!(projection_leq(&unit(2, 2, 0, 0), &identity(2), &tol));
        assert!(!projection_leq(&identity(2), &unit(2, 2, 0, 0), &tol));
    }
}
