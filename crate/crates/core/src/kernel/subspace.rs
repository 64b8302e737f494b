use nalgebra::{ComplexField, DMatrix, DVector};

use super::{singular_value_decomposition, ToleranceProfile};
use crate::error::{Error, Result};

/// A subspace of `T^ambient_dim` with an orthonormal basis stored as columns.
///
/// Bases produced by this module are canonical: they depend only on the
/// orthogonal projector, not on how the subspace was found.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T: ComplexField<RealField = f64>> {
    ambient_dim: usize,
    basis: DMatrix<T>,
}

impl<T: ComplexField<RealField = f64>> Subspace<T> {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: DMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: DMatrix::identity(ambient_dim, ambient_dim),
        }
    }

    /// Canonical orthonormal basis of the range of an orthogonal projector of
    /// known rank, by greedy column pivoting on the residual projector.
    pub fn from_projector(p: &DMatrix<T>, rank: usize) -> Self {
        let n = p.nrows();
        let mut residual = p.clone();
        let mut columns: Vec<DVector<T>> = Vec::with_capacity(rank);
        for _ in 0..rank.min(n) {
            let mut best = 0;
            let mut best_norm = -1.0;
            for j in 0..n {
                let norm = residual.column(j).norm();
                if norm > best_norm + 1e-12 {
                    best = j;
                    best_norm = norm;
                }
            }
            if best_norm <= 0.0 {
                break;
            }
            let mut v: DVector<T> = residual.column(best).into_owned();
            let pivot = v[best].clone();
            let modulus = pivot.clone().modulus();
            if modulus > 0.0 {
                let phase = pivot.conjugate().unscale(modulus);
                v *= phase;
            }
            let norm = v.norm();
            v.unscale_mut(norm);
            residual -= &v * v.adjoint();
            columns.push(v);
        }
        let basis = if columns.is_empty() {
            DMatrix::zeros(n, 0)
        } else {
            DMatrix::from_columns(&columns)
        };
        Self {
            ambient_dim: n,
            basis,
        }
    }

    /// Orthonormal basis of the column span of `vectors`.
    pub fn span(vectors: &DMatrix<T>, tol: &ToleranceProfile) -> Self {
        let svd = singular_value_decomposition(vectors, tol);
        let n = vectors.nrows();
        let mut p = DMatrix::zeros(n, n);
        for l in &svd.left {
            p += l * l.adjoint();
        }
        Self::from_projector(&p, svd.len())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> &DMatrix<T> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<DVector<T>> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }

    pub fn projector(&self) -> DMatrix<T> {
        &self.basis * self.basis.adjoint()
    }

    pub fn orthogonal_complement(&self) -> Self {
        let n = self.ambient_dim;
        let p = DMatrix::<T>::identity(n, n) - self.projector();
        Self::from_projector(&p, n - self.dim())
    }

    pub fn contains(&self, v: &DVector<T>, tol: &ToleranceProfile) -> bool {
        (v - self.projector() * v).norm() <= tol.eps_zero * (1.0 + v.norm())
    }

    /// `true` when both subspaces have the same projector within `eps_zero`.
    pub fn same_as(&self, other: &Self, tol: &ToleranceProfile) -> bool {
        self.ambient_dim == other.ambient_dim
            && (self.projector() - other.projector()).norm() <= tol.eps_zero
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let k = self.dim();
        (self.basis.adjoint() * &self.basis - DMatrix::<T>::identity(k, k)).norm()
    }
}

/// Null space of `a`: the orthogonal complement of the right singular vectors
/// whose singular values reach `eps_rank`.
pub fn kernel<T>(a: &DMatrix<T>, tol: &ToleranceProfile) -> Subspace<T>
where
    T: ComplexField<RealField = f64>,
{
    let n = a.ncols();
    let svd = singular_value_decomposition(a, tol);
    let mut p = DMatrix::<T>::identity(n, n);
    for r in &svd.right {
        p -= r * r.adjoint();
    }
    Subspace::from_projector(&p, n - svd.len())
}

/// `s ∩ t`, computed as the kernel of the stacked system `[(1 − P_s); (1 − P_t)]`.
pub fn subspace_intersection<T>(
    s: &Subspace<T>,
    t: &Subspace<T>,
    tol: &ToleranceProfile,
) -> Result<Subspace<T>>
where
    T: ComplexField<RealField = f64>,
{
    if s.ambient_dim != t.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "intersecting subspaces of dimensions {} and {}",
            s.ambient_dim, t.ambient_dim
        )));
    }
    let n = s.ambient_dim;
    let id = DMatrix::<T>::identity(n, n);
    let cs = &id - s.projector();
    let ct = &id - t.projector();
    let mut stacked = DMatrix::zeros(2 * n, n);
    stacked.rows_mut(0, n).copy_from(&cs);
    stacked.rows_mut(n, n).copy_from(&ct);
    Ok(kernel(&stacked, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{diag, identity, ComplexMatrix};
    use num_complex::Complex64;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn coordinate_span(n: usize, idx: &[usize]) -> Subspace<Complex64> {
        let mut m = ComplexMatrix::zeros(n, idx.len());
        for (k, &i) in idx.iter().enumerate() {
            m[(i, k)] = Complex64::new(1.0, 0.0);
        }
        Subspace::span(&m, &tol())
    }

    #[test]
    fn orthogonal_lines_meet_in_zero() {
        let s = coordinate_span(2, &[0]);
        let t = coordinate_span(2, &[1]);
        assert!(subspace_intersection(&s, &t, &tol()).unwrap().is_zero());
    }

    #[test]
    fn line_meets_itself() {
        let s = coordinate_span(2, &[0]);
        let r = subspace_intersection(&s, &s, &tol()).unwrap();
        assert!(r.same_as(&s, &tol()));
    }

    #[test]
    fn planes_in_three_space_meet_in_a_line() {
        let s = coordinate_span(3, &[0, 1]);
        let t = coordinate_span(3, &[1, 2]);
        let r = subspace_intersection(&s, &t, &tol()).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.same_as(&coordinate_span(3, &[1]), &tol()));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&identity(3), &tol()).is_zero());
        assert_eq!(kernel(&ComplexMatrix::zeros(2, 2), &tol()).dim(), 2);
        let k = kernel(&diag(&[0.0, 2.0]), &tol());
        assert!(k.same_as(&coordinate_span(2, &[0]), &tol()));
    }

    #[test]
    fn canonical_basis_has_real_positive_pivots() {
        let s = coordinate_span(3, &[2, 0]);
        assert!(s.gram_deviation() < 1e-12);
        for (k, v) in s.vectors().iter().enumerate() {
            let (idx, _) = v
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                .unwrap();
            assert!(v[idx].re > 0.0 && v[idx].im.abs() < 1e-14, "vector {k}");
        }
    }

    #[test]
    fn complement_is_orthogonal() {
        let s = coordinate_span(4, &[1, 3]);
        let c = s.orthogonal_complement();
        assert_eq!(c.dim(), 2);
        assert!((s.basis().adjoint() * c.basis()).norm() < 1e-12);
    }
}
