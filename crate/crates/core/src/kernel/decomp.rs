use nalgebra::{ComplexField, DMatrix, DVector, SymmetricEigen};

use super::{Subspace, ToleranceProfile};
use crate::error::{Error, Result};

/// One eigenvalue cluster of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenCluster<T: ComplexField<RealField = f64>> {
    /// Mean of the merged eigenvalues.
    pub value: f64,
    /// The merged eigenvalues themselves, ascending.
    pub eigenvalues: Vec<f64>,
    pub space: Subspace<T>,
}

/// Eigenvalues sorted ascending with eigenvalues closer than `eps_eigen`
/// merged into one cluster. Works for real symmetric and complex Hermitian
/// matrices alike.
pub fn hermitian_eigendecomposition<T>(
    a: &DMatrix<T>,
    tol: &ToleranceProfile,
) -> Result<Vec<EigenCluster<T>>>
where
    T: ComplexField<RealField = f64>,
{
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition of a {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let deviation = (a - a.adjoint()).norm();
    if deviation > tol.eps_zero {
        return Err(Error::NotHermitian { deviation });
    }
    let h = (a + a.adjoint()) * T::from_real(0.5);
    let eig = SymmetricEigen::new(h);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        match groups.last_mut() {
            Some(g)
                if (eig.eigenvalues[idx] - eig.eigenvalues[*g.last().unwrap()]).abs()
                    <= tol.eps_eigen =>
            {
                g.push(idx)
            }
            _ => groups.push(vec![idx]),
        }
    }

    let clusters = groups
        .into_iter()
        .map(|g| {
            let value = g.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / g.len() as f64;
            let vectors = DMatrix::from_columns(
                &g.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<_>>(),
            );
            let projector = &vectors * vectors.adjoint();
            EigenCluster {
                value,
                eigenvalues: g.iter().map(|&i| eig.eigenvalues[i]).collect(),
                space: Subspace::from_projector(&projector, g.len()),
            }
        })
        .collect();
    Ok(clusters)
}

/// Thin singular value decomposition with negligible singular values dropped.
#[derive(Debug, Clone)]
pub struct SingularTriples<T: ComplexField<RealField = f64>> {
    pub left: Vec<DVector<T>>,
    pub sigmas: Vec<f64>,
    pub right: Vec<DVector<T>>,
}

impl<T: ComplexField<RealField = f64>> SingularTriples<T> {
    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    /// `Σ σᵢ · leftᵢ · rightᵢ*`.
    pub fn reconstruct(&self, rows: usize, cols: usize) -> DMatrix<T> {
        let mut m = DMatrix::zeros(rows, cols);
        for ((l, s), r) in self.left.iter().zip(&self.sigmas).zip(&self.right) {
            m += l * r.adjoint() * T::from_real(*s);
        }
        m
    }
}

/// Singular triples sorted by descending σ; triples with σ < `eps_rank` are
/// dropped.
pub fn singular_value_decomposition<T>(a: &DMatrix<T>, tol: &ToleranceProfile) -> SingularTriples<T>
where
    T: ComplexField<RealField = f64>,
{
    let mut triples = full_triples(a);
    triples.retain(|(s, _, _)| *s >= tol.eps_rank);
    let mut out = SingularTriples {
        left: Vec::with_capacity(triples.len()),
        sigmas: Vec::with_capacity(triples.len()),
        right: Vec::with_capacity(triples.len()),
    };
    for (s, l, r) in triples {
        out.sigmas.push(s);
        out.left.push(l);
        out.right.push(r);
    }
    out
}

/// Singular triples from the Hermitian dilation `[[0, A], [A*, 0]]`, whose
/// eigenpairs are `±σ` with eigenvectors `(l, ±r)/√2`.
fn full_triples<T>(a: &DMatrix<T>) -> Vec<(f64, DVector<T>, DVector<T>)>
where
    T: ComplexField<RealField = f64>,
{
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Vec::new();
    }
    let mut h = DMatrix::<T>::zeros(m + n, m + n);
    h.view_mut((0, m), (m, n)).copy_from(a);
    h.view_mut((m, 0), (n, m)).copy_from(&a.adjoint());
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..m + n).collect();
    order.sort_by(|&x, &y| {
        eig.eigenvalues[y]
            .partial_cmp(&eig.eigenvalues[x])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.cmp(&y))
    });
    let scale = T::from_real(std::f64::consts::SQRT_2);
    order
        .into_iter()
        .take(m.min(n))
        .map(|k| {
            let v = eig.eigenvectors.column(k);
            let l = v.rows(0, m).into_owned() * scale.clone();
            let r = v.rows(m, n).into_owned() * scale.clone();
            (eig.eigenvalues[k].max(0.0), l, r)
        })
        .collect()
}

/// Largest singular value.
pub fn operator_norm<T>(a: &DMatrix<T>) -> f64
where
    T: ComplexField<RealField = f64>,
{
    full_triples(a).first().map(|t| t.0).unwrap_or(0.0)
}

/// Moore–Penrose inverse with singular values below `eps_rank` discarded.
pub fn pseudo_inverse<T>(a: &DMatrix<T>, tol: &ToleranceProfile) -> DMatrix<T>
where
    T: ComplexField<RealField = f64>,
{
    let svd = singular_value_decomposition(a, tol);
    let mut inv = DMatrix::zeros(a.ncols(), a.nrows());
    for ((l, s), r) in svd.left.iter().zip(&svd.sigmas).zip(&svd.right) {
        inv += r * l.adjoint() * T::from_real(1.0 / s);
    }
    inv
}
