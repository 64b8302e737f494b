use crate::error::{Error, Result};
use crate::kernel::{hermitian_deviation, hermitian_eigendecomposition, singular_value_decomposition, ComplexMatrix, ToleranceProfile};
use crate::models::TripleElement;

use super::Tripotent;

fn in_model(x: &TripleElement, m: ComplexMatrix, tol: &ToleranceProfile) -> Result<TripleElement> {
    if !x.model().admits(&m, tol) {
        return Err(Error::Numerical(format!("spectral part left {}", x.model())));
    }
    Ok(TripleElement::matrix_unchecked(x.model(), m))
}

/// Support partial isometry `Σ lᵢrᵢ*` over singular values above `eps_rank`.
pub fn range_tripotent(x: &TripleElement, tol: &ToleranceProfile) -> Result<Tripotent> {
    let m = x.matrix()?;
    let svd = singular_value_decomposition(m, tol);
    let mut r = ComplexMatrix::zeros(m.nrows(), m.ncols());
    for (l, v) in svd.left.iter().zip(&svd.right) {
        r += l * v.adjoint();
    }
    Ok(Tripotent::trusted(in_model(x, r, tol)?))
}

/// `x = Σ λᵢeᵢ` with pairwise orthogonal tripotents `eᵢ` and strictly
/// decreasing positive `λᵢ`.
#[derive(Debug, Clone)]
pub struct SpectralForm {
    pub tripotents: Vec<Tripotent>,
    pub coefficients: Vec<f64>,
}

impl SpectralForm {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn reconstruct(&self, like: &TripleElement) -> Result<TripleElement> {
        let mut sum = like.model().zero();
        for (e, l) in self.tripotents.iter().zip(&self.coefficients) {
            sum = sum.add(&e.element().scale(*l))?;
        }
        Ok(sum)
    }

    /// `Σ f(λᵢ)eᵢ`; with `f(t) = t³` this is `{x,x,x}`.
    pub fn apply(&self, like: &TripleElement, f: impl Fn(f64) -> f64) -> Result<TripleElement> {
        let mut sum = like.model().zero();
        for (e, l) in self.tripotents.iter().zip(&self.coefficients) {
            sum = sum.add(&e.element().scale(f(*l)))?;
        }
        Ok(sum)
    }
}

/// Groups singular values within `eps_eigen` of each other.
pub fn triple_spectral(x: &TripleElement, tol: &ToleranceProfile) -> Result<SpectralForm> {
    let m = x.matrix()?;
    let svd = singular_value_decomposition(m, tol);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for k in 0..svd.len() {
        match groups.last_mut() {
            Some(g) if (svd.sigmas[*g.last().unwrap()] - svd.sigmas[k]).abs() <= tol.eps_eigen => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    let mut form = SpectralForm {
        tripotents: Vec::with_capacity(groups.len()),
        coefficients: Vec::with_capacity(groups.len()),
    };
    for g in groups {
        let mut e = ComplexMatrix::zeros(m.nrows(), m.ncols());
        for &k in &g {
            e += &svd.left[k] * svd.right[k].adjoint();
        }
        let value = g.iter().map(|&k| svd.sigmas[k]).sum::<f64>() / g.len() as f64;
        form.tripotents.push(Tripotent::trusted(in_model(x, e, tol)?));
        form.coefficients.push(value);
    }
    Ok(form)
}

/// `x` is positive in `E(w)`: `x ∈ E₂(w)`, `x = wx*w` and `w*x ≥ 0`.
pub fn is_positive_in(x: &TripleElement, w: &Tripotent, tol: &ToleranceProfile) -> Result<bool> {
    if x.model() != w.model() {
        return Err(Error::ModelMismatch {
            left: x.model().to_string(),
            right: w.model().to_string(),
        });
    }
    let (xm, wm) = (x.matrix()?, w.matrix()?);
    let eps = tol.certify() * (1.0 + xm.norm());
    let pf = w.final_projection().unwrap();
    let pi = w.initial_projection().unwrap();
    if (pf * xm * pi - xm).norm() > eps {
        return Ok(false);
    }
    if (wm * xm.adjoint() * wm - xm).norm() > eps {
        return Ok(false);
    }
    let h = wm.adjoint() * xm;
    if hermitian_deviation(&h) > eps {
        return Ok(false);
    }
    let h = (&h + h.adjoint()) * crate::kernel::c(0.5, 0.0);
    let clusters = hermitian_eigendecomposition(&h, tol)?;
    Ok(clusters.first().is_none_or(|c| c.value >= -eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{c, diag, unit};
    use crate::models::TripleModel;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn el(x: ComplexMatrix) -> TripleElement {
        TripleElement::from_matrix(TripleModel::square(2).unwrap(), x).unwrap()
    }

    #[test]
    fn range_tripotent_examples() {
        assert!(range_tripotent(&el(ComplexMatrix::zeros(2, 2)), &tol()).unwrap().is_zero(&tol()));
        let r = range_tripotent(&el(diag(&[0.5, 0.0])), &tol()).unwrap();
        assert!((r.matrix().unwrap() - unit(2, 2, 0, 0)).norm() < 1e-12);
        let r = range_tripotent(&el(unit(2, 2, 0, 1) * c(2.0, 0.0)), &tol()).unwrap();
        assert!((r.matrix().unwrap() - unit(2, 2, 0, 1)).norm() < 1e-12);
    }

    #[test]
    fn spectral_examples() {
        let x = el(diag(&[3.0, 1.0]));
        let s = triple_spectral(&x, &tol()).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s.coefficients[0] - 3.0).abs() < 1e-12);
        assert!((s.tripotents[0].matrix().unwrap() - unit(2, 2, 0, 0)).norm() < 1e-12);
        assert!((s.coefficients[1] - 1.0).abs() < 1e-12);
        assert!((s.tripotents[1].matrix().unwrap() - unit(2, 2, 1, 1)).norm() < 1e-12);

        let u = el(unit(2, 2, 0, 1));
        let s = triple_spectral(&u, &tol()).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.reconstruct(&u).unwrap().approx_eq(&u, &tol()));
        assert!(triple_spectral(&el(ComplexMatrix::zeros(2, 2)), &tol()).unwrap().is_empty());
    }

    #[test]
    fn positivity_in_homotope() {
        let w = Tripotent::new(el(unit(2, 2, 0, 1)), &tol()).unwrap();
        assert!(is_positive_in(&el(unit(2, 2, 0, 1) * c(2.0, 0.0)), &w, &tol()).unwrap());
        assert!(!is_positive_in(&el(unit(2, 2, 0, 1) * c(-1.0, 0.0)), &w, &tol()).unwrap());
        assert!(!is_positive_in(&el(unit(2, 2, 1, 0)), &w, &tol()).unwrap());
    }
}
