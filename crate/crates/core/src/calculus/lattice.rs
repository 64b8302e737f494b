use crate::error::{Error, Result};
use crate::kernel::{kernel, pseudo_inverse, subspace_intersection, ComplexMatrix, Subspace, ToleranceProfile};
use crate::models::TripleElement;

use super::{leq, rank, Tripotent};

fn matrices<'a>(u: &'a Tripotent, w: &'a Tripotent) -> Result<(&'a ComplexMatrix, &'a ComplexMatrix)> {
    if u.model() != w.model() {
        return Err(Error::ModelMismatch {
            left: u.model().to_string(),
            right: w.model().to_string(),
        });
    }
    Ok((u.matrix()?, w.matrix()?))
}

fn final_range(u: &Tripotent) -> Subspace<num_complex::Complex64> {
    Subspace::from_projector(u.final_projection().expect("matrix tripotent"), rank(u))
}

fn initial_range(u: &Tripotent) -> Subspace<num_complex::Complex64> {
    Subspace::from_projector(u.initial_projection().expect("matrix tripotent"), rank(u))
}

fn in_model(u: &Tripotent, x: ComplexMatrix, tol: &ToleranceProfile) -> Result<TripleElement> {
    if !u.model().admits(&x, tol) {
        return Err(Error::Numerical(format!("lattice result left {}", u.model())));
    }
    Ok(TripleElement::matrix_unchecked(u.model(), x))
}

/// The projection `h` onto `ran p_f(u) ∩ ran p_f(w) ∩ ker(u* − w*)`.
pub fn meet_projection(u: &Tripotent, w: &Tripotent, tol: &ToleranceProfile) -> Result<ComplexMatrix> {
    let (um, wm) = matrices(u, w)?;
    let both = subspace_intersection(&final_range(u), &final_range(w), tol)?;
    let agree = kernel(&(um - wm).adjoint(), tol);
    Ok(subspace_intersection(&both, &agree, tol)?.projector())
}

/// `u ∧ w = hu` with `h` from [`meet_projection`].
pub fn meet(u: &Tripotent, w: &Tripotent, tol: &ToleranceProfile) -> Result<Tripotent> {
    let h = meet_projection(u, w, tol)?;
    let hu = &h * u.matrix()?;
    Ok(Tripotent::trusted(in_model(u, hu, tol)?))
}

/// Least common upper bound of `u` and `v`, when one exists.
///
/// A bound exists iff `u` and `v` agree as isometries on the span of their
/// initial spaces: `p_i(v)(v*u − 1)p_i(u) = 0`, and dually on final spaces.
/// The bound is then `u` on `ran p_i(u)`, `v` on `ran p_i(v)`, zero on the
/// orthogonal complement of their sum.
pub fn join_if_exists(u: &Tripotent, v: &Tripotent, tol: &ToleranceProfile) -> Result<Option<Tripotent>> {
    let (um, vm) = matrices(u, v)?;
    let (pi_u, pi_v) = (u.initial_projection().unwrap(), v.initial_projection().unwrap());
    let (pf_u, pf_v) = (u.final_projection().unwrap(), v.final_projection().unwrap());
    let n = um.ncols();
    let m = um.nrows();
    let initial_side = pi_v * (vm.adjoint() * um - ComplexMatrix::identity(n, n)) * pi_u;
    let final_side = pf_v * (vm * um.adjoint() - ComplexMatrix::identity(m, m)) * pf_u;
    if initial_side.norm() > tol.certify() || final_side.norm() > tol.certify() {
        return Ok(None);
    }
    let (xu, xv) = (initial_range(u), initial_range(v));
    let (ku, kv) = (xu.dim(), xv.dim());
    let mut domain = ComplexMatrix::zeros(n, ku + kv);
    domain.columns_mut(0, ku).copy_from(xu.basis());
    domain.columns_mut(ku, kv).copy_from(xv.basis());
    let mut image = ComplexMatrix::zeros(m, ku + kv);
    image.columns_mut(0, ku).copy_from(&(um * xu.basis()));
    image.columns_mut(ku, kv).copy_from(&(vm * xv.basis()));
    let w = image * pseudo_inverse(&domain, tol);
    let w = Tripotent::new(in_model(u, w, tol)?, &ToleranceProfile::with_eps_zero(tol.certify())?)?;
    if leq(u, &w, &ToleranceProfile::with_eps_zero(tol.certify())?)?
        && leq(v, &w, &ToleranceProfile::with_eps_zero(tol.certify())?)?
    {
        Ok(Some(w))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{diag, identity, unit};
    use crate::models::TripleModel;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn trip(model: TripleModel, x: ComplexMatrix) -> Tripotent {
        Tripotent::new(TripleElement::from_matrix(model, x).unwrap(), &tol()).unwrap()
    }

    fn m2() -> TripleModel {
        TripleModel::square(2).unwrap()
    }

    #[test]
    fn meet_examples() {
        let one = trip(m2(), identity(2));
        let flip = trip(m2(), diag(&[1.0, -1.0]));
        let e11 = trip(m2(), unit(2, 2, 0, 0));
        let e22 = trip(m2(), unit(2, 2, 1, 1));
        assert!((meet(&one, &flip, &tol()).unwrap().matrix().unwrap() - unit(2, 2, 0, 0)).norm() < 1e-12);
        assert!((meet(&flip, &flip, &tol()).unwrap().matrix().unwrap() - diag(&[1.0, -1.0])).norm() < 1e-12);
        assert!(meet(&e11, &e22, &tol()).unwrap().is_zero(&tol()));
    }

    #[test]
    fn join_examples() {
        let e11 = trip(m2(), unit(2, 2, 0, 0));
        let e22 = trip(m2(), unit(2, 2, 1, 1));
        let one = trip(m2(), identity(2));
        let j = join_if_exists(&e11, &e22, &tol()).unwrap().unwrap();
        assert!((j.matrix().unwrap() - identity(2)).norm() < 1e-12);
        let j = join_if_exists(&e11, &one, &tol()).unwrap().unwrap();
        assert!((j.matrix().unwrap() - identity(2)).norm() < 1e-12);
        assert!(join_if_exists(&e11, &e11.neg(), &tol()).unwrap().is_none());
    }

    #[test]
    fn maximal_tripotents_have_no_join() {
        let one = trip(m2(), identity(2));
        let flip = trip(m2(), diag(&[1.0, -1.0]));
        assert!(join_if_exists(&one, &flip, &tol()).unwrap().is_none());
    }
}
