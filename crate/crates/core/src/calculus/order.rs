use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{ComplexMatrix, ToleranceProfile};
use crate::models::{triple_product, TripleElement, TripleModel};

use super::{peirce, tripotent_deviation, Tripotent};

fn same_model(a: &Tripotent, b: &Tripotent) -> Result<()> {
    if a.model() == b.model() {
        Ok(())
    } else {
        Err(Error::ModelMismatch {
            left: a.model().to_string(),
            right: b.model().to_string(),
        })
    }
}

/// `‖{e,e,f}‖ ≤ eps_zero`.
pub fn is_orthogonal(e: &Tripotent, f: &Tripotent, tol: &ToleranceProfile) -> Result<bool> {
    same_model(e, f)?;
    Ok(triple_product(e.element(), e.element(), f.element())?.frobenius_norm() <= tol.eps_zero)
}

/// Verdicts of the equivalent characterisations of `e ⟂ f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrthogonalityVerdicts {
    /// `L(e,f) = 0`.
    pub l_ef_vanishes: bool,
    /// `L(f,e) = 0`.
    pub l_fe_vanishes: bool,
    /// `e ∈ E₀(f)`.
    pub e_in_peirce_zero_of_f: bool,
    /// `E₂(e) ⊂ E₀(f)`.
    pub peirce_two_of_e_in_peirce_zero_of_f: bool,
    /// `{e,e,f} = 0`.
    pub eef_vanishes: bool,
    /// `e + f` and `e − f` are tripotents.
    pub sum_and_difference_tripotent: bool,
    /// `f*e = 0 = ef*`; `None` outside matrix models.
    pub double_orthogonal: Option<bool>,
}

impl OrthogonalityVerdicts {
    pub fn as_vec(&self) -> Vec<bool> {
        let mut v = vec![
            self.l_ef_vanishes,
            self.l_fe_vanishes,
            self.e_in_peirce_zero_of_f,
            self.peirce_two_of_e_in_peirce_zero_of_f,
            self.eef_vanishes,
            self.sum_and_difference_tripotent,
        ];
        v.extend(self.double_orthogonal);
        v
    }

    pub fn all_agree(&self) -> bool {
        let v = self.as_vec();
        v.iter().all(|&b| b == v[0])
    }

    /// Common verdict, or `None` when the criteria disagree.
    pub fn verdict(&self) -> Option<bool> {
        self.all_agree().then_some(self.l_ef_vanishes)
    }
}

fn box_operator_norm(model: TripleModel, a: &TripleElement, b: &TripleElement) -> Result<f64> {
    let m = model.operator_matrix(|x| triple_product(a, b, x))?;
    Ok(m.norm())
}

pub fn orthogonality_equivalences(
    e: &Tripotent,
    f: &Tripotent,
    tol: &ToleranceProfile,
) -> Result<OrthogonalityVerdicts> {
    same_model(e, f)?;
    let model = e.model();
    let (ee, fe) = (e.element(), f.element());
    let eps = tol.eps_zero;

    let l_ef_vanishes = box_operator_norm(model, ee, fe)? <= eps;
    let l_fe_vanishes = box_operator_norm(model, fe, ee)? <= eps;

    let pf = peirce(f, tol)?;
    let pe = peirce(e, tol)?;
    let e_in_peirce_zero_of_f = pf.project(0, ee)?.distance(ee) <= eps;
    let inclusion = &pf.projector(0).clone() * pe.projector(2) - pe.projector(2);
    let peirce_two_of_e_in_peirce_zero_of_f = inclusion.norm() <= eps;

    let eef_vanishes = triple_product(ee, ee, fe)?.frobenius_norm() <= eps;
    let sum_and_difference_tripotent =
        tripotent_deviation(&ee.add(fe)?) <= eps && tripotent_deviation(&ee.sub(fe)?) <= eps;

    let double_orthogonal = match (ee.matrix(), fe.matrix()) {
        (Ok(u), Ok(v)) => Some((v.adjoint() * u).norm() <= eps && (u * v.adjoint()).norm() <= eps),
        _ => None,
    };

    Ok(OrthogonalityVerdicts {
        l_ef_vanishes,
        l_fe_vanishes,
        e_in_peirce_zero_of_f,
        peirce_two_of_e_in_peirce_zero_of_f,
        eef_vanishes,
        sum_and_difference_tripotent,
        double_orthogonal,
    })
}

/// `u ≤ v` via `{u,v,u} = u`, cross-checked against "`v − u` is a tripotent
/// orthogonal to `u`".
pub fn leq(u: &Tripotent, v: &Tripotent, tol: &ToleranceProfile) -> Result<bool> {
    same_model(u, v)?;
    let (ue, ve) = (u.element(), v.element());
    let primary = triple_product(ue, ve, ue)?.distance(ue);
    let d = ve.sub(ue)?;
    let definitional = tripotent_deviation(&d).max(triple_product(ue, ue, &d)?.frobenius_norm());
    let by_primary = primary <= tol.eps_zero;
    let by_definition = definitional <= tol.eps_zero;
    if by_primary != by_definition && primary.max(definitional) > 1e3 * tol.eps_zero {
        return Err(Error::InconsistentCriteria {
            primary,
            definitional,
        });
    }
    Ok(by_primary)
}

/// The projections `p ≤ p_f(v)` and `q ≤ p_i(v)` with `u = pv = vq`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderFactorization {
    pub p: ComplexMatrix,
    pub q: ComplexMatrix,
}

pub fn order_factorization(u: &Tripotent, v: &Tripotent, tol: &ToleranceProfile) -> Result<OrderFactorization> {
    if !leq(u, v, tol)? {
        return Err(Error::NotComparable);
    }
    let p = u.final_projection().ok_or_else(|| Error::UnsupportedModel(u.model().to_string()))?.clone();
    let q = u.initial_projection().expect("matrix tripotent").clone();
    let (um, vm) = (u.matrix()?, v.matrix()?);
    let deviation = (&p * vm - um).norm().max((vm * &q - um).norm());
    if deviation > tol.certify() {
        return Err(Error::CertificationFailed {
            identity: "u = pv = vq".into(),
            deviation,
        });
    }
    Ok(OrderFactorization { p, q })
}

/// `f^{⊥_e} = e − f` for `f ≤ e`.
pub fn local_complement(f: &Tripotent, e: &Tripotent, tol: &ToleranceProfile) -> Result<Tripotent> {
    if !leq(f, e, tol)? {
        return Err(Error::NotComparable);
    }
    Ok(Tripotent::trusted(e.element().sub(f.element())?))
}

/// Sum of pairwise orthogonal tripotents, their supremum.
pub fn orthogonal_sup(model: TripleModel, parts: &[Tripotent], tol: &ToleranceProfile) -> Result<Tripotent> {
    let mut sum = model.zero();
    for (i, p) in parts.iter().enumerate() {
        if p.model() != model {
            return Err(Error::ModelMismatch {
                left: model.to_string(),
                right: p.model().to_string(),
            });
        }
        for (j, q) in parts.iter().enumerate().skip(i + 1) {
            if !is_orthogonal(p, q, tol)? {
                return Err(Error::NotOrthogonal(i, j));
            }
        }
        sum = sum.add(p.element())?;
    }
    Ok(Tripotent::trusted(sum))
}
