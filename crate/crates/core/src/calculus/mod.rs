//! Tripotents and their structure: Peirce spaces, order, orthogonality,
//! lattice operations, range tripotents and homotopes.

mod lattice;
mod order;
mod peirce;
mod spectral;

pub use lattice::{join_if_exists, meet, meet_projection};
pub use order::{
    leq, local_complement, order_factorization, orthogonal_sup, orthogonality_equivalences,
    is_orthogonal, OrderFactorization, OrthogonalityVerdicts,
};
pub use peirce::{
    homotope, homotope_transport, is_complete, peirce, HomotopeAlgebra, HomotopeTransport,
    PeirceDecomposition,
};
pub use spectral::{is_positive_in, range_tripotent, triple_spectral, SpectralForm};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::kernel::{matrix_to_json, ComplexMatrix, ToleranceProfile};
use crate::models::{triple_product, TripleElement, TripleModel};

/// `‖{x,x,x} − x‖`.
pub fn tripotent_deviation(x: &TripleElement) -> f64 {
    triple_product(x, x, x)
        .map(|p| p.distance(x))
        .unwrap_or(f64::INFINITY)
}

pub fn is_tripotent(x: &TripleElement, tol: &ToleranceProfile) -> bool {
    tripotent_deviation(x) <= tol.eps_zero
}

/// A certified tripotent with cached initial and final projections
/// (matrix models only).
#[derive(Debug, Clone, PartialEq)]
pub struct Tripotent {
    element: TripleElement,
    initial: Option<ComplexMatrix>,
    final_: Option<ComplexMatrix>,
}

impl Tripotent {
    pub fn new(element: TripleElement, tol: &ToleranceProfile) -> Result<Self> {
        let deviation = tripotent_deviation(&element);
        if deviation > tol.eps_zero {
            return Err(Error::NotATripotent { deviation });
        }
        Ok(Self::trusted(element))
    }

    /// Skips the tripotent check; for results of closed constructions.
    pub(crate) fn trusted(element: TripleElement) -> Self {
        let (initial, final_) = match element.matrix() {
            Ok(u) => (Some(u.adjoint() * u), Some(u * u.adjoint())),
            Err(_) => (None, None),
        };
        Self {
            element,
            initial,
            final_,
        }
    }

    pub fn zero(model: TripleModel) -> Self {
        Self::trusted(model.zero())
    }

    pub fn element(&self) -> &TripleElement {
        &self.element
    }

    pub fn into_element(self) -> TripleElement {
        self.element
    }

    pub fn model(&self) -> TripleModel {
        self.element.model()
    }

    pub fn matrix(&self) -> Result<&ComplexMatrix> {
        self.element.matrix()
    }

    /// `p_i(u) = u*u`.
    pub fn initial_projection(&self) -> Option<&ComplexMatrix> {
        self.initial.as_ref()
    }

    /// `p_f(u) = uu*`.
    pub fn final_projection(&self) -> Option<&ComplexMatrix> {
        self.final_.as_ref()
    }

    pub fn neg(&self) -> Self {
        Self::trusted(self.element.neg())
    }

    pub fn is_zero(&self, tol: &ToleranceProfile) -> bool {
        self.element.is_zero(tol)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.element.to_json();
        if let (Some(p), Some(q)) = (&self.initial, &self.final_) {
            v["initial_projection"] = matrix_to_json(p);
            v["final_projection"] = matrix_to_json(q);
        }
        v
    }

    pub fn from_json(value: &Value, tol: &ToleranceProfile) -> Result<Self> {
        Self::new(TripleElement::from_json(value)?, tol)
    }
}

/// Rank of a tripotent: the trace of `p_i(u)` for matrices, the number of
/// nonzero eigenvalues `λ ± ‖a‖` for spin factors.
pub fn rank(u: &Tripotent) -> usize {
    match u.initial_projection() {
        Some(p) => p.trace().re.round().max(0.0) as usize,
        None => {
            let s = u.element().spin().expect("non-matrix tripotents are spin elements");
            let r = s.a.norm();
            [s.lambda + r, s.lambda - r]
                .iter()
                .filter(|e| e.abs() > 0.5)
                .count()
        }
    }
}
