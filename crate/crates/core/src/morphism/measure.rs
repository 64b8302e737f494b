use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{
    is_projection, matrix_to_json, pseudo_inverse, singular_value_decomposition, ComplexMatrix, RealMatrix,
    RealVector, ToleranceProfile,
};

use super::{hermitian_coords, hermitian_from_coords, regular_gate};

/// `μ(x) = tr(ρx)` with Hermitian `ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFunctional {
    density: ComplexMatrix,
}

impl LinearFunctional {
    pub fn density(&self) -> &ComplexMatrix {
        &self.density
    }

    pub fn evaluate(&self, x: &ComplexMatrix) -> Complex64 {
        (&self.density * x).trace()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "density": matrix_to_json(&self.density) })
    }
}

/// The linear functional on `M_n` agreeing with a table of values on
/// projections.
///
/// Every linear relation among the tabulated projections must be respected
/// by the values; otherwise the relation is returned as the witness. The
/// table must then span the Hermitian part. `M_2` is rejected.
pub fn extend_measure(values: &[(ComplexMatrix, f64)], n: usize, tol: &ToleranceProfile) -> Result<LinearFunctional> {
    regular_gate(n, &format!("M_{n}"))?;
    for (k, (p, _)) in values.iter().enumerate() {
        if p.shape() != (n, n) || !is_projection(p, tol) {
            return Err(Error::NotAMember(format!("table key {k} is not a projection in M_{n}")));
        }
    }
    let dim = n * n;
    // Row k computes tr(ρ p_k) from the Hermitian coordinates of ρ.
    let mut a = RealMatrix::zeros(values.len(), dim);
    for (k, (p, _)) in values.iter().enumerate() {
        let mut row = hermitian_coords(p);
        for v in row.iter_mut().skip(n) {
            *v *= 2.0;
        }
        a.set_row(k, &row.transpose());
    }
    let b = RealVector::from_iterator(values.len(), values.iter().map(|(_, v)| *v));
    let x = pseudo_inverse(&a, tol) * &b;
    let residual = &b - &a * &x;
    let scale = 1.0 + b.amax();
    if residual.norm() > tol.certify() * scale {
        let r = &residual / residual.amax();
        let terms: Vec<String> = r
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > 1e-6)
            .map(|(k, c)| format!("{c:+.3}·p{k}"))
            .collect();
        let value: f64 = r.iter().zip(b.iter()).map(|(c, v)| c * v).sum();
        return Err(Error::Inconsistent {
            witness: format!("{} = 0 but the tabulated values give {value:.6}", terms.join(" ")),
        });
    }
    let rank = singular_value_decomposition(&a, tol).len();
    if rank < dim {
        return Err(Error::SpanDeficient { rank, needed: dim });
    }
    Ok(LinearFunctional {
        density: hermitian_from_coords(n, &x),
    })
}
