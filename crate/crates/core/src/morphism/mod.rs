//! Extension of quantum-logic morphisms to Jordan maps at matrix scale:
//! measure extension, Dye extension on projection frames, consistent
//! systems on homotopes, local Jordan maps, and the counterexample
//! constructors.

mod dye;
mod gallery;
mod map;
mod measure;
mod system;

pub use dye::{dye_extend, dye_injective_check, DyeExtension, ProjectionMap, RuleTag};
pub use gallery::{
    OrderBreaking,
    antisymmetric_gallery, completeness_transfer, cube_preservation_check, logic_map_on_snapshot,
    order_breaking_antisymmetric, phase_twist_morphism, ray_distance,
};
pub use map::{random_triple_automorphism, LinearExtension, Linearity, MapRule, PhaseTwist, TripotentMap};
pub use measure::{extend_measure, LinearFunctional};
pub use system::{
    build_consistent_system, build_consistent_system_with_order, local_jordan_evaluate, verify_local_jordan,
    ConsistentSystem, LocalJordanReport, SystemEntry,
};

use crate::calculus::{rank, Tripotent};
use crate::error::{Error, Result};
use crate::kernel::{c, ComplexMatrix, RealVector};
use crate::models::TripleModel;

/// The canonical spanning frame of the Hermitian part of `M_n`: the
/// diagonal units `E_ii`, then for `i < j` the projections onto
/// `(e_i + e_j)/√2` and `(e_i + i e_j)/√2`.
pub fn canonical_frame(n: usize) -> Vec<ComplexMatrix> {
    let mut frame = Vec::with_capacity(n * n);
    for i in 0..n {
        frame.push(crate::kernel::unit(n, n, i, i));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for phase in [c(1.0, 0.0), c(0.0, 1.0)] {
                let mut v = crate::kernel::ComplexVector::zeros(n);
                v[i] = c(1.0 / 2f64.sqrt(), 0.0);
                v[j] = phase / 2f64.sqrt();
                frame.push(&v * v.adjoint());
            }
        }
    }
    frame
}

/// Real coordinates of the Hermitian part of a square matrix: the diagonal,
/// then real and imaginary parts of the entries above it.
pub fn hermitian_coords(h: &ComplexMatrix) -> RealVector {
    let n = h.nrows();
    let mut v = RealVector::zeros(n * n);
    for i in 0..n {
        v[i] = h[(i, i)].re;
    }
    let mut k = n;
    for i in 0..n {
        for j in (i + 1)..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            v[k] = z.re;
            v[k + 1] = z.im;
            k += 2;
        }
    }
    v
}

/// Inverse of [`hermitian_coords`].
pub fn hermitian_from_coords(n: usize, v: &RealVector) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = c(v[i], 0.0);
    }
    let mut k = n;
    for i in 0..n {
        for j in (i + 1)..n {
            h[(i, j)] = c(v[k], v[k + 1]);
            h[(j, i)] = c(v[k], -v[k + 1]);
            k += 2;
        }
    }
    h
}

/// Jordan rank of the homotope `E(u)`: the length of a maximal family of
/// orthogonal minimal projections in it.
pub fn jordan_rank(u: &Tripotent) -> usize {
    match u.model() {
        TripleModel::Antisymmetric { .. } => rank(u) / 2,
        _ => rank(u),
    }
}

/// Rejects homotopes of Jordan rank two, whose self-adjoint parts are spin
/// factors and where frame functions need not be linear.
pub fn regular_gate(jordan_rank: usize, context: &str) -> Result<()> {
    if jordan_rank == 2 {
        return Err(Error::NotRegular(format!("{context} has a homotope of Jordan rank 2")));
    }
    Ok(())
}

/// Jordan rank of the homotope of a complete tripotent in `model`.
pub fn complete_jordan_rank(model: TripleModel) -> usize {
    match model {
        TripleModel::Rectangular { m, n } => m.min(n),
        TripleModel::Antisymmetric { n } => n / 2,
        TripleModel::Spin { .. } => 2,
    }
}
