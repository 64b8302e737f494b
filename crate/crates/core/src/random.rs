//! Seeded sampling of matrices, elements and tripotents.
//!
//! Every sampler takes an explicit generator; [`stream_rng`] derives
//! independent generators from one seed so parallel work stays reproducible.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::calculus::{range_tripotent, Tripotent};
use crate::error::Result;
use crate::kernel::{c, singular_value_decomposition, ComplexMatrix, ComplexVector, RealVector, ToleranceProfile};
use crate::models::{SpinElement, TripleElement, TripleModel};

pub type SampleRng = ChaCha8Rng;

/// Generator for sub-stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn normal(rng: &mut SampleRng) -> f64 {
    rng.sample(StandardNormal)
}

/// Entries with independent standard normal real and imaginary parts.
pub fn gaussian_matrix(rng: &mut SampleRng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re = normal(rng);
        let im = normal(rng);
        c(re, im)
    })
}

pub fn gaussian_vector(rng: &mut SampleRng, n: usize) -> ComplexVector {
    ComplexVector::from_fn(n, |_, _| {
        let re = normal(rng);
        let im = normal(rng);
        c(re, im)
    })
}

pub fn random_hermitian(rng: &mut SampleRng, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    (&g + g.adjoint()) * c(0.5, 0.0)
}

/// Unitary polar factor of a Gaussian matrix.
pub fn random_unitary(rng: &mut SampleRng, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    let tol = ToleranceProfile::default();
    let svd = singular_value_decomposition(&g, &tol);
    let mut u = ComplexMatrix::zeros(n, n);
    for (l, r) in svd.left.iter().zip(&svd.right) {
        u += l * r.adjoint();
    }
    u
}

/// Orthogonal projection of the given rank onto a random subspace.
pub fn random_projection(rng: &mut SampleRng, n: usize, rank: usize) -> ComplexMatrix {
    let u = random_unitary(rng, n);
    let cols = u.columns(0, rank.min(n));
    cols * cols.adjoint()
}

/// Element with Gaussian coordinates.
pub fn random_element(rng: &mut SampleRng, model: TripleModel) -> TripleElement {
    let v = RealVector::from_fn(model.real_dim(), |_, _| normal(rng));
    model.from_coords(&v).expect("coordinate length matches the model")
}

/// Largest rank of a tripotent in the model.
pub fn max_rank(model: TripleModel) -> usize {
    match model {
        TripleModel::Rectangular { m, n } => m.min(n),
        TripleModel::Antisymmetric { n } => 2 * (n / 2),
        TripleModel::Spin { .. } => 2,
    }
}

/// Ranks attainable by nonzero tripotents, ascending.
pub fn attainable_ranks(model: TripleModel) -> Vec<usize> {
    match model {
        TripleModel::Antisymmetric { .. } => (1..=max_rank(model) / 2).map(|k| 2 * k).collect(),
        _ => (1..=max_rank(model)).collect(),
    }
}

/// Random element of the given rank (matrix models), as a sum of rank-one
/// terms (or of `abᵗ − baᵗ` for antisymmetric models).
pub fn random_low_rank(rng: &mut SampleRng, model: TripleModel, rank: usize) -> Result<TripleElement> {
    match model {
        TripleModel::Rectangular { m, n } => {
            let x = gaussian_matrix(rng, m, rank) * gaussian_matrix(rng, rank, n);
            TripleElement::from_matrix(model, x)
        }
        TripleModel::Antisymmetric { n } => {
            let mut x = ComplexMatrix::zeros(n, n);
            for _ in 0..rank / 2 {
                let a = gaussian_vector(rng, n);
                let b = gaussian_vector(rng, n);
                x += &a * b.transpose() - &b * a.transpose();
            }
            TripleElement::from_matrix(model, x)
        }
        TripleModel::Spin { .. } => Ok(random_element(rng, model)),
    }
}

/// Nonzero tripotent of the given rank.
pub fn random_tripotent_of_rank(
    rng: &mut SampleRng,
    model: TripleModel,
    rank: usize,
    tol: &ToleranceProfile,
) -> Result<Tripotent> {
    if let TripleModel::Spin { n } = model {
        return Ok(random_spin_tripotent(rng, n, rank, tol));
    }
    loop {
        let x = random_low_rank(rng, model, rank)?;
        let u = range_tripotent(&x, tol)?;
        if crate::calculus::rank(&u) == rank {
            return Ok(u);
        }
    }
}

/// Nonzero tripotent with rank drawn uniformly from the attainable ranks.
pub fn random_tripotent(rng: &mut SampleRng, model: TripleModel, tol: &ToleranceProfile) -> Result<Tripotent> {
    let ranks = attainable_ranks(model);
    let rank = ranks[rng.random_range(0..ranks.len())];
    random_tripotent_of_rank(rng, model, rank, tol)
}

fn random_spin_tripotent(rng: &mut SampleRng, n: usize, rank: usize, tol: &ToleranceProfile) -> Tripotent {
    let mut a = RealVector::from_fn(n, |_, _| normal(rng));
    let norm = a.norm();
    a /= norm;
    let sign = |rng: &mut SampleRng| if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    // u = s₁p + s₂q with p, q = (±a/2) ⊕ ½ the two minimal projections.
    let (s1, s2) = if rank >= 2 {
        (sign(rng), sign(rng))
    } else if rng.random_bool(0.5) {
        (sign(rng), 0.0)
    } else {
        (0.0, sign(rng))
    };
    let element = SpinElement::new(&a * ((s1 - s2) / 2.0), (s1 + s2) / 2.0);
    let model = TripleModel::Spin { n };
    Tripotent::new(
        TripleElement::from_spin(model, element).expect("dimension matches"),
        tol,
    )
    .expect("sign combinations of orthogonal projections are tripotents")
}
