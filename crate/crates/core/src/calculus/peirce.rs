use crate::error::{Error, Result};
use crate::kernel::{hermitian_eigendecomposition, RealMatrix, Subspace, ToleranceProfile};
use crate::models::{triple_product, TripleElement, TripleModel};

use super::Tripotent;

/// Splitting of the model into the eigenspaces of `L(u,u)` at `0`, `½`, `1`,
/// as real subspaces of the coordinate space.
#[derive(Debug, Clone)]
pub struct PeirceDecomposition {
    tripotent: Tripotent,
    spaces: [Subspace<f64>; 3],
    projectors: [RealMatrix; 3],
    spectrum_deviation: f64,
}

impl PeirceDecomposition {
    pub fn tripotent(&self) -> &Tripotent {
        &self.tripotent
    }

    /// `E_k(u)` for `k ∈ {0, 1, 2}`.
    pub fn space(&self, k: usize) -> &Subspace<f64> {
        &self.spaces[k]
    }

    pub fn projector(&self, k: usize) -> &RealMatrix {
        &self.projectors[k]
    }

    pub fn dim(&self, k: usize) -> usize {
        self.spaces[k].dim()
    }

    /// Largest distance of an eigenvalue of `L(u,u)` from `{0, ½, 1}`.
    pub fn spectrum_deviation(&self) -> f64 {
        self.spectrum_deviation
    }

    pub fn project(&self, k: usize, x: &TripleElement) -> Result<TripleElement> {
        self.check_model(x)?;
        self.tripotent
            .model()
            .from_coords(&(&self.projectors[k] * x.to_coords()))
    }

    pub fn contains(&self, k: usize, x: &TripleElement, tol: &ToleranceProfile) -> Result<bool> {
        Ok(self.project(k, x)?.distance(x) <= tol.eps_zero * (1.0 + x.frobenius_norm()))
    }

    /// Basis of `E_k(u)` as model elements.
    pub fn basis_elements(&self, k: usize) -> Vec<TripleElement> {
        let model = self.tripotent.model();
        self.spaces[k]
            .vectors()
            .into_iter()
            .map(|v| model.from_coords(&v).expect("basis vectors live in the model"))
            .collect()
    }

    fn check_model(&self, x: &TripleElement) -> Result<()> {
        if x.model() == self.tripotent.model() {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                left: self.tripotent.model().to_string(),
                right: x.model().to_string(),
            })
        }
    }
}

/// Peirce decomposition by eigen-clustering `L(u,u)` in real coordinates.
pub fn peirce(u: &Tripotent, tol: &ToleranceProfile) -> Result<PeirceDecomposition> {
    let model = u.model();
    let ue = u.element();
    let l = model.operator_matrix(|x| triple_product(ue, ue, x))?;
    let d = model.real_dim();
    let clusters = hermitian_eigendecomposition(&l, tol)?;

    let mut projectors = [RealMatrix::zeros(d, d), RealMatrix::zeros(d, d), RealMatrix::zeros(d, d)];
    let mut dims = [0usize; 3];
    let mut spectrum_deviation: f64 = 0.0;
    for cluster in &clusters {
        let k = (2.0 * cluster.value).round().clamp(0.0, 2.0) as usize;
        for &e in &cluster.eigenvalues {
            let dev = (e - k as f64 / 2.0).abs();
            if dev > tol.eps_eigen {
                return Err(Error::SpectrumOutOfRange {
                    eigenvalue: e,
                    radius: tol.eps_eigen,
                });
            }
            spectrum_deviation = spectrum_deviation.max(dev);
        }
        projectors[k] += cluster.space.projector();
        dims[k] += cluster.space.dim();
    }
    let spaces = [0, 1, 2].map(|k| Subspace::from_projector(&projectors[k], dims[k]));
    Ok(PeirceDecomposition {
        tripotent: u.clone(),
        spaces,
        projectors,
        spectrum_deviation,
    })
}

/// `E₀(u) = {0}`.
pub fn is_complete(u: &Tripotent, tol: &ToleranceProfile) -> Result<bool> {
    Ok(peirce(u, tol)?.dim(0) == 0)
}

/// The Jordan *-algebra `E(u)`: the Peirce-2 space of `u` with
/// `x ∘_u y = {x,u,y}` and `x^{*_u} = {u,x,u}`.
#[derive(Debug, Clone)]
pub struct HomotopeAlgebra {
    peirce: PeirceDecomposition,
}

impl HomotopeAlgebra {
    pub fn unit(&self) -> &Tripotent {
        self.peirce.tripotent()
    }

    pub fn carrier(&self) -> &Subspace<f64> {
        self.peirce.space(2)
    }

    pub fn peirce(&self) -> &PeirceDecomposition {
        &self.peirce
    }

    pub fn dim(&self) -> usize {
        self.peirce.dim(2)
    }

    pub fn basis_elements(&self) -> Vec<TripleElement> {
        self.peirce.basis_elements(2)
    }

    pub fn product(&self, x: &TripleElement, y: &TripleElement) -> Result<TripleElement> {
        triple_product(x, self.unit().element(), y)
    }

    pub fn involution(&self, x: &TripleElement) -> Result<TripleElement> {
        let u = self.unit().element();
        triple_product(u, x, u)
    }

    pub fn contains(&self, x: &TripleElement, tol: &ToleranceProfile) -> Result<bool> {
        self.peirce.contains(2, x, tol)
    }

    /// Orthogonal projection onto the carrier.
    pub fn project(&self, x: &TripleElement) -> Result<TripleElement> {
        self.peirce.project(2, x)
    }
}

/// Builds `E(u)` and certifies the unit law and that the involution is
/// involutive on a basis of the carrier.
pub fn homotope(u: &Tripotent, tol: &ToleranceProfile) -> Result<HomotopeAlgebra> {
    let algebra = HomotopeAlgebra {
        peirce: peirce(u, tol)?,
    };
    for b in algebra.basis_elements() {
        let unit_dev = algebra.product(u.element(), &b)?.distance(&b);
        if unit_dev > tol.certify() {
            return Err(Error::CertificationFailed {
                identity: "u ∘_u x = x".into(),
                deviation: unit_dev,
            });
        }
        let inv_dev = algebra.involution(&algebra.involution(&b)?)?.distance(&b);
        if inv_dev > tol.certify() {
            return Err(Error::CertificationFailed {
                identity: "(x^*)^* = x".into(),
                deviation: inv_dev,
            });
        }
    }
    Ok(algebra)
}

/// The map `x ↦ v*x` from `E(v)` onto `E(p_i(v))`, the latter taken inside
/// the square model `Rectangular(n, n)`.
#[derive(Debug, Clone)]
pub struct HomotopeTransport {
    source: Tripotent,
    target: Tripotent,
}

impl HomotopeTransport {
    pub fn source(&self) -> &Tripotent {
        &self.source
    }

    pub fn target(&self) -> &Tripotent {
        &self.target
    }

    pub fn apply(&self, x: &TripleElement) -> Result<TripleElement> {
        if x.model() != self.source.model() {
            return Err(Error::ModelMismatch {
                left: self.source.model().to_string(),
                right: x.model().to_string(),
            });
        }
        let v = self.source.matrix()?;
        TripleElement::from_matrix(self.target.model(), v.adjoint() * x.matrix()?)
    }

    /// `y ↦ vy`, the inverse on `E(p_i(v))`.
    pub fn apply_inverse(&self, y: &TripleElement) -> Result<TripleElement> {
        let v = self.source.matrix()?;
        let x = v * y.matrix()?;
        if !self.source.model().admits(&x, &ToleranceProfile::default()) {
            return Err(Error::NotAMember("v·y lies outside the source model".into()));
        }
        Ok(TripleElement::matrix_unchecked(self.source.model(), x))
    }

    /// Rank of the map restricted to `E(v)` compared with both Peirce-2
    /// dimensions, and containment of the image in `E(p_i(v))`.
    pub fn is_bijective(&self, tol: &ToleranceProfile) -> Result<bool> {
        let src = peirce(&self.source, tol)?;
        let dst = peirce(&self.target, tol)?;
        if src.dim(2) != dst.dim(2) {
            return Ok(false);
        }
        let images = src
            .basis_elements(2)
            .iter()
            .map(|b| self.apply(b))
            .collect::<Result<Vec<_>>>()?;
        for y in &images {
            if !dst.contains(2, y, tol)? {
                return Ok(false);
            }
        }
        if images.is_empty() {
            return Ok(true);
        }
        let cols: Vec<_> = images.iter().map(|y| y.to_coords()).collect();
        let m = RealMatrix::from_columns(&cols);
        let rank = crate::kernel::singular_value_decomposition(&m, tol).len();
        Ok(rank == src.dim(2))
    }
}

pub fn homotope_transport(v: &Tripotent) -> Result<HomotopeTransport> {
    let Some((_, n)) = v.model().matrix_shape() else {
        return Err(Error::UnsupportedModel(v.model().to_string()));
    };
    let target_model = TripleModel::square(n)?;
    let p = v.initial_projection().expect("matrix tripotent").clone();
    Ok(HomotopeTransport {
        source: v.clone(),
        target: Tripotent::trusted(TripleElement::matrix_unchecked(target_model, p)),
    })
}
