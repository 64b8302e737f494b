//! Concrete finite-dimensional Jordan triple systems.
//!
//! Three families are supported:
//!
//! * `Rectangular { m, n }`: complex `m × n` matrices with
//!   `{x,y,z} = ½(xy*z + zy*x)`;
//! * `Antisymmetric { n }`: complex `n × n` matrices with `Xᵗ = −X`, same
//!   product;
//! * `Spin { n }`: the real spin factor `ℝⁿ ⊕ ℝ` with Jordan product
//!   `(a⊕λ)∘(b⊕μ) = (μa+λb) ⊕ (⟨a,b⟩+λμ)` and the triple product induced by
//!   the Jordan product and the identity involution.
//!
//! Every element also has real coordinates, so linear operators on a model
//! (for example `L(u,u)`) can be materialised as real matrices.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{
    c, identity, matrix_from_json, matrix_to_json, ComplexMatrix, RealMatrix, RealVector,
    ToleranceProfile,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TripleModel {
    Rectangular { m: usize, n: usize },
    Antisymmetric { n: usize },
    Spin { n: usize },
}

impl TripleModel {
    pub fn rectangular(m: usize, n: usize) -> Result<Self> {
        Self::Rectangular { m, n }.validated()
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::rectangular(n, n)
    }

    pub fn antisymmetric(n: usize) -> Result<Self> {
        Self::Antisymmetric { n }.validated()
    }

    pub fn spin(n: usize) -> Result<Self> {
        Self::Spin { n }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            Self::Rectangular { m, n } => m >= 1 && n >= 1,
            Self::Antisymmetric { n } => n >= 2,
            Self::Spin { n } => n >= 1,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidModel(self.to_string()))
        }
    }

    /// Dimension of the model as a real vector space.
    pub fn real_dim(&self) -> usize {
        match *self {
            Self::Rectangular { m, n } => 2 * m * n,
            Self::Antisymmetric { n } => n * (n - 1),
            Self::Spin { n } => n + 1,
        }
    }

    pub fn is_matrix(&self) -> bool {
        !matches!(self, Self::Spin { .. })
    }

    /// Shape of matrix payloads, `None` for spin factors.
    pub fn matrix_shape(&self) -> Option<(usize, usize)> {
        match *self {
            Self::Rectangular { m, n } => Some((m, n)),
            Self::Antisymmetric { n } => Some((n, n)),
            Self::Spin { .. } => None,
        }
    }

    pub fn zero(&self) -> TripleElement {
        match *self {
            Self::Spin { n } => TripleElement {
                model: *self,
                payload: Payload::Spin(SpinElement::zero(n)),
            },
            _ => {
                let (r, k) = self.matrix_shape().expect("matrix model");
                TripleElement {
                    model: *self,
                    payload: Payload::Matrix(ComplexMatrix::zeros(r, k)),
                }
            }
        }
    }

    /// Element with the given real coordinates.
    pub fn from_coords(&self, v: &RealVector) -> Result<TripleElement> {
        if v.len() != self.real_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for {} (real dimension {})",
                v.len(),
                self,
                self.real_dim()
            )));
        }
        let payload = match *self {
            Self::Rectangular { m, n } => Payload::Matrix(ComplexMatrix::from_fn(m, n, |i, j| {
                let k = 2 * (i * n + j);
                c(v[k], v[k + 1])
            })),
            Self::Antisymmetric { n } => {
                let mut x = ComplexMatrix::zeros(n, n);
                let mut k = 0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let z = c(v[k], v[k + 1]);
                        x[(i, j)] = z;
                        x[(j, i)] = -z;
                        k += 2;
                    }
                }
                Payload::Matrix(x)
            }
            Self::Spin { n } => Payload::Spin(SpinElement {
                a: DVector::from_iterator(n, v.iter().take(n).copied()),
                lambda: v[n],
            }),
        };
        Ok(TripleElement {
            model: *self,
            payload,
        })
    }

    /// Real matrix of a real-linear map `f` on this model, column `k` being
    /// the coordinates of `f(e_k)`.
    pub fn operator_matrix<F>(&self, mut f: F) -> Result<RealMatrix>
    where
        F: FnMut(&TripleElement) -> Result<TripleElement>,
    {
        let d = self.real_dim();
        let mut out = RealMatrix::zeros(d, d);
        for k in 0..d {
            let mut e = RealVector::zeros(d);
            e[k] = 1.0;
            let image = f(&self.from_coords(&e)?)?;
            if image.model != *self {
                return Err(Error::ModelMismatch {
                    left: self.to_string(),
                    right: image.model.to_string(),
                });
            }
            out.set_column(k, &image.to_coords());
        }
        Ok(out)
    }

    /// Checks that a matrix payload belongs to this model.
    pub fn admits(&self, x: &ComplexMatrix, tol: &ToleranceProfile) -> bool {
        match self.matrix_shape() {
            Some(shape) if x.shape() == shape => match self {
                Self::Antisymmetric { .. } => {
                    (x + x.transpose()).norm() <= tol.eps_zero * (1.0 + x.norm())
                }
                _ => true,
            },
            _ => false,
        }
    }

    /// Parses the builtin short names `m2`, `m3`, `m4`, `r23`, `a3`, `a5`,
    /// `spin3`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "m2" => Some(Self::Rectangular { m: 2, n: 2 }),
            "m3" => Some(Self::Rectangular { m: 3, n: 3 }),
            "m4" => Some(Self::Rectangular { m: 4, n: 4 }),
            "r23" => Some(Self::Rectangular { m: 2, n: 3 }),
            "a3" => Some(Self::Antisymmetric { n: 3 }),
            "a5" => Some(Self::Antisymmetric { n: 5 }),
            "spin3" => Some(Self::Spin { n: 3 }),
            _ => None,
        }
    }
}

impl std::fmt::Display for TripleModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Rectangular { m, n } => write!(f, "Rectangular({m},{n})"),
            Self::Antisymmetric { n } => write!(f, "Antisymmetric({n})"),
            Self::Spin { n } => write!(f, "Spin({n})"),
        }
    }
}

/// Element `a ⊕ λ` of the spin factor `ℝⁿ ⊕ ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinElement {
    pub a: RealVector,
    pub lambda: f64,
}

impl SpinElement {
    pub fn new(a: RealVector, lambda: f64) -> Self {
        Self { a, lambda }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(RealVector::zeros(n), 0.0)
    }

    /// The Jordan unit `0 ⊕ 1`.
    pub fn unit(n: usize) -> Self {
        Self::new(RealVector::zeros(n), 1.0)
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// `‖a‖ + |λ|`.
    pub fn norm(&self) -> f64 {
        self.a.norm() + self.lambda.abs()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "spin elements of dimensions {} and {}",
                self.dim(),
                other.dim()
            )))
        }
    }

    pub fn jordan_product(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.jordan_unchecked(other))
    }

    fn jordan_unchecked(&self, other: &Self) -> Self {
        Self {
            a: &self.a * other.lambda + &other.a * self.lambda,
            lambda: self.a.dot(&other.a) + self.lambda * other.lambda,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.a + &other.a, self.lambda + other.lambda)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.a - &other.a, self.lambda - other.lambda)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(&self.a * s, self.lambda * s)
    }

    /// `U_a(x) = 2a∘(a∘x) − a²∘x`.
    pub fn quadratic_operator(&self, x: &Self) -> Result<Self> {
        self.check_dim(x)?;
        let ax = self.jordan_unchecked(x);
        let a2 = self.jordan_unchecked(self);
        Ok(self
            .jordan_unchecked(&ax)
            .scale(2.0)
            .sub(&a2.jordan_unchecked(x)))
    }

    /// `{a,b,c} = a∘(b∘c) + c∘(a∘b) − b∘(a∘c)`.
    pub fn triple_product(&self, b: &Self, c: &Self) -> Result<Self> {
        self.check_dim(b)?;
        self.check_dim(c)?;
        let t1 = self.jordan_unchecked(&b.jordan_unchecked(c));
        let t2 = c.jordan_unchecked(&self.jordan_unchecked(b));
        let t3 = b.jordan_unchecked(&self.jordan_unchecked(c));
        Ok(t1.add(&t2).sub(&t3))
    }

    fn coords(&self) -> RealVector {
        let mut v = RealVector::zeros(self.dim() + 1);
        v.rows_mut(0, self.dim()).copy_from(&self.a);
        v[self.dim()] = self.lambda;
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Matrix(ComplexMatrix),
    Spin(SpinElement),
}

/// An element of a [`TripleModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct TripleElement {
    model: TripleModel,
    payload: Payload,
}

impl TripleElement {
    /// Matrix element; rejects shape mismatches and, for antisymmetric
    /// models, payloads with `‖Xᵗ + X‖ > eps_zero`.
    pub fn from_matrix(model: TripleModel, x: ComplexMatrix) -> Result<Self> {
        Self::from_matrix_with(model, x, &ToleranceProfile::default())
    }

    pub fn from_matrix_with(
        model: TripleModel,
        x: ComplexMatrix,
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        let Some(shape) = model.matrix_shape() else {
            return Err(Error::UnsupportedModel(model.to_string()));
        };
        if x.shape() != shape {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} payload for {model}",
                x.nrows(),
                x.ncols()
            )));
        }
        if !crate::kernel::is_finite(&x) {
            return Err(Error::NotAMember("non-finite entry".into()));
        }
        if !model.admits(&x, tol) {
            return Err(Error::NotAMember(format!(
                "‖Xᵗ + X‖ = {:e} in {model}",
                (&x + x.transpose()).norm()
            )));
        }
        Ok(Self {
            model,
            payload: Payload::Matrix(x),
        })
    }

    pub fn from_spin(model: TripleModel, s: SpinElement) -> Result<Self> {
        match model {
            TripleModel::Spin { n } if n == s.dim() => Ok(Self {
                model,
                payload: Payload::Spin(s),
            }),
            TripleModel::Spin { n } => Err(Error::DimensionMismatch(format!(
                "spin element of dimension {} for Spin({n})",
                s.dim()
            ))),
            _ => Err(Error::ModelMismatch {
                left: model.to_string(),
                right: format!("Spin({})", s.dim()),
            }),
        }
    }

    /// Results of closed operations; skips the membership check.
    pub(crate) fn matrix_unchecked(model: TripleModel, x: ComplexMatrix) -> Self {
        Self {
            model,
            payload: Payload::Matrix(x),
        }
    }

    pub fn model(&self) -> TripleModel {
        self.model
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn matrix(&self) -> Result<&ComplexMatrix> {
        match &self.payload {
            Payload::Matrix(x) => Ok(x),
            Payload::Spin(_) => Err(Error::UnsupportedModel(self.model.to_string())),
        }
    }

    pub fn spin(&self) -> Option<&SpinElement> {
        match &self.payload {
            Payload::Spin(s) => Some(s),
            Payload::Matrix(_) => None,
        }
    }

    pub fn to_coords(&self) -> RealVector {
        match (&self.payload, self.model) {
            (Payload::Matrix(x), TripleModel::Antisymmetric { n }) => {
                let mut v = RealVector::zeros(n * (n - 1));
                let mut k = 0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        v[k] = x[(i, j)].re;
                        v[k + 1] = x[(i, j)].im;
                        k += 2;
                    }
                }
                v
            }
            (Payload::Matrix(x), _) => {
                let (m, n) = x.shape();
                let mut v = RealVector::zeros(2 * m * n);
                for i in 0..m {
                    for j in 0..n {
                        let k = 2 * (i * n + j);
                        v[k] = x[(i, j)].re;
                        v[k + 1] = x[(i, j)].im;
                    }
                }
                v
            }
            (Payload::Spin(s), _) => s.coords(),
        }
    }

    fn same_model(&self, other: &Self) -> Result<()> {
        if self.model == other.model {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                left: self.model.to_string(),
                right: other.model.to_string(),
            })
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.same_model(other)?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Matrix(x), Payload::Matrix(y)) => {
                Payload::Matrix(x.zip_map(y, |a, b| c(f(a.re, b.re), f(a.im, b.im))))
            }
            (Payload::Spin(x), Payload::Spin(y)) => Payload::Spin(SpinElement {
                a: x.a.zip_map(&y.a, &f),
                lambda: f(x.lambda, y.lambda),
            }),
            _ => unreachable!("payload kind is fixed by the model"),
        };
        Ok(Self {
            model: self.model,
            payload,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        let payload = match &self.payload {
            Payload::Matrix(x) => Payload::Matrix(x * c(s, 0.0)),
            Payload::Spin(x) => Payload::Spin(x.scale(s)),
        };
        Self {
            model: self.model,
            payload,
        }
    }

    /// Multiplication by a complex scalar; spin factors are real and reject
    /// non-real scalars.
    pub fn scale_complex(&self, s: Complex64) -> Result<Self> {
        match &self.payload {
            Payload::Matrix(x) => Ok(Self::matrix_unchecked(self.model, x * s)),
            Payload::Spin(_) if s.im == 0.0 => Ok(self.scale(s.re)),
            Payload::Spin(_) => Err(Error::UnsupportedModel(format!(
                "complex scalar on {}",
                self.model
            ))),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    /// Frobenius norm of the payload; Euclidean norm of `(a, λ)` for spin.
    pub fn frobenius_norm(&self) -> f64 {
        match &self.payload {
            Payload::Matrix(x) => x.norm(),
            Payload::Spin(s) => s.coords().norm(),
        }
    }

    /// Frobenius distance; `∞` across models.
    pub fn distance(&self, other: &Self) -> f64 {
        match self.sub(other) {
            Ok(d) => d.frobenius_norm(),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: &ToleranceProfile) -> bool {
        self.distance(other) <= tol.eps_zero
    }

    pub fn is_zero(&self, tol: &ToleranceProfile) -> bool {
        self.frobenius_norm() <= tol.eps_zero
    }

    pub fn to_json(&self) -> Value {
        let payload = match &self.payload {
            Payload::Matrix(x) => matrix_to_json(x),
            Payload::Spin(s) => json!({"a": s.a.as_slice(), "lambda": s.lambda}),
        };
        json!({"model": self.model, "payload": payload})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let model: TripleModel = serde_json::from_value(
            value
                .get("model")
                .cloned()
                .ok_or_else(|| Error::Parse("missing field `model`".into()))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        let model = model.validated()?;
        let payload = value
            .get("payload")
            .ok_or_else(|| Error::Parse("missing field `payload`".into()))?;
        match model {
            TripleModel::Spin { .. } => {
                #[derive(Deserialize)]
                struct Raw {
                    a: Vec<f64>,
                    lambda: f64,
                }
                let raw: Raw =
                    serde_json::from_value(payload.clone()).map_err(|e| Error::Parse(e.to_string()))?;
                Self::from_spin(model, SpinElement::new(RealVector::from_vec(raw.a), raw.lambda))
            }
            _ => Self::from_matrix(model, matrix_from_json(payload)?),
        }
    }
}

/// `{x,y,z}`: `½(xy*z + zy*x)` on matrix models, the Jordan-induced product
/// on spin factors.
pub fn triple_product(x: &TripleElement, y: &TripleElement, z: &TripleElement) -> Result<TripleElement> {
    x.same_model(y)?;
    x.same_model(z)?;
    match (&x.payload, &y.payload, &z.payload) {
        (Payload::Matrix(a), Payload::Matrix(b), Payload::Matrix(cc)) => {
            let bs = b.adjoint();
            let p = (a * &bs * cc + cc * &bs * a) * c(0.5, 0.0);
            Ok(TripleElement::matrix_unchecked(x.model, p))
        }
        (Payload::Spin(a), Payload::Spin(b), Payload::Spin(cc)) => Ok(TripleElement {
            model: x.model,
            payload: Payload::Spin(a.triple_product(b, cc)?),
        }),
        _ => unreachable!("payload kind is fixed by the model"),
    }
}

/// `U_a(x) = {a,x,a}`.
pub fn quadratic_operator(a: &TripleElement, x: &TripleElement) -> Result<TripleElement> {
    a.same_model(x)?;
    match (&a.payload, &x.payload) {
        (Payload::Spin(s), Payload::Spin(t)) => Ok(TripleElement {
            model: a.model,
            payload: Payload::Spin(s.quadratic_operator(t)?),
        }),
        _ => triple_product(a, x, a),
    }
}

/// `true` iff the payload satisfies the model constraint.
pub fn membership_check(e: &TripleElement) -> bool {
    match &e.payload {
        Payload::Matrix(x) => {
            crate::kernel::is_finite(x) && e.model.admits(x, &ToleranceProfile::default())
        }
        Payload::Spin(s) => {
            matches!(e.model, TripleModel::Spin { n } if n == s.dim())
                && s.a.iter().all(|v| v.is_finite())
                && s.lambda.is_finite()
        }
    }
}

/// Jordan product `½(xy + yx)` of square matrices.
pub fn matrix_jordan_product(x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    (x * y + y * x) * c(0.5, 0.0)
}

/// Triple product of square matrices computed through the Jordan product:
/// `a∘(b*∘c) + c∘(a∘b*) − b*∘(a∘c)`.
pub fn jordan_triple_product(a: &ComplexMatrix, b: &ComplexMatrix, cc: &ComplexMatrix) -> ComplexMatrix {
    let bs = b.adjoint();
    matrix_jordan_product(a, &matrix_jordan_product(&bs, cc))
        + matrix_jordan_product(cc, &matrix_jordan_product(a, &bs))
        - matrix_jordan_product(&bs, &matrix_jordan_product(a, cc))
}

/// Identity of a square matrix model.
pub fn identity_element(model: TripleModel) -> Result<TripleElement> {
    match model {
        TripleModel::Rectangular { m, n } if m == n => {
            Ok(TripleElement::matrix_unchecked(model, identity(n)))
        }
        TripleModel::Spin { n } => TripleElement::from_spin(model, SpinElement::unit(n)),
        _ => Err(Error::UnsupportedModel(format!("{model} has no unit"))),
    }
}
