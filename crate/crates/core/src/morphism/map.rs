use num_complex::Complex64;
use rand::Rng;
use serde_json::{json, Value};

use crate::calculus::Tripotent;
use crate::error::{Error, Result};
use crate::kernel::{matrix_to_json, ComplexMatrix, RealMatrix, RealVector, ToleranceProfile, ONE};
use crate::models::{Payload, TripleElement, TripleModel};
use crate::random::{random_unitary, SampleRng};

/// Phase table `T` on ray classes `{λu : |λ| = 1}`: each entry is a class
/// representative with its phase. Unlisted classes get phase `1`.
#[derive(Debug, Clone)]
pub struct PhaseTwist {
    classes: Vec<(TripleElement, Complex64)>,
}

impl PhaseTwist {
    pub fn new(classes: Vec<(TripleElement, Complex64)>) -> Result<Self> {
        for (rep, phase) in &classes {
            if (phase.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::NotAMember(format!("phase {phase} does not have modulus one")));
            }
            if rep.frobenius_norm() == 0.0 {
                return Err(Error::NotAMember("the zero class has no phase".into()));
            }
        }
        Ok(Self { classes })
    }

    pub fn classes(&self) -> &[(TripleElement, Complex64)] {
        &self.classes
    }

    /// `T([u])`.
    pub fn phase_of(&self, u: &TripleElement, tol: &ToleranceProfile) -> Complex64 {
        for (rep, phase) in &self.classes {
            if let Some(lambda) = ray_coefficient(rep, u) {
                if (lambda.norm() - 1.0).abs() <= tol.certify()
                    && u.distance(&rep.scale_complex(lambda).unwrap_or_else(|_| rep.scale(lambda.re))) <= tol.eps_zero
                {
                    return *phase;
                }
            }
        }
        ONE
    }
}

/// `λ` minimising `‖u − λs‖`.
fn ray_coefficient(s: &TripleElement, u: &TripleElement) -> Option<Complex64> {
    if s.model() != u.model() {
        return None;
    }
    match (s.payload(), u.payload()) {
        (Payload::Matrix(a), Payload::Matrix(b)) => {
            let num = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum::<Complex64>();
            let den = a.norm_squared();
            Some(num / den)
        }
        (Payload::Spin(_), Payload::Spin(_)) => {
            let (a, b) = (s.to_coords(), u.to_coords());
            Some(Complex64::new(a.dot(&b) / a.norm_squared(), 0.0))
        }
        _ => None,
    }
}

/// Rules defining maps between tripotents of two models.
#[derive(Debug, Clone)]
pub enum MapRule {
    Identity,
    Transpose,
    /// `x ↦ x*`.
    Star,
    /// `x ↦ a x b`.
    TwoSided { left: ComplexMatrix, right: ComplexMatrix },
    /// `x ↦ a xᵗ b`.
    TwoSidedTranspose { left: ComplexMatrix, right: ComplexMatrix },
    /// `λS([u]) ↦ λT([u])S([u])`.
    PhaseTwist(PhaseTwist),
    /// Explicit finite table.
    Table(Vec<(TripleElement, TripleElement)>),
}

impl MapRule {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::Transpose => "transpose",
            Self::Star => "star",
            Self::TwoSided { .. } => "two-sided",
            Self::TwoSidedTranspose { .. } => "two-sided-transpose",
            Self::PhaseTwist(_) => "phase-twist",
            Self::Table(_) => "table",
        }
    }

    /// Whether the rule is defined on every element, not just on tripotents
    /// of a table.
    pub fn is_total(&self) -> bool {
        !matches!(self, Self::Table(_))
    }
}

/// The triple automorphism `x ↦ UxV` or `x ↦ UxᵗV` of `M_n` with Haar-like
/// random unitaries.
pub fn random_triple_automorphism(rng: &mut SampleRng, n: usize) -> MapRule {
    let left = random_unitary(rng, n);
    let right = random_unitary(rng, n);
    if rng.random_bool(0.5) {
        MapRule::TwoSidedTranspose { left, right }
    } else {
        MapRule::TwoSided { left, right }
    }
}

/// A map `U(E) → U(F)` given by a rule.
#[derive(Debug, Clone)]
pub struct TripotentMap {
    source: TripleModel,
    target: TripleModel,
    rule: MapRule,
}

fn flipped(model: TripleModel) -> TripleModel {
    match model {
        TripleModel::Rectangular { m, n } => TripleModel::Rectangular { m: n, n: m },
        other => other,
    }
}

impl TripotentMap {
    pub fn new(source: TripleModel, rule: MapRule) -> Result<Self> {
        let source = source.validated()?;
        let target = match &rule {
            MapRule::Identity | MapRule::PhaseTwist(_) => source,
            MapRule::Transpose | MapRule::Star => flipped(source),
            MapRule::TwoSided { left, right } | MapRule::TwoSidedTranspose { left, right } => {
                let Some((m, n)) = source.matrix_shape() else {
                    return Err(Error::UnsupportedModel(source.to_string()));
                };
                let (m, n) = if matches!(rule, MapRule::TwoSidedTranspose { .. }) { (n, m) } else { (m, n) };
                if left.ncols() != m || right.nrows() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "factors {}×{} and {}×{} around a {m}×{n} matrix",
                        left.nrows(),
                        left.ncols(),
                        right.nrows(),
                        right.ncols()
                    )));
                }
                TripleModel::rectangular(left.nrows(), right.ncols())?
            }
            MapRule::Table(entries) => entries.first().map_or(source, |(_, y)| y.model()),
        };
        if let MapRule::Table(entries) = &rule {
            if let Some((x, y)) = entries.iter().find(|(x, y)| x.model() != source || y.model() != target) {
                return Err(Error::ModelMismatch {
                    left: format!("{source} → {target}"),
                    right: format!("{} → {}", x.model(), y.model()),
                });
            }
        }
        Ok(Self { source, target, rule })
    }

    pub fn source(&self) -> TripleModel {
        self.source
    }

    pub fn target(&self) -> TripleModel {
        self.target
    }

    pub fn rule(&self) -> &MapRule {
        &self.rule
    }

    /// The rule applied to an arbitrary element; phase twists and tables
    /// need tripotents and use the tolerance to identify them.
    pub fn apply_element(&self, x: &TripleElement, tol: &ToleranceProfile) -> Result<TripleElement> {
        if x.model() != self.source {
            return Err(Error::ModelMismatch {
                left: self.source.to_string(),
                right: x.model().to_string(),
            });
        }
        let matrix = |f: &dyn Fn(&ComplexMatrix) -> ComplexMatrix| -> Result<TripleElement> {
            match x.payload() {
                Payload::Matrix(m) => TripleElement::from_matrix_with(self.target, f(m), tol),
                Payload::Spin(_) => Ok(x.clone()),
            }
        };
        match &self.rule {
            MapRule::Identity => Ok(x.clone()),
            MapRule::Transpose => matrix(&|m| m.transpose()),
            MapRule::Star => matrix(&|m| m.adjoint()),
            MapRule::TwoSided { left, right } => matrix(&|m| left * m * right),
            MapRule::TwoSidedTranspose { left, right } => matrix(&|m| left * m.transpose() * right),
            MapRule::PhaseTwist(t) => {
                let phase = t.phase_of(x, tol);
                match x.payload() {
                    Payload::Matrix(_) => x.scale_complex(phase),
                    Payload::Spin(_) => Ok(x.scale(phase.re)),
                }
            }
            MapRule::Table(entries) => {
                if x.is_zero(tol) {
                    return Ok(self.target.zero());
                }
                entries
                    .iter()
                    .find(|(k, _)| k.distance(x) < tol.eps_zero)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| Error::OutOfTable(format!("no table entry for {}", x.to_json())))
            }
        }
    }

    /// `φ(u)`, certified to be a tripotent.
    pub fn apply(&self, u: &Tripotent, tol: &ToleranceProfile) -> Result<Tripotent> {
        let image = self.apply_element(u.element(), tol)?;
        Tripotent::new(image, tol)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "source": self.source,
            "target": self.target,
            "rule": self.rule.name(),
        });
        match &self.rule {
            MapRule::TwoSided { left, right } | MapRule::TwoSidedTranspose { left, right } => {
                v["left"] = matrix_to_json(left);
                v["right"] = matrix_to_json(right);
            }
            MapRule::PhaseTwist(t) => {
                v["classes"] = t
                    .classes
                    .iter()
                    .map(|(rep, phase)| json!({"representative": rep.to_json(), "phase": [phase.re, phase.im]}))
                    .collect();
            }
            MapRule::Table(entries) => {
                v["table"] = entries
                    .iter()
                    .map(|(x, y)| json!({"from": x.to_json(), "to": y.to_json()}))
                    .collect();
            }
            _ => {}
        }
        v
    }
}

/// Real- or complex-linear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Linearity {
    Real,
    Complex,
}

/// A linear map between models stored as a real matrix in model
/// coordinates.
#[derive(Debug, Clone)]
pub struct LinearExtension {
    source: TripleModel,
    target: TripleModel,
    matrix: RealMatrix,
    kind: Linearity,
}

impl LinearExtension {
    pub fn from_matrix(source: TripleModel, target: TripleModel, matrix: RealMatrix, kind: Linearity) -> Result<Self> {
        if matrix.shape() != (target.real_dim(), source.real_dim()) {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} matrix for a map {source} → {target}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self {
            source,
            target,
            matrix,
            kind,
        })
    }

    /// Tabulates a real-linear `f` on the coordinate basis.
    pub fn from_fn<F>(source: TripleModel, target: TripleModel, kind: Linearity, mut f: F) -> Result<Self>
    where
        F: FnMut(&TripleElement) -> Result<TripleElement>,
    {
        let d = source.real_dim();
        let mut matrix = RealMatrix::zeros(target.real_dim(), d);
        for k in 0..d {
            let mut e = RealVector::zeros(d);
            e[k] = 1.0;
            let image = f(&source.from_coords(&e)?)?;
            if image.model() != target {
                return Err(Error::ModelMismatch {
                    left: target.to_string(),
                    right: image.model().to_string(),
                });
            }
            matrix.set_column(k, &image.to_coords());
        }
        Ok(Self {
            source,
            target,
            matrix,
            kind,
        })
    }

    pub fn source(&self) -> TripleModel {
        self.source
    }

    pub fn target(&self) -> TripleModel {
        self.target
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> Linearity {
        self.kind
    }

    pub fn apply(&self, x: &TripleElement) -> Result<TripleElement> {
        if x.model() != self.source {
            return Err(Error::ModelMismatch {
                left: self.source.to_string(),
                right: x.model().to_string(),
            });
        }
        self.target.from_coords(&(&self.matrix * x.to_coords()))
    }

    /// The same map precomposed with a real-linear operator on the source.
    pub fn precompose(&self, op: &RealMatrix) -> Self {
        Self {
            matrix: &self.matrix * op,
            ..self.clone()
        }
    }

    /// Largest `‖self(e_k) − f(e_k)‖` over coordinate basis vectors.
    pub fn distance_to<F>(&self, mut f: F) -> Result<f64>
    where
        F: FnMut(&TripleElement) -> Result<TripleElement>,
    {
        let d = self.source.real_dim();
        let mut worst: f64 = 0.0;
        for k in 0..d {
            let mut e = RealVector::zeros(d);
            e[k] = 1.0;
            let x = self.source.from_coords(&e)?;
            worst = worst.max(self.apply(&x)?.distance(&f(&x)?));
        }
        Ok(worst)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source,
            "target": self.target,
            "linearity": self.kind,
            "rows": self.matrix.nrows(),
            "cols": self.matrix.ncols(),
            "entries": self.matrix.transpose().iter().copied().collect::<Vec<f64>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{c, unit};

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn m3() -> TripleModel {
        TripleModel::square(3).unwrap()
    }

    #[test]
    fn phase_twist_identifies_rays() {
        let e11 = TripleElement::from_matrix(m3(), unit(3, 3, 0, 0)).unwrap();
        let t = PhaseTwist::new(vec![(e11.clone(), c(-1.0, 0.0))]).unwrap();
        let rotated = e11.scale_complex(c(0.0, 1.0)).unwrap();
        assert_eq!(t.phase_of(&rotated, &tol()), c(-1.0, 0.0));
        let e22 = TripleElement::from_matrix(m3(), unit(3, 3, 1, 1)).unwrap();
        assert_eq!(t.phase_of(&e22, &tol()), ONE);
    }

    #[test]
    fn non_unit_phase_is_rejected() {
        let e11 = TripleElement::from_matrix(m3(), unit(3, 3, 0, 0)).unwrap();
        assert!(PhaseTwist::new(vec![(e11, c(2.0, 0.0))]).is_err());
    }

    #[test]
    fn transpose_of_rectangular_flips_shape() {
        let r23 = TripleModel::rectangular(2, 3).unwrap();
        let map = TripotentMap::new(r23, MapRule::Transpose).unwrap();
        assert_eq!(map.target(), TripleModel::rectangular(3, 2).unwrap());
        let x = TripleElement::from_matrix(r23, unit(2, 3, 0, 2)).unwrap();
        let y = map.apply_element(&x, &tol()).unwrap();
        assert_eq!(y.matrix().unwrap()[(2, 0)], ONE);
    }

    #[test]
    fn table_lookup_reports_missing_entries() {
        let e11 = TripleElement::from_matrix(m3(), unit(3, 3, 0, 0)).unwrap();
        let e22 = TripleElement::from_matrix(m3(), unit(3, 3, 1, 1)).unwrap();
        let map = TripotentMap::new(m3(), MapRule::Table(vec![(e11.clone(), e22.clone())])).unwrap();
        assert!(map.apply_element(&e11, &tol()).unwrap().approx_eq(&e22, &tol()));
        assert!(matches!(map.apply_element(&e22, &tol()), Err(Error::OutOfTable(_))));
    }

    #[test]
    fn linear_extension_round_trips_coordinates() {
        let map = TripotentMap::new(m3(), MapRule::Transpose).unwrap();
        let ext = LinearExtension::from_fn(m3(), m3(), Linearity::Complex, |x| map.apply_element(x, &tol())).unwrap();
        let d = ext.distance_to(|x| TripleElement::from_matrix(m3(), x.matrix()?.transpose())).unwrap();
        assert_eq!(d, 0.0);
    }
}
