use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{
    is_projection, matrix_to_json, pseudo_inverse, singular_value_decomposition, ComplexMatrix, RealMatrix,
    ToleranceProfile, I,
};
use crate::models::{matrix_jordan_product, TripleElement, TripleModel};
use crate::random::{gaussian_matrix, stream_rng};
use crate::report::Report;

use super::{canonical_frame, hermitian_coords, regular_gate, LinearExtension, Linearity};

const CERTIFICATION_SEED: u64 = 0x0d1e;
const CERTIFICATION_SAMPLES: usize = 8;

/// How a [`ProjectionMap`] table was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleTag {
    Identity,
    Transpose,
    ConjugationByUnitary,
    ExplicitTable,
}

/// A finite table of projections of `M_n` with projection values in `M_k`.
#[derive(Debug, Clone)]
pub struct ProjectionMap {
    source: TripleModel,
    target: TripleModel,
    rule: RuleTag,
    table: Vec<(ComplexMatrix, ComplexMatrix)>,
}

fn square_size(model: TripleModel) -> Result<usize> {
    match model {
        TripleModel::Rectangular { m, n } if m == n => Ok(n),
        other => Err(Error::UnsupportedModel(format!("{other} is not a square matrix model"))),
    }
}

impl ProjectionMap {
    /// A table on projections of `source`; every key and value must be a
    /// projection and `0 ↦ 0`.
    pub fn from_table(
        source: TripleModel,
        target: TripleModel,
        table: Vec<(ComplexMatrix, ComplexMatrix)>,
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        let (n, k) = (square_size(source)?, square_size(target)?);
        for (i, (p, q)) in table.iter().enumerate() {
            if p.shape() != (n, n) || q.shape() != (k, k) {
                return Err(Error::DimensionMismatch(format!("table entry {i} has the wrong shape")));
            }
            if !is_projection(p, tol) || !is_projection(q, tol) {
                return Err(Error::NotAMember(format!("table entry {i} is not a pair of projections")));
            }
            if p.norm() <= tol.eps_zero && q.norm() > tol.eps_zero {
                return Err(Error::NotAMorphism("φ(0) ≠ 0".into()));
            }
        }
        Ok(Self {
            source,
            target,
            rule: RuleTag::ExplicitTable,
            table,
        })
    }

    fn tabulate(n: usize, rule: RuleTag, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        let model = TripleModel::square(n)?;
        let table = canonical_frame(n).into_iter().map(|p| {
            let q = f(&p);
            (p, q)
        })
        .collect();
        Ok(Self {
            source: model,
            target: model,
            rule,
            table,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::tabulate(n, RuleTag::Identity, |p| p.clone())
    }

    pub fn transpose(n: usize) -> Result<Self> {
        Self::tabulate(n, RuleTag::Transpose, |p| p.transpose())
    }

    /// `p ↦ upu*` for a unitary `u`.
    pub fn conjugation(u: &ComplexMatrix, tol: &ToleranceProfile) -> Result<Self> {
        let n = u.nrows();
        let deviation = (u.adjoint() * u - ComplexMatrix::identity(n, n)).norm();
        if u.ncols() != n || deviation > tol.eps_zero {
            return Err(Error::NotAMember(format!("conjugating matrix is not unitary (deviation {deviation:e})")));
        }
        Self::tabulate(n, RuleTag::ConjugationByUnitary, |p| u * p * u.adjoint())
    }

    pub fn source(&self) -> TripleModel {
        self.source
    }

    pub fn target(&self) -> TripleModel {
        self.target
    }

    pub fn rule(&self) -> RuleTag {
        self.rule
    }

    pub fn table(&self) -> &[(ComplexMatrix, ComplexMatrix)] {
        &self.table
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source,
            "target": self.target,
            "rule": self.rule,
            "table": self.table.iter().map(|(p, q)| json!({"from": matrix_to_json(p), "to": matrix_to_json(q)})).collect::<Vec<_>>(),
        })
    }
}

/// A Dye extension with its certification.
#[derive(Debug, Clone)]
pub struct DyeExtension {
    pub extension: LinearExtension,
    pub certification: Report,
}

fn precheck(phi: &ProjectionMap, tol: &ToleranceProfile) -> Result<()> {
    let t = phi.table();
    let find = |m: &ComplexMatrix| t.iter().position(|(p, _)| (p - m).norm() <= tol.eps_zero);
    for (a, (pa, qa)) in t.iter().enumerate() {
        for (b, (pb, qb)) in t.iter().enumerate().skip(a + 1) {
            if (pa * pb).norm() > tol.eps_zero {
                continue;
            }
            if (qa * qb).norm() > tol.certify() {
                return Err(Error::NotAMorphism(format!(
                    "entries {a} and {b} are orthogonal but their images are not"
                )));
            }
            if let Some(s) = find(&(pa + pb)) {
                let deviation = (&t[s].1 - qa - qb).norm();
                if deviation > tol.certify() {
                    return Err(Error::NotAMorphism(format!(
                        "φ(p{a} ∨ p{b}) differs from φ(p{a}) ∨ φ(p{b}) by {deviation:e}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Extends a projection table on `M_n` (`n ≠ 2`) to the complex-linear map
/// that agrees with it, and certifies the Jordan `*`-homomorphism identities
/// on the table and on seeded random samples.
pub fn dye_extend(phi: &ProjectionMap, tol: &ToleranceProfile) -> Result<DyeExtension> {
    let n = square_size(phi.source())?;
    square_size(phi.target())?;
    regular_gate(n, &format!("M_{n}"))?;
    precheck(phi, tol)?;

    let dim = n * n;
    let keys: Vec<_> = phi.table().iter().map(|(p, _)| hermitian_coords(p)).collect();
    let p = RealMatrix::from_columns(&keys);
    let rank = singular_value_decomposition(&p, tol).len();
    if rank < dim {
        return Err(Error::SpanDeficient { rank, needed: dim });
    }
    let values: Vec<_> = phi
        .table()
        .iter()
        .map(|(_, q)| TripleElement::matrix_unchecked(phi.target(), q.clone()).to_coords())
        .collect();
    let q = RealMatrix::from_columns(&values);
    let p_inv = pseudo_inverse(&p, tol);
    let relations = RealMatrix::identity(p.ncols(), p.ncols()) - &p_inv * &p;
    let ill_defined = (&q * &relations).norm();
    let scale = 1.0 + q.norm();
    if ill_defined > tol.certify() * scale {
        return Err(Error::CertificationFailed {
            identity: "well-definedness on linear relations among tabulated projections".into(),
            deviation: ill_defined,
        });
    }
    // Hermitian coordinates to target coordinates.
    let on_hermitian = &q * p_inv;
    let target = phi.target();
    let apply_hermitian = |h: &ComplexMatrix| -> ComplexMatrix {
        let coords = &on_hermitian * hermitian_coords(h);
        target.from_coords(&coords).expect("target coordinates").matrix().expect("matrix model").clone()
    };
    let extension = LinearExtension::from_fn(phi.source(), target, Linearity::Complex, |x| {
        let m = x.matrix()?;
        let re = (m + m.adjoint()) * crate::kernel::c(0.5, 0.0);
        let im = (m - m.adjoint()) * crate::kernel::c(0.0, -0.5);
        let image = apply_hermitian(&re) + apply_hermitian(&im) * I;
        Ok(TripleElement::matrix_unchecked(target, image))
    })?;

    let certification = certify_jordan(&extension, phi, n, tol)?;
    if !certification.is_pass() {
        return Err(Error::CertificationFailed {
            identity: certification.witnesses.first().cloned().unwrap_or_default(),
            deviation: certification.max_deviation,
        });
    }
    Ok(DyeExtension {
        extension,
        certification,
    })
}

fn apply_matrix(ext: &LinearExtension, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = TripleElement::matrix_unchecked(ext.source(), x.clone());
    Ok(ext.apply(&e)?.matrix()?.clone())
}

/// `J(x∘y) = J(x)∘J(y)` and `J(x*) = J(x)*` on seeded samples, and
/// agreement with the table.
fn certify_jordan(
    ext: &LinearExtension,
    phi: &ProjectionMap,
    n: usize,
    tol: &ToleranceProfile,
) -> Result<Report> {
    let mut r = Report::new("jordan-*-homomorphism");
    let bound = tol.certify();
    for (i, (p, q)) in phi.table().iter().enumerate() {
        let d = (apply_matrix(ext, p)? - q).norm();
        r.bound(d, bound, || format!("J(p{i}) differs from the tabulated value by {d:e}"));
    }
    let mut rng = stream_rng(CERTIFICATION_SEED, n as u64);
    for s in 0..CERTIFICATION_SAMPLES {
        let x = gaussian_matrix(&mut rng, n, n);
        let y = gaussian_matrix(&mut rng, n, n);
        let (jx, jy) = (apply_matrix(ext, &x)?, apply_matrix(ext, &y)?);
        let scale = 1.0 + x.norm() * y.norm();
        let jordan = (apply_matrix(ext, &matrix_jordan_product(&x, &y))? - matrix_jordan_product(&jx, &jy)).norm();
        r.bound(jordan / scale, bound, || format!("J(x∘y) ≠ J(x)∘J(y) on sample {s}: {jordan:e}"));
        let star = (apply_matrix(ext, &x.adjoint())? - jx.adjoint()).norm();
        r.bound(star / (1.0 + x.norm()), bound, || format!("J(x*) ≠ J(x)* on sample {s}: {star:e}"));
    }
    Ok(r)
}

/// For a table that is bijective, checks that the extension is invertible
/// and that its inverse is again a Jordan `*`-homomorphism.
pub fn dye_injective_check(phi: &ProjectionMap, ext: &LinearExtension, tol: &ToleranceProfile) -> Report {
    let mut r = Report::new("dye-injective");
    let t = phi.table();
    for a in 0..t.len() {
        for b in (a + 1)..t.len() {
            if (&t[a].1 - &t[b].1).norm() <= tol.eps_zero && (&t[a].0 - &t[b].0).norm() > tol.eps_zero {
                r.fail(format!("table entries {a} and {b} have the same image"));
            }
        }
    }
    let m = ext.matrix();
    let svd = singular_value_decomposition(m, tol);
    if m.nrows() != m.ncols() || svd.len() < m.ncols() {
        let kernel = crate::kernel::kernel(m, tol);
        let witness = kernel
            .vectors()
            .first()
            .and_then(|v| ext.source().from_coords(v).ok())
            .map(|x| x.to_json().to_string())
            .unwrap_or_else(|| "map is not square".into());
        r.fail(format!("extension has rank {} < {}; kernel vector {witness}", svd.len(), m.ncols()));
        return r;
    }
    let Some(inverse) = m.clone().try_inverse() else {
        r.fail("extension matrix is singular");
        return r;
    };
    let inv = LinearExtension::from_matrix(ext.target(), ext.source(), inverse, ext.kind()).expect("square inverse");
    let n = match square_size(ext.target()) {
        Ok(n) => n,
        Err(e) => {
            r.fail(e.to_string());
            return r;
        }
    };
    let swapped = ProjectionMap {
        source: phi.target(),
        target: phi.source(),
        rule: RuleTag::ExplicitTable,
        table: t.iter().map(|(p, q)| (q.clone(), p.clone())).collect(),
    };
    match certify_jordan(&inv, &swapped, n, tol) {
        Ok(sub) => {
            let mut sub = sub;
            sub.check = "inverse".into();
            r.absorb(&sub);
        }
        Err(e) => r.fail(e.to_string()),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_unitary;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn m3() -> TripleModel {
        TripleModel::square(3).unwrap()
    }

    #[test]
    fn identity_table_extends_to_identity() {
        let phi = ProjectionMap::identity(3).unwrap();
        let d = dye_extend(&phi, &tol()).unwrap();
        assert!(d.certification.is_pass());
        assert!(d.extension.distance_to(|x| Ok(x.clone())).unwrap() < 1e-12);
        assert!(dye_injective_check(&phi, &d.extension, &tol()).is_pass());
    }

    #[test]
    fn transpose_table_extends_to_transpose() {
        let phi = ProjectionMap::transpose(3).unwrap();
        let d = dye_extend(&phi, &tol()).unwrap();
        let dist = d
            .extension
            .distance_to(|x| TripleElement::from_matrix(m3(), x.matrix()?.transpose()))
            .unwrap();
        assert!(dist < 1e-12, "{dist}");
        assert!(dye_injective_check(&phi, &d.extension, &tol()).is_pass());
    }

    #[test]
    fn conjugation_is_reconstructed() {
        let mut rng = stream_rng(2, 0);
        let u = random_unitary(&mut rng, 3);
        let phi = ProjectionMap::conjugation(&u, &tol()).unwrap();
        let d = dye_extend(&phi, &tol()).unwrap();
        let dist = d
            .extension
            .distance_to(|x| TripleElement::from_matrix(m3(), &u * x.matrix()? * u.adjoint()))
            .unwrap();
        assert!(dist < 1e-10, "{dist}");
    }

    #[test]
    fn two_by_two_source_is_rejected() {
        let phi = ProjectionMap::identity(2).unwrap();
        assert!(matches!(dye_extend(&phi, &tol()), Err(Error::NotRegular(_))));
    }

    #[test]
    fn partial_table_is_span_deficient() {
        let frame = canonical_frame(3);
        let table = frame[..3].iter().map(|p| (p.clone(), p.clone())).collect();
        let phi = ProjectionMap::from_table(m3(), m3(), table, &tol()).unwrap();
        assert!(matches!(dye_extend(&phi, &tol()), Err(Error::SpanDeficient { rank: 3, needed: 9 })));
    }

    #[test]
    fn orthogonality_violation_is_not_a_morphism() {
        let mut table: Vec<_> = canonical_frame(3).into_iter().map(|p| (p.clone(), p)).collect();
        table[1].1 = table[0].1.clone();
        let phi = ProjectionMap::from_table(m3(), m3(), table, &tol()).unwrap();
        assert!(matches!(dye_extend(&phi, &tol()), Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn rank_deficient_candidate_fails_injectivity() {
        let phi = ProjectionMap::identity(3).unwrap();
        let zero = LinearExtension::from_fn(m3(), m3(), Linearity::Complex, |_| Ok(m3().zero())).unwrap();
        let r = dye_injective_check(&phi, &zero, &tol());
        assert!(!r.is_pass());
        assert!(r.witnesses.iter().any(|w| w.contains("kernel vector")));
    }
}
