use crate::calculus::{is_orthogonal, leq, peirce, range_tripotent, rank, Tripotent};
use crate::error::{Error, Result};
use crate::kernel::{c, ComplexMatrix, RealMatrix, Subspace, ToleranceProfile};
use crate::models::{triple_product, TripleElement, TripleModel};
use crate::random::{gaussian_matrix, random_projection, random_tripotent, stream_rng, SampleRng};
use crate::report::Report;

use super::{
    canonical_frame, dye_extend, regular_gate, LinearExtension, Linearity, ProjectionMap, TripotentMap,
};

const CERTIFICATION_SEED: u64 = 0xc0de;

/// `Φ_u` on the homotope `E(u)`, stored as a map on the whole source that
/// vanishes on `E₀(u) ⊕ E₁(u)`.
#[derive(Debug, Clone)]
pub struct SystemEntry {
    pub unit: Tripotent,
    pub image: Tripotent,
    pub map: LinearExtension,
}

impl SystemEntry {
    pub fn apply(&self, x: &TripleElement) -> Result<TripleElement> {
        self.map.apply(x)
    }
}

/// A consistent system of Jordan `*`-homomorphisms `(Φ_u)` over a finite
/// table of source tripotents.
#[derive(Debug, Clone)]
pub struct ConsistentSystem {
    map: TripotentMap,
    entries: Vec<SystemEntry>,
    completes: Vec<SystemEntry>,
    report: Report,
}

impl ConsistentSystem {
    pub fn map(&self) -> &TripotentMap {
        &self.map
    }

    /// Entries in table order.
    pub fn entries(&self) -> &[SystemEntry] {
        &self.entries
    }

    /// The complete tripotents whose homotope maps were built by Dye
    /// extension; every entry is a restriction of one of them.
    pub fn completes(&self) -> &[SystemEntry] {
        &self.completes
    }

    /// Consistency and homomorphism checks performed while building.
    pub fn report(&self) -> &Report {
        &self.report
    }

    /// Largest difference of `Φ_u` between two systems over the same table,
    /// measured on `E(u)`.
    pub fn max_difference(&self, other: &ConsistentSystem) -> Result<f64> {
        if self.entries.len() != other.entries.len() {
            return Err(Error::DimensionMismatch("systems over different tables".into()));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a.map.matrix() - b.map.matrix()).norm())
            .fold(0.0, f64::max))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Completion {
    Canonical,
    Twisted,
}

fn basis(p: &ComplexMatrix, rank: usize) -> ComplexMatrix {
    Subspace::from_projector(p, rank).basis().clone()
}

/// A complete tripotent `w ≥ u`: `u` plus a partial isometry between the
/// orthogonal complements of the initial and final spaces.
fn complete_above(u: &Tripotent, completion: Completion) -> Result<Tripotent> {
    let um = u.matrix()?;
    let (m, n) = um.shape();
    let r = rank(u);
    let k = m.min(n);
    if r >= k {
        return Ok(u.clone());
    }
    let pi = u.initial_projection().expect("matrix tripotent");
    let pf = u.final_projection().expect("matrix tripotent");
    let e = basis(&(ComplexMatrix::identity(n, n) - pi), n - r);
    let f = basis(&(ComplexMatrix::identity(m, m) - pf), m - r);
    let mut x = ComplexMatrix::zeros(m, n);
    for j in 0..(k - r) {
        let (fj, ej, phase) = match completion {
            Completion::Canonical => (j, j, c(1.0, 0.0)),
            Completion::Twisted => {
                let angle = 0.7 * (j + 1) as f64;
                (f.ncols() - 1 - j, e.ncols() - 1 - j, c(angle.cos(), angle.sin()))
            }
        };
        x += f.column(fj) * e.column(ej).adjoint() * phase;
    }
    let w = TripleElement::from_matrix(u.model(), um + x)?;
    Tripotent::new(w, &ToleranceProfile::default())
}

/// `Φ_w` for a complete `w`: transport `E(w)` to `M_r` by `x ↦ B*w*xB`,
/// Dye-extend the image of the canonical frame, and transport back by
/// `y ↦ φ(w)y`.
fn homotope_extension(map: &TripotentMap, w: &Tripotent, tol: &ToleranceProfile) -> Result<SystemEntry> {
    let source = map.source();
    let target = map.target();
    let r = rank(w);
    regular_gate(r, &format!("the homotope of a rank-{r} tripotent in {source}"))?;
    let wm = w.matrix()?.clone();
    let b = basis(w.initial_projection().expect("matrix tripotent"), r);
    let t = map.apply(w, tol)?;
    let tm = t.matrix()?.clone();
    let frame = canonical_frame(r);
    let mut table = Vec::with_capacity(frame.len());
    for p in &frame {
        let lifted = &wm * (&b * p * b.adjoint());
        let u = Tripotent::new(TripleElement::from_matrix_with(source, lifted, tol)?, tol)?;
        let image = map.apply(&u, tol)?;
        if !leq(&image, &t, tol)? {
            return Err(Error::NotAMorphism(format!(
                "φ does not preserve the order below a complete tripotent of {source}"
            )));
        }
        table.push((p.clone(), tm.adjoint() * image.matrix()?));
    }
    let k = tm.ncols();
    let phi = ProjectionMap::from_table(TripleModel::square(r)?, TripleModel::square(k)?, table, tol)?;
    let inner = dye_extend(&phi, tol)?.extension;
    let outer = LinearExtension::from_fn(source, target, Linearity::Complex, |x| {
        let y = b.adjoint() * wm.adjoint() * x.matrix()? * &b;
        let ly = inner.apply(&TripleElement::from_matrix(inner.source(), y)?)?;
        TripleElement::from_matrix_with(target, &tm * ly.matrix()?, tol)
    })?;
    let p2 = peirce(w, tol)?.projector(2).clone();
    Ok(SystemEntry {
        unit: w.clone(),
        image: t,
        map: outer.precompose(&p2),
    })
}

fn gate_source(model: TripleModel) -> Result<()> {
    match model {
        TripleModel::Rectangular { m, n } => regular_gate(m.min(n), &model.to_string()),
        TripleModel::Antisymmetric { n } => {
            regular_gate(n / 2, &model.to_string())?;
            Err(Error::UnsupportedModel(format!("consistent systems over {model}")))
        }
        TripleModel::Spin { .. } => regular_gate(2, &model.to_string()),
    }
}

fn precheck(map: &TripotentMap, table: &[Tripotent], images: &[Tripotent], tol: &ToleranceProfile) -> Result<()> {
    for (a, u) in table.iter().enumerate() {
        if u.is_zero(tol) && !images[a].is_zero(tol) {
            return Err(Error::NotAMorphism("φ(0) ≠ 0".into()));
        }
        for b in (a + 1)..table.len() {
            if !is_orthogonal(u, &table[b], tol)? {
                continue;
            }
            if !is_orthogonal(&images[a], &images[b], tol)? {
                return Err(Error::NotAMorphism(format!(
                    "entries {a} and {b} are orthogonal but their images are not"
                )));
            }
            let sup = Tripotent::new(u.element().add(table[b].element())?, tol)?;
            let image = match map.apply(&sup, tol) {
                Ok(i) => i,
                Err(Error::OutOfTable(_)) => continue,
                Err(e) => return Err(e),
            };
            let sum = images[a].element().add(images[b].element())?;
            let deviation = image.element().distance(&sum);
            if deviation > tol.certify() {
                return Err(Error::NotAMorphism(format!(
                    "φ(u{a} ∨ u{b}) differs from φ(u{a}) ∨ φ(u{b}) by {deviation:e}"
                )));
            }
        }
    }
    Ok(())
}

fn zero_entry(map: &TripotentMap, u: &Tripotent) -> SystemEntry {
    let (s, t) = (map.source(), map.target());
    SystemEntry {
        unit: u.clone(),
        image: Tripotent::zero(t),
        map: LinearExtension::from_matrix(s, t, RealMatrix::zeros(t.real_dim(), s.real_dim()), Linearity::Complex)
            .expect("dimensions match the models"),
    }
}

/// Random element of `E₂(u)`.
fn peirce_two_sample(rng: &mut SampleRng, p2: &RealMatrix, model: TripleModel) -> Result<TripleElement> {
    let v = crate::kernel::RealVector::from_fn(model.real_dim(), |_, _| crate::random::normal(rng));
    model.from_coords(&(p2 * v))
}

fn certify_entry(entry: &SystemEntry, p2: &RealMatrix, rng: &mut SampleRng, r: &mut Report, label: usize) -> Result<()> {
    let model = entry.unit.model();
    let (u, fu) = (entry.unit.element(), entry.image.element());
    let unital = entry.apply(u)?.distance(fu);
    r.bound(unital, 1e-8, || format!("Φ_u(u) ≠ φ(u) for entry {label}: {unital:e}"));
    for _ in 0..3 {
        let x = peirce_two_sample(rng, p2, model)?;
        let y = peirce_two_sample(rng, p2, model)?;
        let (fx, fy) = (entry.apply(&x)?, entry.apply(&y)?);
        let scale = 1.0 + x.frobenius_norm() * y.frobenius_norm();
        let product = entry.apply(&triple_product(&x, u, &y)?)?.distance(&triple_product(&fx, fu, &fy)?);
        r.bound(product, 1e-8 * scale, || format!("Φ_u{{x,u,y}} ≠ {{Φx,φu,Φy}} for entry {label}: {product:e}"));
        let involution = entry.apply(&triple_product(u, &x, u)?)?.distance(&triple_product(fu, &fx, fu)?);
        r.bound(involution, 1e-8 * (1.0 + x.frobenius_norm()), || {
            format!("Φ_u{{u,x,u}} ≠ {{φu,Φx,φu}} for entry {label}: {involution:e}")
        });
    }
    Ok(())
}

/// The consistent system of `map` over `table`, processing the table in
/// its own order with canonical completions.
pub fn build_consistent_system(map: &TripotentMap, table: &[Tripotent], tol: &ToleranceProfile) -> Result<ConsistentSystem> {
    let order: Vec<usize> = (0..table.len()).collect();
    build(map, table, &order, Completion::Canonical, tol)
}

/// As [`build_consistent_system`], processing the table in `order` and
/// choosing different complete tripotents above each entry. By uniqueness
/// the result must agree with the canonical build.
pub fn build_consistent_system_with_order(
    map: &TripotentMap,
    table: &[Tripotent],
    order: &[usize],
    tol: &ToleranceProfile,
) -> Result<ConsistentSystem> {
    build(map, table, order, Completion::Twisted, tol)
}

fn build(
    map: &TripotentMap,
    table: &[Tripotent],
    order: &[usize],
    completion: Completion,
    tol: &ToleranceProfile,
) -> Result<ConsistentSystem> {
    gate_source(map.source())?;
    if !map.target().is_matrix() {
        return Err(Error::UnsupportedModel(format!("consistent systems into {}", map.target())));
    }
    let mut seen = vec![false; table.len()];
    for &i in order {
        if i >= table.len() || std::mem::replace(&mut seen[i], true) {
            return Err(Error::DimensionMismatch("order must be a permutation of the table".into()));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::DimensionMismatch("order must be a permutation of the table".into()));
    }
    if let Some(u) = table.iter().find(|u| u.model() != map.source()) {
        return Err(Error::ModelMismatch {
            left: map.source().to_string(),
            right: u.model().to_string(),
        });
    }
    let images = table.iter().map(|u| map.apply(u, tol)).collect::<Result<Vec<_>>>()?;
    precheck(map, table, &images, tol)?;

    let mut report = Report::new("consistent-system");
    let mut rng = stream_rng(CERTIFICATION_SEED, 0);
    let mut completes: Vec<SystemEntry> = Vec::new();
    let mut entries: Vec<Option<SystemEntry>> = vec![None; table.len()];
    let mut projectors: Vec<RealMatrix> = vec![RealMatrix::zeros(0, 0); table.len()];
    for &i in order {
        let u = &table[i];
        let p2 = peirce(u, tol)?.projector(2).clone();
        if u.is_zero(tol) {
            entries[i] = Some(zero_entry(map, u));
            projectors[i] = p2;
            continue;
        }
        let mut found = None;
        for (k, c) in completes.iter().enumerate() {
            if leq(u, &c.unit, tol)? {
                found = Some(k);
                break;
            }
        }
        let k = match found {
            Some(k) => k,
            None => {
                let w = complete_above(u, completion)?;
                completes.push(homotope_extension(map, &w, tol)?);
                completes.len() - 1
            }
        };
        let entry = SystemEntry {
            unit: u.clone(),
            image: images[i].clone(),
            map: completes[k].map.precompose(&p2),
        };
        certify_entry(&entry, &p2, &mut rng, &mut report, i)?;
        entries[i] = Some(entry);
        projectors[i] = p2;
    }
    if !report.is_pass() {
        return Err(Error::CertificationFailed {
            identity: report.witnesses.first().cloned().unwrap_or_default(),
            deviation: report.max_deviation,
        });
    }
    let entries: Vec<SystemEntry> = entries.into_iter().map(|e| e.expect("every index is processed")).collect();
    for a in 0..table.len() {
        for b in 0..table.len() {
            if a == b || !leq(&table[a], &table[b], tol)? {
                continue;
            }
            let diff = (entries[a].map.matrix() - entries[b].map.matrix()) * &projectors[a];
            let deviation = diff.norm();
            report.record(deviation);
            if deviation > tol.certify() {
                return Err(Error::ConsistencyFailed { u: a, v: b, deviation });
            }
        }
    }
    Ok(ConsistentSystem {
        map: map.clone(),
        entries,
        completes,
        report,
    })
}

/// `Φ(x) = Φ_{r(x)}(x)`, resolving `r(x)` in the table, below a tabulated
/// tripotent, or by one further Dye extension when the rule is total.
pub fn local_jordan_evaluate(sys: &ConsistentSystem, x: &TripleElement, tol: &ToleranceProfile) -> Result<TripleElement> {
    let map = sys.map();
    if x.model() != map.source() {
        return Err(Error::ModelMismatch {
            left: map.source().to_string(),
            right: x.model().to_string(),
        });
    }
    if x.is_zero(tol) {
        return Ok(map.target().zero());
    }
    let r = range_tripotent(x, tol)?;
    let all = || sys.entries.iter().chain(&sys.completes);
    if let Some(e) = all().find(|e| e.unit.element().distance(r.element()) <= tol.eps_zero) {
        return e.apply(x);
    }
    for e in all() {
        if !e.unit.is_zero(tol) && leq(&r, &e.unit, tol)? {
            return e.apply(x);
        }
    }
    if !map.rule().is_total() {
        return Err(Error::OutOfTable(format!(
            "range tripotent of rank {} lies below no tabulated tripotent",
            rank(&r)
        )));
    }
    let w = complete_above(&r, Completion::Canonical)?;
    homotope_extension(map, &w, tol)?.apply(x)
}

/// Reports of [`verify_local_jordan`].
#[derive(Debug, Clone)]
pub struct LocalJordanReport {
    pub additivity: Report,
    pub homogeneity: Report,
    pub quadratic: Report,
    pub sign: Report,
    /// `Φ(ix) = iΦ(x)`; not part of the definition, reported for
    /// information (it fails for conjugate-linear glueings).
    pub complex_homogeneity: Report,
}

impl LocalJordanReport {
    pub fn reports(&self) -> [&Report; 5] {
        [
            &self.additivity,
            &self.homogeneity,
            &self.quadratic,
            &self.sign,
            &self.complex_homogeneity,
        ]
    }

    /// The defining properties (everything but complex homogeneity) hold.
    pub fn is_local_jordan(&self) -> bool {
        [&self.additivity, &self.homogeneity, &self.quadratic, &self.sign]
            .iter()
            .all(|r| r.is_pass())
    }
}

pub const HOMOGENEITY_SCALARS: [f64; 5] = [-2.0, -1.0, -0.5, 0.5, 3.0];

/// Triple-bounded pairs `x, y`, both positive in the homotope of one
/// complete tripotent (every other pair has orthogonal supports), checked
/// for additivity, real homogeneity, the quadratic identity
/// `Φ{x,y,x} = {Φx,Φy,Φx}` and `r(−x) = −r(x)`.
pub fn verify_local_jordan(
    sys: &ConsistentSystem,
    samples: usize,
    rng: &mut SampleRng,
    tol: &ToleranceProfile,
) -> Result<LocalJordanReport> {
    let mut out = LocalJordanReport {
        additivity: Report::new("additivity"),
        homogeneity: Report::new("real-homogeneity"),
        quadratic: Report::new("quadratic-identity"),
        sign: Report::new("range-sign"),
        complex_homogeneity: Report::new("complex-homogeneity"),
    };
    let source = sys.map().source();
    let bound = tol.certify();
    for s in 0..samples {
        let w = match sys.completes.get(s % sys.completes.len().max(1)) {
            Some(e) => e.unit.clone(),
            None => complete_above(&random_tripotent(rng, source, tol)?, Completion::Canonical)?,
        };
        let r = rank(&w);
        let wm = w.matrix()?;
        let b = basis(w.initial_projection().expect("matrix tripotent"), r);
        let (g1, g2) = (gaussian_matrix(rng, r, r), gaussian_matrix(rng, r, r));
        let (h1, h2) = if s % 2 == 1 && r >= 2 {
            let p = random_projection(rng, r, r / 2);
            let q = ComplexMatrix::identity(r, r) - &p;
            (&p * &g1 * g1.adjoint() * &p, &q * &g2 * g2.adjoint() * &q)
        } else {
            (&g1 * g1.adjoint(), &g2 * g2.adjoint())
        };
        let lift = |h: &ComplexMatrix| TripleElement::from_matrix_with(source, wm * (&b * h * b.adjoint()), tol);
        let (x, y) = (lift(&h1)?, lift(&h2)?);
        let phi = |z: &TripleElement| local_jordan_evaluate(sys, z, tol);
        let (fx, fy) = (phi(&x)?, phi(&y)?);
        let scale = 1.0 + x.frobenius_norm() + y.frobenius_norm();

        let add = phi(&x.add(&y)?)?.distance(&fx.add(&fy)?);
        out.additivity.bound(add, bound * scale, || format!("sample {s}: Φ(x+y) − Φx − Φy = {add:e}"));

        for lambda in HOMOGENEITY_SCALARS {
            let d = phi(&x.scale(lambda))?.distance(&fx.scale(lambda));
            out.homogeneity.bound(d, bound * scale * lambda.abs(), || {
                format!("sample {s}: Φ({lambda}x) − {lambda}Φx = {d:e}")
            });
        }

        let xyx = triple_product(&x, &y, &x)?;
        let q = phi(&xyx)?.distance(&triple_product(&fx, &fy, &fx)?);
        let qscale = 1.0 + xyx.frobenius_norm();
        out.quadratic.bound(q, bound * qscale, || format!("sample {s}: Φ{{x,y,x}} − {{Φx,Φy,Φx}} = {q:e}"));

        let rx = range_tripotent(&x, tol)?;
        let rneg = range_tripotent(&x.neg(), tol)?;
        let sign = rneg.element().distance(&rx.element().neg());
        out.sign.bound(sign, tol.eps_zero, || format!("sample {s}: r(−x) + r(x) = {sign:e}"));

        let ix = x.scale_complex(c(0.0, 1.0))?;
        let ch = phi(&ix)?.distance(&fx.scale_complex(c(0.0, 1.0))?);
        out.complex_homogeneity.bound(ch, bound * scale, || format!("sample {s}: Φ(ix) − iΦx = {ch:e}"));
    }
    Ok(out)
}
