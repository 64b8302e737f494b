use num_complex::Complex64;

use crate::calculus::{
    homotope_transport, is_complete, is_orthogonal, leq, peirce, rank, triple_spectral, Tripotent,
};
use crate::error::{Error, Result};
use crate::kernel::{is_projection, projection_leq, unit, ComplexMatrix, ToleranceProfile};
use crate::logic::{check_order_preservation, is_orthoisomorphism, snapshot_of_family, LogicMap, Snapshot};
use crate::models::{identity_element, triple_product, Payload, TripleElement, TripleModel};
use crate::random::{random_element, random_tripotent, SampleRng};
use crate::report::Report;

use super::{LinearExtension, MapRule, PhaseTwist, TripotentMap};

/// `min_{|λ|=1} ‖λa − b‖`.
pub fn ray_distance(a: &TripleElement, b: &TripleElement) -> f64 {
    match (a.payload(), b.payload()) {
        (Payload::Matrix(x), Payload::Matrix(y)) => {
            let inner: Complex64 = x.iter().zip(y.iter()).map(|(p, q)| p.conj() * q).sum();
            (x.norm_squared() + y.norm_squared() - 2.0 * inner.norm()).max(0.0).sqrt()
        }
        _ => a.distance(b).min(a.neg().distance(b)),
    }
}

/// `λu ↦ λT([u])u`, with `T` given on the listed rays and `1` elsewhere.
pub fn phase_twist_morphism(model: TripleModel, tweaks: Vec<(TripleElement, Complex64)>) -> Result<TripotentMap> {
    TripotentMap::new(model, MapRule::PhaseTwist(PhaseTwist::new(tweaks)?))
}

/// The assignment of `map` between two snapshots.
pub fn logic_map_on_snapshot(
    map: &TripotentMap,
    source: &Snapshot,
    target: &Snapshot,
    tol: &ToleranceProfile,
) -> Result<Vec<usize>> {
    source
        .tripotents()
        .iter()
        .map(|u| {
            let image = map.apply_element(u.element(), tol)?;
            target
                .index_of(&image)
                .ok_or_else(|| Error::NotAMember(format!("φ({}) is outside the target snapshot", source_label(source, u))))
        })
        .collect()
}

fn source_label(s: &Snapshot, u: &Tripotent) -> String {
    s.index_of(u.element()).map_or_else(|| "?".into(), |i| s.logic().label(i).to_string())
}

fn skew(n: usize, i: usize, j: usize) -> ComplexMatrix {
    unit(n, n, i, j) - unit(n, n, j, i)
}

/// An orthoisomorphism of a snapshot of `A_5` that is not order preserving.
#[derive(Debug, Clone)]
pub struct OrderBreaking {
    pub snapshot: Snapshot,
    pub assignment: Vec<usize>,
    /// `u ≤ v` in the source with `φ(u) ≰ φ(v)`.
    pub witness: (usize, usize),
}

impl OrderBreaking {
    pub fn logic_map(&self) -> LogicMap<'_> {
        LogicMap {
            source: self.snapshot.logic(),
            target: self.snapshot.logic(),
            assignment: &self.assignment,
        }
    }
}

/// The snapshot `{0, u12, u34, u13, u45, u12+u34, u12+u45, u13+u45}` of
/// `A_5` (with `u_ij = E_ij − E_ji`) and the bijection fixing every rank-2
/// element while swapping `u12+u34` and `u13+u45`.
pub fn order_breaking_antisymmetric(tol: &ToleranceProfile) -> Result<OrderBreaking> {
    let model = TripleModel::antisymmetric(5)?;
    let t = |x: ComplexMatrix| Tripotent::new(TripleElement::from_matrix_with(model, x, tol)?, tol);
    let (u12, u34, u13, u45) = (skew(5, 0, 1), skew(5, 2, 3), skew(5, 0, 2), skew(5, 3, 4));
    let family = vec![
        t(u12.clone())?,
        t(u34.clone())?,
        t(u13.clone())?,
        t(u45.clone())?,
        t(&u12 + &u34)?,
        t(&u12 + &u45)?,
        t(&u13 + &u45)?,
    ];
    let snapshot = snapshot_of_family(&family, tol)?;
    let index = |x: &Tripotent| snapshot.index_of(x.element()).expect("family member");
    let (a, b) = (index(&family[4]), index(&family[6]));
    let assignment: Vec<usize> = (0..snapshot.len())
        .map(|i| if i == a { b } else if i == b { a } else { i })
        .collect();
    let witness = (index(&family[0]), a);
    Ok(OrderBreaking {
        snapshot,
        assignment,
        witness,
    })
}

/// Rank structure of `A_n` for `n ∈ {3, 5}` on sampled tripotents, plus,
/// for `n = 5`, the order-breaking orthoisomorphism.
pub fn antisymmetric_gallery(n: usize, samples: usize, rng: &mut SampleRng, tol: &ToleranceProfile) -> Result<Vec<Report>> {
    if n != 3 && n != 5 {
        return Err(Error::UnsupportedModel(format!("antisymmetric gallery for n = {n}")));
    }
    let model = TripleModel::antisymmetric(n)?;
    let mut sampled = Vec::with_capacity(samples);
    while sampled.len() < samples {
        let u = random_tripotent(rng, model, tol)?;
        if !u.is_zero(tol) {
            sampled.push(u);
        }
    }
    let ranks: Vec<usize> = sampled.iter().map(rank).collect();
    let mut reports = Vec::new();
    if n == 3 {
        let mut r = Report::new("rank-two");
        for (k, &d) in ranks.iter().enumerate() {
            r.require(d == 2, || format!("sample {k} has rank {d}"));
        }
        reports.push(r);
        let mut r = Report::new("complete");
        for (k, u) in sampled.iter().enumerate() {
            r.require(is_complete(u, tol)?, || format!("sample {k} is not complete"));
        }
        reports.push(r);
        let mut r = Report::new("pairwise-non-orthogonal");
        for a in 0..sampled.len() {
            for b in (a + 1)..sampled.len() {
                r.require(!is_orthogonal(&sampled[a], &sampled[b], tol)?, || format!("samples {a} and {b} are orthogonal"));
            }
        }
        reports.push(r);
        return Ok(reports);
    }
    let mut r = Report::new("rank-set");
    for (k, &d) in ranks.iter().enumerate() {
        r.require(d == 2 || d == 4, || format!("sample {k} has rank {d}"));
    }
    reports.push(r);
    let mut r = Report::new("ranks-attained");
    for d in [2, 4] {
        r.require(ranks.contains(&d), || format!("rank {d} never sampled"));
    }
    reports.push(r);
    let mut minimal = Report::new("rank-two-minimal");
    let mut maximal = Report::new("rank-four-complete");
    for (k, u) in sampled.iter().enumerate() {
        if ranks[k] == 2 {
            let dim = peirce(u, tol)?.dim(2);
            minimal.require(dim == 2, || format!("sample {k}: E₂(u) has real dimension {dim}"));
        } else {
            maximal.require(is_complete(u, tol)?, || format!("sample {k} is not complete"));
        }
    }
    reports.push(minimal);
    reports.push(maximal);

    let ob = order_breaking_antisymmetric(tol)?;
    let map = ob.logic_map();
    let mut iso = is_orthoisomorphism(&map)?;
    iso.check = "order-breaking-orthoisomorphism".into();
    reports.push(iso);
    let mut order = check_order_preservation(&map);
    order.check = "order-breaking-order-preservation".into();
    reports.push(order.expect_failure());
    let (u, v) = ob.witness;
    let (fu, fv) = (ob.snapshot.tripotent(ob.assignment[u]), ob.snapshot.tripotent(ob.assignment[v]));
    let mut w = Report::new("order-breaking-witness");
    let before = leq(ob.snapshot.tripotent(u), ob.snapshot.tripotent(v), tol)?;
    let after = leq(fu, fv, tol)?;
    w.require(before, || "witness pair is not ordered in the source".into());
    w.require(!before || after, || {
        format!(
            "{} ≤ {} but φ({}) = {} ≰ {}",
            ob.snapshot.logic().label(u),
            ob.snapshot.logic().label(v),
            ob.snapshot.logic().label(u),
            ob.snapshot.logic().label(ob.assignment[u]),
            ob.snapshot.logic().label(ob.assignment[v])
        )
    });
    reports.push(if before { w.expect_failure() } else { w });
    Ok(reports)
}

/// For a bijective `φ` on a unital snapshot: `φ(1)` is complete, `φ` maps
/// `[0,1]` onto `[0,φ(1)]` preserving order both ways, and `x ↦ φ(1)*x`
/// carries the image interval onto projections with the same order.
pub fn completeness_transfer(map: &TripotentMap, snapshot: &Snapshot, tol: &ToleranceProfile) -> Result<Vec<Report>> {
    let model = map.source();
    let one_elem = identity_element(model)?;
    let Some(one) = snapshot.index_of(&one_elem) else {
        return Err(Error::NotUnitalSnapshot);
    };
    let images = snapshot
        .tripotents()
        .iter()
        .map(|u| map.apply(u, tol))
        .collect::<Result<Vec<_>>>()?;
    let target = snapshot_of_family(&images, tol)?;
    let assignment = logic_map_on_snapshot(map, snapshot, &target, tol)?;
    let lmap = LogicMap::new(snapshot.logic(), target.logic(), &assignment)?;
    let mut reports = vec![is_orthoisomorphism(&lmap)?];

    let top = &images[one];
    let mut complete = Report::new("complete-image");
    if !is_complete(top, tol)? {
        let free = peirce(top, tol)?.dim(0);
        complete.fail(format!(
            "φ(1) leaves a {free}-dimensional E₀; a tripotent there would be orthogonal to φ(1), so its preimage would be orthogonal to 1"
        ));
    }
    reports.push(complete);

    let interval: Vec<usize> = snapshot.logic().below(one).collect();
    let mut order = Report::new("interval-order-bijection");
    for &a in &interval {
        order.require(leq(&images[a], top, tol)?, || format!("φ({}) ≰ φ(1)", snapshot.logic().label(a)));
        for &b in &interval {
            let src = snapshot.logic().leq(a, b);
            let dst = leq(&images[a], &images[b], tol)?;
            order.require(src == dst, || {
                format!("order of ({}, {}) changes under φ", snapshot.logic().label(a), snapshot.logic().label(b))
            });
        }
    }
    let above: Vec<usize> = target.logic().below(assignment[one]).collect();
    order.require(above.len() == interval.len(), || {
        format!("[0,1] has {} elements but [0,φ(1)] has {}", interval.len(), above.len())
    });
    reports.push(order);

    let mut transport = Report::new("homotope-projections");
    if top.model().is_matrix() && !top.is_zero(tol) {
        let t = homotope_transport(top)?;
        let projections = interval
            .iter()
            .map(|&a| Ok(t.apply(images[a].element())?.matrix()?.clone()))
            .collect::<Result<Vec<ComplexMatrix>>>()?;
        for (k, &a) in interval.iter().enumerate() {
            transport.require(is_projection(&projections[k], tol), || {
                format!("φ(1)*φ({}) is not a projection", snapshot.logic().label(a))
            });
            for (l, &b) in interval.iter().enumerate() {
                let src = snapshot.logic().leq(a, b);
                transport.require(src == projection_leq(&projections[k], &projections[l], tol), || {
                    format!("projection order of ({}, {}) differs", snapshot.logic().label(a), snapshot.logic().label(b))
                });
            }
        }
    }
    reports.push(transport);
    Ok(reports)
}

/// `J{x,x,x} = {Jx,Jx,Jx}` with cubes computed spectrally, and the full
/// triple product on random triples. `J` must map sampled tripotents to
/// tripotents.
pub fn cube_preservation_check(
    j: &LinearExtension,
    samples: usize,
    rng: &mut SampleRng,
    tol: &ToleranceProfile,
) -> Result<Report> {
    let mut r = Report::new("cube-preservation");
    let source = j.source();
    for k in 0..samples {
        let u = random_tripotent(rng, source, tol)?;
        let ju = j.apply(u.element())?;
        let d = triple_product(&ju, &ju, &ju)?.distance(&ju);
        r.bound(d, tol.certify() * (1.0 + ju.frobenius_norm()), || {
            format!("precondition: sample {k} maps a tripotent to a non-tripotent ({d:e})")
        });
    }
    if !r.is_pass() {
        return Ok(r);
    }
    for k in 0..samples {
        let x = random_element(rng, source);
        let cube = triple_spectral(&x, tol)?.apply(&x, |t| t * t * t)?;
        let jx = j.apply(&x)?;
        let d = j.apply(&cube)?.distance(&triple_product(&jx, &jx, &jx)?);
        r.bound(d, tol.certify() * (1.0 + cube.frobenius_norm()), || format!("sample {k}: J(x³) − (Jx)³ = {d:e}"));
        let (y, z) = (random_element(rng, source), random_element(rng, source));
        let xyz = triple_product(&x, &y, &z)?;
        let d = j.apply(&xyz)?.distance(&triple_product(&jx, &j.apply(&y)?, &j.apply(&z)?)?);
        let scale = 1.0 + x.frobenius_norm() * y.frobenius_norm() * z.frobenius_norm();
        r.bound(d, tol.certify() * scale, || format!("sample {k}: J{{x,y,z}} − {{Jx,Jy,Jz}} = {d:e}"));
    }
    Ok(r)
}
