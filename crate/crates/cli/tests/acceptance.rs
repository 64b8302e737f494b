//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use tripotent_core::calculus::{
    is_complete, leq, meet, meet_projection, orthogonality_equivalences, peirce, range_tripotent,
    Tripotent,
};
use tripotent_core::kernel::{c, identity, operator_norm, unit, ComplexMatrix, ToleranceProfile};
use tripotent_core::logic::{
    benzene, check_orthogonality_axioms, check_orthomodular, find_orthoisomorphisms, is_orthoisomorphism,
    random_unital_logic, relabel, snapshot_from_tripotents, verify_poset1, LogicMap, DEFAULT_CAP,
};
use tripotent_core::models::{matrix_jordan_product, TripleElement, TripleModel};
use tripotent_core::morphism::{
    build_consistent_system, build_consistent_system_with_order, dye_extend, local_jordan_evaluate,
    logic_map_on_snapshot, order_breaking_antisymmetric, phase_twist_morphism, random_triple_automorphism,
    verify_local_jordan, ProjectionMap, TripotentMap,
};
use tripotent_core::random::{
    gaussian_matrix, random_element, random_hermitian, random_projection, random_tripotent, random_unitary,
    stream_rng, SampleRng,
};
use tripotent_core::suites::{random_orthogonal, standard_table, GALLERY, SUITES};
use tripotent_core::Error;

type Outcome = Result<String, String>;
type Exact<'a> = Box<dyn Fn(&ComplexMatrix) -> ComplexMatrix + 'a>;
type Criterion = (&'static str, fn() -> Outcome);

fn tol() -> ToleranceProfile {
    ToleranceProfile::default()
}

fn model(name: &str) -> TripleModel {
    TripleModel::builtin(name).expect("builtin model")
}

fn trip(model: TripleModel, x: ComplexMatrix) -> Tripotent {
    Tripotent::new(TripleElement::from_matrix_with(model, x, &tol()).expect("member"), &tol()).expect("tripotent")
}

fn mat(u: &Tripotent) -> &ComplexMatrix {
    u.matrix().expect("matrix tripotent")
}

/// `e ≤ u` for matrix tripotents: `e = u e* e`.
fn below(e: &ComplexMatrix, u: &ComplexMatrix, eps: f64) -> bool {
    (u * e.adjoint() * e - e).norm() <= eps
}

/// Rank of a matrix tripotent: its singular values are all one.
fn frobenius_rank(u: &Tripotent) -> usize {
    mat(u).norm_squared().round() as usize
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn peirce_spectrum() -> Outcome {
    let tol = tol();
    let models = [model("m3"), model("r23"), model("a5")];
    let (mut spectrum, mut two): (f64, f64) = (0.0, 0.0);
    for k in 0..500 {
        let mut rng = stream_rng(101, k);
        let m = models[k as usize % 3];
        let u = random_tripotent(&mut rng, m, &tol).map_err(|e| e.to_string())?;
        let p = peirce(&u, &tol).map_err(|e| e.to_string())?;
        spectrum = spectrum.max(p.spectrum_deviation());
        let (pi, pf) = (u.initial_projection().unwrap(), u.final_projection().unwrap());
        let x = random_element(&mut rng, m);
        let direct = pf * x.matrix().unwrap() * pi;
        let projected = p.project(2, &x).map_err(|e| e.to_string())?;
        two = two.max((projected.matrix().unwrap() - direct).norm());
    }
    check(
        spectrum <= 1e-6 && two <= 1e-9,
        format!("500 tripotents; spectrum deviation {spectrum:.2e}, ‖P₂x − p_f x p_i‖ {two:.2e}"),
    )
}

fn orthogonality() -> Outcome {
    let tol = tol();
    let models = [model("m3"), model("r23"), model("a5"), model("spin3")];
    let (mut orthogonal, mut disagreements) = (0, 0);
    for k in 0..500u64 {
        let mut rng = stream_rng(102, k);
        let m = models[k as usize % 4];
        let e = random_tripotent(&mut rng, m, &tol).map_err(|e| e.to_string())?;
        let f = if k % 2 == 0 {
            random_orthogonal(&mut rng, &e, &tol).map_err(|e| e.to_string())?
        } else {
            random_tripotent(&mut rng, m, &tol).map_err(|e| e.to_string())?
        };
        let v = orthogonality_equivalences(&e, &f, &tol).map_err(|e| e.to_string())?;
        if !v.all_agree() {
            disagreements += 1;
        }
        if v.verdict() == Some(true) {
            orthogonal += 1;
        }
    }
    check(
        disagreements == 0 && orthogonal >= 250,
        format!("500 pairs ({orthogonal} orthogonal); {disagreements} disagreements"),
    )
}

/// A projection below `h`, of random rank.
fn sub_projection(rng: &mut SampleRng, h: &ComplexMatrix, k: usize) -> ComplexMatrix {
    let eig = h.clone().symmetric_eigen();
    let cols: Vec<_> = (0..3).filter(|&i| eig.eigenvalues[i] > 0.5).map(|i| eig.eigenvectors.column(i).into_owned()).collect();
    if cols.is_empty() {
        return ComplexMatrix::zeros(3, 3);
    }
    let b = ComplexMatrix::from_columns(&cols);
    let q = random_projection(rng, cols.len(), k % (cols.len() + 1));
    &b * q * b.adjoint()
}

fn meet_formula() -> Outcome {
    let tol = tol();
    let m3 = model("m3");
    let (mut agreement, mut contraction, mut outside): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let (mut lower_bounds, mut failures) = (0, Vec::new());
    for k in 0..200u64 {
        let mut rng = stream_rng(103, k);
        let (u, w) = if k % 3 == 0 {
            (random_tripotent(&mut rng, m3, &tol).unwrap(), random_tripotent(&mut rng, m3, &tol).unwrap())
        } else {
            let a = random_tripotent(&mut rng, m3, &tol).unwrap();
            let b = random_orthogonal(&mut rng, &a, &tol).unwrap();
            let c = random_orthogonal(&mut rng, &a, &tol).unwrap();
            (trip(m3, mat(&a) + mat(&b)), trip(m3, mat(&a) + mat(&c)))
        };
        let h = meet_projection(&u, &w, &tol).map_err(|e| format!("pair {k}: {e}"))?;
        let m = meet(&u, &w, &tol).map_err(|e| format!("pair {k}: {e}"))?;
        let (um, wm) = (mat(&u), mat(&w));
        let hu = &h * um;
        agreement = agreement.max((mat(&m) - &hu).norm()).max((&hu - &h * wm).norm());
        if !below(&hu, um, 1e-9) || !below(&hu, wm, 1e-9) {
            failures.push(format!("pair {k}: hu is not a lower bound"));
        }
        for j in 0..200 {
            let p = if j % 2 == 0 {
                sub_projection(&mut rng, &h, j)
            } else {
                random_projection(&mut rng, 3, j % 4)
            };
            let pu = &p * um;
            if (&pu * pu.adjoint() * &pu - &pu).norm() > 1e-9 {
                continue;
            }
            if below(&pu, um, 1e-9) && below(&pu, wm, 1e-9) {
                lower_bounds += 1;
                if !below(&pu, &hu, 1e-8) {
                    failures.push(format!("pair {k}: lower bound {j} is not below hu"));
                }
            }
        }
        let uw = um * wm.adjoint();
        contraction = contraction.max((&h * &uw * &h - &h).norm());
        let q = identity(3) - &h;
        outside = outside.max(operator_norm(&(&q * &uw * &q)));
    }
    check(
        agreement <= 1e-9 && contraction <= 1e-9 && outside <= 1.0 + 1e-9 && failures.is_empty(),
        format!(
            "200 pairs, {lower_bounds} lower bounds pu; ‖meet − hu‖,‖hu − hw‖ {agreement:.2e}, ‖p uw* p − p‖ {contraction:.2e}, ‖(1−p)uw*(1−p)‖ {outside:.6}{}",
            failures.first().map(|f| format!("; {f}")).unwrap_or_default()
        ),
    )
}

fn dye_extension() -> Outcome {
    let tol = tol();
    let mut rng = stream_rng(104, 0);
    let v = random_unitary(&mut rng, 3);
    let cases: [(&str, ProjectionMap, Exact); 2] = [
        ("transpose", ProjectionMap::transpose(3).unwrap(), Box::new(|x: &ComplexMatrix| x.transpose())),
        (
            "conjugation",
            ProjectionMap::conjugation(&v, &tol).unwrap(),
            Box::new(|x: &ComplexMatrix| &v * x * v.adjoint()),
        ),
    ];
    let m3 = model("m3");
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, phi, exact) in &cases {
        let ext = dye_extend(phi, &tol).map_err(|e| format!("{name}: {e}"))?;
        let recovery = ext
            .extension
            .distance_to(|x| TripleElement::from_matrix(m3, exact(x.matrix()?)))
            .map_err(|e| e.to_string())?;
        let l = |x: &ComplexMatrix| ext.extension.apply(&TripleElement::from_matrix(m3, x.clone()).unwrap()).unwrap().matrix().unwrap().clone();
        let mut identities: f64 = 0.0;
        for _ in 0..50 {
            let (a, b) = (gaussian_matrix(&mut rng, 3, 3), gaussian_matrix(&mut rng, 3, 3));
            identities = identities
                .max((l(&matrix_jordan_product(&a, &b)) - matrix_jordan_product(&l(&a), &l(&b))).norm())
                .max((l(&a.adjoint()) - l(&a).adjoint()).norm());
        }
        ok &= recovery <= 1e-8 && identities <= 1e-8 && ext.certification.is_pass() && ext.certification.max_deviation <= 1e-8;
        parts.push(format!(
            "{name} recovery {recovery:.2e}, *-homomorphism {identities:.2e}, certified {:.2e}",
            ext.certification.max_deviation
        ));
    }
    let gate = matches!(dye_extend(&ProjectionMap::identity(2).unwrap(), &tol), Err(Error::NotRegular(_)));
    ok &= gate;
    parts.push(format!("M₂ {}", if gate { "rejected" } else { "accepted" }));
    check(ok, parts.join("; "))
}

fn consistent_systems() -> Outcome {
    let tol = tol();
    let m3 = model("m3");
    let table = standard_table(3, &tol).map_err(|e| e.to_string())?.tripotents().to_vec();
    let (mut consistency, mut reproduction, mut uniqueness): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut inconsistent = 0;
    for k in 0..20u64 {
        let mut rng = stream_rng(105, k);
        let map = TripotentMap::new(m3, random_triple_automorphism(&mut rng, 3)).unwrap();
        let sys = build_consistent_system(&map, &table, &tol).map_err(|e| format!("automorphism {k}: {e}"))?;
        consistency = consistency.max(sys.report().max_deviation);
        if !sys.report().is_pass() {
            inconsistent += 1;
        }
        for _ in 0..100 {
            let x = random_element(&mut rng, m3);
            let y = local_jordan_evaluate(&sys, &x, &tol).map_err(|e| e.to_string())?;
            reproduction = reproduction.max(y.distance(&map.apply_element(&x, &tol).unwrap()));
        }
        let reversed: Vec<usize> = (0..table.len()).rev().collect();
        let other = build_consistent_system_with_order(&map, &table, &reversed, &tol).map_err(|e| e.to_string())?;
        uniqueness = uniqueness.max(sys.max_difference(&other).map_err(|e| e.to_string())?);
    }
    check(
        inconsistent == 0 && reproduction <= 1e-8 && uniqueness <= 1e-8,
        format!(
            "20 automorphisms over {} table entries; consistency {consistency:.2e}, reproduction {reproduction:.2e}, build orders {uniqueness:.2e}",
            table.len()
        ),
    )
}

fn local_jordan() -> Outcome {
    let tol = tol();
    let m3 = model("m3");
    let mut rng = stream_rng(106, 0);
    let map = TripotentMap::new(m3, random_triple_automorphism(&mut rng, 3)).unwrap();
    let table = standard_table(3, &tol).map_err(|e| e.to_string())?;
    let sys = build_consistent_system(&map, table.tripotents(), &tol).map_err(|e| e.to_string())?;
    let rep = verify_local_jordan(&sys, 200, &mut rng, &tol).map_err(|e| e.to_string())?;
    let (a, h, q, s) = (
        rep.additivity.max_deviation,
        rep.homogeneity.max_deviation,
        rep.quadratic.max_deviation,
        rep.sign.max_deviation,
    );
    check(
        rep.is_local_jordan() && a <= 1e-8 && h <= 1e-8 && q <= 1e-8 && s <= 1e-9,
        format!("200 pairs; additivity {a:.2e}, homogeneity {h:.2e}, quadratic {q:.2e}, r(−x) + r(x) {s:.2e}"),
    )
}

fn phase_twist() -> Outcome {
    let tol = tol();
    let m3 = model("m3");
    let (e11, e22) = (trip(m3, unit(3, 3, 0, 0)), trip(m3, unit(3, 3, 1, 1)));
    let map = phase_twist_morphism(m3, vec![(e11.element().clone(), c(-1.0, 0.0))]).unwrap();
    let seed = [e11.clone(), e22.clone(), e11.neg(), e22.neg()];
    let snap = snapshot_from_tripotents(&seed, &tol, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let assignment = logic_map_on_snapshot(&map, &snap, &snap, &tol).map_err(|e| e.to_string())?;
    let iso = is_orthoisomorphism(&LogicMap::new(snap.logic(), snap.logic(), &assignment).unwrap()).map_err(|e| e.to_string())?;
    let image = |x: &ComplexMatrix| map.apply(&trip(m3, x.clone()), &tol).unwrap().matrix().unwrap().clone();
    let d = (image(&(mat(&e11) + mat(&e22))) - image(mat(&e11)) - image(mat(&e22))).norm();
    check(
        iso.is_pass() && d >= 1.0,
        format!("orthoisomorphism on {} elements {}; ‖φ(u+v) − φ(u) − φ(v)‖ = {d:.4}", snap.len(), if iso.is_pass() { "holds" } else { "fails" }),
    )
}

/// A nonzero tripotent of `A_n`: the range tripotent of `G − Gᵗ` with `G`
/// of random rank.
fn antisymmetric_sample(rng: &mut SampleRng, n: usize, k: u64) -> Tripotent {
    let model = TripleModel::antisymmetric(n).unwrap();
    let inner = 1 + (k as usize % n);
    loop {
        let g = gaussian_matrix(rng, n, inner) * gaussian_matrix(rng, inner, n);
        let x = TripleElement::from_matrix(model, &g - g.transpose()).unwrap();
        let u = range_tripotent(&x, &tol()).unwrap();
        if !u.is_zero(&tol()) {
            return u;
        }
    }
}

fn antisymmetric_gallery() -> Outcome {
    let tol = tol();
    let mut ranks = std::collections::BTreeSet::new();
    for k in 0..500u64 {
        let mut rng = stream_rng(107, k);
        ranks.insert(frobenius_rank(&antisymmetric_sample(&mut rng, 5, k)));
    }
    let a3: Vec<Tripotent> = (0..500u64).map(|k| antisymmetric_sample(&mut stream_rng(108, k), 3, k)).collect();
    let rank_two = a3.iter().all(|u| frobenius_rank(u) == 2);
    let complete = a3.iter().all(|u| is_complete(u, &tol).unwrap());
    let mut orthogonal_pairs = 0;
    for a in 0..a3.len() {
        for b in (a + 1)..a3.len() {
            let (x, y) = (mat(&a3[a]), mat(&a3[b]));
            if (x.adjoint() * y).norm() <= 1e-9 && (x * y.adjoint()).norm() <= 1e-9 {
                orthogonal_pairs += 1;
            }
        }
    }
    let ob = order_breaking_antisymmetric(&tol).map_err(|e| e.to_string())?;
    let (u, v) = ob.witness;
    let s = &ob.snapshot;
    let before = leq(s.tripotent(u), s.tripotent(v), &tol).unwrap();
    let after = leq(s.tripotent(ob.assignment[u]), s.tripotent(ob.assignment[v]), &tol).unwrap();
    let iso = is_orthoisomorphism(&ob.logic_map()).map_err(|e| e.to_string())?.is_pass();
    let expected: std::collections::BTreeSet<usize> = [2, 4].into();
    check(
        ranks == expected && rank_two && complete && orthogonal_pairs == 0 && iso && before && !after,
        format!(
            "a5 ranks {ranks:?}; a3 rank two {rank_two}, complete {complete}, orthogonal pairs {orthogonal_pairs}; order-breaking orthoisomorphism {iso}, witness u ≤ v {before}, φu ≤ φv {after}"
        ),
    )
}

fn quantum_logic() -> Outcome {
    let tol = tol();
    let mut snapshots = vec![standard_table(3, &tol).unwrap(), order_breaking_antisymmetric(&tol).unwrap().snapshot];
    for k in 0..4u64 {
        let mut rng = stream_rng(109, k);
        let v = random_unitary(&mut rng, 3);
        let seed: Vec<Tripotent> = [unit(3, 3, 0, 0), unit(3, 3, 1, 1), unit(3, 3, 2, 2), unit(3, 3, 0, 1)]
            .into_iter()
            .map(|e| trip(model("m3"), &v * e * v.adjoint()))
            .collect();
        snapshots.push(snapshot_from_tripotents(&seed, &tol, DEFAULT_CAP).map_err(|e| e.to_string())?);
        let h = random_hermitian(&mut rng, 3);
        let r = range_tripotent(&TripleElement::from_matrix(model("m3"), h).unwrap(), &tol).unwrap();
        snapshots.push(snapshot_from_tripotents(&[r], &tol, DEFAULT_CAP).map_err(|e| e.to_string())?);
    }
    let largest = snapshots.iter().map(|s| s.len()).max().unwrap_or(0);
    let axioms = snapshots.iter().all(|s| s.len() <= DEFAULT_CAP && check_orthogonality_axioms(s.logic()).is_pass());
    let om = check_orthomodular(&benzene());
    let rejected = !om.is_pass() && !om.witnesses.is_empty();
    let mut poset_one = true;
    for k in 0..50u64 {
        let mut rng = stream_rng(110, k);
        let g = random_unital_logic(&mut rng);
        let n = g.len();
        let perm: Vec<usize> = std::iter::once(0).chain((1..n).map(|i| 1 + (i - 1 + k as usize) % (n - 1))).collect();
        let h = relabel(&g, &perm);
        let isos = find_orthoisomorphisms(&g, &h, 8);
        poset_one &= !isos.is_empty();
        for iso in &isos {
            poset_one &= verify_poset1(&LogicMap::new(&g, &h, iso).unwrap()).map(|r| r.is_pass()).unwrap_or(false);
        }
    }
    check(
        axioms && rejected && poset_one,
        format!(
            "{} snapshots (largest {largest}) satisfy the axioms: {axioms}; benzene rejected: {rejected} ({}); order-and-complement on 50 logics: {poset_one}",
            snapshots.len(),
            om.witnesses.first().cloned().unwrap_or_default()
        ),
    )
}

fn run_binary(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_tripotent-logic"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let mut runs: Vec<Vec<String>> = SUITES.iter().map(|s| vec!["verify".to_string(), s.to_string()]).collect();
    runs.extend(GALLERY.iter().map(|g| vec!["gallery".to_string(), g.to_string()]));
    let mut first_pass = Duration::ZERO;
    let mut differing = Vec::new();
    for run in &runs {
        let mut args: Vec<&str> = run.iter().map(String::as_str).collect();
        args.extend(["--seed", "42", "--format", "json"]);
        let start = Instant::now();
        let a = run_binary(&args)?;
        first_pass += start.elapsed();
        let b = run_binary(&args)?;
        if a != b || a.is_empty() {
            differing.push(run.join(" "));
        }
    }
    check(
        differing.is_empty() && first_pass < Duration::from_secs(60),
        format!(
            "{} runs byte-identical: {}; full suite {:.2}s{}",
            runs.len(),
            differing.is_empty(),
            first_pass.as_secs_f64(),
            if differing.is_empty() { String::new() } else { format!("; differing: {}", differing.join(", ")) }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("peirce spectrum", peirce_spectrum),
        ("orthogonality equivalences", orthogonality),
        ("meet formula", meet_formula),
        ("dye extension", dye_extension),
        ("consistent systems", consistent_systems),
        ("local jordan properties", local_jordan),
        ("phase-twist gallery", phase_twist),
        ("antisymmetric gallery", antisymmetric_gallery),
        ("quantum logic", quantum_logic),
        ("determinism", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name:<28} PASS {ms:>6}ms  {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name:<28} FAIL {ms:>6}ms  {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {}/10 passed in {:.2}s", 10 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
