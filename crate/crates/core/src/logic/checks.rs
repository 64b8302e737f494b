use rayon::prelude::*;

use crate::report::Report;

use super::FiniteGQL;

/// Symmetry, `0 ⟂ a`, `a ⟂ a ⇒ a = 0`, and downward heredity.
pub fn check_orthogonality_axioms(g: &FiniteGQL) -> Report {
    let mut r = Report::new("orthogonality-axioms");
    let n = g.len();
    let l = |a: usize| g.label(a).to_string();
    for a in 0..n {
        r.require(g.orthogonal(0, a), || format!("axiom 2: 0 is not orthogonal to {}", l(a)));
        if a != 0 && g.orthogonal(a, a) {
            r.fail(format!("axiom 3: {} ⟂ {} but {} ≠ 0", l(a), l(a), l(a)));
        }
        for b in 0..n {
            if !g.orthogonal(a, b) {
                continue;
            }
            r.require(g.orthogonal(b, a), || format!("axiom 1: {} ⟂ {} but not conversely", l(a), l(b)));
            for c in g.below(a) {
                r.require(g.orthogonal(c, b), || {
                    format!("axiom 4: {} ⟂ {} and {} ≤ {} but {} not ⟂ {}", l(a), l(b), l(c), l(a), l(c), l(b))
                });
            }
        }
    }
    r
}

fn check_interval(g: &FiniteGQL, a: usize) -> Report {
    let mut r = Report::new(format!("interval [0, {}]", g.label(a)));
    let l = |x: usize| g.label(x).to_string();
    let interval: Vec<usize> = g.below(a).collect();
    let comp = |x: usize| g.complement(a, x).expect("complements are total on intervals");
    for &x in &interval {
        let xc = comp(x);
        r.require(comp(xc) == x, || format!("x^⊥⊥ ≠ x for x = {} in [0, {}]", l(x), l(a)));
        r.require(g.meet(x, xc) == Some(0), || format!("{} ∧ {}^⊥ ≠ 0 in [0, {}]", l(x), l(x), l(a)));
        r.require(g.join_within(x, xc, a) == Some(a), || {
            format!("{} ∨ {}^⊥ ≠ {} in [0, {}]", l(x), l(x), l(a), l(a))
        });
        for &y in &interval {
            if g.leq(x, y) {
                r.require(g.leq(comp(y), xc), || {
                    format!("{} ≤ {} but {}^⊥ ≰ {}^⊥ in [0, {}]", l(x), l(y), l(y), l(x), l(a))
                });
                // Orthomodular law y = x ∨ (y ∧ x^⊥).
                let ok = g
                    .meet(y, xc)
                    .and_then(|m| g.join_within(x, m, a))
                    .is_some_and(|j| j == y);
                r.require(ok, || {
                    format!(
                        "orthomodular law fails for {} ≤ {} in [0, {}]: {} ≠ {} ∨ ({} ∧ {}^⊥)",
                        l(x), l(y), l(a), l(y), l(x), l(y), l(x)
                    )
                });
            }
            if g.leq(y, xc) {
                r.require(g.join_within(x, y, a).is_some(), || {
                    format!("{} ∨ {} does not exist in [0, {}]", l(x), l(y), l(a))
                });
            }
        }
    }
    // Compatibility with smaller intervals and independence of the witness.
    for b in g.below(a) {
        for x in g.below(b) {
            let expected = g.meet(comp(x), b);
            r.require(g.complement(b, x) == expected, || {
                format!(
                    "compatibility: {}^⊥ in [0, {}] ≠ {}^⊥ in [0, {}] ∧ {}",
                    l(x), l(b), l(x), l(a), l(b)
                )
            });
        }
    }
    for &x in &interval {
        for &y in &interval {
            if g.orthogonal(x, y) {
                r.require(g.leq(y, comp(x)), || {
                    format!("{} ⟂ {} but {} ≰ {}^⊥ in [0, {}]", l(x), l(y), l(y), l(x), l(a))
                });
            }
        }
    }
    r
}

/// Orthoposet axioms, sups of orthogonal pairs and the orthomodular law in
/// every interval, plus compatibility of local complements and the
/// independence of orthogonality from the chosen upper bound. Intervals are
/// checked in parallel.
pub fn check_orthomodular(g: &FiniteGQL) -> Report {
    let per_interval: Vec<Report> = (0..g.len()).into_par_iter().map(|a| check_interval(g, a)).collect();
    let mut r = Report::new("orthomodular");
    for sub in &per_interval {
        r.absorb(sub);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{benzene, boolean};
    use crate::report::Status;

    #[test]
    fn boolean_algebras_pass() {
        for k in 0..=3 {
            let g = boolean(k);
            assert!(check_orthogonality_axioms(&g).is_pass());
            assert!(check_orthomodular(&g).is_pass(), "2^{k}");
        }
    }

    #[test]
    fn self_orthogonal_element_violates_axiom_three() {
        let g = boolean(1).with_orthogonality(&[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let r = check_orthogonality_axioms(&g);
        assert_eq!(r.status, Status::Fail);
        assert!(r.witnesses.iter().any(|w| w.starts_with("axiom 3")));
    }

    #[test]
    fn benzene_ring_is_not_orthomodular() {
        let g = benzene();
        assert!(check_orthogonality_axioms(&g).is_pass());
        let r = check_orthomodular(&g);
        assert_eq!(r.status, Status::Fail);
        assert!(r.witnesses.iter().any(|w| w.contains("orthomodular law fails for a ≤ b")));
    }
}
