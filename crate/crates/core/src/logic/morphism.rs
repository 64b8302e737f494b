use crate::error::{Error, Result};
use crate::report::Report;

use super::FiniteGQL;

/// A total map between the elements of two finite logics.
#[derive(Debug, Clone, Copy)]
pub struct LogicMap<'a> {
    pub source: &'a FiniteGQL,
    pub target: &'a FiniteGQL,
    pub assignment: &'a [usize],
}

impl<'a> LogicMap<'a> {
    pub fn new(source: &'a FiniteGQL, target: &'a FiniteGQL, assignment: &'a [usize]) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::InvalidPoset(format!(
                "assignment covers {} of {} elements",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.len()) {
            return Err(Error::InvalidPoset(format!("assignment value {bad} out of range")));
        }
        Ok(Self {
            source,
            target,
            assignment,
        })
    }

    fn at(&self, a: usize) -> usize {
        self.assignment[a]
    }

    fn src(&self, a: usize) -> &str {
        self.source.label(a)
    }

    fn dst(&self, a: usize) -> &str {
        self.target.label(self.at(a))
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut hit = vec![false; self.target.len()];
        for &t in self.assignment {
            if hit[t] {
                return false;
            }
            hit[t] = true;
        }
        true
    }
}

/// `φ(0) = 0`, orthogonality preservation, and `φ(a ∨ b) = φ(a) ∨ φ(b)` on
/// orthogonal pairs.
pub fn is_ql_morphism(m: &LogicMap) -> Report {
    let mut r = Report::new("ql-morphism");
    r.require(m.at(0) == 0, || format!("φ(0) = {} ≠ 0", m.dst(0)));
    let n = m.source.len();
    for a in 0..n {
        for b in 0..n {
            if !m.source.orthogonal(a, b) {
                continue;
            }
            r.require(m.target.orthogonal(m.at(a), m.at(b)), || {
                format!("{} ⟂ {} but φ({}) = {} not ⟂ φ({}) = {}", m.src(a), m.src(b), m.src(a), m.dst(a), m.src(b), m.dst(b))
            });
            let Some(j) = m.source.join(a, b) else {
                continue;
            };
            let image_join = m.target.join(m.at(a), m.at(b));
            r.require(image_join == Some(m.at(j)), || match image_join {
                Some(t) => format!(
                    "φ({} ∨ {}) = {} ≠ {} = φ({}) ∨ φ({})",
                    m.src(a), m.src(b), m.dst(j), m.target.label(t), m.src(a), m.src(b)
                ),
                None => format!("φ({}) ∨ φ({}) does not exist", m.src(a), m.src(b)),
            });
        }
    }
    r
}

/// `a ⟂ b ⟺ φ(a) ⟂ φ(b)` for a bijection `φ`.
pub fn is_orthoisomorphism(m: &LogicMap) -> Result<Report> {
    if !m.is_bijective() {
        return Err(Error::NotBijective(format!(
            "{} source elements onto {} target elements",
            m.source.len(),
            m.target.len()
        )));
    }
    let mut r = Report::new("orthoisomorphism");
    let n = m.source.len();
    for a in 0..n {
        for b in 0..n {
            let s = m.source.orthogonal(a, b);
            let t = m.target.orthogonal(m.at(a), m.at(b));
            r.require(s == t, || {
                format!(
                    "{} ⟂ {} is {s} but φ({}) ⟂ φ({}) is {t}",
                    m.src(a), m.src(b), m.src(a), m.src(b)
                )
            });
        }
    }
    Ok(r)
}

/// `a ≤ b ⟺ φ(a) ≤ φ(b)`.
pub fn check_order_preservation(m: &LogicMap) -> Report {
    let mut r = Report::new("order-preservation");
    let n = m.source.len();
    for a in 0..n {
        for b in 0..n {
            let s = m.source.leq(a, b);
            let t = m.target.leq(m.at(a), m.at(b));
            r.require(s == t, || {
                format!(
                    "{} ≤ {} is {s} but {} ≤ {} is {t}",
                    m.src(a), m.src(b), m.dst(a), m.dst(b)
                )
            });
        }
    }
    r
}

/// The conclusion for an orthoisomorphism between unital logics: an order
/// isomorphism with `φ(a^⊥) = φ(a)^⊥`.
pub fn verify_poset1(m: &LogicMap) -> Result<Report> {
    let ts = m
        .source
        .top()
        .ok_or_else(|| Error::NotUnital("source has no greatest element".into()))?;
    let tt = m
        .target
        .top()
        .ok_or_else(|| Error::NotUnital("target has no greatest element".into()))?;
    let mut r = Report::new("orthoisomorphism-conclusion");
    r.absorb(&check_order_preservation(m));
    r.require(m.at(ts) == tt, || format!("φ(1) = {} ≠ 1", m.dst(ts)));
    for a in 0..m.source.len() {
        let ac = m.source.complement(ts, a).expect("complements are total");
        let image_c = m.target.complement(tt, m.at(a)).expect("complements are total");
        r.require(m.at(ac) == image_c, || {
            format!(
                "φ({}^⊥) = {} ≠ {} = φ({})^⊥",
                m.src(a), m.dst(ac), m.target.label(image_c), m.src(a)
            )
        });
    }
    Ok(r)
}
