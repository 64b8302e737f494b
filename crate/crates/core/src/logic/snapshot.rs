use rayon::prelude::*;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::calculus::{is_orthogonal, leq, meet, Tripotent};
use crate::error::{Error, Result};
use crate::kernel::ToleranceProfile;
use crate::models::{Payload, TripleElement, TripleModel};
use crate::report::Report;

use super::FiniteGQL;

pub const DEFAULT_CAP: usize = 512;

/// A finite logic whose elements are tripotents of one model, ordered by the
/// tripotent order, with local complements `x^{⊥_a} = a − x`.
#[derive(Debug, Clone)]
pub struct Snapshot {
    logic: FiniteGQL,
    tripotents: Vec<Tripotent>,
    tol: ToleranceProfile,
}

impl Snapshot {
    pub fn logic(&self) -> &FiniteGQL {
        &self.logic
    }

    pub fn into_logic(self) -> FiniteGQL {
        self.logic
    }

    pub fn tripotents(&self) -> &[Tripotent] {
        &self.tripotents
    }

    pub fn tripotent(&self, i: usize) -> &Tripotent {
        &self.tripotents[i]
    }

    pub fn len(&self) -> usize {
        self.tripotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tripotents.is_empty()
    }

    pub fn tolerance(&self) -> &ToleranceProfile {
        &self.tol
    }

    /// Index of the element within `eps_zero` of `x`.
    pub fn index_of(&self, x: &TripleElement) -> Option<usize> {
        find(&self.tripotents, x, &self.tol)
    }

    /// Compares the ambient tripotent meet of every pair with the meet in
    /// the finite order. Pairs whose ambient meet lies outside the snapshot
    /// are noted but do not fail.
    pub fn verify_meets(&self) -> Result<Report> {
        let n = self.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
        let results: Vec<Result<Option<String>>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let m = meet(&self.tripotents[a], &self.tripotents[b], &self.tol)?;
                let g = &self.logic;
                Ok(match (self.index_of(m.element()), g.meet(a, b)) {
                    (Some(i), Some(j)) if i == j => None,
                    (Some(i), found) => Some(format!(
                        "{} ∧ {}: ambient meet {} but finite meet {}",
                        g.label(a),
                        g.label(b),
                        g.label(i),
                        found.map_or("missing".to_string(), |j| g.label(j).to_string())
                    )),
                    (None, _) => None,
                })
            })
            .collect();
        let mut r = Report::new("snapshot-meets");
        for res in results {
            if let Some(w) = res? {
                r.fail(w);
            }
        }
        Ok(r)
    }

    pub fn to_json(&self) -> Value {
        self.logic.to_json()
    }
}

fn find(list: &[Tripotent], x: &TripleElement, tol: &ToleranceProfile) -> Option<usize> {
    list.iter().position(|t| t.element().distance(x) < tol.eps_zero)
}

fn fmt_number(v: f64) -> String {
    let r = (v * 1e3).round() / 1e3;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

/// A short human-readable label: rows separated by `;` for matrices,
/// `(a | λ)` for spin elements, `0` for zero.
pub(crate) fn element_label(x: &TripleElement, tol: &ToleranceProfile) -> String {
    if x.is_zero(tol) {
        return "0".into();
    }
    match x.payload() {
        Payload::Matrix(m) => {
            let rows: Vec<String> = m
                .row_iter()
                .map(|row| {
                    row.iter()
                        .map(|z| match (fmt_number(z.re), fmt_number(z.im)) {
                            (re, im) if im == "0" => re,
                            (re, im) if re == "0" => format!("{im}i"),
                            (re, im) if im.starts_with('-') => format!("{re}{im}i"),
                            (re, im) => format!("{re}+{im}i"),
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            format!("[{}]", rows.join("; "))
        }
        Payload::Spin(s) => {
            let a: Vec<String> = s.a.iter().map(|&v| fmt_number(v)).collect();
            format!("({} | {})", a.join(", "), fmt_number(s.lambda))
        }
    }
}

/// SHA-256 of the coordinates rounded to six decimals.
pub(crate) fn element_key(x: &TripleElement) -> String {
    let mut text = x.model().to_string();
    for v in x.to_coords().iter() {
        let r = (v * 1e6).round() as i64;
        text.push_str(&format!(",{r}"));
    }
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn common_model(seed: &[Tripotent]) -> Result<Option<TripleModel>> {
    let Some(first) = seed.first() else {
        return Ok(None);
    };
    let model = first.model();
    if let Some(other) = seed.iter().find(|t| t.model() != model) {
        return Err(Error::ModelMismatch {
            left: model.to_string(),
            right: other.model().to_string(),
        });
    }
    Ok(Some(model))
}

/// Builds the logic on a family already closed under local complements
/// (`b − a ∈ family` whenever `a ≤ b`); `0` is added if absent.
pub fn snapshot_of_family(family: &[Tripotent], tol: &ToleranceProfile) -> Result<Snapshot> {
    let model = common_model(family)?;
    let mut elems = Vec::with_capacity(family.len() + 1);
    if let Some(model) = model {
        elems.push(Tripotent::zero(model));
    }
    for t in family {
        if find(&elems, t.element(), tol).is_none() {
            elems.push(t.clone());
        }
    }
    assemble(elems, tol)
}

/// Closes `seed` under `0`, local complements `b − a` for `a ≤ b`, and sums
/// `a + b` of orthogonal pairs, then builds the logic. Elements within
/// `eps_zero` of each other are identified.
pub fn snapshot_from_tripotents(seed: &[Tripotent], tol: &ToleranceProfile, cap: usize) -> Result<Snapshot> {
    let Some(model) = common_model(seed)? else {
        return assemble(Vec::new(), tol);
    };
    let mut elems = vec![Tripotent::zero(model)];
    let push = |elems: &mut Vec<Tripotent>, x: TripleElement| -> Result<()> {
        if find(elems, &x, tol).is_none() {
            elems.push(Tripotent::new(x, tol)?);
            if elems.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
        }
        Ok(())
    };
    for t in seed {
        push(&mut elems, t.element().clone())?;
    }
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            let (a, b) = (elems[i].clone(), elems[j].clone());
            if leq(&a, &b, tol)? {
                push(&mut elems, b.element().sub(a.element())?)?;
            }
            if leq(&b, &a, tol)? {
                push(&mut elems, a.element().sub(b.element())?)?;
            }
            if is_orthogonal(&a, &b, tol)? {
                push(&mut elems, a.element().add(b.element())?)?;
            }
        }
        i += 1;
    }
    assemble(elems, tol)
}

fn assemble(elems: Vec<Tripotent>, tol: &ToleranceProfile) -> Result<Snapshot> {
    if elems.is_empty() {
        let logic = FiniteGQL::new(vec!["0".into()], &[], &[(0, 0, 0)])?;
        return Ok(Snapshot {
            logic,
            tripotents: Vec::new(),
            tol: *tol,
        });
    }
    let n = elems.len();
    let rows: Vec<Result<Vec<bool>>> = (0..n)
        .into_par_iter()
        .map(|a| (0..n).map(|b| leq(&elems[a], &elems[b], tol)).collect())
        .collect();
    let mut order = Vec::new();
    let mut comps = Vec::new();
    for (a, row) in rows.into_iter().enumerate() {
        for (b, below) in row?.into_iter().enumerate() {
            if !below {
                continue;
            }
            order.push((a, b));
            let c = elems[b].element().sub(elems[a].element())?;
            let k = find(&elems, &c, tol).ok_or_else(|| {
                Error::InvalidPoset(format!(
                    "local complement {} of {} in [0, {}] is missing",
                    element_label(&c, tol),
                    element_label(elems[a].element(), tol),
                    element_label(elems[b].element(), tol)
                ))
            })?;
            comps.push((b, a, k));
        }
    }
    let labels = elems.iter().map(|t| element_label(t.element(), tol)).collect();
    let keys = elems.iter().map(|t| element_key(t.element())).collect();
    let payloads = elems.iter().map(|t| Some(t.element().to_json())).collect();
    let logic = FiniteGQL::new(labels, &order, &comps)?.with_payloads(keys, payloads)?;
    Ok(Snapshot {
        logic,
        tripotents: elems,
        tol: *tol,
    })
}
