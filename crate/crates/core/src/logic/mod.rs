//! Finite generalized quantum logics.
//!
//! A [`FiniteGQL`] is a finite poset with least element `0` (always index
//! `0`), together with a local orthocomplementation `x ↦ x^{⊥_a}` on every
//! interval `[0, a]`. Orthogonality is derived: `a ⟂ b` iff some `v ≥ a, b`
//! has `b ≤ a^{⊥_v}`.

mod checks;
mod dot;
mod examples;
mod morphism;
mod snapshot;

pub use checks::{check_orthogonality_axioms, check_orthomodular};
pub use examples::{
    benzene, boolean, find_orthoisomorphisms, horizontal_sum, product, random_unital_logic,
    relabel,
};
pub use morphism::{
    check_order_preservation, is_ql_morphism, is_orthoisomorphism, verify_poset1, LogicMap,
};
pub use snapshot::{snapshot_from_tripotents, snapshot_of_family, Snapshot, DEFAULT_CAP};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGQL {
    labels: Vec<String>,
    keys: Vec<String>,
    payloads: Vec<Option<Value>>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
    complement: Vec<Vec<Option<usize>>>,
    orth: Vec<FixedBitSet>,
}

impl FiniteGQL {
    /// Builds a logic from generating order pairs `(lower, upper)` (closed
    /// reflexively and transitively) and local complements `(a, x, x^{⊥_a})`.
    pub fn new(
        labels: Vec<String>,
        order: &[(usize, usize)],
        complements: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = labels.len();
        let (down, up) = closed_order(&labels, order)?;
        let mut complement = vec![vec![None; n]; n];
        for &(a, x, y) in complements {
            if a >= n || x >= n || y >= n {
                return Err(Error::InvalidPoset(format!("complement ({a}, {x}, {y}) out of range")));
            }
            if !down[a].contains(x) || !down[a].contains(y) {
                return Err(Error::InvalidPoset(format!(
                    "complement of {} in [0, {}] leaves the interval",
                    labels[x], labels[a]
                )));
            }
            complement[a][x] = Some(y);
        }
        for a in 0..n {
            for x in down[a].ones() {
                if complement[a][x].is_none() {
                    return Err(Error::InvalidPoset(format!(
                        "missing complement of {} in [0, {}]",
                        labels[x], labels[a]
                    )));
                }
            }
        }
        let mut g = Self {
            keys: labels.clone(),
            payloads: vec![None; n],
            labels,
            down,
            up,
            complement,
            orth: Vec::new(),
        };
        g.orth = g.derived_orthogonality();
        Ok(g)
    }

    /// Unital logic from a global orthocomplementation; local complements
    /// are `x^{⊥_a} = a ∧ x^⊥`.
    pub fn from_unital_orthoposet(
        labels: Vec<String>,
        order: &[(usize, usize)],
        complement: &[usize],
    ) -> Result<Self> {
        let n = labels.len();
        if complement.len() != n {
            return Err(Error::InvalidPoset("complement table has the wrong length".into()));
        }
        let (down, _) = closed_order(&labels, order)?;
        if !(0..n).any(|a| down[a].count_ones(..) == n) {
            return Err(Error::NotUnital("no greatest element".into()));
        }
        let mut comps = Vec::new();
        for a in 0..n {
            for x in down[a].ones() {
                let mut common = down[a].clone();
                common.intersect_with(&down[complement[x]]);
                let y = common.ones().find(|&c| common.is_subset(&down[c])).ok_or_else(|| {
                    Error::InvalidPoset(format!("{} ∧ {}^⊥ does not exist", labels[a], labels[x]))
                })?;
                comps.push((a, x, y));
            }
        }
        Self::new(labels, order, &comps)
    }

    fn derived_orthogonality(&self) -> Vec<FixedBitSet> {
        let n = self.len();
        let mut orth = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in orth.iter_mut().enumerate() {
            for b in 0..n {
                let mut common = self.up[a].clone();
                common.intersect_with(&self.up[b]);
                let found = common
                    .ones()
                    .any(|v| matches!(self.complement[v][a], Some(c) if self.down[c].contains(b)));
                if found {
                    row.insert(b);
                }
            }
        }
        orth
    }

    /// Replaces the derived orthogonality with an explicit relation, for
    /// testing relations that are not induced by the order.
    pub fn with_orthogonality(mut self, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = self.len();
        let mut orth = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("orthogonal pair ({a}, {b}) out of range")));
            }
            orth[a].insert(b);
        }
        self.orth = orth;
        Ok(self)
    }

    /// Attaches stable hash keys (used for DOT node ids) and payloads.
    pub fn with_payloads(mut self, keys: Vec<String>, payloads: Vec<Option<Value>>) -> Result<Self> {
        if keys.len() != self.len() || payloads.len() != self.len() {
            return Err(Error::InvalidPoset("payload table has the wrong length".into()));
        }
        self.keys = keys;
        self.payloads = payloads;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn key(&self, a: usize) -> &str {
        &self.keys[a]
    }

    pub fn payload(&self, a: usize) -> Option<&Value> {
        self.payloads[a].as_ref()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    pub fn below(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.down[a].ones()
    }

    pub fn above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[a].ones()
    }

    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.orth[a].contains(b)
    }

    /// `x^{⊥_a}` for `x ≤ a`.
    pub fn complement(&self, a: usize, x: usize) -> Option<usize> {
        self.complement[a][x]
    }

    fn least_of(&self, set: &FixedBitSet) -> Option<usize> {
        set.ones().find(|&c| set.is_subset(&self.up[c]))
    }

    fn greatest_of(&self, set: &FixedBitSet) -> Option<usize> {
        set.ones().find(|&c| set.is_subset(&self.down[c]))
    }

    /// Greatest lower bound.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let mut s = self.down[a].clone();
        s.intersect_with(&self.down[b]);
        self.greatest_of(&s)
    }

    /// Least upper bound.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut s = self.up[a].clone();
        s.intersect_with(&self.up[b]);
        self.least_of(&s)
    }

    /// Least upper bound inside `[0, top]`.
    pub fn join_within(&self, a: usize, b: usize, top: usize) -> Option<usize> {
        let mut s = self.up[a].clone();
        s.intersect_with(&self.up[b]);
        s.intersect_with(&self.down[top]);
        self.least_of(&s)
    }

    /// Greatest element, if any.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.down[a].count_ones(..) == self.len())
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            for a in self.down[b].ones() {
                if a == b {
                    continue;
                }
                let between = self.down[b]
                    .ones()
                    .any(|c| c != a && c != b && self.down[c].contains(a));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let elements: Vec<ElementJson> = (0..self.len())
            .map(|i| ElementJson {
                id: i,
                label: self.labels[i].clone(),
                payload: self.payloads[i].clone(),
            })
            .collect();
        let mut order = Vec::new();
        for b in 0..self.len() {
            for a in self.down[b].ones() {
                if a != b {
                    order.push([a, b]);
                }
            }
        }
        let mut local_complements = Vec::new();
        for a in 0..self.len() {
            for x in self.down[a].ones() {
                if let Some(y) = self.complement[a][x] {
                    local_complements.push([a, x, y]);
                }
            }
        }
        serde_json::to_value(GqlJson {
            elements,
            order,
            local_complements,
        })
        .expect("logic json is serializable")
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let raw: GqlJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let n = raw.elements.len();
        let mut labels = vec![String::new(); n];
        let mut payloads = vec![None; n];
        let mut seen = vec![false; n];
        for e in raw.elements {
            if e.id >= n || seen[e.id] {
                return Err(Error::Parse(format!("element ids must be 0..{n} without repeats")));
            }
            seen[e.id] = true;
            labels[e.id] = e.label;
            payloads[e.id] = e.payload;
        }
        let order: Vec<(usize, usize)> = raw.order.iter().map(|p| (p[0], p[1])).collect();
        let comps: Vec<(usize, usize, usize)> = raw.local_complements.iter().map(|t| (t[0], t[1], t[2])).collect();
        let g = Self::new(labels.clone(), &order, &comps)?;
        g.with_payloads(labels, payloads)
    }
}

/// Down-sets and up-sets of the reflexive-transitive closure of `order`,
/// with index 0 as the least element, checking antisymmetry.
fn closed_order(labels: &[String], order: &[(usize, usize)]) -> Result<(Vec<FixedBitSet>, Vec<FixedBitSet>)> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::InvalidPoset("a logic needs at least the element 0".into()));
    }
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for (a, d) in down.iter_mut().enumerate() {
        d.insert(a);
        d.insert(0);
    }
    for &(x, a) in order {
        if x >= n || a >= n {
            return Err(Error::InvalidPoset(format!("order pair ({x}, {a}) out of range")));
        }
        down[a].insert(x);
    }
    for k in 0..n {
        let dk = down[k].clone();
        for row in down.iter_mut() {
            if row.contains(k) {
                row.union_with(&dk);
            }
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if down[a].contains(b) && down[b].contains(a) {
                return Err(Error::InvalidPoset(format!(
                    "{} and {} are mutually below each other",
                    labels[a], labels[b]
                )));
            }
        }
    }
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for (a, row) in down.iter().enumerate() {
        for x in row.ones() {
            up[x].insert(a);
        }
    }
    Ok((down, up))
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    id: usize,
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    payload: Option<Value>,
}

#[derive(Serialize, Deserialize)]
struct GqlJson {
    elements: Vec<ElementJson>,
    #[serde(default)]
    order: Vec<[usize; 2]>,
    #[serde(default)]
    local_complements: Vec<[usize; 3]>,
}
