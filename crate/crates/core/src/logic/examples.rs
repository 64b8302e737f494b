use rand::seq::SliceRandom;
use rand::Rng;

use crate::random::SampleRng;

use super::FiniteGQL;

fn set_label(mask: usize, k: usize) -> String {
    if mask == 0 {
        return "0".into();
    }
    let items: Vec<String> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// The Boolean algebra `2^k` of subsets of `{1, …, k}` with set-difference
/// complements.
pub fn boolean(k: usize) -> FiniteGQL {
    let n = 1usize << k;
    let labels = (0..n).map(|m| set_label(m, k)).collect();
    let mut order = Vec::new();
    let mut comps = Vec::new();
    for a in 0..n {
        for x in 0..n {
            if x & a == x {
                order.push((x, a));
                comps.push((a, x, a & !x));
            }
        }
    }
    FiniteGQL::new(labels, &order, &comps).expect("Boolean algebras are well formed")
}

/// The six-element orthocomplemented lattice `0 < a < b < 1`,
/// `0 < b' < a' < 1`, which is not orthomodular.
pub fn benzene() -> FiniteGQL {
    let labels = ["0", "a", "b", "b'", "a'", "1"].map(String::from).to_vec();
    let order = [(1, 2), (3, 4), (2, 5), (4, 5)];
    let complement = [5, 4, 3, 2, 1, 0];
    FiniteGQL::from_unital_orthoposet(labels, &order, &complement).expect("benzene ring is an orthoposet")
}

/// Horizontal sum of Boolean blocks `2^{k₁}, 2^{k₂}, …` glued at `0` and `1`.
pub fn horizontal_sum(blocks: &[usize]) -> FiniteGQL {
    let mut labels = vec!["0".to_string(), "1".to_string()];
    let mut complement = vec![1usize, 0];
    let mut order = vec![(0, 1)];
    for (b, &k) in blocks.iter().enumerate() {
        let full = (1usize << k) - 1;
        let base = labels.len();
        let index = |mask: usize| base + mask - 1;
        for mask in 1..full {
            labels.push(format!("{}{}", (b'A' + b as u8) as char, set_label(mask, k)));
            complement.push(index(full & !mask));
            order.push((index(mask), 1));
            for sub in 1..mask {
                if sub & mask == sub {
                    order.push((index(sub), index(mask)));
                }
            }
        }
    }
    FiniteGQL::from_unital_orthoposet(labels, &order, &complement).expect("horizontal sums are orthoposets")
}

/// Cartesian product of two unital logics.
pub fn product(g: &FiniteGQL, h: &FiniteGQL) -> FiniteGQL {
    let (tg, th) = (g.top().expect("unital"), h.top().expect("unital"));
    let (n, m) = (g.len(), h.len());
    let idx = |i: usize, j: usize| i * m + j;
    let mut labels = Vec::with_capacity(n * m);
    let mut complement = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            labels.push(format!("({},{})", g.label(i), h.label(j)));
            complement.push(idx(g.complement(tg, i).unwrap(), h.complement(th, j).unwrap()));
        }
    }
    let mut order = Vec::new();
    for i in 0..n {
        for j in 0..m {
            for a in g.below(i) {
                for b in h.below(j) {
                    order.push((idx(a, b), idx(i, j)));
                }
            }
        }
    }
    FiniteGQL::from_unital_orthoposet(labels, &order, &complement).expect("products of logics are logics")
}

/// Renames element `i` to `perm[i]`; `perm[0]` must be `0`.
pub fn relabel(g: &FiniteGQL, perm: &[usize]) -> FiniteGQL {
    let n = g.len();
    assert_eq!(perm.len(), n);
    assert_eq!(perm[0], 0, "the least element keeps index 0");
    let mut labels = vec![String::new(); n];
    let mut keys = vec![String::new(); n];
    let mut payloads = vec![None; n];
    for i in 0..n {
        labels[perm[i]] = g.label(i).to_string();
        keys[perm[i]] = g.key(i).to_string();
        payloads[perm[i]] = g.payload(i).cloned();
    }
    let mut order = Vec::new();
    let mut comps = Vec::new();
    for a in 0..n {
        for x in g.below(a) {
            order.push((perm[x], perm[a]));
            comps.push((perm[a], perm[x], perm[g.complement(a, x).unwrap()]));
        }
    }
    FiniteGQL::new(labels, &order, &comps)
        .and_then(|r| r.with_payloads(keys, payloads))
        .expect("relabelling preserves well-formedness")
}

/// A random unital logic: a horizontal sum of one to three Boolean blocks,
/// sometimes multiplied by `2¹`, with shuffled element indices.
pub fn random_unital_logic(rng: &mut SampleRng) -> FiniteGQL {
    let blocks: Vec<usize> = (0..rng.random_range(1..=3)).map(|_| rng.random_range(2..=3)).collect();
    let mut g = horizontal_sum(&blocks);
    if g.len() <= 12 && rng.random_bool(0.4) {
        g = product(&g, &boolean(1));
    }
    let mut rest: Vec<usize> = (1..g.len()).collect();
    rest.shuffle(rng);
    let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
    relabel(&g, &perm)
}

/// Up to `limit` bijections `g → h` preserving orthogonality in both
/// directions, by backtracking.
pub fn find_orthoisomorphisms(g: &FiniteGQL, h: &FiniteGQL, limit: usize) -> Vec<Vec<usize>> {
    let n = g.len();
    if n != h.len() || limit == 0 {
        return Vec::new();
    }
    let degree = |l: &FiniteGQL, a: usize| (0..l.len()).filter(|&b| l.orthogonal(a, b)).count();
    let dg: Vec<usize> = (0..n).map(|a| degree(g, a)).collect();
    let dh: Vec<usize> = (0..n).map(|a| degree(h, a)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| (std::cmp::Reverse(dg[a]), a));

    struct Search<'a> {
        g: &'a FiniteGQL,
        h: &'a FiniteGQL,
        dg: Vec<usize>,
        dh: Vec<usize>,
        order: Vec<usize>,
        assignment: Vec<Option<usize>>,
        used: Vec<bool>,
        found: Vec<Vec<usize>>,
        limit: usize,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize) {
            if self.found.len() >= self.limit {
                return;
            }
            if depth == self.order.len() {
                self.found.push(self.assignment.iter().map(|x| x.unwrap()).collect());
                return;
            }
            let a = self.order[depth];
            for t in 0..self.h.len() {
                if self.used[t] || self.dh[t] != self.dg[a] {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&b| {
                    let s = self.assignment[b].unwrap();
                    self.g.orthogonal(a, b) == self.h.orthogonal(t, s)
                }) && self.g.orthogonal(a, a) == self.h.orthogonal(t, t);
                if !consistent {
                    continue;
                }
                self.assignment[a] = Some(t);
                self.used[t] = true;
                self.run(depth + 1);
                self.assignment[a] = None;
                self.used[t] = false;
            }
        }
    }

    let mut s = Search {
        g,
        h,
        dg,
        dh,
        order,
        assignment: vec![None; n],
        used: vec![false; n],
        found: Vec::new(),
        limit,
    };
    s.run(0);
    s.found
}
