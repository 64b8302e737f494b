use std::fmt::Write;

use sha2::{Digest, Sha256};

use super::FiniteGQL;

fn node_id(key: &str) -> String {
    let digest = Sha256::digest(key.as_bytes());
    let hex: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
    format!("n{hex}")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl FiniteGQL {
    /// Graphviz text of the Hasse diagram. Covering edges are solid and
    /// point upward; orthogonal pairs of nonzero elements are joined by
    /// dashed undirected edges. Node ids come from element keys, so the
    /// output does not depend on element order.
    pub fn to_dot(&self) -> String {
        let ids: Vec<String> = (0..self.len()).map(|a| node_id(self.key(a))).collect();
        let mut nodes: Vec<(String, String)> = (0..self.len())
            .map(|a| {
                let label = if a == 0 { "0" } else { self.label(a) };
                (ids[a].clone(), escape(label))
            })
            .collect();
        nodes.sort();
        let mut covers: Vec<(String, String)> =
            self.covers().into_iter().map(|(a, b)| (ids[a].clone(), ids[b].clone())).collect();
        covers.sort();
        let mut orth = Vec::new();
        for a in 1..self.len() {
            for b in (a + 1)..self.len() {
                if self.orthogonal(a, b) {
                    let (x, y) = (ids[a].clone(), ids[b].clone());
                    orth.push(if x <= y { (x, y) } else { (y, x) });
                }
            }
        }
        orth.sort();

        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
        for (id, label) in &nodes {
            writeln!(out, "  {id} [label=\"{label}\"];").unwrap();
        }
        for (a, b) in &covers {
            writeln!(out, "  {a} -> {b};").unwrap();
        }
        for (a, b) in &orth {
            writeln!(out, "  {a} -> {b} [style=dashed, dir=none, constraint=false];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::logic::{boolean, relabel};

    #[test]
    fn diamond_has_four_nodes_and_four_covers() {
        let dot = boolean(2).to_dot();
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot.matches("-> ").count() - dot.matches("dashed").count(), 4);
        assert_eq!(dot.matches("dashed").count(), 1);
    }

    #[test]
    fn output_is_independent_of_element_order() {
        let g = boolean(2);
        let h = relabel(&g, &[0, 2, 1, 3]);
        assert_eq!(g.to_dot(), h.to_dot());
    }
}
