//! Graphviz export of the node/symbol incidence graph.

use std::fmt::Write;

use crate::code::FrCode;

/// Render the bipartite node/symbol graph. Resolution classes become clusters.
pub fn to_dot(code: &FrCode) -> String {
    let mut out = String::from("graph fr_code {\n  node [fontname=\"Helvetica\"];\n");
    let labels = code.meta.labels.as_ref();
    let node_line = |i: usize| format!("  v{i} [shape=box, label=\"V{}\"];\n", i + 1);
    match code.resolution() {
        Some(classes) => {
            for (c, class) in classes.iter().enumerate() {
                let _ = writeln!(out, "  subgraph cluster_{c} {{\n    label=\"class {}\";", c + 1);
                for &i in class {
                    out.push_str("  ");
                    out.push_str(&node_line(i));
                }
                out.push_str("  }\n");
            }
        }
        None => (0..code.n()).for_each(|i| out.push_str(&node_line(i))),
    }
    for s in 0..code.theta() {
        let label = labels.and_then(|l| l.get(s)).cloned().unwrap_or_else(|| s.to_string());
        let _ = writeln!(out, "  s{s} [shape=circle, label=\"{label}\"];");
    }
    for (i, node) in code.nodes().iter().enumerate() {
        for &s in node {
            let _ = writeln!(out, "  v{i} -- s{s};");
        }
    }
    out.push_str("}\n");
    out
}
