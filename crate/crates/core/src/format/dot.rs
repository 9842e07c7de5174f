use crate::semantics::KripkeModel;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz digraph: one node per world labelled with its true atoms, the
/// root drawn as a double circle.
pub fn model_to_dot(m: &KripkeModel, root: &str) -> String {
    let mut out = String::from("digraph countermodel {\n  node [shape=circle];\n");
    for w in m.worlds() {
        let atoms = m
            .true_atoms(w)
            .map(|a| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
            .unwrap_or_default();
        let shape = if w == root { ", shape=doublecircle" } else { "" };
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\\n{{{}}}\"{shape}];\n",
            escape(w),
            escape(w),
            escape(&atoms)
        ));
    }
    for (a, b) in m.edges() {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", escape(a), escape(b)));
    }
    out.push_str("}\n");
    out
}
