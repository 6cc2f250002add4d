use std::fmt::Write;

use crate::canonical::CanonicalSet;
use crate::graph::Instance;

/// Graphviz rendering: the instance, then one cluster per tree. Roots are
/// drawn as double circles. Tree arc IDs must refer to `inst`.
pub fn export_dot(inst: &Instance, cs: Option<&CanonicalSet>) -> String {
    let mut s = String::from("digraph cover {\n");
    let _ = writeln!(s, "  subgraph cluster_instance {{\n    label=\"instance\";");
    for v in inst.vertices() {
        let shape = if inst.root_index(v).is_some() { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "    n{} [label=\"{}\", shape={shape}];", v.0, v.0);
    }
    for a in inst.arcs() {
        let _ = writeln!(s, "    n{} -> n{} [label=\"{}\"];", a.tail.0, a.head.0, a.id);
    }
    s.push_str("  }\n");
    if let Some(cs) = cs {
        let mut seen = vec![0usize; inst.root_count()];
        for (t, tree) in cs.trees.iter().enumerate() {
            let root = inst.roots()[tree.root_index].vertex;
            seen[tree.root_index] += 1;
            let _ = writeln!(
                s,
                "  subgraph cluster_t{t} {{\n    label=\"root {} tree {}\";",
                root.0, seen[tree.root_index]
            );
            let mut nodes: Vec<usize> = vec![root.0];
            for &a in &tree.arcs {
                let arc = inst.arc(a);
                nodes.push(arc.tail.0);
                nodes.push(arc.head.0);
            }
            nodes.sort_unstable();
            nodes.dedup();
            for v in nodes {
                let _ = writeln!(s, "    t{t}_n{v} [label=\"{v}\"];");
            }
            for &a in &tree.arcs {
                let arc = inst.arc(a);
                let _ = writeln!(s, "    t{t}_n{} -> t{t}_n{} [label=\"{}\"];", arc.tail.0, arc.head.0, a);
            }
            s.push_str("  }\n");
        }
    }
    s.push_str("}\n");
    s
}
