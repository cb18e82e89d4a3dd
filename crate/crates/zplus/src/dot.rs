//! Graphviz export of the specialization preorder.

use zplus_core::topology::ClosedSetFamily;
use zplus_core::ZPlusRing;

fn node(ring: &ZPlusRing, family: &ClosedSetFamily, point: usize) -> String {
    format!("\"{{{}}}\"", ring.subset_labels(&family.space[point]).join(","))
}

/// One node per prime, named by its label list, and an edge `P -> Q`
/// whenever `Q` lies in the closure of `P`.
pub fn specialization_dot(ring: &ZPlusRing, family: &ClosedSetFamily) -> String {
    let mut out = format!("digraph \"{}-{}\" {{\n", ring.name().replace('"', "'"), family.style.as_str());
    for p in 0..family.points() {
        out.push_str(&format!("  {};\n", node(ring, family, p)));
    }
    for (p, q) in family.specialization_edges() {
        out.push_str(&format!("  {} -> {};\n", node(ring, family, p), node(ring, family, q)));
    }
    out.push_str("}\n");
    out
}
