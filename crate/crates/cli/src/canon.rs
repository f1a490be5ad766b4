//! Canonical form and serializer. Serialization always emits the canonical
//! form: blocks sorted by (kind, name), members sorted, single-space
//! separators, newline-terminated items. Parsing the output of `serialize`
//! yields the canonicalized document, so serialize-parse-serialize is a
//! fixpoint after one round.

use crate::ast::*;

/// Returns the canonical equivalent of a document: sorted blocks, sorted
/// members, exact duplicates removed. Resolution-level validity is not
/// required; canonicalization is purely syntactic.
pub fn canonical(document: &Document) -> Document {
    let mut doc = document.clone();
    for block in &mut doc.blocks {
        canonicalize_block(block);
    }
    doc.blocks
        .sort_by(|x, y| (x.kind(), x.name()).cmp(&(y.kind(), y.name())));
    doc.blocks.dedup();
    doc
}

fn sort_dedup<T: Ord>(items: &mut Vec<T>) {
    items.sort();
    items.dedup();
}

fn canonicalize_block(block: &mut Block) {
    match block {
        Block::Category(def) => {
            sort_dedup(&mut def.objects);
            def.arrows.sort_by(|x, y| {
                (&x.name, &x.src, &x.tgt).cmp(&(&y.name, &y.src, &y.tgt))
            });
            def.arrows.dedup();
            sort_dedup(&mut def.relations);
            if let Some(table) = &mut def.table {
                sort_dedup(&mut table.identities);
                sort_dedup(&mut table.composites);
            }
        }
        Block::Diagram(def) => {
            sort_dedup(&mut def.nodes);
            def.edges.sort_by(|x, y| {
                (&x.name, &x.src, &x.tgt).cmp(&(&y.name, &y.src, &y.tgt))
            });
            def.edges.dedup();
            for (_, elems) in &mut def.sets {
                sort_dedup(elems);
            }
            sort_dedup(&mut def.sets);
            for (_, assigns) in &mut def.maps {
                sort_dedup(assigns);
            }
            sort_dedup(&mut def.maps);
        }
        Block::Cocone(def) => {
            sort_dedup(&mut def.vertex);
            for (_, assigns) in &mut def.legs {
                sort_dedup(assigns);
            }
            sort_dedup(&mut def.legs);
        }
        Block::Poset(def) => {
            if let PosetBody::Extensional { carrier, leq } = &mut def.body {
                sort_dedup(carrier);
                sort_dedup(leq);
            }
        }
        Block::Grid(def) => {
            def.cells.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        }
        Block::Cube(def) => {
            def.faces.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        }
        Block::Message(_) => {}
        Block::Network(def) => {
            sort_dedup(&mut def.servers);
            sort_dedup(&mut def.links);
        }
    }
}

/// Renders the canonical form of a document. The empty document renders as
/// the empty string.
pub fn serialize(document: &Document) -> String {
    let doc = canonical(document);
    let mut out = String::new();
    for block in &doc.blocks {
        render_block(&mut out, block);
    }
    out
}

fn render_block(out: &mut String, block: &Block) {
    match block {
        Block::Category(def) => {
            out.push_str(&format!("category {} {{\n", def.name));
            if !def.objects.is_empty() {
                out.push_str(&format!("  objects {};\n", def.objects.join(" ")));
            }
            for a in &def.arrows {
                out.push_str(&format!("  arrows {}: {} -> {};\n", a.name, a.src, a.tgt));
            }
            for (lhs, rhs) in &def.relations {
                out.push_str(&format!("  relations {lhs} = {rhs};\n"));
            }
            if let Some(table) = &def.table {
                out.push_str("  table {\n");
                for (obj, arrow) in &table.identities {
                    out.push_str(&format!("    identity {obj} = {arrow};\n"));
                }
                for ((f, g), h) in &table.composites {
                    out.push_str(&format!("    compose {f} {g} = {h};\n"));
                }
                out.push_str("  }\n");
            }
            out.push_str("}\n");
        }
        Block::Diagram(def) => {
            out.push_str(&format!("diagram {} over shape {{\n", def.name));
            if !def.nodes.is_empty() {
                out.push_str(&format!("  nodes {};\n", def.nodes.join(" ")));
            }
            for e in &def.edges {
                out.push_str(&format!("  edge {}: {} -> {};\n", e.name, e.src, e.tgt));
            }
            out.push_str("} sets {\n");
            for (node, elems) in &def.sets {
                out.push_str(&format!("  {} = {};\n", node, render_set(elems)));
            }
            out.push_str("} maps {\n");
            for (edge, assigns) in &def.maps {
                out.push_str(&format!("  {}: {};\n", edge, render_assigns(assigns)));
            }
            out.push_str("}\n");
        }
        Block::Cocone(def) => {
            out.push_str(&format!("cocone {} over {} {{\n", def.name, def.diagram));
            out.push_str(&format!("  vertex = {};\n", render_set(&def.vertex)));
            for (node, assigns) in &def.legs {
                out.push_str(&format!("  leg {}: {};\n", node, render_assigns(assigns)));
            }
            out.push_str("}\n");
        }
        Block::Poset(def) => {
            out.push_str(&format!("poset {} {{\n", def.name));
            match &def.body {
                PosetBody::Divisibility { lo, hi } => {
                    out.push_str(&format!("  divisibility {lo} .. {hi};\n"));
                }
                PosetBody::Numeric { lo, hi } => {
                    out.push_str(&format!("  numeric {lo} .. {hi};\n"));
                }
                PosetBody::Extensional { carrier, leq } => {
                    out.push_str(&format!("  carrier = {};\n", render_set(carrier)));
                    for (a, b) in leq {
                        out.push_str(&format!("  leq {a} {b};\n"));
                    }
                }
            }
            out.push_str("}\n");
        }
        Block::Grid(def) => {
            out.push_str(&format!("grid {} over {} {{\n", def.name, def.category));
            if let Some(rows) = def.rows {
                out.push_str(&format!("  rows {rows};\n"));
            }
            if let Some(cols) = def.cols {
                out.push_str(&format!("  cols {cols};\n"));
            }
            for (r, c, spec) in &def.cells {
                out.push_str(&format!("  cell {r} {c} = {};\n", render_cell(spec)));
            }
            out.push_str("}\n");
        }
        Block::Cube(def) => {
            out.push_str(&format!("cube {} over {} {{\n", def.name, def.category));
            for (direction, side, spec) in &def.faces {
                out.push_str(&format!(
                    "  face {direction} {side} = {};\n",
                    render_cell(spec)
                ));
            }
            out.push_str("}\n");
        }
        Block::Message(def) => {
            out.push_str(&format!("message {} {{\n", def.name));
            out.push_str(&format!("  bytes \"{}\";\n", escape(&def.bytes)));
            out.push_str("}\n");
        }
        Block::Network(def) => {
            out.push_str(&format!("network {} {{\n", def.name));
            if !def.servers.is_empty() {
                out.push_str(&format!("  servers {};\n", def.servers.join(" ")));
            }
            if let Some(source) = &def.source {
                out.push_str(&format!("  source {source};\n"));
            }
            if let Some(receiver) = &def.receiver {
                out.push_str(&format!("  receiver {receiver};\n"));
            }
            for (from, to) in &def.links {
                out.push_str(&format!("  link {from} -> {to};\n"));
            }
            out.push_str("}\n");
        }
    }
}

fn render_set(elems: &[String]) -> String {
    if elems.is_empty() {
        "{}".to_string()
    } else {
        format!("{{ {} }}", elems.join(", "))
    }
}

fn render_assigns(assigns: &[(String, String)]) -> String {
    assigns
        .iter()
        .map(|(from, to)| format!("{from} -> {to}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_cell(spec: &CellSpec) -> String {
    match spec {
        CellSpec::Id(obj) => format!("id({obj})"),
        CellSpec::Eps1(p) => format!("eps1 {p}"),
        CellSpec::Eps2(p) => format!("eps2 {p}"),
        CellSpec::Gamma(p) => format!("gamma {p}"),
        CellSpec::GammaPrime(p) => format!("gammap {p}"),
        CellSpec::Thin(b) => format!("thin {}", render_boundary(b)),
        CellSpec::Gen(name, b) => format!("gen {name} {}", render_boundary(b)),
    }
}

fn render_boundary(b: &BoundarySpec) -> String {
    format!(
        "top {} bottom {} left {} right {}",
        b.top, b.bottom, b.left, b.right
    )
}

fn escape(bytes: &[u8]) -> String {
    let mut out = String::new();
    for &b in bytes {
        match b {
            b'\\' => out.push_str("\\\\"),
            b'"' => out.push_str("\\\""),
            other => out.push(other as char),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn serialization_is_a_text_fixpoint() {
        let text = "category C { objects Y X; arrows g: Y -> X, f: X -> Y; }\n\
                    poset P { leq b c; carrier = { c, b, a }; leq a b; }";
        let once = serialize(&parse(text).unwrap());
        let twice = serialize(&parse(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn member_order_never_matters() {
        let d1 = parse("network N { servers B A; link A -> B; source A; receiver B; }").unwrap();
        let d2 = parse("network N { receiver B; link A -> B; servers A; servers B; source A; }")
            .unwrap();
        assert_eq!(serialize(&d1), serialize(&d2));
    }

    #[test]
    fn blocks_sort_by_kind_then_name() {
        let text = "poset Z { numeric 1 .. 3; } category A { objects X; } \
                    message B { bytes \"x\"; }";
        let out = serialize(&parse(text).unwrap());
        let category = out.find("category A").unwrap();
        let message = out.find("message B").unwrap();
        let poset = out.find("poset Z").unwrap();
        assert!(category < message && message < poset);
    }

    #[test]
    fn empty_document_serializes_to_nothing() {
        assert_eq!(serialize(&Document::default()), "");
    }

    #[test]
    fn parse_of_serialize_is_canonical_identity() {
        let doc = parse("category C { objects B A; }").unwrap();
        let reparsed = parse(&serialize(&doc)).unwrap();
        assert_eq!(reparsed, canonical(&doc));
    }

    #[test]
    fn string_escapes_round_trip() {
        let doc = parse(r#"message M { bytes "a\"b\\c"; }"#).unwrap();
        let text = serialize(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
    }
}
