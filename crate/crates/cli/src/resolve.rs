//! Resolution from syntax trees to engine values. Blocks may reference each
//! other in any order; resolution is staged so that every referenced block
//! is built before its dependents (categories and diagrams first, then the
//! blocks that point at them).

use std::collections::BTreeMap;

use colimkit_core::category::{
    ArrowGen, CategoryPresentation, CompositionTable, ObjectId, Path,
};
use colimkit_core::colimit::{Cocone, EdgeId, FinFn, FinSet, NodeId, SetDiagram, ShapeGraph};
use colimkit_core::double::{CubeFaces, DoubleError, GridExpr, Square};
use colimkit_core::poset::FinitePoset;
use colimkit_core::relay::{Message, ServerId, ServerNetwork};

use crate::ast::*;
use crate::error::CliError;

#[derive(Debug)]
pub struct ResolvedCategory {
    pub presentation: CategoryPresentation,
    pub table: Option<CompositionTable>,
}

#[derive(Debug)]
pub struct ResolvedCocone {
    pub diagram: String,
    pub cocone: Cocone,
}

#[derive(Debug)]
pub struct ResolvedGrid {
    pub category: String,
    pub grid: GridExpr,
}

#[derive(Debug)]
pub struct ResolvedCube {
    pub category: String,
    pub cube: CubeFaces,
}

/// All blocks of a document, resolved and indexed by kind and name.
#[derive(Debug, Default)]
pub struct Env {
    pub categories: BTreeMap<String, ResolvedCategory>,
    pub diagrams: BTreeMap<String, SetDiagram>,
    pub cocones: BTreeMap<String, ResolvedCocone>,
    pub posets: BTreeMap<String, FinitePoset>,
    pub grids: BTreeMap<String, ResolvedGrid>,
    pub cubes: BTreeMap<String, ResolvedCube>,
    pub messages: BTreeMap<String, Message>,
    pub networks: BTreeMap<String, ServerNetwork>,
}

/// Resolves a whole document. `word_depth` bounds the rewriting searches
/// used to validate thin cells.
pub fn resolve(document: &Document, word_depth: usize) -> Result<Env, CliError> {
    let mut env = Env::default();
    let mut seen: BTreeMap<(&str, &str), ()> = BTreeMap::new();
    for block in &document.blocks {
        if seen.insert((block.kind(), block.name()), ()).is_some() {
            return Err(CliError::semantic(format!(
                "{} `{}` is defined twice",
                block.kind(),
                block.name()
            )));
        }
    }
    // Pass one: blocks with no references to other blocks.
    for block in &document.blocks {
        match block {
            Block::Category(def) => {
                env.categories
                    .insert(def.name.clone(), resolve_category(def)?);
            }
            Block::Diagram(def) => {
                env.diagrams.insert(def.name.clone(), resolve_diagram(def)?);
            }
            Block::Poset(def) => {
                env.posets.insert(def.name.clone(), resolve_poset(def)?);
            }
            Block::Message(def) => {
                env.messages
                    .insert(def.name.clone(), Message(def.bytes.clone()));
            }
            Block::Network(def) => {
                env.networks.insert(def.name.clone(), resolve_network(def)?);
            }
            _ => {}
        }
    }
    // Pass two: blocks referencing pass-one blocks.
    for block in &document.blocks {
        match block {
            Block::Cocone(def) => {
                let diagram = env.diagrams.get(&def.diagram).ok_or_else(|| {
                    CliError::semantic(format!(
                        "cocone `{}` refers to unknown diagram `{}`",
                        def.name, def.diagram
                    ))
                })?;
                env.cocones.insert(
                    def.name.clone(),
                    ResolvedCocone {
                        diagram: def.diagram.clone(),
                        cocone: resolve_cocone(def, diagram)?,
                    },
                );
            }
            Block::Grid(def) => {
                let category = lookup_category(&env, &def.category, "grid", &def.name)?;
                env.grids.insert(
                    def.name.clone(),
                    ResolvedGrid {
                        category: def.category.clone(),
                        grid: resolve_grid(def, &category.presentation, word_depth)?,
                    },
                );
            }
            Block::Cube(def) => {
                let category = lookup_category(&env, &def.category, "cube", &def.name)?;
                env.cubes.insert(
                    def.name.clone(),
                    ResolvedCube {
                        category: def.category.clone(),
                        cube: resolve_cube(def, &category.presentation, word_depth)?,
                    },
                );
            }
            _ => {}
        }
    }
    Ok(env)
}

fn lookup_category<'e>(
    env: &'e Env,
    name: &str,
    kind: &str,
    referrer: &str,
) -> Result<&'e ResolvedCategory, CliError> {
    env.categories.get(name).ok_or_else(|| {
        CliError::semantic(format!(
            "{kind} `{referrer}` refers to unknown category `{name}`"
        ))
    })
}

fn resolve_category(def: &CategoryDef) -> Result<ResolvedCategory, CliError> {
    let objects: Vec<ObjectId> = def.objects.iter().map(ObjectId::new).collect();
    let arrows: Vec<ArrowGen> = def
        .arrows
        .iter()
        .map(|a| {
            if !def.objects.contains(&a.src) {
                return Err(CliError::semantic(format!(
                    "arrow `{}` in category `{}` references unknown object `{}`",
                    a.name, def.name, a.src
                )));
            }
            if !def.objects.contains(&a.tgt) {
                return Err(CliError::semantic(format!(
                    "arrow `{}` in category `{}` references unknown object `{}`",
                    a.name, def.name, a.tgt
                )));
            }
            Ok(ArrowGen {
                name: a.name.clone(),
                src: ObjectId::new(&a.src),
                tgt: ObjectId::new(&a.tgt),
            })
        })
        .collect::<Result<_, _>>()?;
    let relations: Vec<(Path, Path)> = def
        .relations
        .iter()
        .map(|(lhs, rhs)| {
            Ok((
                path_from_decls(lhs, def)?,
                path_from_decls(rhs, def)?,
            ))
        })
        .collect::<Result<_, CliError>>()?;
    let presentation = CategoryPresentation::new(objects, arrows, relations)
        .map_err(|e| CliError::semantic(format!("category `{}`: {e}", def.name)))?;
    let table = def
        .table
        .as_ref()
        .map(|t| {
            CompositionTable::new(
                def.arrows
                    .iter()
                    .map(|a| (a.name.clone(), ObjectId::new(&a.src), ObjectId::new(&a.tgt))),
                t.identities
                    .iter()
                    .map(|(obj, arrow)| (ObjectId::new(obj), arrow.clone())),
                t.composites.iter().cloned(),
            )
            .map_err(|e| CliError::semantic(format!("table of category `{}`: {e}", def.name)))
        })
        .transpose()?;
    Ok(ResolvedCategory {
        presentation,
        table,
    })
}

/// Builds a path from a category definition's own arrow declarations,
/// before the presentation exists.
fn path_from_decls(expr: &PathExpr, def: &CategoryDef) -> Result<Path, CliError> {
    match expr {
        PathExpr::Identity(obj) => {
            if !def.objects.contains(obj) {
                return Err(CliError::semantic(format!(
                    "relation in category `{}` references unknown object `{obj}`",
                    def.name
                )));
            }
            Ok(Path::identity(ObjectId::new(obj)))
        }
        PathExpr::Gens(gens) => {
            let decl = |name: &String| {
                def.arrows.iter().find(|a| &a.name == name).ok_or_else(|| {
                    CliError::semantic(format!(
                        "relation in category `{}` references unknown arrow `{name}`",
                        def.name
                    ))
                })
            };
            let first = decl(&gens[0])?;
            let last = decl(gens.last().expect("gens is nonempty"))?;
            for pair in gens.windows(2) {
                let (prev, next) = (decl(&pair[0])?, decl(&pair[1])?);
                if prev.tgt != next.src {
                    return Err(CliError::semantic(format!(
                        "arrows `{}` and `{}` do not compose: `{}` ends at `{}` but `{}` starts at `{}`",
                        prev.name, next.name, prev.name, prev.tgt, next.name, next.src
                    )));
                }
            }
            Ok(Path {
                src: ObjectId::new(&first.src),
                tgt: ObjectId::new(&last.tgt),
                gens: gens.clone(),
            })
        }
    }
}

/// Builds a path against a finished presentation.
fn resolve_path(expr: &PathExpr, pres: &CategoryPresentation) -> Result<Path, CliError> {
    match expr {
        PathExpr::Identity(obj) => {
            if !pres.has_object(&ObjectId::new(obj)) {
                return Err(CliError::semantic(format!("unknown object `{obj}`")));
            }
            Ok(Path::identity(ObjectId::new(obj)))
        }
        PathExpr::Gens(gens) => {
            let arrow = |name: &String| {
                pres.arrow(name)
                    .ok_or_else(|| CliError::semantic(format!("unknown arrow `{name}`")))
            };
            let src = arrow(&gens[0])?.src.clone();
            let tgt = arrow(gens.last().expect("gens is nonempty"))?.tgt.clone();
            let path = Path {
                src,
                tgt,
                gens: gens.clone(),
            };
            pres.validate_path(&path)
                .map_err(|e| CliError::semantic(format!("path `{expr}`: {e}")))?;
            Ok(path)
        }
    }
}

fn resolve_diagram(def: &DiagramDef) -> Result<SetDiagram, CliError> {
    let nodes: Vec<NodeId> = def.nodes.iter().map(NodeId::new).collect();
    let edges: Vec<(EdgeId, NodeId, NodeId)> = def
        .edges
        .iter()
        .map(|e| (EdgeId::new(&e.name), NodeId::new(&e.src), NodeId::new(&e.tgt)))
        .collect();
    let shape = ShapeGraph::new(nodes.clone(), edges)
        .map_err(|e| CliError::semantic(format!("diagram `{}`: {e}", def.name)))?;
    let mut sets: BTreeMap<String, FinSet> = BTreeMap::new();
    for (node, elems) in &def.sets {
        if !def.nodes.contains(node) {
            return Err(CliError::semantic(format!(
                "diagram `{}` assigns a set to unknown node `{node}`",
                def.name
            )));
        }
        if sets
            .insert(node.clone(), FinSet::new(elems.iter().cloned()))
            .is_some()
        {
            return Err(CliError::semantic(format!(
                "diagram `{}` assigns two sets to node `{node}`",
                def.name
            )));
        }
    }
    // Nodes without a set item carry the empty set.
    let node_sets: Vec<(NodeId, FinSet)> = def
        .nodes
        .iter()
        .map(|n| {
            (
                NodeId::new(n),
                sets.get(n).cloned().unwrap_or_else(|| FinSet::new([])),
            )
        })
        .collect();
    let mut maps: BTreeMap<String, Vec<(String, String)>> = BTreeMap::new();
    for (edge, assigns) in &def.maps {
        if !def.edges.iter().any(|e| &e.name == edge) {
            return Err(CliError::semantic(format!(
                "diagram `{}` assigns a map to unknown edge `{edge}`",
                def.name
            )));
        }
        if maps.insert(edge.clone(), assigns.clone()).is_some() {
            return Err(CliError::semantic(format!(
                "diagram `{}` assigns two maps to edge `{edge}`",
                def.name
            )));
        }
    }
    let set_of = |node: &str| -> FinSet {
        node_sets
            .iter()
            .find(|(n, _)| n == &NodeId::new(node))
            .map(|(_, s)| s.clone())
            .expect("edge endpoints were validated by the shape")
    };
    let edge_fns: Vec<(EdgeId, FinFn)> = def
        .edges
        .iter()
        .map(|e| {
            let assigns = maps.get(&e.name).cloned().unwrap_or_default();
            let func = FinFn::new(set_of(&e.src), set_of(&e.tgt), assigns).map_err(|err| {
                CliError::semantic(format!(
                    "diagram `{}`, map for edge `{}`: {err}",
                    def.name, e.name
                ))
            })?;
            Ok((EdgeId::new(&e.name), func))
        })
        .collect::<Result<_, CliError>>()?;
    SetDiagram::new(shape, node_sets, edge_fns)
        .map_err(|e| CliError::semantic(format!("diagram `{}`: {e}", def.name)))
}

fn resolve_cocone(def: &CoconeDef, diagram: &SetDiagram) -> Result<Cocone, CliError> {
    let vertex = FinSet::new(def.vertex.iter().cloned());
    let mut legs: BTreeMap<NodeId, FinFn> = BTreeMap::new();
    for (node, assigns) in &def.legs {
        let node_id = NodeId::new(node);
        let dom = diagram.node_set(&node_id).ok_or_else(|| {
            CliError::semantic(format!(
                "cocone `{}` gives a leg for unknown node `{node}`",
                def.name
            ))
        })?;
        let leg = FinFn::new(dom.clone(), vertex.clone(), assigns.clone()).map_err(|e| {
            CliError::semantic(format!("cocone `{}`, leg for `{node}`: {e}", def.name))
        })?;
        if legs.insert(node_id, leg).is_some() {
            return Err(CliError::semantic(format!(
                "cocone `{}` gives two legs for node `{node}`",
                def.name
            )));
        }
    }
    Ok(Cocone { vertex, legs })
}

fn resolve_poset(def: &PosetDef) -> Result<FinitePoset, CliError> {
    let built = match &def.body {
        PosetBody::Extensional { carrier, leq } => {
            FinitePoset::from_pairs(carrier.iter().cloned(), leq.iter().cloned())
        }
        PosetBody::Divisibility { lo, hi } => FinitePoset::divisibility_range(*lo, *hi),
        PosetBody::Numeric { lo, hi } => FinitePoset::numeric_range(*lo, *hi),
    };
    built.map_err(|e| CliError::semantic(format!("poset `{}`: {e}", def.name)))
}

fn resolve_cell(
    spec: &CellSpec,
    pres: &CategoryPresentation,
    word_depth: usize,
    place: &str,
) -> Result<Square, CliError> {
    let context = |e: DoubleError| match e {
        DoubleError::ShellInconclusive { reason } => CliError::Undecided {
            message: format!("{place}: {reason}"),
        },
        other => CliError::semantic(format!("{place}: {other}")),
    };
    match spec {
        CellSpec::Id(obj) => {
            if !pres.has_object(&ObjectId::new(obj)) {
                return Err(CliError::semantic(format!(
                    "{place}: unknown object `{obj}`"
                )));
            }
            Ok(Square::double_identity(ObjectId::new(obj)))
        }
        CellSpec::Eps1(p) => Ok(Square::eps1(resolve_path(p, pres)?)),
        CellSpec::Eps2(p) => Ok(Square::eps2(resolve_path(p, pres)?)),
        CellSpec::Gamma(p) => Ok(Square::gamma(resolve_path(p, pres)?)),
        CellSpec::GammaPrime(p) => Ok(Square::gamma_prime(resolve_path(p, pres)?)),
        CellSpec::Thin(b) => Square::thin(
            pres,
            resolve_path(&b.top, pres)?,
            resolve_path(&b.bottom, pres)?,
            resolve_path(&b.left, pres)?,
            resolve_path(&b.right, pres)?,
            word_depth,
        )
        .map_err(context),
        CellSpec::Gen(name, b) => Square::generator(
            name.clone(),
            resolve_path(&b.top, pres)?,
            resolve_path(&b.bottom, pres)?,
            resolve_path(&b.left, pres)?,
            resolve_path(&b.right, pres)?,
        )
        .map_err(context),
    }
}

fn resolve_grid(
    def: &GridDef,
    pres: &CategoryPresentation,
    word_depth: usize,
) -> Result<GridExpr, CliError> {
    let (rows, cols) = match (def.rows, def.cols) {
        (Some(r), Some(c)) if r > 0 && c > 0 => (r, c),
        _ => {
            return Err(CliError::semantic(format!(
                "grid `{}` needs positive rows and cols",
                def.name
            )))
        }
    };
    let mut cells: BTreeMap<(usize, usize), Square> = BTreeMap::new();
    for (r, c, spec) in &def.cells {
        if *r >= rows || *c >= cols {
            return Err(CliError::semantic(format!(
                "grid `{}` places cell ({r}, {c}) outside its {rows} x {cols} extent",
                def.name
            )));
        }
        let place = format!("grid `{}`, cell ({r}, {c})", def.name);
        let square = resolve_cell(spec, pres, word_depth, &place)?;
        if cells.insert((*r, *c), square).is_some() {
            return Err(CliError::semantic(format!(
                "grid `{}` defines cell ({r}, {c}) twice",
                def.name
            )));
        }
    }
    let mut matrix = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for c in 0..cols {
            row.push(cells.remove(&(r, c)).ok_or_else(|| {
                CliError::semantic(format!("grid `{}` is missing cell ({r}, {c})", def.name))
            })?);
        }
        matrix.push(row);
    }
    GridExpr::new(matrix).map_err(|e| CliError::semantic(format!("grid `{}`: {e}", def.name)))
}

fn resolve_cube(
    def: &CubeDef,
    pres: &CategoryPresentation,
    word_depth: usize,
) -> Result<CubeFaces, CliError> {
    let mut faces: BTreeMap<(usize, usize), Square> = BTreeMap::new();
    for (direction, side, spec) in &def.faces {
        if !(1..=3).contains(direction) || *side > 1 {
            return Err(CliError::semantic(format!(
                "cube `{}` names face ({direction}, {side}); directions are 1..3 and sides 0..1",
                def.name
            )));
        }
        let place = format!("cube `{}`, face ({direction}, {side})", def.name);
        let square = resolve_cell(spec, pres, word_depth, &place)?;
        if faces.insert((*direction, *side), square).is_some() {
            return Err(CliError::semantic(format!(
                "cube `{}` defines face ({direction}, {side}) twice",
                def.name
            )));
        }
    }
    let mut ordered = Vec::with_capacity(6);
    for direction in 1..=3 {
        for side in 0..=1 {
            ordered.push(faces.remove(&(direction, side)).ok_or_else(|| {
                CliError::semantic(format!(
                    "cube `{}` is missing face ({direction}, {side})",
                    def.name
                ))
            })?);
        }
    }
    let array: [Square; 6] = ordered.try_into().expect("exactly six faces collected");
    CubeFaces::new(array).map_err(|e| CliError::semantic(format!("cube `{}`: {e}", def.name)))
}

fn resolve_network(def: &NetworkDef) -> Result<ServerNetwork, CliError> {
    let source = def.source.as_ref().ok_or_else(|| {
        CliError::semantic(format!("network `{}` declares no source", def.name))
    })?;
    let receiver = def.receiver.as_ref().ok_or_else(|| {
        CliError::semantic(format!("network `{}` declares no receiver", def.name))
    })?;
    ServerNetwork::new(
        def.servers.iter().map(ServerId::new),
        def.links
            .iter()
            .map(|(from, to)| (ServerId::new(from), ServerId::new(to))),
        ServerId::new(source),
        ServerId::new(receiver),
    )
    .map_err(|e| CliError::semantic(format!("network `{}`: {e}", def.name)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn env_of(text: &str) -> Result<Env, CliError> {
        resolve(&parse(text).unwrap(), 8)
    }

    #[test]
    fn pushout_span_resolves() {
        let env = env_of(
            "diagram D over shape { nodes W X Y; edge f: W -> X; edge g: W -> Y; } \
             sets { W = { w }; X = { w, x }; Y = { w, y }; } \
             maps { f: w -> w; g: w -> w; }",
        )
        .unwrap();
        let d = &env.diagrams["D"];
        assert_eq!(d.node_set(&NodeId::new("X")).unwrap().len(), 2);
    }

    #[test]
    fn unknown_object_is_named_in_the_error() {
        let err = env_of("category C { objects X; arrows f: X -> Z; }").unwrap_err();
        let CliError::Semantic { message } = err else {
            panic!("expected a semantic error");
        };
        assert!(message.contains("`Z`"), "{message}");
    }

    #[test]
    fn cocone_can_precede_its_diagram() {
        let env = env_of(
            "cocone K over D { vertex = { p }; leg i: w -> p; } \
             diagram D over shape { nodes i; } sets { i = { w }; } maps { }",
        )
        .unwrap();
        assert_eq!(env.cocones["K"].diagram, "D");
    }

    #[test]
    fn grids_require_complete_cell_coverage() {
        let err = env_of(
            "category C { objects X; } \
             grid G over C { rows 1; cols 2; cell 0 0 = id(X); }",
        )
        .unwrap_err();
        let CliError::Semantic { message } = err else {
            panic!("expected a semantic error");
        };
        assert!(message.contains("missing cell (0, 1)"), "{message}");
    }

    #[test]
    fn thin_cell_with_refuted_shell_is_semantic() {
        // Two distinct parallel arrows with no relations: top . right and
        // left . bottom normalize to different words.
        let err = env_of(
            "category C { objects X Y; arrows f: X -> Y, g: X -> Y; } \
             grid G over C { rows 1; cols 1; \
             cell 0 0 = thin top f bottom g left id(X) right id(Y); }",
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Semantic { .. }), "{err:?}");
    }

    #[test]
    fn duplicate_block_names_clash_per_kind() {
        let err = env_of("poset P { numeric 1 .. 2; } poset P { numeric 1 .. 3; }").unwrap_err();
        let CliError::Semantic { message } = err else {
            panic!("expected a semantic error");
        };
        assert!(message.contains("defined twice"));
        // The same name on different kinds is fine.
        env_of("poset N { numeric 1 .. 2; } network N { servers A; source A; receiver A; }")
            .unwrap();
    }
}
