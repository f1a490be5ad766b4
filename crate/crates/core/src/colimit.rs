//! Colimits of finite-set diagrams by explicit gluing.
//!
//! A diagram assigns a named finite set to every node of a shape graph and a
//! total function to every edge. Its colimit is computed as the disjoint
//! union of all node sets, quotiented by the equivalence generated by
//! `(i, x) ~ (j, f(x))` for every edge `f: i -> j`. Each class is named
//! after its least member, so the construction is canonical: the same
//! diagram always produces the same apex, element names and all.
//!
//! `verify_universal_property` checks universality the blunt way, by
//! enumerating every function from the apex to a candidate vertex. The
//! enumeration is guarded so it cannot be asked to do more than `10^6`
//! function evaluations' worth of work.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::category::is_token;

/// Hard ceiling on `|vertex| ^ |apex|` for exhaustive universality checks.
pub const UNIVERSAL_SEARCH_CEILING: u64 = 1_000_000;

/// Errors from diagram construction and colimit operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColimError {
    #[error("invalid diagram: {reason}")]
    InvalidDiagram { reason: String },
    #[error("invalid function: {reason}")]
    InvalidFunction { reason: String },
    #[error("cocone does not match its diagram: {reason}")]
    StructuralMismatch { reason: String },
    #[error("cocone does not commute; first failure at edge {edge} on element {element}")]
    NonCommutingCocone { edge: EdgeId, element: String },
    #[error("universality search space {size} exceeds ceiling {ceiling}")]
    SearchSpaceTooLarge { size: u64, ceiling: u64 },
}

/// Name of a node in a shape graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: impl Into<String>) -> Self {
        NodeId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Name of an edge in a shape graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(String);

impl EdgeId {
    pub fn new(name: impl Into<String>) -> Self {
        EdgeId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite directed multigraph with named nodes and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeGraph {
    nodes: BTreeSet<NodeId>,
    edges: BTreeMap<EdgeId, (NodeId, NodeId)>,
}

impl ShapeGraph {
    pub fn new(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = (EdgeId, NodeId, NodeId)>,
    ) -> Result<Self, ColimError> {
        let mut node_set = BTreeSet::new();
        for node in nodes {
            if !is_token(node.as_str()) {
                return Err(ColimError::InvalidDiagram {
                    reason: format!("node name {:?} is not a token", node.as_str()),
                });
            }
            if !node_set.insert(node.clone()) {
                return Err(ColimError::InvalidDiagram {
                    reason: format!("duplicate node {node}"),
                });
            }
        }
        let mut edge_map = BTreeMap::new();
        for (edge, src, tgt) in edges {
            if !is_token(edge.as_str()) {
                return Err(ColimError::InvalidDiagram {
                    reason: format!("edge name {:?} is not a token", edge.as_str()),
                });
            }
            for end in [&src, &tgt] {
                if !node_set.contains(end) {
                    return Err(ColimError::InvalidDiagram {
                        reason: format!("edge {edge} uses undeclared node {end}"),
                    });
                }
            }
            if edge_map.insert(edge.clone(), (src, tgt)).is_some() {
                return Err(ColimError::InvalidDiagram {
                    reason: format!("duplicate edge {edge}"),
                });
            }
        }
        Ok(ShapeGraph {
            nodes: node_set,
            edges: edge_map,
        })
    }

    pub fn nodes(&self) -> impl Iterator<Item = &NodeId> {
        self.nodes.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &(NodeId, NodeId))> {
        self.edges.iter()
    }
}

/// A finite set of named elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FinSet {
    elements: BTreeSet<String>,
}

impl FinSet {
    pub fn new(elements: impl IntoIterator<Item = String>) -> Self {
        FinSet {
            elements: elements.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, elem: &str) -> bool {
        self.elements.contains(elem)
    }

    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.elements.iter()
    }
}

/// A total function between finite sets, stored pointwise. Construction
/// checks totality on the domain and that the image lies in the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    map: BTreeMap<String, String>,
}

impl FinFn {
    pub fn new(
        dom: FinSet,
        cod: FinSet,
        map: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, ColimError> {
        let map: BTreeMap<String, String> = map.into_iter().collect();
        for key in map.keys() {
            if !dom.contains(key) {
                return Err(ColimError::InvalidFunction {
                    reason: format!("assignment for {key:?} which is not in the domain"),
                });
            }
        }
        for elem in dom.iter() {
            match map.get(elem) {
                None => {
                    return Err(ColimError::InvalidFunction {
                        reason: format!("no assignment for domain element {elem:?}"),
                    })
                }
                Some(value) if !cod.contains(value) => {
                    return Err(ColimError::InvalidFunction {
                        reason: format!("{elem:?} maps to {value:?} outside the codomain"),
                    })
                }
                Some(_) => {}
            }
        }
        Ok(FinFn { dom, cod, map })
    }

    pub fn identity(set: &FinSet) -> Self {
        FinFn {
            dom: set.clone(),
            cod: set.clone(),
            map: set.iter().map(|e| (e.clone(), e.clone())).collect(),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn apply(&self, elem: &str) -> Option<&String> {
        self.map.get(elem)
    }

    pub fn assignments(&self) -> impl Iterator<Item = (&String, &String)> {
        self.map.iter()
    }

    /// `self` then `other`.
    pub fn then(&self, other: &FinFn) -> Result<FinFn, ColimError> {
        if self.cod != other.dom {
            return Err(ColimError::InvalidFunction {
                reason: "composition endpoints do not match".to_string(),
            });
        }
        let map = self
            .map
            .iter()
            .map(|(k, v)| (k.clone(), other.map[v].clone()))
            .collect();
        Ok(FinFn {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            map,
        })
    }
}

/// A shape graph together with a finite set per node and a total function
/// per edge. Construction validates that every node and edge is covered and
/// that each edge function has exactly the sets its endpoints demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetDiagram {
    shape: ShapeGraph,
    node_sets: BTreeMap<NodeId, FinSet>,
    edge_fns: BTreeMap<EdgeId, FinFn>,
}

impl SetDiagram {
    pub fn new(
        shape: ShapeGraph,
        node_sets: impl IntoIterator<Item = (NodeId, FinSet)>,
        edge_fns: impl IntoIterator<Item = (EdgeId, FinFn)>,
    ) -> Result<Self, ColimError> {
        let node_sets: BTreeMap<NodeId, FinSet> = node_sets.into_iter().collect();
        let edge_fns: BTreeMap<EdgeId, FinFn> = edge_fns.into_iter().collect();
        for node in node_sets.keys() {
            if !shape.nodes.contains(node) {
                return Err(ColimError::InvalidDiagram {
                    reason: format!("set given for undeclared node {node}"),
                });
            }
        }
        for node in &shape.nodes {
            if !node_sets.contains_key(node) {
                return Err(ColimError::InvalidDiagram {
                    reason: format!("no set given for node {node}"),
                });
            }
        }
        for edge in edge_fns.keys() {
            if !shape.edges.contains_key(edge) {
                return Err(ColimError::InvalidDiagram {
                    reason: format!("function given for undeclared edge {edge}"),
                });
            }
        }
        for (edge, (src, tgt)) in &shape.edges {
            let func = edge_fns.get(edge).ok_or_else(|| ColimError::InvalidDiagram {
                reason: format!("no function given for edge {edge}"),
            })?;
            if func.dom() != &node_sets[src] {
                return Err(ColimError::InvalidDiagram {
                    reason: format!("function for edge {edge} has the wrong domain"),
                });
            }
            if func.cod() != &node_sets[tgt] {
                return Err(ColimError::InvalidDiagram {
                    reason: format!("function for edge {edge} has the wrong codomain"),
                });
            }
        }
        Ok(SetDiagram {
            shape,
            node_sets,
            edge_fns,
        })
    }

    pub fn shape(&self) -> &ShapeGraph {
        &self.shape
    }

    pub fn node_set(&self, node: &NodeId) -> Option<&FinSet> {
        self.node_sets.get(node)
    }

    pub fn edge_fn(&self, edge: &EdgeId) -> Option<&FinFn> {
        self.edge_fns.get(edge)
    }

    /// All `(node, element)` pairs in sorted order.
    fn carrier(&self) -> Vec<(NodeId, String)> {
        let mut out = Vec::new();
        for (node, set) in &self.node_sets {
            for elem in set.iter() {
                out.push((node.clone(), elem.clone()));
            }
        }
        out
    }
}

/// A candidate vertex with one leg per node of the diagram's shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone {
    pub vertex: FinSet,
    pub legs: BTreeMap<NodeId, FinFn>,
}

/// Result of checking whether a cocone commutes over a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoconeReport {
    /// Every `(edge, element)` on which `leg_tgt(f(x)) != leg_src(x)`.
    pub failures: Vec<(EdgeId, String)>,
}

impl CoconeReport {
    pub fn commutes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the cocone has a leg of the right shape for every node, then
/// lists every pointwise commutation failure (an empty list means the
/// cocone commutes).
pub fn check_cocone(diagram: &SetDiagram, cocone: &Cocone) -> Result<CoconeReport, ColimError> {
    for node in cocone.legs.keys() {
        if !diagram.shape.nodes.contains(node) {
            return Err(ColimError::StructuralMismatch {
                reason: format!("leg given for undeclared node {node}"),
            });
        }
    }
    for node in &diagram.shape.nodes {
        let leg = cocone.legs.get(node).ok_or_else(|| ColimError::StructuralMismatch {
            reason: format!("no leg given for node {node}"),
        })?;
        if leg.dom() != &diagram.node_sets[node] {
            return Err(ColimError::StructuralMismatch {
                reason: format!("leg for node {node} has the wrong domain"),
            });
        }
        if leg.cod() != &cocone.vertex {
            return Err(ColimError::StructuralMismatch {
                reason: format!("leg for node {node} does not land in the vertex"),
            });
        }
    }
    let mut failures = Vec::new();
    for (edge, (src, tgt)) in &diagram.shape.edges {
        let func = &diagram.edge_fns[edge];
        let leg_src = &cocone.legs[src];
        let leg_tgt = &cocone.legs[tgt];
        for elem in diagram.node_sets[src].iter() {
            let through = leg_tgt.apply(func.apply(elem).expect("edge functions are total"));
            let direct = leg_src.apply(elem);
            if through != direct {
                failures.push((edge.clone(), elem.clone()));
            }
        }
    }
    Ok(CoconeReport { failures })
}

/// The computed colimit: apex set, one injection per node, and the full
/// class map from `(node, element)` pairs to apex element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitResult {
    pub apex: FinSet,
    pub injections: BTreeMap<NodeId, FinFn>,
    pub class_map: BTreeMap<(NodeId, String), String>,
}

impl ColimitResult {
    /// The colimit apex and injections, packaged as a cocone over the same
    /// diagram. This cocone always commutes.
    pub fn as_cocone(&self) -> Cocone {
        Cocone {
            vertex: self.apex.clone(),
            legs: self.injections.clone(),
        }
    }
}

/// Union-find over dense indices with path compression. The canonical
/// member of each class is chosen after all unions, so union order cannot
/// influence the result.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cursor = i;
        while self.parent[cursor] != root {
            let next = self.parent[cursor];
            self.parent[cursor] = root;
            cursor = next;
        }
        root
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri] = rj;
        }
    }
}

/// Apex element name for the class whose least member is `(node, elem)`.
fn class_name(node: &NodeId, elem: &str) -> String {
    format!("class({node}.{elem})")
}

/// Computes the colimit of a finite-set diagram.
///
/// The apex is the set of equivalence classes of the disjoint union of all
/// node sets under the gluing relation `(i, x) ~ (j, f(x))` for every edge
/// `f: i -> j`. Each class is named `class(n.e)` after its least member
/// `(n, e)` in lexicographic order, making the output canonical.
pub fn colimit(diagram: &SetDiagram) -> ColimitResult {
    let carrier = diagram.carrier();
    let index: BTreeMap<(NodeId, String), usize> = carrier
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, pair)| (pair, i))
        .collect();
    let mut uf = UnionFind::new(carrier.len());
    for (edge, (src, tgt)) in &diagram.shape.edges {
        let func = &diagram.edge_fns[edge];
        for elem in diagram.node_sets[src].iter() {
            let image = func.apply(elem).expect("edge functions are total");
            let a = index[&(src.clone(), elem.clone())];
            let b = index[&(tgt.clone(), image.clone())];
            uf.union(a, b);
        }
    }
    // The carrier is sorted, so the first member found per root is least.
    let mut least_of_root: BTreeMap<usize, (NodeId, String)> = BTreeMap::new();
    for (i, pair) in carrier.iter().enumerate() {
        let root = uf.find(i);
        least_of_root.entry(root).or_insert_with(|| pair.clone());
    }
    let mut class_map = BTreeMap::new();
    for (i, pair) in carrier.iter().enumerate() {
        let (node, elem) = &least_of_root[&uf.find(i)];
        class_map.insert(pair.clone(), class_name(node, elem));
    }
    let apex = FinSet::new(class_map.values().cloned());
    let injections = diagram
        .node_sets
        .iter()
        .map(|(node, set)| {
            let map = set
                .iter()
                .map(|elem| {
                    (
                        elem.clone(),
                        class_map[&(node.clone(), elem.clone())].clone(),
                    )
                })
                .collect::<BTreeMap<_, _>>();
            (
                node.clone(),
                FinFn {
                    dom: set.clone(),
                    cod: apex.clone(),
                    map,
                },
            )
        })
        .collect();
    ColimitResult {
        apex,
        injections,
        class_map,
    }
}

/// The unique mediating function from the colimit apex to the vertex of a
/// commuting cocone. Fails with `NonCommutingCocone` when the cocone does
/// not commute (a non-commuting cocone admits no mediator at all).
pub fn factorize(result: &ColimitResult, diagram: &SetDiagram, cocone: &Cocone) -> Result<FinFn, ColimError> {
    let report = check_cocone(diagram, cocone)?;
    if let Some((edge, element)) = report.failures.first() {
        return Err(ColimError::NonCommutingCocone {
            edge: edge.clone(),
            element: element.clone(),
        });
    }
    // A commuting cocone is constant on gluing classes, so reading the leg
    // at each class representative is well defined.
    let mut map = BTreeMap::new();
    for ((node, elem), class) in &result.class_map {
        let value = cocone.legs[node]
            .apply(elem)
            .expect("legs are total")
            .clone();
        if let Some(previous) = map.insert(class.clone(), value.clone()) {
            assert_eq!(
                previous, value,
                "commuting cocone disagreed on a gluing class",
            );
        }
    }
    FinFn::new(result.apex.clone(), cocone.vertex.clone(), map)
}

/// Outcome of the exhaustive universality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalReport {
    /// Total number of functions `apex -> vertex` enumerated.
    pub candidates: u64,
    /// How many of them commuted with every injection.
    pub mediators: u64,
    /// Whether the unique mediator equals the one `factorize` returns.
    pub matches_factorization: bool,
}

impl UniversalReport {
    pub fn holds(&self) -> bool {
        self.mediators == 1 && self.matches_factorization
    }
}

/// Verifies the universal property of the computed colimit against one
/// commuting cocone by exhaustive enumeration of all functions from the
/// apex to the cocone vertex.
///
/// Errors with `SearchSpaceTooLarge` when `|vertex| ^ |apex|` exceeds
/// [`UNIVERSAL_SEARCH_CEILING`], and `NonCommutingCocone` when the cocone
/// fails to commute.
pub fn verify_universal_property(
    diagram: &SetDiagram,
    cocone: &Cocone,
) -> Result<UniversalReport, ColimError> {
    let result = colimit(diagram);
    let expected = factorize(&result, diagram, cocone)?;
    let apex_elems: Vec<&String> = result.apex.iter().collect();
    let vertex_elems: Vec<&String> = cocone.vertex.iter().collect();
    let size = (vertex_elems.len() as u64)
        .checked_pow(apex_elems.len() as u32)
        .unwrap_or(u64::MAX);
    if size > UNIVERSAL_SEARCH_CEILING {
        return Err(ColimError::SearchSpaceTooLarge {
            size,
            ceiling: UNIVERSAL_SEARCH_CEILING,
        });
    }
    if vertex_elems.is_empty() && !apex_elems.is_empty() {
        // No functions exist at all; unreachable for commuting cocones,
        // whose legs force the apex to be empty too.
        return Ok(UniversalReport {
            candidates: 0,
            mediators: 0,
            matches_factorization: false,
        });
    }
    let mut mediators = 0u64;
    let mut matches_factorization = false;
    // Odometer over assignments apex -> vertex.
    let mut digits = vec![0usize; apex_elems.len()];
    let mut candidates = 0u64;
    loop {
        candidates += 1;
        let assignment: BTreeMap<String, String> = apex_elems
            .iter()
            .zip(&digits)
            .map(|(apex_elem, &d)| ((*apex_elem).clone(), vertex_elems[d].clone()))
            .collect();
        let commutes = result.injections.iter().all(|(node, inj)| {
            let leg = &cocone.legs[node];
            inj.assignments()
                .all(|(elem, class)| assignment[class] == *leg.apply(elem).expect("legs are total"))
        });
        if commutes {
            mediators += 1;
            let as_fn = FinFn::new(result.apex.clone(), cocone.vertex.clone(), assignment)
                .expect("odometer assignments are total");
            if as_fn == expected {
                matches_factorization = true;
            }
        }
        // Advance the odometer.
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(UniversalReport {
                    candidates,
                    mediators,
                    matches_factorization,
                });
            }
            digits[pos] += 1;
            if digits[pos] < vertex_elems.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(s: &str) -> NodeId {
        NodeId::new(s)
    }

    fn edge(s: &str) -> EdgeId {
        EdgeId::new(s)
    }

    fn set(elems: &[&str]) -> FinSet {
        FinSet::new(elems.iter().map(|s| s.to_string()))
    }

    fn func(dom: &FinSet, cod: &FinSet, pairs: &[(&str, &str)]) -> FinFn {
        FinFn::new(
            dom.clone(),
            cod.clone(),
            pairs
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    /// The span X <- W -> Y with W = {w}, X = {w, x}, Y = {w, y} and both
    /// legs sending w to w.
    fn span_diagram() -> SetDiagram {
        let shape = ShapeGraph::new(
            ["W", "X", "Y"].map(node),
            [
                (edge("f"), node("W"), node("X")),
                (edge("g"), node("W"), node("Y")),
            ],
        )
        .unwrap();
        let w = set(&["w"]);
        let x = set(&["w", "x"]);
        let y = set(&["w", "y"]);
        SetDiagram::new(
            shape,
            [
                (node("W"), w.clone()),
                (node("X"), x.clone()),
                (node("Y"), y.clone()),
            ],
            [
                (edge("f"), func(&w, &x, &[("w", "w")])),
                (edge("g"), func(&w, &y, &[("w", "w")])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn pushout_of_span_glues_shared_element() {
        let diagram = span_diagram();
        let result = colimit(&diagram);
        // Classes: {(W,w), (X,w), (Y,w)} named after (W, w), plus singletons
        // (X, x) and (Y, y).
        assert_eq!(result.apex.len(), 3);
        assert!(result.apex.contains("class(W.w)"));
        assert!(result.apex.contains("class(X.x)"));
        assert!(result.apex.contains("class(Y.y)"));
        assert_eq!(
            result.injections[&node("X")].apply("w").unwrap(),
            "class(W.w)"
        );
        assert_eq!(
            result.injections[&node("Y")].apply("w").unwrap(),
            "class(W.w)"
        );
    }

    #[test]
    fn colimit_injections_form_commuting_cocone() {
        let diagram = span_diagram();
        let result = colimit(&diagram);
        let report = check_cocone(&diagram, &result.as_cocone()).unwrap();
        assert!(report.commutes());
    }

    #[test]
    fn coequalizer_collapses_orbit() {
        // Two parallel edges id, s: A -> A with s the swap of {p, q}.
        let shape = ShapeGraph::new(
            ["A", "B"].map(node),
            [
                (edge("u"), node("A"), node("B")),
                (edge("v"), node("A"), node("B")),
            ],
        )
        .unwrap();
        let a = set(&["p", "q"]);
        let b = set(&["p", "q"]);
        let diagram = SetDiagram::new(
            shape,
            [(node("A"), a.clone()), (node("B"), b.clone())],
            [
                (edge("u"), func(&a, &b, &[("p", "p"), ("q", "q")])),
                (edge("v"), func(&a, &b, &[("p", "q"), ("q", "p")])),
            ],
        )
        .unwrap();
        let result = colimit(&diagram);
        // u glues (A,p)~(B,p), (A,q)~(B,q); v glues (A,p)~(B,q), (A,q)~(B,p).
        // Everything collapses to one class.
        assert_eq!(result.apex.len(), 1);
    }

    #[test]
    fn empty_diagram_has_empty_apex() {
        let shape = ShapeGraph::new([], []).unwrap();
        let diagram = SetDiagram::new(shape, [], []).unwrap();
        let result = colimit(&diagram);
        assert!(result.apex.is_empty());
    }

    #[test]
    fn cocone_failure_is_pointwise() {
        let diagram = span_diagram();
        let vertex = set(&["p", "q"]);
        // Leg at X sends the glued element somewhere else.
        let cocone = Cocone {
            vertex: vertex.clone(),
            legs: [
                (
                    node("W"),
                    func(diagram.node_set(&node("W")).unwrap(), &vertex, &[("w", "p")]),
                ),
                (
                    node("X"),
                    func(
                        diagram.node_set(&node("X")).unwrap(),
                        &vertex,
                        &[("w", "q"), ("x", "q")],
                    ),
                ),
                (
                    node("Y"),
                    func(
                        diagram.node_set(&node("Y")).unwrap(),
                        &vertex,
                        &[("w", "p"), ("y", "q")],
                    ),
                ),
            ]
            .into_iter()
            .collect(),
        };
        let report = check_cocone(&diagram, &cocone).unwrap();
        assert_eq!(report.failures, vec![(edge("f"), "w".to_string())]);
        assert!(matches!(
            factorize(&colimit(&diagram), &diagram, &cocone),
            Err(ColimError::NonCommutingCocone { .. })
        ));
    }

    #[test]
    fn factorization_commutes_with_injections() {
        let diagram = span_diagram();
        let result = colimit(&diagram);
        let vertex = set(&["p", "q"]);
        let cocone = Cocone {
            vertex: vertex.clone(),
            legs: [
                (
                    node("W"),
                    func(diagram.node_set(&node("W")).unwrap(), &vertex, &[("w", "p")]),
                ),
                (
                    node("X"),
                    func(
                        diagram.node_set(&node("X")).unwrap(),
                        &vertex,
                        &[("w", "p"), ("x", "q")],
                    ),
                ),
                (
                    node("Y"),
                    func(
                        diagram.node_set(&node("Y")).unwrap(),
                        &vertex,
                        &[("w", "p"), ("y", "p")],
                    ),
                ),
            ]
            .into_iter()
            .collect(),
        };
        let mediator = factorize(&result, &diagram, &cocone).unwrap();
        for (n, inj) in &result.injections {
            assert_eq!(&inj.then(&mediator).unwrap(), &cocone.legs[n]);
        }
        let report = verify_universal_property(&diagram, &cocone).unwrap();
        assert!(report.holds());
        assert_eq!(report.candidates, 8); // 2^3 functions apex -> vertex
        assert_eq!(report.mediators, 1);
    }

    #[test]
    fn universality_guard_rejects_oversized_searches() {
        // 8 isolated nodes of 3 elements each: apex 24, vertex 3 would be
        // 3^24 functions. Use a vertex of 5 and apex of 24: 5^24 > 10^6.
        let nodes: Vec<NodeId> = (0..8).map(|i| node(&format!("N{i}"))).collect();
        let shape = ShapeGraph::new(nodes.clone(), []).unwrap();
        let elems = set(&["a", "b", "c"]);
        let diagram = SetDiagram::new(
            shape,
            nodes.iter().map(|n| (n.clone(), elems.clone())),
            [],
        )
        .unwrap();
        let vertex = set(&["1", "2", "3", "4", "5"]);
        let constant = |s: &FinSet| {
            FinFn::new(
                s.clone(),
                vertex.clone(),
                s.iter().map(|e| (e.clone(), "1".to_string())).collect::<Vec<_>>(),
            )
            .unwrap()
        };
        let cocone = Cocone {
            vertex: vertex.clone(),
            legs: nodes.iter().map(|n| (n.clone(), constant(&elems))).collect(),
        };
        assert!(matches!(
            verify_universal_property(&diagram, &cocone),
            Err(ColimError::SearchSpaceTooLarge { .. })
        ));
    }
}
