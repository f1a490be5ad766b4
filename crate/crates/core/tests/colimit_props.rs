//! Randomized agreement between the union-find colimit and a brute-force
//! fixpoint oracle that never touches union-find.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use colimkit_core::colimit::{
    check_cocone, colimit, factorize, verify_universal_property, Cocone, EdgeId, FinFn, FinSet,
    NodeId, SetDiagram, ShapeGraph,
};

type Pair = (NodeId, String);

/// Builds a random diagram with up to `max_nodes` nodes, `max_edges` edges,
/// and `max_set` elements per node, deterministically from a seed.
fn random_diagram(seed: u64, max_nodes: usize, max_edges: usize, max_set: usize) -> SetDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let node_count = rng.gen_range(1..=max_nodes);
    let nodes: Vec<NodeId> = (0..node_count).map(|i| NodeId::new(format!("n{i}"))).collect();
    let sets: Vec<FinSet> = (0..node_count)
        .map(|_| {
            let size = rng.gen_range(0..=max_set);
            FinSet::new((0..size).map(|k| format!("e{k}")))
        })
        .collect();
    let mut edges = Vec::new();
    let mut edge_fns = Vec::new();
    let mut made = 0;
    for attempt in 0..max_edges * 3 {
        if made == max_edges {
            break;
        }
        let src = rng.gen_range(0..node_count);
        let tgt = rng.gen_range(0..node_count);
        // A total function into an empty set needs an empty domain.
        if !sets[src].is_empty() && sets[tgt].is_empty() {
            continue;
        }
        let _ = attempt;
        let edge = EdgeId::new(format!("a{made}"));
        let cod_elems: Vec<&String> = sets[tgt].iter().collect();
        let map: Vec<(String, String)> = sets[src]
            .iter()
            .map(|e| (e.clone(), cod_elems[rng.gen_range(0..cod_elems.len().max(1))].clone()))
            .collect();
        edge_fns.push((
            edge.clone(),
            FinFn::new(sets[src].clone(), sets[tgt].clone(), map).unwrap(),
        ));
        edges.push((edge, nodes[src].clone(), nodes[tgt].clone()));
        made += 1;
    }
    let shape = ShapeGraph::new(nodes.clone(), edges).unwrap();
    SetDiagram::new(
        shape,
        nodes.iter().cloned().zip(sets.iter().cloned()),
        edge_fns,
    )
    .unwrap()
}

/// Brute-force gluing: start from singleton classes and merge across edges
/// until nothing changes.
fn oracle_partition(d: &SetDiagram) -> BTreeSet<BTreeSet<Pair>> {
    let mut classes: Vec<BTreeSet<Pair>> = Vec::new();
    for node in d.shape().nodes() {
        for elem in d.node_set(node).unwrap().iter() {
            classes.push(BTreeSet::from([(node.clone(), elem.clone())]));
        }
    }
    loop {
        let mut merged_any = false;
        'edges: for (edge, (src, tgt)) in d.shape().edges() {
            let func = d.edge_fn(edge).unwrap();
            for elem in d.node_set(src).unwrap().iter() {
                let image = func.apply(elem).unwrap();
                let a = (src.clone(), elem.clone());
                let b = (tgt.clone(), image.clone());
                let ia = classes.iter().position(|c| c.contains(&a)).unwrap();
                let ib = classes.iter().position(|c| c.contains(&b)).unwrap();
                if ia != ib {
                    let taken = classes.remove(ia.max(ib));
                    classes[ia.min(ib)].extend(taken);
                    merged_any = true;
                    continue 'edges;
                }
            }
        }
        if !merged_any {
            return classes.into_iter().collect();
        }
    }
}

/// The partition implied by the computed colimit's class map.
fn colimit_partition(d: &SetDiagram) -> BTreeSet<BTreeSet<Pair>> {
    let result = colimit(d);
    let mut by_class: BTreeMap<String, BTreeSet<Pair>> = BTreeMap::new();
    for (pair, class) in &result.class_map {
        by_class.entry(class.clone()).or_default().insert(pair.clone());
    }
    by_class.into_values().collect()
}

proptest! {
    #[test]
    fn partition_agrees_with_bruteforce_oracle(seed in any::<u64>()) {
        let d = random_diagram(seed, 4, 4, 4);
        prop_assert_eq!(oracle_partition(&d), colimit_partition(&d));
    }

    #[test]
    fn class_names_follow_the_least_member(seed in any::<u64>()) {
        let d = random_diagram(seed, 4, 4, 4);
        let result = colimit(&d);
        let mut by_class: BTreeMap<String, BTreeSet<Pair>> = BTreeMap::new();
        for (pair, class) in &result.class_map {
            by_class.entry(class.clone()).or_default().insert(pair.clone());
        }
        for (name, members) in by_class {
            let (node, elem) = members.iter().next().unwrap();
            prop_assert_eq!(name, format!("class({node}.{elem})"));
        }
    }

    #[test]
    fn injections_always_commute(seed in any::<u64>()) {
        let d = random_diagram(seed, 4, 4, 4);
        let result = colimit(&d);
        let report = check_cocone(&d, &result.as_cocone()).unwrap();
        prop_assert!(report.commutes());
    }

    #[test]
    fn factorization_is_unique_and_pointwise_correct(seed in any::<u64>()) {
        // Small sizes keep |vertex|^|apex| within the enumeration guard.
        let d = random_diagram(seed, 3, 3, 3);
        let result = colimit(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let vertex = FinSet::new((0..rng.gen_range(1..=2usize)).map(|k| format!("v{k}")));
        let vertex_elems: Vec<&String> = vertex.iter().collect();
        // Any function out of the apex induces a commuting cocone by
        // composing with the injections.
        let h = FinFn::new(
            result.apex.clone(),
            vertex.clone(),
            result
                .apex
                .iter()
                .map(|e| (e.clone(), vertex_elems[rng.gen_range(0..vertex_elems.len())].clone()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let cocone = Cocone {
            vertex: vertex.clone(),
            legs: result
                .injections
                .iter()
                .map(|(n, inj)| (n.clone(), inj.then(&h).unwrap()))
                .collect(),
        };
        let mediator = factorize(&result, &d, &cocone).unwrap();
        prop_assert_eq!(&mediator, &h);
        let report = verify_universal_property(&d, &cocone).unwrap();
        prop_assert!(report.holds());
    }
}

#[test]
fn empty_diagram_universality_has_one_empty_mediator() {
    let shape = ShapeGraph::new([], []).unwrap();
    let d = SetDiagram::new(shape, [], []).unwrap();
    let cocone = Cocone {
        vertex: FinSet::new([]),
        legs: BTreeMap::new(),
    };
    let report = verify_universal_property(&d, &cocone).unwrap();
    assert_eq!(report.candidates, 1);
    assert_eq!(report.mediators, 1);
    assert!(report.holds());
}

#[test]
fn nested_union_cardinality() {
    // W inside X and W inside Y glued over W: |apex| = |X| + |Y| - |W|.
    let w = FinSet::new(["w0".into(), "w1".into()]);
    let x = FinSet::new(["w0".into(), "w1".into(), "x0".into()]);
    let y = FinSet::new(["w0".into(), "w1".into(), "y0".into(), "y1".into()]);
    let shape = ShapeGraph::new(
        ["W", "X", "Y"].map(NodeId::new),
        [
            (EdgeId::new("i"), NodeId::new("W"), NodeId::new("X")),
            (EdgeId::new("j"), NodeId::new("W"), NodeId::new("Y")),
        ],
    )
    .unwrap();
    let inclusion = |dom: &FinSet, cod: &FinSet| {
        FinFn::new(
            dom.clone(),
            cod.clone(),
            dom.iter().map(|e| (e.clone(), e.clone())).collect::<Vec<_>>(),
        )
        .unwrap()
    };
    let d = SetDiagram::new(
        shape,
        [
            (NodeId::new("W"), w.clone()),
            (NodeId::new("X"), x.clone()),
            (NodeId::new("Y"), y.clone()),
        ],
        [
            (EdgeId::new("i"), inclusion(&w, &x)),
            (EdgeId::new("j"), inclusion(&w, &y)),
        ],
    )
    .unwrap();
    assert_eq!(colimit(&d).apex.len(), x.len() + y.len() - w.len());
}
