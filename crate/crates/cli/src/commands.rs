//! One function per CLI command. Each returns a `RunReport` whose status
//! fixes the exit code: 0 for positive results, 1 for sound negatives,
//! 2 for bounded searches that gave up, while input errors surface as
//! `CliError` (exit 3, or 2 when a bound was hit during validation).

use std::collections::BTreeMap;

use serde_json::{json, Value};

use colimkit_core::category::{check_category_axioms, commutative_normalize, is_token};
use colimkit_core::colimit::{
    check_cocone, colimit, factorize, verify_universal_property, ColimError, FinFn,
};
use colimkit_core::double::{eval_grid_boundary, grids_equal, is_commutative_cube, GridVerdict};
use colimkit_core::poset::{join_as_colimit_check, poset_join, JoinOutcome, PosetError};
use colimkit_core::relay::run_relay;

use crate::error::CliError;
use crate::report::{input_digest, object, RunReport, Status};
use crate::resolve::Env;

#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub depth: usize,
    pub word_depth: usize,
}

/// Picks the named entry, or the only one when no name was given.
fn pick<'m, T>(
    map: &'m BTreeMap<String, T>,
    chosen: Option<&str>,
    kind: &str,
) -> Result<(&'m String, &'m T), CliError> {
    match chosen {
        Some(name) => map.get_key_value(name).ok_or_else(|| {
            CliError::semantic(format!("the document defines no {kind} named `{name}`"))
        }),
        None => match map.len() {
            0 => Err(CliError::semantic(format!(
                "the document defines no {kind}"
            ))),
            1 => Ok(map.iter().next().expect("len is one")),
            _ => Err(CliError::usage(format!(
                "the document defines several {kind} blocks; choose one with --{kind} NAME"
            ))),
        },
    }
}

fn finfn_json(func: &FinFn) -> Value {
    Value::Object(
        func.assignments()
            .map(|(from, to)| (from.clone(), Value::String(to.clone())))
            .collect(),
    )
}

pub fn colim(env: &Env, canonical: &str, diagram: Option<&str>) -> Result<RunReport, CliError> {
    let (name, diagram) = pick(&env.diagrams, diagram, "diagram")?;
    let digest = input_digest(canonical, "colim", &[("diagram", name.clone())]);
    let result = colimit(diagram);
    let injections: Value = Value::Object(
        result
            .injections
            .iter()
            .map(|(node, inj)| (node.to_string(), finfn_json(inj)))
            .collect(),
    );
    let outcome = object([
        ("diagram", json!(name)),
        ("apex", json!(result.apex.iter().collect::<Vec<_>>())),
        ("apex_size", json!(result.apex.len())),
        ("injections", injections),
    ]);
    Ok(RunReport::new("colim", digest, Status::Ok, outcome))
}

/// Resolves the (diagram, cocone) pair shared by the cocone commands. An
/// explicit --diagram must agree with the cocone's declared diagram.
fn cocone_pair<'e>(
    env: &'e Env,
    diagram: Option<&str>,
    cocone: Option<&str>,
) -> Result<(&'e String, &'e colimkit_core::colimit::SetDiagram, &'e String, &'e colimkit_core::colimit::Cocone), CliError> {
    let (cocone_name, resolved) = pick(&env.cocones, cocone, "cocone")?;
    if let Some(wanted) = diagram {
        if wanted != resolved.diagram {
            return Err(CliError::semantic(format!(
                "cocone `{cocone_name}` is over diagram `{}`, not `{wanted}`",
                resolved.diagram
            )));
        }
    }
    let (diagram_name, diagram) = pick(&env.diagrams, Some(&resolved.diagram), "diagram")?;
    Ok((diagram_name, diagram, cocone_name, &resolved.cocone))
}

pub fn factor(
    env: &Env,
    canonical: &str,
    diagram: Option<&str>,
    cocone: Option<&str>,
) -> Result<RunReport, CliError> {
    let (diagram_name, diagram, cocone_name, cocone) = cocone_pair(env, diagram, cocone)?;
    let digest = input_digest(
        canonical,
        "factor",
        &[
            ("diagram", diagram_name.clone()),
            ("cocone", cocone_name.clone()),
        ],
    );
    let result = colimit(diagram);
    match factorize(&result, diagram, cocone) {
        Ok(mediator) => {
            let outcome = object([
                ("diagram", json!(diagram_name)),
                ("cocone", json!(cocone_name)),
                ("mediator", finfn_json(&mediator)),
                ("commutes", json!(true)),
            ]);
            Ok(RunReport::new("factor", digest, Status::Ok, outcome))
        }
        Err(ColimError::NonCommutingCocone { edge, element }) => {
            let outcome = object([
                ("diagram", json!(diagram_name)),
                ("cocone", json!(cocone_name)),
                ("mediator", Value::Null),
                ("commutes", json!(false)),
            ]);
            Ok(
                RunReport::new("factor", digest, Status::Refuted, outcome).with_witnesses(vec![
                    json!({"edge": edge.to_string(), "element": element}),
                ]),
            )
        }
        Err(other) => Err(CliError::semantic(other.to_string())),
    }
}

pub fn check_cocone_cmd(
    env: &Env,
    canonical: &str,
    diagram: Option<&str>,
    cocone: Option<&str>,
) -> Result<RunReport, CliError> {
    let (diagram_name, diagram, cocone_name, cocone) = cocone_pair(env, diagram, cocone)?;
    let digest = input_digest(
        canonical,
        "check-cocone",
        &[
            ("diagram", diagram_name.clone()),
            ("cocone", cocone_name.clone()),
        ],
    );
    let report =
        check_cocone(diagram, cocone).map_err(|e| CliError::semantic(e.to_string()))?;
    let status = if report.commutes() {
        Status::Ok
    } else {
        Status::Refuted
    };
    let outcome = object([
        ("diagram", json!(diagram_name)),
        ("cocone", json!(cocone_name)),
        ("commutes", json!(report.commutes())),
        ("failure_count", json!(report.failures.len())),
    ]);
    let witnesses = report
        .failures
        .iter()
        .map(|(edge, element)| json!({"edge": edge.to_string(), "element": element}))
        .collect();
    Ok(RunReport::new("check-cocone", digest, status, outcome).with_witnesses(witnesses))
}

pub fn join(
    env: &Env,
    canonical: &str,
    poset: Option<&str>,
    a: &str,
    b: &str,
    witness: Option<&str>,
) -> Result<RunReport, CliError> {
    let (name, poset) = pick(&env.posets, poset, "poset")?;
    let mut args = vec![
        ("poset", name.clone()),
        ("a", a.to_string()),
        ("b", b.to_string()),
    ];
    if let Some(w) = witness {
        args.push(("witness", w.to_string()));
    }
    let digest = input_digest(canonical, "join", &args);
    let semantic = |e: PosetError| CliError::semantic(e.to_string());
    let outcome_of = poset_join(poset, a, b).map_err(semantic)?;
    let upper_bounds = poset.upper_bounds(a, b).map_err(semantic)?;
    match outcome_of {
        JoinOutcome::NoJoin => {
            let outcome = object([
                ("poset", json!(name)),
                ("a", json!(a)),
                ("b", json!(b)),
                ("join", Value::Null),
                ("upper_bounds", json!(upper_bounds)),
            ]);
            Ok(RunReport::new("join", digest, Status::Refuted, outcome))
        }
        JoinOutcome::Join(j) => {
            let mut fields = vec![
                ("poset", json!(name)),
                ("a", json!(a)),
                ("b", json!(b)),
                ("join", json!(j)),
                ("upper_bounds", json!(upper_bounds)),
            ];
            if let Some(w) = witness {
                // With a span witness the join is further certified as the
                // colimit of a <- w -> b.
                let report = match join_as_colimit_check(poset, a, b, w) {
                    Ok(report) => report,
                    Err(e @ PosetError::NotLowerBound { .. }) => {
                        return Err(CliError::semantic(e.to_string()))
                    }
                    Err(e) => return Err(semantic(e)),
                };
                fields.push(("witness", json!(w)));
                fields.push(("receives_injections", json!(report.receives_injections)));
                fields.push(("mediates_to_all", json!(report.mediates_to_all)));
                fields.push(("confirmed", json!(report.confirmed())));
                let status = if report.confirmed() {
                    Status::Ok
                } else {
                    Status::Refuted
                };
                return Ok(RunReport::new("join", digest, status, object(fields)));
            }
            Ok(RunReport::new("join", digest, Status::Ok, object(fields)))
        }
    }
}

pub fn check_axioms(
    env: &Env,
    canonical: &str,
    category: Option<&str>,
) -> Result<RunReport, CliError> {
    let (name, resolved) = pick(&env.categories, category, "category")?;
    let digest = input_digest(canonical, "check-axioms", &[("category", name.clone())]);
    let table = resolved.table.as_ref().ok_or_else(|| {
        CliError::semantic(format!("category `{name}` declares no composition table"))
    })?;
    let report = check_category_axioms(table);
    let status = if report.is_category() {
        Status::Ok
    } else {
        Status::Refuted
    };
    let outcome = object([
        ("category", json!(name)),
        ("is_category", json!(report.is_category())),
        ("identity_failures", json!(report.identity_failures.len())),
        (
            "associativity_failures",
            json!(report.associativity_failures.len()),
        ),
    ]);
    let mut witnesses: Vec<Value> = report
        .identity_failures
        .iter()
        .map(|f| {
            json!({
                "kind": "identity",
                "arrow": f.arrow,
                "identity": f.identity,
                "got": f.got,
            })
        })
        .collect();
    witnesses.extend(report.associativity_failures.iter().map(|f| {
        json!({
            "kind": "associativity",
            "triple": [f.triple.0, f.triple.1, f.triple.2],
            "left_grouping": f.left_grouping,
            "right_grouping": f.right_grouping,
        })
    }));
    Ok(RunReport::new("check-axioms", digest, status, outcome).with_witnesses(witnesses))
}

pub fn normalize_word(atoms: &[String]) -> Result<RunReport, CliError> {
    for atom in atoms {
        if !is_token(atom) {
            return Err(CliError::usage(format!(
                "atom `{atom}` is not a token (letters, digits, and underscores only)"
            )));
        }
    }
    let digest = input_digest("", "normalize-word", &[("atoms", atoms.join(" "))]);
    let word = commutative_normalize(atoms);
    let outcome = object([
        ("atoms", json!(atoms)),
        ("counts", json!(word.counts())),
        ("word", json!(word.to_string())),
    ]);
    Ok(RunReport::new("normalize-word", digest, Status::Ok, outcome))
}

pub fn grid_boundary(env: &Env, canonical: &str, grid: Option<&str>) -> Result<RunReport, CliError> {
    let (name, resolved) = pick(&env.grids, grid, "grid")?;
    let digest = input_digest(canonical, "grid-boundary", &[("grid", name.clone())]);
    let boundary = eval_grid_boundary(&resolved.grid);
    let outcome = object([
        ("grid", json!(name)),
        ("category", json!(resolved.category)),
        ("rows", json!(resolved.grid.rows())),
        ("cols", json!(resolved.grid.cols())),
        ("top", json!(boundary.top.to_string())),
        ("bottom", json!(boundary.bottom.to_string())),
        ("left", json!(boundary.left.to_string())),
        ("right", json!(boundary.right.to_string())),
    ]);
    Ok(RunReport::new("grid-boundary", digest, Status::Ok, outcome))
}

fn verdict_fields(verdict: GridVerdict) -> (Status, &'static str) {
    match verdict {
        GridVerdict::Equal => (Status::Ok, "Equal"),
        GridVerdict::BoundaryMismatch => (Status::Refuted, "BoundaryMismatch"),
        GridVerdict::NotProven => (Status::Inconclusive, "NotProven"),
    }
}

pub fn grid_equal(
    env: &Env,
    canonical: &str,
    left: &str,
    right: &str,
    bounds: Bounds,
) -> Result<RunReport, CliError> {
    let (left_name, left) = pick(&env.grids, Some(left), "grid")?;
    let (right_name, right) = pick(&env.grids, Some(right), "grid")?;
    if left.category != right.category {
        return Err(CliError::semantic(format!(
            "grids `{left_name}` and `{right_name}` live over different categories"
        )));
    }
    let pres = &env.categories[&left.category].presentation;
    let digest = input_digest(
        canonical,
        "grid-equal",
        &[
            ("left", left_name.clone()),
            ("right", right_name.clone()),
            ("depth", bounds.depth.to_string()),
            ("word-depth", bounds.word_depth.to_string()),
        ],
    );
    let verdict = grids_equal(pres, &left.grid, &right.grid, bounds.depth, bounds.word_depth)
        .map_err(|e| CliError::semantic(e.to_string()))?;
    let (status, verdict_name) = verdict_fields(verdict);
    let outcome = object([
        ("left", json!(left_name)),
        ("right", json!(right_name)),
        ("verdict", json!(verdict_name)),
        ("depth", json!(bounds.depth)),
        ("word_depth", json!(bounds.word_depth)),
    ]);
    Ok(RunReport::new("grid-equal", digest, status, outcome))
}

pub fn cube_check(
    env: &Env,
    canonical: &str,
    cube: Option<&str>,
    bounds: Bounds,
) -> Result<RunReport, CliError> {
    let (name, resolved) = pick(&env.cubes, cube, "cube")?;
    let pres = &env.categories[&resolved.category].presentation;
    let digest = input_digest(
        canonical,
        "cube-check",
        &[
            ("cube", name.clone()),
            ("depth", bounds.depth.to_string()),
            ("word-depth", bounds.word_depth.to_string()),
        ],
    );
    let verdict = is_commutative_cube(pres, &resolved.cube, bounds.depth, bounds.word_depth)
        .map_err(|e| CliError::semantic(e.to_string()))?;
    let (status, verdict_name) = verdict_fields(verdict);
    let outcome = object([
        ("cube", json!(name)),
        ("category", json!(resolved.category)),
        ("verdict", json!(verdict_name)),
        ("depth", json!(bounds.depth)),
        ("word_depth", json!(bounds.word_depth)),
    ]);
    Ok(RunReport::new("cube-check", digest, status, outcome))
}

/// Default offset between the split seed and the route seed, so one --seed
/// still drives two independent stages.
pub const ROUTE_SEED_OFFSET: u64 = 0x9E3779B97F4A7C15;

#[allow(clippy::too_many_arguments)]
pub fn relay_demo(
    env: &Env,
    canonical: &str,
    message: Option<&str>,
    network: Option<&str>,
    parts: usize,
    seed: u64,
    route_seed: Option<u64>,
) -> Result<RunReport, CliError> {
    if parts == 0 {
        return Err(CliError::usage("--parts must be at least 1"));
    }
    let (message_name, message) = pick(&env.messages, message, "message")?;
    let (network_name, network) = pick(&env.networks, network, "network")?;
    let route_seed = route_seed.unwrap_or(seed ^ ROUTE_SEED_OFFSET);
    let digest = input_digest(
        canonical,
        "relay-demo",
        &[
            ("message", message_name.clone()),
            ("network", network_name.clone()),
            ("parts", parts.to_string()),
            ("seed", seed.to_string()),
            ("route-seed", route_seed.to_string()),
        ],
    );
    let run = run_relay(message, parts, network, seed, route_seed)
        .map_err(|e| CliError::semantic(e.to_string()))?;
    let roundtrip = run.output == *message;
    let text = |bytes: &[u8]| String::from_utf8_lossy(bytes).into_owned();
    let outcome = object([
        ("message", json!(message_name)),
        ("network", json!(network_name)),
        ("input", json!(text(&message.0))),
        ("parts", json!(parts)),
        ("seed", json!(seed)),
        ("route_seed", json!(route_seed)),
        (
            "part_payloads",
            json!(run.parts.iter().map(|p| text(&p.payload)).collect::<Vec<_>>()),
        ),
        (
            "routes",
            json!(run
                .routes
                .iter()
                .map(|route| route.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
        ),
        ("delivered_order", json!(run.delivered_order)),
        ("output", json!(text(&run.output.0))),
        ("roundtrip", json!(roundtrip)),
    ]);
    let status = if roundtrip { Status::Ok } else { Status::Refuted };
    Ok(RunReport::new("relay-demo", digest, status, outcome))
}

pub fn verify_universal(
    env: &Env,
    canonical: &str,
    diagram: Option<&str>,
    cocone: Option<&str>,
) -> Result<RunReport, CliError> {
    let (diagram_name, diagram, cocone_name, cocone) = cocone_pair(env, diagram, cocone)?;
    let digest = input_digest(
        canonical,
        "verify-universal",
        &[
            ("diagram", diagram_name.clone()),
            ("cocone", cocone_name.clone()),
        ],
    );
    match verify_universal_property(diagram, cocone) {
        Ok(report) => {
            let status = if report.holds() {
                Status::Ok
            } else {
                Status::Refuted
            };
            let outcome = object([
                ("diagram", json!(diagram_name)),
                ("cocone", json!(cocone_name)),
                ("candidates", json!(report.candidates)),
                ("mediators", json!(report.mediators)),
                ("matches_factorization", json!(report.matches_factorization)),
                ("holds", json!(report.holds())),
            ]);
            Ok(RunReport::new("verify-universal", digest, status, outcome))
        }
        Err(ColimError::NonCommutingCocone { edge, element }) => {
            let outcome = object([
                ("diagram", json!(diagram_name)),
                ("cocone", json!(cocone_name)),
                ("holds", json!(false)),
            ]);
            Ok(RunReport::new("verify-universal", digest, Status::Refuted, outcome)
                .with_witnesses(vec![
                    json!({"edge": edge.to_string(), "element": element}),
                ]))
        }
        Err(ColimError::SearchSpaceTooLarge { size, ceiling }) => Err(CliError::Undecided {
            message: format!(
                "universality enumeration needs {size} candidates, above the ceiling of {ceiling}"
            ),
        }),
        Err(other) => Err(CliError::semantic(other.to_string())),
    }
}
