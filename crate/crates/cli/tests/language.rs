//! Round-trip and resolution tests over the shipped fixture corpus.

use std::fs;
use std::path::PathBuf;

use colimkit::canon::{canonical, serialize};
use colimkit::parser::parse;
use colimkit::resolve::resolve;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// All valid fixture documents, as (file name, text) pairs.
fn fixtures() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for entry in fs::read_dir(fixture_dir()).expect("fixture directory exists") {
        let path = entry.expect("directory entry").path();
        if path.extension().is_some_and(|e| e == "kit") {
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            let text = fs::read_to_string(&path).expect("fixture is readable");
            out.push((name, text));
        }
    }
    out.sort();
    assert!(
        out.len() >= 15,
        "fixture corpus shrank to {} documents",
        out.len()
    );
    out
}

#[test]
fn every_fixture_parses_and_resolves() {
    for (name, text) in fixtures() {
        let doc = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        resolve(&doc, 8).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn serialization_is_a_fixpoint_on_every_fixture() {
    for (name, text) in fixtures() {
        let doc = canonical(&parse(&text).unwrap());
        let first = serialize(&doc);
        let reparsed = parse(&first).unwrap_or_else(|e| panic!("{name} reserialized: {e}"));
        assert_eq!(canonical(&reparsed), doc, "{name}: parse of serialize differs");
        assert_eq!(
            serialize(&canonical(&reparsed)),
            first,
            "{name}: serialize is not idempotent"
        );
    }
}

#[test]
fn resolution_survives_canonical_reordering() {
    for (name, text) in fixtures() {
        let doc = canonical(&parse(&text).unwrap());
        resolve(&doc, 8).unwrap_or_else(|e| panic!("{name} canonicalized: {e}"));
    }
}

#[test]
fn bad_fixtures_are_rejected() {
    let dir = fixture_dir().join("bad");

    let syntax = fs::read_to_string(dir.join("syntax_error.kit")).unwrap();
    assert!(parse(&syntax).is_err());

    let semantic = fs::read_to_string(dir.join("semantic_unknown_object.kit")).unwrap();
    let doc = parse(&semantic).expect("the file is syntactically fine");
    let err = resolve(&doc, 8).unwrap_err();
    assert!(err.to_string().contains("`Z`"), "unexpected error: {err}");
}

#[test]
fn comments_and_member_order_do_not_change_the_canonical_form() {
    let a = "poset p { carrier = { y, x }; leq x y; } # trailing note\n";
    let b = "# leading note\nposet p { carrier = { x, y }; leq x y; }";
    let da = canonical(&parse(a).unwrap());
    let db = canonical(&parse(b).unwrap());
    assert_eq!(serialize(&da), serialize(&db));
}
