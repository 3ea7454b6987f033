//! The JSON files under `fixtures/` describe the same data as `toric::fixtures`.

use kotoric::toric::fixtures;
use kotoric::{QuasitoricManifold, SimplicialComplex};

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn manifold_files_match_builders() {
    let cases = [
        ("cp1", fixtures::cp(1)),
        ("cp2", fixtures::cp(2)),
        ("cp3", fixtures::cp(3)),
        ("cp4", fixtures::cp(4)),
        ("cp5", fixtures::cp(5)),
        ("cp1xcp1", fixtures::cp1_x_cp1()),
        ("hirzebruch1", fixtures::hirzebruch(1)),
        ("point", fixtures::point()),
    ];
    for (name, mfd) in cases {
        assert_eq!(QuasitoricManifold::from_json(&read(name)).unwrap(), mfd, "{name}");
    }
    assert!(QuasitoricManifold::from_json(&read("bad_lambda")).is_err());
}

#[test]
fn complex_files() {
    let two = SimplicialComplex::from_json(&read("two_points")).unwrap();
    assert_eq!((two.vertices(), two.facets().len()), (2, 2));
    let l = SimplicialComplex::from_json(&read("L")).unwrap();
    assert_eq!(l.minimal_nonfaces().len(), 2);
    assert_eq!(l.faces().len(), 10);
}
