use std::fs;
use std::path::Path;

use lamsep::io::{json, pace};
use lamsep::{Certificate, SeparationFamily};
use lamsep_cli::{run, CommandResult};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn lamsep(args: &[&str]) -> CommandResult {
    run(std::iter::once("lamsep").chain(args.iter().copied()))
}

#[test]
fn build_td_writes_decomposition_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p5.td");
    let dot = dir.path().join("p5.dot");
    let r = lamsep(&[
        "build-td",
        "--graph",
        &fixture("p5.gr"),
        "--seps",
        &fixture("p5_family.json"),
        "--out",
        out.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.summary);
    assert_eq!(r.payload, None);
    assert_eq!(fs::read_to_string(&out).unwrap(), fs::read_to_string(fixture("p5.td")).unwrap());
    let dot = fs::read_to_string(&dot).unwrap();
    assert!(dot.starts_with("graph td {"));
    assert!(dot.contains("1 [label=\"1: {2}\", shape=ellipse];"));
}

#[test]
fn build_td_rejects_crossing_family() {
    let r = lamsep(&["build-td", "--graph", &fixture("c4.gr"), "--seps", &fixture("c4_crossing.json")]);
    assert_eq!(r.code, 1);
    assert!(r.summary.contains("not laminar"), "{}", r.summary);
}

#[test]
fn star_family_builds_a_star() {
    let r = lamsep(&["build-td", "--graph", &fixture("k13.gr"), "--seps", &fixture("k13_star.json")]);
    assert_eq!(r.code, 0);
    let td = pace::read_td(r.payload.as_deref().unwrap()).unwrap();
    assert_eq!(td.node_count(), 4);
    assert_eq!(td.bag(0).to_vec(), [1]);
}

#[test]
fn tau_and_project_agree_on_p5() {
    let tau = lamsep(&["tau", "--graph", &fixture("p5.gr"), "--td", &fixture("p5.td")]);
    let projected = lamsep(&["project", "--seps", &fixture("p5_family.json")]);
    assert_eq!(tau.code, 0);
    assert_eq!(tau.payload, projected.payload);
}

#[test]
fn gen_writes_graph_and_family() {
    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("g.gr");
    let seps = dir.path().join("f.json");
    let r = lamsep(&[
        "gen",
        "--model",
        "grid",
        "--rows",
        "2",
        "--cols",
        "3",
        "--seed",
        "7",
        "--out",
        gr.to_str().unwrap(),
        "--family",
        "greedy",
        "--seps-out",
        seps.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.summary);
    let g = pace::read_graph(&fs::read_to_string(&gr).unwrap()).unwrap();
    assert_eq!((g.n(), g.edges().len()), (6, 7));
    let f = json::read_family(&fs::read_to_string(&seps).unwrap()).unwrap();
    assert!(f.is_laminar());
    let check = lamsep(&["check-laminar", "--graph", gr.to_str().unwrap(), "--seps", seps.to_str().unwrap()]);
    assert_eq!(check.code, 0);
}

#[test]
fn gen_reports_missing_parameters() {
    let r = lamsep(&["gen", "--model", "grid", "--rows", "2", "--seed", "0"]);
    assert_eq!(r.code, 2);
    assert!(r.summary.contains("--cols"), "{}", r.summary);
    let r = lamsep(&["gen", "--model", "path", "--n", "5", "--seed", "0", "--family", "greedy"]);
    assert_eq!(r.code, 2);
    let r = lamsep(&["gen", "--model", "gnp", "--n", "4", "--p", "1.5", "--seed", "0"]);
    assert_eq!(r.code, 2);
}

#[test]
fn minimal_cutsets_and_width() {
    let r = lamsep(&["minimal-cutsets", "--graph", &fixture("c4.gr"), "--max-size", "2"]);
    assert_eq!(r.payload.as_deref(), Some("{\n  \"cutsets\": [\n    [1, 3],\n    [2, 4]\n  ]\n}\n"));
    let r = lamsep(&["width", "--td", &fixture("p5.td")]);
    assert_eq!(r.summary, "width 2");
    let r = lamsep(&["width", "--td", &fixture("p5.td"), "--paper-literal-width"]);
    assert_eq!(r.summary, "width 0");
}

#[test]
fn validate_td_reports_violations() {
    let r = lamsep(&["validate-td", "--graph", &fixture("p5.gr"), "--td", &fixture("p5.td")]);
    assert_eq!((r.code, r.summary.as_str()), (0, "valid deciduous tree decomposition"));
    let r = lamsep(&["validate-td", "--graph", &fixture("p3.gr"), "--td", &fixture("p3_two_bags.td")]);
    assert_eq!((r.code, r.summary.as_str()), (0, "valid tree decomposition"));

    let dir = tempfile::tempdir().unwrap();
    let td = dir.path().join("bad.td");
    fs::write(&td, "s td 2 2 5\nb 1 1 2\nb 2 4 5\n1 2\n").unwrap();
    let r = lamsep(&["validate-td", "--graph", &fixture("p5.gr"), "--td", td.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.summary.contains('3'), "{}", r.summary);
}

#[test]
fn parse_errors_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("broken.gr");
    fs::write(&gr, "p tw 3 2\n1 2\n").unwrap();
    let r = lamsep(&["minimal-cutsets", "--graph", gr.to_str().unwrap(), "--max-size", "1"]);
    assert_eq!(r.code, 2);
    assert!(r.summary.contains("broken.gr"), "{}", r.summary);
}

#[test]
fn help_is_not_an_error() {
    let r = lamsep(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.payload.unwrap().contains("check-laminar"));
}

#[test]
fn replay_reruns_the_recorded_instance() {
    let dir = tempfile::tempdir().unwrap();
    let g = pace::read_graph(&fs::read_to_string(fixture("c4.gr")).unwrap()).unwrap();

    let crossing = json::read_family(&fs::read_to_string(fixture("c4_crossing.json")).unwrap()).unwrap();
    let path = dir.path().join("crossing.json");
    fs::write(&path, Certificate::new("laminar", Some(&g), &crossing, serde_json::Value::Null).to_json()).unwrap();
    let r = lamsep(&["selfcheck", "--replay", path.to_str().unwrap()]);
    assert_eq!(r.code, 1, "{}", r.summary);
    assert!(r.summary.starts_with("reproduced: laminar"), "{}", r.summary);

    let single = SeparationFamily::from_members(4, [crossing.members()[0].clone()]).unwrap();
    fs::write(&path, Certificate::new("build-deciduous-td", Some(&g), &single, serde_json::Value::Null).to_json())
        .unwrap();
    let r = lamsep(&["selfcheck", "--replay", path.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.summary);

    fs::write(&path, Certificate::new("locations", None, &single, serde_json::Value::Null).to_json()).unwrap();
    let r = lamsep(&["selfcheck", "--replay", path.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.summary);

    fs::write(&path, "{ not json").unwrap();
    assert_eq!(lamsep(&["selfcheck", "--replay", path.to_str().unwrap()]).code, 2);
}
