use std::path::PathBuf;
use std::process::{Command, Output};

use csg::schema::{algebra_to_json, read_algebra, read_group, AnyAlgebra};
use csg_core::field::Rationals;
use csg_core::gpar::ParityGroup;
use csg_core::twalg::{cyclic_group_algebra, ground_field, quaternions, truncated_polynomial};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn csg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn env_compose_reproduces_the_worked_composite() {
    let (phi, psi) = (data("phi.json"), data("psi.json"));
    let o = csg(&["compose", "--family", "env", "--lhs", &phi, "--rhs", &psi]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        json(&o)["composite"],
        "(phi∘psi; (3<6; h11g41, h11g42), (), (1<4<2<5; h33g31, h31g11, h31g12, h31g13))"
    );
    let o2 = csg(&["env-compose", "--lhs", &phi, "--rhs", &psi]);
    assert_eq!(o.stdout, o2.stdout);
}

#[test]
fn homology_writes_the_result_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let o = csg(&[
        "homology", "--family", "cyclic", "--algebra", &data("Q.json"), "--variant", "positive", "--max-degree", "5",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["dims", "complexDims", "field", "instance"]);
    assert_eq!(v["dims"], serde_json::json!([1, 0, 1, 0, 1]));
    assert_eq!(v["complexDims"].as_array().unwrap().len(), 6);
    assert_eq!((v["field"].as_str(), v["instance"].as_str()), (Some("Q"), Some("cyclic")));
}

#[test]
fn hochschild_values_through_the_cli() {
    let dims = |alg: &str, n: &str| {
        let o = csg(&["homology", "--family", "cyclic", "--algebra", &data(alg), "--variant", "hochschild", "--max-degree", n]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        json(&o)["dims"].clone()
    };
    assert_eq!(dims("Q.json", "5"), serde_json::json!([1, 0, 0, 0, 0]));
    assert_eq!(dims("dual-numbers.json", "5"), serde_json::json!([2, 1, 1, 1, 1]));
    assert_eq!(dims("QC2.json", "4"), serde_json::json!([2, 0, 0, 0]));
}

#[test]
fn twisted_symmetric_axioms_pass() {
    let o = csg(&["axioms", "--family", "twisted-symmetric", "--group", &data("C4q.json"), "--max-level", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["violations"], serde_json::json!([]));
    assert_eq!(v["instance"], "twisted-symmetric");
}

#[test]
fn sampled_runs_are_byte_stable() {
    let run = |seed: &str| {
        csg(&["axioms", "--family", "hyperoctahedral", "--max-level", "3", "--exhaustive-bound", "10", "--samples", "50", "--seed", seed])
    };
    let (a, b, c) = (run("7"), run("7"), run("8"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(c.status.code(), Some(0));
    assert_ne!(a.stdout, c.stdout, "the seed is part of the report");
    assert_eq!(json(&a)["sampledLevels"], serde_json::json!([2, 3]));
}

#[test]
fn verification_failures_exit_one() {
    let o = csg(&["axioms", "--family", "hyperoctahedral", "--max-level", "2", "--corrupt", "inverted-parity-branch"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["violationCounts"].as_object().unwrap().contains_key("(3.h)"));

    let o = csg(&["validate-algebra", "--algebra", &data("H-even-t-as-odd.json")]);
    assert_eq!(o.status.code(), Some(1));
    let laws: Vec<String> =
        json(&o)["violations"].as_array().unwrap().iter().map(|v| v["law"].as_str().unwrap().to_string()).collect();
    assert!(laws.contains(&"anti-homomorphism".to_string()));

    let o = csg(&["validate-algebra", "--algebra", &data("H.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"field":"Q","dim":1,"unit":[1],"mult":[[[1]]],"group":{"family":"trivial"},"colour":1}"#).unwrap();
    let missing = dir.path().join("missing.json");
    let cases: Vec<Vec<String>> = vec![
        vec!["frobnicate".into()],
        vec!["homology".into(), "--family".into(), "cyclic".into()],
        vec!["homology", "--family", "cyclic", "--algebra", bad.to_str().unwrap(), "--max-degree", "2"].into_iter().map(String::from).collect(),
        vec!["homology", "--family", "cyclic", "--algebra", missing.to_str().unwrap(), "--max-degree", "2"].into_iter().map(String::from).collect(),
        vec!["theta", "--family", "braid", "e@1"].into_iter().map(String::from).collect(),
        vec!["theta", "--family", "twisted-symmetric", "(;0,1)"].into_iter().map(String::from).collect(),
        vec!["compose", "--family", "cyclic", "d0 * e@0", "d0 * e@0"].into_iter().map(String::from).collect(),
        vec!["homology", "--family", "cyclic", "--algebra", &data("F5.json"), "--max-degree", "5"].into_iter().map(String::from).collect(),
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let o = csg(&refs);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let help = csg(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("homology"));
}

#[test]
fn element_and_morphism_commands() {
    let o = csg(&["compose", "--family", "dihedral", "s0 * y@2", "d1 * x@1"]);
    assert_eq!(json(&o)["composite"], "id * x y@1");
    let o = csg(&["theta", "--family", "quaternionic", "x^3 y@2", "--format", "csv"]);
    assert_eq!(stdout(&o), "instance,element,theta,sign\nquaternionic,x^3 y@2,\"[2,1,0]\",-1\n");
    let o = csg(&["lambda", "--family", "dihedral", "d1 * x y@1"]);
    assert_eq!(json(&o)["wreath"], "(y@0,y@0;0,1)");
    let o = csg(&["duality", "--family", "quaternionic", "s0 * x@2"]);
    assert_eq!(json(&o)["dual"], "d2 * x^3@1");
    let o = csg(&["duality", "--family", "symmetric", "s0 * (;0,1,2)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fiso_gives_the_block_form() {
    let o = csg(&["fiso", "--env", &data("psi.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    // element 1 goes to position 4, element 2 to position 2, …
    assert_eq!(v["sigma"], serde_json::json!([3, 1, 5, 2, 0, 4]));
    assert_eq!(v["labels"], serde_json::json!(["g13", "g11", "g12", "g31", "g42", "g41"]));
    assert_eq!(v["roundTrip"], true);
    let o = csg(&["fiso", "(e; (), ())"]);
    assert_eq!(json(&o)["map"], Value::Null);
}

#[test]
fn bar_matrix_and_oracle() {
    let o = csg(&["bar-matrix", "--family", "quaternionic", "--algebra", &data("H.json"), "x@0"]);
    assert_eq!(o.status.code(), Some(2), "morphisms need the `gens * element` form");
    let o = csg(&["bar-matrix", "--family", "quaternionic", "--algebra", &data("H.json"), "id * x@0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    // x₀ acts on A by t²: (1, i, j, k) ↦ (1, −i, −j, k)
    assert_eq!(stdout(&o), "1,0,0,0\n0,-1,0,0\n0,0,-1,0\n0,0,0,1\n");
    for alg in ["Q.json", "QC2.json", "dual-numbers.json"] {
        let o = csg(&["oracle", "--algebra", &data(alg), "--max-degree", "5", "--compare"]);
        assert_eq!(o.status.code(), Some(0), "{alg}");
        assert_eq!(json(&o)["agree"], true);
    }
}

#[test]
fn shipped_data_matches_the_library_constructions() {
    let j = |a: AnyAlgebra| match a {
        AnyAlgebra::Q(a) => algebra_to_json(&a),
        AnyAlgebra::P(a) => algebra_to_json(&a),
    };
    let load = |n: &str| j(read_algebra(std::path::Path::new(&data(n))).unwrap());
    assert_eq!(load("H.json"), algebra_to_json(&quaternions(Rationals, true)));
    assert_eq!(load("dual-numbers.json")["mult"], algebra_to_json(&truncated_polynomial(Rationals, 2).unwrap())["mult"]);
    assert_eq!(load("Q.json")["mult"], algebra_to_json(&ground_field(Rationals))["mult"]);
    let c2 = cyclic_group_algebra(Rationals, 2, ParityGroup::c2_odd()).unwrap();
    assert_eq!(load("QC2-involution.json")["mult"], algebra_to_json(&c2)["mult"]);
    assert_eq!(load("QC2-involution.json")["actions"], algebra_to_json(&c2)["actions"]);
    assert!(read_group(std::path::Path::new(&data("C4q.json"))).unwrap().same_structure(&ParityGroup::c4_q()));
}

#[test]
fn table_groups_load_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("v4.json");
    std::fs::write(
        &p,
        r#"{"family":"table","elements":["e","a","b","c"],
            "table":[["e","a","b","c"],["a","e","c","b"],["b","c","e","a"],["c","b","a","e"]],
            "parity":[1,-1,-1,1]}"#,
    )
    .unwrap();
    let g = read_group(&p).unwrap();
    assert_eq!(g.order(), 4);
    let o = csg(&["axioms", "--family", "twisted-symmetric", "--group", p.to_str().unwrap(), "--max-level", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = csg(&["axioms", "--family", "cyclic-x-group", "--group", p.to_str().unwrap(), "--max-level", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["instance"], "cyclic-x-group");
}

#[test]
fn in_process_run_matches_the_binary() {
    let args = ["csg", "theta", "--family", "dihedral", "x y@3", "--format", "pretty"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(csg::run(args, &mut out, &mut err), 0);
    assert_eq!(out, csg(&args[1..]).stdout);
    assert!(err.is_empty());
}
