use std::path::PathBuf;
use std::process::{Command, Output};

use dualext::dual::build_dual_extension;
use dualext::spaces::{is_derivation, lie_derivation_space, LinearMap, LinearMapFile};
use dualext::{parse_quiver, print_quiver};
use serde_json::Value;

fn corpus(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../core/corpus");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn build_dimensions() {
    let o = run(&["build", &corpus("two_arrows.quiver"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dim"], 11);
    assert_eq!(v["basis"].as_array().unwrap().len(), 11);
    assert_eq!(v["shape"].as_array().unwrap().len(), 11);

    let o = run(&["build", &corpus("triangle.quiver"), "--json"]);
    assert_eq!(json(&o)["dim"], 21);

    let dir = tempfile::tempdir().unwrap();
    let point = write(&dir, "point.quiver", "quiver { vertices: 1; arrows: }");
    let o = run(&["build", &point, "--json"]);
    assert_eq!(json(&o)["dim"], 1);

    let o = run(&["build", &corpus("a2.quiver"), "--mode", "plain"]);
    assert_eq!(stdout(&o), "dim 3\n  e1\n  e2\n  alpha\n");
}

#[test]
fn spaces_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let point = write(&dir, "point.quiver", "quiver { vertices: 1; arrows: }");
    let v = json(&run(&["spaces", &point, "--json"]));
    let dims: Vec<u64> = [
        "derivations",
        "lie_derivations",
        "center",
        "central_annihilating",
    ]
    .iter()
    .map(|k| v[k]["dimension"].as_u64().unwrap())
    .collect();
    assert_eq!(dims, [0, 1, 1, 1]);

    let v = json(&run(&["spaces", &corpus("two_arrows.quiver"), "--json"]));
    assert_eq!(v["center"]["dimension"], 3);

    let v = json(&run(&["spaces", &corpus("chain.quiver"), "--json"]));
    let dim = |k: &str| v[k]["dimension"].as_u64().unwrap();
    assert_eq!(
        dim("lie_derivations"),
        dim("derivations") + dim("central_annihilating")
    );
}

#[test]
fn verify_fixtures_pass() {
    for f in ["two_arrows.quiver", "chain.quiver", "a2.quiver"] {
        let o = run(&["verify", &corpus(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn verify_random_quiver() {
    let dir = tempfile::tempdir().unwrap();
    let q = dualext::random::random_quiver(7);
    let path = write(&dir, "random.quiver", &print_quiver(&q));
    let o = run(&["verify", &path, "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json(&o)["pass"], true);
}

#[test]
fn corrupted_dump_fails_associativity() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = corpus("two_arrows.quiver");
    let mut dump = json(&run(&["build", &quiver, "--json"]));
    let basis: Vec<String> = dump["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    // scale the product of an arrow with a vertex idempotent: (x e) e and
    // x (e e) then disagree
    let table = dump["table"].as_array_mut().unwrap();
    let entry = table
        .iter_mut()
        .find(|t| {
            let (i, j) = (
                t[0].as_u64().unwrap() as usize,
                t[1].as_u64().unwrap() as usize,
            );
            basis[i] == "alpha" && basis[j].starts_with('e')
        })
        .unwrap();
    entry[2][0][1] = Value::String("2/1".into());
    let path = write(&dir, "corrupt.json", &dump.to_string());

    let o = run(&["verify", &quiver, "--algebra", &path]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL [dual] associativity"), "{out}");
    assert_eq!(
        out.lines()
            .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
            .count(),
        1
    );

    // the untouched dump passes the same route
    let clean = write(
        &dir,
        "clean.json",
        &stdout(&run(&["build", &quiver, "--json"])),
    );
    let o = run(&["verify", &quiver, "--algebra", &clean]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn decompose_bundled_maps() {
    let o = run(&[
        "decompose",
        &corpus("chain.quiver"),
        "--map",
        &corpus("chain_lie_map.json"),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["unique"], true);
    let basis: Vec<&str> = v["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    let e1 = basis.iter().position(|&b| b == "e1").unwrap();
    let aa = basis.iter().position(|&b| b == "alpha*.alpha").unwrap();
    // Δ(e1) = e1 + e2 + e3 + α*α for k1 = 1
    let col: Vec<&str> = v["central"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[e1].as_str().unwrap())
        .collect();
    assert_eq!(col[0], "1/1");
    assert_eq!(col[aa], "1/1");

    let o = run(&[
        "decompose",
        &corpus("chain.quiver"),
        "--map",
        &corpus("chain_non_lie_map.json"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not a Lie derivation"));
}

#[test]
fn decompose_zero_and_random_maps() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus("two_arrows.quiver")).unwrap();
    let quiver = corpus("two_arrows.quiver");
    let dx = build_dual_extension(&parse_quiver(&text).unwrap()).unwrap();
    let alg = &dx.algebra;

    let zero = write(
        &dir,
        "zero.json",
        &serde_json::to_string(&LinearMap::zero(alg.dim()).to_file(alg)).unwrap(),
    );
    let v = json(&run(&["decompose", &quiver, "--map", &zero, "--json"]));
    for key in ["derivation", "central"] {
        let rows = v[key].as_array().unwrap();
        assert!(
            rows.iter()
                .all(|r| r.as_array().unwrap().iter().all(|x| x == "0/1")),
            "{v}"
        );
    }

    let lie = lie_derivation_space(alg);
    let theta = lie.basis().last().unwrap();
    let map = write(
        &dir,
        "theta.json",
        &serde_json::to_string(&theta.to_file(alg)).unwrap(),
    );
    let v = json(&run(&["decompose", &quiver, "--map", &map, "--json"]));
    let read = |key: &str| {
        let file = LinearMapFile {
            basis: alg.labels(),
            matrix: serde_json::from_value(v[key].clone()).unwrap(),
        };
        LinearMap::from_file(&file, alg).unwrap()
    };
    let (d, c) = (read("derivation"), read("central"));
    assert_eq!(&d + &c, *theta);
    assert!(is_derivation(alg, &d));
}

#[test]
fn peirce_report_at_given_vertices() {
    let o = run(&[
        "peirce",
        &corpus("two_arrows.quiver"),
        "--vertex",
        "2",
        "--vertex",
        "3",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let dims: Vec<u64> = ["A", "M", "N", "B"]
        .iter()
        .map(|k| v["dims"][k].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [5, 2, 2, 2]);
    assert_eq!(v["pairing_dims"]["MN"], 0);
    assert!(v["lie_conditions"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn json_is_byte_stable() {
    for args in [
        ["verify", &corpus("two_arrows.quiver"), "--json"],
        ["spaces", &corpus("chain.quiver"), "--json"],
        ["peirce", &corpus("triangle.quiver"), "--json"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(&["build", "/nonexistent.quiver"]).status.code(),
        Some(2)
    );

    let bad = write(
        &dir,
        "bad.quiver",
        "quiver { vertices: 1; arrows: a: 1 -> 9; }",
    );
    let o = run(&["build", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    let cyclic = write(
        &dir,
        "cyclic.quiver",
        "quiver { vertices: 1; arrows: l: 1 -> 1; }",
    );
    assert_eq!(run(&["build", &cyclic]).status.code(), Some(2));

    let single = write(&dir, "single.quiver", "quiver { vertices: 1; arrows: }");
    assert_eq!(
        run(&["build", &single, "--mode", "onepoint"]).status.code(),
        Some(2)
    );

    let wrong_basis = write(&dir, "map.json", r#"{"basis":["e1"],"matrix":[["1/1"]]}"#);
    let o = run(&[
        "decompose",
        &corpus("two_arrows.quiver"),
        "--map",
        &wrong_basis,
    ]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(
        run(&["decompose", &corpus("two_arrows.quiver")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", &corpus("two_arrows.quiver"), "--vertex", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["build", "--mode", "bogus", &single]).status.code(),
        Some(2)
    );
}
