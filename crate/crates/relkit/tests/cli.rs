use std::path::PathBuf;
use std::process::Command;

use relkit::cli::{run_command, CliOutput};
use relkit::doc::{self, print_document, Document, MorphismDoc, RelGpdDoc};
use relkit::relgpd::{build_example, Example};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("relkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> CliOutput {
    let mut argv = vec!["relkit"];
    argv.extend_from_slice(args);
    run_command(&argv)
}

#[test]
fn frobenius_check_finds_the_unit() {
    let out = run(&["check", "frobenius", &data("z2.json")]);
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.contains("U={0}"));
}

#[test]
fn counterexample_fails_with_witness() {
    let out = run(&["rsg", "check", &data("counterexample5.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("A.5: L3∘(L1×L1)={3} ≠ L1={1}"), "{}", out.stdout);
    assert!(out.stdout.contains("A.6: L2∘L1={3} ≠ L1={1}"));
    assert!(out.stdout.contains("L1={1}"));
}

#[test]
fn diagonal_classifies_as_lagrangian() {
    let out = run(&["symp", "classify", "--subspace", &data("diag.json")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("lagrangian"));
}

#[test]
fn poisson_commands() {
    let out = run(&["poisson", "from-lie", &data("so3.json")]);
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.contains("\"kind\": \"bivector\""));
    let out = run(&["poisson", "check", &data("perturbed.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("SN: J^{123} = x1"), "{}", out.stdout);
    let out = run(&["poisson", "bracket", &data("perturbed.json")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("{f,g}=0"));
}

#[test]
fn parity_regularity_and_reduction() {
    let out = run(&["rsg", "regularity", &data("parity8.json")]);
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.contains("|M|=1"));
    assert!(out.stdout.contains("|C/L2|=2"));
    let path = scratch("reduced.json");
    let out = run(&["rsg", "reduce", &data("parity8.json"), "-o", &path]);
    assert_eq!(out.code, 0);
    let Document::Groupoid(g) = doc::read_document(&path).unwrap() else {
        panic!("expected a groupoid");
    };
    assert_eq!((g.objects.len(), g.arrows.len()), (1, 2));
    let out = run(&["check", "groupoid", &path]);
    assert_eq!(out.code, 0);
}

#[test]
fn conversions_round_trip() {
    let gpd = scratch("z2-gpd.json");
    assert_eq!(run(&["convert", "frob-to-gpd", &data("z2.json"), "-o", &gpd]).code, 0);
    let frob = scratch("z2-frob.json");
    assert_eq!(run(&["convert", "gpd-to-frob", &gpd, "-o", &frob]).code, 0);
    assert_eq!(doc::read_document(&frob).unwrap(), doc::read_document(&data("z2.json")).unwrap());

    let sgpd = scratch("z2-sgpd.json");
    let hstar = scratch("z2-hstar.json");
    let text = std::fs::read_to_string(data("z2.json")).unwrap().replace("frobenius", "hstar");
    std::fs::write(&hstar, text).unwrap();
    assert_eq!(run(&["convert", "hstar-to-sgpd", &hstar, "-o", &sgpd]).code, 0);
    assert_eq!(run(&["check", "semigroupoid", &sgpd]).code, 0);
    let out = run(&["convert", "sgpd-to-hstar", &sgpd]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("\"kind\": \"hstar\""));
}

#[test]
fn failing_conversion_exits_one() {
    let out = run(&["convert", "frob-to-gpd", &data("counterexample5.json")]);
    assert_eq!(out.code, 2, "wrong kind is a usage error");
    let bad = scratch("bad-frob.json");
    std::fs::write(&bad, r#"{"kind":"frobenius","carrier":["0","1"],"triples":[["0","0","1"]]}"#).unwrap();
    let out = run(&["convert", "frob-to-gpd", &bad]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL"));
}

#[test]
fn morphism_block() {
    let c = build_example(Example::Parity(4)).unwrap();
    let Document::Relgpd(RelGpdDoc::Set { carrier, triples, inverse, .. }) = doc::relgpd_doc(&c) else {
        panic!("set mode");
    };
    assert_eq!(run(&["rsg", "derive", &data("parity8.json")]).code, 0);
    let same_parity: Vec<(String, String)> = (0..4)
        .flat_map(|a| (0..4).filter(move |b| (a + b) % 2 == 0).map(move |b| (a.to_string(), b.to_string())))
        .collect();
    let with = |equivalence| {
        Document::Relgpd(RelGpdDoc::Set {
            carrier: carrier.clone(),
            triples: triples.clone(),
            inverse: inverse.clone(),
            morphism: Some(MorphismDoc {
                equivalence,
                pairs: Some(same_parity.clone()),
                basis: None,
            }),
        })
    };
    let path = scratch("parity4-morphism.json");
    std::fs::write(&path, print_document(&with(true))).unwrap();
    let out = run(&["rsg", "morphism", &path]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("F†∘F=L2: pass"));

    let swapped: Vec<(String, String)> = vec![("0".into(), "1".into())];
    let Document::Relgpd(RelGpdDoc::Set { carrier, triples, inverse, .. }) = with(false) else { unreachable!() };
    let bad = Document::Relgpd(RelGpdDoc::Set {
        carrier,
        triples,
        inverse,
        morphism: Some(MorphismDoc { equivalence: false, pairs: Some(swapped), basis: None }),
    });
    std::fs::write(&path, print_document(&bad)).unwrap();
    assert_eq!(run(&["rsg", "morphism", &path]).code, 1);
}

#[test]
fn usage_and_schema_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["check"]).code, 2);
    assert_eq!(run(&["check", "monoid", &data("z2.json")]).code, 2);
    assert_eq!(run(&["check", "groupoid", &data("z2.json")]).code, 2);
    let bad = scratch("bad-rational.json");
    std::fs::write(&bad, r#"{"kind":"symp-space","omega":[["0","1/0"],["-1","0"]]}"#).unwrap();
    let out = run(&["symp", "reduce", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("omega"));
    let broken = scratch("broken.json");
    std::fs::write(&broken, "{\"kind\": \"relation\",\n  \"src\": [").unwrap();
    let out = run(&["check", "frobenius", &broken]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
}

#[test]
fn missing_file_and_budget_exit_one() {
    assert_eq!(run(&["check", "frobenius", "/nonexistent/x.json"]).code, 1);
    let out = run(&["--budget", "10", "rsg", "check", &data("parity8.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("budget"), "{}", out.stderr);
}

#[test]
fn machine_report_agrees_with_exit_code() {
    for (args, code) in [
        (vec!["rsg", "check", "counterexample5.json"], 1),
        (vec!["rsg", "check", "parity8.json"], 0),
        (vec!["check", "frobenius", "z2.json"], 0),
    ] {
        let report = scratch("report.json");
        let mut argv: Vec<String> = args.iter().map(|a| if a.ends_with(".json") { data(a) } else { a.to_string() }).collect();
        argv.extend(["--report".into(), report.clone()]);
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        let out = run(&argv);
        assert_eq!(out.code, code);
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["verdict"], code == 0);
        let any_false = v["laws"].as_object().unwrap().values().any(|b| b == false);
        assert_eq!(any_false, code == 1);
        let w = v["witnesses"].as_array().unwrap();
        let mut sorted = w.clone();
        sorted.sort_by_key(|x| x.to_string());
        assert_eq!(w.len(), sorted.len());
    }
}

#[test]
fn reports_are_byte_deterministic() {
    let path = scratch("det.json");
    let once = || {
        let out = run(&["rsg", "check", &data("counterexample5.json"), "--report", &path]);
        (out, std::fs::read(&path).unwrap())
    };
    assert_eq!(once(), once());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_relkit");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["check", "frobenius", &data("z2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("U={0}"));
    assert_eq!(status(&["rsg", "check", &data("counterexample5.json")]).status.code(), Some(1));
    assert_eq!(status(&["nonsense"]).status.code(), Some(2));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}
