use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;

use optcalc::cli::examples::EXAMPLES;
use optcalc::cli::rulefile::RuleFile;
use optcalc::freealg::{Field, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("optcalc").chain(args.iter().copied());
    let code = optcalc::cli::run(argv, &mut out, &mut err);
    Outcome { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.code, 0, "{args:?} failed: {}", o.err);
    o.out
}

/// Writes the rule file of a built-in example into `dir`.
fn example_file(dir: &TempDir, name: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}.json"));
    fs::write(&path, ok(&["examples", "show", name])).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn dims(report: &Value) -> Vec<(u64, u64, u64)> {
    report["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| (d["s"].as_u64().unwrap(), d["dim_ideal"].as_u64().unwrap(), d["dim_quotient"].as_u64().unwrap()))
        .collect()
}

#[test]
fn derive_and_diff_on_the_split_rule() {
    let dir = TempDir::new().unwrap();
    let rule = example_file(&dir, "ex3.5");
    assert_eq!(ok(&["derive", "--rule", s(&rule), "--var", "x1", "--expr", "x1^3"]).trim(), "x1^2 + x2*x1 + x2^2");
    assert_eq!(ok(&["derive", "--rule", s(&rule), "--var", "2", "--expr", "x1^3"]), ok(&["derive", "--rule", s(&rule), "--var", "x2", "--expr", "x1^3"]));
    let diff = ok(&["diff", "--rule", s(&rule), "--expr", "x1^3"]);
    assert!(diff.contains("x1^2 + x2*x1 + x2^2"), "{diff}");
    assert_eq!(diff.lines().count(), 2);
}

#[test]
fn ideal_json_schema_and_dimensions() {
    let dir = TempDir::new().unwrap();
    let zero = example_file(&dir, "ex3.2-zero");
    let text = ok(&["ideal", "--rule", s(&zero), "--max-degree", "2", "--json"]);
    let report: Value = serde_json::from_str(&text).unwrap();
    let top: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(top.len(), 2);
    assert!(text.find("\"rule\"").unwrap() < text.find("\"degrees\"").unwrap());
    let first = report["degrees"][0].as_object().unwrap();
    assert_eq!(first.len(), 3);
    let at = |key: &str| text.rfind(&format!("\"{key}\"")).unwrap();
    assert!(at("s") < at("dim_ideal") && at("dim_ideal") < at("dim_quotient"));
    assert_eq!(dims(&report), [(1, 0, 2), (2, 0, 4)]);

    let minus = example_file(&dir, "ex3.3-minus");
    let report: Value =
        serde_json::from_str(&ok(&["ideal", "--rule", s(&minus), "--max-degree", "2", "--json"])).unwrap();
    assert_eq!(dims(&report)[1], (2, 4, 0));

    let split = example_file(&dir, "ex3.5");
    let text = ok(&["examples", "run", "ex3.5", "--max-degree", "5", "--json"]);
    let report: Value = serde_json::from_str(&text).unwrap();
    let ideal: Vec<u64> = dims(&report).iter().map(|d| d.1).collect();
    assert_eq!(ideal, [0, 2, 6, 14, 30]);
    let direct = ok(&["ideal", "--rule", s(&split), "--max-degree", "5", "--json"]);
    assert_eq!(dims(&serde_json::from_str(&direct).unwrap()), dims(&report));
    let zero_run: Value =
        serde_json::from_str(&ok(&["examples", "run", "ex3.2-zero", "--max-degree", "6", "--json"])).unwrap();
    assert!(dims(&zero_run).iter().all(|d| d.1 == 0));
}

#[test]
fn basis_strings_reparse_to_the_same_subspace() {
    let example = optcalc::cli::examples::find("ex3.4").unwrap();
    let rule = example.rule().unwrap();
    let filtration = optcalc::optimal::optimal_ideal(&rule, 3).unwrap();
    let report: Value =
        serde_json::from_str(&ok(&["examples", "run", "ex3.4", "--max-degree", "3", "--basis", "--json"])).unwrap();
    let loaded = RuleFile::from_json(&report["rule"].to_string()).unwrap().load().unwrap();
    for (entry, component) in report["degrees"].as_array().unwrap().iter().zip(filtration.components()) {
        let polys: Vec<_> = entry["basis"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| loaded.parse(b.as_str().unwrap()).unwrap())
            .collect();
        let deg = entry["s"].as_u64().unwrap() as usize;
        let reparsed = Subspace::span(2, Field::Rational, deg, &polys).unwrap();
        assert!(reparsed.equals(component).unwrap(), "degree {deg}");
        assert_eq!(polys.len(), component.dim());
    }
}

#[test]
fn check_reports_consistency() {
    let dir = TempDir::new().unwrap();
    let diag = example_file(&dir, "ex3.1-diag");
    let fine = ok(&["check", "--rule", s(&diag), "--relations", "2*x1*x2 - x2*x1"]);
    assert!(fine.contains("mode: same degree (2)"), "{fine}");
    assert!(fine.contains("verdict: consistent"), "{fine}");
    let bad = ok(&["check", "--rule", s(&diag), "--relations", "x1*x2 - x2*x1"]);
    assert!(bad.contains("verdict: inconsistent"), "{bad}");
    let relations = dir.path().join("rels.txt");
    fs::write(&relations, "# split rule relations\nx1*x2\nx2*x1\n").unwrap();
    let split = example_file(&dir, "ex3.5");
    let mixed = ok(&["check", "--rule", s(&split), "--relations", s(&relations), "--max-degree", "4"]);
    assert!(mixed.contains("verdict: consistent"), "{mixed}");
    let degree_bounded = ok(&["check", "--rule", s(&split), "--relations", "x1*x2; x2*x1; x1*x2*x1"]);
    assert!(degree_bounded.contains("mode: degree bounded"), "{degree_bounded}");
    assert_eq!(run(&["check", "--rule", s(&split), "--relations", "  ;  "]).code, 1);
}

#[test]
fn classify2_on_the_split_rule() {
    let dir = TempDir::new().unwrap();
    let split = example_file(&dir, "ex3.5");
    let out = ok(&["classify2", "--rule", s(&split)]);
    assert!(out.contains("regular: no"), "{out}");
    assert!(out.contains("commutator in I_2: yes"), "{out}");
    assert!(out.contains("family matches: none"), "{out}");
    for family in ["thm4.1-I", "thm4.1-II", "thm4.1-III", "thm4.1-IV"] {
        let out = ok(&["classify2", "--rule", s(&example_file(&dir, family))]);
        assert!(out.contains("necessary conditions: hold"), "{family}: {out}");
        assert!(out.contains("commutator in I_2: yes"), "{family}: {out}");
        assert!(!out.contains("family matches: none"), "{family}: {out}");
    }
    let three = ok(&["classify2", "--rule", s(&example_file(&dir, "ex3.3-minus"))]);
    assert!(three.contains("classification skipped") || three.contains("family matches"), "{three}");
}

#[test]
fn change_basis_writes_an_equivalent_rule() {
    let dir = TempDir::new().unwrap();
    let split = example_file(&dir, "ex3.5");
    let out = dir.path().join("changed.json");
    let msg = ok(&["change-basis", "--rule", s(&split), "--matrix", "1,1;0,1", "--out", s(&out)]);
    assert!(msg.contains("wrote"));
    let changed: Value =
        serde_json::from_str(&ok(&["ideal", "--rule", s(&out), "--max-degree", "4", "--json"])).unwrap();
    let original: Value =
        serde_json::from_str(&ok(&["ideal", "--rule", s(&split), "--max-degree", "4", "--json"])).unwrap();
    assert_eq!(dims(&changed), dims(&original));
    assert_eq!(run(&["change-basis", "--rule", s(&split), "--matrix", "1,2;2,4", "--out", s(&out)]).code, 2);
    assert_eq!(run(&["change-basis", "--rule", s(&split), "--matrix", "1,2;2", "--out", s(&out)]).code, 1);
}

#[test]
fn examples_list_and_show() {
    let list = ok(&["examples", "list"]);
    for e in EXAMPLES {
        assert!(list.contains(e.name), "{}", e.name);
    }
    assert_eq!(list.lines().count(), EXAMPLES.len());
    assert_eq!(run(&["examples", "show", "ex9.9"]).code, 1);
}

#[test]
fn example_rule_files_reparse_identically() {
    for e in EXAMPLES {
        let text = ok(&["examples", "show", e.name]);
        let loaded = RuleFile::from_json(&text).unwrap().load().unwrap();
        assert_eq!(loaded.rule, e.rule().unwrap(), "{}", e.name);
    }
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let rule = example_file(&dir, "thm4.1-I");
    let commands: [&[&str]; 3] = [
        &["ideal", "--rule", s(&rule), "--max-degree", "4", "--basis", "--json"],
        &["classify2", "--rule", s(&rule)],
        &["diff", "--rule", s(&rule), "--expr", "(x1 + 2*x2)^3 - x2*x1"],
    ];
    for args in commands {
        let (a, b) = (run(args), run(args));
        assert_eq!((a.code, a.out, a.err), (b.code, b.out, b.err));
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let rule = example_file(&dir, "ex3.5");
    let r = s(&rule);
    assert_eq!(run(&["derive", "--rule", r, "--var", "x3", "--expr", "x1"]).code, 1);
    assert_eq!(run(&["derive", "--rule", r, "--var", "x1", "--expr", "1/0"]).code, 1);
    assert_eq!(run(&["derive", "--rule", r, "--var", "x1", "--expr", "y"]).code, 1);
    assert_eq!(run(&["ideal", "--rule", "/nonexistent/rule.json", "--max-degree", "2"]).code, 1);
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);

    let affine = dir.path().join("affine.json");
    let mut file: Value = serde_json::from_str(&fs::read_to_string(&rule).unwrap()).unwrap();
    file["A"][0][0][0] = Value::from("x1 + 1");
    fs::write(&affine, file.to_string()).unwrap();
    assert_eq!(run(&["derive", "--rule", s(&affine), "--var", "x1", "--expr", "x1^2"]).code, 0);
    assert_eq!(run(&["ideal", "--rule", s(&affine), "--max-degree", "2"]).code, 2);

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\n  \"n\": 2,\n  \"field\": \"Q\"\n  \"vars\": []\n}").unwrap();
    let o = run(&["ideal", "--rule", s(&broken), "--max-degree", "2"]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("line 4"), "{}", o.err);
}

#[test]
fn binary_exit_status_matches() {
    let bin = env!("CARGO_BIN_EXE_optcalc");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["examples", "list"]), Some(0));
    assert_eq!(status(&["examples", "show", "nope"]), Some(1));
    let out = Command::new(bin).args(["examples", "run", "ex3.2-zero", "--max-degree", "3"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), ok(&["examples", "run", "ex3.2-zero", "--max-degree", "3"]));
}

const ALPHABET: &[u8] = b"x12y+-*/^() 0;,[]{}\":";

fn mutate(rng: &mut ChaCha8Rng, text: &str) -> String {
    let mut bytes = text.as_bytes().to_vec();
    for _ in 0..rng.gen_range(1..=3) {
        let at = rng.gen_range(0..=bytes.len());
        match rng.gen_range(0..4) {
            0 if at < bytes.len() => {
                bytes.remove(at);
            }
            1 if at < bytes.len() => bytes[at] = ALPHABET[rng.gen_range(0..ALPHABET.len())],
            2 => {
                let end = (at + rng.gen_range(1..6)).min(bytes.len());
                let chunk = bytes[at..end].to_vec();
                bytes.splice(at..at, chunk);
            }
            _ => bytes.insert(at, ALPHABET[rng.gen_range(0..ALPHABET.len())]),
        }
    }
    String::from_utf8_lossy(&bytes).into_owned()
}

/// Random mutations of expressions and rule files never panic and only ever
/// fail with the documented exit codes.
#[test]
fn fuzzed_inputs_fail_cleanly() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let dir = TempDir::new().unwrap();
    let rule = example_file(&dir, "thm4.1-II");
    let rule_text = fs::read_to_string(&rule).unwrap();
    let seeds = ["2*x1*x2 - x2*x1", "(x1 + 1/2*x2)^3", "-x2^2*(x1 - 3)", "x1*(x2 + x1)*x2"];
    let mutated = dir.path().join("mutated.json");
    let mut failures = 0;
    for round in 0..1000 {
        let (args, text): (Vec<String>, String) = if round % 2 == 0 {
            let seed = seeds[rng.gen_range(0..seeds.len())];
            let expr = mutate(&mut rng, seed);
            (vec!["derive".into(), "--rule".into(), s(&rule).into(), "--var".into(), "x2".into(), "--expr".into(), expr.clone()], expr)
        } else {
            let text = mutate(&mut rng, &rule_text);
            fs::write(&mutated, &text).unwrap();
            (vec!["ideal".into(), "--rule".into(), s(&mutated).into(), "--max-degree".into(), "2".into()], text)
        };
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&argv)));
        let Ok(o) = outcome else { panic!("panic on input {text:?}") };
        assert!(matches!(o.code, 0..=2), "exit {} on {text:?}", o.code);
        if o.code != 0 {
            failures += 1;
            assert!(!o.err.is_empty(), "silent failure on {text:?}");
        }
    }
    assert!(failures > 300, "only {failures} mutations were rejected");
}
