use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn hopfcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcat"))
        .args(args)
        .env_remove("HOPFCAT_THREADS")
        .output()
        .expect("runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = hopfcat(args);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn check_accepts_a_valid_fixture() {
    let (code, out, _) = run(&["check", p(&fixture("pair_groupoid.json"))]);
    assert_eq!(code, 0);
    assert_eq!(out, "semihopf: ok\n");
}

#[test]
fn every_fixture_checks() {
    let mut files: Vec<PathBuf> = fs::read_dir(fixture(""))
        .unwrap()
        .chain(fs::read_dir(fixture("graphs")).unwrap())
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    assert!(files.len() > 20);
    for f in files {
        let (code, out, err) = run(&["check", p(&f)]);
        assert_eq!(code, 0, "{}: {out}{err}", f.display());
    }
}

#[test]
fn the_idempotent_monoid_has_no_antipode() {
    let (code, out, _) = run(&["antipode", p(&fixture("monoid_t.json"))]);
    assert_eq!(code, 1);
    assert!(out.starts_with("no antipode"), "{out}");
    assert!(out.contains("functional"));
}

#[test]
fn variant_twice_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for src in ["sweedler.json", "sweedler_hopf.json", "pair_groupoid.json", "cyclic3.json"] {
        for which in ["op", "cop", "opcop"] {
            let once = dir.path().join("once.json");
            let twice = dir.path().join("twice.json");
            assert_eq!(run(&["variant", p(&fixture(src)), "--which", which, "-o", p(&once)]).0, 0);
            assert_eq!(run(&["variant", p(&once), "--which", which, "-o", p(&twice)]).0, 0);
            assert_eq!(
                fs::read(&twice).unwrap(),
                fs::read(fixture(src)).unwrap(),
                "{src} {which}"
            );
        }
    }
}

#[test]
fn written_outputs_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let out = |n: &str| dir.path().join(n);
    let cases: Vec<Vec<String>> = vec![
        vec!["antipode".into(), p(&fixture("sweedler.json")).into(), "-o".into(), p(&out("a.json")).into()],
        vec!["variant".into(), p(&fixture("s3.json")).into(), "--which".into(), "op".into(), "-o".into(), p(&out("b.json")).into()],
        vec![
            "cofree-factor".into(),
            p(&fixture("matrix_coalgebra.json")).into(),
            p(&fixture("matrix_coalgebra_entry.json")).into(),
            "-o".into(),
            p(&out("c.json")).into(),
        ],
        vec!["groupoid".into(), "core".into(), p(&fixture("monoid_t_category.json")).into(), "-o".into(), p(&out("d.json")).into()],
        vec!["groupoid".into(), "linearize".into(), p(&fixture("pair_groupoid_category.json")).into(), "-o".into(), p(&out("e.json")).into()],
        vec![
            "groupoid".into(),
            "linearize".into(),
            p(&fixture("monoid_t_category.json")).into(),
            "--field".into(),
            "F_2".into(),
            "-o".into(),
            p(&out("f.json")).into(),
        ],
    ];
    for (k, args) in cases.iter().enumerate() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, o, e) = run(&args);
        assert_eq!(code, 0, "{args:?}: {o}{e}");
        let written = out(&format!("{}.json", (b'a' + k as u8) as char));
        let (code, o, _) = run(&["check", p(&written)]);
        assert_eq!(code, 0, "{args:?}: {o}");
    }
    // the linearized pair groupoid is the solved fixture
    assert_eq!(fs::read(out("e.json")).unwrap(), fs::read(fixture("pair_groupoid_hopf.json")).unwrap());
}

#[test]
fn malformed_input_exits_2_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    fs::write(&f, "{\n  \"schema_version\": 1,\n  \"kind\": \"semihopf\",\n  \"field\": Q\n}\n").unwrap();
    let (code, out, err) = run(&["check", p(&f)]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 4"), "{err}");

    fs::write(&f, "{\"schema_version\": 1, \"kind\": \"vgraph\", \"field\": \"F_6\", \"objects\": [], \"dims\": []}").unwrap();
    let (code, _, err) = run(&["check", p(&f)]);
    assert_eq!(code, 2);
    assert!(err.contains("6"), "{err}");
}

#[test]
fn axiom_failures_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    // a unit that is not a unit
    let text = fs::read_to_string(fixture("cyclic3.json")).unwrap().replace(
        "\"units\": [\n    [\"1\", \"0\", \"0\"]",
        "\"units\": [\n    [\"0\", \"1\", \"0\"]",
    );
    assert!(text.contains("[\"0\", \"1\", \"0\"]"));
    fs::write(&f, text).unwrap();
    let (code, out, _) = run(&["check", p(&f)]);
    assert_eq!(code, 1);
    assert!(out.contains("violation"), "{out}");
    let (code, out, _) = run(&["antipode", p(&f)]);
    assert_eq!(code, 1);
    assert!(out.starts_with("input violates"), "{out}");
}

#[test]
fn oracle_compare_agrees_on_every_graph_fixture() {
    for k in 1..=13 {
        let g = fixture(&format!("graphs/g{k:02}.json"));
        let (code, out, _) = run(&["oracle-compare", p(&g), "-L", "3"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().last().unwrap().starts_with("all "), "{out}");
    }
}

#[test]
fn free_hopf_reports_buckets_and_validates() {
    let (code, out, _) = run(&["free-hopf", p(&fixture("loop_graph.json")), "-L", "3", "-I", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("hom(v0, v0) weight 2: "), "{out}");
    assert!(out.ends_with("check: ok\n"));
    let (code, auto, _) = run(&["free-hopf", p(&fixture("sweedler.json")), "-L", "2", "-I", "1"]);
    assert_eq!(code, 0);
    let (_, echelon, _) = run(&["free-hopf", p(&fixture("sweedler.json")), "-L", "2", "-I", "1", "--method", "echelon"]);
    assert_eq!(auto, echelon);
    let (code, _, err) = run(&["free-hopf", p(&fixture("loop_graph.json")), "-L", "0"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn module_commands() {
    let (code, out, _) = run(&["flat-test", p(&fixture("z2_over_z4.json"))]);
    assert_eq!(code, 1);
    assert!(out.contains("(2)"), "{out}");
    assert_eq!(run(&["flat-test", p(&fixture("z2_over_z6.json"))]).0, 0);
    let (code, out, _) = run(&["jointly-monic", p(&fixture("z4_reduce_mod2.json")), p(&fixture("z4_times2.json"))]);
    assert_eq!(code, 1);
    assert!(out.contains("[2]"), "{out}");
    assert_eq!(run(&["jointly-monic", p(&fixture("z4_identity.json")), p(&fixture("z4_times2.json"))]).0, 0);
    assert_eq!(run(&["jointly-monic", p(&fixture("cyclic3_identity.json"))]).0, 0);
}

#[test]
fn groupoid_word_counts() {
    let (code, out, _) = run(&["groupoid", "free", p(&fixture("loop_graph.json")), "-L", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "v0 -> v0 length 0: 1\nv0 -> v0 length 1: 2\nv0 -> v0 length 2: 2\nv0 -> v0 length 3: 2\n"
    );
    let (_, words, _) = run(&["groupoid", "words", p(&fixture("loop_graph.json")), "-L", "2"]);
    assert_eq!(words.lines().count(), 5);
}

#[test]
fn flatten_reports_a_weak_unit() {
    let (code, out, _) = run(&["flatten", p(&fixture("pair_groupoid_hopf.json"))]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("flattened dimension: 4"));
    assert!(out.contains("Δ(1) = 1 ⊗ 1: no"));
    let (_, out, _) = run(&["flatten", p(&fixture("sweedler_hopf.json"))]);
    assert!(out.contains("Δ(1) = 1 ⊗ 1: yes"));
}

#[test]
fn thread_count_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfcat"))
        .args(["check", p(&fixture("cyclic3.json"))])
        .env("HOPFCAT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_hopfcat"))
        .args(["check", p(&fixture("cyclic3.json"))])
        .env("HOPFCAT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_flags_are_input_errors() {
    assert_eq!(run(&["check"]).0, 2);
    assert_eq!(run(&["variant", p(&fixture("cyclic3.json")), "--which", "sideways"]).0, 2);
}
