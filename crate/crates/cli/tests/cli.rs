use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use semitoric_cli::{load_str, Document};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semitoric"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_semitoric"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn golden_reports() {
    let o = run(&["is-seminormal", &data("s2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("is_seminormal_s2.json"));

    let o = run(&["is-seminormal", &data("s3.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), golden("is_seminormal_s3.json"));

    let o = run(&["functor", &data("three_cones.json"), "--cone", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("functor_three_cones_sigma1.json"));
    let alias = run(&["functor", &data("three_cones.json"), "--cone=sigma1"]);
    assert_eq!(alias.stdout, o.stdout);
}

#[test]
fn golden_pictures() {
    let o = run(&["plot-svg", &data("gapped.json"), "--window", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("gapped.svg"));

    let plus = run(&["seminormalize", &data("gapped.json")]);
    assert_eq!(plus.status.code(), Some(0));
    let o = run_stdin(&["plot-svg", "-", "--window", "4"], &plus.stdout);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("gapped_seminormal.svg"));
}

#[test]
fn rank_three_pictures_are_rejected() {
    let o = run(&["plot-svg", &data("rank3.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "unsupported_rank");
}

#[test]
fn parse_and_schema_errors() {
    let o = run_stdin(&["validate", "-"], b"{not json");
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"]["kind"], "parse");

    let o = run_stdin(
        &["validate", "-"],
        br#"{"kind":"monoid","rank":2,"generators":[[1,0],[1,2,3]]}"#,
    );
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"]["kind"], "schema");
    assert_eq!(json(&o)["error"]["pointer"], "/generators/1");

    let o = run_stdin(
        &["validate", "-"],
        br#"{"kind":"monoid","rank":2,"generators":[],"extra":1}"#,
    );
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"]["pointer"], "/extra");

    let o = run_stdin(
        &["validate", "-"],
        br#"{"kind":"monoid","rank":2,"generators":[[1.5,0]]}"#,
    );
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"]["pointer"], "/generators/0/0");

    let o = run(&["validate", &data("missing.json")]);
    assert_eq!(o.status.code(), Some(3));

    assert_eq!(run(&["frobnicate", &data("gapped.json")]).status.code(), Some(3));
    assert_eq!(run(&["validate"]).status.code(), Some(3));
    assert_eq!(
        run(&["is-normal", &data("gapped.json"), "--cone", "0"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["functor", &data("gapped.json")]).status.code(), Some(3));
    assert_eq!(
        run(&["functor", &data("three_cones.json"), "--cone", "0,2"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn invalid_mathematical_input() {
    let crossing = br#"{"kind":"fan_with_groups","rank":2,"rays":[[1,0],[0,1],[1,1],[-1,0]],"cones":[[0,1],[2,3]]}"#;
    let o = run_stdin(&["validate", "-"], crossing);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "not_a_fan");

    let o = run(&["validate", &data("two_quadrants.json")]);
    assert_eq!(o.status.code(), Some(2));
    let report = json(&o);
    assert_eq!(report["valid"], false);
    let f = &report["failures"][0];
    assert_eq!(f["condition"], 2);
    assert_eq!(f["tau"], "0");
    assert_eq!(f["witness"], serde_json::json!([1, 0]));

    let missing = br#"{"kind":"fan_with_monoids","rank":2,"rays":[[1,0],[0,1]],"cones":[[0,1]],"monoids":{}}"#;
    assert_eq!(run_stdin(&["validate", "-"], missing).status.code(), Some(3));
}

#[test]
fn predicates_and_presentations() {
    let o = run(&["is-normal", &data("gapped.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["saturated"], false);
    let o = run(&["is-normal", &data("s2.json")]);
    assert_eq!(o.status.code(), Some(1));
    let q = run_stdin(
        &["is-normal", "-"],
        br#"{"kind":"monoid","rank":2,"generators":[[1,0],[0,1]]}"#,
    );
    assert_eq!(q.status.code(), Some(0));

    let o = run(&["presentation", &data("gapped.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["relations"], serde_json::json!([[4, -2, 1]]));
}

#[test]
fn functor_and_extraction_round_trip() {
    let dir = tempdir();
    let monoids = dir.join("monoids.json");
    let o = run(&["functor", &data("three_cones.json"), "--out", monoids.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(run(&["validate", monoids.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(
        run(&["is-seminormal", monoids.to_str().unwrap()]).status.code(),
        Some(0)
    );

    let back = run(&["extract-groups", monoids.to_str().unwrap()]);
    assert_eq!(back.status.code(), Some(0));
    let original = std::fs::read_to_string(data("three_cones.json")).unwrap();
    let canonical = load_str(&original, None).unwrap().to_value();
    assert_eq!(json(&back), canonical);
}

#[test]
fn morphism_reports() {
    let o = run(&["check-hom", &data("negation.json")]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["morphism"], false);
    assert_eq!(r["fan"]["ok"], false);
    for c in r["cones"].as_array().unwrap() {
        assert_eq!(c["target"], c["source"]);
    }

    let id = br#"{"kind":"hom","rank":2,"matrix":[[1,0],[0,1]]}"#;
    let hom = tempdir().join("id.json");
    std::fs::write(&hom, id).unwrap();
    let three_cones = data("three_cones.json");
    let o = run(&["check-hom", hom.to_str().unwrap(), &three_cones, &three_cones]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "check-hom",
        hom.to_str().unwrap(),
        &data("gapped.json"),
        &data("gapped.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check-hom", hom.to_str().unwrap(), &three_cones, &data("gapped.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["check-hom", hom.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn documents_reload_to_the_same_bytes() {
    for name in [
        "gapped.json",
        "s3.json",
        "three_cones.json",
        "two_quadrants.json",
        "quadrant.json",
        "negation.json",
    ] {
        let doc = semitoric_cli::load_path(&data(name)).unwrap();
        let once = semitoric_cli::json::canonical(&doc.to_value());
        let again = load_str(&once, None).unwrap();
        assert_eq!(semitoric_cli::json::canonical(&again.to_value()), once, "{name}");
        assert_eq!(again.kind(), doc.kind());
    }
    let three_cones = semitoric_cli::load_path(&data("three_cones.json")).unwrap();
    let Document::FanWithGroups(x) = three_cones else {
        panic!()
    };
    assert_eq!(x.data.fan().len(), 8);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["functor".to_string(), data("three_cones.json")],
        vec!["seminormalize".to_string(), data("two_quadrants.json")],
        vec![
            "plot-svg".to_string(),
            data("three_cones.json"),
            "--cone".into(),
            "sigma2".into(),
            "--window".into(),
            "-3,-3,3,3".into(),
        ],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}

fn tempdir() -> PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static N: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "semitoric-cli-{}-{}",
        std::process::id(),
        N.fetch_add(1, Ordering::SeqCst)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
