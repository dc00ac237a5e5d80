use std::path::PathBuf;
use std::process::{Command, Output};

use qdisc::disccore::DiscriminantReport;
use qdisc_cli::commands::{IsoReport, MdReport, PPowerReport};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

fn qdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdisc")).args(args).env("QDISC_THREADS", "2").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn round_trip<T: DeserializeOwned + Serialize>(json: &str) {
    let parsed: T = serde_json::from_str(json).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(again.trim_end(), json.trim_end());
}

#[test]
fn golden_reports() {
    let cases: [(&str, Vec<String>); 5] = [
        ("disc_skew_first.json", vec!["disc".into(), fixture("skew_first.toml")]),
        ("disc_weyl_n3.json", vec!["disc".into(), fixture("weyl_n3.toml")]),
        ("ppower_a2_p3.json", vec!["ppower".into(), fixture("a2_matrix_order.toml"), "--p".into(), "3".into(), "--v".into(), "4".into()]),
        ("iso_weyl5.json", vec!["iso-check".into(), fixture("weyl5_q.toml"), fixture("weyl5_qinv.toml")]),
        ("md_weyl_n2.json", vec!["md".into(), fixture("weyl_n2.toml")]),
    ];
    for (file, args) in cases {
        let mut full = vec!["--json"];
        full.extend(args.iter().map(String::as_str));
        let out = qdisc(&full);
        assert!(out.status.success(), "{}", file);
        assert_eq!(stdout(&out), golden(file), "{}", file);
    }
}

#[test]
fn json_round_trips() {
    round_trip::<DiscriminantReport>(&golden("disc_skew_first.json"));
    round_trip::<DiscriminantReport>(&golden("disc_weyl_n3.json"));
    round_trip::<PPowerReport>(&golden("ppower_a2_p3.json"));
    round_trip::<IsoReport>(&golden("iso_weyl5.json"));
    round_trip::<MdReport>(&golden("md_weyl_n2.json"));
}

#[test]
fn repeated_runs_are_identical() {
    for spec in ["skew_second.toml", "weyl_n2.toml", "tensor_weyl_pair.toml"] {
        let a = qdisc(&["--json", "disc", &fixture(spec)]);
        let b = Command::new(env!("CARGO_BIN_EXE_qdisc")).args(["--json", "disc", &fixture(spec)]).env("QDISC_THREADS", "1").output().unwrap();
        assert_eq!(a.stdout, b.stdout, "{}", spec);
    }
    let a = qdisc(&["--json", "md", &fixture("weyl_n3.toml")]);
    let b = qdisc(&["--json", "md", &fixture("weyl_n3.toml")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_output() {
    let out = qdisc(&["disc", &fixture("skew_second.toml")]);
    let text = stdout(&out);
    assert!(text.contains("discriminant (csr-bar): x1^4\n"));
    assert_eq!(text.matches("basis 4 (free)").count(), 3);
    let out = qdisc(&["tensor-disc", &fixture("quantum_plane.toml"), &fixture("quantum_plane.toml")]);
    let text = stdout(&out);
    assert!(text.contains("x1^16*x2^16 ⊗ x1'^16*x2'^16"));
    assert!(text.contains("direct computation: x1^16*x2^16*x3^16*x4^16"));
    assert!(text.contains("MD tensor identity: holds"));
}

#[test]
fn subcommands() {
    let out = qdisc(&["--json", "md", "--exhaustive", &fixture("weyl_n2.toml")]);
    let md: MdReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(md.charts[0].principal_generator.as_deref(), Some("c^2"));
    assert!(md.checks["agrees_with_quasi_basis"]);
    assert!(md.notes[0].starts_with("225 maximal minors"));

    let out = qdisc(&["--json", "ppower", &fixture("a2_matrix_order.toml"), "--p", "1", "--v", "4"]);
    let p: PPowerReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((p.discriminant.as_str(), p.exists), ("does not exist", Some(false)));

    let out = qdisc(&["aut-check", &fixture("weyl_n2.toml"), "--morphism", &fixture("maps/eta_minus_one.toml")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("φ(t^4) = 1·t^4"));
    let out = qdisc(&["aut-check", &fixture("skew_first.toml"), "--morphism", &fixture("maps/diagonal.toml")]);
    assert!(stdout(&out).contains("φ(x1^4*x2^4) = 16·x1^4*x2^4"));

    let out = qdisc(&["derivation-check", "--spec", &fixture("maps/euler_derivation.toml")]);
    assert!(out.status.success());
    let out = qdisc(&["--json", "iso-check", &fixture("weyl_n2.toml"), &fixture("weyl_shifted.toml")]);
    let iso: IsoReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(iso.isomorphic, Some(false));
}

#[test]
fn exit_codes() {
    assert_eq!(qdisc(&["aut-check", &fixture("weyl_n3.toml"), "--morphism", &fixture("maps/omega.toml")]).status.code(), Some(1));
    assert_eq!(qdisc(&["aut-check", &fixture("weyl_n3.toml"), "--morphism", &fixture("maps/translation.toml")]).status.code(), Some(1));
    assert_eq!(qdisc(&["derivation-check", "--spec", &fixture("maps/shift_derivation.toml")]).status.code(), Some(1));
    assert_eq!(qdisc(&["disc", &fixture("does_not_exist.toml")]).status.code(), Some(2));
    assert_eq!(qdisc(&["ppower", &fixture("weyl_n2.toml"), "--p", "2"]).status.code(), Some(2));
    assert_eq!(qdisc(&["md", &fixture("gwa_2_3.toml")]).status.code(), Some(1));
    let dir = std::env::temp_dir().join(format!("qdisc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let shared = dir.join("shared.toml");
    std::fs::write(&shared, "kind = \"gwa\"\norder = 4\nq_exponents = [2, 2]\nh = [[0, 0, 1], [0, 0, 1]]\n").unwrap();
    assert_eq!(qdisc(&["disc", shared.to_str().unwrap()]).status.code(), Some(1));
    let trivial = dir.join("trivial.toml");
    std::fs::write(&trivial, "kind = \"gwa\"\norder = 2\nq_exponents = [2]\nh = [[0, 1]]\n").unwrap();
    let out = qdisc(&["--json", "disc", trivial.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(err["exit_code"], 2);
    let out = Command::new(env!("CARGO_BIN_EXE_qdisc")).args(["disc", &fixture("weyl_n2.toml")]).env("QDISC_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fixture_suite_passes() {
    let out = qdisc(&["verify-paper"]);
    let text = stdout(&out);
    assert!(out.status.success(), "{}", text);
    assert!(text.ends_with("30 passed, 0 failed\n"), "{}", text);
    assert!(!text.contains("FAIL"));
}
