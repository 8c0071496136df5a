use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use equicones::coeffs::SummandKind;
use equicones_cli::chart::{self, Chart};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equicones"))
        .args(args)
        .env_remove("EQUICONES_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn point_chart_matches_golden() {
    let input = golden("point.json");
    let input = input.to_str().unwrap();
    assert_eq!(stdout(&["chart", "--input", input, "--format", "ascii"]), fs::read_to_string(golden("point.txt")).unwrap());
    assert_eq!(stdout(&["chart", "--input", input, "--format", "svg"]), fs::read_to_string(golden("point.svg")).unwrap());
}

#[test]
fn ladder_matches_golden() {
    let got = stdout(&["twistss", "--presentation", "F2", "--tmax", "10", "--region", "-2:12:-4:8", "--format", "csv"]);
    assert_eq!(got, fs::read_to_string(golden("f2_ladder.csv")).unwrap());
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["twistss", "--presentation", "K_sigma", "--max-index", "0", "--tmax", "4", "--region", "0:12:0:8", "--answer", "2sigma"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let o = Command::new(env!("CARGO_BIN_EXE_equicones"))
        .args(args)
        .env("EQUICONES_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.stdout, run(&args).stdout);
}

#[test]
fn svg_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("page.json");
    let svg = dir.path().join("page.svg");
    let back = dir.path().join("back.json");
    let (j, s, b) = (json.to_str().unwrap(), svg.to_str().unwrap(), back.to_str().unwrap());
    stdout(&["twistss", "--presentation", "K_sigma", "--max-index", "0", "--tmax", "4", "--region", "0:12:0:8", "--page", "e1", "--out", j]);
    stdout(&["chart", "--input", j, "--format", "svg", "--out", s]);
    stdout(&["chart", "--input", s, "--format", "json", "--out", b]);
    let original = Chart::from_json(&fs::read_to_string(&json).unwrap(), None).unwrap();
    let parsed = chart::from_svg(&fs::read_to_string(&svg).unwrap()).unwrap();
    assert_eq!(parsed, original);
    assert_eq!(Chart::from_json(&fs::read_to_string(&back).unwrap(), None).unwrap(), original);
    assert!(!original.d.is_empty());
}

#[test]
fn twisted_k_sigma_layout() {
    let text = stdout(&["twistss", "--presentation", "K_sigma", "--max-index", "0", "--tmax", "4", "--region", "0:12:0:8", "--page", "e1"]);
    let c = Chart::from_json(&text, None).unwrap();
    let find = |label: &str| {
        c.modules
            .values()
            .flat_map(|m| &m.summands)
            .find(|s| s.label == label)
            .map(|s| s.kind)
    };
    let cone = |p, q| Some(SummandKind::FreeCone { shift: (p, q).into() });
    assert_eq!(find("[e_σᾱ_(0)]"), cone(4, 3));
    assert_eq!(find("[e_σᾱ_(0)|e_σᾱ_(0)]"), cone(8, 4));
    assert_eq!(find("[e_σ|ᾱ_(0)|ᾱ_(0)|e_σ]"), cone(10, 5));
    assert_eq!(find("[e_σ|ᾱ_(0)]"), Some(SummandKind::InducedTower { p0: 5 }));
    assert_eq!(find("[e_σ|ᾱ_(0)|e_σᾱ_(0)]"), Some(SummandKind::InducedTower { p0: 9 }));
    let svg = stdout(&["twistss", "--presentation", "K_sigma", "--max-index", "0", "--tmax", "4", "--region", "0:12:0:8", "--page", "e1", "--format", "svg"]);
    assert!(svg.contains(r#"class="tower""#) && svg.contains(r#"class="cone""#) && svg.contains(r#"class="d""#));
}

#[test]
fn verification_commands_pass() {
    let o = run(&["verify-bw", "--space", "2sigma", "--degmax", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "PASS");
    assert_eq!(run(&["axioms", "--presentation", "K_sigma", "--degmax", "10"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    let bad: &[&[&str]] = &[
        &["twistss", "--presentation", "F2", "--tmax", "17"],
        &["barss", "--presentation", "F2", "--region", "5:1:0:3"],
        &["barss", "--presentation", "nope"],
        &["basis", "--space", "2sigma+1"],
        &["tor", "--exterior", "1", "--format", "svg"],
        &["frobnicate"],
        &["chart"],
    ];
    for args in bad {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = Command::new(env!("CARGO_BIN_EXE_equicones"))
        .args(["basis", "--space", "2sigma"])
        .env("EQUICONES_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn truncation_is_reported_on_stderr() {
    let o = run(&["barss", "--presentation", "S1", "--tmax", "3", "--region", "0:8:0:8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncation"));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("p,q,t,dim\n"));
}

#[test]
fn tor_of_an_exterior_algebra() {
    let csv = stdout(&["tor", "--exterior", "2", "--tmax", "4", "--degmax", "12", "--format", "csv"]);
    let nonzero: Vec<&str> = csv.lines().skip(1).filter(|l| !l.ends_with(",0")).collect();
    assert_eq!(nonzero, ["0,0,1", "1,3,1", "2,6,1", "3,9,1", "4,12,1"]);
}

#[test]
fn presentation_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s1.json");
    fs::write(&path, equicones::hopf::make_presentation("S1", 0).unwrap().to_json()).unwrap();
    let a = stdout(&["barss", "--presentation", path.to_str().unwrap(), "--tmax", "4", "--region", "0:8:0:4", "--format", "csv"]);
    let b = stdout(&["barss", "--presentation", "S1", "--tmax", "4", "--region", "0:8:0:4", "--format", "csv"]);
    assert_eq!(a, b);
}
