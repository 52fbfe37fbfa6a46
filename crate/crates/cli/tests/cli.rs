use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.front"))
        .to_string_lossy()
        .into_owned()
}

fn lch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lch"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn unknot_differential_is_two() {
    let u = corpus("unknot");
    let o = lch(&["compute", &u, "--coeff", "t1", "--spin", "lie"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("∂a1 = 2 "), "{}", stdout(&o));
    let o = lch(&["compute", &u, "--coeff", "t1", "--spin", "bounding"]);
    assert!(stdout(&o).contains("∂a1 = 0 "), "{}", stdout(&o));
}

#[test]
fn chekanov_fronts_are_distinguished() {
    let (a, b) = (corpus("chekanov-a"), corpus("chekanov-b"));
    let o = lch(&["compare", &a, &b, "--field", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().last(), Some("distinguished"));
    let o = lch(&["compare", &a, &a, "--field", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "not-distinguished");
}

#[test]
fn tiny_cap_is_inconclusive() {
    let (a, b) = (corpus("chekanov-a"), corpus("chekanov-b"));
    let o = lch(&["compare", &a, &b, "--cap", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "inconclusive");
}

#[test]
fn morse_torsion_report() {
    let o = lch(&["morse", "--n", "8", "--p", "5"]);
    assert!(stdout(&o).contains("torsion: Z_5 ⊕ Z_5"));
}

#[test]
fn bad_front_exits_with_code_one() {
    let dir = std::env::temp_dir().join(format!("lch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.front");
    std::fs::write(&f, "l1 x7 r1\n").unwrap();
    let o = lch(&["compute", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "topology");
}

#[test]
fn unsupported_field_is_rejected() {
    let o = lch(&["aug", &corpus("trefoil"), "--field", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_passes_on_corpus_and_fails_when_turned() {
    let files: Vec<String> = ["unknot", "trefoil", "trefoil-left", "chekanov-a"]
        .iter()
        .map(|n| corpus(n))
        .collect();
    let mut args = vec!["check"];
    args.extend(files.iter().map(|s| s.as_str()));
    assert!(lch(&args).status.success());
    args.push("--quarter-turn");
    assert_eq!(lch(&args).status.code(), Some(1));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let f = corpus("chekanov-b");
    let run = |n: &str| {
        Command::new(env!("CARGO_BIN_EXE_lch"))
            .args(["lch", &f, "--format", "json", "--field", "3"])
            .env("LCH_THREADS", n)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
    let dump = |n: &str| {
        Command::new(env!("CARGO_BIN_EXE_lch"))
            .args(["compute", &f, "--format", "json", "--dump-disks"])
            .env("LCH_THREADS", n)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(dump("1"), dump("3"));
}

#[test]
fn compute_json_and_svg() {
    let dir = std::env::temp_dir().join(format!("lch-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("trefoil.svg");
    let o = lch(&[
        "compute",
        &corpus("trefoil"),
        "--format",
        "json",
        "--dump-disks",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tb"], 1);
    assert_eq!(v["disks"].as_array().unwrap().len(), 8);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("a5"));
}

#[test]
fn lch_over_integers() {
    let o = lch(&["lch", &corpus("trefoil"), "--field", "Z"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("poincare set: {2 + t}"));
}

#[test]
fn bound_reports() {
    let o = lch(&[
        "bound",
        "--dims",
        "1,3,3,1",
        "--chords",
        "5",
        "--improve",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bound"], 4);
    assert_eq!(v["improved"], 4);
    assert_eq!(v["spun"]["chords"], 10);
}
