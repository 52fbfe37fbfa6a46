#![allow(dead_code)]

use std::fmt::Write;
use std::path::PathBuf;

use legendrian::algebra::{Dga, DgaOptions};
use legendrian::augment::poincare_set;
use legendrian::disks::brute::brute_force_disks;
use legendrian::grading::ShadingRule;
use legendrian::pipeline::Knot;
use legendrian::{parse_front, FrontWord, Z2};

/// Face multiset cap for the exhaustive oracle on corpus knots.
pub const ORACLE_COPIES: usize = 8;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus() -> Vec<(String, FrontWord)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "front"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&p).unwrap();
            (name, parse_front(&text).unwrap())
        })
        .collect()
}

pub fn knot(name: &str) -> Knot {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.front"))).unwrap();
    Knot::new(parse_front(&text).unwrap()).unwrap()
}

pub fn corpus_knots() -> Vec<(String, Knot)> {
    corpus()
        .into_iter()
        .map(|(n, f)| (n, Knot::new(f).unwrap()))
        .collect()
}

pub fn dga(k: &Knot, rule: ShadingRule) -> Dga<i64> {
    k.dga(DgaOptions {
        rule,
        check_degrees: true,
        ..DgaOptions::default()
    })
    .unwrap()
}

/// Text report compared against the files in `corpus/golden`.
pub fn golden_report(k: &Knot) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "tb {}", k.tb());
    let _ = writeln!(s, "rotation {}", k.rotation());
    let degrees: Vec<String> = (0..k.diagram.vertices.len())
        .map(|v| format!("{}={}", k.diagram.chord_name(v), k.gradings.degrees[v]))
        .collect();
    let _ = writeln!(s, "degrees {}", degrees.join(" "));
    let _ = writeln!(s, "disks {}", k.disks.len());
    for rule in [ShadingRule::A, ShadingRule::B] {
        let _ = writeln!(s, "rule {rule:?}");
        s.push_str(&dga(k, rule).pretty());
    }
    let d = dga(k, ShadingRule::A);
    let mut ps: Vec<String> = poincare_set::<Z2>(&d, 16)
        .unwrap()
        .iter()
        .map(|p| p.to_string())
        .collect();
    ps.sort();
    ps.dedup();
    let _ = writeln!(s, "poincare_z2 {{{}}}", ps.join(", "));
    s
}

/// The same knot with its disks replaced by the exhaustive enumeration.
pub fn with_oracle_disks(k: &Knot) -> Knot {
    let mut k = k.clone();
    let mut disks = brute_force_disks(&k.diagram, &k.signs, ORACLE_COPIES);
    disks.sort();
    k.disks = disks;
    k
}
