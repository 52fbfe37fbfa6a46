use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use legendrian::algebra::{Coefficients, Dga, DgaOptions, Spin};
use legendrian::augment::{
    find_augmentations, find_integer_augmentations, lch_field, lch_integer, DEFAULT_GENERATOR_CAP,
};
use legendrian::bounds::{double_point_bound, improve_bound, k_spin};
use legendrian::diagram::ResolveOptions;
use legendrian::grading::{shade, ShadingRule};
use legendrian::homology::{build_lp_complex, HomologySummary};
use legendrian::pipeline::Knot;
use legendrian::{parse_front, Error, Field, Z2, Z3, Z5, Z7};

#[derive(Parser)]
#[command(
    name = "lch",
    version,
    about = "Legendrian contact homology of plat fronts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the DGA of a front.
    Compute(ComputeArgs),
    /// Check ∂² = 0 and degree homogeneity under both sign rules.
    Check(CheckArgs),
    /// List augmentations.
    Aug(FieldArgs),
    /// Linearized homology for every augmentation.
    Lch(FieldArgs),
    /// Try to distinguish two fronts by their linearized homology.
    Compare(CompareArgs),
    /// Homology of the L(p) torsion family.
    Morse(MorseArgs),
    /// Double-point lower bounds from homology dimensions.
    Bound(BoundArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    A,
    B,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SpinArg {
    Lie,
    Bounding,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CoeffArg {
    Laurent,
    T1,
    Tm1,
    Mod2,
}

#[derive(Args, Clone)]
struct Common {
    /// Sign rule.
    #[arg(long, value_enum, default_value = "a")]
    rule: RuleArg,
    /// Spin structure.
    #[arg(long, value_enum, default_value = "lie")]
    spin: SpinArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Orient the knot leftward at the basepoint.
    #[arg(long)]
    reverse: bool,
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct ComputeArgs {
    file: PathBuf,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "laurent")]
    coeff: CoeffArg,
    /// Include every disk in the report.
    #[arg(long)]
    dump_disks: bool,
    /// Write a drawing of the resolved diagram.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    files: Vec<PathBuf>,
    /// Turn the shading a quarter turn at every crossing (control run).
    #[arg(long)]
    quarter_turn: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct FieldArgs {
    file: PathBuf,
    #[command(flatten)]
    common: Common,
    /// 2, 3, 5, 7, Z or Q.
    #[arg(long, default_value = "2")]
    field: String,
    /// Largest number of degree-0 generators searched.
    #[arg(long, default_value_t = DEFAULT_GENERATOR_CAP)]
    cap: usize,
}

#[derive(Args)]
struct CompareArgs {
    a: PathBuf,
    b: PathBuf,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "2")]
    field: String,
    #[arg(long, default_value_t = DEFAULT_GENERATOR_CAP)]
    cap: usize,
}

#[derive(Args)]
struct MorseArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: i64,
    /// Degree shift applied to the report.
    #[arg(long, default_value_t = 0)]
    shift: i64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BoundArgs {
    /// Homology dimensions by degree, comma separated.
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    /// Number of Reeb chords, for the spinning report.
    #[arg(long)]
    chords: Option<usize>,
    /// Spin dimension k.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Number of exceptional chords for the improved bound.
    #[arg(long)]
    improve: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum Failure {
    Validation(String, String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::SearchBudgetExceeded { .. } => {
                Failure::Internal(e.to_string())
            }
            Error::Syntax { .. } => Failure::Validation("syntax".into(), e.to_string()),
            Error::Topology(_) => Failure::Validation("topology".into(), e.to_string()),
            Error::Degree(_) => Failure::Validation("degree".into(), e.to_string()),
            Error::NonHomogeneous(_) => {
                Failure::Validation("non_homogeneous".into(), e.to_string())
            }
            Error::SelfReference(_) => Failure::Validation("self_reference".into(), e.to_string()),
            Error::SearchSpaceTooLarge { .. } => {
                Failure::Validation("search_space_too_large".into(), e.to_string())
            }
            Error::GradingMismatch(_) => {
                Failure::Validation("grading_mismatch".into(), e.to_string())
            }
            Error::UnsupportedField(_) => {
                Failure::Validation("unsupported_field".into(), e.to_string())
            }
        }
    }
}

type CmdResult = Result<(), Failure>;

fn io_fail(path: &Path, e: std::io::Error) -> Failure {
    Failure::Validation("io".into(), format!("{}: {e}", path.display()))
}

fn load(path: &Path, common: &Common) -> Result<Knot, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_fail(path, e))?;
    let mut front = parse_front(&text)?;
    if front.name.is_none() {
        front.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(Knot::with_options(
        front,
        ResolveOptions {
            reverse_orientation: common.reverse,
        },
    )?)
}

fn options(common: &Common, coeff: CoeffArg) -> DgaOptions {
    DgaOptions {
        rule: match common.rule {
            RuleArg::A => ShadingRule::A,
            RuleArg::B => ShadingRule::B,
        },
        spin: match common.spin {
            SpinArg::Lie => Spin::Lie,
            SpinArg::Bounding => Spin::Bounding,
        },
        coefficients: match coeff {
            CoeffArg::Laurent => Coefficients::Laurent,
            CoeffArg::T1 => Coefficients::TOne,
            CoeffArg::Tm1 => Coefficients::TMinusOne,
            CoeffArg::Mod2 => Coefficients::Mod2,
        },
        check_degrees: true,
        quarter_turn_shading: false,
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_compute(a: &ComputeArgs) -> CmdResult {
    let knot = load(&a.file, &a.common)?;
    if a.coeff == CoeffArg::Mod2 && a.common.spin == SpinArg::Bounding {
        eprintln!("warning: the spin structure does not affect mod 2 coefficients");
    }
    let opts = options(&a.common, a.coeff);
    let dga = knot.dga(opts)?;
    if let Some(path) = &a.svg {
        let sh = shade(&knot.diagram, &knot.gradings, opts.rule);
        let overlay = if a.dump_disks {
            knot.disks.as_slice()
        } else {
            &[]
        };
        fs::write(
            path,
            legendrian::svg::render(&knot.diagram, Some(&sh), overlay),
        )
        .map_err(|e| io_fail(path, e))?;
    }
    match a.common.format {
        Format::Json => {
            let mut v = json!({
                "knot": knot.front.name,
                "tb": knot.tb(),
                "rotation": knot.rotation(),
                "diagram": knot.diagram_json(),
            });
            v["dga"] = if a.coeff == CoeffArg::Mod2 {
                dga.to_z2().to_json()
            } else {
                dga.to_json()
            };
            if a.dump_disks {
                v["disks"] = knot.disks_json();
            }
            print_json(&v);
        }
        Format::Text => {
            println!(
                "{}: tb = {}, r = {}, {} chords",
                knot.front.name.as_deref().unwrap_or("knot"),
                knot.tb(),
                knot.rotation(),
                dga.len()
            );
            if a.coeff == CoeffArg::Mod2 {
                print!("{}", dga.to_z2().pretty());
            } else {
                print!("{}", dga.pretty());
            }
            if a.dump_disks {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&knot.disks_json()).unwrap()
                );
            }
        }
    }
    Ok(())
}

fn cmd_check(a: &CheckArgs) -> CmdResult {
    let mut reports = Vec::new();
    let mut all_ok = true;
    for file in &a.files {
        let knot = load(file, &a.common)?;
        for rule in [RuleArg::A, RuleArg::B] {
            let mut c = a.common.clone();
            c.rule = rule;
            let mut opts = options(&c, CoeffArg::Laurent);
            opts.check_degrees = false;
            opts.quarter_turn_shading = a.quarter_turn;
            let dga = knot.dga(opts)?;
            let residue = dga.check_d_squared();
            let degrees = dga.check_degrees().err().map(|e| e.to_string());
            let ok = residue.is_empty() && degrees.is_none();
            all_ok &= ok;
            reports.push(json!({
                "file": file.display().to_string(),
                "rule": if rule == RuleArg::A { "A" } else { "B" },
                "d_squared_zero": residue.is_empty(),
                "failing_generators": residue.iter().map(|(g, _)| dga.names[*g].clone()).collect::<Vec<_>>(),
                "degree_error": degrees,
                "ok": ok,
            }));
        }
    }
    match a.common.format {
        Format::Json => print_json(&Value::Array(reports.clone())),
        Format::Text => {
            for r in &reports {
                println!(
                    "{} rule {}: {}",
                    r["file"].as_str().unwrap(),
                    r["rule"].as_str().unwrap(),
                    if r["ok"].as_bool().unwrap() {
                        "ok"
                    } else {
                        "FAILED"
                    }
                );
            }
        }
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::Validation(
            "d_squared".into(),
            "∂² ≠ 0 or degree mismatch".into(),
        ))
    }
}

enum FieldChoice {
    Prime(u64),
    Integers,
    Rationals,
}

fn parse_field(s: &str) -> Result<FieldChoice, Failure> {
    match s {
        "2" => Ok(FieldChoice::Prime(2)),
        "3" => Ok(FieldChoice::Prime(3)),
        "5" => Ok(FieldChoice::Prime(5)),
        "7" => Ok(FieldChoice::Prime(7)),
        "Z" | "z" => Ok(FieldChoice::Integers),
        "Q" | "q" => Ok(FieldChoice::Rationals),
        _ => Err(Error::UnsupportedField(s.to_string()).into()),
    }
}

/// Augmentations as JSON plus their linearized homologies.
fn augs_and_homology(
    dga: &Dga<i64>,
    field: &FieldChoice,
    cap: usize,
) -> Result<Vec<(Value, HomologySummary)>, Failure> {
    fn finite<F: Field + Send + Sync + std::fmt::Display>(
        dga: &Dga<i64>,
        cap: usize,
    ) -> Result<Vec<(Value, HomologySummary)>, Failure> {
        let augs = find_augmentations::<F>(dga, cap)?;
        augs.iter()
            .map(|a| Ok((a.to_json(dga), lch_field(dga, a)?)))
            .collect()
    }
    match field {
        FieldChoice::Prime(2) => finite::<Z2>(dga, cap),
        FieldChoice::Prime(3) => finite::<Z3>(dga, cap),
        FieldChoice::Prime(5) => finite::<Z5>(dga, cap),
        FieldChoice::Prime(7) => finite::<Z7>(dga, cap),
        FieldChoice::Prime(p) => Err(Error::UnsupportedField(p.to_string()).into()),
        FieldChoice::Integers | FieldChoice::Rationals => {
            let augs = find_integer_augmentations(dga, 3, cap)?;
            augs.iter()
                .map(|a| {
                    let h = lch_integer(dga, a)?;
                    let h = if matches!(field, FieldChoice::Rationals) {
                        // over Q only free ranks survive
                        HomologySummary {
                            degrees: h
                                .degrees
                                .into_iter()
                                .filter(|(_, d)| d.rank > 0)
                                .map(|(k, mut d)| {
                                    d.torsion.clear();
                                    (k, d)
                                })
                                .collect(),
                        }
                    } else {
                        h
                    };
                    Ok((a.to_json(dga), h))
                })
                .collect()
        }
    }
}

fn cmd_aug(a: &FieldArgs, with_homology: bool) -> CmdResult {
    let knot = load(&a.file, &a.common)?;
    let dga = knot.dga(options(&a.common, CoeffArg::Laurent))?;
    let field = parse_field(&a.field)?;
    let list = augs_and_homology(&dga, &field, a.cap)?;
    let mut polys: Vec<String> = list.iter().map(|(_, h)| h.poincare().to_string()).collect();
    polys.sort();
    polys.dedup();
    match a.common.format {
        Format::Json => {
            let items: Vec<Value> = list
                .iter()
                .map(|(v, h)| {
                    let mut v = v.clone();
                    if with_homology {
                        v["homology"] = h.to_json();
                        v["poincare"] = json!(h.poincare().to_string());
                    }
                    v
                })
                .collect();
            let mut out = json!({"field": a.field, "count": list.len(), "augmentations": items});
            if with_homology {
                out["poincare_set"] = json!(polys);
            }
            print_json(&out);
        }
        Format::Text => {
            println!("{} augmentations over {}", list.len(), a.field);
            for (v, h) in &list {
                if with_homology {
                    println!("{}  P = {}", v, h.poincare());
                    if a.common.verbose {
                        println!("{}", h.pretty());
                    }
                } else {
                    println!("{v}");
                }
            }
            if with_homology {
                println!("poincare set: {{{}}}", polys.join(", "));
            }
        }
    }
    Ok(())
}

fn cmd_compare(a: &CompareArgs) -> CmdResult {
    let ka = load(&a.a, &a.common)?;
    let kb = load(&a.b, &a.common)?;
    let field = parse_field(&a.field)?;
    let classical = (ka.tb(), ka.rotation().abs()) == (kb.tb(), kb.rotation().abs());
    let sets = |k: &Knot| -> Result<Vec<String>, Failure> {
        let dga = k.dga(options(&a.common, CoeffArg::Laurent))?;
        let mut v: Vec<String> = augs_and_homology(&dga, &field, a.cap)?
            .iter()
            .map(|(_, h)| h.poincare().to_string())
            .collect();
        v.sort();
        v.dedup();
        Ok(v)
    };
    let (verdict, detail) = match (sets(&ka), sets(&kb)) {
        (Ok(x), Ok(y)) => {
            let v = if !classical || x != y {
                "distinguished"
            } else {
                "not-distinguished"
            };
            (v, json!({"a": x, "b": y}))
        }
        (Err(Failure::Validation(kind, msg)), _) | (_, Err(Failure::Validation(kind, msg)))
            if kind == "search_space_too_large" =>
        {
            ("inconclusive", json!({"reason": msg}))
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    match a.common.format {
        Format::Json => print_json(&json!({
            "verdict": verdict,
            "classical_agree": classical,
            "tb": [ka.tb(), kb.tb()],
            "rotation": [ka.rotation(), kb.rotation()],
            "poincare_sets": detail,
        })),
        Format::Text => {
            println!(
                "tb: {} vs {}; r: {} vs {}",
                ka.tb(),
                kb.tb(),
                ka.rotation(),
                kb.rotation()
            );
            if let (Some(x), Some(y)) = (detail.get("a"), detail.get("b")) {
                println!("poincare sets: {x} vs {y}");
            }
            println!("{verdict}");
        }
    }
    Ok(())
}

fn cmd_morse(a: &MorseArgs) -> CmdResult {
    let mut cx = build_lp_complex(a.n, a.p)?;
    cx.shift = a.shift;
    let h = cx.homology();
    let torsion: Vec<String> = h.torsion().iter().map(|(_, t)| format!("Z_{t}")).collect();
    let report = if torsion.is_empty() {
        "0".to_string()
    } else {
        torsion.join(" ⊕ ")
    };
    match a.format {
        Format::Json => print_json(&json!({
            "n": a.n,
            "p": a.p,
            "homology": h.to_json(),
            "torsion": report,
        })),
        Format::Text => {
            println!("{}", h.pretty());
            println!("torsion: {report}");
        }
    }
    Ok(())
}

fn cmd_bound(a: &BoundArgs) -> CmdResult {
    let bound = double_point_bound(&a.dims);
    let mut v = json!({"dims": a.dims, "bound": bound});
    if let Some(r) = a.chords {
        let (r2, d2) = k_spin(r, &a.dims, a.k);
        v["spun"] = json!({"chords": r2, "dims": d2, "bound": double_point_bound(&d2)});
    }
    if let Some(k) = a.improve {
        v["improved"] = json!(improve_bound(k, &a.dims));
    }
    match a.format {
        Format::Json => print_json(&v),
        Format::Text => {
            println!("double points >= {bound}");
            if let Some(s) = v.get("spun") {
                println!("spun: {} chords, dims {}", s["chords"], s["dims"]);
            }
            if let Some(i) = v.get("improved") {
                println!("improved bound: {i}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("LCH_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let r = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Check(a) => cmd_check(a),
        Command::Aug(a) => cmd_aug(a, false),
        Command::Lch(a) => cmd_aug(a, true),
        Command::Compare(a) => cmd_compare(a),
        Command::Morse(a) => cmd_morse(a),
        Command::Bound(a) => cmd_bound(a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(kind, msg)) => {
            eprintln!("{}", json!({"error": kind, "message": msg}));
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("{}", json!({"error": "internal", "message": msg}));
            ExitCode::from(2)
        }
    }
}
