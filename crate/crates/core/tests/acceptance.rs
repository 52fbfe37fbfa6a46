//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line and
//! the process exits nonzero if any of them fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};

use legendrian::algebra::{Coefficients, DgaOptions, Spin};
use legendrian::augment::{find_augmentations, integer_homology_set, poincare_set};
use legendrian::bounds::{double_point_bound, improve_bound, k_spin};
use legendrian::grading::ShadingRule;
use legendrian::homology::{build_lp_complex, HomologySummary};
use legendrian::laurent::Laurent;
use legendrian::linalg::{determinant, smith_normal_form, Matrix};
use legendrian::{Field, Z2, Z3, Z5};

const RULES: [ShadingRule; 2] = [ShadingRule::A, ShadingRule::B];

fn within(limit: Duration, start: Instant) {
    let t = start.elapsed();
    assert!(t <= limit, "took {t:?}, limit {limit:?}");
}

fn unknot_signs() {
    let start = Instant::now();
    let k = knot("unknot");
    let opts = |spin| DgaOptions {
        spin,
        coefficients: Coefficients::TOne,
        check_degrees: true,
        ..DgaOptions::default()
    };
    let lie = k.dga(opts(Spin::Lie)).unwrap();
    let bounding = k.dga(opts(Spin::Bounding)).unwrap();
    assert_eq!(lie.len(), 1);
    let two = lie.differential[0]
        .terms()
        .next()
        .map(|(w, c)| (w.clone(), c.clone()));
    assert_eq!(two, Some((vec![], Laurent::constant(2))));
    assert_eq!(bounding.differential[0].len(), 0);
    within(Duration::from_secs(1), start);
}

fn d_squared_zero() {
    let start = Instant::now();
    for (name, k) in corpus_knots() {
        for rule in RULES {
            let dga = dga(&k, rule);
            assert!(dga.check_d_squared().is_empty(), "{name} rule {rule:?}");
        }
    }
    within(Duration::from_secs(30), start);
}

fn degree_homogeneity() {
    for (name, k) in corpus_knots() {
        for rule in RULES {
            for spin in [Spin::Lie, Spin::Bounding] {
                let d = k
                    .dga(DgaOptions {
                        rule,
                        spin,
                        ..DgaOptions::default()
                    })
                    .unwrap();
                d.check_degrees().unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
    }
}

fn oracle_equivalence() {
    let start = Instant::now();
    for (name, k) in corpus_knots() {
        let mut dfs = k.disks.clone();
        dfs.sort();
        let brute = with_oracle_disks(&k).disks;
        let keys = |v: &[legendrian::disks::Disk]| v.iter().map(|d| d.key()).collect::<Vec<_>>();
        assert_eq!(keys(&dfs), keys(&brute), "{name}");
    }
    within(Duration::from_secs(300), start);
}

fn chekanov_pair() {
    let a = knot("chekanov-a");
    let b = knot("chekanov-b");
    assert_eq!((a.tb(), a.rotation()), (b.tb(), b.rotation()));
    assert_eq!(a.front.crossing_count(), b.front.crossing_count());
    let (da, db) = (dga(&a, ShadingRule::A), dga(&b, ShadingRule::A));
    let set = |d| {
        let mut v: Vec<String> = poincare_set::<Z2>(d, 16)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        v.dedup();
        v
    };
    let (sa, sb) = (set(&da), set(&db));
    assert_ne!(sa, sb);
    let dedup = |mut v: Vec<HomologySummary>| {
        v.dedup();
        v
    };
    let za = dedup(integer_homology_set(&da, 2, 16).unwrap());
    let zb = dedup(integer_homology_set(&db, 2, 16).unwrap());
    assert!(!za.is_empty() && !zb.is_empty());
    assert_ne!(za, zb);
}

fn torsion(h: &HomologySummary) -> Vec<(i64, BigInt)> {
    h.torsion()
}

fn torsion_family() {
    let start = Instant::now();
    for n in [4usize, 8] {
        let mut by_p = Vec::new();
        for p in [2i64, 3, 5] {
            let cx = build_lp_complex(n, p).unwrap();
            let h = cx.homology();
            let mut t = torsion(&h);
            t.sort();
            let mut expected = vec![(2, BigInt::from(p)), (n as i64 - 2, BigInt::from(p))];
            expected.sort();
            assert_eq!(t, expected, "n={n} p={p}");
            let mut shifted = cx.clone();
            shifted.shift = 3;
            let ts: Vec<BigInt> = shifted
                .homology()
                .torsion()
                .into_iter()
                .map(|x| x.1)
                .collect();
            assert_eq!(ts, vec![BigInt::from(p); 2]);
            let z2 = cx.to_field::<Z2>().homology_field();
            by_p.push((p, h, z2));
        }
        for i in 0..by_p.len() {
            for j in i + 1..by_p.len() {
                assert_ne!(by_p[i].1, by_p[j].1, "n={n}");
            }
        }
        let odd: Vec<_> = by_p.iter().filter(|x| x.0 % 2 == 1).collect();
        assert_eq!(odd[0].2, odd[1].2, "n={n} mod 2");
    }
    within(Duration::from_secs(10), start);
}

fn snf_certificates() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(20240917);
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let rows: Vec<Vec<BigInt>> = (0..r)
            .map(|_| {
                (0..c)
                    .map(|_| BigInt::from(rng.gen_range(-9..=9)))
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(rows);
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert!(determinant(&s.u).abs().is_one());
        assert!(determinant(&s.v).abs().is_one());
        for i in 0..r {
            for j in 0..c {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0].is_positive() && w[1].is_multiple_of(&w[0]));
        }
    }
}

fn double_points() {
    assert_eq!(double_point_bound(&[1, 1]), 1);
    let (r, dims) = k_spin(3, &[1, 1], 1);
    assert_eq!(r, 6);
    assert_eq!(dims.iter().sum::<usize>(), 4);
    for n in 1..=6usize {
        let dims: Vec<usize> = (0..=n).map(|k| num_integer::binomial(n, k)).collect();
        let half = dims.iter().sum::<usize>().div_ceil(2);
        for k in [1, 3, 10] {
            assert_eq!(improve_bound(k, &dims), half);
        }
    }
}

fn counts<F: Field + Send + Sync>(d: &legendrian::algebra::Dga<i64>) -> (usize, Vec<String>) {
    let augs = find_augmentations::<F>(d, 16).unwrap();
    let mut ps: Vec<String> = poincare_set::<F>(d, 16)
        .unwrap()
        .iter()
        .map(|p| p.to_string())
        .collect();
    ps.sort();
    (augs.len(), ps)
}

fn rule_coherence() {
    for (name, k) in corpus_knots() {
        let (a, b) = (dga(&k, ShadingRule::A), dga(&k, ShadingRule::B));
        assert_eq!(counts::<Z2>(&a), counts::<Z2>(&b), "{name} Z2");
        assert_eq!(counts::<Z3>(&a), counts::<Z3>(&b), "{name} Z3");
        assert_eq!(counts::<Z5>(&a), counts::<Z5>(&b), "{name} Z5");
    }
}

fn negative_control() {
    let mut failures = 0;
    for (_, k) in corpus_knots() {
        for rule in RULES {
            let d = k
                .dga(DgaOptions {
                    rule,
                    quarter_turn_shading: true,
                    ..DgaOptions::default()
                })
                .unwrap();
            failures += d.check_d_squared().len();
        }
    }
    assert!(failures > 0, "quarter-turned shading still gives ∂² = 0");
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("unknot signs under both spin structures", unknot_signs),
        ("∂² = 0 on the corpus, rules A and B", d_squared_zero),
        ("differential lowers degree by one", degree_homogeneity),
        (
            "disk search matches exhaustive enumeration",
            oracle_equivalence,
        ),
        ("Chekanov pair distinguished", chekanov_pair),
        ("torsion family Z_p ⊕ Z_p", torsion_family),
        ("Smith normal form certificates", snf_certificates),
        ("double point bounds", double_points),
        ("rule A and rule B invariants agree", rule_coherence),
        ("quarter-turned shading breaks ∂² = 0", negative_control),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        println!(
            "[{}] {:2} {} ({:.2?})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            name,
            start.elapsed()
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
