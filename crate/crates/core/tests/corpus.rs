mod common;

use common::*;

use legendrian::augment::{
    augmentable_generators, find_augmentations, is_augmentation, linearize, uses_t, Augmentation,
};
use legendrian::grading::{check_parity, shade, ShadingRule};
use legendrian::{parse_front, Field, Z2, Z3};
use num_traits::Zero;

#[test]
fn golden_files_match() {
    let dir = corpus_dir().join("golden");
    let update = std::env::var_os("LCH_UPDATE_GOLDEN").is_some();
    for (name, k) in corpus_knots() {
        let path = dir.join(format!("{name}.txt"));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, golden_report(&with_oracle_disks(&k))).unwrap();
        }
        let expected =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(golden_report(&k), expected, "{name}");
    }
}

#[test]
fn fronts_round_trip() {
    for (name, f) in corpus() {
        let again = parse_front(&f.to_string()).unwrap();
        assert_eq!(again, f, "{name}");
    }
}

#[test]
fn diagrams_are_well_formed() {
    for (name, k) in corpus_knots() {
        let d = &k.diagram;
        let (v, e, f) = (d.vertices.len(), d.edges.len(), d.faces.len());
        assert_eq!(v as i64 - e as i64 + f as i64, 2, "{name}");
        assert_eq!(e, 2 * v, "{name}");
        assert_eq!(k.front.component_count(), 1, "{name}");
        assert_eq!(
            v,
            k.front.crossing_count() + k.front.right_cusp_count(),
            "{name}"
        );
        for a in &d.realization.action {
            assert!(*a > Zero::zero(), "{name}");
        }
        for q in &k.signs {
            assert_eq!(q.iter().filter(|&&s| s > 0).count(), 2, "{name}");
        }
    }
}

#[test]
fn parity_and_shading_counts() {
    for (name, k) in corpus_knots() {
        check_parity(&k.diagram, &k.gradings).unwrap();
        let a = shade(&k.diagram, &k.gradings, ShadingRule::A);
        let b = shade(&k.diagram, &k.gradings, ShadingRule::B);
        for (v, deg) in k.gradings.degrees.iter().enumerate() {
            let count = |s: &[bool; 4]| s.iter().filter(|&&x| x).count();
            let even = deg.rem_euclid(2) == 0;
            assert_eq!(count(&a[v]), if even { 2 } else { 0 }, "{name} A");
            assert_eq!(count(&b[v]), 1, "{name} B");
        }
    }
}

#[test]
fn expected_classical_invariants() {
    let expect = [
        ("unknot", -1, 0),
        ("unknot-stabilized", -2, 1),
        ("trefoil", 1, 0),
        ("trefoil-left", -6, -1),
        ("chekanov-a", 1, 0),
        ("chekanov-b", 1, 0),
        ("granny", 3, 0),
        ("torus-2-5", 2, -1),
    ];
    for (name, tb, r) in expect {
        let k = knot(name);
        assert_eq!((k.tb(), k.rotation()), (tb, r), "{name}");
    }
}

fn grid_augmentations<F: Field>(name: &str) -> usize {
    let k = knot(name);
    let dga = dga(&k, ShadingRule::A);
    let gens = augmentable_generators(&dga);
    let elems = F::elements().unwrap();
    let units: Vec<F> = elems.iter().filter(|x| !x.is_zero()).cloned().collect();
    let t_values = if uses_t(&dga) { units } else { vec![F::one()] };
    let mut count = 0;
    let total = elems.len().pow(gens.len() as u32);
    for code in 0..total {
        let mut values = vec![F::zero(); dga.len()];
        let mut c = code;
        for &g in &gens {
            values[g] = elems[c % elems.len()].clone();
            c /= elems.len();
        }
        for t in &t_values {
            let aug = Augmentation {
                values: values.clone(),
                t_value: t.clone(),
            };
            if is_augmentation(&dga, &aug, &t.inv().unwrap()) {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn augmentation_search_is_complete() {
    for name in [
        "unknot",
        "trefoil",
        "unknot-stabilized",
        "trefoil-left",
        "torus-2-5",
    ] {
        let k = knot(name);
        let dga = dga(&k, ShadingRule::A);
        assert_eq!(
            find_augmentations::<Z2>(&dga, 16).unwrap().len(),
            grid_augmentations::<Z2>(name),
            "{name} Z2"
        );
        assert_eq!(
            find_augmentations::<Z3>(&dga, 16).unwrap().len(),
            grid_augmentations::<Z3>(name),
            "{name} Z3"
        );
    }
}

#[test]
fn linearized_complexes_square_to_zero() {
    for (name, k) in corpus_knots() {
        for rule in [ShadingRule::A, ShadingRule::B] {
            let dga = dga(&k, rule);
            for aug in find_augmentations::<Z3>(&dga, 16).unwrap() {
                let cx = linearize(&dga, &aug, &aug.t_value.inv().unwrap()).unwrap();
                cx.check_square_zero()
                    .unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
    }
}

#[test]
fn trefoil_has_five_augmentations_over_z2() {
    let k = knot("trefoil");
    assert_eq!(
        find_augmentations::<Z2>(&dga(&k, ShadingRule::A), 16)
            .unwrap()
            .len(),
        5
    );
}
