//! Augmentations and linearized contact homology.

use serde_json::{json, Value};

use rayon::prelude::*;

use crate::algebra::{Dga, Element};
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologySummary, Poincare};
use crate::linalg::Matrix;
use crate::scalar::{Field, Ring};
use crate::Integer;

pub const DEFAULT_GENERATOR_CAP: usize = 16;

/// A graded algebra map to the coefficient ring killing `∂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation<R> {
    /// Value on each generator; zero outside degree 0.
    pub values: Vec<R>,
    /// Value of `t`.
    pub t_value: R,
}

impl<R: Ring + std::fmt::Display> Augmentation<R> {
    pub fn to_json(&self, dga: &Dga<i64>) -> Value {
        let mut m = serde_json::Map::new();
        for (g, v) in self.values.iter().enumerate() {
            if !v.is_zero() {
                m.insert(dga.names[g].clone(), json!(v.to_string()));
            }
        }
        json!({"t": self.t_value.to_string(), "values": m})
    }
}

/// Generators that an augmentation may send to a nonzero value.
pub fn augmentable_generators<R: Ring>(dga: &Dga<R>) -> Vec<usize> {
    let period = dga.t_degree.abs();
    (0..dga.len())
        .filter(|&g| {
            if period == 0 {
                dga.degrees[g] == 0
            } else {
                dga.degrees[g].rem_euclid(period) == 0
            }
        })
        .collect()
}

/// Whether any differential has a nonzero power of `t`.
pub fn uses_t(dga: &Dga<i64>) -> bool {
    dga.differential
        .iter()
        .any(|e| e.terms().any(|(_, c)| c.terms().any(|(x, _)| x != 0)))
}

/// Evaluates `ε` on an element, coefficients read as integers.
pub fn evaluate<R: Ring>(x: &Element<i64>, values: &[R], t: &R, t_inv: &R) -> R {
    let mut acc = R::zero();
    for (w, c) in x.terms() {
        let coeff = c.map(|&k| R::from_i64(k)).eval(t, t_inv);
        if coeff.is_zero() {
            continue;
        }
        let mut p = coeff;
        for &g in w {
            p = p * values[g].clone();
            if p.is_zero() {
                break;
            }
        }
        acc = acc + p;
    }
    acc
}

struct Search<'a, R> {
    dga: &'a Dga<i64>,
    vars: Vec<usize>,
    /// Generators whose constraint becomes checkable once `vars[..=k]` are set.
    ready: Vec<Vec<usize>>,
    values: &'a [R],
}

impl<'a, R: Ring + Send + Sync> Search<'a, R> {
    fn new(dga: &'a Dga<i64>, values: &'a [R]) -> Self {
        let vars = augmentable_generators(dga);
        let mut pos = vec![None; dga.len()];
        for (k, &g) in vars.iter().enumerate() {
            pos[g] = Some(k);
        }
        let mut ready = vec![Vec::new(); vars.len() + 1];
        for g in 0..dga.len() {
            // words through a non-augmentable generator vanish
            let last = dga.differential[g]
                .terms()
                .filter(|(w, _)| w.iter().all(|&h| pos[h].is_some()))
                .flat_map(|(w, _)| w.iter().map(|&h| pos[h].unwrap() + 1))
                .max()
                .unwrap_or(0);
            ready[last].push(g);
        }
        Search {
            dga,
            vars,
            ready,
            values,
        }
    }

    fn run(&self, t: &R, t_inv: &R) -> Vec<Vec<R>> {
        let mut assign = vec![R::zero(); self.dga.len()];
        let mut out = Vec::new();
        if self.check(0, &assign, t, t_inv) {
            self.extend(0, &mut assign, t, t_inv, &mut out);
        }
        out
    }

    fn check(&self, k: usize, assign: &[R], t: &R, t_inv: &R) -> bool {
        self.ready[k]
            .iter()
            .all(|&g| evaluate(&self.dga.differential[g], assign, t, t_inv).is_zero())
    }

    fn extend(&self, k: usize, assign: &mut Vec<R>, t: &R, t_inv: &R, out: &mut Vec<Vec<R>>) {
        if k == self.vars.len() {
            out.push(assign.clone());
            return;
        }
        let g = self.vars[k];
        for v in self.values {
            assign[g] = v.clone();
            if self.check(k + 1, assign, t, t_inv) {
                self.extend(k + 1, assign, t, t_inv, out);
            }
        }
        assign[g] = R::zero();
    }
}

fn search<R: Ring + Send + Sync>(
    dga: &Dga<i64>,
    values: &[R],
    units: &[(R, R)],
    cap: usize,
) -> Result<Vec<Augmentation<R>>> {
    let s = Search::new(dga, values);
    if s.vars.len() > cap {
        return Err(Error::SearchSpaceTooLarge {
            generators: s.vars.len(),
            cap,
        });
    }
    let units: Vec<(R, R)> = if uses_t(dga) {
        units.to_vec()
    } else {
        vec![(R::one(), R::one())]
    };
    let found: Vec<Vec<Augmentation<R>>> = units
        .par_iter()
        .map(|(t, ti)| {
            s.run(t, ti)
                .into_iter()
                .map(|values| Augmentation {
                    values,
                    t_value: t.clone(),
                })
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// All augmentations over a finite field, `ε(t)` ranging over the units.
pub fn find_augmentations<F: Field + Send + Sync>(
    dga: &Dga<i64>,
    cap: usize,
) -> Result<Vec<Augmentation<F>>> {
    let elems = F::elements().ok_or_else(|| {
        Error::UnsupportedField("augmentation search needs a finite field".into())
    })?;
    let units: Vec<(F, F)> = elems
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| (x.clone(), x.inv().unwrap()))
        .collect();
    search(dga, &elems, &units, cap)
}

/// Integer augmentations with values in `-bound..=bound` and `ε(t) = ±1`.
/// These are also the rational augmentations the search reports.
pub fn find_integer_augmentations(
    dga: &Dga<i64>,
    bound: i64,
    cap: usize,
) -> Result<Vec<Augmentation<Integer>>> {
    let values: Vec<Integer> = std::iter::once(0)
        .chain((1..=bound).flat_map(|k| [k, -k]))
        .map(Integer::from)
        .collect();
    let one = Integer::from(1);
    let units = vec![(one.clone(), one.clone()), (-one.clone(), -one)];
    search(dga, &values, &units, cap)
}

/// True when `aug` kills every `∂g`.
pub fn is_augmentation<R: Ring>(dga: &Dga<i64>, aug: &Augmentation<R>, t_inv: &R) -> bool {
    let allowed = augmentable_generators(dga);
    aug.values
        .iter()
        .enumerate()
        .all(|(g, v)| v.is_zero() || allowed.contains(&g))
        && dga
            .differential
            .iter()
            .all(|d| evaluate(d, &aug.values, &aug.t_value, t_inv).is_zero())
}

/// The linear part of `φ_ε ∂ φ_ε⁻¹`, where `φ_ε(a) = a + ε(a)`.
pub fn linearize<R: Ring>(
    dga: &Dga<i64>,
    aug: &Augmentation<R>,
    t_inv: &R,
) -> Result<ChainComplex<R>> {
    let n = dga.len();
    let mut m = Matrix::<R>::zeros(n, n);
    for a in 0..n {
        for (w, c) in dga.differential[a].terms() {
            let coeff = c.map(|&k| R::from_i64(k)).eval(&aug.t_value, t_inv);
            if coeff.is_zero() {
                continue;
            }
            for i in 0..w.len() {
                let mut p = coeff.clone();
                for (j, &g) in w.iter().enumerate() {
                    if j != i {
                        p = p * aug.values[g].clone();
                    }
                }
                if !p.is_zero() {
                    let cur = m[(w[i], a)].clone();
                    m[(w[i], a)] = cur + p;
                }
            }
        }
    }
    let period = dga.t_degree.abs();
    ChainComplex::from_full_matrix(&dga.names, &dga.degrees, &m, (period > 0).then_some(period))
}

/// Linearized homology over a field.
pub fn lch_field<F: Field>(dga: &Dga<i64>, aug: &Augmentation<F>) -> Result<HomologySummary> {
    let ti = aug
        .t_value
        .inv()
        .ok_or_else(|| Error::Internal("ε(t) is not a unit".into()))?;
    Ok(linearize(dga, aug, &ti)?.homology_field())
}

/// Linearized homology over the integers.
pub fn lch_integer(dga: &Dga<i64>, aug: &Augmentation<Integer>) -> Result<HomologySummary> {
    let ti = aug.t_value.clone();
    Ok(linearize(dga, aug, &ti)?.homology())
}

/// Sorted Poincaré polynomials of the linearized homology over every
/// augmentation to `F`.
pub fn poincare_set<F: Field + Send + Sync>(dga: &Dga<i64>, cap: usize) -> Result<Vec<Poincare>> {
    let augs = find_augmentations::<F>(dga, cap)?;
    let mut out = augs
        .iter()
        .map(|a| lch_field(dga, a).map(|h| h.poincare()))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Sorted integer linearized homologies over the bounded integer augmentations.
pub fn integer_homology_set(
    dga: &Dga<i64>,
    bound: i64,
    cap: usize,
) -> Result<Vec<HomologySummary>> {
    let augs = find_integer_augmentations(dga, bound, cap)?;
    let mut out = augs
        .iter()
        .map(|a| lch_integer(dga, a))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Laurent;
    use crate::{Z2, Z3};
    use std::collections::BTreeMap;

    fn unknot() -> Dga<i64> {
        let mut d = Element::<i64>::one();
        d.add_term(Vec::new(), Laurent::t_pow(-1));
        Dga {
            names: vec!["a".into()],
            degrees: vec![1],
            t_degree: 0,
            differential: vec![d],
            tags: BTreeMap::new(),
        }
    }

    #[test]
    fn unknot_augmentations() {
        let dga = unknot();
        let z2 = find_augmentations::<Z2>(&dga, 16).unwrap();
        assert_eq!(z2.len(), 1);
        assert_eq!(z2[0].t_value, Z2::new(1));
        let z3 = find_augmentations::<Z3>(&dga, 16).unwrap();
        assert_eq!(z3.len(), 1);
        assert_eq!(z3[0].t_value, Z3::new(-1));
        let h = lch_field(&dga, &z3[0]).unwrap();
        assert_eq!(h.total_rank(), 1);
    }

    #[test]
    fn forced_value() {
        // ∂h = 1 + g with |g| = 0
        let mut d = Element::<i64>::one();
        d = d.add(&Element::generator(1));
        let dga = Dga {
            names: vec!["h".into(), "g".into()],
            degrees: vec![1, 0],
            t_degree: 0,
            differential: vec![d, Element::zero()],
            tags: BTreeMap::new(),
        };
        let augs = find_augmentations::<Z3>(&dga, 16).unwrap();
        assert_eq!(augs.len(), 1);
        assert_eq!(augs[0].values[1], Z3::new(-1));
        let ints = find_integer_augmentations(&dga, 3, 16).unwrap();
        assert_eq!(ints.len(), 1);
    }

    #[test]
    fn zero_differential_gives_free_homology() {
        let dga = Dga::<i64> {
            names: vec!["a".into(), "b".into()],
            degrees: vec![0, 1],
            t_degree: 0,
            differential: vec![Element::zero(), Element::zero()],
            tags: BTreeMap::new(),
        };
        let p = poincare_set::<Z2>(&dga, 16).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|x| x.0 == vec![(0, 1), (1, 1)]));
    }

    #[test]
    fn cap_is_enforced() {
        let n = 3;
        let dga = Dga::<i64> {
            names: (0..n).map(|i| format!("x{i}")).collect(),
            degrees: vec![0; n],
            t_degree: 0,
            differential: vec![Element::zero(); n],
            tags: BTreeMap::new(),
        };
        assert!(matches!(
            find_augmentations::<Z2>(&dga, 2),
            Err(Error::SearchSpaceTooLarge {
                generators: 3,
                cap: 2
            })
        ));
    }
}
