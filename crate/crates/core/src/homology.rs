//! Graded chain complexes and their homology, Morse–Witten complexes and the
//! lens-space-like torsion family `L(p)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{rank, smith_normal_form, Matrix};
use crate::scalar::{EuclideanInt, Field, Ring};
use crate::Integer;

/// A chain complex of finitely generated free modules with boundary of
/// degree -1. With `period = Some(m)` degrees are taken mod `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex<R> {
    /// Generator names per degree.
    pub generators: BTreeMap<i64, Vec<String>>,
    /// `boundary[k]` maps degree `k` to degree `k - 1`; columns are sources.
    pub boundary: BTreeMap<i64, Matrix<R>>,
    pub period: Option<i64>,
    /// Added to every degree when reporting.
    pub shift: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DegreeHomology {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Free rank and torsion coefficients in each degree; degrees with trivial
/// homology are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HomologySummary {
    pub degrees: BTreeMap<i64, DegreeHomology>,
}

impl HomologySummary {
    pub fn total_rank(&self) -> usize {
        self.degrees.values().map(|d| d.rank).sum()
    }

    pub fn torsion(&self) -> Vec<(i64, BigInt)> {
        self.degrees
            .iter()
            .flat_map(|(&k, d)| d.torsion.iter().map(move |t| (k, t.clone())))
            .collect()
    }

    pub fn rank_at(&self, k: i64) -> usize {
        self.degrees.get(&k).map_or(0, |d| d.rank)
    }

    /// Poincaré polynomial as `(degree, rank)` pairs with nonzero rank.
    pub fn poincare(&self) -> Poincare {
        Poincare(
            self.degrees
                .iter()
                .filter(|(_, d)| d.rank > 0)
                .map(|(&k, d)| (k, d.rank))
                .collect(),
        )
    }

    pub fn shifted(&self, s: i64) -> Self {
        HomologySummary {
            degrees: self
                .degrees
                .iter()
                .map(|(&k, d)| (k + s, d.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (k, d) in &self.degrees {
            m.insert(
                k.to_string(),
                json!({"rank": d.rank, "torsion": d.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()}),
            );
        }
        Value::Object(m)
    }

    /// Text such as `H_2 = Z^3 ⊕ Z_5`.
    pub fn pretty(&self) -> String {
        let mut lines = Vec::new();
        for (k, d) in &self.degrees {
            let mut parts = Vec::new();
            if d.rank == 1 {
                parts.push("Z".to_string());
            } else if d.rank > 1 {
                parts.push(format!("Z^{}", d.rank));
            }
            parts.extend(d.torsion.iter().map(|t| format!("Z_{t}")));
            lines.push(format!("H_{k} = {}", parts.join(" ⊕ ")));
        }
        lines.join("\n")
    }
}

/// Poincaré polynomial `Σ rank_k t^k`, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Poincare(pub Vec<(i64, usize)>);

impl Poincare {
    /// Coefficient list starting at the lowest degree.
    pub fn coefficients(&self) -> (i64, Vec<usize>) {
        let Some(&(lo, _)) = self.0.first() else {
            return (0, Vec::new());
        };
        let hi = self.0.last().unwrap().0;
        let mut c = vec![0; (hi - lo + 1) as usize];
        for &(k, r) in &self.0 {
            c[(k - lo) as usize] = r;
        }
        (lo, c)
    }

    pub fn eval_at_one(&self) -> usize {
        self.0.iter().map(|&(_, r)| r).sum()
    }
}

impl std::fmt::Display for Poincare {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(k, r)| {
                let mono = match k {
                    0 => String::new(),
                    1 => "t".into(),
                    _ => format!("t^{k}"),
                };
                match (r, mono.is_empty()) {
                    (_, true) => r.to_string(),
                    (1, false) => mono,
                    _ => format!("{r}{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring> ChainComplex<R> {
    /// Builds a complex from graded generators and a full boundary matrix
    /// (`matrix[(i, j)]` = coefficient of generator `i` in `∂` of generator `j`).
    pub fn from_full_matrix(
        names: &[String],
        degrees: &[i64],
        matrix: &Matrix<R>,
        period: Option<i64>,
    ) -> Result<Self> {
        let n = names.len();
        if matrix.rows() != n || matrix.cols() != n || degrees.len() != n {
            return Err(Error::GradingMismatch("boundary matrix size".into()));
        }
        let reduce = |k: i64| match period {
            Some(m) if m > 0 => k.rem_euclid(m),
            _ => k,
        };
        let mut generators: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut index = vec![(0i64, 0usize); n];
        for g in 0..n {
            let k = reduce(degrees[g]);
            let v = generators.entry(k).or_default();
            index[g] = (k, v.len());
            v.push(names[g].clone());
        }
        let mut cx = ChainComplex {
            generators,
            boundary: BTreeMap::new(),
            period: period.filter(|&m| m > 0),
            shift: 0,
        };
        let keys: Vec<i64> = cx.generators.keys().copied().collect();
        for &k in &keys {
            let tgt = cx.prev(k);
            cx.boundary.insert(k, Matrix::zeros(cx.dim(tgt), cx.dim(k)));
        }
        for j in 0..n {
            for i in 0..n {
                let c = &matrix[(i, j)];
                if c.is_zero() {
                    continue;
                }
                let (kj, pj) = index[j];
                let (ki, pi) = index[i];
                if ki != cx.prev(kj) {
                    return Err(Error::GradingMismatch(format!(
                        "∂{} contains {} ({} -> {})",
                        names[j], names[i], degrees[j], degrees[i]
                    )));
                }
                cx.boundary.get_mut(&kj).unwrap()[(pi, pj)] = c.clone();
            }
        }
        cx.check_square_zero()?;
        Ok(cx)
    }

    pub fn prev(&self, k: i64) -> i64 {
        match self.period {
            Some(m) => (k - 1).rem_euclid(m),
            None => k - 1,
        }
    }

    pub fn dim(&self, k: i64) -> usize {
        self.generators.get(&k).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.generators.values().map(Vec::len).sum()
    }

    fn boundary_at(&self, k: i64) -> Matrix<R> {
        self.boundary
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(self.prev(k)), self.dim(k)))
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for &k in self.generators.keys() {
            let d1 = self.boundary_at(k);
            let d0 = self.boundary_at(self.prev(k));
            if d0.rows() > 0 && d1.cols() > 0 && !d0.mul(&d1).is_zero() {
                return Err(Error::Degree(format!(
                    "boundary squares to a nonzero map in degree {k}"
                )));
            }
        }
        Ok(())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> ChainComplex<S> {
        ChainComplex {
            generators: self.generators.clone(),
            boundary: self.boundary.iter().map(|(&k, m)| (k, m.map(f))).collect(),
            period: self.period,
            shift: self.shift,
        }
    }

    /// Dual complex: transposed and negated boundary, degrees negated.
    pub fn dual(&self) -> Self {
        let generators = self
            .generators
            .iter()
            .map(|(&k, v)| (-k, v.clone()))
            .collect();
        let boundary = self
            .boundary
            .iter()
            .map(|(&k, m)| (-(self.prev(k)), m.transpose().map(|x| -x.clone())))
            .collect();
        ChainComplex {
            generators,
            boundary,
            period: self.period,
            shift: -self.shift,
        }
    }

    fn degrees_to_report(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = self.generators.keys().copied().collect();
        ks.sort();
        ks
    }
}

impl<R: EuclideanInt + Into<BigInt>> ChainComplex<R> {
    /// Homology over the integers via Smith normal form.
    pub fn homology(&self) -> HomologySummary {
        let mut sm: BTreeMap<i64, (usize, Vec<BigInt>)> = BTreeMap::new();
        for &k in self.generators.keys() {
            let s = smith_normal_form(&self.boundary_at(k));
            let f: Vec<BigInt> = s.invariant_factors().into_iter().map(Into::into).collect();
            sm.insert(k, (f.len(), f));
        }
        let mut degrees = BTreeMap::new();
        for k in self.degrees_to_report() {
            let rank_out = sm.get(&k).map_or(0, |x| x.0);
            let next = self.next_degree(k);
            let (rank_in, factors) = next
                .and_then(|n| sm.get(&n).cloned())
                .unwrap_or((0, Vec::new()));
            let rank = self.dim(k) - rank_out - rank_in;
            let torsion: Vec<BigInt> = factors.into_iter().filter(|t| !t.is_one()).collect();
            if rank > 0 || !torsion.is_empty() {
                degrees.insert(k + self.shift, DegreeHomology { rank, torsion });
            }
        }
        HomologySummary { degrees }
    }
}

impl<R: Ring> ChainComplex<R> {
    fn next_degree(&self, k: i64) -> Option<i64> {
        match self.period {
            Some(m) => Some((k + 1).rem_euclid(m)),
            None => Some(k + 1),
        }
    }
}

impl<F: Field> ChainComplex<F> {
    /// Homology over a field.
    pub fn homology_field(&self) -> HomologySummary {
        let mut degrees = BTreeMap::new();
        for k in self.degrees_to_report() {
            let r_out = rank(&self.boundary_at(k));
            let r_in = self
                .next_degree(k)
                .map_or(0, |n| rank(&self.boundary_at(n)));
            let r = self.dim(k) - r_out - r_in;
            if r > 0 {
                degrees.insert(
                    k + self.shift,
                    DegreeHomology {
                        rank: r,
                        torsion: Vec::new(),
                    },
                );
            }
        }
        HomologySummary { degrees }
    }
}

impl ChainComplex<Integer> {
    pub fn to_field<F: Field>(&self) -> ChainComplex<F> {
        self.map(F::from_integer)
    }
}

/// Morse–Witten complex on critical points `(name, index)` with boundary
/// `matrix[(i, j)]` = coefficient of point `i` in `∂` of point `j`.
pub fn morse_complex(
    critical_points: &[(String, i64)],
    boundary: &Matrix<Integer>,
) -> Result<ChainComplex<Integer>> {
    let names: Vec<String> = critical_points.iter().map(|c| c.0.clone()).collect();
    let degrees: Vec<i64> = critical_points.iter().map(|c| c.1).collect();
    ChainComplex::from_full_matrix(&names, &degrees, boundary, None)
}

/// The handle-decomposition Morse function on `D^n` with points
/// `c0, c1, c2, c2', c3`, where one 2-handle runs `p` times over the 1-handle.
pub fn disk_gadget(p: i64) -> Result<ChainComplex<Integer>> {
    let pts: Vec<(String, i64)> = [("c0", 0), ("c1", 1), ("c2", 2), ("c2'", 2), ("c3", 3)]
        .iter()
        .map(|&(n, k)| (n.to_string(), k))
        .collect();
    let mut m = Matrix::<Integer>::zeros(5, 5);
    m[(1, 2)] = Integer::from(p);
    m[(1, 3)] = Integer::from(1);
    m[(3, 4)] = Integer::from(p);
    m[(2, 4)] = Integer::from(-1);
    morse_complex(&pts, &m)
}

/// Linearized complex of the link `L_0 ∪ L_p` in `J^1(T^n)`.
///
/// Generators are the critical points of the perfect Morse function on
/// `T^n` of index `k >= 1` (binomial(n, k) of them, graded by `k`), plus
/// the five points replacing the minimum. Those below the level `q`
/// (`c0, c1, c2`) are graded by `n - index`, those above (`c2', c3`) by
/// index. The only nonzero boundaries are `∂c1 = p c2` and `∂c3 = p c2'`.
pub fn build_lp_complex(n: usize, p: i64) -> Result<ChainComplex<Integer>> {
    if n < 4 {
        return Err(Error::GradingMismatch(format!(
            "build_lp_complex needs n >= 4, got {n}"
        )));
    }
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for k in 1..=n {
        for i in 0..binomial(n, k) {
            names.push(format!("f{k}.{i}"));
            degrees.push(k as i64);
        }
    }
    let base = names.len();
    let nn = n as i64;
    for (name, deg) in [
        ("c0", nn),
        ("c1", nn - 1),
        ("c2", nn - 2),
        ("c2'", 2),
        ("c3", 3),
    ] {
        names.push(name.to_string());
        degrees.push(deg);
    }
    let mut m = Matrix::<Integer>::zeros(names.len(), names.len());
    m[(base + 2, base + 1)] = Integer::from(p);
    m[(base + 3, base + 4)] = Integer::from(p);
    ChainComplex::from_full_matrix(&names, &degrees, &m, None)
}
