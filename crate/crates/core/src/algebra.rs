//! The Chekanov–Eliashberg algebra: a free noncommutative algebra on the
//! Reeb chords over Laurent polynomials in `t`, with the disk differential.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::diagram::LagrangianDiagram;
use crate::disks::Disk;
use crate::error::{Error, Result};
use crate::grading::{shade, Gradings, ShadingRule};
use crate::laurent::Laurent;
use crate::scalar::Ring;
use crate::Z2;

pub type Word = Vec<usize>;

/// A finite sum of words with Laurent coefficients; `t` is central.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element<R> {
    terms: BTreeMap<Word, Laurent<R>>,
}

impl<R: Ring> Element<R> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::term(Vec::new(), Laurent::one())
    }

    pub fn generator(i: usize) -> Self {
        Self::term(vec![i], Laurent::one())
    }

    pub fn term(word: Word, coeff: Laurent<R>) -> Self {
        let mut e = Self::zero();
        e.add_term(word, coeff);
        e
    }

    pub fn add_term(&mut self, word: Word, coeff: Laurent<R>) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c = c.clone() + coeff;
                if c.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Laurent<R>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Laurent::one()))
    }

    pub fn scale(&self, c: &Laurent<R>) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn mentions(&self, g: usize) -> bool {
        self.terms.keys().any(|w| w.contains(&g))
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&Laurent<R>) -> Laurent<S>) -> Element<S> {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Image under the algebra map sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Element<R>]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut prod = Element::term(Vec::new(), c.clone());
            for &g in w {
                prod = prod.mul(&images[g]);
            }
            out = out.add(&prod);
        }
        out
    }
}

impl<R: Ring> fmt::Debug for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// How the coefficient variable `t` is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
pub enum Coefficients {
    #[default]
    Laurent,
    /// `t = 1`
    TOne,
    /// `t = -1`
    TMinusOne,
    /// `t = 1` and coefficients mod 2
    Mod2,
}

impl std::str::FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laurent" | "z[t]" => Ok(Coefficients::Laurent),
            "t1" => Ok(Coefficients::TOne),
            "tm1" => Ok(Coefficients::TMinusOne),
            "mod2" | "z2" => Ok(Coefficients::Mod2),
            _ => Err(Error::UnsupportedField(s.to_string())),
        }
    }
}

impl Coefficients {
    pub fn tag(self) -> &'static str {
        match self {
            Coefficients::Laurent => "laurent",
            Coefficients::TOne => "t1",
            Coefficients::TMinusOne => "tm1",
            Coefficients::Mod2 => "mod2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
pub enum Spin {
    /// The Lie group spin structure on the circle.
    #[default]
    Lie,
    /// The bounding spin structure; differs from `Lie` by `t -> -t`.
    Bounding,
}

impl std::str::FromStr for Spin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lie" => Ok(Spin::Lie),
            "bounding" | "null" => Ok(Spin::Bounding),
            _ => Err(Error::UnsupportedField(format!("spin structure `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DgaOptions {
    pub rule: ShadingRule,
    pub spin: Spin,
    pub coefficients: Coefficients,
    /// Reject differentials that fail to lower degree by one.
    pub check_degrees: bool,
    /// Turn every crossing's shading by one quadrant, swapping the roles of
    /// the two strands. Only meant for control runs; ∂² = 0 fails in general.
    pub quarter_turn_shading: bool,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Dga<R> {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    /// Degree of `t`.
    pub t_degree: i64,
    pub differential: Vec<Element<R>>,
    pub tags: BTreeMap<String, String>,
}

impl<R: Ring> fmt::Debug for Dga<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dga")
            .field("names", &self.names)
            .field("degrees", &self.degrees)
            .field("differential", &self.differential)
            .finish()
    }
}

/// Assembles the differential from the disks of `diag`.
pub fn build_dga(
    diag: &LagrangianDiagram,
    gradings: &Gradings,
    disks: &[Disk],
    opts: DgaOptions,
) -> Result<Dga<i64>> {
    let mut shading = shade(diag, gradings, opts.rule);
    if opts.quarter_turn_shading {
        for q in shading.iter_mut() {
            q.rotate_left(1);
        }
    }
    let n = diag.vertices.len();
    let mut differential = vec![Element::<i64>::zero(); n];
    for d in disks {
        let sign = d.sign(&shading);
        differential[d.positive].add_term(d.negatives.clone(), Laurent::monomial(sign, d.t_exp));
    }
    let mut dga = Dga {
        names: (0..n).map(|v| diag.chord_name(v)).collect(),
        degrees: gradings.degrees.clone(),
        t_degree: gradings.t_degree,
        differential,
        tags: BTreeMap::new(),
    };
    if opts.spin == Spin::Bounding {
        dga = dga.spin_twist();
    }
    dga = dga.specialize(opts.coefficients);
    dga.tags.insert("rule".into(), format!("{:?}", opts.rule));
    dga.tags
        .insert("spin".into(), format!("{:?}", opts.spin).to_lowercase());
    dga.tags
        .insert("coefficients".into(), opts.coefficients.tag().into());
    if let Some(name) = &diag.name {
        dga.tags.insert("knot".into(), name.clone());
    }
    if opts.check_degrees {
        dga.check_degrees()?;
    }
    Ok(dga)
}

impl<R: Ring> Dga<R> {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&g| self.degrees[g]).sum()
    }

    /// `∂` extended by the graded Leibniz rule.
    pub fn apply(&self, x: &Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            let mut sign_odd = false;
            for (k, &g) in w.iter().enumerate() {
                let left = Element::term(w[..k].to_vec(), c.clone());
                let right = Element::term(w[k + 1..].to_vec(), Laurent::one());
                let mut piece = left.mul(&self.differential[g]).mul(&right);
                if sign_odd {
                    piece = piece.scale(&-Laurent::one());
                }
                out = out.add(&piece);
                if self.degrees[g].rem_euclid(2) == 1 {
                    sign_odd = !sign_odd;
                }
            }
        }
        out
    }

    /// Generators whose differential squares to something nonzero.
    pub fn check_d_squared(&self) -> Vec<(usize, Element<R>)> {
        (0..self.len())
            .filter_map(|g| {
                let dd = self.apply(&self.differential[g]);
                (!dd.is_zero()).then_some((g, dd))
            })
            .collect()
    }

    pub fn d_squared_vanishes(&self) -> bool {
        self.check_d_squared().is_empty()
    }

    pub fn check_degrees(&self) -> Result<()> {
        for g in 0..self.len() {
            for (w, c) in self.differential[g].terms() {
                for (e, _) in c.terms() {
                    let deg = self.word_degree(w) + e * self.t_degree;
                    if deg != self.degrees[g] - 1 {
                        return Err(Error::Degree(format!(
                            "term t^{e} {} of ∂{} has degree {deg}, expected {}",
                            self.word_name(w),
                            self.names[g],
                            self.degrees[g] - 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn word_name(&self, w: &[usize]) -> String {
        if w.is_empty() {
            "1".into()
        } else {
            w.iter()
                .map(|&g| self.names[g].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&Laurent<R>) -> Laurent<S>) -> Dga<S> {
        Dga {
            names: self.names.clone(),
            degrees: self.degrees.clone(),
            t_degree: self.t_degree,
            differential: self.differential.iter().map(|e| e.map_coeffs(&f)).collect(),
            tags: self.tags.clone(),
        }
    }

    /// Substitutes `t -> -t`, switching between the two spin structures.
    pub fn spin_twist(&self) -> Self {
        self.map_coeffs(|c| c.negate_t())
    }

    pub fn specialize(&self, c: Coefficients) -> Self {
        let at = |v: i64| {
            let v = R::from_i64(v);
            move |p: &Laurent<R>| Laurent::constant(p.eval(&v, &v))
        };
        match c {
            Coefficients::Laurent => self.clone(),
            Coefficients::TOne | Coefficients::Mod2 => self.map_coeffs(at(1)),
            Coefficients::TMinusOne => self.map_coeffs(at(-1)),
        }
    }

    /// Adds a pair `e, f` with `∂e = f` in degrees `k` and `k - 1`.
    pub fn stabilize(&self, k: i64) -> Self {
        let mut out = self.clone();
        let n = self.len();
        out.names.push(format!("e{n}"));
        out.names.push(format!("f{n}"));
        out.degrees.push(k);
        out.degrees.push(k - 1);
        out.differential.push(Element::generator(n + 1));
        out.differential.push(Element::zero());
        out
    }

    /// Conjugates the differential by the elementary automorphism sending
    /// generator `g` to `g + u`.
    pub fn tame_automorphism(&self, g: usize, u: &Element<R>) -> Result<Self> {
        if u.mentions(g) {
            return Err(Error::SelfReference(self.names[g].clone()));
        }
        for (w, c) in u.terms() {
            for (e, _) in c.terms() {
                if self.word_degree(w) + e * self.t_degree != self.degrees[g] {
                    return Err(Error::NonHomogeneous(format!(
                        "t^{e} {} in the image of {}",
                        self.word_name(w),
                        self.names[g]
                    )));
                }
            }
        }
        let mut phi: Vec<Element<R>> = (0..self.len()).map(Element::generator).collect();
        phi[g] = phi[g].add(u);
        let mut out = self.clone();
        for j in 0..self.len() {
            let d = if j == g {
                self.differential[g].sub(&self.apply(u))
            } else {
                self.differential[j].clone()
            };
            out.differential[j] = d.substitute(&phi);
        }
        Ok(out)
    }
}

impl Dga<i64> {
    pub fn to_z2(&self) -> Dga<Z2> {
        self.map_coeffs(|c| c.map(|&x| Z2::new(x)))
    }
}

impl<R: Ring + fmt::Display> Dga<R> {
    pub fn to_json(&self) -> Value {
        let generators: Vec<Value> = self
            .names
            .iter()
            .zip(&self.degrees)
            .map(|(n, d)| json!({"name": n, "degree": d}))
            .collect();
        let mut differential = serde_json::Map::new();
        for (g, e) in self.differential.iter().enumerate() {
            let terms: Vec<Value> = e
                .terms()
                .map(|(w, c)| {
                    let poly: Vec<Value> =
                        c.terms().map(|(e, x)| json!([e, x.to_string()])).collect();
                    let word: Vec<&str> = w.iter().map(|&i| self.names[i].as_str()).collect();
                    json!([poly, word])
                })
                .collect();
            differential.insert(self.names[g].clone(), Value::Array(terms));
        }
        json!({
            "generators": generators,
            "t_degree": self.t_degree,
            "differential": differential,
            "tags": self.tags,
        })
    }

    /// Human-readable listing of the differential.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        for g in 0..self.len() {
            let mut parts = Vec::new();
            for (w, c) in self.differential[g].terms() {
                let word = if w.is_empty() {
                    String::new()
                } else {
                    self.word_name(w)
                };
                let coeff = c.to_string();
                parts.push(match (coeff.as_str(), word.is_empty()) {
                    (_, true) => coeff,
                    ("1", false) => word,
                    ("-1", false) => format!("-{word}"),
                    _ => format!("({coeff}) {word}"),
                });
            }
            let mut rhs = String::new();
            for (i, part) in parts.iter().enumerate() {
                match (i, part.strip_prefix('-')) {
                    (0, _) => rhs.push_str(part),
                    (_, Some(rest)) => {
                        rhs.push_str(" - ");
                        rhs.push_str(rest);
                    }
                    (_, None) => {
                        rhs.push_str(" + ");
                        rhs.push_str(part);
                    }
                }
            }
            if rhs.is_empty() {
                rhs.push('0');
            }
            s.push_str(&format!(
                "∂{} = {}    |{}| = {}\n",
                self.names[g], rhs, self.names[g], self.degrees[g]
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Dga<i64> {
        // ∂a = 1 + b c, ∂b = 0, ∂c = 0: not a DGA unless b c is a cycle,
        // which it is.
        let mut d = Element::<i64>::one();
        d = d.add(&Element::generator(1).mul(&Element::generator(2)));
        Dga {
            names: vec!["a".into(), "b".into(), "c".into()],
            degrees: vec![1, 0, 0],
            t_degree: 0,
            differential: vec![d, Element::zero(), Element::zero()],
            tags: BTreeMap::new(),
        }
    }

    #[test]
    fn leibniz_signs() {
        let mut dga = toy();
        dga.degrees = vec![1, 1, 0];
        dga.differential[2] = Element::generator(1);
        // ∂(b a) = ∂b a - b ∂a
        let x = Element::generator(1).mul(&Element::generator(0));
        let dx = dga.apply(&x);
        let expect = Element::generator(1)
            .mul(&dga.differential[0])
            .scale(&-Laurent::one());
        assert_eq!(dx, expect);
    }

    #[test]
    fn toy_squares_to_zero_and_tame_changes_preserve_it() {
        let dga = toy();
        assert!(dga.d_squared_vanishes());
        dga.check_degrees().unwrap();
        let t = dga.tame_automorphism(1, &Element::generator(2)).unwrap();
        assert!(t.d_squared_vanishes());
        assert!(matches!(
            dga.tame_automorphism(1, &Element::generator(1)),
            Err(Error::SelfReference(_))
        ));
        assert!(matches!(
            dga.tame_automorphism(1, &Element::generator(0)),
            Err(Error::NonHomogeneous(_))
        ));
        assert!(dga.stabilize(3).d_squared_vanishes());
    }
}
