//! Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Ring;

/// Sparse Laurent polynomial; the map holds only nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Laurent<R> {
    terms: BTreeMap<i64, R>,
}

pub type LaurentInt = Laurent<i64>;

impl<R: Ring> Laurent<R> {
    pub fn monomial(coeff: R, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(R::one(), exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> R {
        self.terms.get(&exp).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, exp: i64, c: R) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(R::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Substitutes `t = value`.
    pub fn eval(&self, value: &R, inverse: &R) -> R {
        let mut acc = R::zero();
        for (&e, c) in &self.terms {
            let mut p = R::one();
            let (base, n) = if e >= 0 { (value, e) } else { (inverse, -e) };
            for _ in 0..n {
                p = p * base.clone();
            }
            acc = acc + c.clone() * p;
        }
        acc
    }

    /// Substitutes `t -> -t`.
    pub fn negate_t(&self) -> Self {
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            let c = if e.rem_euclid(2) == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            out.add_term(e, c);
        }
        out
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Laurent<S> {
        let mut out = Laurent::zero();
        for (&e, c) in &self.terms {
            out.add_term(e, f(c));
        }
        out
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .values()
                .all(|c| *c == R::one() || *c == -R::one())
    }
}

impl<R: Ring> Zero for Laurent<R> {
    fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for Laurent<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> Add for Laurent<R> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (e, c) in o.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<R: Ring> Neg for Laurent<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<R: Ring> Sub for Laurent<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Mul for Laurent<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &o.terms {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }
}

impl<R: Ring> Ring for Laurent<R> {
    fn from_i64(n: i64) -> Self {
        Self::constant(R::from_i64(n))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (e, mag.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (_, "1") => {}
                (_, m) => write!(f, "{m}*")?,
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let p = LaurentInt::constant(2) + LaurentInt::t_pow(1);
        let q = LaurentInt::t_pow(-1);
        assert_eq!((p.clone() * q).to_string(), "2*t^-1 + 1");
        assert_eq!(p.eval(&1, &1), 3);
        assert_eq!(p.negate_t().to_string(), "2 - t");
        assert!((p.clone() - p).is_zero());
    }
}
